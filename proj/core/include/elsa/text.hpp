#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "elsa/error.hpp"
#include "elsa/prng.hpp"

namespace elsa {

using TokenSequence = std::vector<std::string>;

// ---- UTF-8 / emoji helpers ----

// Decodes UTF-8, throwing DataError on malformed input.
std::vector<char32_t> decode_utf8(const std::string& s);
std::string encode_utf8(const std::vector<char32_t>& cps);
std::string encode_utf8(char32_t cp);

// Unicode-property scan: emoji presentation codepoints. ZWJ sequences and
// modifier/variation-selector runs are glued to the preceding emoji by the
// tokenizer so they travel as single tokens.
bool is_emoji_codepoint(char32_t cp);
bool is_emoji_modifier(char32_t cp);
bool is_token_emoji(const std::string& token);

// ---- preprocessing ----

// Drop rule for raw tweets: retweets ("RT " prefix after trimming,
// case-insensitive) and anything containing a URL (http://, https://, or a
// www.-prefixed host).
bool filter_tweet(const std::string& text);

// Lowercases, compresses character runs longer than 2 to exactly 2,
// replaces @-mentions and standalone numeric literals with special tokens.
// Emoji survive this stage. Idempotent.
std::string normalize_text(const std::string& text);

inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kMentionToken = "<mention>";
inline constexpr const char* kNumberToken = "<number>";

// Pluggable word segmenter (the slot a language-specific tool like a
// Japanese morphological analyzer would fill). The default splits on
// whitespace, detaches punctuation, and isolates emoji tokens.
class Segmenter {
 public:
  virtual ~Segmenter() = default;
  virtual TokenSequence segment(const std::string& normalized_text) const = 0;
};

class WhitespaceSegmenter : public Segmenter {
 public:
  TokenSequence segment(const std::string& normalized_text) const override;
};

const Segmenter& default_segmenter();

TokenSequence tokenize(const std::string& normalized_text,
                       const Segmenter& segmenter = default_segmenter());

// Sentence splitting at .!? and their fullwidth forms. ASCII terminators
// split only when followed by whitespace or end of text (keeps "3.5" and
// "e.g." intact); fullwidth terminators split unconditionally since CJK
// text carries no space after them.
std::vector<std::string> split_sentences(const std::string& document);

// ---- vocabularies ----

class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kMention = 2;
  static constexpr int kNumber = 3;

  Vocabulary();

  int lookup(const std::string& token) const;  // kUnk when absent
  bool contains(const std::string& token) const;
  const std::string& token(int id) const;
  std::size_t size() const { return tokens_.size(); }
  int min_count() const { return min_count_; }

  int add(const std::string& token);  // returns existing id if present
  void set_min_count(int m) { min_count_ = m; }

  nlohmann::json to_json() const;
  static Vocabulary from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
  int min_count_ = 1;
};

// Deterministic id assignment: specials first, then tokens with count >=
// min_count by descending frequency, lexicographic tiebreak.
Vocabulary build_vocab(const std::vector<TokenSequence>& corpus,
                       int min_count);

struct EmojiVocabulary {
  std::string language;
  std::vector<std::string> entries;  // rank order, frequency-descending
  std::unordered_map<std::string, int> index;

  int class_of(const std::string& emoji) const {
    auto it = index.find(emoji);
    return it == index.end() ? -1 : it->second;
  }
  std::size_t size() const { return entries.size(); }

  nlohmann::json to_json() const;
  static EmojiVocabulary from_json(const nlohmann::json& j,
                                   const std::string& language);
};

// Ranks emojis by the number of corpus entries containing them (presence,
// not occurrences), codepoint order as tiebreak, and keeps the top k.
EmojiVocabulary build_emoji_vocab(const std::vector<TokenSequence>& corpus,
                                  const std::string& language,
                                  std::size_t k = 64);

// ---- emoji-labeled examples ----

struct EmojiExample {
  TokenSequence tokens;  // emoji tokens removed
  int emoji_class = -1;
};

// One example per distinct in-vocabulary emoji in the sequence, in order of
// first occurrence. Out-of-vocabulary emojis are dropped; every emoji token
// is stripped from the text. Empty result when the stripped text is empty
// or no in-vocabulary emoji occurred.
std::vector<EmojiExample> extract_emoji_examples(const TokenSequence& tokens,
                                                 const EmojiVocabulary& vocab);

// ---- dataset splitting ----

template <class T>
struct DatasetSplit {
  std::vector<T> train, valid, test;
};

// Deterministic seeded shuffle followed by a contiguous partition whose
// sizes are within 1 of the exact proportions (largest-remainder rounding).
template <class T>
DatasetSplit<T> split_dataset(std::vector<T> examples,
                              const std::array<int, 3>& ratios,
                              std::uint64_t seed) {
  for (int r : ratios)
    if (r <= 0) throw ValueError("split_dataset: ratios must be positive");
  if (examples.size() < 3)
    throw DataError("split_dataset: fewer examples than partitions");

  Prng rng(seed);
  rng.shuffle(examples);

  const double n = static_cast<double>(examples.size());
  const double total = static_cast<double>(ratios[0] + ratios[1] + ratios[2]);
  std::array<std::size_t, 3> sizes{};
  std::array<double, 3> frac{};
  std::size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double exact = n * ratios[i] / total;
    sizes[i] = static_cast<std::size_t>(exact);
    frac[i] = exact - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  while (assigned < examples.size()) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (frac[i] > frac[best]) best = i;
    ++sizes[best];
    frac[best] = -1.0;
    ++assigned;
  }

  DatasetSplit<T> out;
  auto it = examples.begin();
  out.train.assign(it, it + sizes[0]);
  it += sizes[0];
  out.valid.assign(it, it + sizes[1]);
  it += sizes[1];
  out.test.assign(it, it + sizes[2]);
  return out;
}

// ---- labeled documents ----

struct LabeledDocument {
  std::vector<TokenSequence> sentences;     // tokenized, parallel to raw_sentences
  std::vector<std::string> raw_sentences;   // original strings for the oracle
  int label = 0;
  std::string language;
  std::string raw;
};

LabeledDocument make_labeled_document(const std::string& text, int label,
                                      const std::string& language,
                                      const Segmenter& seg = default_segmenter());

// JSON-lines: {"text": string, "label": int, "language": string} per line.
std::vector<LabeledDocument> read_labeled_jsonl(
    const std::string& path, const Segmenter& seg = default_segmenter());
void write_labeled_jsonl(const std::string& path,
                         const std::vector<LabeledDocument>& docs);

// One raw document per line, UTF-8, LF-terminated.
std::vector<std::string> read_lines(const std::string& path);
void write_lines(const std::string& path,
                 const std::vector<std::string>& lines);

}  // namespace elsa
