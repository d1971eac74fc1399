#include "elsa/text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace elsa {

// ---- UTF-8 ----

std::vector<char32_t> decode_utf8(const std::string& s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  const auto fail = [&]() -> void {
    throw DataError("invalid UTF-8 at byte " + std::to_string(i));
  };
  while (i < s.size()) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    std::size_t len = 0;
    if (b0 < 0x80) {
      cp = b0;
      len = 1;
    } else if ((b0 & 0xE0) == 0xC0) {
      cp = b0 & 0x1F;
      len = 2;
    } else if ((b0 & 0xF0) == 0xE0) {
      cp = b0 & 0x0F;
      len = 3;
    } else if ((b0 & 0xF8) == 0xF0) {
      cp = b0 & 0x07;
      len = 4;
    } else {
      fail();
    }
    if (i + len > s.size()) fail();
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char b = static_cast<unsigned char>(s[i + k]);
      if ((b & 0xC0) != 0x80) fail();
      cp = (cp << 6) | (b & 0x3F);
    }
    if (len == 2 && cp < 0x80) fail();
    if (len == 3 && cp < 0x800) fail();
    if (len == 4 && cp < 0x10000) fail();
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) fail();
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::string encode_utf8(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t cp : cps) out += encode_utf8(cp);
  return out;
}

// ---- emoji properties ----

namespace {
constexpr char32_t kZwj = 0x200D;

bool is_regional_indicator(char32_t cp) {
  return cp >= 0x1F1E6 && cp <= 0x1F1FF;
}
}  // namespace

bool is_emoji_codepoint(char32_t cp) {
  if (cp >= 0x1F300 && cp <= 0x1F5FF) return true;  // symbols & pictographs
  if (cp >= 0x1F600 && cp <= 0x1F64F) return true;  // emoticons
  if (cp >= 0x1F680 && cp <= 0x1F6FF) return true;  // transport & map
  if (cp >= 0x1F900 && cp <= 0x1F9FF) return true;  // supplemental
  if (cp >= 0x1FA70 && cp <= 0x1FAFF) return true;  // extended-A
  if (cp >= 0x2600 && cp <= 0x26FF) return true;    // misc symbols
  if (cp >= 0x2700 && cp <= 0x27BF) return true;    // dingbats
  if (is_regional_indicator(cp)) return true;
  switch (cp) {
    case 0x2B05:
    case 0x2B06:
    case 0x2B07:
    case 0x2B1B:
    case 0x2B1C:
    case 0x2B50:
    case 0x2B55:
      return true;
    default:
      return false;
  }
}

bool is_emoji_modifier(char32_t cp) {
  return cp == 0xFE0F || (cp >= 0x1F3FB && cp <= 0x1F3FF);
}

bool is_token_emoji(const std::string& token) {
  if (token.empty()) return false;
  std::vector<char32_t> cps;
  try {
    cps = decode_utf8(token);
  } catch (const DataError&) {
    return false;
  }
  if (!is_emoji_codepoint(cps[0])) return false;
  for (char32_t cp : cps)
    if (!is_emoji_codepoint(cp) && !is_emoji_modifier(cp) && cp != kZwj)
      return false;
  return true;
}

// ---- filtering ----

namespace {

bool is_space_cp(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\v' || cp == U'\f' || cp == 0x3000;
}

char to_lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string lower_ascii(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = to_lower_ascii(c);
  return out;
}

std::vector<std::string> split_whitespace(const std::string& s) {
  std::vector<std::string> words;
  std::string cur;
  for (char32_t cp : decode_utf8(s)) {
    if (is_space_cp(cp)) {
      if (!cur.empty()) {
        words.push_back(cur);
        cur.clear();
      }
    } else {
      cur += encode_utf8(cp);
    }
  }
  if (!cur.empty()) words.push_back(cur);
  return words;
}

}  // namespace

bool filter_tweet(const std::string& text) {
  std::size_t start = 0;
  while (start < text.size() &&
         std::isspace(static_cast<unsigned char>(text[start])))
    ++start;
  const std::string trimmed = text.substr(start);
  if (trimmed.size() >= 3) {
    const std::string head = lower_ascii(trimmed.substr(0, 3));
    if (head == "rt ") return true;
  }
  const std::string low = lower_ascii(text);
  if (low.find("http://") != std::string::npos ||
      low.find("https://") != std::string::npos)
    return true;
  for (const std::string& w : split_whitespace(low)) {
    if (w.size() > 4 && w.rfind("www.", 0) == 0) return true;
  }
  return false;
}

// ---- normalization ----

namespace {

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '_';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_trailing_punct(char c) {
  return c == '.' || c == ',' || c == '!' || c == '?' || c == ';' || c == ':';
}

// @handle with optional trailing sentence punctuation.
bool match_mention(const std::string& w, std::string& suffix) {
  if (w.size() < 2 || w[0] != '@') return false;
  std::size_t i = 1;
  while (i < w.size() && is_word_char(w[i])) ++i;
  if (i == 1) return false;
  for (std::size_t k = i; k < w.size(); ++k)
    if (!is_trailing_punct(w[k])) return false;
  suffix = w.substr(i);
  return true;
}

// Optional sign, digits, optional single decimal point, optional trailing
// sentence punctuation.
bool match_number(const std::string& w, std::string& suffix) {
  std::size_t i = 0;
  if (i < w.size() && (w[i] == '+' || w[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < w.size() && is_digit(w[i])) {
    ++i;
    ++digits;
  }
  if (digits == 0) return false;
  if (i < w.size() && w[i] == '.') {
    std::size_t frac = 0;
    ++i;
    while (i < w.size() && is_digit(w[i])) {
      ++i;
      ++frac;
    }
    if (frac == 0) return false;  // "42." is not a numeric literal
  }
  for (std::size_t k = i; k < w.size(); ++k)
    if (!is_trailing_punct(w[k])) return false;
  suffix = w.substr(i);
  return true;
}

std::string squeeze_runs(const std::string& w) {
  const std::vector<char32_t> cps = decode_utf8(w);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  std::size_t i = 0;
  while (i < cps.size()) {
    std::size_t j = i;
    while (j < cps.size() && cps[j] == cps[i]) ++j;
    const std::size_t run = std::min<std::size_t>(j - i, 2);
    for (std::size_t k = 0; k < run; ++k) out.push_back(cps[i]);
    i = j;
  }
  return encode_utf8(out);
}

std::string lower_cp(const std::string& w) {
  // ASCII lowering only; non-ASCII letters pass through unchanged.
  std::string out = w;
  for (char& c : out) c = to_lower_ascii(c);
  return out;
}

}  // namespace

std::string normalize_text(const std::string& text) {
  std::vector<std::string> out;
  for (const std::string& w : split_whitespace(text)) {
    std::string suffix;
    if (match_mention(w, suffix)) {
      out.push_back(std::string(kMentionToken) + suffix);
    } else if (match_number(w, suffix)) {
      out.push_back(std::string(kNumberToken) + suffix);
    } else {
      out.push_back(squeeze_runs(lower_cp(w)));
    }
  }
  std::string joined;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i) joined += ' ';
    joined += out[i];
  }
  return joined;
}

// ---- tokenization ----

namespace {

bool is_punct_cp(char32_t cp) {
  if (cp < 0x80)
    return std::ispunct(static_cast<int>(cp)) != 0;
  switch (cp) {
    case 0x3001:  // 、
    case 0x3002:  // 。
    case 0xFF01:  // ！
    case 0xFF1F:  // ？
    case 0xFF0C:  // ，
    case 0xFF1A:  // ：
    case 0xFF1B:  // ；
    case 0xFF08:  // （
    case 0xFF09:  // ）
    case 0x300C:  // 「
    case 0x300D:  // 」
      return true;
    default:
      return false;
  }
}

const std::array<const char*, 4> kSpecialLiterals = {
    kPadToken, kUnkToken, kMentionToken, kNumberToken};

// Consumes one emoji cluster starting at cps[i]: base emoji plus modifiers,
// a regional-indicator pair, or a ZWJ sequence. Returns one past the end.
std::size_t consume_emoji_cluster(const std::vector<char32_t>& cps,
                                  std::size_t i) {
  std::size_t j = i + 1;
  if (is_regional_indicator(cps[i]) && j < cps.size() &&
      is_regional_indicator(cps[j])) {
    return j + 1;  // flag pair
  }
  while (j < cps.size() && is_emoji_modifier(cps[j])) ++j;
  while (j + 1 < cps.size() && cps[j] == kZwj &&
         is_emoji_codepoint(cps[j + 1])) {
    j += 2;
    while (j < cps.size() && is_emoji_modifier(cps[j])) ++j;
  }
  return j;
}

void segment_word(const std::string& word, TokenSequence& out) {
  const std::vector<char32_t> cps = decode_utf8(word);
  std::size_t i = 0;
  std::size_t byte_pos = 0;
  const auto advance_bytes = [&](std::size_t from, std::size_t to) {
    std::size_t n = 0;
    for (std::size_t k = from; k < to; ++k) n += encode_utf8(cps[k]).size();
    return n;
  };
  while (i < cps.size()) {
    bool special = false;
    for (const char* lit : kSpecialLiterals) {
      const std::size_t len = std::string(lit).size();
      if (word.compare(byte_pos, len, lit) == 0) {
        out.push_back(lit);
        const std::size_t cp_len = decode_utf8(lit).size();
        byte_pos += len;
        i += cp_len;
        special = true;
        break;
      }
    }
    if (special) continue;

    if (is_emoji_codepoint(cps[i])) {
      const std::size_t j = consume_emoji_cluster(cps, i);
      out.push_back(encode_utf8({cps.begin() + i, cps.begin() + j}));
      byte_pos += advance_bytes(i, j);
      i = j;
    } else if (is_punct_cp(cps[i])) {
      out.push_back(encode_utf8(cps[i]));
      byte_pos += advance_bytes(i, i + 1);
      ++i;
    } else {
      std::size_t j = i;
      while (j < cps.size() && !is_emoji_codepoint(cps[j]) &&
             !is_punct_cp(cps[j]))
        ++j;
      out.push_back(encode_utf8({cps.begin() + i, cps.begin() + j}));
      byte_pos += advance_bytes(i, j);
      i = j;
    }
  }
}

}  // namespace

TokenSequence WhitespaceSegmenter::segment(
    const std::string& normalized_text) const {
  TokenSequence out;
  for (const std::string& w : split_whitespace(normalized_text))
    segment_word(w, out);
  return out;
}

const Segmenter& default_segmenter() {
  static const WhitespaceSegmenter seg;
  return seg;
}

TokenSequence tokenize(const std::string& normalized_text,
                       const Segmenter& segmenter) {
  return segmenter.segment(normalized_text);
}

// ---- sentence splitting ----

namespace {

bool is_ascii_terminator(char32_t cp) {
  return cp == U'.' || cp == U'!' || cp == U'?';
}
bool is_fullwidth_terminator(char32_t cp) {
  return cp == 0x3002 || cp == 0xFF01 || cp == 0xFF1F;
}
bool is_terminator(char32_t cp) {
  return is_ascii_terminator(cp) || is_fullwidth_terminator(cp);
}

void flush_sentence(std::vector<char32_t>& cur,
                    std::vector<std::string>& out) {
  std::size_t a = 0, b = cur.size();
  while (a < b && is_space_cp(cur[a])) ++a;
  while (b > a && is_space_cp(cur[b - 1])) --b;
  if (b > a) out.push_back(encode_utf8({cur.begin() + a, cur.begin() + b}));
  cur.clear();
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& document) {
  const std::vector<char32_t> cps = decode_utf8(document);
  std::vector<std::string> out;
  std::vector<char32_t> cur;
  std::size_t i = 0;
  while (i < cps.size()) {
    cur.push_back(cps[i]);
    if (is_terminator(cps[i])) {
      bool has_fullwidth = is_fullwidth_terminator(cps[i]);
      while (i + 1 < cps.size() && is_terminator(cps[i + 1])) {
        ++i;
        cur.push_back(cps[i]);
        has_fullwidth = has_fullwidth || is_fullwidth_terminator(cps[i]);
      }
      const bool at_end = i + 1 >= cps.size();
      const bool before_space = !at_end && is_space_cp(cps[i + 1]);
      if (at_end || before_space || has_fullwidth) {
        flush_sentence(cur, out);
        while (i + 1 < cps.size() && is_space_cp(cps[i + 1])) ++i;
      }
    }
    ++i;
  }
  flush_sentence(cur, out);
  return out;
}

// ---- vocabulary ----

Vocabulary::Vocabulary() {
  add(kPadToken);
  add(kUnkToken);
  add(kMentionToken);
  add(kNumberToken);
}

int Vocabulary::lookup(const std::string& token) const {
  auto it = ids_.find(token);
  return it == ids_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(const std::string& token) const {
  return ids_.count(token) != 0;
}

const std::string& Vocabulary::token(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= tokens_.size())
    throw ValueError("Vocabulary::token: id out of range");
  return tokens_[static_cast<std::size_t>(id)];
}

int Vocabulary::add(const std::string& token) {
  auto it = ids_.find(token);
  if (it != ids_.end()) return it->second;
  const int id = static_cast<int>(tokens_.size());
  tokens_.push_back(token);
  ids_.emplace(token, id);
  return id;
}

nlohmann::json Vocabulary::to_json() const {
  return nlohmann::json{{"tokens", tokens_}, {"min_count", min_count_}};
}

Vocabulary Vocabulary::from_json(const nlohmann::json& j) {
  Vocabulary v;
  const auto& toks = j.at("tokens");
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const std::string t = toks[i].get<std::string>();
    const int id = v.add(t);
    if (id != static_cast<int>(i))
      throw DataError("vocabulary json: duplicate or misordered token '" + t +
                      "'");
  }
  v.min_count_ = j.value("min_count", 1);
  return v;
}

Vocabulary build_vocab(const std::vector<TokenSequence>& corpus,
                       int min_count) {
  if (min_count < 1) throw ValueError("build_vocab: min_count must be >= 1");
  if (corpus.empty()) throw DataError("build_vocab: empty corpus");

  std::unordered_map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const TokenSequence& seq : corpus)
    for (const std::string& t : seq) {
      ++counts[t];
      ++total;
    }
  if (total == 0) throw DataError("build_vocab: empty corpus");

  Vocabulary vocab;
  vocab.set_min_count(min_count);

  std::vector<std::pair<std::string, std::int64_t>> ranked;
  ranked.reserve(counts.size());
  for (const auto& [tok, cnt] : counts) {
    if (vocab.contains(tok)) continue;  // specials keep their fixed ids
    if (cnt >= min_count) ranked.emplace_back(tok, cnt);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  for (const auto& [tok, cnt] : ranked) vocab.add(tok);
  return vocab;
}

// ---- emoji vocabulary ----

nlohmann::json EmojiVocabulary::to_json() const {
  return nlohmann::json(entries);
}

EmojiVocabulary EmojiVocabulary::from_json(const nlohmann::json& j,
                                           const std::string& language) {
  EmojiVocabulary v;
  v.language = language;
  for (const auto& e : j) v.entries.push_back(e.get<std::string>());
  for (std::size_t i = 0; i < v.entries.size(); ++i) {
    if (!v.index.emplace(v.entries[i], static_cast<int>(i)).second)
      throw DataError("emoji vocabulary: duplicate entry " + v.entries[i]);
  }
  return v;
}

EmojiVocabulary build_emoji_vocab(const std::vector<TokenSequence>& corpus,
                                  const std::string& language,
                                  std::size_t k) {
  std::unordered_map<std::string, std::int64_t> presence;
  for (const TokenSequence& seq : corpus) {
    std::set<std::string> seen;
    for (const std::string& t : seq)
      if (is_token_emoji(t)) seen.insert(t);
    for (const std::string& e : seen) ++presence[e];
  }
  if (presence.size() < k)
    throw DataError("build_emoji_vocab: corpus has " +
                    std::to_string(presence.size()) +
                    " distinct emojis, need " + std::to_string(k));

  std::vector<std::pair<std::string, std::int64_t>> ranked(presence.begin(),
                                                           presence.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;  // bytewise == codepoint order for UTF-8
  });

  EmojiVocabulary vocab;
  vocab.language = language;
  for (std::size_t i = 0; i < k; ++i) {
    vocab.entries.push_back(ranked[i].first);
    vocab.index.emplace(ranked[i].first, static_cast<int>(i));
  }
  return vocab;
}

// ---- emoji examples ----

std::vector<EmojiExample> extract_emoji_examples(
    const TokenSequence& tokens, const EmojiVocabulary& vocab) {
  TokenSequence stripped;
  std::vector<int> classes;  // distinct, first-occurrence order
  for (const std::string& t : tokens) {
    if (is_token_emoji(t)) {
      const int cls = vocab.class_of(t);
      if (cls >= 0 &&
          std::find(classes.begin(), classes.end(), cls) == classes.end())
        classes.push_back(cls);
      continue;  // every emoji token is removed from the text
    }
    stripped.push_back(t);
  }
  std::vector<EmojiExample> out;
  if (stripped.empty() || classes.empty()) return out;
  out.reserve(classes.size());
  for (int cls : classes) out.push_back(EmojiExample{stripped, cls});
  return out;
}

// ---- labeled documents ----

LabeledDocument make_labeled_document(const std::string& text, int label,
                                      const std::string& language,
                                      const Segmenter& seg) {
  LabeledDocument doc;
  doc.raw = text;
  doc.label = label;
  doc.language = language;
  for (const std::string& raw_sentence : split_sentences(text)) {
    TokenSequence toks = tokenize(normalize_text(raw_sentence), seg);
    if (toks.empty()) continue;
    doc.raw_sentences.push_back(raw_sentence);
    doc.sentences.push_back(std::move(toks));
  }
  if (doc.sentences.empty())
    throw DataError("labeled document has no tokens: '" + text + "'");
  return doc;
}

std::vector<LabeledDocument> read_labeled_jsonl(const std::string& path,
                                                const Segmenter& seg) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<LabeledDocument> docs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
    docs.push_back(make_labeled_document(j.at("text").get<std::string>(),
                                         j.at("label").get<int>(),
                                         j.at("language").get<std::string>(),
                                         seg));
  }
  return docs;
}

void write_labeled_jsonl(const std::string& path,
                         const std::vector<LabeledDocument>& docs) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const LabeledDocument& d : docs) {
    nlohmann::json j{
        {"text", d.raw}, {"label", d.label}, {"language", d.language}};
    out << j.dump() << '\n';
  }
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_lines(const std::string& path,
                 const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const std::string& l : lines) out << l << '\n';
}

}  // namespace elsa
