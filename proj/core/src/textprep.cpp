#include "textmf/textprep.hpp"

#include <fstream>
#include <unordered_set>

#include "textmf/errors.hpp"
#include "textmf/rng.hpp"
#include "textmf/utf8.hpp"

namespace textmf::textprep {

namespace {

constexpr char32_t kApostrophe = 0x27;
constexpr char32_t kRightSingleQuote = 0x2019;  // common in Wikipedia text

bool is_apostrophe(char32_t cp) { return cp == kApostrophe || cp == kRightSingleQuote; }

std::size_t codepoint_length(std::string_view token) {
  return utf8::decode(token).size();
}

void emit_if_kept(std::string&& token, const PreprocessConfig& config,
                  std::vector<std::string>& out) {
  if (token.empty()) return;
  if (config.stopwords.contains(token)) return;
  if (codepoint_length(token) < static_cast<std::size_t>(config.min_token_length)) return;
  out.push_back(std::move(token));
}

}  // namespace

PreprocessConfig PreprocessConfig::defaults() {
  PreprocessConfig config;
  config.stopwords = default_stopwords();
  return config;
}

std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stop word file: " + path.string());
  std::unordered_set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    words.insert(line.substr(start));
  }
  return words;
}

std::vector<std::string> preprocess(std::string_view raw_text, const PreprocessConfig& config) {
  if (config.min_token_length < 1) throw InputError("min_token_length must be >= 1");

  std::vector<char32_t> cps = utf8::decode(raw_text);
  if (config.lowercase) {
    for (char32_t& cp : cps) cp = utf8::to_lower(cp);
  }

  std::vector<std::string> out;
  std::size_t i = 0;
  const std::size_t size = cps.size();
  while (i < size) {
    // Skip separators: anything that is neither a letter nor an apostrophe.
    while (i < size && !utf8::is_alpha(cps[i]) && !is_apostrophe(cps[i])) ++i;
    std::size_t begin = i;
    while (i < size && (utf8::is_alpha(cps[i]) || is_apostrophe(cps[i]))) ++i;
    if (i == begin) continue;

    // Trim edge apostrophes; quoting never belongs to the word.
    std::size_t lo = begin, hi = i;
    while (lo < hi && is_apostrophe(cps[lo])) ++lo;
    while (hi > lo && is_apostrophe(cps[hi - 1])) --hi;
    if (lo == hi) continue;

    std::string token;
    bool has_apostrophe = false;
    for (std::size_t j = lo; j < hi; ++j) {
      if (is_apostrophe(cps[j])) {
        token.push_back('\'');
        has_apostrophe = true;
      } else {
        utf8::encode(cps[j], token);
      }
    }

    // Whole-token stop word check first so contractions ("you're", "we'll")
    // are dropped intact; surviving tokens then split at apostrophes.
    if (config.stopwords.contains(token)) continue;
    if (!has_apostrophe) {
      emit_if_kept(std::move(token), config, out);
      continue;
    }
    std::size_t part_begin = 0;
    for (std::size_t j = 0; j <= token.size(); ++j) {
      if (j == token.size() || token[j] == '\'') {
        emit_if_kept(token.substr(part_begin, j - part_begin), config, out);
        part_begin = j + 1;
      }
    }
  }
  return out;
}

std::size_t Corpus::total_tokens() const {
  std::size_t n = 0;
  for (const auto& doc : documents) n += doc.tokens.size();
  return n;
}

Corpus build_corpus(const std::vector<std::pair<std::string, std::string>>& documents,
                    const PreprocessConfig& config, std::uint64_t shuffle_seed) {
  Corpus corpus;
  corpus.shuffle_seed = shuffle_seed;

  std::unordered_set<std::string> seen_ids;
  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(documents.size());
  for (const auto& [id, raw_text] : documents) {
    if (!seen_ids.insert(id).second) {
      throw InputError("duplicate document id: " + id);
    }
    tokenized.push_back(preprocess(raw_text, config));
  }

  // Vocabulary in first-occurrence order, then a seeded Fisher-Yates shuffle.
  std::unordered_map<std::string, std::uint32_t> first_index;
  for (const auto& tokens : tokenized) {
    for (const auto& token : tokens) {
      if (!first_index.contains(token)) {
        first_index.emplace(token, static_cast<std::uint32_t>(corpus.vocab.size()));
        corpus.vocab.push_back(token);
      }
    }
  }
  Rng rng(shuffle_seed);
  for (std::size_t i = corpus.vocab.size(); i > 1; --i) {
    const std::size_t j = rng.bounded(i);
    std::swap(corpus.vocab[i - 1], corpus.vocab[j]);
  }
  corpus.vocab_index.reserve(corpus.vocab.size());
  for (std::uint32_t i = 0; i < corpus.vocab.size(); ++i) {
    corpus.vocab_index.emplace(corpus.vocab[i], i);
  }

  corpus.documents.reserve(documents.size());
  for (std::size_t d = 0; d < documents.size(); ++d) {
    Document doc;
    doc.id = documents[d].first;
    doc.raw_text = documents[d].second;
    doc.tokens.reserve(tokenized[d].size());
    for (const auto& token : tokenized[d]) {
      doc.tokens.push_back(corpus.vocab_index.at(token));
    }
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace textmf::textprep
