#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace textmf::textprep {

/// Tokenization and filtering rules.
struct PreprocessConfig {
  std::unordered_set<std::string> stopwords;  // empty set disables the filter
  int min_token_length = 2;
  bool lowercase = true;

  /// Defaults: bundled English stop word list, minimum length 2, lowercasing on.
  static PreprocessConfig defaults();
};

/// The bundled English stop word list (identical to data/stopwords_en.txt).
const std::unordered_set<std::string>& default_stopwords();

/// Parses a stop word file: one token per line, UTF-8, '#' starts a comment.
std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path);

/// Lowercases, tokenizes and filters raw text, preserving token order.
///
/// A token is a maximal run of letters (with word-internal apostrophes kept
/// long enough to match contraction stop words such as "you're", then split).
/// Tokens matching the stop word list or shorter than min_token_length code
/// points are dropped; digits and punctuation never survive tokenization.
std::vector<std::string> preprocess(std::string_view raw_text, const PreprocessConfig& config);

struct Document {
  std::string id;
  std::string raw_text;                 // empty when loaded from a corpus cache
  std::vector<std::uint32_t> tokens;    // indices into the owning Corpus vocab
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<std::string> vocab;       // seeded-shuffle order
  std::unordered_map<std::string, std::uint32_t> vocab_index;
  std::uint64_t shuffle_seed = 0;

  std::size_t total_tokens() const;
};

/// Preprocesses every document, collects the vocabulary in first-occurrence
/// order, shuffles it with a seeded Fisher-Yates permutation (see Rng for the
/// generator contract) and index-maps all documents against the result.
///
/// Throws InputError on duplicate document ids.
Corpus build_corpus(const std::vector<std::pair<std::string, std::string>>& documents,
                    const PreprocessConfig& config, std::uint64_t shuffle_seed);

}  // namespace textmf::textprep
