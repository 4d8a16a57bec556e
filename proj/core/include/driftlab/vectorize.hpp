#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "driftlab/sparse.hpp"

namespace driftlab {

/// Lowercased maximal runs of Unicode letters and digits, in input order.
/// Input is treated as UTF-8; invalid byte sequences act as separators.
std::vector<std::string> tokenize(std::string_view text);

inline constexpr std::size_t kDefaultMaxFeatures = 20000;

/// Term index and smoothed IDF weights fitted on a reference corpus.
///
/// Indices are assigned in lexicographic order of the retained terms, and
/// idf[t] = ln((1 + n_docs) / (1 + df[t])) + 1.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Rebuilds a vocabulary from stored terms (index order) and document frequencies.
  Vocabulary(std::vector<std::string> terms, std::vector<std::size_t> document_frequency,
             std::size_t n_docs_fitted);

  std::size_t size() const noexcept { return terms_.size(); }
  std::size_t n_docs_fitted() const noexcept { return n_docs_fitted_; }

  /// Column index of `term`, or -1 when the term was not retained.
  Index index_of(std::string_view term) const;

  const std::vector<std::string>& terms() const noexcept { return terms_; }
  const std::vector<std::size_t>& document_frequency() const noexcept { return df_; }
  const std::vector<double>& idf() const noexcept { return idf_; }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::vector<double> idf_;
  std::unordered_map<std::string, Index, Hash, std::equal_to<>> index_;
  std::size_t n_docs_fitted_ = 0;
};

/// Keeps the `max_features` most document-frequent terms (ties broken by
/// ascending term). Throws ParameterError on an empty corpus or max_features 0.
Vocabulary fit_vocabulary(std::span<const std::string> corpus,
                          std::size_t max_features = kDefaultMaxFeatures);

/// Raw term count times idf, each nonzero row scaled to unit L2 norm.
/// Terms outside the vocabulary are ignored.
SparseMatrix transform_tfidf(std::span<const std::string> docs, const Vocabulary& vocab);

}  // namespace driftlab
