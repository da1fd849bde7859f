#include "textmf/cooc.hpp"

#include <cmath>

#include "textmf/errors.hpp"

namespace textmf::cooc {

CoocMatrix count_cooccurrences(const textprep::Corpus& corpus, int window_size, bool symmetric,
                               bool zero_diagonal) {
  if (window_size < 1) throw InputError("window_size must be >= 1");
  if (corpus.vocab.empty() || corpus.total_tokens() == 0) {
    throw InputError("cannot count co-occurrences of an empty corpus");
  }

  const auto n = static_cast<Eigen::Index>(corpus.vocab.size());
  CoocMatrix result;
  result.counts = Eigen::MatrixXd::Zero(n, n);
  result.window_size = window_size;
  result.symmetric = symmetric;

  for (const auto& doc : corpus.documents) {
    const auto& tokens = doc.tokens;
    const std::size_t len = tokens.size();
    for (std::size_t p = 0; p < len; ++p) {
      const auto base = static_cast<Eigen::Index>(tokens[p]);
      const std::size_t last = std::min(len - 1, p + static_cast<std::size_t>(window_size));
      for (std::size_t q = p + 1; q <= last; ++q) {
        const auto context = static_cast<Eigen::Index>(tokens[q]);
        const double weight = 1.0 / static_cast<double>(q - p);
        result.counts(base, context) += weight;
        if (symmetric) result.counts(context, base) += weight;
      }
    }
  }

  if (zero_diagonal) result.counts.diagonal().setZero();
  return result;
}

PpmiMatrix ppmi(const CoocMatrix& cooc) {
  const Eigen::Index n = cooc.n();
  const Eigen::MatrixXd& counts = cooc.counts;

  PpmiMatrix result;
  result.row_mass = counts.rowwise().sum();
  result.col_mass = counts.colwise().sum().transpose();
  result.total_mass = counts.sum();
  if (result.total_mass <= 0.0) {
    throw InputError("ppmi requires a co-occurrence matrix with positive total mass");
  }

  result.values = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double ni = result.row_mass(i);
    if (ni <= 0.0) continue;  // zero-mass row stays all zero
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = counts(i, j);
      if (w <= 0.0) continue;
      const double nj = result.col_mass(j);
      const double pmi = std::log((w * result.total_mass) / (ni * nj));
      if (pmi > 0.0) result.values(i, j) = pmi;
    }
  }
  return result;
}

}  // namespace textmf::cooc
