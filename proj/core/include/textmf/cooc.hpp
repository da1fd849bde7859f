#pragma once

#include <Eigen/Dense>

#include "textmf/textprep.hpp"

namespace textmf::cooc {

/// Distance-weighted co-occurrence counts over a vocabulary.
struct CoocMatrix {
  Eigen::MatrixXd counts;  // n x n, entry (base, context)
  int window_size = 0;
  bool symmetric = false;

  Eigen::Index n() const { return counts.rows(); }
};

/// Clipped pointwise mutual information values plus the count masses they
/// were derived from.
struct PpmiMatrix {
  Eigen::MatrixXd values;   // n x n, non-negative
  double total_mass = 0.0;  // sum of all co-occurrence counts
  Eigen::VectorXd row_mass;
  Eigen::VectorXd col_mass;

  Eigen::Index n() const { return values.rows(); }
};

/// Counts context words around every base token within the same document.
/// A context token d positions away (1 <= d <= window_size) contributes 1/d;
/// with symmetric set, the mirrored pair receives the same increment, which
/// equals accumulating the forward window and adding its transpose. Windows
/// never cross document boundaries.
///
/// zero_diagonal drops self co-occurrences of repeated words after counting.
/// Throws InputError on an empty corpus or window_size < 1.
CoocMatrix count_cooccurrences(const textprep::Corpus& corpus, int window_size, bool symmetric,
                               bool zero_diagonal = false);

/// Transforms counts into clipped PMI: max(0, ln(W_ij * N / (N_i * N_j)))
/// for W_ij > 0 and exactly 0 otherwise, so zero counts never evaluate a
/// log of zero. The single-ratio form keeps uniform matrices at exactly 0
/// and preserves symmetry bit-for-bit.
///
/// Throws InputError when the count matrix is all zero.
PpmiMatrix ppmi(const CoocMatrix& cooc);

}  // namespace textmf::cooc
