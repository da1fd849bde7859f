#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "textmf/cooc.hpp"
#include "textmf/dedicom.hpp"

namespace textmf::baselines {

/// Non-negative factor pair S ~ W * H.
struct NmfModel {
  Eigen::MatrixXd W;  // n x k
  Eigen::MatrixXd H;  // k x n

  Eigen::Index n() const { return W.rows(); }
  Eigen::Index k() const { return W.cols(); }
  long parameter_count() const { return static_cast<long>(2 * n() * k()); }
};

/// Truncated factors S ~ U * diag(sigma) * V^T with orthonormal U, V columns
/// and non-increasing sigma.
struct SvdModel {
  Eigen::MatrixXd U;      // n x k
  Eigen::VectorXd sigma;  // k, non-negative, sorted descending
  Eigen::MatrixXd V;      // n x k

  Eigen::Index n() const { return U.rows(); }
  Eigen::Index k() const { return U.cols(); }
  long parameter_count() const { return static_cast<long>(2 * n() * k() + k() * k()); }

  Eigen::MatrixXd reconstruction() const { return U * sigma.asDiagonal() * V.transpose(); }
  /// Word embeddings: rows of U scaled by the singular values.
  Eigen::MatrixXd embeddings() const { return U * sigma.asDiagonal(); }
};

struct NmfResult {
  NmfModel model;
  dedicom::TrainTrace trace;
};

/// Multiplicative updates for the squared Frobenius objective:
///   H <- H .* (W^T S) ./ (W^T W H + delta)
///   W <- W .* (S H^T) ./ (W H H^T + delta)
/// with delta = 1e-12 guarding the denominators. Factors are initialized
/// from seeded U(0, 1) draws scaled by sqrt(mean(S) / k) so the initial
/// reconstruction mass matches the target. The trace records the loss at
/// the start of every iteration.
///
/// Throws InputError for a non-positive or misshapen target and
/// NumericError when the loss turns non-finite.
NmfResult nmf_train(const Eigen::MatrixXd& S, Eigen::Index k, long iterations,
                    std::uint64_t seed);
inline NmfResult nmf_train(const cooc::PpmiMatrix& S, Eigen::Index k, long iterations,
                           std::uint64_t seed) {
  return nmf_train(S.values, k, iterations, seed);
}

/// Best rank-k factors in the Frobenius sense. Symmetric inputs go through a
/// self-adjoint eigendecomposition (singular values are the absolute
/// eigenvalues); general inputs use a dense SVD.
SvdModel svd_truncate(const Eigen::MatrixXd& S, Eigen::Index k);
inline SvdModel svd_truncate(const cooc::PpmiMatrix& S, Eigen::Index k) {
  return svd_truncate(S.values, k);
}

/// Squared Frobenius norm of S - reconstruction; the single loss definition
/// shared by every factorization method.
double common_loss(const Eigen::MatrixXd& S, const Eigen::MatrixXd& reconstruction);

}  // namespace textmf::baselines
