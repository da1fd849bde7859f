#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "textmf/cooc.hpp"

namespace textmf::dedicom {

/// Factorization state: unconstrained loadings plus the topic affinity matrix.
/// The row-stochastic loadings are always derived, never stored.
struct DedicomModel {
  Eigen::MatrixXd A_raw;  // n x k
  Eigen::MatrixXd R;      // k x k

  Eigen::Index n() const { return A_raw.rows(); }
  Eigen::Index k() const { return A_raw.cols(); }
  long parameter_count() const { return static_cast<long>(n() * k() + k() * k()); }
};

/// Row-stochastic loadings together with the column statistics they were
/// normalized by.
struct RowStochasticA {
  Eigen::MatrixXd A_prime;   // n x k, rows sum to 1, entries in (0, 1]
  Eigen::VectorXd col_means; // per-column mean of the source A_raw
  Eigen::VectorXd col_stds;  // per-column population std of the source A_raw
};

struct TrainConfig {
  Eigen::Index k = 6;
  double lr_a = 0.001;
  double lr_r = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  long num_epochs = 15000;
  std::uint64_t seed = 0;
  long loss_log_stride = 1;

  /// Evaluate both gradients at the epoch start instead of refreshing the
  /// affinity gradient after the loading update.
  bool simultaneous_gradients = false;

  /// Optional early stop: relative loss improvement below
  /// early_stop_rel_tol across early_stop_window epochs ends training.
  /// Off by default; the fixed epoch budget is the reference behaviour.
  bool early_stop = false;
  double early_stop_rel_tol = 1e-8;
  long early_stop_window = 100;
};

struct TrainTrace {
  std::vector<std::pair<long, double>> losses;  // (epoch, loss at epoch start)
  double wall_time_seconds = 0.0;
  double final_loss = 0.0;
};

struct TrainResult {
  DedicomModel model;
  RowStochasticA a_prime;
  TrainTrace trace;
};

struct Gradients {
  Eigen::MatrixXd grad_A;  // n x k, with respect to A_raw
  Eigen::MatrixXd grad_R;  // k x k
};

/// First-moment/second-moment optimizer state for one parameter matrix.
struct AdamState {
  Eigen::MatrixXd m;
  Eigen::MatrixXd v;
  long t = 0;

  AdamState() = default;
  AdamState(Eigen::Index rows, Eigen::Index cols)
      : m(Eigen::MatrixXd::Zero(rows, cols)), v(Eigen::MatrixXd::Zero(rows, cols)) {}
};

/// Row-wise softmax over the column-wise z-normalized matrix. Column
/// statistics use the population convention (divide by n); a column whose
/// std falls below 1e-12 contributes all-zero z-scores. The softmax
/// subtracts the row maximum before exponentiation.
///
/// Throws InputError when A_raw has fewer than 2 rows.
RowStochasticA row_softmax_znorm(const Eigen::MatrixXd& A_raw);

/// A_prime * R * A_prime^T as two dense products.
Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& A_prime, const Eigen::MatrixXd& R);

/// Squared Frobenius distance between S and the model reconstruction.
double loss(const Eigen::MatrixXd& S, const DedicomModel& model);
inline double loss(const cooc::PpmiMatrix& S, const DedicomModel& model) {
  return loss(S.values, model);
}

/// Exact gradients of the squared Frobenius loss with respect to A_raw and
/// R, including the paths through the softmax and through the column mean
/// and std of the z-normalization.
Gradients gradients(const Eigen::MatrixXd& S, const DedicomModel& model);
inline Gradients gradients(const cooc::PpmiMatrix& S, const DedicomModel& model) {
  return gradients(S.values, model);
}

/// One bias-corrected Adam update, in place. state.t counts steps from 1.
void adam_step(Eigen::MatrixXd& param, const Eigen::MatrixXd& grad, AdamState& state, double lr,
               double beta1, double beta2, double epsilon);

/// Entries of A_raw and R drawn i.i.d. from U(0, 2) scaled by s_bar, the
/// element mean of the target matrix. Throws InputError when s_bar <= 0 or
/// the requested shape is degenerate (k < 2 or k > n).
DedicomModel init_model(Eigen::Index n, Eigen::Index k, std::uint64_t seed, double s_bar);

/// Observer invoked at every loss-logging epoch with the epoch number, the
/// loss at the epoch start and the current model.
using EpochCallback = std::function<void(long epoch, double loss, const DedicomModel& model)>;

/// Alternating gradient descent: each epoch evaluates the loss once, updates
/// the loadings with their Adam step, then updates the affinity matrix. By
/// default the affinity gradient is evaluated after the loading update,
/// following the sequential update lines; simultaneous_gradients reuses the
/// epoch-start point for both.
///
/// Throws InputError on invalid shapes or config and NumericError (naming
/// the epoch) when the loss turns non-finite.
TrainResult train(const Eigen::MatrixXd& S, const TrainConfig& config,
                  const EpochCallback& callback = nullptr);
inline TrainResult train(const cooc::PpmiMatrix& S, const TrainConfig& config,
                         const EpochCallback& callback = nullptr) {
  return train(S.values, config, callback);
}

}  // namespace textmf::dedicom
