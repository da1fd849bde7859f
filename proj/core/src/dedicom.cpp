#include "textmf/dedicom.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "textmf/errors.hpp"
#include "textmf/rng.hpp"

namespace textmf::dedicom {

namespace {

constexpr double kDeadColumnStd = 1e-12;

// Forward evaluation shared by loss, gradients and the training loop.
struct Forward {
  RowStochasticA rs;
  Eigen::MatrixXd z;      // z-normalized A_raw (zero for dead columns)
  Eigen::MatrixXd recon;  // A' R A'^T
  Eigen::MatrixXd diff;   // recon - S
  double loss = 0.0;
};

RowStochasticA softmax_of_z(const Eigen::MatrixXd& z, const Eigen::VectorXd& means,
                            const Eigen::VectorXd& stds) {
  RowStochasticA rs;
  rs.col_means = means;
  rs.col_stds = stds;
  rs.A_prime.resize(z.rows(), z.cols());
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double row_max = z.row(i).maxCoeff();
    Eigen::RowVectorXd e = (z.row(i).array() - row_max).exp();
    rs.A_prime.row(i) = e / e.sum();
  }
  return rs;
}

Eigen::MatrixXd znorm(const Eigen::MatrixXd& A_raw, Eigen::VectorXd& means,
                      Eigen::VectorXd& stds) {
  const Eigen::Index n = A_raw.rows();
  const Eigen::Index k = A_raw.cols();
  means = A_raw.colwise().mean();
  Eigen::MatrixXd centered = A_raw.rowwise() - means.transpose();
  stds = (centered.array().square().colwise().sum() / static_cast<double>(n))
             .sqrt()
             .matrix()
             .transpose();
  Eigen::MatrixXd z(n, k);
  for (Eigen::Index b = 0; b < k; ++b) {
    if (stds(b) < kDeadColumnStd) {
      z.col(b).setZero();
    } else {
      z.col(b) = centered.col(b) / stds(b);
    }
  }
  return z;
}

Forward evaluate(const Eigen::MatrixXd& S, const Eigen::MatrixXd& A_raw,
                 const Eigen::MatrixXd& R) {
  Forward f;
  Eigen::VectorXd means, stds;
  f.z = znorm(A_raw, means, stds);
  f.rs = softmax_of_z(f.z, means, stds);
  f.recon = reconstruct(f.rs.A_prime, R);
  f.diff = f.recon - S;
  f.loss = f.diff.squaredNorm();
  return f;
}

// Gradient with respect to A_raw given the gradient with respect to A'.
Eigen::MatrixXd backprop_to_raw(const Eigen::MatrixXd& grad_A_prime, const Forward& f) {
  const Eigen::MatrixXd& A_prime = f.rs.A_prime;
  const Eigen::Index n = A_prime.rows();
  const Eigen::Index k = A_prime.cols();

  // Softmax backward, row by row: g_z = A' .* (g - <g, A'>_row).
  Eigen::VectorXd row_dot = (grad_A_prime.array() * A_prime.array()).rowwise().sum();
  Eigen::MatrixXd grad_z =
      A_prime.array() * (grad_A_prime.array().colwise() - row_dot.array());

  // Z-normalization backward, column by column; the column mean and std are
  // functions of A_raw and are differentiated through.
  Eigen::MatrixXd grad_raw(n, k);
  for (Eigen::Index b = 0; b < k; ++b) {
    const double sigma = f.rs.col_stds(b);
    if (sigma < kDeadColumnStd) {
      grad_raw.col(b).setZero();
      continue;
    }
    const double mean_g = grad_z.col(b).mean();
    const double mean_gz = (grad_z.col(b).array() * f.z.col(b).array()).mean();
    grad_raw.col(b) =
        (grad_z.col(b).array() - mean_g - f.z.col(b).array() * mean_gz) / sigma;
  }
  return grad_raw;
}

Eigen::MatrixXd grad_A_at(const Eigen::MatrixXd& R, const Forward& f) {
  const Eigen::MatrixXd& A_prime = f.rs.A_prime;
  Eigen::MatrixXd grad_A_prime =
      2.0 * (f.diff * A_prime * R.transpose() + f.diff.transpose() * A_prime * R);
  return backprop_to_raw(grad_A_prime, f);
}

Eigen::MatrixXd grad_R_at(const Forward& f) {
  const Eigen::MatrixXd& A_prime = f.rs.A_prime;
  return 2.0 * A_prime.transpose() * f.diff * A_prime;
}

void validate_loss(double value, long epoch) {
  if (!std::isfinite(value)) {
    throw NumericError("non-finite loss at epoch " + std::to_string(epoch));
  }
}

}  // namespace

RowStochasticA row_softmax_znorm(const Eigen::MatrixXd& A_raw) {
  if (A_raw.rows() < 2) {
    throw InputError("row_softmax_znorm requires at least 2 rows");
  }
  Eigen::VectorXd means, stds;
  Eigen::MatrixXd z = znorm(A_raw, means, stds);
  return softmax_of_z(z, means, stds);
}

Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& A_prime, const Eigen::MatrixXd& R) {
  if (A_prime.cols() != R.rows() || R.rows() != R.cols()) {
    throw InputError("reconstruct: shape mismatch between loadings and affinity matrix");
  }
  return A_prime * R * A_prime.transpose();
}

double loss(const Eigen::MatrixXd& S, const DedicomModel& model) {
  if (S.rows() != S.cols() || S.rows() != model.n()) {
    throw InputError("loss: target matrix shape does not match the model");
  }
  const Forward f = evaluate(S, model.A_raw, model.R);
  if (!std::isfinite(f.loss)) throw NumericError("loss: non-finite value");
  return f.loss;
}

Gradients gradients(const Eigen::MatrixXd& S, const DedicomModel& model) {
  if (S.rows() != S.cols() || S.rows() != model.n()) {
    throw InputError("gradients: target matrix shape does not match the model");
  }
  const Forward f = evaluate(S, model.A_raw, model.R);
  if (!std::isfinite(f.loss)) throw NumericError("gradients: non-finite loss");
  Gradients g;
  g.grad_A = grad_A_at(model.R, f);
  g.grad_R = grad_R_at(f);
  if (!g.grad_A.allFinite() || !g.grad_R.allFinite()) {
    throw NumericError("gradients: non-finite gradient entries");
  }
  return g;
}

void adam_step(Eigen::MatrixXd& param, const Eigen::MatrixXd& grad, AdamState& state, double lr,
               double beta1, double beta2, double epsilon) {
  if (param.rows() != grad.rows() || param.cols() != grad.cols()) {
    throw InputError("adam_step: parameter and gradient shapes differ");
  }
  if (state.m.size() == 0) state = AdamState(param.rows(), param.cols());
  state.t += 1;
  state.m = beta1 * state.m + (1.0 - beta1) * grad;
  state.v = beta2 * state.v + (1.0 - beta2) * grad.array().square().matrix();
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.t));
  param.array() -=
      lr * (state.m.array() / bc1) / ((state.v.array() / bc2).sqrt() + epsilon);
}

DedicomModel init_model(Eigen::Index n, Eigen::Index k, std::uint64_t seed, double s_bar) {
  if (k < 2 || k > n) throw InputError("init_model requires 2 <= k <= n");
  if (!(s_bar > 0.0)) {
    throw InputError("init_model: target element mean must be positive");
  }
  Rng rng(seed);
  DedicomModel model;
  model.A_raw.resize(n, k);
  model.R.resize(k, k);
  // Row-major fill order so the draw sequence is part of the format.
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) model.A_raw(i, j) = rng.uniform02() * s_bar;
  }
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) model.R(i, j) = rng.uniform02() * s_bar;
  }
  return model;
}

TrainResult train(const Eigen::MatrixXd& S, const TrainConfig& config,
                  const EpochCallback& callback) {
  if (S.rows() != S.cols()) throw InputError("train: target matrix must be square");
  if (S.rows() < 2) throw InputError("train: target matrix must be at least 2x2");
  if (config.num_epochs < 1) throw InputError("train: num_epochs must be >= 1");
  if (config.loss_log_stride < 1) throw InputError("train: loss_log_stride must be >= 1");
  if (config.lr_a <= 0.0 || config.lr_r <= 0.0) {
    throw InputError("train: learning rates must be positive");
  }
  if (config.beta1 <= 0.0 || config.beta1 >= 1.0 || config.beta2 <= 0.0 || config.beta2 >= 1.0) {
    throw InputError("train: beta parameters must lie in (0, 1)");
  }
  if (config.epsilon <= 0.0) throw InputError("train: epsilon must be positive");

  const double s_bar = S.mean();
  DedicomModel model = init_model(S.rows(), config.k, config.seed, s_bar);
  AdamState state_A(model.A_raw.rows(), model.A_raw.cols());
  AdamState state_R(model.R.rows(), model.R.cols());

  TrainResult result;
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> epoch_losses;
  if (config.early_stop) epoch_losses.reserve(static_cast<std::size_t>(config.num_epochs));

  for (long epoch = 1; epoch <= config.num_epochs; ++epoch) {
    Forward f = evaluate(S, model.A_raw, model.R);
    validate_loss(f.loss, epoch);

    const bool log_epoch = (epoch - 1) % config.loss_log_stride == 0;
    if (log_epoch) result.trace.losses.emplace_back(epoch, f.loss);
    if (callback && log_epoch) callback(epoch, f.loss, model);

    if (config.simultaneous_gradients) {
      const Eigen::MatrixXd gA = grad_A_at(model.R, f);
      const Eigen::MatrixXd gR = grad_R_at(f);
      adam_step(model.A_raw, gA, state_A, config.lr_a, config.beta1, config.beta2,
                config.epsilon);
      adam_step(model.R, gR, state_R, config.lr_r, config.beta1, config.beta2, config.epsilon);
    } else {
      const Eigen::MatrixXd gA = grad_A_at(model.R, f);
      adam_step(model.A_raw, gA, state_A, config.lr_a, config.beta1, config.beta2,
                config.epsilon);
      // Affinity gradient at the already-updated loadings.
      const Forward f2 = evaluate(S, model.A_raw, model.R);
      validate_loss(f2.loss, epoch);
      adam_step(model.R, grad_R_at(f2), state_R, config.lr_r, config.beta1, config.beta2,
                config.epsilon);
    }

    if (config.early_stop) {
      epoch_losses.push_back(f.loss);
      const auto w = static_cast<std::size_t>(config.early_stop_window);
      if (epoch_losses.size() > w) {
        const double before = epoch_losses[epoch_losses.size() - 1 - w];
        const double relative = (before - f.loss) / std::max(std::abs(before), 1e-30);
        if (relative < config.early_stop_rel_tol) break;
      }
    }
  }

  Forward final_forward = evaluate(S, model.A_raw, model.R);
  validate_loss(final_forward.loss, config.num_epochs);
  result.trace.final_loss = final_forward.loss;
  result.trace.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.a_prime = std::move(final_forward.rs);
  result.model = std::move(model);
  return result;
}

}  // namespace textmf::dedicom
