#include "catlab/fock.hpp"

#include <cmath>

namespace catlab::fock {

std::pair<Mat, Mat> ladder_operators(const SpaceConfig& cfg) {
  Mat lower = Mat::Zero(cfg.dim, cfg.dim);
  for (int n = 1; n < cfg.dim; ++n)
    lower(n - 1, n) = std::sqrt(static_cast<double>(n));
  Mat raise = lower.adjoint();
  return {std::move(lower), std::move(raise)};
}

int required_dim(double alpha_abs) {
  const double a2 = alpha_abs * alpha_abs;
  return static_cast<int>(std::ceil(a2 + 8.0 * std::sqrt(a2 + 1.0) + 10.0));
}

void check_truncation(double alpha_abs, const SpaceConfig& cfg) {
  const int need = required_dim(alpha_abs);
  if (cfg.dim < need)
    throw TruncationError(need, cfg.dim);
}

MotionalState coherent_state(Complex alpha, const SpaceConfig& cfg) {
  check_truncation(std::abs(alpha), cfg);
  Vec c = Vec::Zero(cfg.dim);
  if (alpha == Complex(0.0, 0.0)) {
    c[0] = 1.0;
    return {std::move(c), true};
  }
  const double a2 = std::norm(alpha);
  const double log_mod = std::log(std::abs(alpha));
  const double phase = std::arg(alpha);
  double log_fact = 0.0; // accumulated log(n!)
  for (int n = 0; n < cfg.dim; ++n) {
    if (n > 0)
      log_fact += std::log(static_cast<double>(n));
    const double mag = std::exp(-0.5 * a2 + n * log_mod - 0.5 * log_fact);
    c[n] = std::polar(mag, n * phase);
  }
  c.normalize(); // unit norm after truncation
  return {std::move(c), true};
}

Mat unitary_from_generator(const Mat& G, double theta) {
  if (G.rows() != G.cols())
    throw std::invalid_argument("unitary_from_generator: generator not square");
  const double herm_defect = max_abs(G - G.adjoint());
  if (herm_defect > 1e-12)
    throw std::invalid_argument(
        "unitary_from_generator: generator not Hermitian (defect " +
        std::to_string(herm_defect) + ")");

  Eigen::SelfAdjointEigenSolver<Mat> es(G);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("unitary_from_generator: eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  const Mat& v = es.eigenvectors();
  Vec phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i)
    phases[i] = std::exp(Complex(0.0, -theta * w[i]));
  return v * phases.asDiagonal() * v.adjoint();
}

Mat embed_blocks(const Mat& ee, const Mat& eg, const Mat& ge, const Mat& gg) {
  const auto n = ee.rows();
  if (ee.cols() != n || eg.rows() != n || eg.cols() != n || ge.rows() != n ||
      ge.cols() != n || gg.rows() != n || gg.cols() != n)
    throw std::invalid_argument("embed_blocks: blocks must be square and of equal size");
  Mat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = ee;
  out.topRightCorner(n, n) = eg;
  out.bottomLeftCorner(n, n) = ge;
  out.bottomRightCorner(n, n) = gg;
  return out;
}

namespace {

double fidelity_impl(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("fidelity: dimension mismatch");
  if (std::abs(a.squaredNorm() - 1.0) > 1e-6 ||
      std::abs(b.squaredNorm() - 1.0) > 1e-6)
    throw std::invalid_argument("fidelity: states must be normalized");
  return std::norm(a.dot(b));
}

} // namespace

double fidelity(const Vec& a, const Vec& b) { return fidelity_impl(a, b); }

double fidelity(const MotionalState& a, const MotionalState& b) {
  return fidelity_impl(a.amplitudes, b.amplitudes);
}

double fidelity(const JointState& a, const JointState& b) {
  return fidelity_impl(a.amplitudes, b.amplitudes);
}

Mat interior_projector(const SpaceConfig& cfg) {
  Mat p = Mat::Zero(cfg.dim, cfg.dim);
  for (int n = 0; n < cfg.interior_levels(); ++n)
    p(n, n) = 1.0;
  return p;
}

Mat joint_interior_projector(const SpaceConfig& cfg) {
  const Mat p = interior_projector(cfg);
  const Mat z = Mat::Zero(cfg.dim, cfg.dim);
  return embed_blocks(p, z, z, p);
}

Mat displacement_operator(Complex beta, const SpaceConfig& cfg) {
  const int n = cfg.dim;
  Mat d(n, n);
  // column 0 holds the coherent-state amplitudes of |beta>
  d(0, 0) = std::exp(-0.5 * std::norm(beta));
  for (int m = 1; m < n; ++m)
    d(m, 0) = d(m - 1, 0) * beta / std::sqrt(static_cast<double>(m));
  // raise the column index: d(m,k+1) = (sqrt(m) d(m-1,k) - conj(beta) d(m,k)) / sqrt(k+1)
  const Complex bc = std::conj(beta);
  for (int k = 0; k + 1 < n; ++k) {
    const double s = std::sqrt(static_cast<double>(k + 1));
    d(0, k + 1) = -bc * d(0, k) / s;
    for (int m = 1; m < n; ++m)
      d(m, k + 1) =
          (std::sqrt(static_cast<double>(m)) * d(m - 1, k) - bc * d(m, k)) / s;
  }
  return d;
}

} // namespace catlab::fock
