#include "catlab/analysis.hpp"

#include <cmath>
#include <numbers>

#include "catlab/fock.hpp"

namespace catlab::analysis {

Eigen::VectorXd hermite_functions_at(int nmax, double x) {
  Eigen::VectorXd phi(nmax);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x);
  if (nmax > 1)
    phi[1] = std::sqrt(2.0) * x * phi[0];
  for (int n = 2; n < nmax; ++n)
    phi[n] = std::sqrt(2.0 / n) * x * phi[n - 1] -
             std::sqrt((n - 1.0) / n) * phi[n - 2];
  return phi;
}

Eigen::VectorXd default_grid(double alpha_max, int points) {
  const double half = std::sqrt(2.0) * std::abs(alpha_max) + 6.0;
  return Eigen::VectorXd::LinSpaced(points, -half, half);
}

DensityProfile position_density(const MotionalState& state,
                                const Eigen::VectorXd& grid) {
  if (grid.size() < 2)
    throw std::invalid_argument("position_density: grid needs >= 2 points");
  if (std::abs(state.squared_norm() - 1.0) > 1e-6)
    throw std::invalid_argument("position_density: state must be normalized");

  const int npts = static_cast<int>(grid.size());
  const int dim = state.dim();
  DensityProfile prof;
  prof.grid = grid;
  prof.values.resize(npts);
  prof.grid_step = grid[1] - grid[0];
  for (int i = 0; i < npts; ++i) {
    const Eigen::VectorXd phi = hermite_functions_at(dim, grid[i]);
    Complex psi{0.0, 0.0};
    for (int n = 0; n < dim; ++n)
      psi += state.amplitudes[n] * phi[n];
    prof.values[i] = std::norm(psi);
  }
  // trapezoidal mass as the coverage check
  double mass = 0.0;
  for (int i = 0; i + 1 < npts; ++i)
    mass += 0.5 * (prof.values[i] + prof.values[i + 1]) * (grid[i + 1] - grid[i]);
  prof.coverage_ok = mass >= 0.999;
  return prof;
}

PeakSummary peak_summary(const DensityProfile& profile, double threshold_frac) {
  const auto& v = profile.values;
  if (v.size() < 3)
    throw std::invalid_argument("peak_summary: profile too short");
  const double threshold = threshold_frac * v.maxCoeff();
  PeakSummary out;
  for (int i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > v[i + 1] && v[i] >= threshold) {
      const double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
      const double shift =
          denom != 0.0 ? 0.5 * (v[i - 1] - v[i + 1]) / denom : 0.0;
      out.positions.push_back(profile.grid[i] + shift * profile.grid_step);
      out.heights.push_back(v[i]);
    }
  }
  out.count = static_cast<int>(out.positions.size());
  return out;
}

SeparationCheck separation_time_ok(const model::ModelParams& p, double t) {
  const double xi = p.xi();
  if (!(xi > 0.0))
    throw std::invalid_argument("separation_time_ok: xi must be > 0");
  const double threshold = std::sqrt(2.0 * std::numbers::pi / xi);
  return {t >= threshold, threshold};
}

Eigen::MatrixXd wigner_map(const MotionalState& state,
                           const Eigen::VectorXd& xgrid,
                           const Eigen::VectorXd& pgrid) {
  if (std::abs(state.squared_norm() - 1.0) > 1e-6)
    throw std::invalid_argument("wigner_map: state must be normalized");
  const int dim = state.dim();
  const SpaceConfig cfg(dim, 0);
  // largest displacement sampled must still fit the truncation
  double lam_max = 0.0;
  for (int i = 0; i < xgrid.size(); ++i)
    for (int j = 0; j < pgrid.size(); ++j)
      lam_max = std::max(lam_max, std::hypot(xgrid[i], pgrid[j]) / std::sqrt(2.0));
  fock::check_truncation(lam_max, cfg);

  Eigen::VectorXd parity(dim);
  for (int n = 0; n < dim; ++n)
    parity[n] = (n % 2 == 0) ? 1.0 : -1.0;

  Eigen::MatrixXd w(xgrid.size(), pgrid.size());
  for (int i = 0; i < xgrid.size(); ++i) {
    for (int j = 0; j < pgrid.size(); ++j) {
      const Complex lambda{xgrid[i] / std::sqrt(2.0), pgrid[j] / std::sqrt(2.0)};
      const Mat d = fock::displacement_operator(lambda, cfg);
      const Vec displaced = d.adjoint() * state.amplitudes;
      double val = 0.0;
      for (int n = 0; n < dim; ++n)
        val += parity[n] * std::norm(displaced[n]);
      w(i, j) = val / std::numbers::pi;
    }
  }
  return w;
}

NumberStats number_stats(const MotionalState& state) {
  const auto& c = state.amplitudes;
  const int dim = state.dim();
  double mean_n = 0.0, mean_n2 = 0.0;
  Complex mean_a{0.0, 0.0};
  for (int n = 0; n < dim; ++n) {
    const double p = std::norm(c[n]);
    mean_n += n * p;
    mean_n2 += static_cast<double>(n) * n * p;
    if (n + 1 < dim)
      mean_a += std::conj(c[n]) * std::sqrt(n + 1.0) * c[n + 1];
  }
  return {mean_n, mean_n2 - mean_n * mean_n, mean_a};
}

} // namespace catlab::analysis
