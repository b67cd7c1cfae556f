#pragma once

#include <vector>

#include "catlab/model.hpp"
#include "catlab/space.hpp"

namespace catlab::analysis {

/// |psi(x)|^2 sampled on a position grid, convention x = (a + a^dag)/sqrt(2).
struct DensityProfile {
  Eigen::VectorXd grid;
  Eigen::VectorXd values;
  double grid_step = 0.0;
  bool coverage_ok = true; // false when the grid captures < 0.999 of the norm
};

struct PeakSummary {
  std::vector<double> positions; // strictly increasing, quadratic-refined
  std::vector<double> heights;
  int count = 0;
};

struct SeparationCheck {
  bool ok;
  double threshold; // sqrt(2 pi / xi)
};

struct NumberStats {
  double mean_n;
  double var_n;
  Complex mean_a;
};

/// Oscillator eigenfunctions phi_0..phi_{nmax-1}(x) by the normalized
/// three-term recurrence; bounded for all n, no overflow.
Eigen::VectorXd hermite_functions_at(int nmax, double x);

/// 'points' samples spanning +-(sqrt(2) alpha_max + 6).
Eigen::VectorXd default_grid(double alpha_max, int points = 2001);

DensityProfile position_density(const MotionalState& state,
                                const Eigen::VectorXd& grid);

/// Strict local maxima above threshold_frac * global max, refined by a
/// three-point quadratic fit. The threshold suppresses truncation ripple and
/// is configurable.
PeakSummary peak_summary(const DensityProfile& profile,
                         double threshold_frac = 1e-3);

/// Two coherent components separate in position only after t >= sqrt(2 pi / xi).
SeparationCheck separation_time_ok(const model::ModelParams& p, double t);

/// Wigner function by the displaced-parity form
/// W(x,p) = (1/pi) <psi| D(lambda) Pi D^dag(lambda) |psi>, lambda = (x+ip)/sqrt2.
/// Rows index xgrid, columns index pgrid.
Eigen::MatrixXd wigner_map(const MotionalState& state,
                           const Eigen::VectorXd& xgrid,
                           const Eigen::VectorXd& pgrid);

NumberStats number_stats(const MotionalState& state);

} // namespace catlab::analysis
