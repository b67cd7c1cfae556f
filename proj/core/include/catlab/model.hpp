#pragma once

#include <optional>
#include <utility>

#include "catlab/space.hpp"

namespace catlab::model {

/// Physical parameters in dimensionless trap units (times in 1/nu,
/// frequencies in nu). xi and epsilon are derived, never stored.
struct ModelParams {
  double eta;   // effective Lamb-Dicke parameter, > 0
  double omega; // Rabi frequency, >= 0
  double delta; // detuning (omega_0 - omega_l)/nu

  std::optional<std::pair<double, double>> eta_pair; // (eta_1, eta_2), sums to eta
  std::optional<double> nu_hz; // trap frequency in Hz, only for unit conversion

  double xi() const { return eta / 2.0; }
  double epsilon() const { return delta / 2.0; }
};

/// Validity-regime booleans. Pure functions of the parameters; they warn,
/// they never block construction.
struct RegimeFlags {
  bool wer_ok;     // omega <= wer_threshold
  bool beyond_ldl; // xi >= 1
  double wer_threshold;
};

struct ParamsOptions {
  std::optional<std::pair<double, double>> eta_pair;
  std::optional<double> nu_hz;
  double wer_threshold = 0.1;
};

RegimeFlags regime_flags(const ModelParams& p, double wer_threshold = 0.1);

/// Validates and assembles parameters. eta <= 0 is a validation error;
/// regime violations only show up in the flags.
std::pair<ModelParams, RegimeFlags> params_new(double eta, double omega,
                                               double delta,
                                               const ParamsOptions& opt = {});

/// Lab-frame Hamiltonian:
/// H = (delta/2) sz + a^dag a + (omega/2)[s+ e^{i eta(a^dag+a)} + s- e^{-i eta(a^dag+a)}]
JointOperator h_lab(const ModelParams& p, const SpaceConfig& cfg);

/// Displaced-frame block unitary T = (1/sqrt2) [[D^dag, D], [-D^dag, D]]
/// with D = e^{i xi (a^dag + a)}.
JointOperator transform_T(const ModelParams& p, const SpaceConfig& cfg);

/// Rotated-frame Hamiltonian built directly:
/// (omega/2) sz + a^dag a - i xi (a^dag - a) sx - eps sx + xi^2.
/// Equals T h_lab T^dag away from the truncation edge.
JointOperator h_rotated_full(const ModelParams& p, const SpaceConfig& cfg);

/// h_rotated_full with the (omega/2) sz term dropped (weak-excitation
/// reduction); commutes exactly with sx (x) I.
JointOperator h_rotated_reduced(const ModelParams& p, const SpaceConfig& cfg);

/// Interior margin adequate for checking the rotated-frame identity at these
/// parameters: the displaced-frame factors couple level n to n +- 2 xi sqrt(n)
/// before the edge tail dies off, so the margin scales with eta sqrt(dim).
/// The flat default_interior_margin rule underestimates this for xi >= 1.
int identity_margin(const ModelParams& p, const SpaceConfig& cfg);

} // namespace catlab::model
