#pragma once

#include <random>

#include "catlab/model.hpp"
#include "catlab/space.hpp"

namespace catlab::protocol {

using model::ModelParams;

enum class Variant { V, VPrime };
enum class Engine { Paper, Exact };
enum class CatSign { Plus, Minus };

/// Result of the three-pulse preparation V U(t) V (or V'). The cat
/// components Phi_+/- are stored unnormalized, exactly as the branch
/// decomposition defines them; the weights are what the measurement
/// postulate needs.
struct ProtocolOutcome {
  JointState psi1, psi2, psi3;
  Variant variant;
  Engine engine;
  double t;
  MotionalState cat_plus;  // unnormalized Phi_+
  MotionalState cat_minus; // unnormalized Phi_-
  double weight_plus;      // ||Phi_+||^2 / 2
  double weight_minus;     // ||Phi_-||^2 / 2

  /// Weight of the |g> branch: the fluorescence probability under shelving.
  double g_branch_weight() const {
    return variant == Variant::V ? weight_minus : weight_plus;
  }
};

struct MeasurementRecord {
  bool fluorescence;
  double probability;            // weight of the observed branch
  MotionalState conditional_state; // normalized, phase-gauge-fixed
  CatSign cat_sign;
};

/// Internal pulse (1/sqrt2) [[1, 1], [-1, 1]] (x) I. Maps |g>|0> to psi1.
JointOperator pulse_v(const SpaceConfig& cfg);

/// Internal pulse (1/sqrt2) [[1, -1], [1, 1]] (x) I, the transpose of V.
JointOperator pulse_v_prime(const SpaceConfig& cfg);

/// The closed-form post-evolution state
///   (1/sqrt2) e^{-i xi^2 t} [ e^{-i eps t} |e>|alpha(t)> + e^{+i eps t} |g>|-alpha(t)> ]
/// with alpha(t) = i (xi/2) t^2 e^{-it}.
JointState psi2_analytic(const ModelParams& p, double t, const SpaceConfig& cfg);

/// Runs the full preparation with the chosen propagator engine and extracts
/// the cat components from the final state's internal branches.
ProtocolOutcome run_protocol(const ModelParams& p, double t, Variant variant,
                             Engine engine, const SpaceConfig& cfg);

struct CatAnalytic {
  MotionalState state;          // normalized
  double prenorm_squared_norm;  // 1 +- cos(eps (2k+1) pi) e^{-2 alpha_k^2}
  double alpha_k;               // (xi/8) (2k+1)^2 pi^2
  double t;                     // (2k+1) pi / 2
};

/// Closed-form cat at t = (2k+1) pi/2: superposition of |+-(-1)^k alpha_k>
/// with phases e^{+-i eps t}.
CatAnalytic cat_analytic(const ModelParams& p, int k, CatSign sign,
                         const SpaceConfig& cfg);

/// Shelving readout: fluorescence fires with the |g>-branch weight, sampled
/// from the caller's generator (64-bit state; deterministic given seed).
MeasurementRecord shelving_measure(std::mt19937_64& rng,
                                   const ProtocolOutcome& proto);

/// Forced-outcome variant; forcing an outcome whose branch weight vanishes
/// is an error.
MeasurementRecord shelving_measure_forced(bool fluorescence,
                                          const ProtocolOutcome& proto);

} // namespace catlab::protocol
