#pragma once

#include <utility>

#include "catlab/space.hpp"

namespace catlab::fock {

/// Annihilation/creation pair on the truncated space:
/// lower[n-1, n] = sqrt(n), raise = lower^dag (bit-identical adjoint).
std::pair<Mat, Mat> ladder_operators(const SpaceConfig& cfg);

/// Minimum dimension adequate for a coherent amplitude of modulus
/// `alpha_abs`: |a|^2 + 8*sqrt(|a|^2+1) + 10 (Poisson tail with headroom).
int required_dim(double alpha_abs);

/// Throws TruncationError if cfg.dim is inadequate for `alpha_abs`.
void check_truncation(double alpha_abs, const SpaceConfig& cfg);

/// Coherent state |alpha>, amplitudes by log-factorial accumulation,
/// renormalized after truncation. Throws TruncationError when dim is too
/// small for |alpha|.
MotionalState coherent_state(Complex alpha, const SpaceConfig& cfg);

/// exp(-i theta G) for Hermitian G, via eigendecomposition. The result is
/// exactly unitary up to floating error regardless of truncation. Throws
/// std::invalid_argument if ||G - G^dag||_max > 1e-12.
Mat unitary_from_generator(const Mat& G, double theta);

/// 2x2 block composition in the |e>,|g> ordering. All blocks must be square
/// and of equal size.
Mat embed_blocks(const Mat& ee, const Mat& eg, const Mat& ge, const Mat& gg);

/// |<a|b>|^2 for normalized states of equal dimension.
double fidelity(const Vec& a, const Vec& b);
double fidelity(const MotionalState& a, const MotionalState& b);
double fidelity(const JointState& a, const JointState& b);

/// Diagonal 0/1 projector keeping Fock levels 0..dim-1-interior_margin.
Mat interior_projector(const SpaceConfig& cfg);

/// Interior projector acting on both internal blocks of the joint space.
Mat joint_interior_projector(const SpaceConfig& cfg);

/// Displacement operator D(beta) = exp(beta a^dag - conj(beta) a) with the
/// exact truncated matrix elements, filled by a two-term column recurrence
/// in O(dim^2). Used where many displacements are needed (Wigner sampling).
Mat displacement_operator(Complex beta, const SpaceConfig& cfg);

} // namespace catlab::fock
