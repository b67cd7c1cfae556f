#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace catlab {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// Thrown when the Fock truncation cannot hold the coherent amplitudes in
/// play. Carries the minimum dimension that would be adequate.
class TruncationError : public std::runtime_error {
public:
  TruncationError(int required, int actual)
      : std::runtime_error("Fock truncation too small: need dim >= " +
                           std::to_string(required) + ", have " +
                           std::to_string(actual)),
        required_dim(required), actual_dim(actual) {}

  int required_dim;
  int actual_dim;
};

/// Margin used by operator-identity checks when none is given explicitly.
inline int default_interior_margin(int dim) {
  int m = dim / 8 > 8 ? dim / 8 : 8;
  return m < dim ? m : dim - 1;
}

/// Truncated Fock space: levels 0..dim-1, with `interior_margin` levels near
/// the truncation edge excluded by the interior projector.
struct SpaceConfig {
  int dim;
  int interior_margin;

  explicit SpaceConfig(int dim_, int margin = -1)
      : dim(dim_),
        interior_margin(margin < 0 ? default_interior_margin(dim_) : margin) {
    if (dim < 2)
      throw std::invalid_argument("SpaceConfig: dim must be >= 2");
    if (interior_margin >= dim)
      throw std::invalid_argument("SpaceConfig: interior_margin must be < dim");
  }

  int interior_levels() const { return dim - interior_margin; }
};

/// Motional-only state on the truncated Fock space. States that are not unit
/// vectors by construction (e.g. unnormalized cat components) carry
/// normalized = false.
struct MotionalState {
  Vec amplitudes;
  bool normalized = true;

  int dim() const { return static_cast<int>(amplitudes.size()); }
  double squared_norm() const { return amplitudes.squaredNorm(); }
};

/// Internal (two-level) x motional state, internal-major ordering:
/// |e>-block at indices 0..dim-1, |g>-block at dim..2dim-1, with
/// |e> = (1,0)^T and |g> = (0,1)^T.
struct JointState {
  Vec amplitudes;

  int dim() const { return static_cast<int>(amplitudes.size()) / 2; }
  Vec e_branch() const { return amplitudes.head(dim()); }
  Vec g_branch() const { return amplitudes.tail(dim()); }
  double squared_norm() const { return amplitudes.squaredNorm(); }
};

/// Dense operator on the joint space (2*dim x 2*dim). `unitary` marks
/// operators constructed to be unitary by spectral exponentiation.
struct JointOperator {
  Mat entries;
  bool unitary = false;

  int dim() const { return static_cast<int>(entries.rows()) / 2; }
};

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

/// ||U^dag U - I||_max
inline double unitarity_defect(const Mat& u) {
  return max_abs(u.adjoint() * u - Mat::Identity(u.rows(), u.cols()));
}

} // namespace catlab
