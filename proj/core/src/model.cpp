#include "catlab/model.hpp"

#include <cmath>

#include "catlab/fock.hpp"

namespace catlab::model {

RegimeFlags regime_flags(const ModelParams& p, double wer_threshold) {
  return {p.omega <= wer_threshold, p.xi() >= 1.0, wer_threshold};
}

std::pair<ModelParams, RegimeFlags> params_new(double eta, double omega,
                                               double delta,
                                               const ParamsOptions& opt) {
  if (!(eta > 0.0))
    throw std::invalid_argument("params_new: eta must be > 0");
  if (omega < 0.0)
    throw std::invalid_argument("params_new: omega must be >= 0");
  if (opt.eta_pair) {
    const double sum = opt.eta_pair->first + opt.eta_pair->second;
    if (std::abs(sum - eta) > 1e-12)
      throw std::invalid_argument("params_new: eta_pair must sum to eta");
  }
  if (opt.nu_hz && !(*opt.nu_hz > 0.0))
    throw std::invalid_argument("params_new: nu_hz must be > 0");
  ModelParams p{eta, omega, delta, opt.eta_pair, opt.nu_hz};
  return {p, regime_flags(p, opt.wer_threshold)};
}

JointOperator h_lab(const ModelParams& p, const SpaceConfig& cfg) {
  const auto [a, ad] = fock::ladder_operators(cfg);
  const Mat n_op = ad * a;
  const Mat id = Mat::Identity(cfg.dim, cfg.dim);
  // e^{i eta (a^dag + a)} drives |g> -> |e>
  const Mat drive = fock::unitary_from_generator(ad + a, -p.eta);
  const Mat ee = n_op + 0.5 * p.delta * id;
  const Mat gg = n_op - 0.5 * p.delta * id;
  const Mat eg = 0.5 * p.omega * drive;
  const Mat ge = eg.adjoint();
  return {fock::embed_blocks(ee, eg, ge, gg), false};
}

JointOperator transform_T(const ModelParams& p, const SpaceConfig& cfg) {
  const auto [a, ad] = fock::ladder_operators(cfg);
  const Mat d = fock::unitary_from_generator(ad + a, -p.xi());
  const Mat dd = d.adjoint();
  const double s = 1.0 / std::sqrt(2.0);
  return {fock::embed_blocks(s * dd, s * d, -s * dd, s * d), true};
}

namespace {

JointOperator h_rotated(const ModelParams& p, const SpaceConfig& cfg,
                        bool keep_sz_term) {
  const auto [a, ad] = fock::ladder_operators(cfg);
  const Mat id = Mat::Identity(cfg.dim, cfg.dim);
  const double xi = p.xi();
  const Mat diag = ad * a + xi * xi * id;
  const Mat off = Complex(0.0, -xi) * (ad - a) - p.epsilon() * id;
  const double sz_shift = keep_sz_term ? 0.5 * p.omega : 0.0;
  return {fock::embed_blocks(diag + sz_shift * id, off, off, diag - sz_shift * id),
          false};
}

} // namespace

JointOperator h_rotated_full(const ModelParams& p, const SpaceConfig& cfg) {
  return h_rotated(p, cfg, true);
}

JointOperator h_rotated_reduced(const ModelParams& p, const SpaceConfig& cfg) {
  return h_rotated(p, cfg, false);
}

int identity_margin(const ModelParams& p, const SpaceConfig& cfg) {
  const int m =
      static_cast<int>(std::ceil(p.eta * std::sqrt(static_cast<double>(cfg.dim)))) + 16;
  return m < cfg.dim ? m : cfg.dim - 1;
}

} // namespace catlab::model
