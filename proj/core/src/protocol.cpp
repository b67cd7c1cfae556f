#include "catlab/protocol.hpp"

#include <cmath>

#include "catlab/fock.hpp"
#include "catlab/propagators.hpp"

namespace catlab::protocol {

namespace {

JointOperator internal_pulse(const SpaceConfig& cfg, Complex ee, Complex eg,
                             Complex ge, Complex gg) {
  const Mat id = Mat::Identity(cfg.dim, cfg.dim);
  return {fock::embed_blocks(ee * id, eg * id, ge * id, gg * id), true};
}

MotionalState gauge_fixed_unit(const Vec& v) {
  Vec out = v / v.norm();
  const double big = out.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (std::abs(out[i]) > 1e-12 * big) {
      out *= std::conj(out[i]) / std::abs(out[i]);
      break;
    }
  }
  return {std::move(out), true};
}

} // namespace

JointOperator pulse_v(const SpaceConfig& cfg) {
  const double s = 1.0 / std::sqrt(2.0);
  return internal_pulse(cfg, s, s, -s, s);
}

JointOperator pulse_v_prime(const SpaceConfig& cfg) {
  const double s = 1.0 / std::sqrt(2.0);
  return internal_pulse(cfg, s, -s, s, s);
}

JointState psi2_analytic(const ModelParams& p, double t, const SpaceConfig& cfg) {
  const double xi = p.xi();
  const Complex alpha =
      Complex(0.0, 0.5 * xi) * t * t * std::exp(Complex(0.0, -t));
  const MotionalState ce = fock::coherent_state(alpha, cfg);
  const MotionalState cg = fock::coherent_state(-alpha, cfg);
  const Complex prefactor =
      std::exp(Complex(0.0, -xi * xi * t)) / std::sqrt(2.0);
  const Complex eps_phase = std::exp(Complex(0.0, -p.epsilon() * t));
  Vec v(2 * cfg.dim);
  v.head(cfg.dim) = prefactor * eps_phase * ce.amplitudes;
  v.tail(cfg.dim) = prefactor * std::conj(eps_phase) * cg.amplitudes;
  return {std::move(v)};
}

ProtocolOutcome run_protocol(const ModelParams& p, double t, Variant variant,
                             Engine engine, const SpaceConfig& cfg) {
  ProtocolOutcome out;
  out.variant = variant;
  out.engine = engine;
  out.t = t;

  // the dark state |g>|0> through the first pulse
  Vec ground = Vec::Zero(2 * cfg.dim);
  ground[cfg.dim] = 1.0;
  const JointOperator v1 = pulse_v(cfg);
  out.psi1 = {v1.entries * ground};

  const JointOperator u = engine == Engine::Paper ? prop::u_paper(p, t, cfg)
                                                  : prop::u_exact(p, t, cfg);
  out.psi2 = {u.entries * out.psi1.amplitudes};

  const JointOperator v2 =
      variant == Variant::V ? pulse_v(cfg) : pulse_v_prime(cfg);
  out.psi3 = {v2.entries * out.psi2.amplitudes};

  // undo the global e^{-i xi^2 t} / sqrt(2) prefactor to recover Phi_+/-
  const double xi = p.xi();
  const Complex unphase = std::exp(Complex(0.0, xi * xi * t)) * std::sqrt(2.0);
  const Vec be = unphase * out.psi3.e_branch();
  const Vec bg = unphase * out.psi3.g_branch();
  if (variant == Variant::V) {
    out.cat_plus = {be, false};
    out.cat_minus = {bg, false};
  } else {
    out.cat_minus = {-be, false};
    out.cat_plus = {bg, false};
  }
  out.weight_plus = 0.5 * out.cat_plus.squared_norm();
  out.weight_minus = 0.5 * out.cat_minus.squared_norm();
  return out;
}

CatAnalytic cat_analytic(const ModelParams& p, int k, CatSign sign,
                         const SpaceConfig& cfg) {
  if (k < 0)
    throw std::invalid_argument("cat_analytic: k must be >= 0");
  const double xi = p.xi();
  const double odd = 2.0 * k + 1.0;
  const double pi = std::acos(-1.0);
  const double t = 0.5 * odd * pi;
  const double alpha_k = 0.125 * xi * odd * odd * pi * pi;
  const double beta = (k % 2 == 0 ? 1.0 : -1.0) * alpha_k;

  const MotionalState first = fock::coherent_state(-beta, cfg);
  const MotionalState second = fock::coherent_state(+beta, cfg);
  const Complex eps_phase = std::exp(Complex(0.0, p.epsilon() * t));
  const double rel_sign = sign == CatSign::Plus ? 1.0 : -1.0;
  Vec v = (eps_phase * first.amplitudes +
           rel_sign * std::conj(eps_phase) * second.amplitudes) /
          std::sqrt(2.0);
  const double prenorm = v.squaredNorm();
  v /= std::sqrt(prenorm);
  return {{std::move(v), true}, prenorm, alpha_k, t};
}

namespace {

MeasurementRecord make_record(bool fluorescence, const ProtocolOutcome& proto) {
  // fluorescence projects onto |g>; the variant decides which cat that is
  const bool g_carries_plus = proto.variant == Variant::VPrime;
  const bool observed_plus = fluorescence ? g_carries_plus : !g_carries_plus;
  const MotionalState& cat = observed_plus ? proto.cat_plus : proto.cat_minus;
  const double weight = observed_plus ? proto.weight_plus : proto.weight_minus;
  MeasurementRecord rec;
  rec.fluorescence = fluorescence;
  rec.probability = weight;
  rec.conditional_state = gauge_fixed_unit(cat.amplitudes);
  rec.cat_sign = observed_plus ? CatSign::Plus : CatSign::Minus;
  return rec;
}

} // namespace

MeasurementRecord shelving_measure(std::mt19937_64& rng,
                                   const ProtocolOutcome& proto) {
  // top 53 bits -> uniform double in [0,1); identical across platforms
  const double u = std::ldexp(static_cast<double>(rng() >> 11), -53);
  return make_record(u < proto.g_branch_weight(), proto);
}

MeasurementRecord shelving_measure_forced(bool fluorescence,
                                          const ProtocolOutcome& proto) {
  const double pg = proto.g_branch_weight();
  const double weight = fluorescence ? pg : 1.0 - pg;
  if (weight < 1e-12)
    throw std::invalid_argument(
        "shelving_measure_forced: forced outcome has zero weight");
  return make_record(fluorescence, proto);
}

} // namespace catlab::protocol
