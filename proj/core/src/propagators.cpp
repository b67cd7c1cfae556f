#include "catlab/propagators.hpp"

#include <cmath>

#include "catlab/analysis.hpp"
#include "catlab/fock.hpp"

namespace catlab::prop {

JointState psi1_state(const SpaceConfig& cfg) {
  Vec v = Vec::Zero(2 * cfg.dim);
  const double s = 1.0 / std::sqrt(2.0);
  v[0] = s;
  v[cfg.dim] = s;
  return {std::move(v)};
}

JointOperator u_exact(const ModelParams& p, double t, const SpaceConfig& cfg) {
  const JointOperator tr = model::transform_T(p, cfg);
  const Mat u_rot =
      fock::unitary_from_generator(model::h_rotated_reduced(p, cfg).entries, t);
  return {tr.entries.adjoint() * u_rot * tr.entries, true};
}

JointOperator u_oracle_lab(const ModelParams& p, double t, const SpaceConfig& cfg) {
  return {fock::unitary_from_generator(model::h_lab(p, cfg).entries, t), true};
}

JointOperator u_paper(const ModelParams& p, double t, const SpaceConfig& cfg) {
  const double xi = p.xi();
  const auto [a, ad] = fock::ladder_operators(cfg);
  const Mat id = Mat::Identity(cfg.dim, cfg.dim);
  const Mat q = ad + a;
  const Mat g_mom = Complex(0.0, 1.0) * (ad - a); // Hermitian, a^dag - a = -i g_mom

  const Mat rot = fock::unitary_from_generator(ad * a, t); // e^{-i a^dag a t}
  const Mat d = fock::unitary_from_generator(q, -xi);      // e^{i xi q}
  const Mat dd = d.adjoint();
  const Mat f_minus = fock::unitary_from_generator(g_mom, -xi * t); // e^{-xi t (a^dag-a)}
  const Mat f_plus = fock::unitary_from_generator(g_mom, +xi * t);  // e^{+xi t (a^dag-a)}

  const Mat top = rot * d * f_minus;
  const Mat bot = rot * dd * f_plus;
  const Mat m1 = fock::embed_blocks(top, -top, bot, bot);

  const Mat sx_gm = fock::embed_blocks(Mat::Zero(cfg.dim, cfg.dim), g_mom, g_mom,
                                       Mat::Zero(cfg.dim, cfg.dim));
  const Mat m2 = fock::unitary_from_generator(sx_gm, -xi * t); // cosh/sinh block

  const Mat sx_q = fock::embed_blocks(Mat::Zero(cfg.dim, cfg.dim), q, q,
                                      Mat::Zero(cfg.dim, cfg.dim));
  const Mat m3 = fock::unitary_from_generator(sx_q, 0.5 * xi * t * t); // cos/-i sin block

  const Mat sx_id = fock::embed_blocks(Mat::Zero(cfg.dim, cfg.dim), id, id,
                                       Mat::Zero(cfg.dim, cfg.dim));
  const Mat m4 = fock::unitary_from_generator(sx_id, -p.epsilon() * t);

  const Mat m5 = fock::embed_blocks(dd, d, -dd, d);

  const Complex prefactor = 0.5 * std::exp(Complex(0.0, -xi * xi * t));
  return {prefactor * (m1 * (m2 * (m3 * (m4 * m5)))), true};
}

double paper_amplitude_bound(const ModelParams& p, double t) {
  const double xi = p.xi();
  const double grown = 0.5 * xi * t * t + xi * std::abs(t) + xi;
  return std::max(grown, 2.0 * xi);
}

namespace {

Complex branch_mean_a(const Vec& branch) {
  const double nrm = branch.norm();
  if (nrm < 1e-14)
    return {0.0, 0.0};
  return analysis::number_stats({branch / nrm, true}).mean_a;
}

bool amplitudes_disagree(Complex a, Complex b) {
  const double ma = std::abs(a), mb = std::abs(b);
  const double big = std::max(ma, mb);
  if (big < 1e-6)
    return false;
  return std::abs(ma - mb) > 0.1 * big;
}

} // namespace

ComparisonReport propagator_report(const ModelParams& p, double t,
                                   const SpaceConfig& cfg) {
  ComparisonReport rep;
  rep.t = t;
  rep.required_dim = fock::required_dim(paper_amplitude_bound(p, t));
  rep.truncation_adequate = cfg.dim >= rep.required_dim;

  const JointOperator up = u_paper(p, t, cfg);
  const JointOperator ux = u_exact(p, t, cfg);
  rep.unitarity_defect_paper = unitarity_defect(up.entries);

  const Mat proj = fock::joint_interior_projector(cfg);
  rep.interior_operator_distance = max_abs(proj * (up.entries - ux.entries) * proj);

  const JointState psi1 = psi1_state(cfg);
  const Vec sp = up.entries * psi1.amplitudes;
  const Vec sx = ux.entries * psi1.amplitudes;
  rep.state_infidelity = std::max(0.0, 1.0 - std::norm(sx.dot(sp)));

  const int n = cfg.dim;
  rep.branch_amp_e_paper = branch_mean_a(sp.head(n));
  rep.branch_amp_g_paper = branch_mean_a(sp.tail(n));
  rep.branch_amp_e_exact = branch_mean_a(sx.head(n));
  rep.branch_amp_g_exact = branch_mean_a(sx.tail(n));

  rep.branch_amplitude_flagged =
      amplitudes_disagree(rep.branch_amp_e_paper, rep.branch_amp_e_exact) ||
      amplitudes_disagree(rep.branch_amp_g_paper, rep.branch_amp_g_exact);
  return rep;
}

} // namespace catlab::prop
