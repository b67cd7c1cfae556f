#include "catlab/timings.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace catlab::timings {

std::string scheme_name(Scheme s) {
  switch (s) {
  case Scheme::ThisPaper: return "this_paper";
  case Scheme::Ref2SER: return "ref2_SER";
  case Scheme::Ref16WERLDL: return "ref16_WER_LDL";
  case Scheme::Ref14Spontaneous: return "ref14_spontaneous";
  }
  return "?";
}

double prep_time_this_paper(double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("prep_time_this_paper: eta must be > 0");
  return std::sqrt(4.0 * std::numbers::pi / eta);
}

double prep_time_ref2(double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument("prep_time_ref2: eta must be > 0");
  const double root = std::sqrt(std::numbers::pi / (2.0 * eta * eta));
  if (root < 1.0)
    throw std::domain_error("prep_time_ref2: eta too large, formula negative");
  return 0.25 * std::numbers::pi * (root - 1.0);
}

double prep_time_ref16(double eta, double omega) {
  if (!(eta > 0.0) || !(omega > 0.0))
    throw std::invalid_argument("prep_time_ref16: eta and omega must be > 0");
  return std::numbers::pi * std::exp(0.5 * eta * eta) / (eta * omega);
}

double prep_time_ref14_floor(double nu_hz, double lifetime_s) {
  if (!(nu_hz > 0.0) || !(lifetime_s > 0.0))
    throw std::invalid_argument("prep_time_ref14_floor: inputs must be > 0");
  return nu_hz * lifetime_s;
}

std::vector<TimingRow> comparison_table(const model::ModelParams& ldl,
                                        const model::ModelParams& beyond,
                                        double lifetime_s) {
  const double nu = ldl.nu_hz.value_or(1e7);
  std::vector<TimingRow> rows;
  rows.push_back({Scheme::Ref2SER,
                  "(pi/4)(sqrt(pi/(2 eta^2)) - 1)",
                  {{"eta", ldl.eta}},
                  prep_time_ref2(ldl.eta)});
  rows.push_back({Scheme::Ref16WERLDL,
                  "pi exp(eta^2/2)/(eta omega)",
                  {{"eta", ldl.eta}, {"omega", ldl.omega}},
                  prep_time_ref16(ldl.eta, ldl.omega)});
  rows.push_back({Scheme::ThisPaper,
                  "sqrt(4 pi / eta)",
                  {{"eta", beyond.eta}},
                  prep_time_this_paper(beyond.eta)});
  rows.push_back({Scheme::Ref14Spontaneous,
                  "nu * lifetime",
                  {{"nu_hz", nu}, {"lifetime_s", lifetime_s}},
                  prep_time_ref14_floor(nu, lifetime_s)});
  return rows;
}

std::string format_sig3(double v) {
  char buf[64];
  const double av = std::abs(v);
  if (av != 0.0 && (av >= 1e4 || av < 1e-2)) {
    const int expo = static_cast<int>(std::floor(std::log10(av)));
    const double mant = v / std::pow(10.0, expo);
    std::snprintf(buf, sizeof(buf), "%.2fe%d", mant, expo);
  } else {
    std::snprintf(buf, sizeof(buf), "%.3g", v);
  }
  return buf;
}

double recompute(const TimingRow& row) {
  switch (row.scheme) {
  case Scheme::ThisPaper: return prep_time_this_paper(row.inputs.at("eta"));
  case Scheme::Ref2SER: return prep_time_ref2(row.inputs.at("eta"));
  case Scheme::Ref16WERLDL:
    return prep_time_ref16(row.inputs.at("eta"), row.inputs.at("omega"));
  case Scheme::Ref14Spontaneous:
    return prep_time_ref14_floor(row.inputs.at("nu_hz"),
                                 row.inputs.at("lifetime_s"));
  }
  throw std::logic_error("recompute: unknown scheme");
}

} // namespace catlab::timings
