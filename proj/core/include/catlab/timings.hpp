#pragma once

#include <map>
#include <string>
#include <vector>

#include "catlab/model.hpp"

namespace catlab::timings {

enum class Scheme { ThisPaper, Ref2SER, Ref16WERLDL, Ref14Spontaneous };

std::string scheme_name(Scheme s);

/// One line of the scheme-comparison table. `value` is always recomputable
/// from `inputs` through the scheme formula.
struct TimingRow {
  Scheme scheme;
  std::string formula;
  std::map<std::string, double> inputs;
  double value; // dimensionless time, units of 1/nu
};

/// sqrt(4 pi / eta): the separation threshold of the three-pulse scheme.
/// Identical to analysis::separation_time_ok's threshold at xi = eta/2.
double prep_time_this_paper(double eta);

/// (pi/4)(sqrt(pi/(2 eta^2)) - 1), the alternating-pulse SER scheme.
double prep_time_ref2(double eta);

/// pi e^{eta^2/2} / (eta omega), the weak-excitation Lamb-Dicke scheme.
double prep_time_ref16(double eta, double omega);

/// nu * lifetime: the dimensionless floor of a spontaneous-emission scheme.
double prep_time_ref14_floor(double nu_hz, double lifetime_s);

/// Assembles the four rows. `ldl` supplies eta and omega for the Lamb-Dicke
/// schemes, `beyond` supplies eta for the three-pulse scheme; nu comes from
/// ldl.nu_hz (1e7 Hz when unset).
std::vector<TimingRow> comparison_table(const model::ModelParams& ldl,
                                        const model::ModelParams& beyond,
                                        double lifetime_s = 1.0);

/// Display rounding: 3 significant figures, e.g. "4.09", "159", "1.00e7".
std::string format_sig3(double v);

double recompute(const TimingRow& row);

} // namespace catlab::timings
