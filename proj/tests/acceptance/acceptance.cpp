// Acceptance suite: one pass/fail line per criterion, exit code counts the
// failures. Run with no arguments for the whole suite or with a criterion
// number (1..8) for a single one.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "catlab/analysis.hpp"
#include "catlab/fock.hpp"
#include "catlab/model.hpp"
#include "catlab/propagators.hpp"
#include "catlab/protocol.hpp"
#include "catlab/timings.hpp"

using namespace catlab;
namespace fk = catlab::fock;
namespace an = catlab::analysis;
namespace pt = catlab::protocol;

namespace {

constexpr double kPi = std::numbers::pi;

model::ModelParams make(double eta, double omega = 0.1, double delta = 0.0) {
  return model::params_new(eta, omega, delta).first;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

// ---------------------------------------------------------------- criterion 1

bool criterion1() {
  Timer timer;
  const std::string dir = "acceptance_work";
  std::filesystem::create_directories(dir);
  const std::string cmd = std::string(CATLAB_CLI_PATH) +
                          " timings --eta-ldl 0.202 --omega 0.1 --nu-hz 1e7 "
                          "--lifetime 1.0 --eta-beyond 2.0 --eta-beyond 3.0 "
                          "-o " + dir + "/c1 > " + dir + "/c1_out.txt 2>&1";
  const int raw = std::system(cmd.c_str());
  const int code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(dir + "/c1_out.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string out = ss.str();
  const double elapsed = timer.seconds();

  bool ok = code == 0 && elapsed < 1.0;
  for (const char* token : {"4.09", "159", "2.51", "2.05", "1.00e7"})
    ok = ok && out.find(token) != std::string::npos;

  std::printf("criterion 1: %s - timing table 4.09/159/2.51/2.05/1.00e7 at 3 "
              "significant figures (cmd_timings, %.2f s)\n",
              ok ? "PASS" : "FAIL", elapsed);
  return ok;
}

// ---------------------------------------------------------------- criterion 2

bool criterion2() {
  Timer timer;
  bool ok = true;
  const int dim = 128;
  const int margin = 16;
  std::printf("criterion 2: transformation identity ||P(T H_lab T+ - H_full)P|| "
              "at dim=%d, margin=%d, tolerance 1e-8\n", dim, margin);
  for (double eta : {0.5, 2.0, 3.0}) {
    for (double omega : {0.0, 0.1}) {
      for (double delta : {0.0, 0.3}) {
        const auto p = make(eta, omega, delta);
        const SpaceConfig cfg(dim, margin);
        const auto tr = model::transform_T(p, cfg);
        const Mat defect =
            tr.entries * model::h_lab(p, cfg).entries * tr.entries.adjoint() -
            model::h_rotated_full(p, cfg).entries;
        const Mat proj = fk::joint_interior_projector(cfg);
        const double d16 = max_abs(proj * defect * proj);

        // same defect matrix viewed through a leakage-adequate margin
        const int wide = model::identity_margin(p, cfg);
        const Mat proj_wide = fk::joint_interior_projector(SpaceConfig(dim, wide));
        const double d_wide = max_abs(proj_wide * defect * proj_wide);

        const bool pass = d16 <= 1e-8;
        ok = ok && pass;
        std::printf("  eta=%.1f omega=%.1f delta=%.1f: defect=%.3e [%s]"
                    " (margin %d: %.3e)\n",
                    eta, omega, delta, d16, pass ? "ok" : "FAIL", wide, d_wide);
      }
    }
  }
  const double elapsed = timer.seconds();
  ok = ok && elapsed < 30.0;
  std::printf("criterion 2: %s - exact-transformation identity at margin 16 "
              "(%.1f s)\n", ok ? "PASS" : "FAIL", elapsed);
  return ok;
}

// ---------------------------------------------------------------- criterion 3

bool criterion3() {
  bool ok = true;
  const SpaceConfig cfg(256, 0);
  double worst = 0.0;
  for (double eta : {2.0, 3.0}) {
    const auto p = make(eta);
    for (double t : {0.0, kPi / 2, 1.5 * kPi}) {
      const double dp = unitarity_defect(prop::u_paper(p, t, cfg).entries);
      const double dx = unitarity_defect(prop::u_exact(p, t, cfg).entries);
      worst = std::max({worst, dp, dx});
      ok = ok && dp <= 1e-10 && dx <= 1e-10;
    }
  }
  std::printf("criterion 3: %s - unitarity defects <= 1e-10 at dim=256 "
              "(worst %.2e)\n", ok ? "PASS" : "FAIL", worst);
  return ok;
}

// ---------------------------------------------------------------- criterion 4

bool criterion4() {
  const SpaceConfig cfg(64, 0);
  const auto p = make(2.0); // xi = 1, eps = 0
  const double t = kPi / 2;
  const Vec evolved =
      prop::u_paper(p, t, cfg).entries * prop::psi1_state(cfg).amplitudes;
  const JointState psi2 = pt::psi2_analytic(p, t, cfg);

  double worst_infid = 0.0;
  for (const bool e_side : {true, false}) {
    Vec b1 = e_side ? Vec(evolved.head(64)) : Vec(evolved.tail(64));
    Vec b2 = e_side ? psi2.e_branch() : psi2.g_branch();
    b1 /= b1.norm();
    b2 /= b2.norm();
    worst_infid = std::max(worst_infid, 1.0 - fk::fidelity(b1, b2));
  }

  Vec g = evolved.tail(64);
  g /= g.norm();
  const Complex amp = an::number_stats({g, true}).mean_a;
  const double target = -kPi * kPi / 8.0;
  const bool ok = worst_infid <= 1e-6 && std::abs(amp - Complex(target, 0.0)) <= 1e-3;
  std::printf("criterion 4: %s - closed-form state consistency at t=pi/2 "
              "(branch infidelity %.2e, <a>_g = %.6f%+.6fi vs %.6f)\n",
              ok ? "PASS" : "FAIL", worst_infid, amp.real(), amp.imag(), target);
  return ok;
}

// ---------------------------------------------------------------- criterion 5

bool criterion5() {
  const SpaceConfig cfg(64, 0);
  const auto p = make(2.0);
  const auto out =
      pt::run_protocol(p, kPi / 2, pt::Variant::V, pt::Engine::Paper, cfg);

  double worst_infid = 0.0;
  for (const auto sign : {pt::CatSign::Plus, pt::CatSign::Minus}) {
    const auto analytic = pt::cat_analytic(p, 0, sign, cfg);
    const auto& cat = sign == pt::CatSign::Plus ? out.cat_plus : out.cat_minus;
    Vec unit = cat.amplitudes / cat.amplitudes.norm();
    worst_infid =
        std::max(worst_infid, 1.0 - fk::fidelity(unit, analytic.state.amplitudes));
  }

  const bool ok = worst_infid <= 1e-6 &&
                  std::abs(out.weight_plus - 0.5240) <= 1e-3 &&
                  std::abs(out.weight_minus - 0.4760) <= 1e-3;
  std::printf("criterion 5: %s - protocol cats match the closed form "
              "(infidelity %.2e, weights %.4f/%.4f vs 0.5240/0.4760)\n",
              ok ? "PASS" : "FAIL", worst_infid, out.weight_plus, out.weight_minus);
  return ok;
}

// ---------------------------------------------------------------- criterion 6

bool criterion6() {
  const auto p = make(2.0);
  const SpaceConfig cfg(64, 0);

  const auto cat = pt::cat_analytic(p, 0, pt::CatSign::Plus, cfg);
  const auto prof = an::position_density(cat.state, an::default_grid(cat.alpha_k));
  const auto peaks = an::peak_summary(prof);
  bool ok = peaks.count == 2;
  if (ok) {
    ok = std::abs(-peaks.positions[0] - 1.745) <= 0.02 &&
         std::abs(peaks.positions[1] - 1.745) <= 0.02;
  }

  // momentum superposition |i beta> + |-i beta>: no position separation
  const double beta = 0.5;
  const auto pl = fk::coherent_state(Complex(0.0, beta), cfg);
  const auto mi = fk::coherent_state(Complex(0.0, -beta), cfg);
  Vec v = pl.amplitudes + mi.amplitudes;
  v /= v.norm();
  const auto mprof = an::position_density({v, true}, an::default_grid(beta));
  const auto mpeaks = an::peak_summary(mprof);
  const bool mok = mpeaks.count == 1 && std::abs(mpeaks.positions[0]) <= mprof.grid_step;
  ok = ok && mok;

  std::printf("criterion 6: %s - observability: position cat has %d peaks at "
              "%+.4f/%+.4f (x-convention, R = %.4f), momentum cat has %d peak(s) "
              "at %.2e\n",
              ok ? "PASS" : "FAIL", peaks.count,
              peaks.count == 2 ? peaks.positions[0] : 0.0,
              peaks.count == 2 ? peaks.positions[1] : 0.0,
              peaks.count == 2 ? peaks.positions[1] / std::sqrt(2.0) : 0.0,
              mpeaks.count, mpeaks.count >= 1 ? mpeaks.positions[0] : 0.0);
  return ok;
}

// ---------------------------------------------------------------- criterion 7

bool criterion7() {
  Timer timer;
  const SpaceConfig cfg(256, 0);
  const auto p = make(2.0);

  const std::vector<double> ts{0.025, 0.05, 0.1, 0.2};
  std::vector<double> infids;
  for (double t : ts)
    infids.push_back(prop::propagator_report(p, t, cfg).state_infidelity);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double x = std::log(ts[i]), y = std::log(std::max(infids[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(ts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);

  // frozen regression constant: measured exponent 4.0 (t^4 law)
  bool ok = slope >= 3.0 && std::abs(slope - 4.0) <= 0.2;

  const auto rep = prop::propagator_report(p, 1.5 * kPi, cfg);
  const bool flagged = rep.branch_amplitude_flagged;
  ok = ok && flagged; // the t^2-growing branch is not reproduced by the oracle

  const double elapsed = timer.seconds();
  ok = ok && elapsed < 60.0;
  std::printf("criterion 7: %s - infidelity -> 0 with log-log slope %.3f "
              "(frozen 4.0); t=3pi/2 report complete, paper |<a>|=%.2f vs exact "
              "|<a>|=%.2e, flagged=%s (%.1f s)\n",
              ok ? "PASS" : "FAIL", slope, std::abs(rep.branch_amp_g_paper),
              std::abs(rep.branch_amp_g_exact), flagged ? "yes" : "no", elapsed);
  return ok;
}

// ---------------------------------------------------------------- criterion 8

bool criterion8() {
  const SpaceConfig cfg(64, 0);
  const auto p = make(2.0);
  const auto out =
      pt::run_protocol(p, kPi / 2, pt::Variant::V, pt::Engine::Paper, cfg);
  const double w = out.g_branch_weight();
  const int n = 10000;

  auto sequence = [&](std::uint64_t seed) {
    std::vector<bool> seq;
    seq.reserve(n);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n; ++i)
      seq.push_back(pt::shelving_measure(rng, out).fluorescence);
    return seq;
  };

  const auto seq = sequence(424242);
  const auto seq_again = sequence(424242);
  const long hits = std::count(seq.begin(), seq.end(), true);
  const double freq = static_cast<double>(hits) / n;
  const double sigma = std::sqrt(w * (1.0 - w) / n);

  const bool ok = std::abs(freq - w) <= 3.0 * sigma && seq == seq_again;
  std::printf("criterion 8: %s - shelving statistics: frequency %.4f vs weight "
              "%.4f (3 sigma = %.4f), repeat bit-identical: %s\n",
              ok ? "PASS" : "FAIL", freq, w, 3.0 * sigma,
              seq == seq_again ? "yes" : "no");
  return ok;
}

} // namespace

int main(int argc, char** argv) {
  std::vector<int> which;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i)
      which.push_back(std::atoi(argv[i]));
  } else {
    which = {1, 2, 3, 4, 5, 6, 7, 8};
  }

  int failures = 0;
  for (int c : which) {
    bool ok = false;
    switch (c) {
    case 1: ok = criterion1(); break;
    case 2: ok = criterion2(); break;
    case 3: ok = criterion3(); break;
    case 4: ok = criterion4(); break;
    case 5: ok = criterion5(); break;
    case 6: ok = criterion6(); break;
    case 7: ok = criterion7(); break;
    case 8: ok = criterion8(); break;
    default:
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    if (!ok)
      ++failures;
  }
  if (which.size() > 1)
    std::printf("acceptance: %zu criteria run, %d failed\n", which.size(), failures);
  return failures;
}
