// catlab: prepare and diagnose motional cat states of a trapped ion in a
// truncated Fock space. Subcommands: prepare, verify, timings, sweep.
//
// All numeric output is in dimensionless trap units (times in 1/nu); the
// timings subcommand is the only place Hz enter. Output JSON keeps anything
// volatile (timestamps) in "meta"; "payload" is byte-deterministic for a
// fixed config and build.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "catlab/analysis.hpp"
#include "catlab/fock.hpp"
#include "catlab/model.hpp"
#include "catlab/propagators.hpp"
#include "catlab/protocol.hpp"
#include "catlab/timings.hpp"

using json = nlohmann::ordered_json;
using namespace catlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTruncation = 3;

struct RunConfig {
  double eta = 2.0;
  double omega = 0.1;
  double delta = 0.0;
  double nu_hz = 1e7;
  int dim = 0;    // 0 = auto from the largest coherent amplitude in play
  int margin = 0; // 0 = auto (max(8, dim/8))
  std::string t_spec = "auto";
  std::string variant = "v";
  std::string engine = "paper";
  std::uint64_t seed = 12345;
  std::string out_prefix = "catlab_run";
};

struct ResolvedRun {
  model::ModelParams params;
  model::RegimeFlags flags;
  double t;
  SpaceConfig space;
  protocol::Variant variant;
  protocol::Engine engine;
};

double auto_time(double xi) {
  // smallest t = (2k+1) pi/2 at or past the separation threshold
  const double pi = std::numbers::pi;
  const double threshold = std::sqrt(2.0 * pi / xi);
  long k = static_cast<long>(std::ceil((2.0 * threshold / pi - 1.0) / 2.0));
  if (k < 0)
    k = 0;
  return 0.5 * (2.0 * k + 1.0) * pi;
}

ResolvedRun resolve(const RunConfig& rc) {
  model::ParamsOptions opt;
  opt.nu_hz = rc.nu_hz;
  auto [params, flags] = model::params_new(rc.eta, rc.omega, rc.delta, opt);

  double t;
  if (rc.t_spec == "auto") {
    t = auto_time(params.xi());
  } else {
    std::size_t pos = 0;
    t = std::stod(rc.t_spec, &pos);
    if (pos != rc.t_spec.size())
      throw std::invalid_argument("t must be a number or \"auto\"");
  }

  int dim = rc.dim;
  if (dim == 0) {
    const double xi = params.xi();
    const double alpha_max = std::max(0.5 * xi * t * t, 2.0 * xi);
    dim = fock::required_dim(alpha_max);
  }
  const int margin = rc.margin == 0 ? -1 : rc.margin;
  SpaceConfig space(dim, margin);

  protocol::Variant variant;
  if (rc.variant == "v")
    variant = protocol::Variant::V;
  else if (rc.variant == "vprime")
    variant = protocol::Variant::VPrime;
  else
    throw std::invalid_argument("variant must be v or vprime");

  protocol::Engine engine;
  if (rc.engine == "paper")
    engine = protocol::Engine::Paper;
  else if (rc.engine == "exact")
    engine = protocol::Engine::Exact;
  else
    throw std::invalid_argument("engine must be paper or exact");

  return {params, flags, t, space, variant, engine};
}

void load_config_file(const std::string& path, RunConfig& rc) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file: " + path);
  json j = json::parse(in);
  if (j.contains("eta")) rc.eta = j["eta"].get<double>();
  if (j.contains("omega")) rc.omega = j["omega"].get<double>();
  if (j.contains("delta")) rc.delta = j["delta"].get<double>();
  if (j.contains("nu_hz")) rc.nu_hz = j["nu_hz"].get<double>();
  if (j.contains("dim")) rc.dim = j["dim"].get<int>();
  if (j.contains("margin")) rc.margin = j["margin"].get<int>();
  if (j.contains("t")) {
    if (j["t"].is_string())
      rc.t_spec = j["t"].get<std::string>();
    else
      rc.t_spec = std::to_string(j["t"].get<double>());
  }
  if (j.contains("variant")) rc.variant = j["variant"].get<std::string>();
  if (j.contains("engine")) rc.engine = j["engine"].get<std::string>();
  if (j.contains("seed")) rc.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("out_prefix")) rc.out_prefix = j["out_prefix"].get<std::string>();
}

void add_run_options(CLI::App* cmd, RunConfig& rc, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override)");
  cmd->add_option("--eta", rc.eta, "effective Lamb-Dicke parameter (> 0)");
  cmd->add_option("--omega", rc.omega, "Rabi frequency in trap units (>= 0)");
  cmd->add_option("--delta", rc.delta, "detuning in trap units");
  cmd->add_option("--nu-hz", rc.nu_hz, "trap frequency in Hz (unit conversion only)");
  cmd->add_option("--dim", rc.dim, "Fock truncation (0 = auto)");
  cmd->add_option("--margin", rc.margin, "interior margin (0 = auto)");
  cmd->add_option("--t", rc.t_spec, "evolution time, or \"auto\" for the first observable (2k+1)pi/2");
  cmd->add_option("--variant", rc.variant, "final pulse: v | vprime");
  cmd->add_option("--engine", rc.engine, "propagator: paper | exact");
  cmd->add_option("--seed", rc.seed, "measurement RNG seed");
  cmd->add_option("--out-prefix,-o", rc.out_prefix, "output file prefix");
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Vec& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    arr.push_back(complex_json(v[i]));
  return arr;
}

json conventions_json() {
  return {
      {"state_ordering",
       "internal-major: |e> block at 0..dim-1, |g> block at dim..2dim-1; |e>=(1,0), |g>=(0,1)"},
      {"position_convention",
       "x = (a + a^dag)/sqrt(2); coherent alpha peaks at sqrt(2) Re(alpha); R = x/sqrt(2)"},
      {"phase_gauge", "conditional measurement states: first nonzero amplitude real positive"},
      {"units", "dimensionless trap units: times in 1/nu, frequencies in nu"},
      {"complex_format", "[re, im]"},
  };
}

json config_json(const RunConfig& rc, const ResolvedRun& run) {
  return {
      {"eta", rc.eta},
      {"omega", rc.omega},
      {"delta", rc.delta},
      {"nu_hz", rc.nu_hz},
      {"dim", run.space.dim},
      {"margin", run.space.interior_margin},
      {"t", run.t},
      {"variant", rc.variant},
      {"engine", rc.engine},
      {"seed", rc.seed},
      {"xi", run.params.xi()},
      {"epsilon", run.params.epsilon()},
      {"wer_ok", run.flags.wer_ok},
      {"beyond_ldl", run.flags.beyond_ldl},
  };
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
  return buf;
}

void write_json_file(const std::string& path, json payload) {
  json doc;
  doc["meta"] = {{"tool", "catlab"}, {"version", "0.1.0"}, {"generated_at", timestamp_now()}};
  doc["payload"] = std::move(payload);
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_csv_header_comments(std::ofstream& out) {
  out << "# conventions: state ordering internal-major (|e> block then |g> block); "
         "x = (a + a^dag)/sqrt(2); phase gauge: first nonzero amplitude real positive; "
         "dimensionless trap units\n";
}

// ---------------------------------------------------------------------------
// prepare

int cmd_prepare(const RunConfig& rc) {
  const ResolvedRun run = resolve(rc);
  const auto outcome =
      protocol::run_protocol(run.params, run.t, run.variant, run.engine, run.space);

  const double p_fluor = outcome.g_branch_weight();
  const auto sep = analysis::separation_time_ok(run.params, run.t);

  // densities and peaks of the normalized cat components
  const double xi = run.params.xi();
  const double alpha_scale = std::max(0.5 * xi * run.t * run.t, 1.0);
  const Eigen::VectorXd grid = analysis::default_grid(alpha_scale);

  json summary;
  summary["config"] = config_json(rc, run);
  summary["conventions"] = conventions_json();
  summary["weights"] = {
      {"cat_plus", outcome.weight_plus},
      {"cat_minus", outcome.weight_minus},
      {"e_branch", run.variant == protocol::Variant::V ? outcome.weight_plus
                                                       : outcome.weight_minus},
      {"g_branch", p_fluor},
  };
  summary["fluorescence_probability"] = p_fluor;
  summary["separation"] = {{"ok", sep.ok}, {"threshold", sep.threshold}};

  std::ofstream csv(rc.out_prefix + "_density.csv");
  write_csv_header_comments(csv);
  csv << "x,density_cat_plus,density_cat_minus\n";

  std::optional<analysis::DensityProfile> prof_plus, prof_minus;
  for (const bool plus : {true, false}) {
    const auto& cat = plus ? outcome.cat_plus : outcome.cat_minus;
    const double w = plus ? outcome.weight_plus : outcome.weight_minus;
    const std::string key = plus ? "cat_plus" : "cat_minus";
    if (w < 1e-14) {
      summary["peaks"][key] = nullptr;
      continue;
    }
    MotionalState unit{cat.amplitudes / cat.amplitudes.norm(), true};
    const auto prof = analysis::position_density(unit, grid);
    const auto peaks = analysis::peak_summary(prof);
    json pk;
    pk["count"] = peaks.count;
    pk["positions_x"] = peaks.positions;
    json r_positions = json::array();
    for (double x : peaks.positions)
      r_positions.push_back(x / std::sqrt(2.0)); // same peaks in the R = x/sqrt(2) convention
    pk["positions_R"] = r_positions;
    pk["heights"] = peaks.heights;
    pk["mean_a"] = complex_json(analysis::number_stats(unit).mean_a);
    summary["peaks"][key] = pk;
    (plus ? prof_plus : prof_minus) = prof;
  }

  for (int i = 0; i < grid.size(); ++i) {
    csv << fmt_double(grid[i]) << ","
        << (prof_plus ? fmt_double(prof_plus->values[i]) : "0") << ","
        << (prof_minus ? fmt_double(prof_minus->values[i]) : "0") << "\n";
  }
  csv.close();

  // one seeded readout, recorded alongside the analytic weights
  std::mt19937_64 rng(rc.seed);
  const auto record = protocol::shelving_measure(rng, outcome);
  summary["measurement"] = {
      {"fluorescence", record.fluorescence},
      {"probability", record.probability},
      {"cat_sign", record.cat_sign == protocol::CatSign::Plus ? "plus" : "minus"},
  };

  json state;
  state["config"] = config_json(rc, run);
  state["conventions"] = conventions_json();
  state["psi1"] = vector_json(outcome.psi1.amplitudes);
  state["psi2"] = vector_json(outcome.psi2.amplitudes);
  state["psi3"] = vector_json(outcome.psi3.amplitudes);
  state["cat_plus_unnormalized"] = vector_json(outcome.cat_plus.amplitudes);
  state["cat_minus_unnormalized"] = vector_json(outcome.cat_minus.amplitudes);
  state["conditional_state"] = vector_json(record.conditional_state.amplitudes);

  write_json_file(rc.out_prefix + "_state.json", std::move(state));
  write_json_file(rc.out_prefix + "_summary.json", std::move(summary));

  std::cout << "prepared cat state: t = " << run.t << ", dim = " << run.space.dim
            << ", engine = " << rc.engine << ", variant = " << rc.variant << "\n"
            << "weights: cat_plus = " << outcome.weight_plus
            << ", cat_minus = " << outcome.weight_minus
            << ", fluorescence probability = " << p_fluor << "\n"
            << "separation threshold sqrt(2 pi/xi) = " << sep.threshold
            << (sep.ok ? " (satisfied)" : " (NOT satisfied)") << "\n"
            << "wrote " << rc.out_prefix << "_{state,summary}.json, "
            << rc.out_prefix << "_density.csv\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  double value;
  double tolerance;
  bool pass;
};

int cmd_verify(const RunConfig& rc) {
  const ResolvedRun run = resolve(rc);
  const auto& p = run.params;
  const auto& cfg = run.space;
  std::vector<Check> checks;
  auto require = [&checks](const std::string& name, double value, double tol) {
    checks.push_back({name, value, tol, value <= tol});
  };

  const auto tr = model::transform_T(p, cfg);
  require("transform_T_unitary", unitarity_defect(tr.entries), 1e-10);
  require("pulse_v_unitary", unitarity_defect(protocol::pulse_v(cfg).entries), 1e-12);
  require("pulse_v_prime_unitary",
          unitarity_defect(protocol::pulse_v_prime(cfg).entries), 1e-12);

  // rotated-frame identity at a leakage-adequate margin
  const int id_margin = rc.margin > 0 ? rc.margin : model::identity_margin(p, cfg);
  const SpaceConfig id_cfg(cfg.dim, id_margin);
  const Mat proj = fock::joint_interior_projector(id_cfg);
  const Mat triple =
      tr.entries * model::h_lab(p, cfg).entries * tr.entries.adjoint();
  const Mat direct = model::h_rotated_full(p, cfg).entries;
  require("rotated_identity_interior", max_abs(proj * (triple - direct) * proj), 1e-8);

  const auto up = prop::u_paper(p, run.t, cfg);
  const auto ux = prop::u_exact(p, run.t, cfg);
  require("u_paper_unitary", unitarity_defect(up.entries), 1e-10);
  require("u_exact_unitary", unitarity_defect(ux.entries), 1e-10);
  const Mat id2 = Mat::Identity(2 * cfg.dim, 2 * cfg.dim);
  require("u_paper_t0_identity",
          max_abs(prop::u_paper(p, 0.0, cfg).entries - id2), 1e-10);
  require("u_exact_t0_identity",
          max_abs(prop::u_exact(p, 0.0, cfg).entries - id2), 1e-10);

  // closed-form evolution against the factorized propagator, branch by branch
  const JointState psi1 = prop::psi1_state(cfg);
  const Vec evolved = up.entries * psi1.amplitudes;
  const JointState psi2an = protocol::psi2_analytic(p, run.t, cfg);
  double branch_infid = 0.0;
  for (const bool e_side : {true, false}) {
    const Vec b1 = e_side ? Vec(evolved.head(cfg.dim)) : Vec(evolved.tail(cfg.dim));
    const Vec b2 = e_side ? psi2an.e_branch() : psi2an.g_branch();
    branch_infid = std::max(
        branch_infid, 1.0 - fock::fidelity(Vec(b1 / b1.norm()), Vec(b2 / b2.norm())));
  }
  require("psi2_branch_consistency_infidelity", branch_infid, 1e-6);
  const double phase_infid =
      1.0 - fock::fidelity(Vec(evolved), psi2an.amplitudes);

  const auto outcome = protocol::run_protocol(p, run.t, run.variant, run.engine, cfg);
  require("psi3_norm_defect", std::abs(outcome.psi3.squared_norm() - 1.0), 1e-10);
  require("cat_completeness_defect",
          std::abs(outcome.cat_plus.squared_norm() +
                   outcome.cat_minus.squared_norm() - 2.0),
          1e-8);
  require("weights_sum_defect",
          std::abs(outcome.weight_plus + outcome.weight_minus - 1.0), 1e-8);

  // when t sits on the (2k+1) pi/2 comb, the protocol cat must match the
  // closed form
  const double pi = std::numbers::pi;
  const double kk = (2.0 * run.t / pi - 1.0) / 2.0;
  const long k_round = std::lround(kk);
  json cat_check = nullptr;
  if (k_round >= 0 && std::abs(kk - k_round) < 1e-9) {
    const auto paper_outcome =
        protocol::run_protocol(p, run.t, protocol::Variant::V,
                               protocol::Engine::Paper, cfg);
    double worst = 0.0;
    for (const auto sign : {protocol::CatSign::Plus, protocol::CatSign::Minus}) {
      const auto analytic = protocol::cat_analytic(p, static_cast<int>(k_round), sign, cfg);
      const auto& cat = sign == protocol::CatSign::Plus ? paper_outcome.cat_plus
                                                        : paper_outcome.cat_minus;
      const Vec unit = cat.amplitudes / cat.amplitudes.norm();
      worst = std::max(worst, 1.0 - fock::fidelity(unit, analytic.state.amplitudes));
    }
    require("cat_vs_analytic_infidelity", worst, 1e-6);
    cat_check = {{"k", k_round}, {"worst_infidelity", worst}};
  }

  const auto rep = prop::propagator_report(p, run.t, cfg);

  bool all_pass = true;
  json jchecks = json::array();
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    jchecks.push_back({{"name", c.name},
                       {"value", c.value},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass}});
  }

  json payload;
  payload["config"] = config_json(rc, run);
  payload["conventions"] = conventions_json();
  payload["checks"] = jchecks;
  payload["identity_margin_used"] = id_margin;
  payload["cat_analytic_check"] = cat_check;
  payload["reported"] = {
      {"psi2_phase_consistency_infidelity", phase_infid},
      {"propagator_comparison",
       {{"t", rep.t},
        {"state_infidelity", rep.state_infidelity},
        {"interior_operator_distance", rep.interior_operator_distance},
        {"unitarity_defect_paper", rep.unitarity_defect_paper},
        {"branch_amp_e_paper", complex_json(rep.branch_amp_e_paper)},
        {"branch_amp_g_paper", complex_json(rep.branch_amp_g_paper)},
        {"branch_amp_e_exact", complex_json(rep.branch_amp_e_exact)},
        {"branch_amp_g_exact", complex_json(rep.branch_amp_g_exact)},
        {"branch_amplitude_flagged", rep.branch_amplitude_flagged},
        {"truncation_adequate", rep.truncation_adequate},
        {"required_dim", rep.required_dim}}},
  };
  payload["all_pass"] = all_pass;
  write_json_file(rc.out_prefix + "_verify.json", std::move(payload));

  for (const auto& c : checks)
    std::cout << (c.pass ? "ok   " : "FAIL ") << c.name << " = " << c.value
              << " (tol " << c.tolerance << ")\n";
  std::cout << "reported: propagator state_infidelity = " << rep.state_infidelity
            << ", branch flag = " << (rep.branch_amplitude_flagged ? "yes" : "no")
            << "\nwrote " << rc.out_prefix << "_verify.json\n";
  return all_pass ? kExitOk : kExitInvariantFailure;
}

// ---------------------------------------------------------------------------
// timings

int cmd_timings(double eta_ldl, double omega, std::vector<double> eta_beyond,
                double nu_hz, double lifetime_s, const std::string& out_prefix) {
  model::ParamsOptions opt;
  opt.nu_hz = nu_hz;
  auto [ldl, ldl_flags] = model::params_new(eta_ldl, omega, 0.0, opt);
  (void)ldl_flags;
  if (eta_beyond.empty())
    eta_beyond.push_back(2.0);

  std::vector<timings::TimingRow> rows;
  for (std::size_t i = 0; i < eta_beyond.size(); ++i) {
    auto [beyond, bf] = model::params_new(eta_beyond[i], omega, 0.0, opt);
    (void)bf;
    auto table = timings::comparison_table(ldl, beyond, lifetime_s);
    if (i == 0) {
      rows = table;
    } else {
      rows.push_back(table[2]); // extra this_paper row per additional eta
    }
  }

  std::printf("%-18s %-34s %14s %10s\n", "scheme", "formula", "value", "rounded");
  for (const auto& r : rows) {
    std::printf("%-18s %-34s %14.6g %10s\n", timings::scheme_name(r.scheme).c_str(),
                r.formula.c_str(), r.value, timings::format_sig3(r.value).c_str());
  }

  std::ofstream csv(out_prefix + "_timings.csv");
  write_csv_header_comments(csv);
  csv << "scheme,formula,eta,omega,nu_hz,lifetime_s,value,rounded\n";
  for (const auto& r : rows) {
    auto get = [&r](const char* key) {
      auto it = r.inputs.find(key);
      return it == r.inputs.end() ? std::string() : fmt_double(it->second);
    };
    csv << timings::scheme_name(r.scheme) << ",\"" << r.formula << "\","
        << get("eta") << "," << get("omega") << "," << get("nu_hz") << ","
        << get("lifetime_s") << "," << fmt_double(r.value) << ","
        << timings::format_sig3(r.value) << "\n";
  }
  std::cout << "wrote " << out_prefix << "_timings.csv\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// sweep

int cmd_sweep(const RunConfig& rc, double t_min, double t_max, int t_points,
              bool t_log, const std::vector<double>& eta_list) {
  struct Point {
    double t;
    double eta;
  };
  std::vector<Point> grid;

  if (!eta_list.empty()) {
    if (eta_list.size() < 2)
      throw std::invalid_argument("eta sweep needs >= 2 values");
    for (double e : eta_list) {
      RunConfig one = rc;
      one.eta = e;
      const ResolvedRun r = resolve(one);
      grid.push_back({r.t, e});
    }
  } else {
    if (t_points < 2)
      throw std::invalid_argument("t sweep needs >= 2 points");
    if (t_log && !(t_min > 0.0))
      throw std::invalid_argument("log-spaced t sweep needs t_min > 0");
    for (int i = 0; i < t_points; ++i) {
      const double f = static_cast<double>(i) / (t_points - 1);
      const double t = t_log ? t_min * std::pow(t_max / t_min, f)
                             : t_min + f * (t_max - t_min);
      grid.push_back({t, rc.eta});
    }
  }

  // one shared space large enough for every grid point
  double alpha_max = 1.0;
  for (const auto& pt : grid) {
    const double xi = pt.eta / 2.0;
    alpha_max = std::max(alpha_max, std::max(0.5 * xi * pt.t * pt.t, 2.0 * xi));
  }
  const int dim = rc.dim > 0 ? rc.dim : fock::required_dim(alpha_max);
  const SpaceConfig space(dim, rc.margin == 0 ? -1 : rc.margin);

  unsigned threads = std::thread::hardware_concurrency();
  if (const char* cap = std::getenv("CATLAB_THREADS")) {
    const unsigned v = static_cast<unsigned>(std::strtoul(cap, nullptr, 10));
    if (v > 0)
      threads = std::min(threads, v);
  }
  threads = std::max(1u, std::min<unsigned>(threads, grid.size()));

  std::vector<std::string> row_text(grid.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> truncation_hit{false};
  std::atomic<int> truncation_need{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size())
        return;
      const auto& pt = grid[i];
      try {
        model::ParamsOptions opt;
        opt.nu_hz = rc.nu_hz;
        auto [params, fl] = model::params_new(pt.eta, rc.omega, rc.delta, opt);
        (void)fl;
        const auto rep = prop::propagator_report(params, pt.t, space);
        const auto sep = analysis::separation_time_ok(params, pt.t);
        const auto outcome = protocol::run_protocol(
            params, pt.t, protocol::Variant::V, protocol::Engine::Paper, space);
        MotionalState plus{
            outcome.cat_plus.amplitudes / outcome.cat_plus.amplitudes.norm(), true};
        const double span =
            std::max(0.5 * params.xi() * pt.t * pt.t, 1.0);
        const auto prof = analysis::position_density(plus, analysis::default_grid(span));
        const int peaks = analysis::peak_summary(prof).count;

        std::ostringstream os;
        os << fmt_double(pt.t) << "," << fmt_double(pt.eta) << ","
           << fmt_double(rep.branch_amp_e_paper.real()) << ","
           << fmt_double(rep.branch_amp_e_paper.imag()) << ","
           << fmt_double(rep.branch_amp_g_paper.real()) << ","
           << fmt_double(rep.branch_amp_g_paper.imag()) << ","
           << fmt_double(rep.branch_amp_e_exact.real()) << ","
           << fmt_double(rep.branch_amp_e_exact.imag()) << ","
           << fmt_double(rep.branch_amp_g_exact.real()) << ","
           << fmt_double(rep.branch_amp_g_exact.imag()) << ","
           << fmt_double(rep.state_infidelity) << "," << (sep.ok ? 1 : 0) << ","
           << peaks;
        row_text[i] = os.str();
      } catch (const TruncationError& e) {
        truncation_hit = true;
        truncation_need = e.required_dim;
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i)
    pool.emplace_back(worker);
  for (auto& th : pool)
    th.join();

  if (truncation_hit)
    throw TruncationError(truncation_need.load(), space.dim);

  std::ofstream csv(rc.out_prefix + "_sweep.csv");
  write_csv_header_comments(csv);
  csv << "t,eta,amp_e_paper_re,amp_e_paper_im,amp_g_paper_re,amp_g_paper_im,"
         "amp_e_exact_re,amp_e_exact_im,amp_g_exact_re,amp_g_exact_im,"
         "state_infidelity,separation_ok,peak_count\n";
  for (const auto& row : row_text)
    csv << row << "\n";
  std::cout << "wrote " << rc.out_prefix << "_sweep.csv (" << grid.size()
            << " rows, dim = " << space.dim << ", threads = " << threads << ")\n";
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"catlab: trapped-ion motional cat-state laboratory"};
  app.require_subcommand(1);

  RunConfig rc;
  std::string config_path;

  auto* prepare = app.add_subcommand("prepare", "run the three-pulse preparation and write state/density/summary files");
  add_run_options(prepare, rc, config_path);

  auto* verify = app.add_subcommand("verify", "run the invariant suite and write a defect report");
  add_run_options(verify, rc, config_path);

  double eta_ldl = 0.202, omega_t = 0.1, nu_hz_t = 1e7, lifetime_s = 1.0;
  std::vector<double> eta_beyond;
  std::string timings_prefix = "catlab";
  auto* tim = app.add_subcommand("timings", "print and save the scheme-comparison table");
  tim->add_option("--eta-ldl", eta_ldl, "Lamb-Dicke eta for the reference schemes");
  tim->add_option("--omega", omega_t, "Rabi frequency for the reference schemes");
  tim->add_option("--eta-beyond", eta_beyond, "eta values for the three-pulse scheme");
  tim->add_option("--nu-hz", nu_hz_t, "trap frequency in Hz");
  tim->add_option("--lifetime", lifetime_s, "metastable-level lifetime in seconds");
  tim->add_option("--out-prefix,-o", timings_prefix, "output file prefix");

  double t_min = 0.0, t_max = 0.0;
  int t_points = 0;
  bool t_log = false;
  std::vector<double> eta_list;
  auto* sweep = app.add_subcommand("sweep", "grid of propagator comparisons over t or eta (CSV)");
  add_run_options(sweep, rc, config_path);
  sweep->add_option("--t-min", t_min, "sweep start time");
  sweep->add_option("--t-max", t_max, "sweep end time");
  sweep->add_option("--t-points", t_points, "number of t grid points (>= 2)");
  sweep->add_flag("--t-log", t_log, "log-spaced t grid");
  sweep->add_option("--eta-list", eta_list, "sweep these eta values at t from --t/auto");

  try {
    // config file first, then flags override it
    for (int i = 1; i < argc; ++i) {
      const std::string arg = argv[i];
      if (arg == "--config" && i + 1 < argc)
        load_config_file(argv[i + 1], rc);
      else if (arg.rfind("--config=", 0) == 0)
        load_config_file(arg.substr(9), rc);
    }
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (prepare->parsed())
      return cmd_prepare(rc);
    if (verify->parsed())
      return cmd_verify(rc);
    if (tim->parsed())
      return cmd_timings(eta_ldl, omega_t, eta_beyond, nu_hz_t, lifetime_s,
                         timings_prefix);
    if (sweep->parsed())
      return cmd_sweep(rc, t_min, t_max, t_points, t_log, eta_list);
  } catch (const TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
  return kExitUsage;
}
