#include "cli_commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sw/cohomology.hpp"
#include "sw/errors.hpp"
#include "sw/kahler.hpp"
#include "sw/monopole.hpp"
#include "sw/run_io.hpp"
#include "sw/sample_fields.hpp"
#include "sw/spin_algebra.hpp"

namespace sw::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;
using spin::cplx;

namespace {

std::string iso_timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_dir_manifest(const std::string& subcommand,
                        const std::string& config_json,
                        const std::vector<std::string>& inputs,
                        const std::string& out_dir, std::uint64_t seed) {
  io::RunManifest m;
  m.subcommand = subcommand;
  m.config = config_json;
  m.inputs = inputs;
  m.out_dir = out_dir;
  m.seed = seed;
  m.tool_version = defaults::kToolVersion;
  m.timestamp = iso_timestamp();
  io::write_manifest(m, out_dir + "/manifest.json");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory: " + dir);
}

// --------------------------------------------------------- algebra check --

struct CheckResult {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool pass() const { return defect <= tolerance; }
};

double sup_abs(const spin::Vec6& v) { return v.cwiseAbs().maxCoeff(); }
double sup_abs(const spin::Mat2& m) { return m.cwiseAbs().maxCoeff(); }

// The property sweep behind `algebra-check`: every invariant of the
// frame-level algebra that has a deterministic closed-form statement,
// sampled over a fixed-seed ensemble. Tolerances are pinned here.
std::vector<CheckResult> algebra_checks() {
  std::mt19937_64 mt(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rc = [&] { return cplx(u(mt), u(mt)); };
  auto random_bivector = [&] {
    spin::Bivector b;
    for (int k = 0; k < 6; ++k) b.c(k) = rc();
    return b;
  };
  auto random_real_selfdual = [&] {
    const auto& ob = spin::omega_basis();
    spin::Bivector b;
    b.c = u(mt) * ob[0].c + u(mt) * ob[1].c + u(mt) * ob[2].c;
    return b;
  };
  auto random_mat2 = [&] {
    spin::Mat2 m;
    m << rc(), rc(), rc(), rc();
    return m;
  };

  std::vector<CheckResult> checks;
  const int trials = 200;

  {
    CheckResult c{"star_squared", 0.0, 1e-13};
    for (int k = 0; k < 6; ++k) {
      spin::Bivector b;
      b.c(k) = 1.0;
      c.defect = std::max(c.defect, sup_abs(spin::Vec6(
                                        spin::star(spin::star(b)).c - b.c)));
    }
    for (int t = 0; t < trials; ++t) {
      const spin::Bivector b = random_bivector();
      c.defect = std::max(c.defect, sup_abs(spin::Vec6(
                                        spin::star(spin::star(b)).c - b.c)));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"star_pairing_symmetry", 0.0, 1e-13};
    for (int t = 0; t < trials; ++t) {
      const spin::Bivector a = random_bivector();
      const spin::Bivector b = random_bivector();
      const cplx lhs = spin::wedge_pairing(a, spin::star(b));
      const cplx rhs = spin::wedge_pairing(b, spin::star(a));
      c.defect = std::max(c.defect, std::abs(lhs - rhs));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"lambda_projectors", 0.0, 1e-13};
    for (int t = 0; t < trials; ++t) {
      const spin::Bivector b = random_bivector();
      const spin::Bivector p = spin::project_lambda(b, +1);
      const spin::Bivector q = spin::project_lambda(b, -1);
      c.defect =
          std::max(c.defect, sup_abs(spin::Vec6(p.c + q.c - b.c)));
      c.defect = std::max(
          c.defect, sup_abs(spin::Vec6(spin::project_lambda(p, +1).c - p.c)));
      c.defect = std::max(c.defect,
                          sup_abs(spin::project_lambda(p, -1).c));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"frame_self_dual", 0.0, 1e-14};
    for (const auto& w : spin::omega_basis()) {
      c.defect =
          std::max(c.defect, sup_abs(spin::Vec6(spin::star(w).c - w.c)));
      c.defect = std::max(
          c.defect, sup_abs(spin::Vec6(spin::project_lambda(w, +1).c - w.c)));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"tau_pairing", 0.0, 1e-13};
    const auto& tau = spin::tau_frame();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const spin::HomElement fi{tau[i], spin::HomDirection::PlusToMinus};
        const spin::HomElement fj{tau[j], spin::HomDirection::PlusToMinus};
        const cplx want(i == j ? 2.0 : 0.0, 0.0);
        c.defect =
            std::max(c.defect, std::abs(spin::sym_pairing(fi, fj) - want));
      }
    checks.push_back(c);
  }
  {
    CheckResult c{"sigma_skew_hermitian", 0.0, 1e-13};
    for (int t = 0; t < trials; ++t) {
      spin::Spinor phi;
      phi.v << rc(), rc();
      const spin::Mat2 s = spin::sigma(phi, phi).m;
      c.defect = std::max(c.defect, sup_abs(spin::Mat2(s + s.adjoint())));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"sigma_unit_invariance", 0.0, 1e-13};
    for (int t = 0; t < trials; ++t) {
      spin::Spinor phi, psi;
      phi.v << rc(), rc();
      psi.v << rc(), rc();
      const cplx g = std::polar(1.0, 3.0 * u(mt));
      spin::Spinor gphi, gpsi;
      gphi.v = g * phi.v;
      gpsi.v = g * psi.v;
      c.defect = std::max(
          c.defect,
          sup_abs(spin::Mat2(spin::sigma(gphi, gpsi).m -
                             spin::sigma(phi, psi).m)));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"iso_plus_inverse", 0.0, 1e-12};
    for (int t = 0; t < trials; ++t) {
      const spin::Bivector b = random_real_selfdual();
      const spin::Bivector back =
          spin::lambda_plus_from_skew(spin::iso_end0(b, +1));
      c.defect = std::max(c.defect, sup_abs(spin::Vec6(back.c - b.c)));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"iso_plus_kills_antiselfdual", 0.0, 1e-13};
    for (int t = 0; t < trials; ++t) {
      const spin::Bivector b = spin::project_lambda(random_bivector(), -1);
      c.defect = std::max(c.defect, sup_abs(spin::iso_end0(b, +1).m));
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"rho6_preserves_wedge_gram", 0.0, 1e-10};
    const spin::Mat6& g6 = spin::gram_wedge();
    for (int t = 0; t < 50; ++t) {
      spin::Mat2 g = random_mat2();
      while (std::abs(g.determinant()) < 0.3) g = random_mat2();
      g /= std::sqrt(g.determinant());
      const spin::Mat6 r = spin::rho6(spin::rho4(g, g));
      c.defect = std::max(
          c.defect,
          (r.transpose() * g6 * r - g6).cwiseAbs().maxCoeff());
    }
    checks.push_back(c);
  }
  {
    CheckResult c{"dagger_involution", 0.0, 1e-14};
    for (int t = 0; t < trials; ++t) {
      const spin::HomElement f{random_mat2(),
                               spin::HomDirection::PlusToMinus};
      c.defect = std::max(
          c.defect,
          sup_abs(spin::Mat2(spin::dagger(spin::dagger(f)).m - f.m)));
    }
    checks.push_back(c);
  }
  return checks;
}

int cmd_algebra_check(const std::string& out_dir, std::ostream& out) {
  const std::vector<CheckResult> checks = algebra_checks();
  bool all = true;
  json jchecks = json::array();
  for (const auto& c : checks) {
    all = all && c.pass();
    jchecks.push_back({{"name", c.name},
                       {"defect", c.defect},
                       {"tolerance", c.tolerance},
                       {"pass", c.pass()}});
  }
  json rep;
  rep["suite"] = "algebra-check";
  rep["tool_version"] = defaults::kToolVersion;
  rep["pass"] = all;
  rep["checks"] = jchecks;
  const std::string text = rep.dump(2) + "\n";
  out << text;

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    std::ofstream f(out_dir + "/algebra_report.json", std::ios::binary);
    f << text;
    write_dir_manifest("algebra-check", "{}", {}, out_dir, 0);
  }
  return all ? 0 : 1;
}

// ------------------------------------------------------------ cohomology --

std::string group_name_z(const homology::GroupInfo& g) {
  std::vector<std::string> parts;
  if (g.free_rank == 1) parts.push_back("Z");
  if (g.free_rank > 1) parts.push_back("Z^" + std::to_string(g.free_rank));
  for (const auto& d : g.torsion) {
    std::ostringstream ss;
    ss << "Z/" << d;
    parts.push_back(ss.str());
  }
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

std::string group_name_z2(const homology::GroupInfo& g) {
  if (g.free_rank == 0) return "0";
  if (g.free_rank == 1) return "Z/2";
  return "(Z/2)^" + std::to_string(g.free_rank);
}

std::string coords_text(const std::vector<homology::Int>& coords) {
  std::ostringstream ss;
  ss << "[";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) ss << ", ";
    ss << coords[i];
  }
  ss << "]";
  return ss.str();
}

json coords_json(const std::vector<homology::Int>& coords) {
  json arr = json::array();
  for (const auto& x : coords) {
    std::ostringstream ss;
    ss << x;
    arr.push_back(ss.str());
  }
  return arr;
}

int cmd_cohomology(const std::string& input, const std::string& klass,
                   const std::string& out_dir, std::ostream& out,
                   std::ostream& err) {
  std::optional<homology::ChainComplex> c;
  try {
    c.emplace(homology::load_chain_complex(input));
  } catch (const std::exception& e) {
    err << "error: " << input << ": " << e.what() << "\n";
    return 2;
  }

  const auto gz = homology::cohomology_groups(*c, homology::Ring::Z);
  const auto g2 = homology::cohomology_groups(*c, homology::Ring::Z2);

  out << "complex: " << c->name() << "  (dim " << c->dim()
      << (c->manifold() ? ", manifold" : "") << ")\n";
  out << "  k  H^k(Z)              H^k(Z/2)\n";
  for (int k = 0; k <= c->dim(); ++k) {
    std::ostringstream row;
    row << "  " << k << "  ";
    std::string zname = group_name_z(gz[k]);
    zname.resize(std::max<size_t>(zname.size(), 20), ' ');
    row << zname << group_name_z2(g2[k]);
    out << row.str() << "\n";
  }

  const homology::NamedCochain* nc = c->find_class(klass);
  if (nc == nullptr) {
    err << "error: no class named \"" << klass << "\" in " << input << "\n";
    return 2;
  }

  std::vector<homology::Int> rep = nc->coeffs;
  for (auto& x : rep) x = ((x % 2) + 2) % 2;
  const homology::CohomologyClass w2 =
      homology::make_class(*c, nc->degree, homology::Ring::Z2, rep);
  const homology::CohomologyClass bock = homology::bockstein(*c, w2);
  const homology::LiftDecision d = homology::spinc_lift(*c, w2);

  out << "class: " << klass << "  (degree " << nc->degree << ")\n";
  out << "bockstein: " << (bock.is_zero() ? "zero" : "nonzero") << "\n";
  out << "lifts: " << (d.lifts ? "yes" : "no") << "\n";
  if (d.lifts && d.witness) {
    out << "witness (canonical coordinates): "
        << coords_text(d.witness->coords) << "\n";
    out << "lift classes modulo doubles: " << d.lift_count << "\n";
  }
  if (!d.lifts && d.obstruction) {
    out << "obstruction (degree " << d.obstruction->degree
        << "): " << coords_text(d.obstruction->coords) << "\n";
  }

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    json j;
    j["complex"] = c->name();
    j["manifold"] = c->manifold();
    j["class"] = klass;
    j["degree"] = nc->degree;
    j["bockstein_zero"] = bock.is_zero();
    j["lifts"] = d.lifts;
    j["witness"] =
        (d.lifts && d.witness) ? coords_json(d.witness->coords) : json();
    j["obstruction"] = (!d.lifts && d.obstruction)
                           ? coords_json(d.obstruction->coords)
                           : json();
    {
      std::ostringstream ss;
      ss << d.lift_count;
      j["lift_count"] = ss.str();
    }
    json jz = json::array(), j2 = json::array();
    for (int k = 0; k <= c->dim(); ++k) {
      json tors = json::array();
      for (const auto& t : gz[k].torsion) {
        std::ostringstream ss;
        ss << t;
        tors.push_back(ss.str());
      }
      jz.push_back({{"degree", k},
                    {"free_rank", gz[k].free_rank},
                    {"torsion", tors}});
      j2.push_back({{"degree", k}, {"dimension", g2[k].free_rank}});
    }
    j["groups_z"] = jz;
    j["groups_z2"] = j2;
    j["tool_version"] = defaults::kToolVersion;
    std::ofstream f(out_dir + "/cohomology_report.json", std::ios::binary);
    f << j.dump(2) << "\n";
    json cfg;
    cfg["input"] = input;
    cfg["class"] = klass;
    write_dir_manifest("cohomology", cfg.dump(), {input}, out_dir, 0);
  }
  return 0;
}

// ----------------------------------------------------------------- solve --

lat::SelfDualForm constant_delta(const lat::TorusGrid& g,
                                 const std::array<double, 3>& d) {
  lat::SelfDualForm delta(g);
  for (long i = 0; i < g.volume(); ++i)
    for (int k = 0; k < 3; ++k) delta.at(i, k) = d[k];
  return delta;
}

void write_solve_artifacts(const mono::SolverReport& rep,
                           const mono::SolverConfig& cfg,
                           const std::string& out_dir) {
  io::write_trace_csv(rep.trace, out_dir + "/trace.csv");
  io::Snapshot snap;
  snap.grid = lat::TorusGrid(cfg.n, cfg.length);
  snap.stencil = cfg.stencil;
  snap.kappa = defaults::kKappa;
  snap.a = rep.a;
  snap.phi = rep.phi;
  snap.delta = rep.delta;
  io::write_snapshot(snap, out_dir + "/fields.snap");
  io::write_report(rep, "fields.snap", out_dir + "/report.json");
}

// A zero iteration budget cannot enter the descent loop (the library
// requires a positive budget); report the seeded initial state as a
// non-converged run unless it already solves the equations.
mono::SolverReport zero_budget_report(const mono::SolverConfig& cfg) {
  const lat::TorusGrid g(cfg.n, cfg.length);
  auto [a, phi] = mono::seeded_initial_data(g, cfg.seed, cfg.init_amplitude);
  const lat::SelfDualForm delta = constant_delta(g, cfg.delta);
  const mono::Residual r = mono::sw_residual(a, phi, delta, cfg.stencil);
  mono::SolverReport rep;
  rep.a = a;
  rep.phi = phi;
  rep.delta = delta;
  rep.dirac_residual = std::sqrt(lat::norm2(r.dirac));
  rep.curv_residual = std::sqrt(lat::norm2(r.curv));
  rep.final_energy = lat::norm2(r.dirac) + lat::norm2(r.curv);
  rep.sup_phi_sq = lat::sup_phi_sq(phi);
  rep.converged = rep.final_energy <= cfg.energy_tol;
  rep.iterations = 0;
  rep.trace.push_back({0, rep.final_energy, rep.dirac_residual,
                       rep.curv_residual, rep.sup_phi_sq, 0.0});
  try {
    rep.bound = mono::bound_check(a, phi, delta, cfg.stencil);
  } catch (const mono::PreconditionError& e) {
    rep.bound.precondition_ok = false;
    rep.bound.pass = false;
    rep.bound.residual_norm = e.residual_norm;
    rep.bound.threshold = e.threshold;
    rep.bound.sup_phi_sq = rep.sup_phi_sq;
  }
  return rep;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              std::optional<std::uint64_t> seed_override,
              std::optional<lat::Stencil> stencil_override, std::ostream& out,
              std::ostream& err) {
  mono::SolverConfig cfg = io::load_solver_config(config_path);
  if (seed_override) cfg.seed = *seed_override;
  if (stencil_override) cfg.stencil = *stencil_override;

  // surface range errors before any artifact is written (a zero iteration
  // budget is legal here and handled as an immediate non-converged run)
  if (cfg.max_iterations == 0) {
    mono::SolverConfig probe = cfg;
    probe.max_iterations = 1;
    probe.validate();
  } else {
    cfg.validate();
  }

  ensure_dir(out_dir);
  write_dir_manifest("solve", io::solver_config_json(cfg), {config_path},
                     out_dir, cfg.seed);

  try {
    const mono::SolverReport rep = cfg.max_iterations == 0
                                       ? zero_budget_report(cfg)
                                       : mono::solve(cfg);
    write_solve_artifacts(rep, cfg, out_dir);
    out << (rep.converged ? "converged" : "non-converged") << " after "
        << rep.iterations << " iterations, final energy "
        << io::format_double(rep.final_energy) << "\n";
    return rep.converged ? 0 : 1;
  } catch (const mono::SolverDivergence& e) {
    json j;
    j["converged"] = false;
    j["diverged"] = true;
    j["error"] = e.what();
    j["last_energy"] = e.last_energy;
    j["iteration"] = e.iteration;
    j["snapshot"] = "fields.snap";
    j["tool_version"] = defaults::kToolVersion;
    std::ofstream f(out_dir + "/report.json", std::ios::binary);
    f << j.dump(2) << "\n";
    io::Snapshot snap;
    snap.grid = lat::TorusGrid(cfg.n, cfg.length);
    snap.stencil = cfg.stencil;
    snap.kappa = defaults::kKappa;
    snap.a = e.last_a;
    snap.phi = e.last_phi;
    snap.delta = constant_delta(snap.grid, cfg.delta);
    io::write_snapshot(snap, out_dir + "/fields.snap");
    err << "error: divergence at iteration " << e.iteration << ": "
        << e.what() << "\n";
    return 3;
  }
}

// ----------------------------------------------------------- convergence --

// deterministic smooth fields for the dbar study; multi-axis low-frequency
// waves so every covariant term is exercised while N = 8 stays asymptotic
lat::ComplexField dbar_section(const lat::TorusGrid& g) {
  using samples::detail::Wave;
  const Wave w1{0.8, {0, 1, 0, 0}, 0.30};
  const Wave w2{0.5, {1, 0, -1, 1}, -0.70};
  const Wave w3{0.4, {0, -1, 1, 0}, 1.10};
  lat::ComplexField m(g);
  for (long i = 0; i < g.volume(); ++i) {
    const auto s = g.coords(i);
    m.v[i] = samples::detail::eval_cwave(w1, s, g.n) +
             samples::detail::eval_cwave(w2, s, g.n) +
             cplx(0.0, 0.6) * samples::detail::eval_cwave(w3, s, g.n);
  }
  return m;
}

lat::OneForm dbar_connection(const lat::TorusGrid& g) {
  using samples::detail::Wave;
  const std::array<Wave, 4> waves = {
      Wave{0.060, {0, 1, 0, -1}, 0.40},
      Wave{0.075, {1, 0, 1, 0}, -0.90},
      Wave{0.055, {0, -1, 0, 1}, 1.70},
      Wave{0.065, {1, 1, 0, 0}, 0.10},
  };
  lat::OneForm a(g);
  for (long i = 0; i < g.volume(); ++i) {
    const auto s = g.coords(i);
    for (int mu = 0; mu < 4; ++mu)
      a.at(i, mu) = samples::detail::eval_wave(waves[mu], s, g.n);
  }
  return a;
}

int cmd_convergence(const std::string& study, std::vector<int> sizes,
                    lat::Stencil st, const std::string& out_dir,
                    std::ostream& out, std::ostream& err) {
  if (sizes.size() < 2)
    throw ConfigError("convergence study needs at least 2 sizes");
  if (std::set<int>(sizes.begin(), sizes.end()).size() != sizes.size())
    throw ConfigError("duplicate sizes in --sizes");
  for (int n : sizes)
    if (n < 3)
      throw ConfigError("grid size " + std::to_string(n) +
                        " is below the minimum of 3");
  std::sort(sizes.begin(), sizes.end());

  std::vector<double> residuals;
  for (int n : sizes) {
    const lat::TorusGrid g(n, 1.0);
    double r = 0.0;
    if (study == "weitzenbock") {
      const lat::OneForm a = samples::smooth_one_form(g, 0);
      const lat::SpinorPlus phi = samples::smooth_spinor(g, 0);
      r = lat::weitzenbock_residual(a, phi, st).norm;
    } else if (study == "dirac-dbar") {
      r = kah::dirac_dbar_residual(dbar_connection(g), dbar_section(g), st);
    } else {
      throw ConfigError("unknown study \"" + study +
                        "\" (expected weitzenbock or dirac-dbar)");
    }
    if (!(r > 0.0) || !std::isfinite(r))
      throw ConfigError("study residual is not a positive finite number");
    residuals.push_back(r);
  }

  // least-squares slope of log r against log n; the decay order is -slope
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = double(sizes.size());
  for (size_t i = 0; i < sizes.size(); ++i) {
    const double x = std::log(double(sizes[i]));
    const double y = std::log(residuals[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double order = -(m * sxy - sx * sy) / (m * sxx - sx * sx);

  std::string csv = "n,residual,fitted_order\n";
  for (size_t i = 0; i < sizes.size(); ++i) {
    csv += std::to_string(sizes[i]);
    csv += ',';
    csv += io::format_double(residuals[i]);
    csv += ',';
    csv += io::format_double(order);
    csv += '\n';
  }
  out << csv;

  if (!out_dir.empty()) {
    ensure_dir(out_dir);
    std::ofstream f(out_dir + "/study.csv", std::ios::binary);
    f << csv;
    json cfg;
    cfg["study"] = study;
    cfg["sizes"] = sizes;
    cfg["stencil"] = lat::stencil_name(st);
    write_dir_manifest("convergence", cfg.dump(), {}, out_dir, 0);
  }

  // the expected decay floor of the stencil: failing it is a property
  // failure, not a usage error
  const double floor = st == lat::Stencil::Symmetric ? 1.9 : 0.9;
  if (order < floor) {
    err << "convergence failure: fitted order " << io::format_double(order)
        << " is below the expected " << io::format_double(floor) << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"verification tool for the monopole-equation artifact"};
  app.set_version_flag("--version", std::string(defaults::kToolVersion));
  app.require_subcommand(1);

  std::string alg_out;
  CLI::App* alg = app.add_subcommand(
      "algebra-check", "run the frame-algebra property suite");
  alg->add_option("--out", alg_out, "directory for report and manifest");

  std::string coh_input, coh_class = "w2", coh_out;
  CLI::App* coh = app.add_subcommand(
      "cohomology", "cohomology table and lift verdict of a chain complex");
  coh->add_option("input", coh_input, "chain-complex file")->required();
  coh->add_option("class", coh_class, "named cochain to test (default w2)");
  coh->add_option("--out", coh_out, "directory for report and manifest");

  std::string solve_config, solve_out, solve_stencil;
  std::uint64_t solve_seed = 0;
  CLI::App* sol =
      app.add_subcommand("solve", "gradient-descent monopole solver");
  sol->add_option("--config", solve_config, "solver config JSON")->required();
  sol->add_option("--out", solve_out, "output directory")->required();
  CLI::Option* seed_opt =
      sol->add_option("--seed", solve_seed, "override the config seed");
  sol->add_option("--stencil", solve_stencil, "override the config stencil")
      ->check(CLI::IsMember({"forward", "symmetric"}));

  std::string conv_study, conv_out, conv_stencil = "symmetric";
  std::vector<int> conv_sizes;
  CLI::App* conv = app.add_subcommand(
      "convergence", "residual decay study across grid sizes");
  conv->add_option("study", conv_study, "weitzenbock or dirac-dbar")
      ->required();
  conv->add_option("--sizes", conv_sizes, "comma-separated grid sizes")
      ->required()
      ->delimiter(',');
  conv->add_option("--stencil", conv_stencil, "difference stencil")
      ->check(CLI::IsMember({"forward", "symmetric"}));
  conv->add_option("--out", conv_out, "directory for CSV and manifest");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (alg->parsed()) return cmd_algebra_check(alg_out, out);
    if (coh->parsed())
      return cmd_cohomology(coh_input, coh_class, coh_out, out, err);
    if (sol->parsed()) {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = solve_seed;
      std::optional<lat::Stencil> stencil;
      if (!solve_stencil.empty())
        stencil = lat::parse_stencil(solve_stencil);
      return cmd_solve(solve_config, solve_out, seed, stencil, out, err);
    }
    if (conv->parsed())
      return cmd_convergence(conv_study, conv_sizes,
                             lat::parse_stencil(conv_stencil), conv_out,
                             out, err);
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("swtool");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(int(argv.size()), argv.data(), out, err);
}

}  // namespace sw::cli
