#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../src/cli_commands.hpp"
#include "sw/run_io.hpp"

using namespace sw;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string data_path(const std::string& rel) {
  return std::string(SW_DATA_DIR) + "/" + rel;
}

// fresh scratch directory per call, cleaned up by the fixture destructor
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("swtool_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double le_double_at(const std::string& bytes, size_t offset) {
  REQUIRE(offset + 8 <= bytes.size());
  std::uint64_t u = 0;
  for (int k = 7; k >= 0; --k)
    u = (u << 8) | std::uint8_t(bytes[offset + k]);
  double d;
  std::memcpy(&d, &u, 8);
  return d;
}

std::uint64_t le_u64_at(const std::string& bytes, size_t offset) {
  REQUIRE(offset + 8 <= bytes.size());
  std::uint64_t u = 0;
  for (int k = 7; k >= 0; --k)
    u = (u << 8) | std::uint8_t(bytes[offset + k]);
  return u;
}

}  // namespace

TEST_CASE("trace csv is pinned to the documented header and round-trips") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(0.0) == "0");

  std::vector<mono::TraceRow> trace;
  trace.push_back({0, 1.0 / 3.0, 0.57735026918962584, 0.1, 8.0, 0.0});
  trace.push_back({1, 1e-300, 1e-150, 3.0e-151, 1.25, 0.0078125});
  trace.push_back({2, 0.0, 0.0, 0.0, 0.0, 12345.678901234567});

  const std::string text = io::trace_csv(trace);
  const std::string header =
      "iteration,energy,dirac_residual,curv_residual,sup_phi_sq,step_size";
  CHECK(text.substr(0, header.size()) == header);
  CHECK(text[header.size()] == '\n');

  TempDir tmp;
  io::write_trace_csv(trace, tmp.file("trace.csv"));
  CHECK(slurp(tmp.file("trace.csv")) == text);

  const std::vector<mono::TraceRow> back =
      io::read_trace_csv(tmp.file("trace.csv"));
  REQUIRE(back.size() == trace.size());
  for (size_t i = 0; i < trace.size(); ++i) {
    CHECK(back[i].iteration == trace[i].iteration);
    CHECK(back[i].energy == trace[i].energy);  // bitwise via %.17g
    CHECK(back[i].dirac_residual == trace[i].dirac_residual);
    CHECK(back[i].curv_residual == trace[i].curv_residual);
    CHECK(back[i].sup_phi_sq == trace[i].sup_phi_sq);
    CHECK(back[i].step_size == trace[i].step_size);
  }
  // a second write of the read-back is byte-identical
  io::write_trace_csv(back, tmp.file("trace2.csv"));
  CHECK(slurp(tmp.file("trace2.csv")) == text);
}

TEST_CASE("snapshot binary follows the documented layout and round-trips") {
  const lat::TorusGrid g(3, 2.0);
  io::Snapshot s;
  s.grid = g;
  s.stencil = lat::Stencil::Symmetric;
  s.kappa = 0.5;
  s.a = lat::OneForm(g);
  s.phi = lat::SpinorPlus(g);
  s.delta = lat::SelfDualForm(g);
  std::mt19937_64 mt(99);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (auto& x : s.a.v) x = u(mt);
  for (auto& v : s.phi.v)
    v = Eigen::Vector2cd(lat::cplx(u(mt), u(mt)), lat::cplx(u(mt), u(mt)));
  for (auto& x : s.delta.v) x = u(mt);

  TempDir tmp;
  io::write_snapshot(s, tmp.file("fields.snap"));
  const std::string bytes = slurp(tmp.file("fields.snap"));

  // magic and header length
  REQUIRE(bytes.size() > 16);
  CHECK(bytes.substr(0, 8) == "SWFLD001");
  const std::uint64_t hlen = le_u64_at(bytes, 8);
  REQUIRE(16 + hlen < bytes.size());

  // header parses as JSON with the documented keys (independent parse)
  const json header = json::parse(bytes.substr(16, hlen));
  CHECK(header.at("n").get<int>() == 3);
  CHECK(header.at("length").get<double>() == 2.0);
  CHECK(header.at("stencil").get<std::string>() == "symmetric");
  CHECK(header.at("kappa").get<double>() == 0.5);
  REQUIRE(header.at("fields").size() == 3);
  CHECK(header["fields"][0].at("name") == "a");
  CHECK(header["fields"][0].at("components") == 4);
  CHECK(header["fields"][1].at("name") == "phi");
  CHECK(header["fields"][1].at("components") == 4);
  CHECK(header["fields"][2].at("name") == "delta");
  CHECK(header["fields"][2].at("components") == 3);

  // payload size: volume * (4 + 4 + 3) doubles
  const long vol = g.volume();
  CHECK(bytes.size() == 16 + hlen + size_t(8) * vol * 11);

  // spot-decode: lexicographic site order with the documented index formula
  const size_t payload = 16 + hlen;
  const std::array<int, 4> site = {1, 2, 0, 1};
  const long idx = ((long(site[0]) * 3 + site[1]) * 3 + site[2]) * 3 + site[3];
  for (int mu = 0; mu < 4; ++mu)
    CHECK(le_double_at(bytes, payload + 8 * (4 * idx + mu)) ==
          s.a.at(idx, mu));
  const size_t phi_base = payload + 8 * size_t(4) * vol;
  CHECK(le_double_at(bytes, phi_base + 8 * (4 * idx + 0)) ==
        s.phi.v[idx](0).real());
  CHECK(le_double_at(bytes, phi_base + 8 * (4 * idx + 1)) ==
        s.phi.v[idx](0).imag());
  CHECK(le_double_at(bytes, phi_base + 8 * (4 * idx + 2)) ==
        s.phi.v[idx](1).real());
  CHECK(le_double_at(bytes, phi_base + 8 * (4 * idx + 3)) ==
        s.phi.v[idx](1).imag());
  const size_t delta_base = phi_base + 8 * size_t(4) * vol;
  for (int k = 0; k < 3; ++k)
    CHECK(le_double_at(bytes, delta_base + 8 * (3 * idx + k)) ==
          s.delta.at(idx, k));

  // full read-back is bitwise
  const io::Snapshot r = io::read_snapshot(tmp.file("fields.snap"));
  CHECK(r.grid == g);
  CHECK(r.stencil == lat::Stencil::Symmetric);
  CHECK(r.kappa == 0.5);
  CHECK(r.a.v == s.a.v);
  CHECK(r.delta.v == s.delta.v);
  REQUIRE(r.phi.v.size() == s.phi.v.size());
  for (long i = 0; i < vol; ++i) CHECK(r.phi.v[i] == s.phi.v[i]);

  // corrupted magic is rejected
  std::string bad = bytes;
  bad[0] = 'X';
  spit(tmp.file("bad.snap"), bad);
  CHECK_THROWS_AS(io::read_snapshot(tmp.file("bad.snap")), sw::ParseError);
  // truncated payload is rejected
  spit(tmp.file("short.snap"), bytes.substr(0, bytes.size() - 9));
  CHECK_THROWS_AS(io::read_snapshot(tmp.file("short.snap")), sw::ParseError);
}

TEST_CASE("manifest and solver config round-trip with strict keys") {
  io::RunManifest m;
  m.subcommand = "solve";
  m.config = io::solver_config_json(mono::SolverConfig{});
  m.inputs = {"a.json", "b.chain"};
  m.out_dir = "/tmp/somewhere";
  m.seed = 0xDEADBEEFCAFEBABEull;
  m.tool_version = "0.1.0";
  m.timestamp = "2026-08-15T00:00:00Z";

  TempDir tmp;
  io::write_manifest(m, tmp.file("manifest.json"));
  const io::RunManifest back = io::read_manifest(tmp.file("manifest.json"));
  CHECK(back.subcommand == m.subcommand);
  CHECK(back.config == m.config);
  CHECK(back.inputs == m.inputs);
  CHECK(back.out_dir == m.out_dir);
  CHECK(back.seed == m.seed);
  CHECK(back.tool_version == m.tool_version);
  CHECK(back.timestamp == m.timestamp);

  // defaults: empty object resolves to the default-constructed config
  const mono::SolverConfig def = io::parse_solver_config("{}");
  const mono::SolverConfig ref;
  CHECK(def.n == ref.n);
  CHECK(def.stencil == ref.stencil);
  CHECK(def.max_iterations == ref.max_iterations);
  CHECK(def.seed == ref.seed);
  CHECK(def.delta == ref.delta);

  // full round trip through the canonical text
  mono::SolverConfig cfg;
  cfg.n = 5;
  cfg.length = 2.5;
  cfg.stencil = lat::Stencil::Symmetric;
  cfg.backtracking = false;
  cfg.step0 = 0.125;
  cfg.max_iterations = 321;
  cfg.energy_tol = 1e-9;
  cfg.seed = 42;
  cfg.init_amplitude = 0.01;
  cfg.delta = {0.25, -0.5, 0.125};
  const mono::SolverConfig rt = io::parse_solver_config(
      io::solver_config_json(cfg));
  CHECK(io::solver_config_json(rt) == io::solver_config_json(cfg));
  CHECK(rt.stencil == lat::Stencil::Symmetric);
  CHECK(rt.delta == cfg.delta);

  // unknown keys are rejected by name
  try {
    io::parse_solver_config("{\"max_iteration\": 5}");
    FAIL("expected ConfigError");
  } catch (const sw::ConfigError& e) {
    CHECK(std::string(e.what()).find("max_iteration") != std::string::npos);
  }
  // type mismatches name the key too
  try {
    io::parse_solver_config("{\"n\": \"six\"}");
    FAIL("expected ConfigError");
  } catch (const sw::ConfigError& e) {
    CHECK(std::string(e.what()).find("n") != std::string::npos);
  }
  // bad stencil name, bad delta arity
  CHECK_THROWS_AS(io::parse_solver_config("{\"stencil\": \"sideways\"}"),
                  sw::ConfigError);
  CHECK_THROWS_AS(io::parse_solver_config("{\"delta\": [1.0, 2.0]}"),
                  sw::ConfigError);
  // malformed JSON is a config error as well
  CHECK_THROWS_AS(io::parse_solver_config("{\"n\": 5"), sw::ConfigError);
}

TEST_CASE("algebra-check emits a schema-stable report and passes") {
  const CliResult r = run({"algebra-check"});
  CHECK(r.code == 0);

  const json rep = json::parse(r.out);
  CHECK(rep.at("suite") == "algebra-check");
  CHECK(rep.at("tool_version") == "0.1.0");
  CHECK(rep.at("pass") == true);
  const auto& checks = rep.at("checks");
  REQUIRE(checks.is_array());
  CHECK(checks.size() >= 8);

  bool saw_star = false;
  for (const auto& c : checks) {
    // schema: exactly these four keys, with these types
    CHECK(c.size() == 4);
    CHECK(c.at("name").is_string());
    CHECK(c.at("defect").is_number());
    CHECK(c.at("tolerance").is_number());
    CHECK(c.at("pass").is_boolean());
    CHECK(c.at("pass") == true);
    CHECK(c.at("defect").get<double>() <= c.at("tolerance").get<double>());
    if (c.at("name") == "star_squared") {
      saw_star = true;
      CHECK(c.at("defect").get<double>() < 1e-13);
    }
  }
  CHECK(saw_star);

  // round trip: serialize, reparse, compare
  CHECK(json::parse(rep.dump()) == rep);

  // deterministic output
  const CliResult r2 = run({"algebra-check"});
  CHECK(r2.out == r.out);

  // --out writes the same report plus a manifest
  TempDir tmp;
  const CliResult r3 =
      run({"algebra-check", "--out", tmp.file("rep")});
  CHECK(r3.code == 0);
  CHECK(json::parse(slurp(tmp.file("rep") + "/algebra_report.json")) == rep);
  const io::RunManifest m = io::read_manifest(tmp.file("rep") +
                                              "/manifest.json");
  CHECK(m.subcommand == "algebra-check");
  CHECK(m.tool_version == "0.1.0");
}

TEST_CASE("cohomology command reports groups and the lift verdict") {
  // a manifold entry that lifts
  const CliResult cp2 = run({"cohomology", data_path("catalog/cp2.chain")});
  CHECK(cp2.code == 0);
  CHECK(cp2.out.find("lifts: yes") != std::string::npos);
  CHECK(cp2.out.find("complex: cp2") != std::string::npos);

  // a torsion complex whose class does not lift
  const CliResult k2 =
      run({"cohomology", data_path("catalog/torsion_k2.chain")});
  CHECK(k2.code == 0);
  CHECK(k2.out.find("lifts: no") != std::string::npos);

  // empty complex: the zero class lifts
  const CliResult empty =
      run({"cohomology", data_path("extra/empty.chain")});
  CHECK(empty.code == 0);
  CHECK(empty.out.find("lifts: yes") != std::string::npos);

  // JSON report lands in the output directory when requested
  TempDir tmp;
  const CliResult rep = run({"cohomology", data_path("catalog/cp2.chain"),
                             "--out", tmp.file("coh")});
  CHECK(rep.code == 0);
  const json j = json::parse(slurp(tmp.file("coh") + "/cohomology_report.json"));
  CHECK(j.at("complex") == "cp2");
  CHECK(j.at("class") == "w2");
  CHECK(j.at("lifts") == true);
  CHECK(j.at("bockstein_zero") == true);
  CHECK(j.at("groups_z").is_array());
  CHECK(j.at("groups_z2").is_array());
  const io::RunManifest m = io::read_manifest(tmp.file("coh") +
                                              "/manifest.json");
  CHECK(m.subcommand == "cohomology");
  REQUIRE(m.inputs.size() == 1);
  CHECK(m.inputs[0] == data_path("catalog/cp2.chain"));

  // unknown class name: usage error naming it
  const CliResult badclass = run({"cohomology", data_path("catalog/cp2.chain"),
                                  "nosuchclass"});
  CHECK(badclass.code == 2);
  CHECK(badclass.err.find("nosuchclass") != std::string::npos);

  // missing file: usage error
  CHECK(run({"cohomology", data_path("catalog/missing.chain")}).code == 2);

  // malformed file: parse error with position lands on stderr
  const std::string bad = tmp.file("bad.chain");
  spit(bad, "complex broken\nranks 1 1\nboundary 1\nx\nend\n");
  const CliResult parse = run({"cohomology", bad});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line") != std::string::npos);
}

TEST_CASE("solve command writes manifest, report, trace, and snapshot") {
  TempDir tmp;
  json cfg;
  cfg["n"] = 3;
  cfg["stencil"] = "forward";
  cfg["max_iterations"] = 20000;
  cfg["energy_tol"] = 1e-10;
  cfg["seed"] = 7;
  cfg["init_amplitude"] = 0.05;
  cfg["delta"] = {0.05, 0.0, 0.0};
  spit(tmp.file("cfg.json"), cfg.dump());

  const std::string out1 = tmp.file("run1");
  const CliResult r1 =
      run({"solve", "--config", tmp.file("cfg.json"), "--out", out1});
  CHECK(r1.code == 0);

  const json rep = json::parse(slurp(out1 + "/report.json"));
  CHECK(rep.at("converged") == true);
  CHECK(rep.at("diverged") == false);
  CHECK(rep.at("final_energy").get<double>() <= 1e-10);
  CHECK(rep.at("snapshot") == "fields.snap");
  CHECK(rep.at("bound").at("pass") == true);
  CHECK(rep.at("wall_seconds").get<double>() >= 0.0);

  const std::string trace1 = slurp(out1 + "/trace.csv");
  const std::vector<mono::TraceRow> rows = io::read_trace_csv(out1 +
                                                              "/trace.csv");
  CHECK(long(rows.size()) == rep.at("iterations").get<long>() + 1);
  CHECK(rows.front().iteration == 0);
  CHECK(rows.front().step_size == 0.0);
  // the energy trace is nonincreasing
  for (size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].energy <= rows[i - 1].energy);

  // the snapshot really contains the solution the report describes
  const io::Snapshot snap = io::read_snapshot(out1 + "/fields.snap");
  CHECK(snap.grid.n == 3);
  CHECK(snap.stencil == lat::Stencil::Forward);
  const double e = mono::energy(snap.a, snap.phi, snap.delta,
                                snap.stencil);
  CHECK(e == rep.at("final_energy").get<double>());

  // manifest carries the resolved config and the seed
  const io::RunManifest m = io::read_manifest(out1 + "/manifest.json");
  CHECK(m.subcommand == "solve");
  CHECK(m.seed == 7);
  const mono::SolverConfig resolved = io::parse_solver_config(m.config);
  CHECK(resolved.n == 3);
  CHECK(resolved.delta == std::array<double, 3>{0.05, 0.0, 0.0});

  // rerun: byte-identical CSV body and identical report minus wall time
  const std::string out2 = tmp.file("run2");
  const CliResult r2 =
      run({"solve", "--config", tmp.file("cfg.json"), "--out", out2});
  CHECK(r2.code == 0);
  CHECK(slurp(out2 + "/trace.csv") == trace1);
  json repa = rep, repb = json::parse(slurp(out2 + "/report.json"));
  repa.erase("wall_seconds");
  repb.erase("wall_seconds");
  CHECK(repa == repb);

  // --seed overrides the config (different trace, manifest records it)
  const std::string out3 = tmp.file("run3");
  const CliResult r3 = run({"solve", "--config", tmp.file("cfg.json"),
                            "--out", out3, "--seed", "8"});
  CHECK(r3.code == 0);
  CHECK(io::read_manifest(out3 + "/manifest.json").seed == 8);
  CHECK(slurp(out3 + "/trace.csv") != trace1);
}

TEST_CASE("solve command distinguishes non-converged and diverged runs") {
  TempDir tmp;

  // zero iteration budget: reported non-converged, artifacts still written
  json cfg;
  cfg["n"] = 3;
  cfg["max_iterations"] = 0;
  cfg["seed"] = 7;
  cfg["init_amplitude"] = 0.05;
  cfg["delta"] = {0.05, 0.0, 0.0};
  spit(tmp.file("zero.json"), cfg.dump());
  const std::string out0 = tmp.file("zero");
  const CliResult r0 =
      run({"solve", "--config", tmp.file("zero.json"), "--out", out0});
  CHECK(r0.code == 1);
  const json rep0 = json::parse(slurp(out0 + "/report.json"));
  CHECK(rep0.at("converged") == false);
  CHECK(rep0.at("diverged") == false);
  CHECK(rep0.at("iterations").get<long>() == 0);
  const auto rows0 = io::read_trace_csv(out0 + "/trace.csv");
  REQUIRE(rows0.size() == 1);
  CHECK(rows0[0].iteration == 0);
  // the reported state is the seeded initial data
  const io::Snapshot s0 = io::read_snapshot(out0 + "/fields.snap");
  const auto [a0, phi0] =
      mono::seeded_initial_data(lat::TorusGrid(3, 1.0), 7, 0.05);
  CHECK(s0.a.v == a0.v);

  // an exhausted budget: non-converged exit as well
  cfg["max_iterations"] = 2;
  cfg["energy_tol"] = 1e-30;
  spit(tmp.file("tight.json"), cfg.dump());
  const CliResult r1 = run({"solve", "--config", tmp.file("tight.json"),
                            "--out", tmp.file("tight")});
  CHECK(r1.code == 1);
  CHECK(json::parse(slurp(tmp.file("tight") + "/report.json"))
            .at("converged") == false);

  // a huge fixed step diverges: exit 3 and a divergence report
  json dcfg;
  dcfg["n"] = 3;
  dcfg["backtracking"] = false;
  dcfg["step0"] = 1e6;
  dcfg["max_iterations"] = 100;
  dcfg["seed"] = 9;
  dcfg["init_amplitude"] = 0.2;
  spit(tmp.file("div.json"), dcfg.dump());
  const std::string outd = tmp.file("div");
  const CliResult rd =
      run({"solve", "--config", tmp.file("div.json"), "--out", outd});
  CHECK(rd.code == 3);
  const json repd = json::parse(slurp(outd + "/report.json"));
  CHECK(repd.at("diverged") == true);
  CHECK(repd.at("converged") == false);
  CHECK(repd.at("last_energy").is_number());
  // the snapshot holds the last finite iterate
  const io::Snapshot sd = io::read_snapshot(outd + "/fields.snap");
  bool finite = true;
  for (double x : sd.a.v) finite = finite && std::isfinite(x);
  CHECK(finite);

  // config errors: unknown key named, invalid value named, missing file
  spit(tmp.file("typo.json"), "{\"max_iteration\": 3}");
  const CliResult rbad = run({"solve", "--config", tmp.file("typo.json"),
                              "--out", tmp.file("bad")});
  CHECK(rbad.code == 2);
  CHECK(rbad.err.find("max_iteration") != std::string::npos);

  spit(tmp.file("range.json"), "{\"shrink\": 1.5}");
  const CliResult rrange = run({"solve", "--config", tmp.file("range.json"),
                                "--out", tmp.file("range")});
  CHECK(rrange.code == 2);
  CHECK(rrange.err.find("shrink") != std::string::npos);

  CHECK(run({"solve", "--config", tmp.file("missing.json"), "--out",
             tmp.file("x")})
            .code == 2);
  // --config and --out are required
  CHECK(run({"solve", "--out", tmp.file("y")}).code == 2);
  CHECK(run({"solve", "--config", tmp.file("zero.json")}).code == 2);
}

TEST_CASE("shipped default config solves to convergence") {
  TempDir tmp;
  const CliResult r = run({"solve", "--config",
                           data_path("configs/solve_default.json"), "--out",
                           tmp.file("run")});
  CHECK(r.code == 0);
  const json rep = json::parse(slurp(tmp.file("run") + "/report.json"));
  CHECK(rep.at("converged") == true);
  CHECK(rep.at("bound").at("pass") == true);
}

TEST_CASE("convergence studies emit the fixed CSV with fitted orders") {
  const CliResult wsym = run({"convergence", "weitzenbock", "--sizes", "8,16",
                              "--stencil", "symmetric"});
  CHECK(wsym.code == 0);
  std::istringstream in(wsym.out);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "n,residual,fitted_order");
  double r8 = 0, r16 = 0, order = 0;
  {
    REQUIRE(std::getline(in, line));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int n;
    row >> n >> r8 >> order;
    CHECK(n == 8);
  }
  {
    REQUIRE(std::getline(in, line));
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int n;
    double order2;
    row >> n >> r16 >> order2;
    CHECK(n == 16);
    CHECK(order2 == order);  // one global fit, repeated per row
  }
  CHECK(r16 < r8);
  CHECK(order >= 1.9);

  const CliResult wfwd = run({"convergence", "weitzenbock", "--sizes", "8,16",
                              "--stencil", "forward"});
  CHECK(wfwd.code == 0);

  const CliResult dsym = run({"convergence", "dirac-dbar", "--sizes", "8,16",
                              "--stencil", "symmetric"});
  CHECK(dsym.code == 0);
  const CliResult dfwd = run({"convergence", "dirac-dbar", "--sizes", "8,16",
                              "--stencil", "forward"});
  CHECK(dfwd.code == 0);

  // deterministic output
  CHECK(run({"convergence", "weitzenbock", "--sizes", "8,16", "--stencil",
             "symmetric"})
            .out == wsym.out);

  // --out writes the CSV and the manifest
  TempDir tmp;
  const CliResult saved =
      run({"convergence", "weitzenbock", "--sizes", "8,16", "--stencil",
           "symmetric", "--out", tmp.file("study")});
  CHECK(saved.code == 0);
  CHECK(slurp(tmp.file("study") + "/study.csv") == wsym.out);
  const io::RunManifest m =
      io::read_manifest(tmp.file("study") + "/manifest.json");
  CHECK(m.subcommand == "convergence");

  // usage errors: single size, duplicate sizes, bad study, tiny size
  CHECK(run({"convergence", "weitzenbock", "--sizes", "8"}).code == 2);
  CHECK(run({"convergence", "weitzenbock", "--sizes", "8,8"}).code == 2);
  CHECK(run({"convergence", "weitzenbock", "--sizes", "8,2"}).code == 2);
  CHECK(run({"convergence", "nosuchstudy", "--sizes", "8,16"}).code == 2);
  CHECK(run({"convergence", "weitzenbock"}).code == 2);
}

TEST_CASE("cli usage basics: help, version, unknown input") {
  CHECK(run({}).code == 2);
  CHECK(run({"nosuchcommand"}).code == 2);
  CHECK(run({"solve", "--nosuchflag"}).code == 2);

  const CliResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("solve") != std::string::npos);
  CHECK(help.out.find("cohomology") != std::string::npos);

  const CliResult version = run({"--version"});
  CHECK(version.code == 0);
  CHECK(version.out.find("0.1.0") != std::string::npos);
}
