#include "sw/run_io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sw/errors.hpp"

namespace sw::io {

using json = nlohmann::json;

namespace {

std::string slurp_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) throw ConfigError("cannot write file: " + path);
  out << text;
  if (!out.good()) throw ConfigError("write failed: " + path);
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("malformed JSON in " + what);
  return j;
}

// ------------------------------------------------------ little endian -----

void put_u64(std::string& out, std::uint64_t u) {
  for (int k = 0; k < 8; ++k) out.push_back(char((u >> (8 * k)) & 0xFF));
}

void put_double(std::string& out, double d) {
  std::uint64_t u;
  std::memcpy(&u, &d, 8);
  put_u64(out, u);
}

std::uint64_t get_u64(const std::string& in, size_t off) {
  std::uint64_t u = 0;
  for (int k = 7; k >= 0; --k) u = (u << 8) | std::uint8_t(in[off + k]);
  return u;
}

double get_double(const std::string& in, size_t off) {
  const std::uint64_t u = get_u64(in, off);
  double d;
  std::memcpy(&d, &u, 8);
  return d;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// -------------------------------------------------------------- manifest --

void write_manifest(const RunManifest& m, const std::string& path) {
  json j;
  j["subcommand"] = m.subcommand;
  j["config"] = m.config.empty() ? json::object() : parse_json(m.config,
                                                               "manifest config");
  j["inputs"] = m.inputs;
  j["out_dir"] = m.out_dir;
  j["seed"] = m.seed;
  j["tool_version"] = m.tool_version;
  j["timestamp"] = m.timestamp;
  spit_file(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::string& path) {
  const json j = parse_json(slurp_file(path), path);
  RunManifest m;
  try {
    m.subcommand = j.at("subcommand").get<std::string>();
    m.config = j.at("config").dump();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.out_dir = j.at("out_dir").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.timestamp = j.at("timestamp").get<std::string>();
  } catch (const json::exception& e) {
    throw ConfigError("manifest " + path + ": " + e.what());
  }
  return m;
}

// ---------------------------------------------------------- solver config --

mono::SolverConfig parse_solver_config(const std::string& json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  mono::SolverConfig cfg;
  auto take = [&j](const char* key, auto& field) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    try {
      field = it->get<std::remove_reference_t<decltype(field)>>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config key \"") + key +
                        "\" has the wrong type");
    }
    j.erase(it);
  };

  take("n", cfg.n);
  take("length", cfg.length);
  take("backtracking", cfg.backtracking);
  take("step0", cfg.step0);
  take("armijo", cfg.armijo);
  take("shrink", cfg.shrink);
  take("growth", cfg.growth);
  take("max_iterations", cfg.max_iterations);
  take("energy_tol", cfg.energy_tol);
  take("grad_tol", cfg.grad_tol);
  take("seed", cfg.seed);
  take("init_amplitude", cfg.init_amplitude);

  if (auto it = j.find("stencil"); it != j.end()) {
    if (!it->is_string())
      throw ConfigError("config key \"stencil\" has the wrong type");
    cfg.stencil = lat::parse_stencil(it->get<std::string>());
    j.erase(it);
  }
  if (auto it = j.find("delta"); it != j.end()) {
    if (!it->is_array() || it->size() != 3)
      throw ConfigError(
          "config key \"delta\" must be an array of 3 numbers");
    try {
      for (int k = 0; k < 3; ++k) cfg.delta[k] = (*it)[k].get<double>();
    } catch (const json::exception&) {
      throw ConfigError("config key \"delta\" must be an array of 3 numbers");
    }
    j.erase(it);
  }

  if (!j.empty())
    throw ConfigError("unknown config key \"" + j.begin().key() + "\"");
  return cfg;
}

mono::SolverConfig load_solver_config(const std::string& path) {
  try {
    return parse_solver_config(slurp_file(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string solver_config_json(const mono::SolverConfig& cfg) {
  json j;
  j["n"] = cfg.n;
  j["length"] = cfg.length;
  j["stencil"] = lat::stencil_name(cfg.stencil);
  j["backtracking"] = cfg.backtracking;
  j["step0"] = cfg.step0;
  j["armijo"] = cfg.armijo;
  j["shrink"] = cfg.shrink;
  j["growth"] = cfg.growth;
  j["max_iterations"] = cfg.max_iterations;
  j["energy_tol"] = cfg.energy_tol;
  j["grad_tol"] = cfg.grad_tol;
  j["seed"] = cfg.seed;
  j["init_amplitude"] = cfg.init_amplitude;
  j["delta"] = cfg.delta;
  return j.dump();
}

// ------------------------------------------------------------- trace csv --

std::string trace_csv(const std::vector<mono::TraceRow>& trace) {
  std::string out =
      "iteration,energy,dirac_residual,curv_residual,sup_phi_sq,step_size\n";
  for (const auto& r : trace) {
    out += std::to_string(r.iteration);
    out += ',';
    out += format_double(r.energy);
    out += ',';
    out += format_double(r.dirac_residual);
    out += ',';
    out += format_double(r.curv_residual);
    out += ',';
    out += format_double(r.sup_phi_sq);
    out += ',';
    out += format_double(r.step_size);
    out += '\n';
  }
  return out;
}

void write_trace_csv(const std::vector<mono::TraceRow>& trace,
                     const std::string& path) {
  spit_file(path, trace_csv(trace));
}

std::vector<mono::TraceRow> read_trace_csv(const std::string& path) {
  const std::string text = slurp_file(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) ||
      line !=
          "iteration,energy,dirac_residual,curv_residual,sup_phi_sq,step_size")
    throw ParseError("trace CSV header mismatch in " + path, 1, 1);

  std::vector<mono::TraceRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    std::istringstream row(line);
    mono::TraceRow r{};
    if (!(row >> r.iteration >> r.energy >> r.dirac_residual >>
          r.curv_residual >> r.sup_phi_sq >> r.step_size))
      throw ParseError("bad trace CSV row in " + path, lineno, 1);
    rows.push_back(r);
  }
  return rows;
}

// ---------------------------------------------------------------- report --

std::string report_json(const mono::SolverReport& r,
                        const std::string& snapshot_ref) {
  json j;
  j["converged"] = r.converged;
  j["diverged"] = false;
  j["iterations"] = r.iterations;
  j["final_energy"] = r.final_energy;
  j["dirac_residual"] = r.dirac_residual;
  j["curv_residual"] = r.curv_residual;
  j["sup_phi_sq"] = r.sup_phi_sq;
  j["bound"] = {{"precondition_ok", r.bound.precondition_ok},
                {"pass", r.bound.pass},
                {"sup_phi_sq", r.bound.sup_phi_sq},
                {"bound_line", r.bound.bound_line},
                {"ratio", r.bound.ratio},
                {"residual_norm", r.bound.residual_norm},
                {"threshold", r.bound.threshold}};
  j["trace_rows"] = r.trace.size();
  j["wall_seconds"] = r.wall_seconds;
  j["snapshot"] = snapshot_ref;
  j["tool_version"] = defaults::kToolVersion;
  return j.dump(2) + "\n";
}

void write_report(const mono::SolverReport& r, const std::string& snapshot_ref,
                  const std::string& path) {
  spit_file(path, report_json(r, snapshot_ref));
}

// -------------------------------------------------------------- snapshot --

void write_snapshot(const Snapshot& s, const std::string& path) {
  const long vol = s.grid.volume();
  json header;
  header["n"] = s.grid.n;
  header["length"] = s.grid.length;
  header["stencil"] = lat::stencil_name(s.stencil);
  header["kappa"] = s.kappa;
  header["fields"] = json::array({{{"name", "a"}, {"components", 4}},
                                  {{"name", "phi"}, {"components", 4}},
                                  {{"name", "delta"}, {"components", 3}}});
  const std::string htext = header.dump();

  std::string out;
  out.reserve(16 + htext.size() + size_t(8) * vol * 11);
  out += "SWFLD001";
  put_u64(out, htext.size());
  out += htext;

  for (long i = 0; i < vol; ++i)
    for (int mu = 0; mu < 4; ++mu) put_double(out, s.a.v[4 * i + mu]);
  for (long i = 0; i < vol; ++i) {
    put_double(out, s.phi.v[i](0).real());
    put_double(out, s.phi.v[i](0).imag());
    put_double(out, s.phi.v[i](1).real());
    put_double(out, s.phi.v[i](1).imag());
  }
  for (long i = 0; i < vol; ++i)
    for (int k = 0; k < 3; ++k) put_double(out, s.delta.v[3 * i + k]);

  spit_file(path, out);
}

Snapshot read_snapshot(const std::string& path) {
  const std::string in = slurp_file(path);
  if (in.size() < 16 || in.compare(0, 8, "SWFLD001") != 0)
    throw ParseError("not a field snapshot (bad magic): " + path, 1, 1);
  const std::uint64_t hlen = get_u64(in, 8);
  if (16 + hlen > in.size())
    throw ParseError("snapshot header truncated: " + path, 1, 1);
  const json header = json::parse(in.substr(16, hlen), nullptr, false);
  if (header.is_discarded())
    throw ParseError("snapshot header is not valid JSON: " + path, 1, 1);

  Snapshot s;
  try {
    s.grid = lat::TorusGrid(header.at("n").get<int>(),
                            header.at("length").get<double>());
    s.stencil = lat::parse_stencil(header.at("stencil").get<std::string>());
    s.kappa = header.at("kappa").get<double>();
    const auto& fields = header.at("fields");
    if (fields.size() != 3 || fields[0].at("name") != "a" ||
        fields[0].at("components") != 4 || fields[1].at("name") != "phi" ||
        fields[1].at("components") != 4 || fields[2].at("name") != "delta" ||
        fields[2].at("components") != 3)
      throw ParseError("unexpected snapshot field table: " + path, 1, 1);
  } catch (const json::exception& e) {
    throw ParseError(std::string("snapshot header: ") + e.what(), 1, 1);
  }

  const long vol = s.grid.volume();
  if (in.size() != 16 + hlen + size_t(8) * vol * 11)
    throw ParseError("snapshot payload truncated: " + path, 1, 1);

  s.a = lat::OneForm(s.grid);
  s.phi = lat::SpinorPlus(s.grid);
  s.delta = lat::SelfDualForm(s.grid);
  size_t off = 16 + hlen;
  for (long i = 0; i < vol; ++i)
    for (int mu = 0; mu < 4; ++mu, off += 8)
      s.a.v[4 * i + mu] = get_double(in, off);
  for (long i = 0; i < vol; ++i) {
    const double ra = get_double(in, off);
    const double ia = get_double(in, off + 8);
    const double rb = get_double(in, off + 16);
    const double ib = get_double(in, off + 24);
    s.phi.v[i] = Eigen::Vector2cd(lat::cplx(ra, ia), lat::cplx(rb, ib));
    off += 32;
  }
  for (long i = 0; i < vol; ++i)
    for (int k = 0; k < 3; ++k, off += 8)
      s.delta.v[3 * i + k] = get_double(in, off);
  return s;
}

}  // namespace sw::io
