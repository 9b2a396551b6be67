#pragma once

// Serialization for runs: JSON manifests, solver configs and reports, CSV
// energy traces, and a self-describing binary field snapshot.
//
// Determinism contract: every floating-point number in CSV bodies is
// printed with "%.17g" (shortest exact round trip is not needed; 17
// significant digits reproduce the double bit-for-bit on read-back), and
// JSON objects serialize with sorted keys, so rerunning a command from its
// manifest reproduces byte-identical CSV bodies and config/report texts.
// Timestamps live only in the manifest.
//
// Snapshot layout (documented so runs are reproducible across
// implementations):
//   bytes 0..7   magic "SWFLD001"
//   bytes 8..15  little-endian uint64: byte length H of the JSON header
//   H bytes      JSON header with keys n (sites per axis), length (torus
//                edge), stencil ("forward" | "symmetric"), kappa, and
//                fields: a list of {name, components} in file order
//   payload      for each listed field, volume * components doubles in
//                little-endian byte order, lexicographic site order
//                (site index = ((x0*n + x1)*n + x2)*n + x3):
//                  a      4 per site: the four real connection components
//                  phi    4 per site: re alpha, im alpha, re beta, im beta
//                  delta  3 per site: the three self-dual coefficients

#include <cstdint>
#include <string>
#include <vector>

#include "sw/monopole.hpp"

namespace sw::io {

// Provenance record written into every output directory.
struct RunManifest {
  std::string subcommand;
  std::string config;  // resolved configuration as a JSON object (text)
  std::vector<std::string> inputs;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string tool_version;
  std::string timestamp;  // informational; excluded from determinism
};

void write_manifest(const RunManifest& m, const std::string& path);
RunManifest read_manifest(const std::string& path);

// Solver config file: a JSON object whose keys exactly match the
// SolverConfig field names (n, length, stencil, backtracking, step0,
// armijo, shrink, growth, max_iterations, energy_tol, grad_tol, seed,
// init_amplitude, delta). Every key is optional (defaults apply); unknown
// keys raise ConfigError naming the key; type mismatches raise ConfigError
// naming the key. Does NOT run SolverConfig::validate (callers decide when
// range validation applies).
mono::SolverConfig parse_solver_config(const std::string& json_text);
mono::SolverConfig load_solver_config(const std::string& path);

// The resolved config as canonical JSON text (sorted keys, all fields).
std::string solver_config_json(const mono::SolverConfig& cfg);

// CSV energy trace: header
//   iteration,energy,dirac_residual,curv_residual,sup_phi_sq,step_size
// then one row per accepted iterate, numbers in %.17g.
std::string trace_csv(const std::vector<mono::TraceRow>& trace);
void write_trace_csv(const std::vector<mono::TraceRow>& trace,
                     const std::string& path);
std::vector<mono::TraceRow> read_trace_csv(const std::string& path);

// Run outcome as a JSON object: convergence state, iteration count, final
// norms, bound verdict, wall time, and the snapshot file reference.
std::string report_json(const mono::SolverReport& r,
                        const std::string& snapshot_ref);
void write_report(const mono::SolverReport& r, const std::string& snapshot_ref,
                  const std::string& path);

// Field snapshot (binary, layout above).
struct Snapshot {
  lat::TorusGrid grid;
  lat::Stencil stencil = lat::Stencil::Forward;
  double kappa = 0.0;
  lat::OneForm a;
  lat::SpinorPlus phi;
  lat::SelfDualForm delta;
};

void write_snapshot(const Snapshot& s, const std::string& path);
Snapshot read_snapshot(const std::string& path);

// Shortest representation that reparses to the same double (%.17g).
std::string format_double(double x);

}  // namespace sw::io
