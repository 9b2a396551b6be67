#pragma once

// The monopole system on the four-torus: residual of the two equations,
// quadratic energy, its exact gradient, gradient-descent solution with
// backtracking, the a-priori sup bound on |Phi|^2, and the dense deformation
// complex with numeric cohomology dimensions.
//
// Conventions carried over from the lattice layer:
//   - the curvature entering the second equation is the exact plaquette
//     two-form d a of the connection one-form;
//   - the quadratic spinor form enters through its three self-dual frame
//     coefficients  ((|b|^2-|a|^2)/8, -Re(a conj b)/4, -Im(a conj b)/4)
//     for Phi = (a, b), the closed form of the plus-isomorphism chain;
//   - energies and norms are the h^4-weighted inner products of torus_grid.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sw/defaults.hpp"
#include "sw/errors.hpp"
#include "sw/lattice_ops.hpp"
#include "sw/torus_grid.hpp"

namespace sw::mono {

using lat::OneForm;
using lat::ScalarField;
using lat::SelfDualForm;
using lat::SpinorMinus;
using lat::SpinorPlus;
using lat::Stencil;
using lat::TorusGrid;

// Thrown when an operation requires an (approximate) solution and the
// supplied fields are not one.
struct PreconditionError : std::domain_error {
  double residual_norm;
  double threshold;
  PreconditionError(const std::string& msg, double residual_norm_,
                    double threshold_)
      : std::domain_error(msg),
        residual_norm(residual_norm_),
        threshold(threshold_) {}
};

// Divergence during a solve; carries the last finite iterate.
struct SolverDivergence : DivergenceError {
  OneForm last_a;
  SpinorPlus last_phi;
  SolverDivergence(const std::string& msg, double last_energy_,
                   long iteration_, OneForm a, SpinorPlus phi)
      : DivergenceError(msg, last_energy_, iteration_),
        last_a(std::move(a)),
        last_phi(std::move(phi)) {}
};

// ------------------------------------------------------- quadratic form ---

// Self-dual frame coefficients of the quadratic spinor form, sitewise.
SelfDualForm sigma_self_dual(const SpinorPlus& phi);

// Coefficients of the skew-hermitian part of the polarized form
// sigma(phi, dir), sitewise; real-linear and symmetric in both arguments,
// and equal to sigma_self_dual when dir == phi.  The derivative of
// sigma_self_dual in direction dir is twice this.
SelfDualForm sigma_polarized(const SpinorPlus& phi, const SpinorPlus& dir);

// ------------------------------------------------------------- residual ---

struct Residual {
  SpinorMinus dirac;   // first equation: the Dirac operator applied to phi
  SelfDualForm curv;   // second equation: F+ - sigma(phi,phi) - delta
};

// delta must be a plain coefficient field on the same grid (self-duality is
// built into the container).  Grid mismatches raise std::domain_error.
Residual sw_residual(const OneForm& a, const SpinorPlus& phi,
                     const SelfDualForm& delta, Stencil st);

// ||r1||^2 + ||r2||^2 with the weighted norms; zero exactly at solutions.
double energy(const OneForm& a, const SpinorPlus& phi,
              const SelfDualForm& delta, Stencil st);

struct Gradient {
  OneForm a;
  SpinorPlus phi;
};

// Exact gradient of energy with respect to the real pairing
//   dE(da, dphi) = inner(g.a, da) + Re inner(dphi, g.phi).
Gradient energy_gradient(const OneForm& a, const SpinorPlus& phi,
                         const SelfDualForm& delta, Stencil st);

double gradient_norm2(const Gradient& g);

// Directional derivative of the residual (the exact linearization; the
// self-dual block carries the full polarization factor 2).
Residual linearized_residual(const OneForm& a, const SpinorPlus& phi,
                             Stencil st, const OneForm& da,
                             const SpinorPlus& dphi);

// -------------------------------------------------------------- solver ----

struct SolverConfig {
  int n = 6;
  double length = 1.0;
  Stencil stencil = Stencil::Forward;
  bool backtracking = true;   // false: fixed step0 every iteration
  double step0 = 0.25;
  double armijo = 1e-4;
  double shrink = 0.5;
  double growth = 2.0;
  long max_iterations = 20000;
  double energy_tol = 1e-10;
  double grad_tol = 1e-14;    // stall detector on the gradient norm
  std::uint64_t seed = 1;
  double init_amplitude = 0.05;
  std::array<double, 3> delta{0.0, 0.0, 0.0};  // constant self-dual coeffs

  void validate() const;  // ConfigError naming the offending key
};

struct TraceRow {
  long iteration;
  double energy;
  double dirac_residual;  // weighted norm of the Dirac block
  double curv_residual;   // weighted norm of the self-dual block
  double sup_phi_sq;
  double step_size;       // step that produced this row; 0 for the first
};

struct BoundVerdict {
  bool precondition_ok = false;  // residual was below the threshold
  bool pass = false;
  double sup_phi_sq = 0.0;
  double bound_line = 0.0;  // kBoundConstant * sup coefficient norm of delta
  double ratio = 0.0;       // sup_phi_sq / bound_line (0 when line is 0)
  double residual_norm = 0.0;
  double threshold = 0.0;
};

struct SolverReport {
  OneForm a;
  SpinorPlus phi;
  SelfDualForm delta;
  std::vector<TraceRow> trace;
  bool converged = false;
  long iterations = 0;
  double final_energy = 0.0;
  double dirac_residual = 0.0;
  double curv_residual = 0.0;
  double sup_phi_sq = 0.0;
  BoundVerdict bound;
  double wall_seconds = 0.0;
};

// The seeded uniform initial data the random-start overloads descend from:
// every component is amplitude * uniform(-1, 1), connection first.
std::pair<OneForm, SpinorPlus> seeded_initial_data(const TorusGrid& g,
                                                   std::uint64_t seed,
                                                   double amplitude);

// Gradient descent from seeded random initial data (or the given fields).
// Non-convergence within max_iterations is a report state; non-finite
// energy raises SolverDivergence with the last finite iterate.
SolverReport solve(const SolverConfig& cfg);
SolverReport solve(const SolverConfig& cfg, const SelfDualForm& delta);
SolverReport solve(const SolverConfig& cfg, const SelfDualForm& delta,
                   const OneForm& a0, const SpinorPlus& phi0);

// ---------------------------------------------------------- sup bound -----

// Verifies sup|Phi|^2 <= max(0, kBoundConstant * ||delta||_inf) with
// kBoundSlack of relative headroom.  Requires the fields to solve the
// equations up to residual_threshold (weighted residual norm), else
// PreconditionError.
BoundVerdict bound_check(const OneForm& a, const SpinorPlus& phi,
                         const SelfDualForm& delta, Stencil st,
                         double residual_threshold = 1e-3);

// ---------------------------------------------------- deformation complex -

// Dense matrices of the two-step complex at (a, phi):
//   L0: scalars -> one-forms + positive spinors,   h -> (-dh, 2pi i h phi)
//   L1: one-forms + positive spinors -> self-dual + negative spinors,
//       (b, psi) -> (d+ b - Im sigma(phi, psi),  exact Dirac linearization)
// Real coordinates: scalars are site-indexed; one-forms site-major with four
// components; spinors split into (Re c0, Im c0, Re c1, Im c1) per site;
// self-dual forms site-major with three components.  Spinor blocks follow
// the form blocks in both spaces.
struct DeformationReport {
  Eigen::MatrixXd l0;  // (8V) x V
  Eigen::MatrixXd l1;  // (7V) x (8V)
  long rank0 = 0;
  long rank1 = 0;
  long h0 = 0;  // V - rank0
  long h1 = 0;  // (8V - rank1) - rank0
  long h2 = 0;  // 7V - rank1
  double product_norm = 0.0;  // Frobenius norm of l1 * l0
};

// rank_cutoff is relative to the largest singular value; max_columns caps
// the dense domain dimension 8V (CapacityError beyond it).
DeformationReport deformation_complex(const OneForm& a, const SpinorPlus& phi,
                                      Stencil st,
                                      double rank_cutoff = defaults::kRankCutoff,
                                      long max_columns = 4096);

}  // namespace sw::mono
