#pragma once

// Discrete calculus and gauge-covariant operators on the periodic grid.
//
// Differences: d uses forward differences, d_adjoint the matching exact
// adjoints (summation by parts is an identity here, not an approximation).
// Spinor transport multiplies by link phases U_mu(x) = exp(2 pi i h A_mu(x)),
// so every gauge statement below holds to rounding, including winding.
//
// Dirac stencils:
//   Forward   — one-sided covariant differences; exact adjoint pairs with
//               the backward stencil; O(h) accurate; no doublers.
//   Symmetric — centered covariant differences; skew-adjoint, O(h^2),
//               admits doublers (kernel statements avoid it).
// dirac_minus is defined as minus the exact adjoint of dirac_plus, so the
// pairing identity <D+ phi, psi> = -<phi, D- psi> is structural.

#include <string>
#include <utility>

#include "sw/defaults.hpp"
#include "sw/torus_grid.hpp"

namespace sw::lat {

enum class Stencil { Forward, Symmetric };

Stencil parse_stencil(const std::string& name);  // ConfigError on junk
const char* stencil_name(Stencil s);

// link phase for the hop from site idx in direction +mu
cplx link(const OneForm& a, long idx, int mu);

// ------------------------------------------------------- plain calculus ----

OneForm d(const ScalarField& f);
TwoForm d(const OneForm& a);
ScalarField d_adjoint(const OneForm& a);
OneForm d_adjoint(const TwoForm& f);
SelfDualForm d_plus(const OneForm& a);  // self-dual part of d a

TwoForm curvature(const OneForm& a);    // F = d a, exactly

// curvature sampled at the site with the difference scheme matched to the
// Dirac stencil: Forward reuses d a, Symmetric uses centered differences
// (second-order at the site) so the identity below converges at the
// stencil's own order
TwoForm curvature_matched(const OneForm& a, Stencil st);

// ------------------------------------------------- covariant operators -----

// forward covariant derivative in each of the four directions
std::array<SpinorPlus, 4> covariant_derivative(const OneForm& a,
                                               const SpinorPlus& phi);

SpinorMinus dirac_plus(const OneForm& a, const SpinorPlus& phi, Stencil st);
SpinorPlus dirac_minus(const OneForm& a, const SpinorMinus& psi, Stencil st);

// sum over directions of (covariant derivative)* (covariant derivative),
// built from the stencil named — positive semidefinite by construction
SpinorPlus laplacian(const OneForm& a, const SpinorPlus& phi,
                     Stencil st = Stencil::Forward);

// traceless curvature action at one site: the self-dual part of F carried
// through the wedge-to-endomorphism identification
spin::Mat2 curvature_action(const TwoForm& f, long idx);

// r = D*D phi - lap phi + kappa 2 pi i Q(F) phi ; vanishes with h -> 0 on
// smooth data at the stencil order (it is a convergence diagnostic, not a
// discrete identity)
struct WeitzenbockResult {
  SpinorPlus residual;
  double norm;  // L2 norm of the residual field
};
WeitzenbockResult weitzenbock_residual(const OneForm& a, const SpinorPlus& phi,
                                       Stencil st,
                                       double kappa = defaults::kKappa);

// least-squares coefficient matching D*D - lap against -2 pi i Q(F) on the
// given configuration (the calibration that froze defaults::kKappa)
double calibrate_kappa(const OneForm& a, const SpinorPlus& phi, Stencil st);

// ------------------------------------------------------------- gauge -------

OneForm gauge_act(const GaugeTransform& g, const OneForm& a);
std::pair<OneForm, SpinorPlus> gauge_act(const GaugeTransform& g,
                                         const OneForm& a,
                                         const SpinorPlus& phi);
template <spin::Chirality C>
SpinorField<C> gauge_act_spinor(const GaugeTransform& g,
                                const SpinorField<C>& phi) {
  require_same_grid(g.chi.grid, phi.grid);
  SpinorField<C> out(phi.grid);
  for (long i = 0; i < phi.grid.volume(); ++i)
    out.v[i] = g.phase(i) * phi.v[i];
  return out;
}

// line integral h * sum of A_mu around the full periodic loop through base
double holonomy(const OneForm& a, int mu, const std::array<int, 4>& base);

// ----------------------------------------------------------- gauge fixing --

struct CoulombResult {
  GaugeTransform g;                     // apply to the input to get the output
  OneForm a;                            // divergence-free + reduced harmonic
  std::array<double, 4> harmonic{};     // axis means of a times length, in [0,1)
  int iterations = 0;
  double residual = 0.0;                // final |d* a|
};

// solves the 0-form Poisson problem (d* d) chi = d* A by conjugate
// gradients on the mean-zero subspace, then subtracts integer windings so
// the harmonic coefficients land in [0,1)
CoulombResult coulomb_gauge(const OneForm& a, double tol = 1e-13,
                            int max_iter = 10000);

}  // namespace sw::lat
