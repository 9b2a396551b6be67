#pragma once

// Specialization to the flat complex torus C^2/Z^4: a fixed constant complex
// structure on the frame, the Kahler form, the (2,0) + R*omega + lambda^-
// splitting of two-forms, the component formulas of the quadratic spinor
// form in that splitting, the restriction of the Dirac operator to the
// trivial summand as a covariant dbar operator, and the sign-flip energy
// invariance check.
//
// Conventions (tied to the frozen frame tables in spin_algebra.hpp):
//   - The frame coordinates pair into complex coordinates z1 = x2 + i x1,
//     z2 = x4 + i x3; equivalently J tau1 = -tau2, J tau2 = tau1,
//     J tau3 = -tau4, J tau4 = tau3.
//   - The Kahler form (imaginary part of the Hermitian pairing) is the first
//     self-dual frame bivector omega1 = tau1^tau2 + tau3^tau4.
//   - The real (2,0) plane inside Lambda^+ is spanned by omega2 and omega3;
//     the holomorphic generator is Omega = omega2 + i*omega3 with squared
//     norm 4 in the bivector metric.

#include <complex>

#include <Eigen/Dense>

#include "sw/defaults.hpp"
#include "sw/lattice_ops.hpp"
#include "sw/spin_algebra.hpp"

namespace sw::kah {

using spin::Bivector;
using spin::cplx;

struct ComplexStructure {
  Eigen::Matrix4d j = Eigen::Matrix4d::Zero();  // frame action, j * j = -1
  Bivector omega;                               // Kahler form, self-dual
};

// The fixed structure described above (constructed once).
const ComplexStructure& complex_structure();

// Splitting of a bivector into (2,0)-plane, omega-line, and the rest:
//   input = two_zero * Omega + conj(two_zero) * conj(Omega)
//           + omega_coeff * omega + remainder
// with two_zero the Hermitian coefficient along Omega and remainder the
// anti-self-dual part (for real input this is exactly the omega-orthogonal
// (1,1) piece).
struct TwoFormSplit {
  cplx two_zero{0.0, 0.0};
  double omega_coeff = 0.0;
  Bivector remainder;
};
TwoFormSplit decompose_two_form(const Bivector& f);

// sigma((alpha,beta),(alpha,beta)) sent through the traceless-endomorphism
// identification onto Lambda^+ and decomposed. Matches the closed forms
//   two_zero    = defaults::kSigmaTwoZero * conj(alpha) * beta
//   omega_coeff = defaults::kSigmaOmega * (|beta|^2 - |alpha|^2) / 2.
struct SigmaComponents {
  cplx two_zero{0.0, 0.0};
  double omega_coeff = 0.0;
};
SigmaComponents sigma_components(cplx alpha, cplx beta);

// L2 norm of D_A (m, 0) - kDiracDbar * ((dbar_1 m)(1,0) + (dbar_2 m)(0,i))
// where dbar_1 = (grad_2 + i grad_1)/2 and dbar_2 = (grad_4 + i grad_3)/2
// are evaluated with a sixth-order centered covariant stencil
// (values 45,-9,1 over 60h, with up to three-hop link transport). The high
// reference order matters: it keeps the reference's own truncation error
// out of the measured decay window, so the returned norm isolates the Dirac
// stencil's truncation error and decays at that stencil's order.
double dirac_dbar_residual(const lat::OneForm& a, const lat::ComplexField& m,
                           lat::Stencil st);

// Energies of (alpha, beta) and (alpha, -beta) against the same connection
// and perturbation. Exact equality (to rounding) requires a flat connection,
// the symmetric stencil (skew-adjoint differences), and a perturbation with
// no (2,0) component; for curved connections the difference decays at the
// stencil order.
struct SignFlipVerdict {
  double energy_plus = 0.0;
  double energy_minus = 0.0;
  double difference = 0.0;
  bool pass = false;  // difference <= tol * (1 + energy_plus)
};
SignFlipVerdict sign_flip_energy_check(const lat::OneForm& a,
                                       const lat::SpinorPlus& phi,
                                       const lat::SelfDualForm& delta,
                                       lat::Stencil st, double tol = 1e-12);

}  // namespace sw::kah
