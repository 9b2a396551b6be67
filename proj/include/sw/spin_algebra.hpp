#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

// Finite-dimensional spinor algebra on a pair of hermitian C^2 spaces W+ and
// W-. Everything is expressed in fixed ordered bases so results are
// reproducible bit-for-bit:
//
//   W+ basis (w+1, w+2), W- basis (w-1, w-2), hermitian forms h(x,y) = y^H x.
//   U = Hom(W+, W-); basis u1 = E11, u2 = E12, u3 = E21, u4 = E22 (matrix
//   units, u_k(w+j) = column j of the matrix).
//   End0(W) basis (E12, E21, H) with H = diag(1,-1).
//   Lambda^2 U monomial basis m1 = u1^u2, m2 = u1^u3, m3 = u1^u4,
//   m4 = u2^u3, m5 = u2^u4, m6 = u3^u4.
//
// The top-wedge identification phi maps w-1 ^ w-2 to w+1 ^ w+2 (scalar 1 by
// default). The induced volume functional on Lambda^4 U is normalized so the
// symmetric pairing has unit discriminant; the residual sign is fixed to
// psi(u1^u2^u3^u4) = -1, the choice for which the plus-isomorphism below
// identifies the +1 eigenspace of star with End0(W+).
//
// Real structure: the dagger fixed points are the quaternion-like matrices
// [[a, b], [-conj(b), conj(a)]]. The exported orthogonal frame is
//   tau1 = diag(i, -i), tau2 = I, tau3 = [[0,1],[-1,0]], tau4 = [[0,i],[i,0]]
// with (tau_i, tau_j) = 2 delta_ij. In this ordering the algebraic star
// restricted to real bivectors equals the Euclidean Hodge star on
// Lambda^2 R^4 with its standard orientation.

namespace sw::spin {

using cplx = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;
using Mat3 = Eigen::Matrix3cd;
using Mat4 = Eigen::Matrix4cd;
using Vec6 = Eigen::Matrix<cplx, 6, 1>;
using Mat6 = Eigen::Matrix<cplx, 6, 6>;

enum class Chirality { Plus, Minus };

enum class HomDirection { PlusToMinus, MinusToPlus };

// Spinor in W+ or W-.
struct Spinor {
  Vec2 v = Vec2::Zero();
  Chirality chi = Chirality::Plus;

  double norm() const { return v.norm(); }
};

// Element of Hom(W+,W-) (or the opposite direction), as a 2x2 matrix in the
// fixed bases.
struct HomElement {
  Mat2 m = Mat2::Zero();
  HomDirection dir = HomDirection::PlusToMinus;
};

// Traceless endomorphism of W+ or W-. Construction rejects visible trace.
struct EndTraceless {
  Mat2 m = Mat2::Zero();
  Chirality space = Chirality::Plus;

  EndTraceless() = default;
  EndTraceless(const Mat2& m_, Chirality space_);
};

// Element of Lambda^2 U in the monomial basis m1..m6.
struct Bivector {
  Vec6 c = Vec6::Zero();
};

// Top-wedge normalization record. phi is the scalar of the W- to W+ top
// wedge map; psi is the induced volume functional on Lambda^4 U, normalized
// against the pairing discriminant with the documented sign.
struct VolumeIso {
  cplx phi = 1.0;

  cplx psi() const { return -phi * phi; }
};

// ---- pairings and involutions -------------------------------------------

// Adjugate transform: the unique B(f) with phi(f(w+) ^ w-) = w+ ^ B(f)(w-).
Mat2 b_map(const Mat2& f);

// Trace form {f,g} = Tr(f g) on traceless endomorphisms of one space.
cplx trace_form(const EndTraceless& f, const EndTraceless& g);

// Symmetric pairing (f,g) = Tr_{W+} B(f) g on U.
cplx sym_pairing(const HomElement& f, const HomElement& g);

// Antilinear involution on U (hermitian adjoint of B(f)); fixed points form
// the real 4-dimensional space T on which the pairing is positive definite.
HomElement dagger(const HomElement& f);

// ---- group actions --------------------------------------------------------

// Conjugation action of an invertible g on traceless endomorphisms, as a
// 3x3 matrix in the (E12, E21, H) basis. Preserves gram_end0, det = 1.
Mat3 rho3(const Mat2& g);

// Action f -> h f g^{-1} on U for det g = det h, as a 4x4 matrix in u1..u4.
// Preserves gram_u, det = 1.
Mat4 rho4(const Mat2& g, const Mat2& h);

// Induced action of unit-determinant g on Lambda^2 U in the monomial basis.
// Preserves gram_wedge, det = 1.
Mat6 rho6(const Mat4& g);

// ---- bivector structure ---------------------------------------------------

// <a, b> = psi(a ^ b).
cplx wedge_pairing(const Bivector& a, const Bivector& b);

// Star operator defined by (a, b) = <a, star b>; involutive.
Bivector star(const Bivector& a);

// Projector onto the (sign)-eigenspace of star; sign is +1 or -1.
Bivector project_lambda(const Bivector& a, int sign);

// f ^ g -> B(f) g - B(g) f into End0(W+) for sign = +1,
// f ^ g -> f B(g) - g B(f) into End0(W-) for sign = -1.
// Isomorphism on the matching eigenspace, kills the opposite one.
EndTraceless iso_end0(const Bivector& a, int sign);

// Inverse of iso_end0(., +1) restricted to self-dual bivectors, defined on
// skew-hermitian traceless endomorphisms of W+ (where it lands in the real
// form). Rejects inputs with a visible hermitian part.
Bivector lambda_plus_from_skew(const EndTraceless& s);

// Quadratic spinor map sigma(Phi,Psi)(w) = i (h(w,Psi) Phi - 1/2 h(Phi,Psi) w),
// a traceless endomorphism of W+; skew-hermitian when Psi = Phi.
EndTraceless sigma(const Spinor& phi, const Spinor& psi);

// ---- exported tables -------------------------------------------------------

// u1..u4 matrix units.
const std::array<Mat2, 4>& basis_u();

// (E12, E21, H) traceless basis.
const std::array<Mat2, 3>& basis_end0();

// Orthogonal real frame tau1..tau4 of the dagger fixed space T;
// sym_pairing(tau_i, tau_j) = 2 delta_ij.
const std::array<Mat2, 4>& tau_frame();

// Gram matrices of the pairings in the fixed bases.
const Eigen::Matrix3cd& gram_end0();
const Eigen::Matrix4cd& gram_u();
const Mat6& gram_wedge();

// Matrix of star in the monomial basis.
const Mat6& star_matrix();

// Column k of this matrix holds the monomial coordinates of
// tau_mu ^ tau_nu, pairs ordered (12, 13, 14, 23, 24, 34).
const Mat6& tau_wedge_matrix();
const Mat6& tau_wedge_inverse();

// Self-dual real frame bivectors omega1 = t1^t2 + t3^t4 and cyclic
// companions (indices in the tau frame).
const std::array<Bivector, 3>& omega_basis();

// Real two-form components (pair order 12,13,14,23,24,34) to bivector and
// back. The inverse asserts the input lies in the real span.
Bivector bivector_from_components(const std::array<double, 6>& f);
std::array<double, 6> components_from_bivector(const Bivector& a);

}  // namespace sw::spin
