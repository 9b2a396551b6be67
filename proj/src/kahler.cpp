#include "sw/kahler.hpp"

#include <array>
#include <cmath>

#include "sw/monopole.hpp"

namespace sw::kah {

namespace {

// Transport m(x + step*mu) back to x through the product of the links in
// between (step may be negative; |step| <= 3 here).  A forward hop across
// the link at y multiplies by link(a, y, mu); a backward hop across the
// link at y - mu multiplies by its conjugate.
cplx hop(const lat::OneForm& a, const lat::ComplexField& m, long idx, int mu,
         int step) {
  cplx u(1.0, 0.0);
  long y = idx;
  if (step > 0) {
    for (int k = 0; k < step; ++k) {
      u *= lat::link(a, y, mu);
      y = m.grid.shift(y, mu, 1);
    }
  } else {
    for (int k = 0; k < -step; ++k) {
      y = m.grid.shift(y, mu, -1);
      u *= std::conj(lat::link(a, y, mu));
    }
  }
  return u * m.v[y];
}

// Sixth-order centered covariant derivative along axis mu:
//   (45 (T_{+1} - T_{-1}) - 9 (T_{+2} - T_{-2}) + (T_{+3} - T_{-3})) / (60 h).
cplx cov6(const lat::OneForm& a, const lat::ComplexField& m, long idx,
          int mu) {
  const double h = m.grid.spacing();
  const cplx d1 = hop(a, m, idx, mu, 1) - hop(a, m, idx, mu, -1);
  const cplx d2 = hop(a, m, idx, mu, 2) - hop(a, m, idx, mu, -2);
  const cplx d3 = hop(a, m, idx, mu, 3) - hop(a, m, idx, mu, -3);
  return (45.0 * d1 - 9.0 * d2 + d3) / (60.0 * h);
}

}  // namespace

const ComplexStructure& complex_structure() {
  static const ComplexStructure cs = [] {
    ComplexStructure c;
    // columns are the images of the frame vectors: the first pair and the
    // second pair each rotate by ninety degrees
    c.j(1, 0) = -1.0;
    c.j(0, 1) = 1.0;
    c.j(3, 2) = -1.0;
    c.j(2, 3) = 1.0;
    c.omega = spin::omega_basis()[0];
    return c;
  }();
  return cs;
}

TwoFormSplit decompose_two_form(const Bivector& f) {
  const auto& ob = spin::omega_basis();
  // work in the real two-form components, where each frame bivector is an
  // exact 0/+-1 vector of squared norm 2: the coefficient along omega_k is
  // <f, omega_k> / 2
  const std::array<double, 6> fc = spin::components_from_bivector(f);
  std::array<double, 3> s{};
  for (int k = 0; k < 3; ++k) {
    const std::array<double, 6> oc = spin::components_from_bivector(ob[k]);
    double dot = 0.0;
    for (int i = 0; i < 6; ++i) dot += fc[i] * oc[i];
    s[k] = dot / 2.0;
  }

  TwoFormSplit out;
  out.omega_coeff = s[0];
  // Omega = omega2 + i omega3 with |Omega|^2 = 4; the Hermitian coefficient
  // of a real form along Omega is (s2 - i s3)/2
  out.two_zero = cplx(s[1] / 2.0, -s[2] / 2.0);
  out.remainder.c = f.c - s[0] * ob[0].c - s[1] * ob[1].c - s[2] * ob[2].c;
  return out;
}

SigmaComponents sigma_components(cplx alpha, cplx beta) {
  spin::Spinor phi;
  phi.v << alpha, beta;
  const spin::EndTraceless s = spin::sigma(phi, phi);
  const Bivector b = spin::lambda_plus_from_skew(s);
  const TwoFormSplit split = decompose_two_form(b);
  SigmaComponents out;
  out.two_zero = split.two_zero;
  out.omega_coeff = split.omega_coeff;
  return out;
}

double dirac_dbar_residual(const lat::OneForm& a, const lat::ComplexField& m,
                           lat::Stencil st) {
  const lat::TorusGrid& g = m.grid;
  lat::SpinorPlus phi(g);
  for (long i = 0; i < g.volume(); ++i) phi.v[i](0) = m.v[i];
  const lat::SpinorMinus d = lat::dirac_plus(a, phi, st);

  lat::SpinorMinus diff = d;
  const cplx iu(0.0, 1.0);
  for (long i = 0; i < g.volume(); ++i) {
    const cplx dbar1 =
        0.5 * (cov6(a, m, i, 1) + iu * cov6(a, m, i, 0));
    const cplx dbar2 =
        0.5 * (cov6(a, m, i, 3) + iu * cov6(a, m, i, 2));
    diff.v[i](0) -= defaults::kDiracDbar * dbar1;
    diff.v[i](1) -= defaults::kDiracDbar * iu * dbar2;
  }
  return std::sqrt(lat::norm2(diff));
}

SignFlipVerdict sign_flip_energy_check(const lat::OneForm& a,
                                       const lat::SpinorPlus& phi,
                                       const lat::SelfDualForm& delta,
                                       lat::Stencil st, double tol) {
  lat::SpinorPlus flipped = phi;
  for (auto& v : flipped.v) v(1) = -v(1);

  SignFlipVerdict out;
  out.energy_plus = mono::energy(a, phi, delta, st);
  out.energy_minus = mono::energy(a, flipped, delta, st);
  out.difference = std::abs(out.energy_plus - out.energy_minus);
  out.pass = out.difference <= tol * (1.0 + out.energy_plus);
  return out;
}

}  // namespace sw::kah
