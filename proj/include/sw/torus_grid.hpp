#pragma once

// Periodic four-torus grid and the field containers living on it.  Sites are
// ordered lexicographically by (s0,s1,s2,s3); all reductions run in that
// fixed order so results are deterministic.  Axis count is fixed at 4.
//
// Conventions shared across the lattice layer:
//   - spacing h = length / n; physical coordinate of site s along axis mu is
//     h * s[mu].
//   - two-form components are stored for ordered pairs (mu < nu) indexed
//     0:(01) 1:(02) 2:(03) 3:(12) 4:(13) 5:(23) — the same pair order as the
//     wedge monomials and tau-frame tables in spin_algebra.
//   - self-dual two-forms store three coefficients (r1,r2,r3) per site in
//     the self-dual frame e01+e23, e02-e13, e03+e12; the embedded two-form
//     has squared pointwise norm 2*(r1^2+r2^2+r3^2).
//   - a gauge transform is a periodic phase exponent chi plus an integer
//     winding vector; the total multiplier at site s is
//     exp(2 pi i (chi(s) + sum_mu k_mu s_mu / n)).

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "sw/spin_algebra.hpp"

namespace sw::lat {

using cplx = std::complex<double>;

struct TorusGrid {
  int n = 0;
  double length = 1.0;

  TorusGrid() = default;
  TorusGrid(int n_, double length_) : n(n_), length(length_) {
    if (n < 3) throw std::domain_error("grid needs at least 3 sites per axis");
    if (!(length > 0)) throw std::domain_error("grid length must be positive");
  }

  double spacing() const { return length / n; }
  long volume() const { return long(n) * n * n * n; }

  long index(const std::array<int, 4>& s) const {
    long idx = 0;
    for (int a = 0; a < 4; ++a) idx = idx * n + s[a];
    return idx;
  }

  std::array<int, 4> coords(long idx) const {
    std::array<int, 4> s;
    for (int a = 3; a >= 0; --a) {
      s[a] = int(idx % n);
      idx /= n;
    }
    return s;
  }

  // neighbor index along axis mu, step +-1 (or any offset), periodic
  long shift(long idx, int mu, int step) const {
    std::array<int, 4> s = coords(idx);
    s[mu] = ((s[mu] + step) % n + n) % n;
    return index(s);
  }

  bool operator==(const TorusGrid& o) const = default;
};

inline void require_same_grid(const TorusGrid& a, const TorusGrid& b) {
  if (!(a == b)) throw std::domain_error("operands live on different grids");
}

// ------------------------------------------------------------ containers ---

struct ScalarField {
  TorusGrid grid;
  std::vector<double> v;

  ScalarField() = default;
  explicit ScalarField(const TorusGrid& g) : grid(g), v(g.volume(), 0.0) {}
};

struct ComplexField {
  TorusGrid grid;
  std::vector<cplx> v;

  ComplexField() = default;
  explicit ComplexField(const TorusGrid& g) : grid(g), v(g.volume()) {}
};

struct OneForm {
  TorusGrid grid;
  std::vector<double> v;  // 4 per site: v[4*idx + mu]

  OneForm() = default;
  explicit OneForm(const TorusGrid& g) : grid(g), v(4 * g.volume(), 0.0) {}

  double& at(long idx, int mu) { return v[4 * idx + mu]; }
  double at(long idx, int mu) const { return v[4 * idx + mu]; }
};

struct TwoForm {
  TorusGrid grid;
  std::vector<double> v;  // 6 per site: v[6*idx + pair]

  TwoForm() = default;
  explicit TwoForm(const TorusGrid& g) : grid(g), v(6 * g.volume(), 0.0) {}

  double& at(long idx, int pair) { return v[6 * idx + pair]; }
  double at(long idx, int pair) const { return v[6 * idx + pair]; }

  static int pair_index(int mu, int nu);  // requires mu < nu
};

struct SelfDualForm {
  TorusGrid grid;
  std::vector<double> v;  // 3 per site

  SelfDualForm() = default;
  explicit SelfDualForm(const TorusGrid& g) : grid(g), v(3 * g.volume(), 0.0) {}

  double& at(long idx, int j) { return v[3 * idx + j]; }
  double at(long idx, int j) const { return v[3 * idx + j]; }
};

template <spin::Chirality C>
struct SpinorField {
  TorusGrid grid;
  std::vector<Eigen::Vector2cd> v;

  SpinorField() = default;
  explicit SpinorField(const TorusGrid& g)
      : grid(g), v(g.volume(), Eigen::Vector2cd::Zero()) {}
};

using SpinorPlus = SpinorField<spin::Chirality::Plus>;
using SpinorMinus = SpinorField<spin::Chirality::Minus>;

struct GaugeTransform {
  ScalarField chi;                        // periodic exponent
  std::array<long long, 4> winding{0, 0, 0, 0};

  GaugeTransform() = default;
  explicit GaugeTransform(const TorusGrid& g) : chi(g) {}

  // exp(2 pi i (chi(s) + sum k_mu s_mu / n)), single-valued by integrality
  cplx phase(long idx) const;
};

// g2 after g1: exponents and windings add
GaugeTransform compose(const GaugeTransform& g2, const GaugeTransform& g1);

// ---------------------------------------------------------- inner products -
// All integrals are h^4-weighted site sums in lexicographic order.

double inner(const ScalarField& a, const ScalarField& b);
double inner(const OneForm& a, const OneForm& b);
double inner(const TwoForm& a, const TwoForm& b);   // ordered pairs, no double count
double inner(const SelfDualForm& a, const SelfDualForm& b);

template <spin::Chirality C>
cplx inner(const SpinorField<C>& a, const SpinorField<C>& b) {
  require_same_grid(a.grid, b.grid);
  cplx s = 0.0;
  for (size_t i = 0; i < a.v.size(); ++i) s += b.v[i].dot(a.v[i]);
  const double h = a.grid.spacing();
  return s * (h * h * h * h);
}

double norm2(const ScalarField& a);
double norm2(const OneForm& a);
double norm2(const TwoForm& a);
double norm2(const SelfDualForm& a);

template <spin::Chirality C>
double norm2(const SpinorField<C>& a) {
  return inner(a, a).real();
}

template <spin::Chirality C>
double sup_phi_sq(const SpinorField<C>& a) {
  double m = 0.0;
  for (const auto& x : a.v) m = std::max(m, x.squaredNorm());
  return m;
}

// sup over sites of the pointwise Euclidean length of the three self-dual
// coefficients (the operator-norm bound constant multiplies this)
double sup_coeff_norm(const SelfDualForm& a);

// ------------------------------------------------------------ conversions --

// six two-form components at one site as a complex wedge-square element
spin::Bivector bivector_at(const TwoForm& f, long idx);

// self-dual projection (f + *f)/2 in the stored self-dual frame
SelfDualForm project_self_dual(const TwoForm& f);
TwoForm embed(const SelfDualForm& s);

}  // namespace sw::lat
