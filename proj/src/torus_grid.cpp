#include "sw/torus_grid.hpp"

#include <cmath>
#include <numbers>

namespace sw::lat {

int TwoForm::pair_index(int mu, int nu) {
  static constexpr int table[4][4] = {{-1, 0, 1, 2},
                                      {-1, -1, 3, 4},
                                      {-1, -1, -1, 5},
                                      {-1, -1, -1, -1}};
  if (mu < 0 || nu > 3 || mu >= nu)
    throw std::domain_error("pair_index requires 0 <= mu < nu <= 3");
  return table[mu][nu];
}

cplx GaugeTransform::phase(long idx) const {
  const auto s = chi.grid.coords(idx);
  double expo = chi.v[idx];
  for (int mu = 0; mu < 4; ++mu)
    expo += double(winding[mu]) * s[mu] / chi.grid.n;
  return std::polar(1.0, 2.0 * std::numbers::pi * expo);
}

GaugeTransform compose(const GaugeTransform& g2, const GaugeTransform& g1) {
  require_same_grid(g1.chi.grid, g2.chi.grid);
  GaugeTransform g(g1.chi.grid);
  for (size_t i = 0; i < g.chi.v.size(); ++i)
    g.chi.v[i] = g1.chi.v[i] + g2.chi.v[i];
  for (int mu = 0; mu < 4; ++mu)
    g.winding[mu] = g1.winding[mu] + g2.winding[mu];
  return g;
}

namespace {
double weighted_dot(const TorusGrid& g, const std::vector<double>& a,
                    const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  const double h = g.spacing();
  return s * (h * h * h * h);
}
}  // namespace

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid);
  return weighted_dot(a.grid, a.v, b.v);
}

double inner(const OneForm& a, const OneForm& b) {
  require_same_grid(a.grid, b.grid);
  return weighted_dot(a.grid, a.v, b.v);
}

double inner(const TwoForm& a, const TwoForm& b) {
  require_same_grid(a.grid, b.grid);
  return weighted_dot(a.grid, a.v, b.v);
}

double inner(const SelfDualForm& a, const SelfDualForm& b) {
  require_same_grid(a.grid, b.grid);
  // embedded pointwise norm doubles: each frame element has two unit entries
  return 2.0 * weighted_dot(a.grid, a.v, b.v);
}

double norm2(const ScalarField& a) { return inner(a, a); }
double norm2(const OneForm& a) { return inner(a, a); }
double norm2(const TwoForm& a) { return inner(a, a); }
double norm2(const SelfDualForm& a) { return inner(a, a); }

double sup_coeff_norm(const SelfDualForm& a) {
  double m = 0.0;
  for (long i = 0; i < a.grid.volume(); ++i) {
    const double q = a.at(i, 0) * a.at(i, 0) + a.at(i, 1) * a.at(i, 1) +
                     a.at(i, 2) * a.at(i, 2);
    m = std::max(m, q);
  }
  return std::sqrt(m);
}

spin::Bivector bivector_at(const TwoForm& f, long idx) {
  std::array<double, 6> comps;
  for (int p = 0; p < 6; ++p) comps[p] = f.at(idx, p);
  return spin::bivector_from_components(comps);
}

SelfDualForm project_self_dual(const TwoForm& f) {
  SelfDualForm s(f.grid);
  for (long i = 0; i < f.grid.volume(); ++i) {
    // (f + *f)/2 expressed in the frame e01+e23, e02-e13, e03+e12
    s.at(i, 0) = 0.5 * (f.at(i, 0) + f.at(i, 5));
    s.at(i, 1) = 0.5 * (f.at(i, 1) - f.at(i, 4));
    s.at(i, 2) = 0.5 * (f.at(i, 2) + f.at(i, 3));
  }
  return s;
}

TwoForm embed(const SelfDualForm& s) {
  TwoForm f(s.grid);
  for (long i = 0; i < s.grid.volume(); ++i) {
    f.at(i, 0) = s.at(i, 0);
    f.at(i, 5) = s.at(i, 0);
    f.at(i, 1) = s.at(i, 1);
    f.at(i, 4) = -s.at(i, 1);
    f.at(i, 2) = s.at(i, 2);
    f.at(i, 3) = s.at(i, 2);
  }
  return f;
}

}  // namespace sw::lat
