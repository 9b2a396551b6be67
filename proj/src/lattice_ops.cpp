#include "sw/lattice_ops.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sw/errors.hpp"

namespace sw::lat {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Stencil parse_stencil(const std::string& name) {
  if (name == "forward") return Stencil::Forward;
  if (name == "symmetric") return Stencil::Symmetric;
  throw ConfigError("unknown stencil '" + name +
                    "' (expected forward or symmetric)");
}

const char* stencil_name(Stencil s) {
  return s == Stencil::Forward ? "forward" : "symmetric";
}

cplx link(const OneForm& a, long idx, int mu) {
  return std::polar(1.0, kTwoPi * a.grid.spacing() * a.at(idx, mu));
}

// ------------------------------------------------------- plain calculus ----

OneForm d(const ScalarField& f) {
  const TorusGrid& g = f.grid;
  const double h = g.spacing();
  OneForm out(g);
  for (long i = 0; i < g.volume(); ++i)
    for (int mu = 0; mu < 4; ++mu)
      out.at(i, mu) = (f.v[g.shift(i, mu, +1)] - f.v[i]) / h;
  return out;
}

TwoForm d(const OneForm& a) {
  const TorusGrid& g = a.grid;
  const double h = g.spacing();
  TwoForm out(g);
  for (long i = 0; i < g.volume(); ++i) {
    for (int mu = 0; mu < 4; ++mu) {
      const long imu = g.shift(i, mu, +1);
      for (int nu = mu + 1; nu < 4; ++nu) {
        const long inu = g.shift(i, nu, +1);
        const double dmu_anu = (a.at(imu, nu) - a.at(i, nu)) / h;
        const double dnu_amu = (a.at(inu, mu) - a.at(i, mu)) / h;
        out.at(i, TwoForm::pair_index(mu, nu)) = dmu_anu - dnu_amu;
      }
    }
  }
  return out;
}

ScalarField d_adjoint(const OneForm& a) {
  const TorusGrid& g = a.grid;
  const double h = g.spacing();
  ScalarField out(g);
  for (long i = 0; i < g.volume(); ++i) {
    double s = 0.0;
    for (int mu = 0; mu < 4; ++mu)
      s -= (a.at(i, mu) - a.at(g.shift(i, mu, -1), mu)) / h;
    out.v[i] = s;
  }
  return out;
}

OneForm d_adjoint(const TwoForm& f) {
  const TorusGrid& g = f.grid;
  const double h = g.spacing();
  OneForm out(g);
  for (long i = 0; i < g.volume(); ++i) {
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu + 1; nu < 4; ++nu) {
        const int p = TwoForm::pair_index(mu, nu);
        const double back_mu =
            (f.at(i, p) - f.at(g.shift(i, mu, -1), p)) / h;
        const double back_nu =
            (f.at(i, p) - f.at(g.shift(i, nu, -1), p)) / h;
        out.at(i, nu) -= back_mu;
        out.at(i, mu) += back_nu;
      }
    }
  }
  return out;
}

SelfDualForm d_plus(const OneForm& a) { return project_self_dual(d(a)); }

TwoForm curvature(const OneForm& a) { return d(a); }

TwoForm curvature_matched(const OneForm& a, Stencil st) {
  if (st == Stencil::Forward) return d(a);
  // the commutator of centered covariant differences sees the average of the
  // four plaquettes cornered at the site, so that is the matching curvature
  const TorusGrid& g = a.grid;
  const TwoForm f = d(a);
  TwoForm out(g);
  for (long i = 0; i < g.volume(); ++i) {
    for (int mu = 0; mu < 4; ++mu) {
      const long bmu = g.shift(i, mu, -1);
      for (int nu = mu + 1; nu < 4; ++nu) {
        const long bnu = g.shift(i, nu, -1);
        const long bmunu = g.shift(bmu, nu, -1);
        const int p = TwoForm::pair_index(mu, nu);
        out.at(i, p) =
            0.25 * (f.at(i, p) + f.at(bmu, p) + f.at(bnu, p) + f.at(bmunu, p));
      }
    }
  }
  return out;
}

// ------------------------------------------------- covariant operators -----

std::array<SpinorPlus, 4> covariant_derivative(const OneForm& a,
                                               const SpinorPlus& phi) {
  require_same_grid(a.grid, phi.grid);
  const TorusGrid& g = a.grid;
  const double h = g.spacing();
  std::array<SpinorPlus, 4> out{SpinorPlus(g), SpinorPlus(g), SpinorPlus(g),
                                SpinorPlus(g)};
  for (long i = 0; i < g.volume(); ++i)
    for (int mu = 0; mu < 4; ++mu)
      out[mu].v[i] =
          (link(a, i, mu) * phi.v[g.shift(i, mu, +1)] - phi.v[i]) / h;
  return out;
}

namespace {

// shared covariant stencils for either chirality
template <spin::Chirality C>
Eigen::Vector2cd cov_forward(const OneForm& a, const SpinorField<C>& f,
                             long i, int mu) {
  const double h = a.grid.spacing();
  return (link(a, i, mu) * f.v[a.grid.shift(i, mu, +1)] - f.v[i]) / h;
}

template <spin::Chirality C>
Eigen::Vector2cd cov_backward(const OneForm& a, const SpinorField<C>& f,
                              long i, int mu) {
  const double h = a.grid.spacing();
  const long back = a.grid.shift(i, mu, -1);
  return (f.v[i] - std::conj(link(a, back, mu)) * f.v[back]) / h;
}

template <spin::Chirality C>
Eigen::Vector2cd cov_centered(const OneForm& a, const SpinorField<C>& f,
                              long i, int mu) {
  const double h = a.grid.spacing();
  const long fwd = a.grid.shift(i, mu, +1);
  const long back = a.grid.shift(i, mu, -1);
  return (link(a, i, mu) * f.v[fwd] -
          std::conj(link(a, back, mu)) * f.v[back]) /
         (2.0 * h);
}

}  // namespace

SpinorMinus dirac_plus(const OneForm& a, const SpinorPlus& phi, Stencil st) {
  require_same_grid(a.grid, phi.grid);
  const TorusGrid& g = a.grid;
  SpinorMinus out(g);
  const auto& tau = spin::tau_frame();
  for (long i = 0; i < g.volume(); ++i) {
    Eigen::Vector2cd s = Eigen::Vector2cd::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      const Eigen::Vector2cd grad = (st == Stencil::Forward)
                                        ? cov_forward(a, phi, i, mu)
                                        : cov_centered(a, phi, i, mu);
      s += tau[mu] * grad;
    }
    out.v[i] = s;
  }
  return out;
}

SpinorPlus dirac_minus(const OneForm& a, const SpinorMinus& psi, Stencil st) {
  // minus the exact adjoint of dirac_plus: backward differences pair with
  // forward ones, the centered stencil is skew-adjoint already
  require_same_grid(a.grid, psi.grid);
  const TorusGrid& g = a.grid;
  SpinorPlus out(g);
  const auto& tau = spin::tau_frame();
  for (long i = 0; i < g.volume(); ++i) {
    Eigen::Vector2cd s = Eigen::Vector2cd::Zero();
    for (int mu = 0; mu < 4; ++mu) {
      const Eigen::Vector2cd grad = (st == Stencil::Forward)
                                        ? cov_backward(a, psi, i, mu)
                                        : cov_centered(a, psi, i, mu);
      s += tau[mu].adjoint() * grad;
    }
    out.v[i] = s;
  }
  return out;
}

SpinorPlus laplacian(const OneForm& a, const SpinorPlus& phi, Stencil st) {
  require_same_grid(a.grid, phi.grid);
  const TorusGrid& g = a.grid;
  const double h = g.spacing();
  SpinorPlus out(g);
  if (st == Stencil::Forward) {
    for (long i = 0; i < g.volume(); ++i) {
      Eigen::Vector2cd s = Eigen::Vector2cd::Zero();
      for (int mu = 0; mu < 4; ++mu) {
        const long fwd = g.shift(i, mu, +1);
        const long back = g.shift(i, mu, -1);
        s += 2.0 * phi.v[i] - link(a, i, mu) * phi.v[fwd] -
             std::conj(link(a, back, mu)) * phi.v[back];
      }
      out.v[i] = s / (h * h);
    }
  } else {
    // centered differences hop two sites; transport composes two links
    for (long i = 0; i < g.volume(); ++i) {
      Eigen::Vector2cd s = Eigen::Vector2cd::Zero();
      for (int mu = 0; mu < 4; ++mu) {
        const long f1 = g.shift(i, mu, +1);
        const long f2 = g.shift(i, mu, +2);
        const long b1 = g.shift(i, mu, -1);
        const long b2 = g.shift(i, mu, -2);
        const cplx t_fwd = link(a, i, mu) * link(a, f1, mu);
        const cplx t_back =
            std::conj(link(a, b1, mu)) * std::conj(link(a, b2, mu));
        s += 2.0 * phi.v[i] - t_fwd * phi.v[f2] - t_back * phi.v[b2];
      }
      out.v[i] = s / (4.0 * h * h);
    }
  }
  return out;
}

spin::Mat2 curvature_action(const TwoForm& f, long idx) {
  const spin::Bivector b = bivector_at(f, idx);
  return iso_end0(project_lambda(b, +1), +1).m;
}

WeitzenbockResult weitzenbock_residual(const OneForm& a, const SpinorPlus& phi,
                                       Stencil st, double kappa) {
  require_same_grid(a.grid, phi.grid);
  const TorusGrid& g = a.grid;
  const SpinorPlus dd = dirac_minus(a, dirac_plus(a, phi, st), st);
  const SpinorPlus lap = laplacian(a, phi, st);
  const TwoForm f = curvature_matched(a, st);

  WeitzenbockResult out{SpinorPlus(g), 0.0};
  const cplx factor = kappa * cplx(0.0, kTwoPi);
  for (long i = 0; i < g.volume(); ++i)
    out.residual.v[i] = -dd.v[i] - lap.v[i] +
                        factor * (curvature_action(f, i) * phi.v[i]);
  out.norm = std::sqrt(norm2(out.residual));
  return out;
}

double calibrate_kappa(const OneForm& a, const SpinorPlus& phi, Stencil st) {
  require_same_grid(a.grid, phi.grid);
  const TorusGrid& g = a.grid;
  const SpinorPlus dd = dirac_minus(a, dirac_plus(a, phi, st), st);
  const SpinorPlus lap = laplacian(a, phi, st);
  const TwoForm f = curvature_matched(a, st);

  SpinorPlus x(g), y(g);
  for (long i = 0; i < g.volume(); ++i) {
    x.v[i] = -dd.v[i] - lap.v[i];
    y.v[i] = cplx(0.0, kTwoPi) * (curvature_action(f, i) * phi.v[i]);
  }
  const double yy = inner(y, y).real();
  if (yy == 0.0)
    throw std::domain_error("calibration needs a nonzero curvature action");
  return -inner(x, y).real() / yy;
}

// ------------------------------------------------------------- gauge -------

OneForm gauge_act(const GaugeTransform& gt, const OneForm& a) {
  require_same_grid(gt.chi.grid, a.grid);
  const TorusGrid& g = a.grid;
  const double h = g.spacing();
  OneForm out(g);
  for (long i = 0; i < g.volume(); ++i)
    for (int mu = 0; mu < 4; ++mu)
      out.at(i, mu) = a.at(i, mu) -
                      (gt.chi.v[g.shift(i, mu, +1)] - gt.chi.v[i]) / h -
                      double(gt.winding[mu]) / g.length;
  return out;
}

std::pair<OneForm, SpinorPlus> gauge_act(const GaugeTransform& g,
                                         const OneForm& a,
                                         const SpinorPlus& phi) {
  return {gauge_act(g, a), gauge_act_spinor(g, phi)};
}

double holonomy(const OneForm& a, int mu, const std::array<int, 4>& base) {
  const TorusGrid& g = a.grid;
  double s = 0.0;
  long idx = g.index(base);
  for (int j = 0; j < g.n; ++j) {
    s += a.at(idx, mu);
    idx = g.shift(idx, mu, +1);
  }
  return s * g.spacing();
}

// ----------------------------------------------------------- gauge fixing --

namespace {

void subtract_mean(std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= double(v.size());
  for (double& x : v) x -= m;
}

double plain_dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

CoulombResult coulomb_gauge(const OneForm& a, double tol, int max_iter) {
  const TorusGrid& g = a.grid;
  CoulombResult out;
  out.g = GaugeTransform(g);

  // conjugate gradients for (d* d) chi = d* a on mean-zero scalars
  ScalarField rhs = d_adjoint(a);
  subtract_mean(rhs.v);
  const double rhs_norm = std::sqrt(plain_dot(rhs.v, rhs.v));
  ScalarField chi(g);
  if (rhs_norm > 0.0) {
    std::vector<double> r = rhs.v, p = r;
    double rr = plain_dot(r, r);
    const double stop = tol * rhs_norm;
    int it = 0;
    while (std::sqrt(rr) > stop) {
      if (++it > max_iter) {
        std::ostringstream os;
        os << "gauge-fixing Poisson solve stalled: |r| = " << std::sqrt(rr)
           << " after " << max_iter << " iterations (target " << stop << ")";
        throw DivergenceError(os.str(), std::sqrt(rr), max_iter);
      }
      ScalarField pf(g);
      pf.v = p;
      ScalarField lp = d_adjoint(d(pf));
      subtract_mean(lp.v);  // guard rounding drift off the mean-zero space
      const double alpha = rr / plain_dot(p, lp.v);
      for (size_t k = 0; k < chi.v.size(); ++k) chi.v[k] += alpha * p[k];
      for (size_t k = 0; k < r.size(); ++k) r[k] -= alpha * lp.v[k];
      subtract_mean(r);
      const double rr_next = plain_dot(r, r);
      const double beta = rr_next / rr;
      for (size_t k = 0; k < p.size(); ++k) p[k] = r[k] + beta * p[k];
      rr = rr_next;
      out.iterations = it;
    }
  }

  // divergence-free part, then normalize the harmonic coefficients
  out.g.chi = chi;
  OneForm a1 = gauge_act(out.g, a);
  const double vol = double(g.volume());
  for (int mu = 0; mu < 4; ++mu) {
    double mean = 0.0;
    for (long i = 0; i < g.volume(); ++i) mean += a1.at(i, mu);
    mean /= vol;
    const double coeff = mean * g.length;
    long long k = (long long)(std::floor(coeff));
    double frac = coeff - double(k);
    // a coefficient a hair below an integer is that integer up to rounding;
    // without the snap, A = d(chi) would come back shifted by a full winding
    if (frac > 1.0 - 1e-9) {
      k += 1;
      frac = std::max(coeff - double(k), 0.0);
    }
    out.g.winding[mu] = k;
    out.harmonic[mu] = frac;
  }
  out.a = gauge_act(out.g, a);
  out.residual = std::sqrt(norm2(d_adjoint(out.a)));
  return out;
}

}  // namespace sw::lat
