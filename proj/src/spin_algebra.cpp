#include "sw/spin_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace sw::spin {

namespace {

constexpr cplx I{0.0, 1.0};

Mat2 matrix_unit(int r, int c) {
  Mat2 m = Mat2::Zero();
  m(r, c) = 1.0;
  return m;
}

// monomial index of u_p ^ u_q for p < q, pair order 12,13,14,23,24,34
int pair_index(int p, int q) {
  static constexpr int table[4][4] = {{-1, 0, 1, 2},
                                      {-1, -1, 3, 4},
                                      {-1, -1, -1, 5},
                                      {-1, -1, -1, -1}};
  return table[p][q];
}

}  // namespace

EndTraceless::EndTraceless(const Mat2& m_, Chirality space_)
    : m(m_), space(space_) {
  const double scale = std::max(1.0, m_.norm());
  if (std::abs(m_.trace()) > 1e-13 * scale) {
    throw std::domain_error("EndTraceless: visible trace " +
                            std::to_string(std::abs(m_.trace())));
  }
}

Mat2 b_map(const Mat2& f) {
  Mat2 b;
  b << f(1, 1), -f(0, 1), -f(1, 0), f(0, 0);
  return b;
}

cplx trace_form(const EndTraceless& f, const EndTraceless& g) {
  if (f.space != g.space) {
    throw std::domain_error("trace_form: endomorphisms of different spaces");
  }
  return (f.m * g.m).trace();
}

cplx sym_pairing(const HomElement& f, const HomElement& g) {
  if (f.dir != HomDirection::PlusToMinus ||
      g.dir != HomDirection::PlusToMinus) {
    throw std::domain_error("sym_pairing: both arguments must map W+ to W-");
  }
  return (b_map(f.m) * g.m).trace();
}

HomElement dagger(const HomElement& f) {
  if (f.dir != HomDirection::PlusToMinus) {
    throw std::domain_error("dagger: defined on Hom(W+, W-)");
  }
  return HomElement{b_map(f.m).adjoint(), f.dir};
}

Mat3 rho3(const Mat2& g) {
  if (std::abs(g.determinant()) < 1e-12) {
    throw std::domain_error("rho3: singular matrix");
  }
  const Mat2 ginv = g.inverse();
  Mat3 r;
  for (int k = 0; k < 3; ++k) {
    const Mat2 img = g * basis_end0()[k] * ginv;
    r(0, k) = img(0, 1);
    r(1, k) = img(1, 0);
    r(2, k) = img(0, 0);
  }
  return r;
}

Mat4 rho4(const Mat2& g, const Mat2& h) {
  const cplx dg = g.determinant();
  const cplx dh = h.determinant();
  if (std::abs(dg) < 1e-12) {
    throw std::domain_error("rho4: singular first factor");
  }
  if (std::abs(dg - dh) > 1e-12 * std::max(1.0, std::abs(dg))) {
    throw std::domain_error("rho4: determinants disagree");
  }
  const Mat2 ginv = g.inverse();
  Mat4 r;
  for (int k = 0; k < 4; ++k) {
    const Mat2 img = h * basis_u()[k] * ginv;
    r(0, k) = img(0, 0);
    r(1, k) = img(0, 1);
    r(2, k) = img(1, 0);
    r(3, k) = img(1, 1);
  }
  return r;
}

Mat6 rho6(const Mat4& g) {
  if (std::abs(g.determinant() - 1.0) > 1e-8) {
    throw std::domain_error("rho6: determinant must be 1");
  }
  Mat6 r;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const int col = pair_index(i, j);
      for (int p = 0; p < 4; ++p) {
        for (int q = p + 1; q < 4; ++q) {
          r(pair_index(p, q), col) = g(p, i) * g(q, j) - g(q, i) * g(p, j);
        }
      }
    }
  }
  return r;
}

cplx wedge_pairing(const Bivector& a, const Bivector& b) {
  return (a.c.transpose() * gram_wedge() * b.c)(0, 0);
}

Bivector star(const Bivector& a) { return Bivector{star_matrix() * a.c}; }

Bivector project_lambda(const Bivector& a, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::domain_error("project_lambda: sign must be +1 or -1");
  }
  const double s = sign;
  return Bivector{0.5 * (a.c + s * (star_matrix() * a.c))};
}

EndTraceless iso_end0(const Bivector& a, int sign) {
  if (sign != 1 && sign != -1) {
    throw std::domain_error("iso_end0: sign must be +1 or -1");
  }
  // images of the six monomials under f^g -> B(f)g - B(g)f (plus side)
  // and f^g -> f B(g) - g B(f) (minus side)
  static const std::array<Mat2, 6> plus_img = [] {
    std::array<Mat2, 6> t;
    t[0] = Mat2::Zero();
    t[1] = 2.0 * matrix_unit(1, 0);
    t[2] = (Mat2() << -1, 0, 0, 1).finished();
    t[3] = (Mat2() << -1, 0, 0, 1).finished();
    t[4] = -2.0 * matrix_unit(0, 1);
    t[5] = Mat2::Zero();
    return t;
  }();
  static const std::array<Mat2, 6> minus_img = [] {
    std::array<Mat2, 6> t;
    t[0] = -2.0 * matrix_unit(0, 1);
    t[1] = Mat2::Zero();
    t[2] = (Mat2() << 1, 0, 0, -1).finished();
    t[3] = (Mat2() << -1, 0, 0, 1).finished();
    t[4] = Mat2::Zero();
    t[5] = 2.0 * matrix_unit(1, 0);
    return t;
  }();
  const auto& img = (sign == 1) ? plus_img : minus_img;
  Mat2 out = Mat2::Zero();
  for (int k = 0; k < 6; ++k) out += a.c(k) * img[k];
  return EndTraceless(out, sign == 1 ? Chirality::Plus : Chirality::Minus);
}

Bivector lambda_plus_from_skew(const EndTraceless& s) {
  if (s.space != Chirality::Plus) {
    throw std::domain_error("lambda_plus_from_skew: needs End0(W+)");
  }
  const double scale = std::max(1.0, s.m.norm());
  if ((s.m + s.m.adjoint()).norm() > 1e-12 * scale) {
    throw std::domain_error("lambda_plus_from_skew: visible hermitian part");
  }
  // S = [[a, b], [c, -a]] pulls back to (c/2) m2 - (b/2) m5 - (a/2)(m3 + m4)
  const cplx a = s.m(0, 0);
  const cplx b = s.m(0, 1);
  const cplx c = s.m(1, 0);
  Bivector out;
  out.c(1) = 0.5 * c;
  out.c(2) = -0.5 * a;
  out.c(3) = -0.5 * a;
  out.c(4) = -0.5 * b;
  return out;
}

EndTraceless sigma(const Spinor& phi, const Spinor& psi) {
  if (phi.chi != Chirality::Plus || psi.chi != Chirality::Plus) {
    throw std::domain_error("sigma: both spinors must live in W+");
  }
  const cplx pairing = psi.v.dot(phi.v);  // h(phi, psi) = psi^H phi
  Mat2 m = I * (phi.v * psi.v.adjoint());
  m -= (I * 0.5 * pairing) * Mat2::Identity();
  return EndTraceless(m, Chirality::Plus);
}

const std::array<Mat2, 4>& basis_u() {
  static const std::array<Mat2, 4> t = {matrix_unit(0, 0), matrix_unit(0, 1),
                                        matrix_unit(1, 0), matrix_unit(1, 1)};
  return t;
}

const std::array<Mat2, 3>& basis_end0() {
  static const std::array<Mat2, 3> t = {
      matrix_unit(0, 1), matrix_unit(1, 0),
      (Mat2() << 1, 0, 0, -1).finished()};
  return t;
}

const std::array<Mat2, 4>& tau_frame() {
  static const std::array<Mat2, 4> t = {
      (Mat2() << I, 0, 0, -I).finished(), Mat2::Identity(),
      (Mat2() << 0, 1, -1, 0).finished(), (Mat2() << 0, I, I, 0).finished()};
  return t;
}

const Eigen::Matrix3cd& gram_end0() {
  static const Eigen::Matrix3cd g =
      (Eigen::Matrix3cd() << 0, 1, 0, 1, 0, 0, 0, 0, 2).finished();
  return g;
}

const Eigen::Matrix4cd& gram_u() {
  static const Eigen::Matrix4cd g =
      (Eigen::Matrix4cd() << 0, 0, 0, 1, 0, 0, -1, 0, 0, -1, 0, 0, 1, 0, 0, 0)
          .finished();
  return g;
}

const Mat6& gram_wedge() {
  // <m_i, m_j> = psi(m_i ^ m_j) with psi(u1^u2^u3^u4) = -1
  static const Mat6 g = [] {
    Mat6 m = Mat6::Zero();
    m(0, 5) = m(5, 0) = -1;
    m(1, 4) = m(4, 1) = 1;
    m(2, 3) = m(3, 2) = -1;
    return m;
  }();
  return g;
}

const Mat6& star_matrix() {
  static const Mat6 s = [] {
    Mat6 m = Mat6::Zero();
    m(0, 0) = -1;
    m(1, 1) = 1;
    m(3, 2) = 1;  // star m3 = m4
    m(2, 3) = 1;  // star m4 = m3
    m(4, 4) = 1;
    m(5, 5) = -1;
    return m;
  }();
  return s;
}

const Mat6& tau_wedge_matrix() {
  static const Mat6 m = [] {
    Mat6 t;
    const cplx i = I;
    // columns: tau_mu ^ tau_nu over pairs 12,13,14,23,24,34
    t.col(0) << 0, 0, 2.0 * i, 0, 0, 0;
    t.col(1) << i, -i, 0, 0, i, -i;
    t.col(2) << -1, -1, 0, 0, -1, -1;
    t.col(3) << 1, -1, 0, 0, -1, 1;
    t.col(4) << i, i, 0, 0, -i, -i;
    t.col(5) << 0, 0, 0, 2.0 * i, 0, 0;
    return t;
  }();
  return m;
}

const Mat6& tau_wedge_inverse() {
  static const Mat6 m = tau_wedge_matrix().inverse();
  return m;
}

const std::array<Bivector, 3>& omega_basis() {
  static const std::array<Bivector, 3> t = [] {
    std::array<Bivector, 3> o;
    const auto& w = tau_wedge_matrix();
    o[0].c = w.col(0) + w.col(5);  // t1^t2 + t3^t4
    o[1].c = w.col(1) - w.col(4);  // t1^t3 - t2^t4
    o[2].c = w.col(2) + w.col(3);  // t1^t4 + t2^t3
    return o;
  }();
  return t;
}

Bivector bivector_from_components(const std::array<double, 6>& f) {
  Bivector out;
  const auto& w = tau_wedge_matrix();
  for (int k = 0; k < 6; ++k) out.c += f[k] * w.col(k);
  return out;
}

std::array<double, 6> components_from_bivector(const Bivector& a) {
  const Vec6 x = tau_wedge_inverse() * a.c;
  const double scale = std::max(1.0, a.c.norm());
  std::array<double, 6> out{};
  for (int k = 0; k < 6; ++k) {
    if (std::abs(x(k).imag()) > 1e-10 * scale) {
      throw std::domain_error(
          "components_from_bivector: input not in the real span");
    }
    out[k] = x(k).real();
  }
  return out;
}

}  // namespace sw::spin
