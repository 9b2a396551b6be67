#include "sw/smith.hpp"

#include <stdexcept>

namespace sw::snf {

IMat IMat::identity(int n) {
  IMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IMat IMat::transpose() const {
  IMat t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IMat operator*(const IMat& a, const IMat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IMat: shape mismatch");
  IMat p(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      const Int& ark = a(r, k);
      if (ark == 0) continue;
      for (int c = 0; c < b.cols(); ++c) p(r, c) += ark * b(k, c);
    }
  return p;
}

std::vector<Int> operator*(const IMat& a, const std::vector<Int>& x) {
  if (int(x.size()) != a.cols())
    throw std::invalid_argument("IMat: vector length mismatch");
  std::vector<Int> y(a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) y[r] += a(r, c) * x[c];
  return y;
}

std::vector<Int> SmithDecomposition::invariant_factors() const {
  std::vector<Int> f;
  const int n = std::min(d.rows(), d.cols());
  for (int i = 0; i < n; ++i)
    if (d(i, i) != 0) f.push_back(d(i, i));
  return f;
}

int SmithDecomposition::rank() const {
  return int(invariant_factors().size());
}

namespace {

// All mutations keep the identity  m_original = u * w * v  exact:
// a row operation w <- E w is compensated by u <- u E^{-1} (and the tracked
// inverse by u_inv <- E u_inv); a column operation w <- w F by v <- F^{-1} v.

struct Tracker {
  IMat w, u, u_inv, v, v_inv;

  explicit Tracker(const IMat& m)
      : w(m),
        u(IMat::identity(m.rows())),
        u_inv(IMat::identity(m.rows())),
        v(IMat::identity(m.cols())),
        v_inv(IMat::identity(m.cols())) {}

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < w.cols(); ++c) std::swap(w(i, c), w(j, c));
    for (int c = 0; c < u.cols(); ++c) std::swap(u(c, i), u(c, j));  // u E^{-1}
    for (int c = 0; c < u_inv.cols(); ++c)
      std::swap(u_inv(i, c), u_inv(j, c));  // E u_inv
  }

  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < w.rows(); ++r) std::swap(w(r, i), w(r, j));
    for (int r = 0; r < v.rows(); ++r) std::swap(v(i, r), v(j, r));  // F^{-1} v
    for (int r = 0; r < v_inv.rows(); ++r)
      std::swap(v_inv(r, i), v_inv(r, j));  // v_inv F
  }

  void negate_row(int i) {
    for (int c = 0; c < w.cols(); ++c) w(i, c) = -w(i, c);
    for (int r = 0; r < u.rows(); ++r) u(r, i) = -u(r, i);
    for (int c = 0; c < u_inv.cols(); ++c) u_inv(i, c) = -u_inv(i, c);
  }

  // row j <- row j + q * row i
  void add_row(int j, int i, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < w.cols(); ++c) w(j, c) += q * w(i, c);
    for (int r = 0; r < u.rows(); ++r) u(r, i) -= q * u(r, j);
    for (int c = 0; c < u_inv.cols(); ++c) u_inv(j, c) += q * u_inv(i, c);
  }

  // col j <- col j + q * col i
  void add_col(int j, int i, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < w.rows(); ++r) w(r, j) += q * w(r, i);
    for (int c = 0; c < v.cols(); ++c) v(i, c) -= q * v(j, c);
    for (int r = 0; r < v_inv.rows(); ++r) v_inv(r, j) += q * v_inv(r, i);
  }
};

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

// Floor-free division step: choose q so |w(j,t) - q w(t,t)| <= |w(t,t)|/2.
Int nearest_quotient(const Int& a, const Int& b) {
  Int q = a / b;  // truncated
  Int r = a - q * b;
  if (2 * iabs(r) > iabs(b)) q += (a < 0) == (b < 0) ? 1 : -1;
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IMat& m) {
  Tracker t(m);
  const int n = std::min(m.rows(), m.cols());

  for (int k = 0; k < n; ++k) {
    // locate the pivot: smallest nonzero magnitude, lowest (row, col) on
    // ties.  Re-selected after every reduction pass: always dividing by the
    // current global minimum keeps the quotients - and with them the entry
    // growth in the trailing submatrix and the tracked factors - small.
    const auto select_pivot = [&]() {
      int pr = -1, pc = -1;
      for (int r = k; r < m.rows(); ++r)
        for (int c = k; c < m.cols(); ++c) {
          if (t.w(r, c) == 0) continue;
          if (pr < 0 || iabs(t.w(r, c)) < iabs(t.w(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr < 0) return false;  // submatrix is zero
      t.swap_rows(k, pr);
      t.swap_cols(k, pc);
      return true;
    };
    if (!select_pivot()) break;

    for (;;) {
      bool clean = true;
      for (int r = k + 1; r < m.rows(); ++r) {
        if (t.w(r, k) == 0) continue;
        t.add_row(r, k, -nearest_quotient(t.w(r, k), t.w(k, k)));
        if (t.w(r, k) != 0) clean = false;  // remainder beats the pivot
      }
      for (int c = k + 1; c < m.cols(); ++c) {
        if (t.w(k, c) == 0) continue;
        t.add_col(c, k, -nearest_quotient(t.w(k, c), t.w(k, k)));
        if (t.w(k, c) != 0) clean = false;
      }
      if (!clean) {
        select_pivot();
        continue;
      }

      // pivot must divide every remaining entry; if not, fold the offending
      // row into row k and keep reducing
      bool divides = true;
      for (int r = k + 1; r < m.rows() && divides; ++r)
        for (int c = k + 1; c < m.cols() && divides; ++c)
          if (t.w(r, c) % t.w(k, k) != 0) {
            t.add_row(k, r, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (t.w(k, k) < 0) t.negate_row(k);
  }

  SmithDecomposition s;
  s.u = std::move(t.u);
  s.u_inv = std::move(t.u_inv);
  s.v = std::move(t.v);
  s.v_inv = std::move(t.v_inv);
  s.d = std::move(t.w);
  return s;
}

std::optional<std::vector<Int>> solve(const SmithDecomposition& s,
                                      const std::vector<Int>& b) {
  const int rows = s.d.rows(), cols = s.d.cols();
  const std::vector<Int> y = s.u_inv * b;
  std::vector<Int> w(cols);
  const int n = std::min(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Int& di = (i < n) ? s.d(i, i) : Int(0);
    if (di == 0) {
      if (y[i] != 0) return std::nullopt;
    } else {
      if (y[i] % di != 0) return std::nullopt;
      w[i] = y[i] / di;
    }
  }
  return s.v_inv * w;
}

IMat kernel_basis(const SmithDecomposition& s) {
  const int cols = s.d.cols();
  const int r = s.rank();
  IMat k(cols, cols - r);
  for (int c = r; c < cols; ++c)
    for (int row = 0; row < cols; ++row) k(row, c - r) = s.v_inv(row, c);
  return k;
}

}  // namespace sw::snf
