#include "sw/cohomology.hpp"

#include <stdexcept>

#include "sw/errors.hpp"

namespace sw::homology {

namespace {

Int pos_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// ---------------------------------------------------------------- GF(2) ----

struct BitMat {
  int rows = 0, cols = 0;
  std::vector<uint8_t> a;

  BitMat() = default;
  BitMat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, 0) {}

  uint8_t& at(int r, int c) { return a[size_t(r) * cols + c]; }
  uint8_t at(int r, int c) const { return a[size_t(r) * cols + c]; }
};

BitMat mod2(const IMat& m) {
  BitMat b(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      b.at(r, c) = uint8_t(pos_mod(m(r, c), 2).convert_to<int>());
  return b;
}

struct Rref {
  BitMat m;
  std::vector<int> pivots;  // pivot column per nonzero row
};

Rref rref(BitMat m) {
  Rref out;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pivot = -1;
    for (int r = row; r < m.rows; ++r)
      if (m.at(r, col)) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    for (int c = 0; c < m.cols; ++c) std::swap(m.at(row, c), m.at(pivot, c));
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || !m.at(r, col)) continue;
      for (int c = 0; c < m.cols; ++c) m.at(r, c) ^= m.at(row, c);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

using Bits = std::vector<uint8_t>;

// basis of the nullspace from the reduced form: one vector per free column
std::vector<Bits> kernel_mod2(const BitMat& m) {
  const Rref r = rref(m);
  std::vector<uint8_t> is_pivot(m.cols, 0);
  for (int p : r.pivots) is_pivot[p] = 1;
  std::vector<Bits> basis;
  for (int free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    Bits v(m.cols, 0);
    v[free] = 1;
    for (size_t row = 0; row < r.pivots.size(); ++row)
      v[r.pivots[row]] = r.m.at(int(row), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Bits> solve_mod2(const BitMat& m, const Bits& b) {
  // eliminate on the augmented matrix
  BitMat aug(m.rows, m.cols + 1);
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols) = b[r];
  }
  const Rref r = rref(std::move(aug));
  Bits x(m.cols, 0);
  for (size_t row = 0; row < r.pivots.size(); ++row) {
    if (r.pivots[row] == m.cols) return std::nullopt;  // 0 = 1 row
    x[r.pivots[row]] = r.m.at(int(row), m.cols);
  }
  return x;
}

// ------------------------------------------------------- quotient data -----

// integral cohomology at one degree: kernel basis of d_k, then the image of
// d_{k-1} rewritten in kernel coordinates and put in normal form
struct ZQuot {
  IMat kernel;                     // rank(k) x z
  snf::SmithDecomposition k_snf;   // of the kernel basis, for coordinates
  snf::SmithDecomposition r_snf;   // of the relation matrix
  std::vector<Int> factors;       // all invariant factors of the relations
  int z = 0;
  std::vector<int> keep;          // torsion (>1) positions, then free ones
};

ZQuot z_quot(const ChainComplex& c, int k) {
  ZQuot q;
  const IMat dk = c.coboundary(k);
  const IMat dkm1 = c.coboundary(k - 1);
  q.kernel = kernel_basis(smith_normal_form(dk));
  q.z = q.kernel.cols();
  q.k_snf = smith_normal_form(q.kernel);

  IMat rel(q.z, dkm1.cols());
  for (int j = 0; j < dkm1.cols(); ++j) {
    std::vector<Int> col(dkm1.rows());
    for (int i = 0; i < dkm1.rows(); ++i) col[i] = dkm1(i, j);
    const auto y = solve(q.k_snf, col);
    if (!y) throw std::logic_error("coboundary image escapes the cocycles");
    for (int i = 0; i < q.z; ++i) rel(i, j) = (*y)[i];
  }
  q.r_snf = smith_normal_form(rel);
  q.factors = q.r_snf.invariant_factors();
  for (size_t i = 0; i < q.factors.size(); ++i)
    if (q.factors[i] > 1) q.keep.push_back(int(i));
  for (int i = int(q.factors.size()); i < q.z; ++i) q.keep.push_back(i);
  return q;
}

// mod-2 analogue: kernel basis vectors and the reduced image inside them
struct M2Quot {
  std::vector<Bits> kernel;
  Rref image;              // rref over the kernel coordinates
  std::vector<int> freepos;
  int n = 0;               // ambient cochain length
};

M2Quot m2_quot(const ChainComplex& c, int k) {
  M2Quot q;
  q.n = c.rank(k);
  const BitMat dk = mod2(c.coboundary(k));
  const BitMat dkm1 = mod2(c.coboundary(k - 1));
  q.kernel = kernel_mod2(dk);
  const int z = int(q.kernel.size());

  // kernel basis as columns, for coordinate solves
  BitMat kmat(q.n, z);
  for (int j = 0; j < z; ++j)
    for (int i = 0; i < q.n; ++i) kmat.at(i, j) = q.kernel[j][i];

  BitMat img(z, dkm1.cols);
  for (int j = 0; j < dkm1.cols; ++j) {
    Bits col(q.n);
    for (int i = 0; i < q.n; ++i) col[i] = dkm1.at(i, j);
    const auto y = solve_mod2(kmat, col);
    if (!y) throw std::logic_error("mod-2 image escapes the cocycles");
    for (int i = 0; i < z; ++i) img.at(i, j) = (*y)[i];
  }
  // image vectors become rows, so pivots index kernel coordinates
  BitMat imgt(dkm1.cols, z);
  for (int r = 0; r < z; ++r)
    for (int c2 = 0; c2 < dkm1.cols; ++c2) imgt.at(c2, r) = img.at(r, c2);
  q.image = rref(std::move(imgt));

  std::vector<uint8_t> is_pivot(z, 0);
  for (int p : q.image.pivots) is_pivot[p] = 1;
  for (int i = 0; i < z; ++i)
    if (!is_pivot[i]) q.freepos.push_back(i);
  return q;
}

std::vector<Int> z_coords(const ZQuot& q, const std::vector<Int>& rep) {
  const auto y = solve(q.k_snf, rep);
  if (!y) throw std::domain_error("representative is not a cocycle");
  const std::vector<Int> t = q.r_snf.u_inv * *y;
  std::vector<Int> coords;
  coords.reserve(q.keep.size());
  for (int pos : q.keep) {
    if (pos < int(q.factors.size()))
      coords.push_back(pos_mod(t[pos], q.factors[pos]));
    else
      coords.push_back(t[pos]);
  }
  return coords;
}

std::vector<Int> m2_coords(const M2Quot& q, const std::vector<Int>& rep) {
  Bits x(q.n);
  for (int i = 0; i < q.n; ++i) x[i] = uint8_t(pos_mod(rep[i], 2).convert_to<int>());
  const int z = int(q.kernel.size());
  BitMat kmat(q.n, z);
  for (int j = 0; j < z; ++j)
    for (int i = 0; i < q.n; ++i) kmat.at(i, j) = q.kernel[j][i];
  const auto y0 = solve_mod2(kmat, x);
  if (!y0) throw std::domain_error("representative is not a cocycle");
  Bits y = *y0;
  // kill the pivot coordinates with image rows
  for (size_t row = 0; row < q.image.pivots.size(); ++row) {
    if (!y[q.image.pivots[row]]) continue;
    for (int i = 0; i < z; ++i) y[i] ^= q.image.m.at(int(row), i);
  }
  std::vector<Int> coords;
  coords.reserve(q.freepos.size());
  for (int p : q.freepos) coords.push_back(int(y[p]));
  return coords;
}

// degree dim+1 is admitted as the zero group so that connecting maps of
// top-degree classes have somewhere (trivial) to land
void check_degree(const ChainComplex& c, int degree) {
  if (degree < 0 || degree > c.dim() + 1)
    throw std::domain_error("class degree out of range for this complex");
}

bool is_cocycle_z(const ChainComplex& c, int degree,
                  const std::vector<Int>& rep) {
  const std::vector<Int> d = c.coboundary(degree) * rep;
  for (const Int& x : d)
    if (x != 0) return false;
  return true;
}

bool is_cocycle_mod2(const ChainComplex& c, int degree,
                     const std::vector<Int>& rep) {
  const std::vector<Int> d = c.coboundary(degree) * rep;
  for (const Int& x : d)
    if (pos_mod(x, 2) != 0) return false;
  return true;
}

}  // namespace

bool CohomologyClass::is_zero() const {
  for (const Int& x : coords)
    if (x != 0) return false;
  return true;
}

bool CohomologyClass::operator==(const CohomologyClass& o) const {
  return degree == o.degree && ring == o.ring && coords == o.coords;
}

std::vector<GroupInfo> cohomology_groups(const ChainComplex& c, Ring ring) {
  std::vector<GroupInfo> out(c.dim() + 1);
  for (int k = 0; k <= c.dim(); ++k) {
    if (ring == Ring::Z) {
      const ZQuot q = z_quot(c, k);
      GroupInfo g;
      g.free_rank = q.z - int(q.factors.size());
      for (const Int& f : q.factors)
        if (f > 1) g.torsion.push_back(f);
      out[k] = std::move(g);
    } else {
      const M2Quot q = m2_quot(c, k);
      out[k].free_rank = int(q.freepos.size());
    }
  }
  return out;
}

CohomologyClass make_class(const ChainComplex& c, int degree, Ring ring,
                           const std::vector<Int>& rep) {
  check_degree(c, degree);
  if (int(rep.size()) != c.rank(degree))
    throw std::domain_error("representative has wrong length");
  CohomologyClass out;
  out.degree = degree;
  out.ring = ring;
  if (ring == Ring::Z) {
    if (!is_cocycle_z(c, degree, rep))
      throw std::domain_error("representative is not an integral cocycle");
    out.rep = rep;
    out.coords = z_coords(z_quot(c, degree), rep);
  } else {
    if (!is_cocycle_mod2(c, degree, rep))
      throw std::domain_error("representative is not a mod-2 cocycle");
    out.rep.resize(rep.size());
    for (size_t i = 0; i < rep.size(); ++i) out.rep[i] = pos_mod(rep[i], 2);
    out.coords = m2_coords(m2_quot(c, degree), out.rep);
  }
  return out;
}

CohomologyClass reduce_mod2(const ChainComplex& c, const CohomologyClass& x) {
  if (x.ring != Ring::Z)
    throw std::domain_error("reduction expects an integral class");
  return make_class(c, x.degree, Ring::Z2, x.rep);
}

CohomologyClass bockstein_with_lift(const ChainComplex& c,
                                    const CohomologyClass& w,
                                    const std::vector<Int>& lift) {
  if (w.ring != Ring::Z2)
    throw std::domain_error("connecting map expects a mod-2 class");
  if (lift.size() != w.rep.size())
    throw std::domain_error("lift has wrong length");
  for (size_t i = 0; i < lift.size(); ++i)
    if (pos_mod(lift[i], 2) != w.rep[i])
      throw std::domain_error("lift does not reduce to the given class");

  std::vector<Int> db = c.coboundary(w.degree) * lift;
  for (Int& x : db) {
    if (pos_mod(x, 2) != 0)
      throw std::logic_error("coboundary of a cocycle lift must be even");
    x /= 2;
  }
  return make_class(c, w.degree + 1, Ring::Z, db);
}

CohomologyClass bockstein(const ChainComplex& c, const CohomologyClass& w) {
  return bockstein_with_lift(c, w, w.rep);
}

LiftDecision spinc_lift(const ChainComplex& c, const CohomologyClass& w2) {
  if (w2.ring != Ring::Z2 || w2.degree != 2)
    throw std::domain_error("lift decision expects a degree-2 mod-2 class");

  LiftDecision out;
  const CohomologyClass obs = bockstein(c, w2);
  if (!obs.is_zero()) {
    out.lifts = false;
    out.obstruction = obs;
    out.lift_count = 0;
    return out;
  }
  out.lifts = true;

  // the halved coboundary is a coboundary itself: d y = h, witness = w~ - 2y
  std::vector<Int> h = c.coboundary(2) * w2.rep;
  for (Int& x : h) x /= 2;
  const auto y = solve(smith_normal_form(c.coboundary(2)), h);
  if (!y) throw std::logic_error("vanishing obstruction must be a coboundary");
  std::vector<Int> wit = w2.rep;
  for (size_t i = 0; i < wit.size(); ++i) wit[i] -= 2 * (*y)[i];
  out.witness = make_class(c, 2, Ring::Z, wit);

  // lifts modulo twice the integral group: one bit per free generator and
  // per even invariant factor
  const GroupInfo h2 = cohomology_groups(c, Ring::Z)[2];
  int bits = h2.free_rank;
  for (const Int& f : h2.torsion)
    if (pos_mod(f, 2) == 0) ++bits;
  out.lift_count = Int(1) << bits;
  return out;
}

std::vector<CohomologyClass> generators(const ChainComplex& c, int degree,
                                        Ring ring) {
  check_degree(c, degree);
  std::vector<CohomologyClass> out;
  if (ring == Ring::Z) {
    const ZQuot q = z_quot(c, degree);
    for (int pos : q.keep) {
      std::vector<Int> y(q.z);
      for (int i = 0; i < q.z; ++i) y[i] = q.r_snf.u(i, pos);
      std::vector<Int> rep(c.rank(degree));
      for (int i = 0; i < c.rank(degree); ++i) {
        rep[i] = 0;
        for (int j = 0; j < q.z; ++j) rep[i] += q.kernel(i, j) * y[j];
      }
      out.push_back(make_class(c, degree, Ring::Z, rep));
    }
  } else {
    const M2Quot q = m2_quot(c, degree);
    for (int p : q.freepos) {
      std::vector<Int> rep(q.n);
      for (int i = 0; i < q.n; ++i) rep[i] = int(q.kernel[p][i]);
      out.push_back(make_class(c, degree, Ring::Z2, rep));
    }
  }
  return out;
}

std::vector<CohomologyClass> enumerate_mod2(const ChainComplex& c,
                                            int degree) {
  check_degree(c, degree);
  const M2Quot q = m2_quot(c, degree);
  const int dim = int(q.freepos.size());
  if (dim > 20)
    throw CapacityError("mod-2 group too large to enumerate (dim > 20)");
  std::vector<CohomologyClass> out;
  out.reserve(size_t(1) << dim);
  for (uint32_t mask = 0; mask < (uint32_t(1) << dim); ++mask) {
    std::vector<Int> rep(q.n, 0);
    for (int b = 0; b < dim; ++b) {
      if (!(mask & (uint32_t(1) << b))) continue;
      for (int i = 0; i < q.n; ++i)
        rep[i] = pos_mod(rep[i] + int(q.kernel[q.freepos[b]][i]), 2);
    }
    out.push_back(make_class(c, degree, Ring::Z2, rep));
  }
  return out;
}

}  // namespace sw::homology
