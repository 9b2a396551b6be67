#pragma once

// Exact integer linear algebra: Smith normal form with tracked unimodular
// factors, integer linear solves, and kernel bases.  All arithmetic uses
// arbitrary-precision integers, so there is no overflow to document away;
// intermediate pivots can grow freely.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <vector>

namespace sw::snf {

using Int = boost::multiprecision::cpp_int;

// Dense integer matrix, row-major.  Deliberately minimal: just what the
// normal-form algorithm and the chain-complex layer need.
class IMat {
 public:
  IMat() = default;
  IMat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

  static IMat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Int& operator()(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Int& operator()(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  IMat transpose() const;
  bool operator==(const IMat& o) const = default;

  friend IMat operator*(const IMat& a, const IMat& b);

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<Int> a_;
};

std::vector<Int> operator*(const IMat& a, const std::vector<Int>& x);

// m = u * d * v with u, v unimodular and d diagonal, each diagonal entry
// nonnegative and dividing the next.  The inverses are tracked during the
// reduction, so solves and kernels cost only a matrix-vector product.
struct SmithDecomposition {
  IMat u, u_inv, v, v_inv, d;

  std::vector<Int> invariant_factors() const;  // nonzero diagonal of d
  int rank() const;
};

// Deterministic: pivot = smallest |entry|, ties broken by lowest (row, col).
SmithDecomposition smith_normal_form(const IMat& m);

// Exact solve of m x = b; nullopt when no integer solution exists.
std::optional<std::vector<Int>> solve(const SmithDecomposition& s,
                                      const std::vector<Int>& b);

// Columns form a basis of the integer kernel of m.
IMat kernel_basis(const SmithDecomposition& s);

}  // namespace sw::snf
