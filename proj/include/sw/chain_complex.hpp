#pragma once

// Finite chain complexes of free abelian groups, read from a small text
// format.  Grammar (whitespace-insensitive token stream; '#' starts a
// comment running to end of line):
//
//   complex <identifier>
//   manifold <true|false>          optional, default false
//   ranks <n0> <n1> ... <nd>       required, one entry per degree
//   boundary <k>                   optional for k in 1..d, default zero
//   <n_{k-1} x n_k integers>       row-major matrix of the boundary map
//   class <name> <k>               optional named integer cochain, degree k
//   <n_k integers>
//   end
//
// Degrees index chain groups C_0..C_d; boundary k maps C_k -> C_{k-1}.
// Cochains are integer row vectors on C_k.  Every parsed complex is
// validated: consecutive boundary maps must compose to zero exactly.

#include <iosfwd>
#include <string>
#include <vector>

#include "sw/smith.hpp"

namespace sw::homology {

using snf::IMat;
using snf::Int;

struct NamedCochain {
  std::string name;
  int degree = 0;
  std::vector<Int> coeffs;
};

class ChainComplex {
 public:
  ChainComplex(std::string name, bool manifold, std::vector<int> ranks,
               std::vector<IMat> boundaries, std::vector<NamedCochain> classes);

  const std::string& name() const { return name_; }
  bool manifold() const { return manifold_; }
  int dim() const { return int(ranks_.size()) - 1; }
  int rank(int k) const;  // 0 outside [0, dim]

  // boundary map C_k -> C_{k-1}, k in 1..dim
  const IMat& boundary(int k) const;
  // coboundary on integer cochains, C^k -> C^{k+1}; zero map at the ends
  IMat coboundary(int k) const;

  const std::vector<NamedCochain>& classes() const { return classes_; }
  const NamedCochain* find_class(const std::string& name) const;

 private:
  void validate() const;

  std::string name_;
  bool manifold_ = false;
  std::vector<int> ranks_;
  std::vector<IMat> boundaries_;  // boundaries_[k] for k in 1..dim; [0] unused
  std::vector<NamedCochain> classes_;
};

ChainComplex parse_chain_complex(std::istream& in);
ChainComplex parse_chain_complex(const std::string& text);
ChainComplex load_chain_complex(const std::string& path);
std::string serialize(const ChainComplex& c);

}  // namespace sw::homology
