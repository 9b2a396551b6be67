#pragma once

// Cohomology of a finite chain complex with integer or mod-2 coefficients,
// computed from coboundaries d_k = (boundary_{k+1})^T by exact normal-form
// reduction.  Classes carry canonical coordinates:
//   - over Z: torsion coordinates first (divisibility order, each reduced
//     into [0, d_i)), then free coordinates;
//   - over Z/2: one bit per quotient basis vector.
// Two classes are equal iff degree, ring and coordinates agree.

#include <optional>
#include <vector>

#include "sw/chain_complex.hpp"

namespace sw::homology {

enum class Ring { Z, Z2 };

struct GroupInfo {
  int free_rank = 0;            // over Z/2: the dimension
  std::vector<Int> torsion;     // invariant factors > 1, divisibility order
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
};

std::vector<GroupInfo> cohomology_groups(const ChainComplex& c, Ring ring);

struct CohomologyClass {
  int degree = 0;
  Ring ring = Ring::Z;
  std::vector<Int> rep;     // cocycle representative (entries 0/1 over Z/2)
  std::vector<Int> coords;  // canonical class coordinates, see above

  bool is_zero() const;
  bool operator==(const CohomologyClass& o) const;
};

// Validates that rep is a cocycle over the ring and computes coordinates.
CohomologyClass make_class(const ChainComplex& c, int degree, Ring ring,
                           const std::vector<Int>& rep);

CohomologyClass reduce_mod2(const ChainComplex& c, const CohomologyClass& x);

// Connecting map of 0 -> Z -> Z -> Z/2 -> 0: lift the cocycle to integers,
// apply d, halve.  The halving is asserted exact.  Output is 2-torsion.
CohomologyClass bockstein(const ChainComplex& c, const CohomologyClass& w);

// Same map with a caller-chosen integer lift (entries must reduce to w).
CohomologyClass bockstein_with_lift(const ChainComplex& c,
                                    const CohomologyClass& w,
                                    const std::vector<Int>& lift);

struct LiftDecision {
  bool lifts = false;
  std::optional<CohomologyClass> witness;      // integral class reducing to w2
  std::optional<CohomologyClass> obstruction;  // nonzero degree-3 class
  Int lift_count = 0;  // distinct lifts modulo twice the integral group
};

// A degree-2 mod-2 class lifts to an integral class iff its connecting-map
// image vanishes; the witness is produced constructively from the lift data.
LiftDecision spinc_lift(const ChainComplex& c, const CohomologyClass& w2);

// One class per canonical generator (torsion generators, then free ones).
std::vector<CohomologyClass> generators(const ChainComplex& c, int degree,
                                        Ring ring);

// Every element of the (finite) mod-2 group in this degree.
std::vector<CohomologyClass> enumerate_mod2(const ChainComplex& c, int degree);

}  // namespace sw::homology
