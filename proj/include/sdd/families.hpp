#pragma once

#include <cstddef>

#include "sdd/formula.hpp"
#include "sdd/manager.hpp"
#include "sdd/vtree.hpp"

namespace sdd::families {

// Worst-case function families separating unreduced from reduced SDDs.
//
//   A(n) = OR_i (~Y1 & ... & ~Y(i-1) & Yi & Xi)          over X, Y, Z  (Z unused)
//   B(n) = the same function without Z                    over X, Y
//   C(n) = OR_i (~Y1 & ... & ~Y(i-1) & Yi & ((Xi & (W | Zi)) | (~Xi & Zi)))
//                                                         over X, Y, Z1..Zn, W
//
// Variable ids: Xi = i, Yi = n + i, then Z = 2n + 1 (A) or Zi = 2n + i and
// W = 3n + 1 (C).
enum class Family { A, B, C };

struct FamilySpec {
  Family family;
  int n;

  int var_count() const;
  Var x(int i) const { return i; }
  Var y(int i) const { return n + i; }
  Var z(int i = 1) const { return 2 * n + i; }
  Var w() const { return 3 * n + 1; }
};

Formula formula(const FamilySpec& spec);

// (X-subtree, Y-subtree) at the root for B; A and C put that pair on the
// left of the root with Z (A) or Z1..Zn, W (C) on the right. X and the Z/W
// part are right-linear in increasing index order. Y is right-linear in
// decreasing order so the Y-terms share their ~Y suffix chains.
Vtree vtree_for(const FamilySpec& spec);

// Expected by the unreduced builder: element count of the root partition.
inline std::size_t uncompressed_fa_root_elements(int n) { return 2 * static_cast<std::size_t>(n) + 1; }

// Explicit uncompressed SDD for A(n): an (XY, Z)-partition of 2n + 1
// elements whose primes are (X, Y)-partitions of at most two elements over
// term chains. m must be uncompressed over vtree_for({A, n}).
NodeId build_uncompressed_fa(Manager& m, int n);

// Compiles B(n) in compressed mode over vtree_for({B, n}) and returns the
// number of elements of the root partition (2^n).
std::size_t reduced_partition_count_fb(Manager& m, int n);

// SDD of the conjunction of the given literals, built structurally over the
// manager's vtree without Apply.
NodeId term(Manager& m, std::span<const int> literals);

}  // namespace sdd::families
