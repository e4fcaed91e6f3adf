#pragma once

#include <vector>

#include "volent/presentation.hpp"
#include "volent/rational.hpp"

namespace volent {

using IntegerMatrix = std::vector<std::vector<Integer>>;

/// Diagonal of the Smith normal form: nonzero invariant factors d1 | d2 | ...
struct SmithResult {
  std::vector<Integer> invariant_factors;
  size_t rank() const { return invariant_factors.size(); }
};

/// Smith normal form by the classical pivot-and-reduce elimination. Exact
/// integer arithmetic throughout.
inline SmithResult smith_normal_form(IntegerMatrix M) {
  SmithResult out;
  if (M.empty() || M[0].empty()) return out;
  const size_t rows = M.size(), cols = M[0].size();
  size_t corner = 0;

  auto nonzero_below = [&](size_t from) -> bool {
    for (size_t i = from; i < rows; ++i)
      for (size_t j = from; j < cols; ++j)
        if (M[i][j] != 0) return true;
    return false;
  };

  while (corner < rows && corner < cols && nonzero_below(corner)) {
    // Move a minimal-magnitude nonzero entry to the corner.
    size_t pi = corner, pj = corner;
    Integer best = 0;
    for (size_t i = corner; i < rows; ++i)
      for (size_t j = corner; j < cols; ++j) {
        if (M[i][j] == 0) continue;
        Integer a = abs(M[i][j]);
        if (best == 0 || a < best) {
          best = a;
          pi = i;
          pj = j;
        }
      }
    std::swap(M[corner], M[pi]);
    for (size_t i = 0; i < rows; ++i) std::swap(M[i][corner], M[i][pj]);

    bool clean = true;
    for (size_t i = corner + 1; i < rows; ++i) {
      if (M[i][corner] == 0) continue;
      Integer q = M[i][corner] / M[corner][corner];
      for (size_t j = corner; j < cols; ++j) M[i][j] -= q * M[corner][j];
      if (M[i][corner] != 0) clean = false;
    }
    for (size_t j = corner + 1; j < cols; ++j) {
      if (M[corner][j] == 0) continue;
      Integer q = M[corner][j] / M[corner][corner];
      for (size_t i = corner; i < rows; ++i) M[i][j] -= q * M[i][corner];
      if (M[corner][j] != 0) clean = false;
    }
    if (!clean) continue;  // smaller remainders appeared; redo this corner

    // Divisibility fixup: fold any entry the pivot does not divide into the
    // pivot column and redo.
    bool divides_all = true;
    for (size_t i = corner + 1; i < rows && divides_all; ++i)
      for (size_t j = corner + 1; j < cols && divides_all; ++j)
        if (M[i][j] % M[corner][corner] != 0) {
          for (size_t jj = corner; jj < cols; ++jj) M[corner][jj] += M[i][jj];
          divides_all = false;
        }
    if (!divides_all) continue;

    if (M[corner][corner] < 0) M[corner][corner] = -M[corner][corner];
    out.invariant_factors.push_back(M[corner][corner]);
    ++corner;
  }
  return out;
}

/// Isomorphism type of a finitely generated abelian group Z^free x torsion.
struct AbelianInvariants {
  size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors > 1

  bool operator==(const AbelianInvariants& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

/// Abelianization of a presentation: cokernel of the relator exponent matrix.
inline AbelianInvariants abelianization(const Presentation& P) {
  AbelianInvariants out;
  if (P.relators.empty()) {
    out.free_rank = P.rank();
    return out;
  }
  IntegerMatrix M(P.relators.size(), std::vector<Integer>(P.rank(), 0));
  for (size_t i = 0; i < P.relators.size(); ++i) {
    auto e = P.exponent_sums(P.relators[i]);
    for (size_t j = 0; j < P.rank(); ++j) M[i][j] = static_cast<long>(e[j]);
  }
  SmithResult snf = smith_normal_form(M);
  out.free_rank = P.rank() - snf.rank();
  for (const Integer& d : snf.invariant_factors)
    if (d > 1) out.torsion.push_back(d);
  return out;
}

}  // namespace volent
