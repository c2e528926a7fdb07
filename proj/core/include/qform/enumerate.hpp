#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qform/forms.hpp"

namespace qform {

struct Witness {
  Vec coords;
  Int norm = 0;
  bool primitive = false;

  bool operator==(const Witness&) const = default;
};

/// Order in which each coordinate's admissible range is walked.
enum class WalkOrder {
  /// Ascending; the overall output is lexicographic.
  Lexicographic,
  /// 0, 1, -1, 2, -2, ...; reaches small coordinates first.
  CenterOut,
};

/// Exact Fincke–Pohst style enumeration of {v : Q(v) = n}.
///
/// The outermost loop runs over x_0. At depth j the coordinates x_0..x_j are
/// fixed and the remaining ones free; the minimum of Q over the free part is
/// yᵀ(G_YY - G_YF G_FF⁻¹ G_FY)y. Scaling by det G_FF keeps every bound in
/// integers, and the admissible x_j range comes from an integer square root.
class NormEnumerator {
 public:
  explicit NormEnumerator(const GramLattice& lattice);

  /// Calls visit(v) for each solution; visit returns false to stop early.
  /// Returns false iff the walk was stopped.
  bool for_each(Int n, const std::function<bool(const Vec&)>& visit,
                WalkOrder order = WalkOrder::Lexicographic) const;

  std::size_t rank() const { return rank_; }

 private:
  struct Level {
    std::vector<std::vector<Wide>> schur;  // (j+1) x (j+1), scaled
    Wide scale = 1;                        // det G_FF
    std::vector<std::vector<Int>> schur64;  // copy used on the 64-bit path
    Int scale64 = 1;
  };

  template <class T>
  bool descend(std::size_t depth, Int n, Vec& prefix,
               const std::function<bool(const Vec&)>& visit, WalkOrder order) const;
  bool fits_64(Int n) const;

  GramLattice lattice_;
  std::size_t rank_;
  std::vector<Level> levels_;
  bool small_entries_ = false;  // all schur entries and scales fit comfortably in 64 bits
  double magnitude_ = 0;        // max |schur entry| and scale
  double coord_factor_ = 0;     // |x_i|² <= n * coord_factor_
};

/// Every v with Q(v) = n, lexicographically ordered, closed under negation.
std::vector<Witness> vectors_with_norm(const GramLattice& lattice, Int n);
std::size_t count_vectors(const GramLattice& lattice, Int n);

/// Any witness (not necessarily primitive); n >= 0.
std::optional<Witness> represents(const GramLattice& lattice, Int n);

/// A primitive witness for n >= 1, first in the center-out coordinate order
/// (0 < 1 < -1 < 2 < -2 < ...), applied lexicographically.
std::optional<Witness> represents_primitively(const GramLattice& lattice, Int n);

struct ExceptionScan {
  Int bound = 0;
  std::vector<Int> missing;  // ascending

  bool operator==(const ExceptionScan&) const = default;
};

struct ScanOptions {
  unsigned workers = 1;
  Int block = 512;
  /// Drop the primitivity requirement (computes E(L) instead of E(L*)).
  bool primitive = true;
};

/// Integers in [1, bound] without a primitive representation.
ExceptionScan exception_scan(const GramLattice& lattice, Int bound, ScanOptions options = {});

}  // namespace qform
