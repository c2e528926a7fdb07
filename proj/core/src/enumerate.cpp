#include "qform/enumerate.hpp"

#include <cmath>
#include <numeric>

#include "qform/parallel.hpp"

namespace qform {

NormEnumerator::NormEnumerator(const GramLattice& lattice)
    : lattice_(lattice), rank_(lattice.rank()), levels_(lattice.rank()) {
  const IntMatrix& g = lattice.gram();
  for (std::size_t j = 0; j < rank_; ++j) {
    const std::size_t ny = j + 1, nf = rank_ - ny;
    Level& level = levels_[j];
    level.schur.assign(ny, std::vector<Wide>(ny, 0));
    if (nf == 0) {
      level.scale = 1;
      for (std::size_t a = 0; a < ny; ++a)
        for (std::size_t b = 0; b < ny; ++b) level.schur[a][b] = g(a, b);
      continue;
    }
    IntMatrix gff(nf, nf);
    for (std::size_t a = 0; a < nf; ++a)
      for (std::size_t b = 0; b < nf; ++b) gff(a, b) = g(ny + a, ny + b);
    level.scale = determinant(gff);
    auto adj = adjugate(gff);
    for (std::size_t a = 0; a < ny; ++a)
      for (std::size_t b = 0; b < ny; ++b) {
        Wide correction = 0;
        for (std::size_t p = 0; p < nf; ++p) {
          if (g(a, ny + p) == 0) continue;
          for (std::size_t q = 0; q < nf; ++q)
            correction = guard_wide(
                correction + wide_mul(wide_mul(g(a, ny + p), adj[p][q]), g(ny + q, b)));
        }
        level.schur[a][b] = guard_wide(wide_mul(level.scale, g(a, b)) - correction);
      }
  }

  // Coordinates satisfy x_i² <= n (G⁻¹)_ii; the 64-bit path is taken only
  // when every intermediate of descend() provably stays below 2^61.
  constexpr Wide kSmall = Wide{1} << 40;
  small_entries_ = true;
  for (Level& level : levels_) {
    const Wide sc = level.scale < 0 ? -level.scale : level.scale;
    small_entries_ = small_entries_ && sc < kSmall;
    magnitude_ = std::max(magnitude_, static_cast<double>(sc));
    if (sc < kSmall) level.scale64 = static_cast<Int>(level.scale);
    level.schur64.assign(level.schur.size(), std::vector<Int>(level.schur.size(), 0));
    for (std::size_t a = 0; a < level.schur.size(); ++a)
      for (std::size_t b = 0; b < level.schur.size(); ++b) {
        const Wide v = level.schur[a][b];
        const Wide av = v < 0 ? -v : v;
        small_entries_ = small_entries_ && av < kSmall;
        magnitude_ = std::max(magnitude_, static_cast<double>(av));
        if (av < kSmall) level.schur64[a][b] = static_cast<Int>(v);
      }
  }
  if (small_entries_) {
    const Wide det = determinant(g);
    const auto adj = adjugate(g);
    for (std::size_t i = 0; i < rank_; ++i)
      coord_factor_ = std::max(coord_factor_, static_cast<double>(adj[i][i]) / static_cast<double>(det));
  }
}

bool NormEnumerator::fits_64(Int n) const {
  if (!small_entries_) return false;
  const double r = static_cast<double>(rank_);
  const double x = std::sqrt(static_cast<double>(n) * coord_factor_) + 2;
  const double m = magnitude_;
  const double beta = r * m * x;
  const double gamma = r * r * m * x * x;
  const double rhs = m * static_cast<double>(n);
  const double worst = beta * beta + m * (gamma + rhs) + 4 * beta;
  return worst < 0x1p60;
}

namespace {

template <class T, class F>
bool walk_range(T lo, T hi, WalkOrder order, F&& f) {
  if (lo > hi) return true;
  if (order == WalkOrder::Lexicographic) {
    for (T x = lo; x <= hi; ++x)
      if (!f(x)) return false;
    return true;
  }
  T reach = std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
  T start = (lo <= 0 && hi >= 0) ? 0 : std::min(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi);
  for (T k = start; k <= reach; ++k) {
    if (k >= lo && k <= hi && !f(k)) return false;
    if (k != 0 && -k >= lo && -k <= hi && !f(-k)) return false;
  }
  return true;
}

}  // namespace

namespace {

// Arithmetic shared by both widths; the Wide flavour checks every step.
struct WideOps {
  using T = Wide;
  static const std::vector<std::vector<Wide>>& schur(const auto& level) { return level.schur; }
  static Wide scale(const auto& level) { return level.scale; }
  static Wide add(Wide a, Wide b) { return guard_wide(a + b); }
  static Wide mul(Wide a, Wide b) { return wide_mul(a, b); }
};

struct SmallOps {
  using T = Int;
  static const std::vector<std::vector<Int>>& schur(const auto& level) { return level.schur64; }
  static Int scale(const auto& level) { return level.scale64; }
  static Int add(Int a, Int b) { return a + b; }
  static Int mul(Int a, Int b) { return a * b; }
};

}  // namespace

template <class Ops>
bool NormEnumerator::descend(std::size_t depth, Int n, Vec& prefix,
                             const std::function<bool(const Vec&)>& visit,
                             WalkOrder order) const {
  using T = typename Ops::T;
  const Level& level = levels_[depth];
  const auto& m = Ops::schur(level);
  const T alpha = m[depth][depth];
  T beta = 0, gamma = 0;
  for (std::size_t i = 0; i < depth; ++i) {
    if (prefix[i] == 0) continue;
    beta = Ops::add(beta, Ops::mul(m[i][depth], prefix[i]));
    T row = 0;
    for (std::size_t k = 0; k < depth; ++k) row = Ops::add(row, Ops::mul(m[i][k], prefix[k]));
    gamma = Ops::add(gamma, Ops::mul(row, prefix[i]));
  }
  const T rhs = Ops::mul(Ops::scale(level), n);
  // alpha x² + 2 beta x + gamma <= rhs (equality at the last level).
  const T disc = Ops::add(Ops::mul(beta, beta), -Ops::mul(alpha, gamma - rhs));
  if (disc < 0) return true;
  const T s = isqrt(disc);

  if (depth + 1 == rank_) {
    if (s * s != disc) return true;
    T roots[2];
    int count = 0;
    for (T num : {-beta - s, -beta + s})
      if (num % alpha == 0) roots[count++] = num / alpha;
    if (count == 2 && roots[0] == roots[1]) count = 1;
    if (count == 2) {
      bool swap = order == WalkOrder::Lexicographic
                      ? roots[0] > roots[1]
                      : std::pair(roots[0] < 0 ? -roots[0] : roots[0], roots[0] < 0) >
                            std::pair(roots[1] < 0 ? -roots[1] : roots[1], roots[1] < 0);
      if (swap) std::swap(roots[0], roots[1]);
    }
    for (int i = 0; i < count; ++i) {
      prefix[depth] = narrow(roots[i]);
      if (!visit(prefix)) return false;
    }
    return true;
  }

  const T lo = ceil_div(-s - beta, alpha);
  const T hi = floor_div(s - beta, alpha);
  return walk_range(lo, hi, order, [&](T x) {
    prefix[depth] = narrow(x);
    return descend<Ops>(depth + 1, n, prefix, visit, order);
  });
}

bool NormEnumerator::for_each(Int n, const std::function<bool(const Vec&)>& visit,
                              WalkOrder order) const {
  if (n < 0) throw DomainError("norm must be nonnegative");
  Vec prefix(rank_, 0);
  if (fits_64(n)) return descend<SmallOps>(0, n, prefix, visit, order);
  return descend<WideOps>(0, n, prefix, visit, order);
}

namespace {

bool is_primitive(const Vec& v) { return gcd(std::span<const Int>(v)) == 1; }

}  // namespace

std::vector<Witness> vectors_with_norm(const GramLattice& lattice, Int n) {
  std::vector<Witness> out;
  NormEnumerator(lattice).for_each(n, [&](const Vec& v) {
    out.push_back({v, n, is_primitive(v)});
    return true;
  });
  return out;
}

std::size_t count_vectors(const GramLattice& lattice, Int n) {
  std::size_t count = 0;
  NormEnumerator(lattice).for_each(n, [&](const Vec&) {
    ++count;
    return true;
  });
  return count;
}

std::optional<Witness> represents(const GramLattice& lattice, Int n) {
  std::optional<Witness> found;
  NormEnumerator(lattice).for_each(
      n,
      [&](const Vec& v) {
        found = Witness{v, n, is_primitive(v)};
        return false;
      },
      WalkOrder::CenterOut);
  return found;
}

namespace {

std::optional<Witness> first_primitive(const NormEnumerator& e, Int n) {
  std::optional<Witness> found;
  e.for_each(
      n,
      [&](const Vec& v) {
        if (!is_primitive(v)) return true;
        found = Witness{v, n, true};
        return false;
      },
      WalkOrder::CenterOut);
  return found;
}

}  // namespace

std::optional<Witness> represents_primitively(const GramLattice& lattice, Int n) {
  if (n < 1) throw DomainError("represents_primitively needs n >= 1");
  return first_primitive(NormEnumerator(lattice), n);
}

ExceptionScan exception_scan(const GramLattice& lattice, Int bound, ScanOptions options) {
  if (bound < 1) throw DomainError("scan bound must be >= 1");
  if (options.block < 1) throw DomainError("scan block must be >= 1");
  const NormEnumerator enumerator(lattice);
  const auto blocks = static_cast<std::size_t>((bound + options.block - 1) / options.block);
  std::vector<std::vector<Int>> missing(blocks);
  parallel_for(blocks, options.workers, [&](std::size_t b) {
    const Int lo = static_cast<Int>(b) * options.block + 1;
    const Int hi = std::min(bound, lo + options.block - 1);
    for (Int n = lo; n <= hi; ++n) {
      bool hit = false;
      if (options.primitive) {
        hit = first_primitive(enumerator, n).has_value();
      } else {
        enumerator.for_each(n, [&](const Vec&) { return hit = true, false; }, WalkOrder::CenterOut);
      }
      if (!hit) missing[b].push_back(n);
    }
  });
  ExceptionScan scan{bound, {}};
  for (auto& part : missing) scan.missing.insert(scan.missing.end(), part.begin(), part.end());
  return scan;
}

}  // namespace qform
