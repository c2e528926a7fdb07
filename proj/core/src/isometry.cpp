#include "qform/isometry.hpp"

#include <algorithm>
#include <numeric>

#include "qform/enumerate.hpp"

namespace qform {

Reduction reduce(const GramLattice& lattice) {
  const std::size_t n = lattice.rank();
  IntMatrix g = lattice.gram();
  IntMatrix v = IntMatrix::identity(n);
  // b_i <- b_i - q b_j with q = round(B(b_i,b_j) / Q(b_j)) while some norm drops.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Int q = floor_div(2 * g(i, j) + g(j, j), 2 * g(j, j));
        if (q == 0) continue;
        const Int new_norm = g(i, i) - 2 * q * g(i, j) + q * q * g(j, j);
        if (new_norm >= g(i, i)) continue;
        for (std::size_t k = 0; k < n; ++k) v(k, i) -= q * v(k, j);
        for (std::size_t k = 0; k < n; ++k)
          if (k != i) g(i, k) = g(k, i) = g(k, i) - q * g(k, j);
        g(i, i) = new_norm;
        changed = true;
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return g(a, a) < g(b, b); });
  IntMatrix p(n, n);
  for (std::size_t c = 0; c < n; ++c) p(order[c], c) = 1;
  IntMatrix transform = multiply(v, p);
  return {GramLattice(congruence(lattice.gram(), transform)), std::move(transform)};
}

namespace {

bool primitive_image(const IntMatrix& u) {
  // gcd of the maximal minors equals 1.
  const std::size_t r = u.cols(), n = u.rows();
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
  Int g = 0;
  do {
    IntMatrix sub(r, r);
    for (std::size_t i = 0, row = 0; i < n; ++i) {
      if (!pick[i]) continue;
      for (std::size_t j = 0; j < r; ++j) sub(row, j) = u(i, j);
      ++row;
    }
    g = gcd(g, narrow(determinant(sub)));
    if (g == 1) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

struct Candidate {
  Vec v;
  Vec gv;  // G_big v
};

}  // namespace

void for_each_embedding(const GramLattice& small, const GramLattice& big,
                        EmbeddingOptions options,
                        const std::function<bool(const IntMatrix&)>& visit) {
  const std::size_t r = small.rank();
  if (r > big.rank()) return;
  Reduction red = reduce(small);
  const IntMatrix& target = red.reduced.gram();
  const IntMatrix back = unimodular_inverse(red.transform);

  std::vector<std::vector<Candidate>> cands(r);
  for (std::size_t i = 0; i < r; ++i) {
    bool reused = false;
    for (std::size_t j = 0; j < i && !reused; ++j)
      if (target(j, j) == target(i, i)) {
        cands[i] = cands[j];
        reused = true;
      }
    if (reused) continue;
    auto ws = vectors_with_norm(big, target(i, i));
    for (auto it = ws.rbegin(); it != ws.rend(); ++it)
      cands[i].push_back({it->coords, multiply(big.gram(), it->coords)});
  }

  std::vector<const Candidate*> chosen(r, nullptr);
  auto dot = [](const Vec& a, const Vec& b) {
    Wide s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) s += static_cast<Wide>(a[k]) * b[k];
    return s;
  };
  std::function<bool(std::size_t)> search = [&](std::size_t i) -> bool {
    if (i == r) {
      std::vector<Vec> cols;
      for (auto* c : chosen) cols.push_back(c->v);
      IntMatrix u_red = IntMatrix::from_columns(cols);
      if (options.primitive && !primitive_image(u_red)) return true;
      IntMatrix u = multiply(u_red, back);
      if (!(congruence(big.gram(), u) == small.gram()))
        throw Error("internal: embedding witness fails Uᵀ G U = G'");
      return visit(u);
    }
    for (const auto& c : cands[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = dot(chosen[j]->gv, c.v) == target(j, i);
      if (!ok) continue;
      chosen[i] = &c;
      if (!search(i + 1)) return false;
    }
    return true;
  };
  search(0);
}

std::optional<IsometryWitness> embeds(const GramLattice& small, const GramLattice& big) {
  std::optional<IsometryWitness> out;
  for_each_embedding(small, big, {}, [&](const IntMatrix& u) {
    out = IsometryWitness{u};
    return false;
  });
  return out;
}

std::optional<IsometryWitness> is_isometric(const GramLattice& l1, const GramLattice& l2) {
  if (l1.rank() != l2.rank()) return std::nullopt;
  if (discriminant(l1) != discriminant(l2)) return std::nullopt;
  const NormEnumerator e1(l1), e2(l2);
  for (Int m = 1; m <= 16; ++m) {
    std::size_t c1 = 0, c2 = 0;
    e1.for_each(m, [&](const Vec&) { return ++c1, true; });
    e2.for_each(m, [&](const Vec&) { return ++c2, true; });
    if (c1 != c2) return std::nullopt;
  }
  // Uᵀ G₁ U = G₂ means U embeds L2 into L1.
  auto w = embeds(l2, l1);
  if (w) {
    Wide d = determinant(w->matrix);
    if (d != 1 && d != -1) throw Error("internal: isometry witness is not unimodular");
  }
  return w;
}

}  // namespace qform
