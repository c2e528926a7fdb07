#include "qform/local.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

namespace qform {

namespace {

Int mulmod(Int a, Int b, Int m) { return static_cast<Int>(static_cast<Wide>(a) * b % m); }

Int inverse_mod(Int a, Int m) {
  auto eg = extended_gcd(mod(a, m), m);
  if (eg.g != 1) throw Error("internal: non-unit in Jordan elimination");
  return mod(eg.x, m);
}

// p^k, or OverflowError once it exceeds 2^62.
Int bounded_power(Int p, int k) {
  constexpr Int limit = Int{1} << 62;
  Int r = 1;
  for (int i = 0; i < k; ++i) {
    if (r > limit / p) throw OverflowError("p^k exceeds 2^62 in local computation");
    r *= p;
  }
  return r;
}

int residue_valuation(Int r, Int p, int cap) {
  if (r == 0) return cap;
  return std::min(valuation(r, p), cap);
}

void check_prime(Int p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
}

}  // namespace

JordanDecomposition jordan_decomposition(const GramLattice& lattice, Int p) {
  check_prime(p);
  const Int det = discriminant(lattice);
  const int v = valuation(det, p);
  const int prec = p == 2 ? 3 * v + 6 : v + 2;
  const Int big = bounded_power(p, prec);
  const std::size_t n = lattice.rank();

  std::vector<Vec> g(n, Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = mod(lattice(i, j), big);

  JordanDecomposition out;
  out.p = p;
  int known = prec;  // entries are valid modulo p^known
  std::vector<std::size_t> active(n);
  for (std::size_t i = 0; i < n; ++i) active[i] = i;

  auto val = [&](Int r) { return residue_valuation(mod(r, bounded_power(p, known)), p, known); };

  while (!active.empty()) {
    int diag_min = known + 1, off_min = known + 1;
    std::size_t di = 0, oi = 0, oj = 0;
    for (std::size_t x = 0; x < active.size(); ++x) {
      const std::size_t i = active[x];
      int dv = val(g[i][i]);
      if (dv < diag_min) diag_min = dv, di = i;
      for (std::size_t y = x + 1; y < active.size(); ++y) {
        const std::size_t j = active[y];
        int ov = val(g[i][j]);
        if (ov < off_min) off_min = ov, oi = i, oj = j;
      }
    }
    if (std::min(diag_min, off_min) >= known)
      throw OverflowError("insufficient p-adic precision in Jordan decomposition");

    if (diag_min <= off_min) {
      const int e = diag_min;
      const Int pe = bounded_power(p, e);
      const Int rel = bounded_power(p, known - e);
      const Int unit = mod(g[di][di] / pe, rel);
      const Int inv = inverse_mod(unit, rel);
      for (std::size_t k : active) {
        if (k == di) continue;
        const Int f = mulmod(mod(g[k][di] / pe, rel), inv, rel);
        if (f == 0) continue;
        for (std::size_t l : active) {
          if (l == di) continue;
          g[k][l] = mod(g[k][l] - mulmod(f, g[di][l], big), big);
        }
      }
      out.components.push_back({e, 1, unit, 0, 0});
      std::erase(active, di);
      continue;
    }

    if (p != 2) {
      // b_i <- b_i + b_j puts the minimal valuation on the diagonal.
      const Int gii = g[oi][oi], gij = g[oi][oj], gjj = g[oj][oj];
      for (std::size_t l : active) {
        if (l == oi) continue;
        g[oi][l] = g[l][oi] = mod(g[oi][l] + g[oj][l], big);
      }
      g[oi][oi] = mod(gii + 2 * gij + gjj, big);
      continue;
    }

    // 2-adic 2x2 block 2^e [[a, b], [b, c]] with b odd, a and c even.
    const int e = off_min;
    const Int a = g[oi][oi], b = g[oi][oj], c = g[oj][oj];
    const Int det2 = mod(mulmod(a, c, big) - mulmod(b, b, big), big);
    if (val(det2) != 2 * e) throw Error("internal: 2-adic block determinant valuation");
    const Int p2e = bounded_power(p, 2 * e);
    const Int rel2 = bounded_power(p, known - 2 * e);
    const Int dinv = inverse_mod(mod(det2 / p2e, rel2), rel2);
    for (std::size_t k : active) {
      if (k == oi || k == oj) continue;
      const Int xn = mod(mulmod(g[k][oi], c, big) - mulmod(g[k][oj], b, big), big);
      const Int yn = mod(mulmod(g[k][oj], a, big) - mulmod(g[k][oi], b, big), big);
      const Int x = mulmod(mod(xn / p2e, rel2), dinv, rel2);
      const Int y = mulmod(mod(yn / p2e, rel2), dinv, rel2);
      for (std::size_t l : active) {
        if (l == oi || l == oj) continue;
        g[k][l] = mod(g[k][l] - mulmod(x, g[oi][l], big) - mulmod(y, g[oj][l], big), big);
      }
    }
    const Int pe = bounded_power(p, e);
    const Int rel = bounded_power(p, known - e);
    out.components.push_back({e, 2, mod(a / pe, rel), mod(b / pe, rel), mod(c / pe, rel)});
    std::erase(active, oi);
    std::erase(active, oj);
    known -= e;
  }

  int total = 0;
  for (const auto& comp : out.components) total += comp.exponent * static_cast<int>(comp.dim);
  if (total != v) throw OverflowError("insufficient p-adic precision in Jordan decomposition");
  out.precision = known;
  std::stable_sort(out.components.begin(), out.components.end(),
                   [](const auto& x, const auto& y) { return x.exponent < y.exponent; });
  return out;
}

std::size_t unimodular_rank(const GramLattice& lattice, Int p) {
  std::size_t r = 0;
  for (const auto& comp : jordan_decomposition(lattice, p).components)
    if (comp.exponent == 0) r += comp.dim;
  return r;
}

namespace {

// Residue sets modulo 2^bits.
class ResidueSet {
 public:
  explicit ResidueSet(int bits) : size_(std::size_t{1} << bits), bits_(size_, false) {}

  std::size_t size() const { return size_; }
  void insert(Int r) { bits_[static_cast<std::size_t>(r) & (size_ - 1)] = true; }
  bool contains(Int r) const { return bits_[static_cast<std::size_t>(r) & (size_ - 1)]; }
  std::vector<Int> elements() const {
    std::vector<Int> out;
    for (std::size_t i = 0; i < size_; ++i)
      if (bits_[i]) out.push_back(static_cast<Int>(i));
    return out;
  }
  void merge(const ResidueSet& o) {
    for (std::size_t i = 0; i < size_; ++i)
      if (o.bits_[i]) bits_[i] = true;
  }

  // {a + b}
  ResidueSet sum(const ResidueSet& o) const {
    ResidueSet out(0);
    out.size_ = size_;
    out.bits_.assign(size_, false);
    auto xs = elements(), ys = o.elements();
    if (xs.size() > ys.size()) std::swap(xs, ys);
    for (Int x : xs) {
      for (Int y : ys) out.bits_[static_cast<std::size_t>(x + y) & (size_ - 1)] = true;
    }
    return out;
  }

 private:
  std::size_t size_;
  std::vector<bool> bits_;
};

struct ValuePair {
  ResidueSet primitive;  // some coordinate odd
  ResidueSet imprimitive;
};

// All values of x² + xy + y² modulo 2^bits.
ResidueSet anisotropic_values(int bits) {
  ResidueSet out(std::max(bits, 0));
  if (bits <= 0) {
    out.insert(0);
    return out;
  }
  for (Int r = 1; r < (Int{1} << bits); r += 2) out.insert(r);
  ResidueSet inner = anisotropic_values(bits - 2);
  for (Int r : inner.elements()) out.insert(4 * r);
  if (bits <= 2) out.insert(0);
  return out;
}

ValuePair component_values(const JordanComponent& comp, int bits) {
  ValuePair vp{ResidueSet(bits), ResidueSet(bits)};
  const Int modulus = Int{1} << bits;
  if (comp.dim == 1) {
    if (comp.exponent >= bits) {
      vp.primitive.insert(0);
      vp.imprimitive.insert(0);
      return vp;
    }
    const Int span = Int{1} << (bits - comp.exponent);
    for (Int x = 0; x < span; ++x) {
      Int v = mulmod(mulmod(x, x, modulus), comp.a, modulus);
      v = (v << comp.exponent) & (modulus - 1);
      (x % 2 ? vp.primitive : vp.imprimitive).insert(v);
    }
    return vp;
  }
  const int k = bits - comp.exponent - 1;
  if (k <= 0) {
    vp.primitive.insert(0);
    vp.imprimitive.insert(0);
    return vp;
  }
  // (a/2)x² + bxy + (c/2)y² is hyperbolic iff (a/2)(c/2) is even.
  const bool hyperbolic = ((comp.a / 2) * (comp.c / 2)) % 2 == 0;
  const Int inner = Int{1} << k;
  auto lift = [&](ResidueSet& target, Int phi) {
    target.insert((phi << (comp.exponent + 1)) & (modulus - 1));
  };
  if (hyperbolic) {
    for (Int r = 0; r < inner; ++r) lift(vp.primitive, r);
    for (Int r = 0; r < inner; r += 4) lift(vp.imprimitive, r);
  } else {
    for (Int r = 1; r < inner; r += 2) lift(vp.primitive, r);
    for (Int r : anisotropic_values(k - 2).elements()) lift(vp.imprimitive, 4 * r);
  }
  return vp;
}

}  // namespace

ZpLattice::ZpLattice(const GramLattice& lattice, Int p) : p_(p), jordan_(jordan_decomposition(lattice, p)) {
  if (p != 2) return;
  int e_max = 0;
  for (const auto& comp : jordan_.components) e_max = std::max(e_max, comp.exponent);
  // A primitive x has v_2(Gx) <= e_max, so a solution mod 2^(2 e_max + 3)
  // lifts to Z_2 without changing x mod 2.
  modulus_bits_ = 2 * e_max + 3;
  if (modulus_bits_ > 16) throw OverflowError("2-adic scale too large for residue tables");
  ValuePair state{ResidueSet(modulus_bits_), ResidueSet(modulus_bits_)};
  state.imprimitive.insert(0);
  for (const auto& comp : jordan_.components) {
    ValuePair cv = component_values(comp, modulus_bits_);
    ResidueSet any = cv.primitive;
    any.merge(cv.imprimitive);
    ResidueSet prim = state.primitive.sum(any);
    prim.merge(state.imprimitive.sum(cv.primitive));
    state.imprimitive = state.imprimitive.sum(cv.imprimitive);
    state.primitive = std::move(prim);
  }
  primitive_values_.assign(std::size_t{1} << modulus_bits_, false);
  for (Int r : state.primitive.elements()) primitive_values_[static_cast<std::size_t>(r)] = true;
}

namespace {

struct OddComponent {
  int exponent;
  Int unit;  // mod p
  bool counts;  // a unit coordinate here makes the vector primitive
};

bool odd_primitive(std::vector<OddComponent> comps, Int n, Int p) {
  while (true) {
    bool any_counting = false, higher_counting = false;
    for (const auto& c : comps) {
      any_counting |= c.counts;
      higher_counting |= c.counts && c.exponent > 0;
    }
    if (!any_counting) return false;
    // reach[value][counting coordinate nonzero][some coordinate nonzero]
    std::vector<std::array<std::array<bool, 2>, 2>> reach(static_cast<std::size_t>(p));
    for (auto& r : reach) r = {{{false, false}, {false, false}}};
    reach[0][0][0] = true;
    for (const auto& c : comps) {
      if (c.exponent != 0) continue;
      auto next = reach;
      for (auto& r : next) r = {{{false, false}, {false, false}}};
      for (Int v = 0; v < p; ++v)
        for (int s = 0; s < 2; ++s)
          for (int a = 0; a < 2; ++a) {
            if (!reach[static_cast<std::size_t>(v)][s][a]) continue;
            for (Int x = 0; x < p; ++x) {
              Int w = mod(v + mulmod(c.unit, x * x % p, p), p);
              int s2 = s | (c.counts && x != 0), a2 = a | (x != 0);
              next[static_cast<std::size_t>(w)][s2][a2] = true;
            }
          }
      reach = std::move(next);
    }
    // A nonzero unimodular part has an invertible gradient, so Hensel lifts
    // the residue solution without touching x mod p.
    const auto& target = reach[static_cast<std::size_t>(mod(n, p))];
    if (target[1][1] || (higher_counting && target[0][1])) return true;
    if (n % p != 0) return false;
    // Unimodular coordinates all divisible by p: Q picks up p² there.
    for (auto& c : comps) {
      if (c.exponent == 0) {
        c.exponent = 1;
        c.counts = false;
      } else {
        c.exponent -= 1;
      }
    }
    n /= p;
  }
}

}  // namespace

bool ZpLattice::represents_primitively(Int n) const {
  if (n < 1) throw DomainError("local representation needs n >= 1");
  if (p_ == 2) return primitive_values_[static_cast<std::size_t>(n) & ((std::size_t{1} << modulus_bits_) - 1)];
  std::vector<OddComponent> comps;
  for (const auto& c : jordan_.components) comps.push_back({c.exponent, mod(c.a, p_), true});
  return odd_primitive(std::move(comps), n, p_);
}

bool ZpLattice::represents(Int n) const {
  if (n < 1) throw DomainError("local representation needs n >= 1");
  for (Int m = n;; m /= p_ * p_) {
    if (represents_primitively(m)) return true;
    if (m % (p_ * p_) != 0) return false;
  }
}

namespace {

std::shared_ptr<const ZpLattice> cached_local(const GramLattice& lattice, Int p) {
  static std::mutex mutex;
  static std::map<std::pair<std::vector<Int>, Int>, std::shared_ptr<const ZpLattice>> cache;
  std::vector<Int> key;
  for (std::size_t i = 0; i < lattice.rank(); ++i)
    for (std::size_t j = i; j < lattice.rank(); ++j) key.push_back(lattice(i, j));
  key.push_back(static_cast<Int>(lattice.rank()));
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({key, p});
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const ZpLattice>(lattice, p);
  std::lock_guard lock(mutex);
  if (cache.size() > 4096) cache.clear();
  return cache.emplace(std::pair{key, p}, built).first->second;
}

}  // namespace

bool represented_over_zp(const GramLattice& lattice, Int n, Int p) {
  check_prime(p);
  return cached_local(lattice, p)->represents(n);
}

bool primitively_represented_over_zp(const GramLattice& lattice, Int n, Int p) {
  check_prime(p);
  return cached_local(lattice, p)->represents_primitively(n);
}

int lifting_exponent(const GramLattice& lattice, Int n, Int p) {
  const int vd = valuation(2 * discriminant(lattice), p);
  return std::max(valuation(2 * n, p) + vd + 3, valuation(n, p) + 2 * vd + 1);
}

namespace {

struct DigitSearch {
  const GramLattice& lattice;
  Int n;
  Int p;
  int k;
  bool primitive;
  Vec x;

  bool level(int j, Int pj) {
    if (j == k) return true;
    const Int next = pj * p;
    const std::size_t r = lattice.rank();
    Vec digits(r, 0);
    const Vec base = x;
    while (true) {
      bool skip = primitive && j == 0 &&
                  std::all_of(digits.begin(), digits.end(), [](Int d) { return d == 0; });
      if (!skip) {
        for (std::size_t i = 0; i < r; ++i) x[i] = base[i] + digits[i] * pj;
        Int q = 0;
        for (std::size_t i = 0; i < r; ++i) {
          Int row = 0;
          for (std::size_t l = 0; l < r; ++l)
            row = mod(row + mulmod(mod(lattice(i, l), next), x[l], next), next);
          q = mod(q + mulmod(row, x[i], next), next);
        }
        if (q == mod(n, next) && level(j + 1, next)) return true;
      }
      std::size_t i = 0;
      while (i < r && ++digits[i] == p) digits[i++] = 0;
      if (i == r) break;
    }
    x = base;
    return false;
  }
};

}  // namespace

bool represented_mod_pk(const GramLattice& lattice, Int n, Int p, int k, bool primitive) {
  check_prime(p);
  if (k < 1) throw DomainError("modulus exponent must be >= 1");
  bounded_power(p, k);
  DigitSearch search{lattice, n, p, k, primitive, Vec(lattice.rank(), 0)};
  return search.level(0, 1);
}

bool genus_represents(const GramLattice& lattice, Int n) {
  if (n < 1) throw DomainError("genus_represents needs n >= 1");
  const Int det = discriminant(lattice);
  if (lattice.rank() == 1) {
    const Int a = lattice(0, 0);
    return n % a == 0 && is_square(n / a);
  }
  Int relevant = checked_mul(2, det);
  if (lattice.rank() == 2) relevant = checked_mul(relevant, n);
  for (Int p : prime_divisors(relevant))
    if (!represented_over_zp(lattice, n, p)) return false;
  return true;
}

bool ExcludedFamily::contains(Int n) const {
  if (n < 1) return false;
  const int v = valuation(n, prime);
  switch (rule) {
    case Exponent::Odd:
      if (v % 2 == 0) return false;
      break;
    case Exponent::Even:
      if (v % 2 != 0) return false;
      break;
    case Exponent::Exactly:
      if (v != exponent) return false;
      break;
  }
  Int m = n;
  for (int i = 0; i < v; ++i) m /= prime;
  return std::find(residues.begin(), residues.end(), mod(m, modulus)) != residues.end();
}

std::string ExcludedFamily::describe() const {
  std::string e = rule == Exponent::Odd    ? "odd"
                  : rule == Exponent::Even ? "even"
                                           : std::to_string(exponent);
  std::string rs;
  for (Int r : residues) rs += (rs.empty() ? "" : ",") + std::to_string(r);
  return std::to_string(prime) + "^(" + e + ")*m, m mod " + std::to_string(modulus) + " in {" + rs + "}";
}

GenusPredicate genus_predicate(CoreLabel label) {
  using E = ExcludedFamily::Exponent;
  switch (label) {
    case CoreLabel::N1:
    case CoreLabel::N5: return {label, true, {{2, E::Odd, 0, 8, {7}}}};
    case CoreLabel::N3: return {label, true, {{2, E::Odd, 0, 8, {5}}}};
    case CoreLabel::N4: return {label, true, {{7, E::Odd, 0, 7, {3, 5, 6}}}};
    case CoreLabel::N6: return {label, true, {{2, E::Even, 0, 8, {7}}}};
    case CoreLabel::N7: return {label, true, {{5, E::Odd, 0, 5, {2, 3}}}};
    case CoreLabel::N9:
      // 17^odd * m is excluded for m a nonzero square mod 17: N9 misses 34
      // but represents 102 = Q(3, -6, 2).
      return {label, true,
              {{2, E::Exactly, 0, 1, {0}}, {17, E::Odd, 0, 17, {1, 2, 4, 8, 9, 13, 15, 16}}}};
    case CoreLabel::N10:
      return {label, true, {{3, E::Exactly, 1, 3, {1, 2}}, {5, E::Odd, 0, 5, {1, 4}}}};
    case CoreLabel::N2:
    case CoreLabel::N8: return {label, false, {}};
    default: break;
  }
  throw DomainError("no genus predicate for core " + std::string(to_string(label)));
}

bool core_gen_predicate(CoreLabel label, Int n, const Corpus& corpus) {
  if (n < 1) throw DomainError("core_gen_predicate needs n >= 1");
  GenusPredicate pred = genus_predicate(label);
  if (!pred.closed_form) return genus_represents(corpus.core_gram(label), n);
  return std::none_of(pred.excluded.begin(), pred.excluded.end(),
                      [&](const ExcludedFamily& f) { return f.contains(n); });
}

}  // namespace qform
