#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qform/corpus.hpp"
#include "qform/forms.hpp"

namespace qform {

/// One Jordan component p^exponent · U of L ⊗ Z_p. Units are kept modulo
/// p^(precision - exponent). A 2-dimensional component (p = 2 only) is the
/// block 2^exponent [[a, b], [b, c]] with b odd and a, c even.
struct JordanComponent {
  int exponent = 0;
  std::size_t dim = 1;
  Int a = 1;
  Int b = 0;
  Int c = 0;
};

struct JordanDecomposition {
  Int p = 2;
  int precision = 0;  // entries were computed modulo p^precision
  std::vector<JordanComponent> components;
};

JordanDecomposition jordan_decomposition(const GramLattice& lattice, Int p);

/// Rank of the unimodular Jordan component at p (the rank of G mod p).
std::size_t unimodular_rank(const GramLattice& lattice, Int p);

/// Precomputed local structure of L at one prime.
class ZpLattice {
 public:
  ZpLattice(const GramLattice& lattice, Int p);

  Int prime() const { return p_; }
  const JordanDecomposition& jordan() const { return jordan_; }

  bool represents(Int n) const;
  bool represents_primitively(Int n) const;

 private:
  Int p_;
  JordanDecomposition jordan_;
  int modulus_bits_ = 0;            // p = 2: primitive values are tracked mod 2^bits
  std::vector<bool> primitive_values_;  // p = 2 only
};

/// Q(x) = n solvable over Z_p (n >= 1, p prime).
bool represented_over_zp(const GramLattice& lattice, Int n, Int p);
/// Same with x not in (pZ_p)^rank.
bool primitively_represented_over_zp(const GramLattice& lattice, Int n, Int p);

/// Exponent K = max(v_p(2n) + v_p(2 det) + 3, v_p(n) + 2 v_p(2 det) + 1) for
/// which solubility modulo p^K decides solubility over Z_p.
int lifting_exponent(const GramLattice& lattice, Int n, Int p);

/// Literal search: is Q(x) ≡ n (mod p^K) solvable (with x ≢ 0 mod p when
/// `primitive`)? Digit-by-digit lifting, exponential in K·rank; intended for
/// small cases. Throws OverflowError if p^K exceeds 2^62.
bool represented_mod_pk(const GramLattice& lattice, Int n, Int p, int k, bool primitive);

/// n in Q(gen L): represented over Z_p for every prime p. Only primes where
/// L_p can obstruct are tested: p | 2 det L for rank >= 3, p | 2 n det L for
/// rank 2; rank 1 is decided directly.
bool genus_represents(const GramLattice& lattice, Int n);

/// n = p^v m (p ∤ m) is excluded when v obeys the exponent rule and
/// m mod modulus lies in `residues`.
struct ExcludedFamily {
  enum class Exponent { Odd, Even, Exactly };
  Int prime = 2;
  Exponent rule = Exponent::Odd;
  int exponent = 0;  // for Exactly
  Int modulus = 1;
  std::vector<Int> residues;

  bool contains(Int n) const;
  std::string describe() const;
};

struct GenusPredicate {
  CoreLabel label;
  /// False when no closed form is known and membership falls back to
  /// genus_represents on the core Gram matrix.
  bool closed_form = true;
  std::vector<ExcludedFamily> excluded;
};

GenusPredicate genus_predicate(CoreLabel label);

/// n in Q(gen N_label), by trial division where a closed form exists.
bool core_gen_predicate(CoreLabel label, Int n, const Corpus& corpus = embedded_corpus());

}  // namespace qform
