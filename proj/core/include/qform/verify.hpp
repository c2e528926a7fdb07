#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qform/corpus.hpp"
#include "qform/forms.hpp"

namespace qform {

struct Finding {
  std::string step;  // which part of the check produced it
  Int n = 0;         // offending integer (0 when not applicable)
  std::string detail;
  std::optional<Vec> witness;
};

struct VerificationReport {
  std::string check_id;
  std::vector<std::pair<std::string, std::string>> params;
  Int lo = 0;
  Int hi = 0;
  bool passed = true;
  std::vector<Finding> counterexamples;
  /// Observations that do not affect `passed` (certified exceptions,
  /// out-of-scope controls, observed exception mappings).
  std::vector<Finding> notes;
  double wall_time_ms = 0.0;

  void fail(Finding f) {
    counterexamples.push_back(std::move(f));
    passed = false;
  }
  void param(std::string key, std::string value) { params.emplace_back(std::move(key), std::move(value)); }
};

// ---------------------------------------------------------------------------
// Theorem recipes

/// n mod modulus in residues (or not in, when negated).
struct Congruence {
  Int modulus = 1;
  std::vector<Int> residues;
  bool negated = false;

  bool holds(Int n) const;
  std::string describe() const;
};

using SideCondition = std::function<bool(const Vec& core_coords)>;

struct RecipeBranch {
  std::vector<Congruence> guard;  // conjunction
  /// Candidate multipliers u with ñ = n - k u², tried in order; the branch
  /// succeeds if any of them assembles a primitive vector.
  std::vector<Int> multipliers;
  SideCondition side;  // empty = no side condition
  std::string side_text;

  bool applies(Int n) const;
  std::string describe() const;
};

/// Assembly x = C b ± u g of a representation of n from a representation b
/// of ñ = n - k u² by the core (columns of C) and the complement generator g.
struct TheoremRecipe {
  std::string id;       // e.g. "Q34^3" or "thm124:Q18^5"
  std::string form_id;  // corpus id of the form
  CoreLabel core;
  GramLattice ambient;  // Gram matrix in the basis the branch table refers to
  IntMatrix core_basis;
  Vec generator;
  Int k = 0;
  bool signed_multiplier = false;  // try both x+ and x-
  Int threshold = 100000;
  bool analogous = false;  // generic reuse, not transcribed from a proof
  std::vector<Int> claimed_exceptions;
  std::vector<RecipeBranch> branches;
  std::vector<std::pair<std::string, std::string>> notes;

  GramLattice core_gram() const;
};

/// Throws RecipeError unless exactly one branch applies to every n in
/// [lo, hi], or if the core/generator data is inconsistent.
void check_guard_partition(const TheoremRecipe& recipe, Int lo, Int hi);
VerificationReport guard_partition_report(const TheoremRecipe& recipe, Int lo, Int hi);

struct CheckOptions {
  unsigned workers = 1;
};

/// Runs the recipe on every n in [lo, hi]. Failures at claimed exceptions
/// that the lattice indeed misses are recorded as certified notes, failures
/// below the threshold as informational notes, and anything else as a
/// counterexample.
VerificationReport check_theorem_recipe(const TheoremRecipe& recipe, Int lo, Int hi,
                                        CheckOptions options = {});

/// Parameters of the ⟨1,2,4⟩-core family: x² + 2y² + 4z² + c w² + 2b zw + 2a yw.
struct Family124 {
  Int a = 0, b = 0, c = 0;
  Int s = 0;  // 2 when b is odd, 1 when a ≡ c ≡ 0 (mod 2) and b ≡ 2 (mod 4)
  Int t = 0;  // 4c - 2a² - b²
  Int threshold() const { return 4 * s * s * t; }
};

/// Generic recipe for the family; basis order x, y, z, w.
TheoremRecipe family124_recipe(const Family124& params);
/// Rewrites gram(record) in the family's shape if some primitive ⟨1,2,4⟩
/// core allows it. The returned recipe has its ambient Gram in the new basis.
std::optional<TheoremRecipe> family124_instance(const FormRecord& record);

/// Recipes transcribed from the proofs: Q34^3, Q45^1, Q15^1, Q19^2, Q47^1,
/// Q80^1, Q31^2, Q27^3.
std::vector<TheoremRecipe> transcribed_recipes(const Corpus& corpus = embedded_corpus());
/// Generic multiplier search reusing a form's core decomposition.
TheoremRecipe analogous_recipe(const FormRecord& record, const Corpus& corpus = embedded_corpus());

struct RecipeCatalog {
  std::vector<TheoremRecipe> transcribed;
  std::vector<TheoremRecipe> family124;  // instances above their 4s²t threshold
  std::vector<TheoremRecipe> analogous;
};
RecipeCatalog recipe_catalog(const Corpus& corpus = embedded_corpus());

// ---------------------------------------------------------------------------
// Lemma oracles

VerificationReport check_lemma_core1(Int bound, const Corpus& corpus = embedded_corpus());
VerificationReport check_lemma_core2(Int bound, const Corpus& corpus = embedded_corpus());
VerificationReport check_lemma_123(Int bound);
VerificationReport check_lemma_124(Int bound);
VerificationReport check_lemma_125(Int bound);
VerificationReport check_oy_substitution(Int bound);

// ---------------------------------------------------------------------------
// Watson transformation and tables

struct WatsonPair {
  FormId source;
  FormId target;
};

/// The 18 λ₂ relations (14 with a primitively universal image, 4 with an
/// almost universal one).
const std::vector<WatsonPair>& table2_pairs();

VerificationReport check_watson_lemma(const WatsonPair& pair, Int bound,
                                      const Corpus& corpus = embedded_corpus(),
                                      CheckOptions options = {});

/// Every PU record has no exception up to `bound`; every APU record's
/// exceptions up to `bound` are exactly its claimed set.
VerificationReport reproduce_tables(Int bound, const Corpus& corpus = embedded_corpus(),
                                    CheckOptions options = {});

// ---------------------------------------------------------------------------
// Suites

enum class Suite { Watson, Lemmas, Recipes, Tables, All };
Suite parse_suite(std::string_view text);

struct SuiteOptions {
  std::optional<Int> bound;
  std::optional<std::pair<Int, Int>> window;
  unsigned workers = 1;
};

inline constexpr Int kDefaultLemmaBound = 3000;
inline constexpr Int kDefaultTableBound = 10000;
inline constexpr Int kDefaultWatsonBound = 2000;
inline constexpr Int kDefaultWindowLo = 100000;
inline constexpr Int kDefaultWindowHi = 100500;
inline constexpr Int kFamily124Span = 500;

std::vector<VerificationReport> run_suite(Suite suite, const SuiteOptions& options,
                                          const Corpus& corpus = embedded_corpus());

// ---------------------------------------------------------------------------
// Serialization

enum class ReportFormat { Json, Csv, Text };
ReportFormat parse_report_format(std::string_view text);

struct RenderOptions {
  bool timing = true;  // include wall_time_ms
};

std::string render_reports(const std::vector<VerificationReport>& reports, ReportFormat format,
                           RenderOptions options = {});

}  // namespace qform
