#include <algorithm>
#include <chrono>
#include <map>
#include <sstream>

#include "qform/enumerate.hpp"
#include "qform/isometry.hpp"
#include "qform/local.hpp"
#include "qform/parallel.hpp"
#include "qform/transform.hpp"
#include "qform/verify.hpp"

namespace qform {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string join(const std::vector<Int>& values, const char* sep = ",") {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? sep : "") << values[i];
  return out.str();
}

std::string braces(const std::vector<Int>& values) { return "{" + join(values) + "}"; }

Int vec_gcd(const Vec& v) { return gcd(std::span<const Int>(v)); }

// First vector of norm n (center-out order) accepted by `keep`.
std::optional<Vec> find_vector(const NormEnumerator& e, Int n, const std::function<bool(const Vec&)>& keep) {
  std::optional<Vec> hit;
  e.for_each(
      n,
      [&](const Vec& v) {
        if (!keep(v)) return true;
        hit = v;
        return false;
      },
      WalkOrder::CenterOut);
  return hit;
}

bool contains(const std::vector<Int>& sorted, Int n) { return std::binary_search(sorted.begin(), sorted.end(), n); }

struct Attempt {
  std::optional<Vec> witness;
  Int multiplier = 0;
};

Attempt run_branch(const TheoremRecipe& recipe, const RecipeBranch& branch, const NormEnumerator& core, Int n) {
  const std::size_t dim = recipe.ambient.rank();
  for (Int u : branch.multipliers) {
    const Int shifted = n - checked_mul(recipe.k, checked_mul(u, u));
    if (shifted < 0) continue;
    std::optional<Vec> found;
    core.for_each(
        shifted,
        [&](const Vec& b) {
          if (branch.side && !branch.side(b)) return true;
          for (Int sign : {Int{1}, Int{-1}}) {
            if (sign < 0 && (!recipe.signed_multiplier || u == 0)) break;
            Vec x(dim, 0);
            for (std::size_t i = 0; i < dim; ++i) {
              Int acc = checked_mul(sign * u, recipe.generator[i]);
              for (std::size_t j = 0; j < b.size(); ++j) acc = checked_add(acc, checked_mul(recipe.core_basis(i, j), b[j]));
              x[i] = acc;
            }
            if (recipe.ambient.norm(x) != n) {
              throw RecipeError(recipe.id + ": assembled vector has the wrong norm at n = " + std::to_string(n));
            }
            if (vec_gcd(x) == 1) {
              found = std::move(x);
              return false;
            }
          }
          return true;
        },
        WalkOrder::CenterOut);
    if (found) return {found, u};
  }
  return {};
}

void validate_recipe(const TheoremRecipe& r) {
  const std::size_t dim = r.ambient.rank();
  if (r.core_basis.rows() != dim || r.generator.size() != dim || r.core_basis.cols() + 1 != dim) {
    throw RecipeError(r.id + ": core basis and generator do not fit the ambient lattice");
  }
  for (std::size_t j = 0; j < r.core_basis.cols(); ++j) {
    if (r.ambient.pairing(r.core_basis.column(j), r.generator) != 0) {
      throw RecipeError(r.id + ": generator is not orthogonal to the core");
    }
  }
  if (r.ambient.norm(r.generator) != r.k) {
    throw RecipeError(r.id + ": generator norm " + std::to_string(r.ambient.norm(r.generator)) +
                      " differs from k = " + std::to_string(r.k));
  }
}

}  // namespace

VerificationReport check_theorem_recipe(const TheoremRecipe& recipe, Int lo, Int hi, CheckOptions options) {
  Stopwatch clock;
  validate_recipe(recipe);
  if (lo < 1 || hi < lo) throw DomainError("recipe window must satisfy 1 <= lo <= hi");

  VerificationReport report;
  report.check_id = "recipe:" + recipe.id;
  report.lo = lo;
  report.hi = hi;
  report.param("form", recipe.form_id);
  report.param("core", std::string(to_string(recipe.core)));
  report.param("k", std::to_string(recipe.k));
  report.param("threshold", std::to_string(recipe.threshold));
  report.param("kind", recipe.analogous ? "analogous" : "transcribed");
  for (const auto& [key, value] : recipe.notes) report.param(key, value);

  const NormEnumerator core(recipe.core_gram());
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  struct Outcome {
    std::size_t branch = 0;
    Attempt attempt;
  };
  std::vector<Outcome> outcomes(count);
  parallel_for(count, options.workers, [&](std::size_t i) {
    const Int n = lo + static_cast<Int>(i);
    std::optional<std::size_t> chosen;
    for (std::size_t b = 0; b < recipe.branches.size(); ++b) {
      if (!recipe.branches[b].applies(n)) continue;
      if (chosen) throw RecipeError(recipe.id + ": overlapping guards at n = " + std::to_string(n));
      chosen = b;
    }
    if (!chosen) throw RecipeError(recipe.id + ": no guard applies to n = " + std::to_string(n));
    outcomes[i] = {*chosen, run_branch(recipe, recipe.branches[*chosen], core, n)};
  });

  for (std::size_t i = 0; i < count; ++i) {
    const Int n = lo + static_cast<Int>(i);
    const auto& [b, attempt] = outcomes[i];
    const std::string where = "branch " + std::to_string(b + 1) + ": " + recipe.branches[b].describe();
    const bool claimed = contains(recipe.claimed_exceptions, n);
    if (attempt.witness) {
      if (claimed) report.fail({"claimed-exception", n, "recipe assembled a primitive vector", attempt.witness});
      continue;
    }
    if (claimed) {
      if (auto w = represents_primitively(recipe.ambient, n)) {
        report.fail({"claimed-exception", n, "lattice represents the claimed exception", w->coords});
      } else {
        report.notes.push_back({"certified-exception", n, where + "; no primitive vector of this norm exists",
                                std::nullopt});
      }
    } else if (n < recipe.threshold) {
      report.notes.push_back({"below-threshold", n, where, std::nullopt});
    } else {
      report.fail({"assembly", n, where + "; no admissible core vector", std::nullopt});
    }
  }
  report.wall_time_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// Lemma oracles

namespace {

VerificationReport regular_on_classes(const std::string& id, CoreLabel label,
                                      const std::vector<std::pair<Int, Int>>& classes,
                                      const std::vector<std::pair<Int, Int>>& control, Int bound,
                                      const Corpus& corpus) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = id;
  report.lo = 1;
  report.hi = bound;
  report.param("core", std::string(to_string(label)));
  const GramLattice& lattice = corpus.core_gram(label);
  auto in_any = [](Int n, const std::vector<std::pair<Int, Int>>& set) {
    return std::any_of(set.begin(), set.end(), [n](auto c) { return mod(n, c.first) == c.second; });
  };
  std::size_t checked = 0;
  for (Int n = 1; n <= bound; ++n) {
    const bool asserted = in_any(n, classes);
    const bool controlled = !asserted && in_any(n, control);
    if (!asserted && !controlled) continue;
    if (!core_gen_predicate(label, n, corpus)) continue;
    auto w = represents(lattice, n);
    if (asserted) {
      ++checked;
      if (!w) report.fail({"represents", n, "locally represented but not represented", std::nullopt});
    } else if (!w) {
      report.notes.push_back({"control", n, "outside the asserted classes: locally but not globally represented",
                              std::nullopt});
    }
  }
  report.param("checked", std::to_string(checked));
  report.wall_time_ms = clock.ms();
  return report;
}

}  // namespace

VerificationReport check_lemma_core1(Int bound, const Corpus& corpus) {
  return regular_on_classes("lemma:core1", CoreLabel::N4, {{3, 0}, {3, 2}, {4, 0}, {4, 1}}, {{3, 1}}, bound,
                            corpus);
}

VerificationReport check_lemma_core2(Int bound, const Corpus& corpus) {
  return regular_on_classes("lemma:core2", CoreLabel::N10, {{3, 0}, {3, 2}, {4, 0}, {4, 3}}, {{3, 1}}, bound,
                            corpus);
}

VerificationReport check_lemma_123(Int bound) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = "lemma:123";
  report.lo = 1;
  report.hi = bound;
  const NormEnumerator e(GramLattice::diagonal({1, 2, 3}));
  for (Int n = 1; n <= bound; ++n) {
    const Int r = mod(n, 8);
    if (r != 4 && r != 6) continue;
    if (!find_vector(e, n, [](const Vec& a) { return a[0] % 2 != 0 && a[2] % 2 != 0; })) {
      report.fail({"odd-pair", n, "no vector with a1 and a3 odd", std::nullopt});
    }
  }
  report.wall_time_ms = clock.ms();
  return report;
}

static bool lemma124_classes(Int n) {
  return mod(n, 8) == 4 || mod(n, 16) == 6 || mod(n, 32) == 8 || mod(n, 32) == 16;
}

VerificationReport check_lemma_124(Int bound) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = "lemma:124";
  report.lo = 1;
  report.hi = bound;
  const NormEnumerator e(GramLattice::diagonal({1, 2, 4}));
  std::size_t both_count = 0;
  for (Int n = 1; n <= bound; ++n) {
    bool z_odd = false, z_even = false;
    e.for_each(n, [&](const Vec& v) {
      (v[2] % 2 != 0 ? z_odd : z_even) = true;
      return !(z_odd && z_even);
    });
    if (!z_odd && !z_even) continue;
    const bool both = z_odd && z_even;
    both_count += both ? 1 : 0;
    if (both != lemma124_classes(n)) {
      report.fail({both ? "if" : "only-if", n,
                   both ? "both parities occur outside the stated classes"
                        : std::string("only z ") + (z_odd ? "odd" : "even") + " occurs inside the stated classes",
                   std::nullopt});
    }
  }
  report.param("both_parities", std::to_string(both_count));
  report.wall_time_ms = clock.ms();
  return report;
}

VerificationReport check_lemma_125(Int bound) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = "lemma:125";
  report.lo = 1;
  report.hi = bound;
  const NormEnumerator e(GramLattice::diagonal({1, 2, 5}));
  const ExcludedFamily excluded{5, ExcludedFamily::Exponent::Odd, 0, 5, {2, 3}};
  std::size_t skipped = 0;
  for (Int n = 8; n <= bound; ++n) {
    const Int r = mod(n, 8);
    if (r != 0 && r != 6) continue;
    if (excluded.contains(n)) {
      ++skipped;
      continue;
    }
    const Vec target = r == 0 ? Vec{1, 1, 1} : Vec{1, 0, 1};
    auto hit = find_vector(e, n, [&](const Vec& a) {
      for (std::size_t i = 0; i < 3; ++i) {
        if (mod(a[i], 2) != target[i]) return false;
      }
      return true;
    });
    if (!hit) {
      report.fail({r == 0 ? "case-0-mod-8" : "case-6-mod-8", n,
                   "no vector congruent to (" + join(target) + ") mod 2", std::nullopt});
    }
  }
  report.param("excluded_skipped", std::to_string(skipped));
  report.wall_time_ms = clock.ms();
  return report;
}

VerificationReport check_oy_substitution(Int bound) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = "lemma:oy";
  report.lo = 1;
  report.hi = bound;
  const NormEnumerator e(GramLattice::diagonal({2, 1}));
  std::size_t eligible = 0;
  for (Int value = 1; value <= bound; ++value) {
    if (value % 9 != 0) continue;
    if (!find_vector(e, value, [](const Vec& v) { return v[0] % 3 == 0 && v[1] % 3 == 0; })) continue;
    ++eligible;
    if (!find_vector(e, value, [](const Vec& v) { return v[0] % 3 != 0 && v[1] % 3 != 0; })) {
      report.fail({"substitution", value, "every 2b1^2 + b3^2 representation has 3 | b1*b3", std::nullopt});
    }
  }
  report.param("eligible", std::to_string(eligible));
  report.wall_time_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// Watson transformation

const std::vector<WatsonPair>& table2_pairs() {
  static const std::vector<WatsonPair> pairs = [] {
    const std::vector<std::pair<const char*, const char*>> raw = {
        {"Q24^6", "Q6^3"},   {"Q40^2", "Q10^2"},  {"Q40^1", "Q10^3"},  {"Q52^3", "Q13^2"},
        {"Q56^1", "Q14^3"},  {"Q68^3", "Q17^3"},  {"Q72^1", "Q18^3"},  {"Q72^3", "Q18^5"},
        {"Q80^3", "Q20^4"},  {"Q88^1", "Q22^2"},  {"Q88^3", "Q22^4"},  {"Q92^2", "Q23^2"},
        {"Q96^2", "Q24^3"},  {"Q104^1", "Q26^2"}, {"Q24^1", "Q6^1"},   {"Q28^1", "Q7^1"},
        {"Q60^1", "Q15^3"},  {"Q80^1", "Q20^2"},
    };
    std::vector<WatsonPair> out;
    for (auto [s, t] : raw) out.push_back({parse_form_id(s), parse_form_id(t)});
    return out;
  }();
  return pairs;
}

static std::string render_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) out << (i ? "," : "") << '[' << join(m.row(i)) << ']';
  out << ']';
  return out.str();
}

VerificationReport check_watson_lemma(const WatsonPair& pair, Int bound, const Corpus& corpus,
                                      CheckOptions options) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = "watson:" + to_string(pair.source) + "->" + to_string(pair.target);
  report.lo = 1;
  report.hi = bound;
  const GramLattice source = corpus.find(pair.source).gram();
  const GramLattice target = corpus.find(pair.target).gram();
  const GramLattice image = lambda2(source);
  report.param("lambda2", render_matrix(image.gram()));

  if (auto w = is_isometric(image, target)) {
    report.param("isometry", render_matrix(w->matrix));
  } else {
    report.fail({"a", 0, "lambda2 of the source is not isometric to the target", std::nullopt});
  }

  const ScanOptions scan{.workers = options.workers};
  const auto source_missing = exception_scan(source, 2 * bound, scan).missing;
  const auto image_missing = exception_scan(image, bound, scan).missing;
  std::vector<Int> halved;
  for (Int m : source_missing) {
    if (m % 2 == 0) halved.push_back(m / 2);
  }
  for (Int m : image_missing) {
    if (!contains(halved, m)) {
      auto w = represents_primitively(source, 2 * m);
      report.fail({"b", m, "2m is primitively represented by the source but m is missed by lambda2",
                   w ? std::optional<Vec>(w->coords) : std::nullopt});
    }
  }
  report.notes.push_back({"b", 0, "E(lambda2*) = " + braces(image_missing) + ", {m : 2m in E(L*)} = " + braces(halved),
                          std::nullopt});

  const std::size_t rank = unimodular_rank(source, 2);
  report.param("unimodular_rank_2", std::to_string(rank));
  if (rank > 2) report.fail({"c", 0, "2-adic unimodular rank exceeds 2", std::nullopt});
  report.wall_time_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// Tables

namespace {

std::string transcript(const GramLattice& lattice, Int n) {
  auto all = vectors_with_norm(lattice, n);
  std::ostringstream out;
  out << all.size() << " vectors of norm " << n << ", none primitive";
  for (const auto& w : all) out << "; (" << join(w.coords, " ") << ") gcd " << vec_gcd(w.coords);
  return out.str();
}

}  // namespace

VerificationReport reproduce_tables(Int bound, const Corpus& corpus, CheckOptions options) {
  Stopwatch clock;
  VerificationReport report;
  report.check_id = "tables";
  report.lo = 1;
  report.hi = bound;
  const auto& records = corpus.records;
  std::vector<ExceptionScan> scans(records.size());
  parallel_for(records.size(), options.workers,
               [&](std::size_t i) { scans[i] = exception_scan(records[i].gram(), bound); });

  std::size_t pu = 0, apu = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const FormRecord& record = records[i];
    (is_primitively_universal(record.status) ? pu : apu) += 1;
    std::vector<Int> expected;
    for (Int n : record.exceptions) {
      if (n <= bound) expected.push_back(n);
    }
    const auto& missing = scans[i].missing;
    if (missing == expected) continue;
    const GramLattice lattice = record.gram();
    for (Int n : missing) {
      if (!contains(expected, n)) report.fail({record.name(), n, "unexpected exception: " + transcript(lattice, n), std::nullopt});
    }
    for (Int n : expected) {
      if (!contains(missing, n)) {
        auto w = represents_primitively(lattice, n);
        report.fail({record.name(), n, "claimed exception is primitively represented",
                     w ? std::optional<Vec>(w->coords) : std::nullopt});
      }
    }
  }
  report.param("pu_forms", std::to_string(pu));
  report.param("apu_forms", std::to_string(apu));
  report.wall_time_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// Suites

Suite parse_suite(std::string_view text) {
  if (text == "watson") return Suite::Watson;
  if (text == "lemmas") return Suite::Lemmas;
  if (text == "recipes") return Suite::Recipes;
  if (text == "tables") return Suite::Tables;
  if (text == "all") return Suite::All;
  throw ParseError("unknown suite '" + std::string(text) + "'");
}

std::vector<VerificationReport> run_suite(Suite suite, const SuiteOptions& options, const Corpus& corpus) {
  std::vector<VerificationReport> out;
  const CheckOptions check{options.workers};
  const bool all = suite == Suite::All;
  if (suite == Suite::Tables || all) {
    out.push_back(reproduce_tables(options.bound.value_or(kDefaultTableBound), corpus, check));
  }
  if (suite == Suite::Watson || all) {
    const Int bound = options.bound.value_or(kDefaultWatsonBound);
    for (const auto& pair : table2_pairs()) out.push_back(check_watson_lemma(pair, bound, corpus, check));
  }
  if (suite == Suite::Lemmas || all) {
    const Int bound = options.bound.value_or(kDefaultLemmaBound);
    out.push_back(check_lemma_core1(bound, corpus));
    out.push_back(check_lemma_core2(bound, corpus));
    out.push_back(check_lemma_123(bound));
    out.push_back(check_lemma_124(bound));
    out.push_back(check_lemma_125(bound));
    out.push_back(check_oy_substitution(bound));
  }
  if (suite == Suite::Recipes || all) {
    const auto [lo, hi] = options.window.value_or(std::pair{kDefaultWindowLo, kDefaultWindowHi});
    const RecipeCatalog catalog = recipe_catalog(corpus);
    for (const auto& r : catalog.transcribed) {
      out.push_back(guard_partition_report(r, r.threshold, r.threshold + 10000));
      out.push_back(check_theorem_recipe(r, lo, hi, check));
    }
    for (const auto& r : catalog.family124) {
      out.push_back(guard_partition_report(r, r.threshold + 1, r.threshold + 10000));
      out.push_back(check_theorem_recipe(r, r.threshold + 1, r.threshold + kFamily124Span, check));
    }
    for (const auto& r : catalog.analogous) out.push_back(check_theorem_recipe(r, lo, hi, check));
  }
  return out;
}

}  // namespace qform
