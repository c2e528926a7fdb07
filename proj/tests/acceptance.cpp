// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every comparison is exact; the only tolerances are the wall-clock budgets.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>

#include "oracles.hpp"
#include "qform/corpus.hpp"
#include "qform/enumerate.hpp"
#include "qform/isometry.hpp"
#include "qform/local.hpp"
#include "qform/transform.hpp"
#include "qform/verify.hpp"

using namespace qform;

namespace {

constexpr Int kTableBound = 10000;
constexpr Int kWatsonBound = 2000;
constexpr Int kLemmaBound = 3000;
constexpr Int kGenusBound = 3000;
constexpr int kStabilityCases = 500;
constexpr Int kWindowLo = 100000;
constexpr Int kWindowHi = 100500;
constexpr Int kPartitionHi = 110000;
constexpr std::size_t kFamilyInstances = 29;
constexpr int kEnumerationCases = 200;
constexpr Int kEnumerationMaxN = 200;
constexpr Int kThetaBound = 16;
constexpr std::size_t kDiscrepancies = 0;  // allowed mismatches, every criterion

// Budgets in seconds.
constexpr double kBudgetTables = 300;
constexpr double kBudgetWatson = 60;
constexpr double kBudgetLemmas = 120;
constexpr double kBudgetLocal = 120;
constexpr double kBudgetRecipes = 180;
constexpr double kBudgetEnumeration = 120;

unsigned workers = 8;
int failures = 0;

struct Outcome {
  std::size_t discrepancies = 0;
  std::string detail;
};

void criterion(int id, const char* name, double budget, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {1, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = o.discrepancies == kDiscrepancies && secs <= budget;
  if (!ok) ++failures;
  std::printf("%s criterion %d (%s): discrepancies=%zu (allowed %zu), time=%.1fs (budget %.0fs)%s%s\n",
              ok ? "PASS" : "FAIL", id, name, o.discrepancies, kDiscrepancies, secs, budget,
              o.detail.empty() ? "" : "; ", o.detail.c_str());
  std::fflush(stdout);
}

std::size_t failed(const std::vector<VerificationReport>& reports, std::string& detail) {
  std::size_t bad = 0;
  for (const auto& r : reports) {
    if (r.passed && r.counterexamples.empty()) continue;
    ++bad;
    detail += r.check_id + " failed; ";
  }
  return bad;
}

Outcome tables() {
  Outcome o;
  const Corpus& c = embedded_corpus();
  const auto rep = reproduce_tables(kTableBound, c, {workers});
  o.discrepancies += rep.counterexamples.size();
  if (!rep.passed && rep.counterexamples.empty()) ++o.discrepancies;
  if (c.count_pu() != kExpectedPu || c.count_apu() != kExpectedApu || c.records.size() != 152) {
    ++o.discrepancies;
    o.detail += "corpus totals differ; ";
  }
  // Spot rows checked through the independent path as well.
  if (exception_scan(c.find({95, 1}).gram(), kTableBound, {.workers = workers}).missing != Vec{4, 12, 25}) {
    ++o.discrepancies;
    o.detail += "Q95^1 row; ";
  }
  o.detail += std::to_string(c.count_pu()) + " PU + " + std::to_string(c.count_apu()) + " APU forms at bound " +
              std::to_string(kTableBound);
  return o;
}

Outcome watson() {
  Outcome o;
  const Corpus& c = embedded_corpus();
  std::vector<VerificationReport> reports;
  for (const auto& pair : table2_pairs()) reports.push_back(check_watson_lemma(pair, kWatsonBound, c, {workers}));
  o.discrepancies += failed(reports, o.detail);
  if (reports.size() != 18) ++o.discrepancies;
  for (const auto& pair : table2_pairs()) {
    const auto lam = lambda2(c.find(pair.source).gram());
    const auto target = c.find(pair.target).gram();
    const auto w = is_isometric(lam, target);
    const Wide d = w ? determinant(w->matrix) : 0;
    if (!w || congruence(lam.gram(), w->matrix) != target.gram() || (d != 1 && d != -1)) {
      ++o.discrepancies;
      o.detail += "witness " + to_string(pair.source) + "; ";
    }
  }
  // E(lambda2(Q80^1)*) = {12} and E(Q80^1*) = {24}.
  const auto q80 = c.find({80, 1}).gram();
  if (exception_scan(lambda2(q80), kWatsonBound).missing != Vec{12} ||
      exception_scan(q80, 2 * kWatsonBound).missing != Vec{24}) {
    ++o.discrepancies;
    o.detail += "Q80^1 mapping; ";
  }
  o.detail += "18 relations, m <= " + std::to_string(kWatsonBound) + ", {24} -> {12}";
  return o;
}

Outcome lemmas() {
  Outcome o;
  std::vector<VerificationReport> reports = {check_lemma_core1(kLemmaBound), check_lemma_core2(kLemmaBound),
                                             check_lemma_123(kLemmaBound), check_lemma_124(kLemmaBound),
                                             check_lemma_125(kLemmaBound)};
  o.discrepancies += failed(reports, o.detail);
  o.detail += "core1 core2 123 124(iff) 125 at bound " + std::to_string(kLemmaBound);
  return o;
}

Outcome local() {
  Outcome o;
  const Corpus& c = embedded_corpus();
  for (CoreLabel label : {CoreLabel::N1, CoreLabel::N3, CoreLabel::N4, CoreLabel::N5, CoreLabel::N7,
                          CoreLabel::N9, CoreLabel::N10})
    for (Int n = 1; n <= kGenusBound; ++n)
      if (core_gen_predicate(label, n) != genus_represents(c.core_gram(label), n)) {
        if (o.discrepancies++ < 5) o.detail += std::string(to_string(label)) + " n=" + std::to_string(n) + "; ";
      }

  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<Int> n_dist(1, 64);
  std::uniform_int_distribution<int> rank_dist(2, 4);
  const std::array<Int, 3> primes{2, 3, 5};
  int cases = 0, draws = 0, negatives = 0;
  std::array<int, 5> by_rank{};
  while (cases < kStabilityCases) {
    ++draws;
    const auto l = oracle::random_lattice(rng, static_cast<std::size_t>(rank_dist(rng)), 4);
    const Int p = primes[static_cast<std::size_t>(draws) % 3];
    const Int n = n_dist(rng);
    const int k = lifting_exponent(l, n, p);
    if (std::pow(static_cast<double>(p), (k + 1) * static_cast<double>(l.rank() - 1)) > 4e6) continue;
    for (bool prim : {false, true}) {
      const bool at_k = represented_mod_pk(l, n, p, k, prim);
      const bool at_k1 = represented_mod_pk(l, n, p, k + 1, prim);
      const bool zp = prim ? primitively_represented_over_zp(l, n, p) : represented_over_zp(l, n, p);
      if (at_k != at_k1 || at_k != zp) ++o.discrepancies;
      negatives += !zp;
    }
    ++by_rank[l.rank()];
    ++cases;
  }
  o.detail += "7 cores n <= " + std::to_string(kGenusBound) + ", " + std::to_string(cases) +
              " K/K+1 cases (rank 2/3/4: " + std::to_string(by_rank[2]) + "/" + std::to_string(by_rank[3]) + "/" +
              std::to_string(by_rank[4]) + ", " + std::to_string(negatives) + " negative answers)";
  return o;
}

Outcome recipes() {
  Outcome o;
  const auto reports = run_suite(Suite::Recipes, {.window = std::pair{kWindowLo, kWindowHi}, .workers = workers});
  o.discrepancies += failed(reports, o.detail);
  const auto catalog = recipe_catalog();
  for (const auto& r : catalog.transcribed) {
    try {
      check_guard_partition(r, kWindowLo, kPartitionHi);
    } catch (const RecipeError& e) {
      ++o.discrepancies;
      o.detail += e.what() + std::string("; ");
    }
  }
  if (catalog.family124.size() != kFamilyInstances) {
    ++o.discrepancies;
    o.detail += "family instances " + std::to_string(catalog.family124.size()) + "; ";
  }
  o.detail += std::to_string(catalog.transcribed.size()) + " transcribed on [" + std::to_string(kWindowLo) + ", " +
              std::to_string(kWindowHi) + "], " + std::to_string(catalog.family124.size()) +
              " family instances above 4s^2t, " + std::to_string(catalog.analogous.size()) + " analogous";
  return o;
}

Outcome enumeration() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  std::uniform_int_distribution<int> rank_dist(1, 4);
  std::uniform_int_distribution<Int> n_dist(0, kEnumerationMaxN);
  for (int t = 0; t < kEnumerationCases; ++t) {
    const auto l = oracle::random_lattice(rng, static_cast<std::size_t>(rank_dist(rng)), 6);
    const Int n = n_dist(rng);
    std::vector<Vec> got;
    for (const auto& w : vectors_with_norm(l, n)) got.push_back(w.coords);
    if (got != oracle::box_search(l, n)) ++o.discrepancies;
  }
  // Isometric pairs: the lambda2 relations plus random basis changes.
  std::vector<std::pair<GramLattice, GramLattice>> pairs;
  for (const auto& p : table2_pairs())
    pairs.emplace_back(lambda2(embedded_corpus().find(p.source).gram()), embedded_corpus().find(p.target).gram());
  std::uniform_int_distribution<Int> coef(-2, 2);
  for (int t = 0; t < 30; ++t) {
    const auto l = oracle::random_lattice(rng, 2 + t % 3, 5);
    IntMatrix u = IntMatrix::identity(l.rank());
    for (std::size_t j = 1; j < l.rank(); ++j)
      for (std::size_t r = 0; r < l.rank(); ++r) u(r, j) += coef(rng) * u(r, j - 1);
    pairs.emplace_back(l, GramLattice(congruence(l.gram(), u)));
  }
  std::size_t witnesses = 0;
  for (const auto& [a, b] : pairs) {
    const auto w = is_isometric(a, b);
    if (!w || congruence(a.gram(), w->matrix) != b.gram()) {
      ++o.discrepancies;
      continue;
    }
    ++witnesses;
    for (Int n = 0; n <= kThetaBound; ++n)
      if (oracle::box_search(a, n).size() != oracle::box_search(b, n).size()) ++o.discrepancies;
  }
  o.detail += std::to_string(kEnumerationCases) + " random cases n <= " + std::to_string(kEnumerationMaxN) + ", " +
              std::to_string(witnesses) + " isometry witnesses, counts n <= " + std::to_string(kThetaBound);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--workers") == 0) workers = static_cast<unsigned>(std::max(1, std::atoi(argv[i + 1])));

  criterion(1, "table reproduction", kBudgetTables, tables);
  criterion(2, "watson relations", kBudgetWatson, watson);
  criterion(3, "lemma oracles", kBudgetLemmas, lemmas);
  criterion(4, "local/genus equivalence", kBudgetLocal, local);
  criterion(5, "theorem recipes", kBudgetRecipes, recipes);
  criterion(6, "enumeration soundness", kBudgetEnumeration, enumeration);
  std::printf("%d/6 criteria passed\n", 6 - failures);
  return failures == 0 ? 0 : 1;
}
