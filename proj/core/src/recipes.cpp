#include <algorithm>
#include <sstream>

#include "qform/enumerate.hpp"
#include "qform/isometry.hpp"
#include "qform/transform.hpp"
#include "qform/verify.hpp"

namespace qform {

namespace {

bool odd(Int x) { return x % 2 != 0; }
bool even(Int x) { return x % 2 == 0; }

Congruence in(Int modulus, std::vector<Int> residues) { return {modulus, std::move(residues), false}; }
Congruence not_in(Int modulus, std::vector<Int> residues) { return {modulus, std::move(residues), true}; }
const Congruence kAll{1, {0}, false};

RecipeBranch branch(std::vector<Congruence> guard, std::vector<Int> multipliers,
                    SideCondition side = {}, std::string side_text = {}) {
  return {std::move(guard), std::move(multipliers), std::move(side), std::move(side_text)};
}

IntMatrix unit_columns(std::size_t dim, std::initializer_list<std::size_t> indices) {
  std::vector<Vec> cols;
  for (std::size_t i : indices) {
    Vec v(dim, 0);
    v[i] = 1;
    cols.push_back(std::move(v));
  }
  return IntMatrix::from_columns(cols);
}

TheoremRecipe make(std::string form_id, CoreLabel core, GramLattice ambient,
                   std::initializer_list<std::size_t> core_indices, Vec generator, Int k,
                   bool signed_multiplier) {
  TheoremRecipe r{form_id,
                  form_id,
                  core,
                  ambient,
                  unit_columns(ambient.rank(), core_indices),
                  std::move(generator),
                  k,
                  signed_multiplier,
                  100000,
                  false,
                  {},
                  {},
                  {}};
  return r;
}

TheoremRecipe recipe_q34_3() {
  auto r = make("Q34^3", CoreLabel::N9, GramLattice{{1, 0, 0, 0}, {0, 2, 1, 0}, {0, 1, 4, 2}, {0, 0, 2, 6}},
                {1, 2, 3}, {1, 0, 0, 0}, 1, false);
  r.branches = {
      branch({in(2, {1}), in(17, {0})}, {1}),
      branch({in(2, {1}), not_in(17, {0})}, {17}),
      branch({in(8, {0}), not_in(17, {4})}, {2}),
      branch({in(8, {0}), in(17, {4})}, {34}),
      branch({in(8, {2, 4, 6}), not_in(17, {16})}, {4}),
      branch({in(8, {2, 4, 6}), in(17, {16})}, {8}),
  };
  r.notes.emplace_back("multipliers",
                       "branch table uses 8; the accompanying text lists 7 among the multipliers");
  return r;
}

TheoremRecipe recipe_q45_1() {
  auto r = make("Q45^1", CoreLabel::N10, GramLattice{{1, 0, 0, 0}, {0, 2, 1, 1}, {0, 1, 4, 0}, {0, 1, 0, 7}},
                {1, 2, 3}, {1, 0, 0, 0}, 1, false);
  r.branches = {
      branch({in(3, {0})}, {1, 5}),       branch({in(3, {2})}, {3, 9}),
      branch({in(12, {1})}, {3, 9}),      branch({in(12, {4})}, {3, 9}),
      branch({in(12, {7})}, {6, 12}),     branch({in(36, {10})}, {8, 64}),
      branch({in(36, {22})}, {2, 16}),    branch({in(36, {34})}, {4, 32}),
  };
  r.notes.emplace_back("multipliers", "either of the two candidates may succeed");
  return r;
}

TheoremRecipe recipe_q15_1() {
  auto r = make("Q15^1", CoreLabel::N1, GramLattice{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 8}},
                {0, 1, 2}, {0, 0, 1, -2}, 30, false);
  auto some_free = [](const Vec& a) { return odd(a[0]) || odd(a[1]) || even(a[2]); };
  r.branches = {
      branch({in(2, {1})}, {1}, some_free, "a1 odd or a2 odd or a3 even"),
      branch({in(8, {2})}, {1}, some_free, "a1 odd or a2 odd or a3 even"),
      branch({in(8, {0})}, {1}, [](const Vec& a) { return even(a[2]); }, "a3 even"),
      branch({in(8, {4})}, {2}, [](const Vec& a) { return odd(a[0]) && odd(a[1]) && odd(a[2]); },
             "(a1,a2,a3) = (1,1,1) mod 2"),
      branch({in(16, {14})}, {2}, [](const Vec& a) { return odd(a[2]); }, "a3 odd"),
      branch({in(16, {6})}, {4}, [](const Vec& a) { return odd(a[2]); }, "a3 odd"),
  };
  return r;
}

TheoremRecipe recipe_q19_2() {
  auto r = make("Q19^2", CoreLabel::N3, GramLattice{{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 3, 1}, {0, 1, 1, 4}},
                {0, 1, 2}, {0, 3, 2, -6}, 114, true);
  auto both_odd = [](const Vec& a) { return odd(a[0]) && odd(a[2]); };
  r.branches = {
      branch({in(2, {1})}, {1}, [](const Vec& a) { return odd(a[0]) || odd(a[2]); },
             "(a1,a3) != (0,0) mod 2"),
      branch({in(8, {0})}, {1}, both_odd, "(a1,a3) = (1,1) mod 2"),
      branch({in(8, {4})}, {2}, both_odd, "(a1,a3) = (1,1) mod 2"),
      branch({in(8, {6})}, {1}, [](const Vec& a) { return even(a[1]); }, "a2 even"),
      branch({in(16, {10})}, {2}, [](const Vec& a) { return odd(a[1]); }, "a2 odd"),
      branch({in(16, {2})}, {4}, [](const Vec& a) { return odd(a[1]); }, "a2 odd"),
  };
  return r;
}

TheoremRecipe recipe_q47_1() {
  auto r = make("Q47^1", CoreLabel::N4, GramLattice{{1, 0, 0, 0}, {0, 2, 1, 0}, {0, 1, 4, 1}, {0, 0, 1, 7}},
                {0, 1, 2}, {0, 1, -2, 7}, 329, true);
  SideCondition side = [](const Vec& a) { return odd(a[1]) || odd(a[2]); };
  const std::string text = "(a2,a3) != (0,0) mod 2";
  // n = 7k: the residue of k mod 7 is read off n mod 49.
  const Congruence one = in(3, {1});
  const Congruence other = in(3, {0, 2});
  r.branches = {
      branch({one, not_in(7, {0})}, {1}, side, text),
      branch({one, in(49, {0, 14, 42})}, {1}, side, text),
      branch({one, in(49, {7, 21})}, {2}, side, text),
      branch({one, in(49, {28, 35})}, {4}, side, text),
      branch({other, not_in(7, {0})}, {3}, side, text),
      branch({other, in(49, {0, 28, 35})}, {3}, side, text),
      branch({other, in(49, {14, 42})}, {6}, side, text),
      branch({other, in(49, {7, 21})}, {12}, side, text),
  };
  return r;
}

TheoremRecipe recipe_q80_1() {
  auto r = make("Q80^1", CoreLabel::N5, GramLattice::diagonal({1, 2, 4, 10}), {0, 1, 2}, {0, 0, 0, 1}, 10,
                false);
  r.claimed_exceptions = {24};
  auto a3_odd = [](const Vec& a) { return odd(a[2]); };
  r.branches = {
      branch({in(2, {1})}, {0}),
      branch({in(4, {2}), not_in(16, {14})}, {0}),
      branch({in(16, {14})}, {2}),
      branch({in(8, {4})}, {2}, a3_odd, "a3 odd"),
      branch({in(32, {0})}, {1}),
      branch({in(32, {24})}, {2}, a3_odd, "a3 odd"),
      branch({in(32, {8, 16})}, {4}, a3_odd, "a3 odd"),
  };
  return r;
}

TheoremRecipe recipe_q31_2() {
  auto r = make("Q31^2", CoreLabel::N6, GramLattice{{1, 0, 0, 0}, {0, 2, 1, 1}, {0, 1, 4, 0}, {0, 1, 0, 5}},
                {0, 1, 3}, {0, 5, -9, -1}, 279, true);
  SideCondition side = [](const Vec& a) { return odd(a[0]) || odd(a[1]) || odd(a[2]); };
  const std::string text = "one of a1,a2,a4 odd";
  r.branches = {
      branch({in(4, {0})}, {1}, side, text), branch({in(4, {1})}, {1}, side, text),
      branch({in(4, {2})}, {2}, side, text), branch({in(8, {3})}, {4}, side, text),
      branch({in(8, {7})}, {2}, side, text),
  };
  return r;
}

TheoremRecipe recipe_q27_3() {
  // Basis of the proof: x3 and x4 are swapped relative to the sextuple.
  auto r = make("Q27^3", CoreLabel::N7, GramLattice{{1, 0, 0, 0}, {0, 2, 0, 1}, {0, 0, 5, 2}, {0, 1, 2, 4}},
                {0, 1, 2}, {0, 5, 4, -10}, 270, true);
  SideCondition generic = [](const Vec& a) { return odd(a[0]) || odd(a[2]) || even(a[1]); };
  const std::string generic_text = "(a1,a3) != (0,0) mod 2 or a2 even";
  const Congruence coprime5 = not_in(5, {0});
  const Congruence eight = in(8, {0});
  const Congruence not_eight = not_in(8, {0});
  r.branches = {
      branch({coprime5, not_in(4, {0})}, {1}, generic, generic_text),
      branch({coprime5, in(8, {4})}, {1}, [](const Vec& a) { return even(a[1]); }, "a2 even"),
      branch({coprime5, eight}, {2}, [](const Vec& a) { return odd(a[0]) && odd(a[1]) && odd(a[2]); },
             "(a1,a2,a3) = (1,1,1) mod 2"),
      branch({in(25, {0}), not_eight}, {1}, generic, generic_text),
      branch({in(25, {0}), eight}, {2}, generic, generic_text),
      branch({in(25, {5, 20}), not_eight}, {5}, generic, generic_text),
      branch({in(25, {5, 20}), eight}, {10}, generic, generic_text),
      branch({in(25, {10}), not_eight}, {3},
             [](const Vec& a) { return (odd(a[0]) || odd(a[2]) || even(a[1])) && (a[0] % 3 != 0 || a[1] % 3 != 0); },
             generic_text + ", (a1,a2) != (0,0) mod 3"),
      branch({in(25, {10}), eight}, {2}, generic, generic_text),
      branch({in(25, {15}), not_eight}, {1}, generic, generic_text),
      branch({in(25, {15}), eight}, {6}, generic, generic_text),
  };
  r.notes.emplace_back("basis", "x3 and x4 swapped relative to the sextuple basis");
  return r;
}

}  // namespace

bool Congruence::holds(Int n) const {
  bool member = std::find(residues.begin(), residues.end(), mod(n, modulus)) != residues.end();
  return member != negated;
}

std::string Congruence::describe() const {
  if (modulus == 1) return "all n";
  std::ostringstream out;
  out << "n " << (negated ? "!=" : "=") << ' ';
  for (std::size_t i = 0; i < residues.size(); ++i) out << (i ? "," : "") << residues[i];
  out << " mod " << modulus;
  return out.str();
}

bool RecipeBranch::applies(Int n) const {
  return std::all_of(guard.begin(), guard.end(), [n](const Congruence& c) { return c.holds(n); });
}

std::string RecipeBranch::describe() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < guard.size(); ++i) out << (i ? " and " : "") << guard[i].describe();
  out << " -> u in {";
  for (std::size_t i = 0; i < multipliers.size(); ++i) out << (i ? "," : "") << multipliers[i];
  out << '}';
  if (!side_text.empty()) out << "; " << side_text;
  return out.str();
}

GramLattice TheoremRecipe::core_gram() const { return GramLattice(congruence(ambient.gram(), core_basis)); }

void check_guard_partition(const TheoremRecipe& recipe, Int lo, Int hi) {
  for (Int n = lo; n <= hi; ++n) {
    std::size_t hits = 0;
    for (const auto& b : recipe.branches) hits += b.applies(n) ? 1 : 0;
    if (hits != 1) {
      throw RecipeError(recipe.id + ": " + std::to_string(hits) + " branches apply to n = " + std::to_string(n));
    }
  }
}

VerificationReport guard_partition_report(const TheoremRecipe& recipe, Int lo, Int hi) {
  VerificationReport report;
  report.check_id = "guard-partition:" + recipe.id;
  report.lo = lo;
  report.hi = hi;
  report.param("branches", std::to_string(recipe.branches.size()));
  try {
    check_guard_partition(recipe, lo, hi);
  } catch (const RecipeError& e) {
    report.fail({"partition", 0, e.what(), std::nullopt});
  }
  return report;
}

TheoremRecipe family124_recipe(const Family124& p) {
  const Int s = p.s;
  auto r = make("family124", CoreLabel::N5,
                GramLattice{{1, 0, 0, 0}, {0, 2, 0, p.a}, {0, 0, 4, p.b}, {0, p.a, p.b, p.c}}, {0, 1, 2},
                {0, p.a * s, p.b * s / 2, -2 * s}, s * s * p.t, false);
  r.threshold = p.threshold();
  r.branches = {
      branch({in(2, {1})}, {1}),
      branch({in(8, {0})}, {1}, [](const Vec& a) { return even(a[2]); }, "a3 even"),
      branch({in(16, {14})}, {1}),
      branch({in(8, {2})}, {2}),
      branch({in(8, {4})}, {2}, [](const Vec& a) { return odd(a[2]); }, "a3 odd"),
      branch({in(16, {6})}, {2}),
  };
  r.notes.emplace_back("a", std::to_string(p.a));
  r.notes.emplace_back("b", std::to_string(p.b));
  r.notes.emplace_back("c", std::to_string(p.c));
  r.notes.emplace_back("s", std::to_string(s));
  r.notes.emplace_back("t", std::to_string(p.t));
  return r;
}

namespace {

// Integer v with det[E | v] = 1 for a 4x3 primitive E, or nothing.
std::optional<Vec> complete_basis(const IntMatrix& e) {
  Vec cofactor(4);
  for (std::size_t i = 0; i < 4; ++i) {
    IntMatrix minor(3, 3);
    for (std::size_t r = 0, rr = 0; r < 4; ++r) {
      if (r == i) continue;
      for (std::size_t c = 0; c < 3; ++c) minor(rr, c) = e(r, c);
      ++rr;
    }
    Int m = narrow(determinant(minor));
    cofactor[i] = ((i + 3) % 2 == 0) ? m : -m;
  }
  // Solve sum cofactor[i] * v[i] = 1 by folding extended gcds.
  Vec v(4, 0);
  Int g = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    auto eg = extended_gcd(g, cofactor[i]);
    for (std::size_t j = 0; j < i; ++j) v[j] = checked_mul(v[j], eg.x);
    v[i] = eg.y;
    g = eg.g;
  }
  if (g != 1) return std::nullopt;
  return v;
}

Vec axpy(Vec v, Int m, const Vec& u) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = checked_add(v[i], checked_mul(m, u[i]));
  return v;
}

}  // namespace

std::optional<TheoremRecipe> family124_instance(const FormRecord& record) {
  const GramLattice lattice = record.gram();
  const GramLattice core = GramLattice::diagonal({1, 2, 4});
  std::optional<TheoremRecipe> found;
  for_each_embedding(core, lattice, {.primitive = true}, [&](const IntMatrix& emb) {
    auto completion = complete_basis(emb);
    if (!completion) return true;
    Vec e1 = emb.column(0), e2 = emb.column(1), e3 = emb.column(2);
    Vec v = *completion;
    v = axpy(v, -lattice.pairing(e1, v), e1);
    v = axpy(v, -floor_div(lattice.pairing(e2, v), 2), e2);
    v = axpy(v, -floor_div(lattice.pairing(e3, v), 4), e3);
    if (lattice.pairing(e3, v) == 3) {
      for (Int& x : e3) x = -x;
      v = axpy(v, -floor_div(lattice.pairing(e3, v), 4), e3);
    }
    Family124 p;
    p.a = lattice.pairing(e2, v);
    p.b = lattice.pairing(e3, v);
    p.c = lattice.norm(v);
    if (odd(p.b)) {
      p.s = 2;
    } else if (even(p.a) && even(p.c) && p.b % 4 == 2) {
      p.s = 1;
    } else {
      return true;
    }
    p.t = 4 * p.c - 2 * p.a * p.a - p.b * p.b;
    TheoremRecipe r = family124_recipe(p);
    IntMatrix basis = IntMatrix::from_columns({e1, e2, e3, v});
    if (GramLattice(congruence(lattice.gram(), basis)) != r.ambient) {
      throw RecipeError(record.name() + ": family basis does not reproduce the family Gram matrix");
    }
    r.id = "family124:" + record.name();
    r.form_id = record.name();
    std::ostringstream cols;
    for (std::size_t j = 0; j < 4; ++j) {
      cols << (j ? " | " : "");
      for (std::size_t i = 0; i < 4; ++i) cols << (i ? " " : "") << basis(i, j);
    }
    r.notes.emplace_back("basis", cols.str());
    found = std::move(r);
    return false;
  });
  return found;
}

std::vector<TheoremRecipe> transcribed_recipes(const Corpus& corpus) {
  std::vector<TheoremRecipe> out = {recipe_q34_3(), recipe_q45_1(), recipe_q15_1(), recipe_q19_2(),
                                    recipe_q47_1(), recipe_q80_1(), recipe_q31_2(), recipe_q27_3()};
  for (auto& r : out) {
    if (const FormRecord* rec = corpus.try_find(parse_form_id(r.form_id))) {
      r.claimed_exceptions = rec->exceptions;
    }
  }
  return out;
}

TheoremRecipe analogous_recipe(const FormRecord& record, const Corpus& corpus) {
  if (!record.core) throw CoreNotFound(record.name() + " has no core sublattice");
  CoreDecomposition dec = core_decomposition(record, corpus);
  TheoremRecipe r{"analogous:" + record.name(),
                  record.name(),
                  *record.core,
                  record.gram(),
                  dec.core.basis,
                  dec.complement_generator,
                  dec.complement_norm,
                  true,
                  100000,
                  true,
                  record.exceptions,
                  {},
                  {}};
  Vec multipliers;
  for (Int u = 1; u <= 24; ++u) multipliers.push_back(u);
  multipliers.push_back(0);
  r.branches = {branch({kAll}, multipliers)};
  r.notes.emplace_back("core basis", dec.stated_basis ? "stated" : "searched");
  return r;
}

RecipeCatalog recipe_catalog(const Corpus& corpus) {
  RecipeCatalog catalog;
  catalog.transcribed = transcribed_recipes(corpus);
  std::vector<std::string> covered;
  for (const auto& r : catalog.transcribed) covered.push_back(r.form_id);
  for (const auto& record : corpus.records) {
    if (!record.core || !form_type(record.status) || *form_type(record.status) == 0) continue;
    const std::string name = record.name();
    if (std::find(covered.begin(), covered.end(), name) != covered.end()) continue;
    if (record.core == CoreLabel::N5 && is_primitively_universal(record.status)) {
      if (auto inst = family124_instance(record)) {
        catalog.family124.push_back(std::move(*inst));
        continue;
      }
    }
    catalog.analogous.push_back(analogous_recipe(record, corpus));
  }
  return catalog;
}

}  // namespace qform
