#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qform/corpus.hpp"
#include "qform/hnf.hpp"
#include "qform/isometry.hpp"
#include "qform/transform.hpp"

using namespace qform;

namespace {

const FormRecord& rec(Int d, Int k) { return embedded_corpus().find({d, k}); }

Vec unit(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

// Independent index computation: |det| of the basis via the oracle's
// floating determinant (exact at these sizes).
Int oracle_index(const Sublattice& s) {
  std::vector<std::vector<long double>> m(s.basis.rows(), std::vector<long double>(s.basis.cols()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] = static_cast<long double>(s.basis(i, j));
  return static_cast<Int>(std::llround(std::fabs(oracle::det_ld(m))));
}

}  // namespace

TEST(Lambda2, EvenLatticeIsItsOwnSublattice) {
  const auto l = GramLattice::diagonal({2, 4, 6});
  const auto s = lambda2_sublattice(l);
  EXPECT_EQ(s.index(), 1);
  EXPECT_EQ(lambda2(l), GramLattice::diagonal({1, 2, 3}));
}

TEST(Lambda2, Q24Form1SublatticeBasis) {
  // Q(e1) and Q(e2) are both odd, so the parity functional is x1 + x2.
  const auto l = rec(24, 1).gram();
  const auto s = lambda2_sublattice(l);
  EXPECT_EQ(s.index(), 2);
  const IntMatrix expect = IntMatrix::from_columns({{1, 1, 0, 0}, {0, 2, 0, 0}, unit(4, 2), unit(4, 3)});
  EXPECT_EQ(s.basis, expect);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(l.norm(s.basis_vector(j)) % 2, 0);
}

TEST(Lambda2, TwoOddGeneratorsGiveDoubleAndSum) {
  // Q(x1), Q(x2) odd, the rest even.
  const GramLattice l{{1, 0, 0}, {0, 3, 1}, {0, 1, 2}};
  const auto s = lambda2_sublattice(l);
  const auto h = hermite_normal_form({{2, 0, 0}, {1, 1, 0}, {0, 0, 1}});
  std::vector<Vec> got;
  for (std::size_t j = 0; j < s.rank(); ++j) got.push_back(s.basis_vector(j));
  EXPECT_EQ(got, h);
}

TEST(Lambda2, KnownImages) {
  EXPECT_TRUE(is_isometric(lambda2(rec(24, 6).gram()), rec(6, 3).gram()));
  EXPECT_TRUE(is_isometric(lambda2(rec(28, 1).gram()), rec(7, 1).gram()));
  EXPECT_TRUE(is_isometric(lambda2(rec(24, 1).gram()), rec(6, 1).gram()));
}

TEST(Lambda2, IndexAndDeterminantOverCorpus) {
  for (const auto& r : embedded_corpus().records) {
    const auto l = r.gram();
    const auto s = lambda2_sublattice(l);
    bool all_even = true;
    for (std::size_t i = 0; i < 4; ++i) all_even = all_even && l(i, i) % 2 == 0;
    const Int idx = oracle_index(s);
    EXPECT_EQ(idx, all_even ? 1 : 2) << r.name();
    EXPECT_EQ(s.index(), idx);
    EXPECT_EQ(determinant(s.gram.gram()), determinant(l.gram()) * idx * idx) << r.name();
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(oracle::quadratic(l, s.basis_vector(j)) % 2, 0);
    const auto lam = lambda2(l);
    EXPECT_NE(scale_and_norm(lam).scale % 2, 0) << r.name();
  }
}

TEST(OrthogonalComplement, ProofGenerators) {
  struct Case {
    FormId id;
    Vec generator;
    Int k;
  };
  const std::vector<Case> cases = {
      {{15, 1}, {0, 0, 1, -2}, 30},
      {{19, 2}, {0, 3, 2, -6}, 114},
  };
  for (const auto& c : cases) {
    const auto l = embedded_corpus().find(c.id).gram();
    const auto core = with_basis(l, {unit(4, 0), unit(4, 1), unit(4, 2)});
    const auto perp = orthogonal_complement(l, core);
    ASSERT_EQ(perp.rank(), 1u);
    EXPECT_EQ(perp.basis_vector(0), c.generator) << to_string(c.id);
    EXPECT_EQ(perp.gram(0, 0), c.k);
    EXPECT_EQ(oracle::quadratic(l, c.generator), c.k);
  }
}

TEST(OrthogonalComplement, IdentityCoordinate) {
  const GramLattice l(IntMatrix::identity(4));
  const auto perp = orthogonal_complement(l, span(l, {unit(4, 0)}));
  EXPECT_EQ(perp.basis, IntMatrix::from_columns({unit(4, 1), unit(4, 2), unit(4, 3)}));
}

TEST(OrthogonalComplement, PairingsVanish) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto l = oracle::random_lattice(rng, 4, 6);
    const auto sub = span(l, {{1, 0, 0, 0}, {0, 1, 1, 0}});
    const auto perp = orthogonal_complement(l, sub);
    ASSERT_EQ(perp.rank(), 2u);
    for (std::size_t i = 0; i < sub.rank(); ++i)
      for (std::size_t j = 0; j < perp.rank(); ++j)
        EXPECT_EQ(l.pairing(sub.basis_vector(i), perp.basis_vector(j)), 0);
  }
}

TEST(CoreDecompositionTest, ProofNorms) {
  const auto q47 = core_decomposition(rec(47, 1));
  EXPECT_EQ(q47.complement_generator, (Vec{0, 1, -2, 7}));
  EXPECT_EQ(q47.complement_norm, 329);
  EXPECT_EQ(core_decomposition(rec(27, 3)).complement_norm, 270);
  EXPECT_EQ(core_decomposition(rec(31, 2)).complement_norm, 279);
  EXPECT_EQ(core_decomposition(rec(15, 1)).complement_norm, 30);
  EXPECT_EQ(core_decomposition(rec(19, 2)).complement_norm, 114);
  EXPECT_THROW(core_decomposition(rec(2, 1)), DomainError);
}

TEST(CoreDecompositionTest, EveryLabelledRecord) {
  const Corpus& c = embedded_corpus();
  std::size_t labelled = 0;
  for (const auto& r : c.records) {
    if (!r.core) continue;
    ++labelled;
    const auto l = r.gram();
    const auto d = core_decomposition(r);
    EXPECT_EQ(d.core.rank(), 3u);
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_EQ(oracle::quadratic(l, d.core.basis_vector(i)) , d.core.gram(i, i));
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_EQ(l.pairing(d.core.basis_vector(i), d.complement_generator), 0) << r.name();
    EXPECT_EQ(oracle::quadratic(l, d.complement_generator), d.complement_norm) << r.name();
    if (*r.core != CoreLabel::UnitComplement) {
      EXPECT_TRUE(is_isometric(d.core.gram, c.core_gram(*r.core))) << r.name();
    } else {
      EXPECT_EQ(d.complement_norm, 1);
    }
  }
  EXPECT_EQ(labelled, 9u + 47u + 41u);
}

TEST(CoreDecompositionTest, TypeOneIsOrthogonalSum) {
  // core ⊥ ⟨k⟩ is the whole lattice for type 1 records.
  for (const auto& r : embedded_corpus().records) {
    if (form_type(r.status) != 1) continue;
    const auto d = core_decomposition(r);
    std::vector<Vec> basis;
    for (std::size_t i = 0; i < 3; ++i) basis.push_back(d.core.basis_vector(i));
    basis.push_back(d.complement_generator);
    const auto whole = with_basis(r.gram(), basis);
    EXPECT_EQ(whole.index(), 1) << r.name();
    IntMatrix sum(4, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) sum(i, j) = d.core.gram(i, j);
    sum(3, 3) = d.complement_norm;
    EXPECT_TRUE(is_isometric(GramLattice(sum), r.gram())) << r.name();
  }
}
