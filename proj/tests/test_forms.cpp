#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "oracles.hpp"
#include "qform/corpus.hpp"
#include "qform/forms.hpp"

using namespace qform;

TEST(Sextuple, ParseExamples) {
  EXPECT_EQ(parse_sextuple("2 4 6 4 0 2"), (Sextuple{2, 4, 6, 4, 0, 2}));
  EXPECT_EQ(parse_sextuple("1 1 1 0 0 0"), (Sextuple{1, 1, 1, 0, 0, 0}));
  EXPECT_EQ(parse_sextuple("2,4,6,4,0,2"), (Sextuple{2, 4, 6, 4, 0, 2}));
  EXPECT_THROW(parse_sextuple("1 1 1 1 0 0"), InvalidForm);
  EXPECT_THROW(parse_sextuple("1 1 1 0 0"), ParseError);
  EXPECT_THROW(parse_sextuple("1 1 x 0 0 0"), ParseError);
  EXPECT_THROW(parse_sextuple("1 1 1 8 0 0"), InvalidForm);  // indefinite
}

TEST(Sextuple, RenderRoundTrip) {
  for (const auto& r : embedded_corpus().records)
    EXPECT_EQ(parse_sextuple(render(r.sextuple)), r.sextuple) << r.name();
}

TEST(Gram, FromSextuple) {
  EXPECT_EQ(gram_from_sextuple({2, 4, 6, 4, 0, 2}).gram(),
            (IntMatrix{{1, 0, 0, 0}, {0, 2, 1, 0}, {0, 1, 4, 2}, {0, 0, 2, 6}}));
  EXPECT_EQ(gram_from_sextuple({1, 2, 8, 2, 0, 0}).gram(),
            (IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 2, 1}, {0, 0, 1, 8}}));
  EXPECT_EQ(gram_from_sextuple({1, 1, 1, 0, 0, 0}).gram(), IntMatrix::identity(4));
}

TEST(Gram, RejectsInvalid) {
  EXPECT_THROW(GramLattice({{1, 2}, {2, 1}}), InvalidForm);
  EXPECT_THROW(GramLattice({{1, 0}, {1, 1}}), InvalidForm);
  EXPECT_THROW(GramLattice(IntMatrix(7, 7)), InvalidForm);
}

TEST(Invariants, Discriminant) {
  EXPECT_EQ(discriminant(gram_from_sextuple({2, 4, 6, 4, 0, 2})), 34);
  EXPECT_EQ(discriminant(GramLattice(IntMatrix::identity(4))), 1);
  EXPECT_EQ(discriminant(GramLattice::diagonal({1, 2, 4, 10})), 80);
}

TEST(Invariants, ScaleAndNorm) {
  auto sn = scale_and_norm(GramLattice::diagonal({2, 4, 6}));
  EXPECT_EQ(sn.scale, 2);
  EXPECT_EQ(sn.norm, 2);
  sn = scale_and_norm(GramLattice(IntMatrix::identity(4)));
  EXPECT_EQ(sn.scale, 1);
  EXPECT_EQ(sn.norm, 1);
  const GramLattice l{{2, 1}, {1, 8}};
  sn = scale_and_norm(l);
  EXPECT_EQ(sn.scale, 1);
  EXPECT_EQ(sn.norm, 2);
  for (Int x = -5; x <= 5; ++x)
    for (Int y = -5; y <= 5; ++y) EXPECT_EQ(oracle::quadratic(l, {x, y}) % 2, 0);
}

TEST(ResidueClassTest, Membership) {
  const ResidueClass a(3, 2);
  EXPECT_TRUE(a.contains(2));
  EXPECT_TRUE(a.contains(11));
  EXPECT_FALSE(a.contains(12));
  EXPECT_FALSE(ResidueClass(8, 7).contains(-1));
  EXPECT_THROW(ResidueClass(3, 3), DomainError);
}

TEST(FormIdTest, ParseAndRender) {
  EXPECT_EQ(parse_form_id("Q34^3"), (FormId{34, 3}));
  EXPECT_EQ(to_string(FormId{80, 1}), "Q80^1");
  EXPECT_THROW(parse_form_id("Q34"), ParseError);
}

TEST(Corpus, EmbeddedTotals) {
  const Corpus& c = embedded_corpus();
  EXPECT_EQ(c.records.size(), 152u);
  EXPECT_EQ(c.count_pu(), 107u);
  EXPECT_EQ(c.count_apu(), 45u);
  std::size_t empty = 0;
  std::set<FormId> ids;
  for (const auto& r : c.records) {
    empty += r.exceptions.empty();
    ids.insert(r.id);
    EXPECT_EQ(discriminant(r.gram()), r.id.d) << r.name();
    EXPECT_EQ(is_primitively_universal(r.status), r.exceptions.empty()) << r.name();
  }
  EXPECT_EQ(empty, 107u);
  EXPECT_EQ(ids.size(), 152u);
}

TEST(Corpus, TableRows) {
  const Corpus& c = embedded_corpus();
  EXPECT_EQ(c.find({20, 2}).exceptions, (Vec{12}));
  EXPECT_EQ(c.find({80, 1}).exceptions, (Vec{24}));
  EXPECT_EQ(c.find({95, 1}).exceptions, (Vec{4, 12, 25}));
  EXPECT_EQ(c.find({80, 3}).exceptions, (Vec{4, 68}));
  EXPECT_EQ(c.find({63, 2}).exceptions, (Vec{4, 25}));
  EXPECT_EQ(c.find({6, 1}).exceptions, (Vec{4}));
  EXPECT_EQ(c.try_find({999, 1}), nullptr);
}

TEST(Corpus, CoreGrams) {
  const Corpus& c = embedded_corpus();
  EXPECT_EQ(c.core_gram(CoreLabel::N5), GramLattice::diagonal({1, 2, 4}));
  EXPECT_EQ(c.core_gram(CoreLabel::N7), GramLattice::diagonal({1, 2, 5}));
  EXPECT_EQ(c.core_gram(CoreLabel::N1), GramLattice::diagonal({1, 1, 2}));
  EXPECT_EQ(discriminant(c.core_gram(CoreLabel::N9)), 34);
  EXPECT_EQ(discriminant(c.core_gram(CoreLabel::N10)), 45);
}

namespace {
const char* kCores = R"({"kind":"core","label":"N1","gram":[[1,0,0],[0,1,0],[0,0,2]]}
)";
}

TEST(Corpus, RejectsBadDeterminant) {
  std::istringstream in(std::string(kCores) +
                        R"({"id":"Q7^1","d":7,"k":1,"sextuple":[1,1,2,0,0,0],"status":"PU_known","core":null,"exceptions":[]})"
                        "\n");
  try {
    load_corpus(in, {.require_full = false});
    FAIL() << "expected CorpusError";
  } catch (const CorpusError& e) {
    EXPECT_NE(std::string(e.what()).find("Q7^1"), std::string::npos) << e.what();
  }
}

TEST(Corpus, RejectsPuWithExceptionsAndCounts) {
  std::istringstream bad(std::string(kCores) +
                         R"({"id":"Q2^1","d":2,"k":1,"sextuple":[1,1,2,0,0,0],"status":"PU_known","core":null,"exceptions":[4]})"
                         "\n");
  EXPECT_THROW(load_corpus(bad, {.require_full = false}), CorpusError);
  std::istringstream partial(std::string(kCores) +
                             R"({"id":"Q2^1","d":2,"k":1,"sextuple":[1,1,2,0,0,0],"status":"PU_known","core":null,"exceptions":[]})"
                             "\n");
  EXPECT_THROW(load_corpus(partial), CorpusError);
  std::istringstream again(partial.str());
  EXPECT_EQ(load_corpus(again, {.require_full = false}).records.size(), 1u);
  std::istringstream junk("not json\n");
  EXPECT_THROW(load_corpus(junk, {.require_full = false}), CorpusError);
}
