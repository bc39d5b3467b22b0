#include <random>

#include <gtest/gtest.h>

#include "ictl/checker.hpp"
#include "ictl/gen.hpp"
#include "ictl/oracle.hpp"
#include "ictl/parser.hpp"
#include "support.hpp"

using namespace ictl;
using ictl::test::paper_model;
using ictl::test::worlds;

namespace {

bool holds(const BirelationalModel& m, const std::string& w,
           const std::string& f) {
  return check(m, w, parse_formula(f)).satisfied;
}

WorldSet den(const BirelationalModel& m, const std::string& f) {
  Formula g = parse_formula(f);
  return denote(m, g).at(g);
}

// A small corpus: every model on up to 2 worlds plus seeded random ones.
std::vector<BirelationalModel> corpus() {
  std::vector<BirelationalModel> out;
  for (std::size_t n = 1; n <= 2; ++n) {
    ModelEnumerator e(n, {"p", "q"});
    while (auto m = e.next()) out.push_back(std::move(*m));
  }
  GenParams p;
  for (std::uint64_t s = 0; s < 60; ++s) {
    p.seed = s;
    p.n_worlds = 3 + s % 4;
    out.push_back(random_model(p));
  }
  out.push_back(paper_model());
  return out;
}

}  // namespace

TEST(Fixpoint, LeastFixpointExamples) {
  EXPECT_EQ(lfp(4, [](const WorldSet& z) { return z; }), WorldSet(4));
  EXPECT_EQ(lfp(4, [](const WorldSet& z) { return z | WorldSet(4, {0}); }),
            WorldSet(4, {0}));
  auto m = paper_model();
  WorldSet p = m.atom_worlds("p"), q = m.atom_worlds("q");
  EXPECT_EQ(lfp(4, [&](const WorldSet& z) { return q | (p & pre_exists(m, z)); }),
            worlds(m, {"w1", "w2", "v1"}));
}

TEST(Fixpoint, GreatestFixpointExamples) {
  EXPECT_EQ(gfp(4, [](const WorldSet& z) { return z; }), WorldSet::full(4));
  EXPECT_EQ(gfp(4, [](const WorldSet& z) { return z & WorldSet(4); }),
            WorldSet(4));
  auto m = paper_model();
  WorldSet p = m.atom_worlds("p");
  EXPECT_EQ(gfp(4, [&](const WorldSet& z) { return p & pre_exists(m, z); }),
            worlds(m, {"v1"}));
}

TEST(Fixpoint, NonMonotoneTransformerIsRejected) {
  // Flips between {} and W forever.
  EXPECT_THROW(lfp(3, [](const WorldSet& z) { return z.complemented(); }),
               std::logic_error);
}

TEST(Denote, PaperVerdicts) {
  auto m = paper_model();
  EXPECT_TRUE(den(m, "A[p U q]").contains(0));
  EXPECT_FALSE(den(m, "AX A[p U q]").contains(0));
  EXPECT_FALSE(den(m, "q | (p & AX A[p U q])").contains(0));
  EXPECT_FALSE(den(m, "A[p U q]").contains(3));
}

TEST(Denote, PostOrderEntries) {
  auto m = paper_model();
  Formula f = parse_formula("EX q -> p");
  Denotation d = denote(m, f);
  ASSERT_EQ(d.entries().size(), 4u);
  EXPECT_EQ(d.entries().back().first, f);
  EXPECT_EQ(d.at(parse_formula("EX q")), worlds(m, {"w1", "w2", "v1"}));
  EXPECT_EQ(d.at(parse_formula("p")), worlds(m, {"w1", "v1"}));
  EXPECT_THROW(d.at(parse_formula("r")), std::out_of_range);
}

TEST(Denote, RejectsInvalidModels) {
  auto bad = ictl::test::model_from(R"({"worlds":["a"],"transitions":[]})");
  EXPECT_THROW(denote(bad, parse_formula("p")), InvalidFrame);
  EXPECT_THROW(check(bad, 0, parse_formula("p")), InvalidFrame);
}

TEST(Check, PaperExamples) {
  auto m = paper_model();
  EXPECT_TRUE(holds(m, "w1", "A[p U q]"));
  EXPECT_FALSE(holds(m, "w1", "q"));
  EXPECT_FALSE(holds(m, "w1", "p & AX A[p U q]"));
  for (const auto& w : m.names()) EXPECT_TRUE(holds(m, w, "true"));
  EXPECT_THROW(check(m, "nowhere", parse_formula("p")), std::out_of_range);
  EXPECT_THROW(check(m, WorldIndex{9}, parse_formula("p")), std::out_of_range);
}

TEST(Check, ReleaseOnPaperModelAgreesWithOracle) {
  auto m = paper_model();
  Formula f = parse_formula("A[q R p]");
  bool engine = check(m, "w1", f).satisfied;
  EXPECT_EQ(engine, oracle_check(m, "w1", f));
  EXPECT_EQ(engine, lasso_check(m, 0, f));
  // w1 · w2^ω leaves p at step 1 before q has held together with p.
  EXPECT_FALSE(engine);
}

TEST(ValidInModel, Examples) {
  auto m = paper_model();
  EXPECT_TRUE(valid_in_model(m, parse_formula("q | (p & AX A[p U q]) -> A[p U q]")));
  EXPECT_FALSE(valid_in_model(m, parse_formula("A[p U q] -> q | (p & AX A[p U q])")));
  EXPECT_TRUE(valid_in_model(m, parse_formula("false -> p")));
  EXPECT_FALSE(valid_in_model(m, parse_formula("p | ~p")));
}

TEST(Denote, DefinitionalEqualities) {
  std::mt19937_64 rng(5);
  for (const auto& m : corpus()) {
    for (int k = 0; k < 20; ++k) {
      Formula a = random_formula(rng, {"p", "q"}, 2);
      Formula b = random_formula(rng, {"p", "q"}, 2);
      WorldSet da = denote(m, a).at(a), db = denote(m, b).at(b);
      Formula imp = Formula::implies(a, b), ex = Formula::ex(a),
              ax = Formula::ax(a);
      EXPECT_EQ(denote(m, imp).at(imp), ictl::test::naive_implies(m, da, db));
      EXPECT_EQ(denote(m, ex).at(ex), ictl::test::naive_ex(m, da));
      EXPECT_EQ(denote(m, ax).at(ax), ictl::test::naive_ax(m, da));
    }
  }
}

TEST(Denote, EveryDenotationIsUpwardClosed) {
  std::mt19937_64 rng(9);
  for (const auto& m : corpus())
    for (int k = 0; k < 20; ++k) {
      Formula f = random_formula(rng, {"p", "q"}, 3);
      const auto d = denote(m, f);
      for (const auto& [g, set] : d.entries())
        EXPECT_TRUE(ictl::test::upward_closed(m, set)) << print_formula(g);
    }
}

TEST(Denote, UnfoldingsOnCorpus) {
  const Formula eu = parse_formula("E[p U q]"), er = parse_formula("E[p R q]");
  const Formula eu_unf = parse_formula("q | (p & EX E[p U q])");
  const Formula er_unf = parse_formula("q & (p | EX E[p R q])");
  const Formula au = parse_formula("A[p U q]"), ar = parse_formula("A[p R q]");
  const Formula au_unf = parse_formula("q | (p & AX A[p U q])");
  const Formula ar_unf = parse_formula("q & (p | AX A[p R q])");
  auto set = [](const BirelationalModel& m, const Formula& f) {
    return denote(m, f).at(f);
  };
  for (const auto& m : corpus()) {
    EXPECT_EQ(set(m, eu), set(m, eu_unf));
    EXPECT_EQ(set(m, er), set(m, er_unf));
    EXPECT_TRUE(set(m, au_unf).subset_of(set(m, au)));
    EXPECT_TRUE(set(m, ar_unf).subset_of(set(m, ar)));
  }
  auto pm = paper_model();
  EXPECT_TRUE(set(pm, au).contains(0));
  EXPECT_FALSE(set(pm, au_unf).contains(0));
}

TEST(ApplyOperator, MatchesDenoteOnTopOperator) {
  auto m = paper_model();
  Formula f = parse_formula("A[p R EX q]");
  Denotation d = denote(m, f);
  std::vector<WorldSet> args{d.at(f.arg(0)), d.at(f.arg(1))};
  EXPECT_EQ(apply_operator(m, f, args), d.at(f));
  EXPECT_THROW(apply_operator(m, f, std::vector<WorldSet>{}),
               std::invalid_argument);
}

TEST(Mutation, AxWithoutUpInteriorChangesPaperVerdict) {
  // Pre∀ of A[p U q] contains w1 (its only successor w2 satisfies q), but v1
  // above w1 steps to v2.
  auto m = paper_model();
  Formula f = parse_formula("AX A[p U q]");
  CheckerOptions bug{Mutation::AxWithoutUpInterior};
  EXPECT_TRUE(denote(m, f, bug).at(f).contains(0));
  EXPECT_FALSE(denote(m, f).at(f).contains(0));
}

namespace {

// Re-checks a witness against the path semantics of the top operator.
void expect_witness_sound(const BirelationalModel& m, WorldIndex w,
                          const Formula& f) {
  CheckOutcome out = check(m, w, f);
  if (!out.witness) return;
  Denotation d = denote(m, f);
  const WorldSet none(m.size());
  const WorldSet& a = f.arity() > 0 ? d.at(f.arg(0)) : none;
  const WorldSet& b = f.arity() > 1 ? d.at(f.arg(1)) : none;
  const Witness& wit = *out.witness;
  if (wit.path) {
    ASSERT_TRUE(is_path_in(m, *wit.path)) << print_formula(f);
  }
  if (out.satisfied) {
    ASSERT_TRUE(wit.path.has_value());
    EXPECT_EQ(wit.path->start(), w);
    PathClause c = f.op() == Op::ExistsNext    ? PathClause::Next
                   : f.op() == Op::ExistsUntil ? PathClause::Until
                                               : PathClause::Release;
    EXPECT_TRUE(path_satisfies(*wit.path, c, a, b)) << print_formula(f);
    return;
  }
  ASSERT_TRUE(wit.upper_world.has_value());
  WorldIndex v = *wit.upper_world;
  EXPECT_TRUE(m.preorder(w, v));
  switch (f.op()) {
    case Op::Implies:
      EXPECT_TRUE(a.contains(v) && !b.contains(v));
      break;
    case Op::ForallNext:
      ASSERT_TRUE(wit.path.has_value());
      EXPECT_EQ(wit.path->start(), v);
      EXPECT_FALSE(path_satisfies(*wit.path, PathClause::Next, a, b));
      break;
    case Op::ForallUntil:
      ASSERT_TRUE(wit.path.has_value());
      EXPECT_EQ(wit.path->start(), v);
      EXPECT_FALSE(path_satisfies(*wit.path, PathClause::Until, a, b));
      break;
    case Op::ForallRelease:
      ASSERT_TRUE(wit.path.has_value());
      EXPECT_EQ(wit.path->start(), v);
      EXPECT_FALSE(path_satisfies(*wit.path, PathClause::Release, a, b));
      break;
    default:
      ADD_FAILURE() << "unexpected witness for " << print_formula(f);
  }
}

}  // namespace

TEST(Witness, PaperExamples) {
  auto m = paper_model();
  auto out = check(m, "w1", parse_formula("AX A[p U q]"));
  ASSERT_TRUE(out.witness && out.witness->upper_world && out.witness->path);
  EXPECT_EQ(*out.witness->upper_world, 2u);  // v1
  EXPECT_EQ(lasso_text(m, *out.witness->path), "v1 (v2)^w");

  out = check(m, "w1", parse_formula("E[p U q]"));
  ASSERT_TRUE(out.witness && out.witness->path);
  EXPECT_EQ(out.witness->path->at(1), 1u);  // steps to w2, where q holds

  out = check(m, "w1", parse_formula("p -> q"));
  EXPECT_FALSE(out.satisfied);
  ASSERT_TRUE(out.witness && out.witness->upper_world);
  EXPECT_EQ(*out.witness->upper_world, 0u);
}

TEST(Witness, SoundOnCorpus) {
  std::mt19937_64 rng(13);
  static constexpr Op ops[] = {Op::ExistsNext,  Op::ExistsUntil,
                               Op::ExistsRelease, Op::ForallNext,
                               Op::ForallUntil, Op::ForallRelease,
                               Op::Implies};
  for (const auto& m : corpus()) {
    for (Op op : ops) {
      for (int k = 0; k < 4; ++k) {
        std::vector<Formula> args;
        for (std::size_t i = 0; i < arity(op); ++i)
          args.push_back(random_formula(rng, {"p", "q"}, 1));
        Formula f = Formula::make(op, args);
        for (WorldIndex w = 0; w < m.size(); ++w) expect_witness_sound(m, w, f);
      }
    }
  }
}
