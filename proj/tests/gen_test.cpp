#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ictl/gen.hpp"
#include "ictl/model.hpp"
#include "support.hpp"

using namespace ictl;

namespace {

// Frame conditions checked straight from their first-order statements.
bool naive_valid_frame(std::size_t n, const std::vector<std::vector<bool>>& p,
                       const std::vector<std::vector<bool>>& r) {
  for (std::size_t x = 0; x < n; ++x) {
    if (!p[x][x]) return false;
    bool serial = false;
    for (std::size_t y = 0; y < n; ++y) serial = serial || r[x][y];
    if (!serial) return false;
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (p[x][y] && p[y][z] && !p[x][z]) return false;
        if (r[x][y] && p[y][z]) {
          bool ok = false;
          for (std::size_t u = 0; u < n; ++u) ok = ok || (p[x][u] && r[u][z]);
          if (!ok) return false;
        }
        if (p[x][z] && r[x][y]) {
          bool ok = false;
          for (std::size_t u = 0; u < n; ++u) ok = ok || (p[y][u] && r[z][u]);
          if (!ok) return false;
        }
      }
  return true;
}

// Brute force over every pair of relations on n worlds.
std::size_t naive_frame_count(std::size_t n) {
  const std::size_t cells = n * n;
  std::size_t count = 0;
  std::vector<std::vector<bool>> p(n, std::vector<bool>(n)), r = p;
  for (std::uint64_t pb = 0; pb < (std::uint64_t{1} << cells); ++pb) {
    bool refl = true;
    for (std::size_t i = 0; i < n; ++i) refl = refl && ((pb >> (i * n + i)) & 1);
    if (!refl) continue;
    for (std::size_t i = 0; i < cells; ++i) p[i / n][i % n] = (pb >> i) & 1;
    for (std::uint64_t rb = 0; rb < (std::uint64_t{1} << cells); ++rb) {
      for (std::size_t i = 0; i < cells; ++i) r[i / n][i % n] = (rb >> i) & 1;
      if (naive_valid_frame(n, p, r)) ++count;
    }
  }
  return count;
}

bool iso_under(const BirelationalModel& a, const BirelationalModel& b,
               const std::vector<WorldIndex>& perm) {
  const std::size_t n = a.size();
  for (WorldIndex x = 0; x < n; ++x)
    for (WorldIndex y = 0; y < n; ++y)
      if (a.preorder(x, y) != b.preorder(perm[x], perm[y]) ||
          a.transition(x, y) != b.transition(perm[x], perm[y]))
        return false;
  for (const auto& atom : {"p", "q"})
    for (WorldIndex x = 0; x < n; ++x)
      if (a.atom_worlds(atom).contains(x) != b.atom_worlds(atom).contains(perm[x]))
        return false;
  return true;
}

}  // namespace

TEST(Enumerate, SingleWorldCounts) {
  for (std::size_t a = 0; a <= 4; ++a) {
    ModelEnumerator e(1, default_atoms(a));
    std::size_t count = 0;
    while (e.next()) ++count;
    EXPECT_EQ(count, std::size_t{1} << a);
    EXPECT_EQ(e.total(), count);
  }
  ModelEnumerator one(1, {});
  auto m = one.next();
  ASSERT_TRUE(m);
  EXPECT_TRUE(m->transition(0, 0));
  EXPECT_FALSE(one.next());
}

TEST(Enumerate, FrameCountsMatchBruteForce) {
  EXPECT_EQ(enumerate_frames(1).size(), naive_frame_count(1));
  EXPECT_EQ(enumerate_frames(2).size(), naive_frame_count(2));
  EXPECT_EQ(enumerate_frames(3).size(), naive_frame_count(3));
}

TEST(Enumerate, FramesAreDistinctAndValid) {
  auto frames = enumerate_frames(3);
  std::vector<std::pair<Relation, Relation>> seen;
  for (const auto& f : frames) {
    auto m = model_with_valuation(f, {}, {}, 0);
    EXPECT_TRUE(validate_frame(m).ok());
    seen.emplace_back(f.preorder, f.transitions);
  }
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
  EXPECT_THROW(enumerate_frames(0), std::invalid_argument);
  EXPECT_THROW(enumerate_frames(6), std::invalid_argument);
}

TEST(Enumerate, EveryModelValidAndDistinct) {
  ModelEnumerator e(2, {"p", "q"});
  std::vector<std::string> docs;
  std::size_t count = 0;
  while (auto m = e.next()) {
    ++count;
    EXPECT_TRUE(validate_frame(*m).ok());
    docs.push_back(model_to_json(*m));
  }
  EXPECT_EQ(count, e.total());
  std::sort(docs.begin(), docs.end());
  EXPECT_EQ(std::adjacent_find(docs.begin(), docs.end()), docs.end());
}

TEST(Enumerate, UpwardClosedSets) {
  auto m = ictl::test::paper_model();
  auto sets = upward_closed_sets(m.preorder_rows());
  // v2 is free; w1 and w2 each need v1: (1 + 4) * 2.
  EXPECT_EQ(sets.size(), 10u);
  for (const auto& s : sets) EXPECT_TRUE(ictl::test::upward_closed(m, s));
  std::size_t direct = 0;
  for (std::uint64_t bits = 0; bits < 16; ++bits) {
    WorldSet s(4);
    for (WorldIndex w = 0; w < 4; ++w)
      if (bits >> w & 1) s.insert(w);
    direct += ictl::test::upward_closed(m, s);
  }
  EXPECT_EQ(sets.size(), direct);
}

TEST(Enumerate, PaperModelAppearsUpToIsomorphism) {
  auto target = ictl::test::paper_model();
  auto frames = enumerate_frames(4);
  std::vector<WorldIndex> perm(4);
  bool found = false;
  for (const auto& f : frames) {
    auto bare = model_with_valuation(f, {}, {}, 0);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      bool frame_match = true;
      for (WorldIndex x = 0; x < 4 && frame_match; ++x)
        for (WorldIndex y = 0; y < 4 && frame_match; ++y)
          frame_match =
              bare.preorder(x, y) == target.preorder(perm[x], perm[y]) &&
              bare.transition(x, y) == target.transition(perm[x], perm[y]);
      if (!frame_match) continue;
      auto upsets = upward_closed_sets(f.preorder);
      for (std::size_t v = 0; v < valuation_count(upsets.size(), 2) && !found; ++v)
        found = iso_under(model_with_valuation(f, {"p", "q"}, upsets, v),
                          target, perm);
    } while (!found && std::next_permutation(perm.begin(), perm.end()));
    if (found) break;
  }
  EXPECT_TRUE(found);
}

TEST(Random, DeterministicAndValid) {
  GenParams p;
  for (std::uint64_t s = 0; s < 300; ++s) {
    p.seed = s;
    p.n_worlds = 1 + s % 8;
    p.n_atoms = s % 4;
    GenStats st;
    auto a = random_model(p, &st);
    EXPECT_EQ(a, random_model(p));
    EXPECT_TRUE(validate_frame(a).ok());
    EXPECT_EQ(a.size(), p.n_worlds);
    EXPECT_LE(a.valuation().size(), p.n_atoms);
    EXPECT_GE(st.attempts, 1u);
  }
}

TEST(Random, CompleteTransitionsAtFullDensity) {
  GenParams p;
  p.edge_density = 1.0;
  p.n_worlds = 5;
  for (std::uint64_t s = 0; s < 20; ++s) {
    p.seed = s;
    GenStats st;
    auto m = random_model(p, &st);
    for (WorldIndex w = 0; w < m.size(); ++w)
      EXPECT_TRUE(m.successors(w).is_full());
    EXPECT_EQ(st.attempts, 1u);
    EXPECT_FALSE(st.repaired);
  }
}

TEST(Random, RepairPathProducesValidModels) {
  GenParams p;
  p.max_attempts = 1;
  p.n_worlds = 6;
  p.edge_density = 0.15;
  p.preorder_density = 0.5;
  std::size_t repaired = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    p.seed = s;
    GenStats st;
    auto m = random_model(p, &st);
    EXPECT_TRUE(validate_frame(m).ok());
    if (st.repaired) {
      ++repaired;
      EXPECT_GT(st.repair_edges, 0u);
    }
  }
  EXPECT_GT(repaired, 0u);
}

TEST(Random, CustomAtomNames) {
  GenParams p;
  p.atoms = {"ready", "done"};
  auto m = random_model(p);
  EXPECT_EQ(m.valuation().count("ready"), 1u);
  EXPECT_EQ(m.valuation().count("p"), 0u);
}

TEST(Product, TwoChainTimesTwoCycle) {
  Relation chain = close_preorder(2, {{0, 1}});
  Relation cycle(2, WorldSet(2));
  cycle[0].insert(1);
  cycle[1].insert(0);
  auto m = product_frame(chain, cycle, {{"p", {{1, 0}, {1, 1}}}});
  EXPECT_EQ(m.size(), 4u);
  EXPECT_TRUE(validate_frame(m).ok());
  EXPECT_EQ(m.name(1), "k0s1");
  EXPECT_TRUE(m.preorder(1, 3));   // (0,1) P (1,1)
  EXPECT_FALSE(m.preorder(1, 2));  // different s
  EXPECT_TRUE(m.transition(2, 3));
  EXPECT_FALSE(m.transition(0, 2));
}

TEST(Product, DegenerateFactors) {
  Relation point = close_preorder(1, {});
  Relation graph(3, WorldSet(3));
  graph[0].insert(1);
  graph[1].insert(2);
  graph[2].insert(0);
  auto flat = product_frame(point, graph);
  for (WorldIndex w = 0; w < 3; ++w) {
    EXPECT_EQ(flat.up(w), WorldSet(3, {w}));
    EXPECT_EQ(flat.successors(w), graph[w]);
  }

  Relation loop(1, WorldSet(1, {0}));
  Relation poset = close_preorder(3, {{0, 1}, {0, 2}});
  auto tree = product_frame(poset, loop);
  for (WorldIndex w = 0; w < 3; ++w) {
    EXPECT_EQ(tree.up(w), poset[w]);
    EXPECT_EQ(tree.successors(w), WorldSet(3, {w}));
  }
  EXPECT_TRUE(tree.valid());
}

TEST(Product, RandomFactorsAlwaysValid) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nk = 1 + rng() % 4, ns = 1 + rng() % 4;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nk; ++i)
      for (std::size_t j = i + 1; j < nk; ++j)
        if (rng() % 2) edges.emplace_back(i, j);
    Relation poset = close_preorder(nk, edges);
    Relation kripke(ns, WorldSet(ns));
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t t = 0; t < ns; ++t)
        if (rng() % 3 == 0) kripke[s].insert(t);
      if (kripke[s].empty()) kripke[s].insert(rng() % ns);
    }
    std::set<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t k = 0; k < nk; ++k)
      for (std::size_t s = 0; s < ns; ++s)
        if (rng() % 2)
          for (auto k2 : poset[k].members()) cells.emplace(k2, s);
    auto m = product_frame(poset, kripke, {{"p", cells}});
    EXPECT_TRUE(validate_frame(m).ok());
  }
}

TEST(Product, RejectsBadInput) {
  Relation chain = close_preorder(2, {{0, 1}});
  Relation stuck(1, WorldSet(1));
  EXPECT_THROW(product_frame(chain, stuck), InvalidFrame);
  Relation loop(1, WorldSet(1, {0}));
  EXPECT_THROW(product_frame(chain, loop, {{"p", {{0, 0}}}}),
               std::invalid_argument);
  Relation open(2, WorldSet(2));  // not reflexive
  EXPECT_THROW(product_frame(open, loop), std::invalid_argument);
}

TEST(RandomFormula, RespectsDepthAndIsDeterministic) {
  std::mt19937_64 a(4), b(4);
  for (int i = 0; i < 500; ++i) {
    Formula f = random_formula(a, {"p", "q"}, 3);
    EXPECT_LE(f.depth(), 3u);
    EXPECT_EQ(f, random_formula(b, {"p", "q"}, 3));
    for (const auto& atom : f.atoms()) EXPECT_TRUE(atom == "p" || atom == "q");
  }
}

TEST(Seeds, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(1, 2), derive_seed(1, 2));
  EXPECT_NE(derive_seed(1, 2), derive_seed(2, 2));
}
