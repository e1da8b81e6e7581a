#include <gtest/gtest.h>

#include <random>

#include "nlcs/conflict.hpp"
#include "nlcs/parser.hpp"
#include "support.hpp"

using namespace nlcs;

namespace {

using Ids = std::vector<std::size_t>;

EvaluationMatrix matrix(std::vector<std::vector<std::uint8_t>> rows, Ids mandatory = {}) {
  EvaluationMatrix M;
  M.cols = rows.empty() ? 0 : rows[0].size();
  M.rows = std::move(rows);
  M.mandatory = std::move(mandatory);
  return M;
}

// Smallest cover by exhaustive search, lexicographically first among equals.
Ids brute_force(const EvaluationMatrix& M) {
  const std::size_t m = M.cols;
  std::optional<Ids> best;
  for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
    Ids ids;
    for (std::size_t c = 0; c < m; ++c)
      if (mask >> c & 1U) ids.push_back(c + 1);
    if (!covers(M, ids)) continue;
    if (!best || ids.size() < best->size() || (ids.size() == best->size() && ids < *best)) best = ids;
  }
  return *best;
}

EvaluationMatrix random_matrix(std::mt19937& rng, std::size_t k, std::size_t m) {
  std::bernoulli_distribution bit(0.4);
  std::uniform_int_distribution<std::size_t> col(0, m - 1);
  std::vector<std::vector<std::uint8_t>> rows(k, std::vector<std::uint8_t>(m, 0));
  for (auto& r : rows) {
    for (auto& e : r) e = bit(rng) ? 1 : 0;
    r[col(rng)] = 1;
  }
  return matrix(rows);
}

ConstraintSystem sys(const char* text) { return parse_native(text); }

}  // namespace

TEST(BuildMatrix, TwoPoints) {
  Trace t;
  t.num_columns = 2;
  t.rows.push_back({1, {}, "", {Entry::Holds, Entry::Violated}, false});
  t.rows.push_back({1, {}, "", {Entry::Violated, Entry::Holds}, false});
  auto M = build_matrix(t, 2);
  EXPECT_EQ(M.rows, (std::vector<std::vector<std::uint8_t>>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(M.mandatory.empty());
}

TEST(BuildMatrix, LocalConflictsBecomeMandatory) {
  auto s = sys("vars: x y\nx >= 0\ny > 1\nx < 0\n");
  Decision d = decide_vs(s);
  ASSERT_EQ(d.status, Status::Unsat);
  auto M = build_matrix(d, 3);
  EXPECT_EQ(M.mandatory, (Ids{1, 3}));
  for (const auto& r : M.rows) EXPECT_TRUE(!r[0] && !r[2]);
  EXPECT_EQ(cover_exact(M).ids, (Ids{1, 3}));

  Trace t;
  t.num_columns = 3;
  t.local_conflicts = {{1, 3}};
  t.rows.push_back({1, {}, "", {Entry::Violated, Entry::Holds, Entry::Holds}, false});
  t.rows.push_back({1, {}, "", {Entry::Holds, Entry::Violated, Entry::Holds}, false});
  auto N = build_matrix(t, 3);
  ASSERT_EQ(N.rows.size(), 1U);
  EXPECT_EQ(N.rows[0], (std::vector<std::uint8_t>{0, 1, 0}));
  EXPECT_EQ(cover_exact(N).ids, (Ids{1, 2, 3}));
}

TEST(BuildMatrix, PartialCadCompensationRows) {
  auto s = sys("vars: x y\nx^2 < 0\ny > 0\n");
  Decision d = decide_cad(s);
  ASSERT_EQ(d.status, Status::Unsat);
  auto M = build_matrix(d, 2);
  ASSERT_FALSE(M.rows.empty());
  for (const auto& r : M.rows) EXPECT_EQ(r, (std::vector<std::uint8_t>{1, 0}));
  EXPECT_EQ(cover_exact(M).ids, (Ids{1}));
}

TEST(BuildMatrix, SatTraceRejected) {
  Decision d = decide_cad(sys("vars: x\nx > 0\n"));
  EXPECT_THROW(build_matrix(d, 1), NlcsError);
}

TEST(Cover, Examples) {
  auto I = matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(cover_exact(I).ids, (Ids{1, 2, 3}));
  EXPECT_EQ(cover_greedy(I).ids, (Ids{1, 2, 3}));
  auto J = matrix({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}});
  EXPECT_EQ(cover_exact(J).ids, (Ids{3}));
  EXPECT_EQ(cover_greedy(J).ids, (Ids{3}));
  EXPECT_THROW(cover_exact(matrix({{1, 0}, {0, 0}})), NlcsError);
  EXPECT_EQ(cover_exact(matrix({{1, 1}, {0, 1}}, {2})).ids, (Ids{2}));
  EXPECT_EQ(cover_exact(matrix({{1, 0}}, {2})).ids, (Ids{1, 2}));
}

TEST(Cover, GreedySuboptimal) {
  // Elements 1..6; A = {1,2,3}, B = {4,5,6}, G = {1,2,4,5}.
  auto M = matrix({{1, 0, 1}, {1, 0, 1}, {1, 0, 0}, {0, 1, 1}, {0, 1, 1}, {0, 1, 0}});
  auto g = cover_greedy(M), e = cover_exact(M);
  EXPECT_EQ(e.ids, (Ids{1, 2}));
  EXPECT_EQ(g.ids, (Ids{1, 2, 3}));
  EXPECT_TRUE(covers(M, g.ids));
  EXPECT_TRUE(covers(M, e.ids));
}

TEST(Cover, ExactMatchesBruteForce) {
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    std::size_t k = 1 + static_cast<std::size_t>(t % 6), m = 1 + static_cast<std::size_t>((t / 6) % 6);
    auto M = random_matrix(rng, k, m);
    auto e = cover_exact(M);
    EXPECT_EQ(e.ids, brute_force(M)) << t;
    auto g = cover_greedy(M);
    EXPECT_TRUE(covers(M, g.ids));
    EXPECT_GE(g.ids.size(), e.ids.size());
  }
}

TEST(Cover, ExhaustiveThreeByThree) {
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    std::vector<std::vector<std::uint8_t>> rows(3, std::vector<std::uint8_t>(3));
    bool ok = true;
    for (std::size_t r = 0; r < 3; ++r) {
      for (std::size_t c = 0; c < 3; ++c) rows[r][c] = bits >> (3 * r + c) & 1U;
      ok = ok && (rows[r][0] | rows[r][1] | rows[r][2]);
    }
    if (!ok) continue;
    auto M = matrix(rows);
    EXPECT_EQ(cover_exact(M).ids, brute_force(M)) << bits;
  }
}

TEST(Verify, Examples) {
  auto s = sys("vars: x y\nx > 1\ny > 1\nx*y < 1\nx + y > 5\n");
  ConflictSet good{{1, 2, 3}};
  EXPECT_EQ(verify_conflict(s, good), Verdict::Verified);
  EXPECT_TRUE(good.verified);
  ConflictSet bad{{1, 3}};
  EXPECT_EQ(verify_conflict(s, bad), Verdict::Refuted);
  EXPECT_FALSE(bad.verified);
  EXPECT_TRUE(s.restricted({1, 3}).satisfied_by({2, make_rational(1, 10)}));

  auto u = sys("vars: x\nx > 0\nx < 0\n");
  ConflictSet both{{1, 2}};
  EXPECT_EQ(verify_conflict(u, both), Verdict::Verified);

  EngineOptions tiny;
  tiny.engine = Engine::Cad;
  tiny.budget = 1;
  ConflictSet g2{{1, 2, 3}};
  EXPECT_EQ(verify_conflict(s, g2, tiny), Verdict::Inconclusive);
  EXPECT_FALSE(g2.verified);
}

TEST(Minimize, Examples) {
  auto s = sys("vars: x y\nx > 1\ny > 1\nx*y < 1\nx + y > 5\n");
  EXPECT_EQ(minimize_dropwise(s, ConflictSet{{1, 2, 3, 4}}).ids, (Ids{1, 2, 3}));
  EXPECT_EQ(minimize_dropwise(s, ConflictSet{{1, 2, 3}}).ids, (Ids{1, 2, 3}));
  auto one = sys("vars: x\nx^2 < 0\nx > 4\n");
  EXPECT_EQ(minimize_dropwise(one, ConflictSet{{1}}).ids, (Ids{1}));
  // Every single removal from a minimized set is SAT.
  auto r = minimize_dropwise(s, ConflictSet{{1, 2, 3, 4}});
  for (std::size_t i = 0; i < r.ids.size(); ++i) {
    Ids rest = r.ids;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    EXPECT_EQ(decide_cad(s.restricted(rest)).status, Status::Sat);
  }
}

TEST(ExtractConflict, Pipeline) {
  auto s = sys("vars: x y\nx > 1\ny > 1\nx*y < 1\nx + y > 5\n");
  ConflictOptions o;
  o.verify = true;
  for (Engine e : {Engine::Cad, Engine::Auto, Engine::Vs}) {
    o.engine.engine = e;
    auto r = extract_conflict(s, o);
    ASSERT_EQ(r.decision.status, Status::Unsat);
    ASSERT_TRUE(r.conflict);
    EXPECT_EQ(r.verification, Verdict::Verified);
    EXPECT_LE(r.conflict->ids.size(), 4U);
  }
  o.engine.engine = Engine::Cad;
  o.minimize = true;
  EXPECT_EQ(extract_conflict(s, o).conflict->ids, (Ids{1, 2, 3}));

  auto f = extract_conflict(sys("vars: x\nx > 3\n0 > 1\nx < 0\n"), o);
  ASSERT_TRUE(f.conflict);
  EXPECT_EQ(f.conflict->ids, (Ids{2}));

  auto sat = extract_conflict(sys("vars: x\nx > 3\n"), o);
  EXPECT_EQ(sat.decision.status, Status::Sat);
  EXPECT_FALSE(sat.conflict);
}

TEST(ExtractConflict, SoundOnPlantedUnsat) {
  std::mt19937 rng(71);
  for (int t = 0; t < 30; ++t) {
    auto s = testsupport::planted_unsat(rng, 2 + static_cast<std::size_t>(t % 2), 1 + static_cast<std::size_t>(t % 2));
    for (Engine e : {Engine::Cad, Engine::Auto})
      for (CoverMethod c : {CoverMethod::Exact, CoverMethod::Greedy})
        for (bool partial : {true, false}) {
          ConflictOptions o;
          o.engine.engine = e;
          o.engine.partial = partial;
          o.cover = c;
          auto r = extract_conflict(s, o);
          ASSERT_EQ(r.decision.status, Status::Unsat) << t;
          EngineOptions check;
          check.engine = Engine::Cad;
          EXPECT_EQ(verify_conflict(s, *r.conflict, check), Verdict::Verified) << t;
        }
  }
}
