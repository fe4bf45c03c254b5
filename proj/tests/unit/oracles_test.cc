// Copyright 2026 The Oracle DP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <optional>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/oracles/oracle.h"

namespace oracle_dp {
namespace {

QueryClass Boolean(Family f, int d) { return *MakeBooleanClass(f, d); }

WeightedDataset RandomWd(std::mt19937_64& gen, int d, int entries) {
  std::uniform_real_distribution<double> w(-2.0, 2.0);
  WeightedDataset wd;
  for (int i = 0; i < entries; ++i) {
    wd.push_back({DataPoint::FromMask(gen() % (1u << d), d), w(gen)});
  }
  return wd;
}

// Independent scan in reverse order; returns the minimum objective.
double ReverseScanMinimum(const QueryClass& c, const WeightedDataset& wd) {
  std::span<const Query> members = *c.Members();
  double best = 0.0;
  bool first = true;
  for (std::size_t k = members.size(); k-- > 0;) {
    double v = 0.0;
    for (const WeightedEntry& e : wd) v += e.weight * members[k].Evaluate(e.point);
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

TEST(ExactOracleTest, ZeroWeightsGiveFirstMember) {
  QueryClass c = Boolean(Family::kConjunction, 2);
  OracleAnswer a = *ExactOracle::Minimize(c, {{{1, 0}, 0.0}, {{0, 1}, 0.0}});
  EXPECT_EQ(*a.query, *Query::Conjunction(2, {}));
  EXPECT_EQ(a.objective, 0.0);
}

TEST(ExactOracleTest, AvoidsPositiveWeight) {
  QueryClass c = Boolean(Family::kDisjunction, 2);
  OracleAnswer a = *ExactOracle::Minimize(c, {{{1, 1}, 5.0}});
  EXPECT_EQ(*a.query, *Query::Disjunction(2, {}));
  EXPECT_EQ(a.objective, 0.0);
}

TEST(ExactOracleTest, MatchesReverseScan) {
  std::mt19937_64 gen(11);
  QueryClass c = Boolean(Family::kParity, 3);
  ExactOracle oracle(c);
  for (int rep = 0; rep < 50; ++rep) {
    WeightedDataset wd = RandomWd(gen, 3, 6);
    OracleAnswer a = *oracle.Solve(wd);
    EXPECT_NEAR(a.objective, ReverseScanMinimum(c, wd), 1e-12);
    EXPECT_NEAR(a.objective, EvalWeighted(*a.query, wd), 1e-12);
  }
  EXPECT_EQ(oracle.calls(), 50);
}

TEST(ExactOracleTest, Errors) {
  QueryClass c = Boolean(Family::kParity, 3);
  EXPECT_EQ(ExactOracle::Minimize(c, {{{1, 0}, 1.0}}).status().code(),
            absl::StatusCode::kInvalidArgument);
  QueryClass big = *MakeBooleanClass(Family::kParity, 30);
  EXPECT_EQ(ExactOracle::Minimize(big, {}).status().code(),
            absl::StatusCode::kResourceExhausted);
}

TEST(FailurePolicyTest, Parse) {
  EXPECT_EQ(FailurePolicy::Parse("never", 2)->mode(), FailurePolicy::Mode::kNever);
  EXPECT_EQ(FailurePolicy::Parse("bernoulli:0.3", 2)->mode(),
            FailurePolicy::Mode::kBernoulli);
  EXPECT_EQ(FailurePolicy::Parse("calls:1,4", 2)->ToString(), "calls:1,4");
  EXPECT_EQ(FailurePolicy::Parse("trigger", 2)->ToString(), "trigger:0,0");
  EXPECT_EQ(FailurePolicy::Parse("trigger:1,0", 2)->mode(),
            FailurePolicy::Mode::kTrigger);
  EXPECT_FALSE(FailurePolicy::Parse("bernoulli:1.5", 2).ok());
  EXPECT_FALSE(FailurePolicy::Parse("calls:0", 2).ok());
  EXPECT_FALSE(FailurePolicy::Parse("trigger:1", 2).ok());
  EXPECT_FALSE(FailurePolicy::Parse("sometimes", 2).ok());
}

TEST(CertifiableOracleTest, NeverEqualsExact) {
  std::mt19937_64 gen(3);
  QueryClass c = Boolean(Family::kConjunction, 3);
  CertifiableOracle oracle(c, FailurePolicy::Never(), Rng(1));
  for (int rep = 0; rep < 100; ++rep) {
    WeightedDataset wd = RandomWd(gen, 3, 5);
    OracleAnswer a = *oracle.Solve(wd);
    OracleAnswer e = *ExactOracle::Minimize(c, wd);
    EXPECT_EQ(a.query, e.query);
  }
}

TEST(CertifiableOracleTest, AlwaysFail) {
  QueryClass c = Boolean(Family::kConjunction, 3);
  CertifiableOracle oracle(c, *FailurePolicy::Bernoulli(1.0), Rng(1));
  for (int rep = 0; rep < 10; ++rep) {
    EXPECT_TRUE(oracle.Solve({{{1, 0, 1}, 1.0}})->failed());
  }
}

TEST(CertifiableOracleTest, BernoulliRateAndCertifiability) {
  std::mt19937_64 gen(5);
  QueryClass c = Boolean(Family::kConjunction, 2);
  CertifiableOracle oracle(c, *FailurePolicy::Bernoulli(0.3), Rng(9));
  int fails = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    WeightedDataset wd = RandomWd(gen, 2, 3);
    OracleAnswer a = *oracle.Solve(wd);
    if (a.failed()) {
      ++fails;
    } else {
      EXPECT_NEAR(EvalWeighted(*a.query, wd), ReverseScanMinimum(c, wd), 1e-12);
    }
  }
  EXPECT_NEAR(fails / 10000.0, 0.3, 0.02);
}

TEST(CertifiableOracleTest, ScheduledAndTriggeredFailures) {
  QueryClass c = Boolean(Family::kConjunction, 2);
  CertifiableOracle scheduled(c, FailurePolicy::ScheduledCalls({2}), Rng(0));
  WeightedDataset wd = {{{1, 1}, 1.0}};
  EXPECT_FALSE(scheduled.Solve(wd)->failed());
  EXPECT_TRUE(scheduled.Solve(wd)->failed());
  EXPECT_FALSE(scheduled.Solve(wd)->failed());

  CertifiableOracle triggered(c, *FailurePolicy::Parse("trigger", 2), Rng(0));
  EXPECT_FALSE(triggered.Solve(wd)->failed());
  EXPECT_TRUE(triggered.Solve({{{1, 1}, 1.0}, {{0, 0}, 0.5}})->failed());
}

TEST(NonCertifiableOracleTest, NeverEqualsExact) {
  std::mt19937_64 gen(4);
  QueryClass c = Boolean(Family::kParity, 3);
  NonCertifiableOracle oracle(c, FailurePolicy::Never(), LexicographicallyLast,
                              Rng(2));
  for (int rep = 0; rep < 50; ++rep) {
    WeightedDataset wd = RandomWd(gen, 3, 5);
    EXPECT_EQ(oracle.Solve(wd)->query, ExactOracle::Minimize(c, wd)->query);
  }
}

TEST(NonCertifiableOracleTest, CorruptedCallsReturnClassMember) {
  std::mt19937_64 gen(8);
  QueryClass c = Boolean(Family::kParity, 3);
  NonCertifiableOracle oracle(c, *FailurePolicy::Bernoulli(1.0),
                              LexicographicallyLast, Rng(2));
  for (int rep = 0; rep < 50; ++rep) {
    WeightedDataset wd = RandomWd(gen, 3, 5);
    OracleAnswer a = *oracle.Solve(wd);
    ASSERT_FALSE(a.failed());
    EXPECT_EQ(*a.query, c.Members()->back());
    EXPECT_GE(a.objective, ExactOracle::Minimize(c, wd)->objective);
    EXPECT_NEAR(a.objective, EvalWeighted(*a.query, wd), 1e-12);
  }
}

// A two-call algorithm: the second weighted problem depends on the first
// answer, so a failure in the middle exercises the continuation.
absl::StatusOr<std::optional<Query>> TwoStep(const Dataset& s, Rng& rng,
                                             WeightedOracle& oracle) {
  WeightedDataset wd;
  for (const DataPoint& x : s.points()) wd.push_back({x, -1.0 + rng.Uniform()});
  absl::StatusOr<OracleAnswer> first = oracle.Solve(wd);
  if (!first.ok()) return first.status();
  if (first->failed()) return std::optional<Query>();
  for (WeightedEntry& e : wd) {
    if (first->query->Evaluate(e.point)) e.weight += 2.0 * rng.Uniform();
  }
  absl::StatusOr<OracleAnswer> second = oracle.Solve(wd);
  if (!second.ok()) return second.status();
  return second->query;
}

TEST(CoupledRunTest, NeverPolicyGivesIdenticalOutputs) {
  QueryClass c = Boolean(Family::kConjunction, 3);
  Dataset s = *Dataset::Create({{1, 0, 1}, {1, 1, 1}, {0, 1, 0}});
  CertifiableOracle oracle(c, FailurePolicy::Never(), Rng(0));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CoupledOutcome out = *CoupledRun(TwoStep, s, seed, c, oracle);
    ASSERT_TRUE(out.heuristic.has_value());
    EXPECT_EQ(*out.heuristic, out.ideal);
    EXPECT_EQ(out.failed_calls, 0);
  }
}

TEST(CoupledRunTest, AlwaysFailKeepsIdealSide) {
  QueryClass c = Boolean(Family::kConjunction, 3);
  Dataset s = *Dataset::Create({{1, 0, 1}, {0, 1, 0}});
  CertifiableOracle oracle(c, *FailurePolicy::Bernoulli(1.0), Rng(0));
  CoupledOutcome out = *CoupledRun(TwoStep, s, 4, c, oracle);
  EXPECT_FALSE(out.heuristic.has_value());
  EXPECT_EQ(out.failed_calls, 2);
  ExactOracle exact(c);
  Rng rng(4);
  EXPECT_EQ(**TwoStep(s, rng, exact), out.ideal);
}

TEST(CoupledRunTest, NonFailSeedsMatchDirectRuns) {
  QueryClass c = Boolean(Family::kConjunction, 3);
  Dataset s = *Dataset::Create({{1, 0, 1}, {1, 1, 1}, {0, 1, 0}, {1, 1, 0}});
  CertifiableOracle oracle(c, *FailurePolicy::Bernoulli(0.5), Rng(77));
  int non_fail = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    CoupledOutcome out = *CoupledRun(TwoStep, s, seed, c, oracle);
    ExactOracle exact(c);
    Rng rng(seed);
    EXPECT_EQ(**TwoStep(s, rng, exact), out.ideal);
    if (out.heuristic.has_value()) {
      ++non_fail;
      EXPECT_EQ(*out.heuristic, out.ideal);
    }
  }
  EXPECT_GT(non_fail, 30);
  EXPECT_LT(non_fail, 120);
}

}  // namespace
}  // namespace oracle_dp
