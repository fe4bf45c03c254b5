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

#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "oracle_dp/core/query_class.h"
#include "oracle_dp/core/separator.h"
#include "oracle_dp/mechanisms/rspm.h"
#include "oracle_dp/oracles/oracle.h"
#include "oracle_dp/prsma/prsma.h"

namespace oracle_dp {
namespace {

Dataset RandomDataset(int n, int d, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DataPoint> points;
  for (int i = 0; i < n; ++i) points.push_back(DataPoint::FromMask(rng.UniformInt(1u << d), d));
  return *Dataset::Create(std::move(points));
}

TEST(PrsmaParamsTest, MatchesFormulasOnGrid) {
  for (double eps : {0.05, 0.1, 0.25, 0.5}) {
    for (double delta : {0.05, 0.1, 0.3, 0.5}) {
      PrsmaConfig cfg{eps, delta, /*raw=*/true, kDefaultRepsCap};
      PrsmaParams p = *DerivePrsmaParams(cfg, 100000);
      const int k = static_cast<int>(std::ceil((1 + std::log(2 / delta)) / eps));
      const long reps = static_cast<long>(std::ceil(std::log(k / delta) / delta));
      EXPECT_EQ(p.partitions, k);
      EXPECT_EQ(p.reps, reps);
      EXPECT_EQ(p.part_size, 100000 / k);
      EXPECT_DOUBLE_EQ(p.eps_prime,
                       1 / std::sqrt(8.0 * (100000 / k) * std::log(2 * k / delta)));
      EXPECT_DOUBLE_EQ(p.threshold, (1 + std::log(1 / delta)) / eps);
    }
  }
}

TEST(PrsmaParamsTest, DivisorConstantsAndExample) {
  PrsmaParams p = *DerivePrsmaParams({6.2, 1.1, false, kDefaultRepsCap}, 4000);
  EXPECT_NEAR(p.eps_run, 0.1, 1e-15);
  EXPECT_NEAR(p.delta_run, 0.1, 1e-15);
  EXPECT_EQ(p.partitions, 40);
  EXPECT_EQ(p.reps, 60);
}

TEST(PrsmaParamsTest, Errors) {
  EXPECT_EQ(DerivePrsmaParams({6.2, 1.1, false, kDefaultRepsCap}, 39).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_NE(DerivePrsmaParams({6.2, 1.1, false, kDefaultRepsCap}, 39)
                .status()
                .message()
                .find("40"),
            absl::string_view::npos);
  EXPECT_FALSE(DerivePrsmaParams({40.0, 1.1, false, kDefaultRepsCap}, 10000).ok());
  EXPECT_FALSE(DerivePrsmaParams({6.2, 0.0, false, kDefaultRepsCap}, 10000).ok());
  EXPECT_EQ(DerivePrsmaParams({0.1, 1e-4, true, 1000}, 10000).status().code(),
            absl::StatusCode::kResourceExhausted);
}

class PrsmaRunTest : public ::testing::Test {
 protected:
  QueryClass cls_ = *MakeBooleanClass(Family::kConjunction, 2);
  SeparatorSet u_ = *BuildSeparatorSet(cls_);
  // K = 5, reps = 5 for eps_run = delta_run = 1/2.
  PrsmaConfig cfg_{0.5, 0.5, true, kDefaultRepsCap};
};

TEST_F(PrsmaRunTest, PartitionDiscardsRemainder) {
  Dataset s = RandomDataset(23, 2, 1);
  ExactOracle oracle(cls_);
  PrsmaOutcome out = *PrsmaRspm(s, u_, cfg_, oracle, Rng(3));
  EXPECT_EQ(out.params.partitions, 5);
  EXPECT_EQ(out.discarded.size(), 3u);
  std::set<int> seen(out.discarded.begin(), out.discarded.end());
  for (const std::vector<int>& part : out.partition) {
    EXPECT_EQ(part.size(), 4u);
    seen.insert(part.begin(), part.end());
  }
  EXPECT_EQ(seen.size(), 23u);
  EXPECT_EQ(out.inner_invocations, out.params.partitions * out.params.reps);
}

TEST_F(PrsmaRunTest, NeverFailingReplaysChosenInnerRun) {
  Dataset s = RandomDataset(200, 2, 2);
  WeightedDataset records = UniformlyWeighted(s.points(), 1.0);
  CertifiableOracle oracle(cls_, FailurePolicy::Never(), Rng(0));
  int released = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Rng rng(seed);
    PrsmaOutcome out = *PrsmaRspm(s, u_, cfg_, oracle, rng);
    EXPECT_EQ(out.pass_count, out.params.partitions);
    if (out.failed()) continue;
    ++released;
    ExactOracle exact(cls_);
    Rng inner_rng =
        PrsmaInnerStream(rng, out.chosen_part, out.chosen_rep, out.params.reps);
    MechanismOutput replay =
        *Rspm(RspmInput{PartRecords(records, out, out.chosen_part), {}}, u_,
              out.params.eps_prime, exact, inner_rng);
    EXPECT_EQ(*replay.query, *out.result);
  }
  // The pass margin K - threshold is about ln(2)/eps_run, so roughly a
  // quarter of runs fail even with a perfect oracle.
  EXPECT_GT(released, 120);
}

TEST_F(PrsmaRunTest, AlwaysFailingOracleReleasesNothing) {
  Dataset s = RandomDataset(20, 2, 3);
  CertifiableOracle oracle(cls_, *FailurePolicy::Bernoulli(1.0), Rng(0));
  int above = 0;
  const int kRuns = 2000;
  for (std::uint64_t seed = 0; seed < kRuns; ++seed) {
    PrsmaOutcome out = *PrsmaRspm(s, u_, cfg_, oracle, Rng(seed));
    EXPECT_EQ(out.pass_count, 0);
    EXPECT_TRUE(out.failed());
    above += out.noisy_count > out.params.threshold;
  }
  // Pr[Lap(1/eps) > threshold] = delta / 2.
  EXPECT_LE(above / static_cast<double>(kRuns), 0.25 + 0.03);
}

TEST_F(PrsmaRunTest, HeavyFailuresMostlyFailAndStayCertified) {
  Dataset s = RandomDataset(100, 2, 4);
  WeightedDataset records = UniformlyWeighted(s.points(), 1.0);
  CertifiableOracle oracle(cls_, *FailurePolicy::Bernoulli(0.9), Rng(5));
  int fails = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Rng rng(seed);
    PrsmaOutcome out = *PrsmaRspm(s, u_, cfg_, oracle, rng);
    if (out.failed()) {
      ++fails;
      continue;
    }
    ExactOracle exact(cls_);
    Rng inner_rng =
        PrsmaInnerStream(rng, out.chosen_part, out.chosen_rep, out.params.reps);
    EXPECT_EQ(*Rspm(RspmInput{PartRecords(records, out, out.chosen_part), {}},
                    u_, out.params.eps_prime, exact, inner_rng)
                   ->query,
              *out.result);
  }
  EXPECT_GT(fails, 150);
}

TEST_F(PrsmaRunTest, PassCountIsOneSensitive) {
  // The trigger fails every call whose weighted dataset holds (0,0). With the
  // partition seed fixed, swapping one record changes at most one part.
  Dataset s = RandomDataset(60, 2, 6);
  std::vector<DataPoint> pts = s.points();
  for (DataPoint& p : pts) {
    if (p == DataPoint{0, 0}) p = DataPoint{1, 1};
  }
  Dataset clean = *Dataset::Create(pts);
  CertifiableOracle o1(cls_, *FailurePolicy::Parse("trigger", 2), Rng(0));
  CertifiableOracle o2(cls_, *FailurePolicy::Parse("trigger", 2), Rng(0));
  for (int idx = 0; idx < 60; idx += 7) {
    std::vector<DataPoint> swapped = pts;
    swapped[idx] = DataPoint{0, 0};
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      PrsmaOutcome a = *PrsmaRspm(clean, u_, cfg_, o1, Rng(seed));
      PrsmaOutcome b =
          *PrsmaRspm(*Dataset::Create(swapped), u_, cfg_, o2, Rng(seed));
      EXPECT_EQ(a.partition, b.partition);
      EXPECT_LE(std::abs(a.pass_count - b.pass_count), 1);
    }
  }
}

TEST(PrsmaAccuracyTest, BoundExpression) {
  const double b = PrsmaRspmAccuracyBound(3, std::log(8.0), 20000, 0.1, 0.1, 0.2);
  const double expected =
      (9 * std::log(30.0) * std::log(10.0) +
       std::sqrt(std::log(10.0) * std::log(80.0))) /
      std::sqrt(2000.0);
  EXPECT_NEAR(b, expected, 1e-12);
}

}  // namespace
}  // namespace oracle_dp
