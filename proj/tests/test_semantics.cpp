#include <gtest/gtest.h>

#include <cmath>

#include "gradarg/kernel_text.hpp"
#include "gradarg/semantics.hpp"
#include "gtest_helpers.hpp"
#include "test_support.hpp"

using namespace gradarg;
using gradarg::testing::error_kind_of;
using gradarg::testing::example1_topology;
using gradarg::testing::example1_weights;
using gradarg::testing::Recursion;
using gradarg::testing::self_attack_root;

namespace {

WeightedFramework example1() { return WeightedFramework::from_topology(example1_topology(), example1_weights()); }

const double golden = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace

TEST(PhiStep, FromWeights) {
  const auto out = phi_step(example1(), Kernel::h_categorizer(), std::vector<double>{0.43, 0.39, 0.92, 0.3});
  EXPECT_DOUBLE_EQ(out[0], 0.43);
  EXPECT_NEAR(out[1], 0.39 / 1.39, 1e-15);
  EXPECT_NEAR(out[2], 0.92 / 3.04, 1e-15);
  EXPECT_DOUBLE_EQ(out[3], 0.3);
}

TEST(PhiStep, AtZeroReturnsWeights) {
  const auto out = phi_step(example1(), Kernel::card_based(), std::vector<double>(4, 0.0));
  // Card-based reads its active attackers from the weights, so a2 still sees four.
  EXPECT_DOUBLE_EQ(out[0], 0.43);
  EXPECT_NEAR(out[2], 0.92 / 5.0, 1e-15);
  EXPECT_EQ(phi_step(example1(), Kernel::h_categorizer(), std::vector<double>(4, 0.0)), example1_weights());
}

TEST(FixedPoint, ExampleAgainstPublishedValues) {
  const auto f = example1();
  const auto hc = evaluate(f, Kernel::h_categorizer());
  const auto mb = evaluate(f, Kernel::max_based());
  const auto cb = evaluate(f, Kernel::card_based());
  const std::vector<double> hc_published{0.43, 0.30, 0.38, 0.30};
  const std::vector<double> mb_published{0.43, 0.30, 0.58, 0.30};
  const std::vector<double> cb_published{0.43, 0.18, 0.17, 0.30};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(hc.result.degrees[i], hc_published[i], 5e-3) << i;
    EXPECT_NEAR(mb.result.degrees[i], mb_published[i], 5e-3) << i;
    EXPECT_NEAR(cb.result.degrees[i], cb_published[i], 5e-3) << i;
  }
  EXPECT_EQ(hc.ranking, parse_ordering("a0 > a2 > a1 = a3"));
  EXPECT_EQ(mb.ranking, parse_ordering("a2 > a0 > a1 = a3"));
  EXPECT_EQ(cb.ranking, parse_ordering("a0 > a3 > a1 > a2"));
}

// Each attacked argument of the example solves a quadratic once its attackers are known.
TEST(FixedPoint, ExampleAgainstClosedForm) {
  const auto f = example1();
  const auto hc = fixed_point(f, Kernel::h_categorizer()).degrees;
  EXPECT_NEAR(hc[1], self_attack_root(1.0, 0.39), 1e-10);
  EXPECT_NEAR(hc[1], 0.3, 1e-10);
  EXPECT_NEAR(hc[2], self_attack_root(0.43 + 0.3 + 0.3 + 1.0, 0.92), 1e-10);

  const auto mb = fixed_point(f, Kernel::max_based()).degrees;
  EXPECT_NEAR(mb[1], 0.3, 1e-10);
  EXPECT_NEAR(mb[2], self_attack_root(1.0, 0.92), 1e-10);

  const auto cb = fixed_point(f, Kernel::card_based()).degrees;
  const double x1 = self_attack_root(2.0, 0.39);
  EXPECT_NEAR(cb[1], x1, 1e-10);
  // x2 (5 + (0.43 + x1 + x2 + 0.3) / 4) = 0.92
  EXPECT_NEAR(cb[2], self_attack_root(20.0 + 0.73 + x1, 4.0 * 0.92), 1e-10);
  EXPECT_DOUBLE_EQ(cb[0], 0.43);
}

TEST(FixedPoint, SingleSelfAttackerReachesGoldenRatio) {
  const auto f = WeightedFramework::from_topology(Topology::from_edges(1, {{0, 0}}), {1.0});
  const auto r = fixed_point(f, Kernel::h_categorizer());
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.degrees[0], golden, 1e-9);
  EXPECT_NEAR(fixed_point(f, Kernel::max_based()).degrees[0], golden, 1e-9);
  EXPECT_NEAR(fixed_point(f, Kernel::card_based()).degrees[0], std::sqrt(2.0) - 1.0, 1e-9);
}

TEST(FixedPoint, UnattackedDegreeIsWeight) {
  const auto f = WeightedFramework::from_topology(Topology::from_edges(3, {}), {0.1, 0.0, 1.0});
  for (const auto& k : {Kernel::h_categorizer(), Kernel::max_based(), Kernel::card_based()}) {
    EXPECT_EQ(fixed_point(f, k).degrees, f.weights());
  }
}

TEST(FixedPoint, ExhaustedBudgetIsReported) {
  FixedPointConfig c;
  c.max_iterations = 1;
  const auto r = fixed_point(example1(), Kernel::h_categorizer(), c);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_GT(r.residual, c.tolerance);
}

TEST(FixedPoint, ConfigErrors) {
  const auto f = example1();
  FixedPointConfig c;
  c.tolerance = 0.0;
  EXPECT_EQ(error_kind_of([&] { fixed_point(f, Kernel::h_categorizer(), c); }), ErrorKind::invalid_parameter);
  c = {};
  c.max_iterations = 0;
  EXPECT_EQ(error_kind_of([&] { fixed_point(f, Kernel::h_categorizer(), c); }), ErrorKind::invalid_parameter);
  c = {};
  c.initial_point = std::vector<double>{0.5};
  EXPECT_EQ(error_kind_of([&] { fixed_point(f, Kernel::h_categorizer(), c); }), ErrorKind::dimension_mismatch);
  c.initial_point = std::vector<double>{0.5, 0.5, 2.0, 0.5};
  EXPECT_EQ(error_kind_of([&] { fixed_point(f, Kernel::h_categorizer(), c); }), ErrorKind::weight_out_of_range);
}

TEST(FixedPoint, UniqueFromAnyStart) {
  gradarg::testing::Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = gradarg::testing::random_topology(rng);
    const auto f = WeightedFramework::from_topology(t, gradarg::testing::random_vector(rng, t.size()));
    for (const auto& k : {Kernel::h_categorizer(), Kernel::max_based(), Kernel::card_based(), Kernel::lp_norm(2.0)}) {
      const auto base = fixed_point(f, k);
      ASSERT_TRUE(base.converged);
      for (int s = 0; s < 3; ++s) {
        FixedPointConfig c;
        c.initial_point = gradarg::testing::random_vector(rng, t.size());
        const auto other = fixed_point(f, k, c);
        ASSERT_LE(gradarg::testing::max_abs_diff(base.degrees, other.degrees), 10.0 * c.tolerance)
            << "trial " << trial << " " << to_string(k);
      }
    }
  }
}

TEST(FixedPoint, ResidualAndRange) {
  gradarg::testing::Rng rng(32);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = gradarg::testing::random_topology(rng);
    const auto f = WeightedFramework::from_topology(t, gradarg::testing::random_vector(rng, t.size()));
    for (const auto& k : {Kernel::h_categorizer(), Kernel::max_based(), Kernel::card_based()}) {
      const auto r = fixed_point(f, k);
      ASSERT_TRUE(r.converged);
      ASSERT_LE(r.fixed_point_residual, FixedPointConfig{}.tolerance);
      for (double x : r.degrees) ASSERT_TRUE(x >= 0.0 && x <= 1.0);
    }
  }
}

TEST(FixedPoint, StepReversesOrder) {
  gradarg::testing::Rng rng(33);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = gradarg::testing::random_topology(rng);
    const auto n = t.size();
    const auto f = WeightedFramework::from_topology(t, gradarg::testing::random_vector(rng, n, 0.01, 1.0));
    auto x = gradarg::testing::random_vector(rng, n);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + (1.0 - x[i]) * gradarg::testing::uniform(rng);
    for (const auto& k : {Kernel::h_categorizer(), Kernel::max_based(), Kernel::card_based()}) {
      const auto px = phi_step(f, k, x);
      const auto py = phi_step(f, k, y);
      for (std::size_t i = 0; i < n; ++i) ASSERT_LE(py[i], px[i] + 1e-15);
    }
  }
}

TEST(FixedPoint, AgreesWithRecursiveDefinition) {
  gradarg::testing::Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gradarg::testing::uniform_size(rng, 1, 6);
    const auto t = gradarg::testing::random_topology(rng, n, gradarg::testing::uniform(rng));
    auto w = gradarg::testing::random_vector(rng, n);
    if (gradarg::testing::uniform(rng) < 0.3) w[gradarg::testing::uniform_size(rng, 0, n - 1)] = 0.0;
    const auto f = WeightedFramework::from_topology(t, w);
    const std::pair<Kernel, Recursion> cases[] = {{Kernel::h_categorizer(), Recursion::h_categorizer},
                                                  {Kernel::max_based(), Recursion::max_based},
                                                  {Kernel::card_based(), Recursion::card_based}};
    for (const auto& [k, kind] : cases) {
      const auto expected = gradarg::testing::recursive_degrees(n, t.edges(), w, kind);
      ASSERT_LE(gradarg::testing::max_abs_diff(fixed_point(f, k).degrees, expected), 1e-10)
          << "trial " << trial << " " << to_string(k);
    }
  }
}

TEST(Evaluate, RankingTiesUseSolverTolerance) {
  // Two unattacked arguments with equal weight and one attacked.
  const auto f = WeightedFramework::from_topology(Topology::from_edges(3, {{0, 2}}), {0.6, 0.6, 0.6});
  const auto e = evaluate(f, Kernel::h_categorizer());
  EXPECT_EQ(e.ranking, parse_ordering("a0 = a1 > a2"));
}
