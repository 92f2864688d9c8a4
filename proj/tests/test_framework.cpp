#include <gtest/gtest.h>

#include <limits>

#include "gradarg/framework.hpp"
#include "gtest_helpers.hpp"
#include "test_support.hpp"

using namespace gradarg;
using gradarg::testing::example1_topology;
using gradarg::testing::example1_weights;
using gradarg::testing::error_kind_of;

namespace {

std::vector<std::string> ids(std::initializer_list<const char*> list) { return {list.begin(), list.end()}; }

}  // namespace

TEST(BuildFramework, Example1IsValid) {
  const auto f = WeightedFramework::build(ids({"a0", "a1", "a2", "a3"}),
                                          {{"a0", "a2"}, {"a1", "a1"}, {"a1", "a2"}, {"a2", "a2"}, {"a3", "a2"}},
                                          example1_weights());
  EXPECT_EQ(f.size(), 4u);
  EXPECT_EQ(f.topology().index_of("a2"), 2u);
  EXPECT_EQ(f.topology().edge_count(), 5u);
  EXPECT_EQ(f.weights(), example1_weights());
}

TEST(BuildFramework, SingleUnattackedArgument) {
  const auto f = WeightedFramework::build(ids({"a0"}), {}, {1.0});
  EXPECT_EQ(f.size(), 1u);
  EXPECT_TRUE(f.topology().attackers(0).empty());
}

TEST(BuildFramework, RejectsWeightOutsideUnitInterval) {
  EXPECT_EQ(error_kind_of([] { WeightedFramework::build(ids({"a0"}), {}, {1.2}); }), ErrorKind::weight_out_of_range);
  EXPECT_EQ(error_kind_of([] { WeightedFramework::build(ids({"a0"}), {}, {-0.1}); }), ErrorKind::weight_out_of_range);
  EXPECT_EQ(error_kind_of([] {
              WeightedFramework::build(ids({"a0"}), {}, {std::numeric_limits<double>::quiet_NaN()});
            }),
            ErrorKind::weight_out_of_range);
}

TEST(BuildFramework, RejectsDuplicateAndUnknownIds) {
  EXPECT_EQ(error_kind_of([] { Topology::build(ids({"a", "b", "a"}), {}); }), ErrorKind::duplicate_id);
  EXPECT_EQ(error_kind_of([] { Topology::build(ids({"a", "b"}), {{"a", "c"}}); }), ErrorKind::unknown_id);
  EXPECT_EQ(error_kind_of([] { WeightedFramework::build(ids({"a", "b"}), {}, {0.5}); }),
            ErrorKind::dimension_mismatch);
}

TEST(BuildFramework, RepeatedAttacksCollapse) {
  const auto t = Topology::build(ids({"a", "b"}), {{"a", "b"}, {"a", "b"}, {"b", "b"}});
  EXPECT_EQ(t.edge_count(), 2u);
  EXPECT_EQ(t.attack_count(1), 2u);
}

TEST(Attackers, Example1) {
  const auto t = example1_topology();
  EXPECT_EQ(t.attackers("a2"), ids({"a0", "a1", "a2", "a3"}));
  EXPECT_TRUE(t.attackers("a0").empty());
  EXPECT_EQ(t.attackers("a1"), ids({"a1"}));
  EXPECT_EQ(error_kind_of([&] { t.attackers("zz"); }), ErrorKind::unknown_id);
}

TEST(AttackMatrix, Example1Rows) {
  const auto m = example1_topology().attack_matrix();
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_EQ(m(2, j), 1) << j;
    EXPECT_EQ(m(0, j), 0) << j;
  }
  EXPECT_EQ(m(1, 1), 1);
  EXPECT_EQ(m(1, 0), 0);
}

TEST(AttackMatrix, EmptyAndSelfLoop) {
  const auto empty = Topology::from_edges(3, {}).attack_matrix();
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(empty(i, j), 0);
  }
  const auto loop = Topology::from_edges(1, {{0, 0}}).attack_matrix();
  EXPECT_EQ(loop.size(), 1u);
  EXPECT_EQ(loop(0, 0), 1);
}

TEST(AttackMatrix, AgreesWithAttackersOnRandomTopologies) {
  gradarg::testing::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = gradarg::testing::random_topology(rng);
    const auto m = t.attack_matrix();
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto row = t.attackers(i);
      for (std::size_t j = 0; j < t.size(); ++j) {
        const bool listed = std::find(row.begin(), row.end(), j) != row.end();
        ASSERT_EQ(m(i, j) == 1, listed) << "trial " << trial << " (" << i << "," << j << ")";
      }
    }
  }
}

TEST(OrderingFromDegrees, HCategorizerDegrees) {
  const auto t = example1_topology();
  const auto p = ordering_from_degrees(t, std::vector<double>{0.43, 0.30, 0.38, 0.30}, 1e-9);
  EXPECT_EQ(p, OrderingPartition::from_classes({{"a0"}, {"a2"}, {"a1", "a3"}}));
}

TEST(OrderingFromDegrees, CardBasedDegrees) {
  const auto t = example1_topology();
  const auto p = ordering_from_degrees(t, std::vector<double>{0.43, 0.18, 0.17, 0.30}, 1e-9);
  EXPECT_EQ(p, OrderingPartition::from_classes({{"a0"}, {"a3"}, {"a1"}, {"a2"}}));
  EXPECT_EQ(p.to_string(), "a0 > a3 > a1 > a2");
}

TEST(OrderingFromDegrees, AllEqualIsOneClass) {
  const auto t = example1_topology();
  const auto p = ordering_from_degrees(t, std::vector<double>(4, 0.25), 0.0);
  EXPECT_EQ(p.class_count(), 1u);
}

TEST(OrderingFromDegrees, TiesCloseTransitively) {
  const auto t = Topology::from_edges(3, {});
  const double tol = 1e-6;
  const auto p = ordering_from_degrees(t, std::vector<double>{0.5, 0.5 + 0.6 * tol, 0.5 + 1.2 * tol}, tol);
  EXPECT_EQ(p.class_count(), 1u);
  EXPECT_EQ(error_kind_of([&] { ordering_from_degrees(t, std::vector<double>{0.1, 0.2, 0.3}, -1.0); }),
            ErrorKind::invalid_parameter);
}

TEST(OrderingFromDegrees, DistinctValuesGiveDescendingSingletons) {
  gradarg::testing::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gradarg::testing::uniform_size(rng, 1, 8);
    const auto t = Topology::from_edges(n, {});
    const auto x = gradarg::testing::random_vector(rng, n);
    const auto p = ordering_from_degrees(t, x, 0.0);
    ASSERT_EQ(p.class_count(), n);
    for (std::size_t k = 1; k < n; ++k) {
      ASSERT_GT(x[t.index_of(p.classes()[k - 1][0])], x[t.index_of(p.classes()[k][0])]);
    }
  }
}

TEST(ParseOrdering, WrittenOrderIsPreferenceOrder) {
  const auto p = parse_ordering("a0 > a1 = a3 > a2");
  EXPECT_EQ(p, OrderingPartition::from_classes({{"a0"}, {"a1", "a3"}, {"a2"}}));
  EXPECT_EQ(*p.class_of("a3"), 1u);
  EXPECT_EQ(parse_ordering("a0>a1=a3>a2"), p);
}

TEST(ParseOrdering, SingleArgument) {
  const auto t = Topology::from_edges(1, {});
  EXPECT_EQ(parse_ordering("a0", t), OrderingPartition::from_classes({{"a0"}}));
}

TEST(ParseOrdering, Errors) {
  EXPECT_EQ(error_kind_of([] { parse_ordering("a0 > a0"); }), ErrorKind::duplicate_id);
  EXPECT_EQ(error_kind_of([] { parse_ordering(""); }), ErrorKind::syntax_error);
  EXPECT_EQ(error_kind_of([] { parse_ordering("a0 >"); }), ErrorKind::syntax_error);
  EXPECT_EQ(error_kind_of([] { parse_ordering("> a0"); }), ErrorKind::syntax_error);
  EXPECT_EQ(error_kind_of([] { parse_ordering("a0 a1"); }), ErrorKind::syntax_error);
  EXPECT_EQ(error_kind_of([] { parse_ordering("a0 => a1"); }), ErrorKind::syntax_error);

  const auto t = example1_topology();
  EXPECT_EQ(error_kind_of([&] { parse_ordering("a0 > a1 > a2", t); }), ErrorKind::missing_argument);
  EXPECT_EQ(error_kind_of([&] { parse_ordering("a0 > a1 > a2 > a3 > a9", t); }), ErrorKind::unknown_id);
}

TEST(ParseOrdering, RenderThenParseIsIdentity) {
  gradarg::testing::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = gradarg::testing::random_topology(rng);
    const auto p = gradarg::testing::random_partition(rng, t);
    const auto back = parse_ordering(p.to_string(), t);
    ASSERT_EQ(back, p);
    ASSERT_EQ(back.classes(), p.classes());
  }
}
