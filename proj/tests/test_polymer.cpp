#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "polymerdyn/expansion.hpp"
#include "polymerdyn/polymer.hpp"
#include "polymerdyn/potts.hpp"

using namespace polymerdyn;

namespace {

PottsParams params(int q, double beta, double alpha = 1.0, int r = 0) {
  PottsParams p;
  p.q = q;
  p.beta = beta;
  p.alpha = alpha;
  p.r = r;
  return p;
}

// Model with no allowed polymers on any host.
PolymerModel empty_model(const SimpleGraph& g) {
  PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  m.allowed = [](const Polymer&) { return false; };
  m.max_size = 0;
  return m;
}

}  // namespace

TEST(Polymer, CompatibilityOnP4) {
  const SimpleGraph g = path_graph(4);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  const Polymer a = make_polymer(m, {0}, {1});
  const Polymer b = make_polymer(m, {1}, {1});
  const Polymer c = make_polymer(m, {2}, {2});
  EXPECT_TRUE(are_compatible(g, a, c));
  EXPECT_TRUE(are_compatible(g, c, a));
  EXPECT_FALSE(are_compatible(g, a, b));
  EXPECT_FALSE(are_compatible(g, b, a));
  EXPECT_FALSE(are_compatible(g, a, a));
}

TEST(Polymer, EdgeCount) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  EXPECT_EQ(polymer_edge_count(g, make_polymer(m, {1}, {1})), 2u);
  EXPECT_EQ(polymer_edge_count(g, make_polymer(m, {0}, {1})), 1u);
  EXPECT_EQ(polymer_edge_count(g, make_polymer(m, {0, 1}, {1, 2})), 2u);
}

TEST(Polymer, Validity) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0, 1.0, 1));
  EXPECT_THROW(make_polymer(m, {0}, {1}), ValidationError);  // ground colour
  EXPECT_THROW(make_polymer(m, {0, 2}, {0, 0}), ValidationError);  // disconnected
  EXPECT_THROW(make_polymer(m, {0}, {3}), ValidationError);  // out of range
  EXPECT_THROW(make_polymer(m, {0, 1}, {0}), ValidationError);  // size mismatch
  EXPECT_NO_THROW(make_polymer(m, {0, 1}, {0, 2}));
}

TEST(Polymer, ConfigurationSortedByMinimum) {
  const SimpleGraph g = path_graph(5);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  PolymerConfiguration c;
  c.insert(make_polymer(m, {4}, {1}));
  c.insert(make_polymer(m, {0}, {2}));
  c.insert(make_polymer(m, {2}, {1}));
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].vertices.front(), 0u);
  EXPECT_EQ(c[1].vertices.front(), 2u);
  EXPECT_EQ(c[2].vertices.front(), 4u);
}

TEST(Polymer, AllowedAssignmentsCount) {
  const SimpleGraph g = path_graph(7);
  const PolymerModel m = potts_polymer_model(g, params(4, 1.0));
  std::size_t count = 0;
  for_each_allowed_polymer(m, VertexSet{2, 3}, [&](Polymer&&) { ++count; });
  EXPECT_EQ(count, 9u);  // (q-1)^|S|
}

TEST(Polymer, PolymersOnEdgeDedup) {
  const SimpleGraph g = path_graph(7);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  const PolymerList list = polymers_on_edge(m, Edge{2, 3}, 100);
  std::set<Polymer> seen(list.polymers.begin(), list.polymers.end());
  EXPECT_EQ(seen.size(), list.polymers.size());
  for (const auto& p : list.polymers) EXPECT_TRUE(p.vertices.contains(2) || p.vertices.contains(3));
  EXPECT_TRUE(std::is_sorted(list.degrees.begin(), list.degrees.end()));
}

TEST(Polymer, SamplingThreshold) { EXPECT_NEAR(sampling_threshold(3), 3 * std::log(8 * std::exp(3.0) * 2), 1e-12); }

TEST(SamplingCondition, K4HighBeta) {
  const SimpleGraph g = complete_graph(4);
  const PottsParams p = params(3, 10.0, 2.0 / 3.0);
  const PolymerModel m = potts_polymer_model(g, p);
  const auto rep = check_sampling_condition(m, p.tau(), 12);
  EXPECT_TRUE(rep.inequality_ok);
  EXPECT_GT(rep.checked, 0u);
  EXPECT_GE(rep.min_slack, -1e-12);
  // tau = 20/3 sits below 3 log(8e^3 * 2).
  EXPECT_FALSE(rep.threshold_ok);
}

TEST(SamplingCondition, K4LowBeta) {
  const SimpleGraph g = complete_graph(4);
  const PottsParams p = params(3, 0.1, 2.0 / 3.0);
  const auto rep = check_sampling_condition(potts_polymer_model(g, p), p.tau(), 12);
  EXPECT_TRUE(rep.inequality_ok);
  EXPECT_FALSE(rep.threshold_ok);
  EXPECT_FALSE(rep.passed());
}

TEST(SamplingCondition, InRegimePasses) {
  const SimpleGraph g = complete_graph(4);
  const PottsParams p = params(3, 30.0, 2.0 / 3.0);
  EXPECT_TRUE(check_sampling_condition(potts_polymer_model(g, p), p.tau(), 12).passed());
}

TEST(SamplingCondition, DetectsOverstatedAlpha) {
  const SimpleGraph g = path_graph(10);
  const PottsParams p = params(3, 30.0, 1.0);
  const auto rep = check_sampling_condition(potts_polymer_model(g, p), p.tau(), 12);
  EXPECT_FALSE(rep.inequality_ok);
  EXPECT_FALSE(rep.violations.empty());
}

TEST(SamplingCondition, VacuousModel) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = empty_model(g);
  const auto rep = check_sampling_condition(m, 100, 10);
  EXPECT_TRUE(rep.passed());
  EXPECT_EQ(rep.checked, 0u);
}

TEST(MixingCondition, P3Beta3) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 3.0));
  const Polymer mid = make_polymer(m, {1}, {1});
  const double lhs = mixing_condition_lhs(m, mid).linear();
  EXPECT_NEAR(lhs, 4 * std::exp(-3.0) + 4 * std::exp(-6.0), 1e-14);
  EXPECT_NEAR(lhs, 0.209, 1e-3);
  EXPECT_LE(lhs, 2 / std::exp(1.0));
}

TEST(MixingCondition, P3HighTemperatureFails) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 0.01));
  const double lhs = mixing_condition_lhs(m, make_polymer(m, {1}, {1})).linear();
  EXPECT_NEAR(lhs, 4 * std::exp(-0.01) + 4 * std::exp(-0.02), 1e-12);
  EXPECT_GT(lhs, 2 / std::exp(1.0));
  EXPECT_FALSE(check_mixing_condition(m, 1 / std::exp(1.0)).passed());
}

TEST(MixingCondition, VacuousModel) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = empty_model(g);
  const PolymerModel full = potts_polymer_model(g, params(3, 1.0));
  EXPECT_TRUE(mixing_condition_lhs(m, make_polymer(full, {1}, {1})).is_zero());
  EXPECT_TRUE(check_mixing_condition(m, 0.1).passed());
}

TEST(MixingCondition, ImpliedBySamplingCondition) {
  for (std::size_t n = 4; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      PottsParams p = params(3, 1.0, expansion_parameter(g));
      p.beta = p.beta_threshold() * (1 + 1e-9);
      const PolymerModel m = potts_polymer_model(g, p);
      const auto s = check_sampling_condition(m, p.tau(), 4 * n * n);
      ASSERT_TRUE(s.passed());
      EXPECT_TRUE(check_mixing_condition(m, 1 / std::exp(1.0)).passed());
    }
  }
}
