#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "polymerdyn/expansion.hpp"
#include "polymerdyn/oracle.hpp"
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

}  // namespace

TEST(Potts, Validate) {
  EXPECT_NO_THROW(validate(params(3, 1.0)));
  EXPECT_NO_THROW(validate(params(2, 1.0)));
  EXPECT_THROW(validate(params(1, 1.0)), ValidationError);
  EXPECT_THROW(validate(params(65, 1.0)), ValidationError);
  EXPECT_THROW(validate(params(3, -1.0)), ValidationError);
  EXPECT_THROW(validate(params(3, 1.0, 0.0)), ValidationError);
  EXPECT_THROW(validate(params(3, 1.0, 1.0, 3)), ValidationError);
}

TEST(Potts, DerivedQuantities) {
  const PottsParams p = params(3, 30.0, 0.5);
  EXPECT_DOUBLE_EQ(p.tau(), 15.0);
  EXPECT_NEAR(p.r_geo(), 15.0 - std::log(12 * std::exp(2.0) * 2), 1e-12);
  EXPECT_NEAR(p.beta_threshold(), 6 * std::log(8 * std::exp(3.0) * 2), 1e-12);
  EXPECT_FALSE(p.in_regime());
}

TEST(Potts, BichromaticBoundary) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  EXPECT_EQ(bichromatic_boundary(g, make_polymer(m, {0, 1}, {1, 1})), 1u);
  EXPECT_EQ(bichromatic_boundary(g, make_polymer(m, {0, 1}, {1, 2})), 2u);
  EXPECT_EQ(bichromatic_boundary(g, make_polymer(m, {1}, {1})), 2u);
}

TEST(Potts, ModelAllowedAndWeight) {
  const SimpleGraph g = path_graph(3);
  const double beta = 1.7;
  const PolymerModel m = potts_polymer_model(g, params(3, beta));
  EXPECT_FALSE(m.allowed(make_polymer(m, {0, 1}, {1, 1})));
  const Polymer mid = make_polymer(m, {1}, {1});
  EXPECT_TRUE(m.allowed(mid));
  EXPECT_DOUBLE_EQ(m.log_weight(mid), -2 * beta);
  EXPECT_EQ(m.max_size, 1u);
}

TEST(Potts, GroundColourRejected) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0, 1.0, 2));
  EXPECT_THROW(make_polymer(m, {1}, {2}), ValidationError);
}

TEST(Potts, ConfigToColouring) {
  const SimpleGraph g = path_graph(3);
  const PolymerModel m = potts_polymer_model(g, params(3, 1.0));
  PolymerConfiguration c;
  c.insert(make_polymer(m, {0}, {1}));
  EXPECT_EQ(config_to_colouring(3, c, 0), (Colouring{1, 0, 0}));
  EXPECT_EQ(config_to_colouring(3, {}, 0), (Colouring{0, 0, 0}));
}

TEST(Potts, WeightIdentityExample) {
  const SimpleGraph g = path_graph(3);
  const double beta = 2.3;
  const PolymerModel m = potts_polymer_model(g, params(3, beta));
  PolymerConfiguration c;
  c.insert(make_polymer(m, {0}, {1}));
  c.insert(make_polymer(m, {2}, {1}));
  const Colouring s = config_to_colouring(3, c, 0);
  EXPECT_EQ(s, (Colouring{1, 0, 1}));
  double lw = beta * 2;
  for (const auto& p : c) lw += m.log_weight(p);
  EXPECT_NEAR(lw, beta * static_cast<double>(monochromatic_edges(g, s)), 1e-12);
  EXPECT_NEAR(lw, 0.0, 1e-12);
}

TEST(Potts, MonochromaticEdges) {
  const SimpleGraph g = path_graph(3);
  EXPECT_EQ(monochromatic_edges(g, {0, 0, 0}), 2u);
  EXPECT_EQ(monochromatic_edges(g, {1, 0, 0}), 1u);
  EXPECT_EQ(monochromatic_edges(g, {0, 1, 0}), 0u);
}

TEST(Potts, DominantColour) {
  EXPECT_EQ(dominant_colour({2, 2, 1}, 3), 2);
  EXPECT_EQ(dominant_colour({0, 1, 0, 1}, 3), -1);
}

namespace {

// Largest connected set of vertices not coloured r.
std::size_t largest_defect(const SimpleGraph& g, const Colouring& s, int r) {
  std::size_t best = 0;
  std::vector<Vertex> off;
  for (Vertex v = 0; v < s.size(); ++v)
    if (s[v] != r) off.push_back(v);
  if (off.empty()) return 0;
  const SimpleGraph h = induced_subgraph(g, VertexSet(off));
  for (const VertexSet& comp : connected_components(h)) best = std::max(best, comp.size());
  return best;
}

void check_bijection(const SimpleGraph& g, int q, int r, double beta) {
  const std::size_t n = g.vertex_count();
  const PolymerModel m = potts_polymer_model(g, params(q, beta, 1.0, r));
  const PolymerStateSpace space = enumerate_state_space(m);
  std::set<Colouring> images;
  for (std::size_t i = 0; i < space.configs.size(); ++i) {
    const Colouring s = config_to_colouring(n, space.configuration(i), r);
    ASSERT_LT(2 * largest_defect(g, s, r), n);
    ASSERT_TRUE(images.insert(s).second);
    const double lhs = beta * static_cast<double>(g.edge_count()) + space.log_mass[i];
    ASSERT_NEAR(lhs, beta * static_cast<double>(monochromatic_edges(g, s)), 1e-12);
  }
  std::uint64_t image = 0, restricted = 0;
  for (auto c : polymer_image_histogram(g, q, r)) image += c;
  for (auto c : monochromatic_histogram(g, q, r)) restricted += c;
  EXPECT_EQ(images.size(), image);
  EXPECT_LE(restricted, image);
  EXPECT_NEAR(beta * static_cast<double>(g.edge_count()) + space.log_Z, exact_potts_polymer_image_logZ(g, q, beta, r),
              1e-12);
}

}  // namespace

TEST(Potts, BijectionSmallHosts) {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& g : connected_graphs(n)) check_bijection(g, 3, 1, 0.7);
  check_bijection(path_graph(7), 3, 0, 1.1);
  check_bijection(cycle_graph(8), 3, 2, 0.4);
  check_bijection(complete_graph(8), 2, 0, 0.4);
}

TEST(Potts, ImageStrictlyLargerOnP3) {
  // (1, 0, 1) comes from two single-vertex polymers but has one vertex coloured 0.
  const SimpleGraph g = path_graph(3);
  std::uint64_t image = 0, restricted = 0;
  for (auto c : polymer_image_histogram(g, 2, 0)) image += c;
  for (auto c : monochromatic_histogram(g, 2, 0)) restricted += c;
  EXPECT_EQ(image, 5u);
  EXPECT_EQ(restricted, 4u);
}

TEST(Potts, DecayFromExpansion) {
  for (std::size_t n = 2; n <= 6; ++n) {
    for (const auto& g : connected_graphs(n)) {
      const double alpha = expansion_parameter(g);
      const PottsParams p = params(3, 1.3, alpha);
      const PolymerModel m = potts_polymer_model(g, p);
      const PolymerList all = all_allowed_polymers(m);
      for (std::size_t i = 0; i < all.polymers.size(); ++i)
        EXPECT_LE(m.log_weight(all.polymers[i]), -p.tau() * static_cast<double>(all.degrees[i]) + 1e-12);
    }
  }
}

TEST(Potts, GroundStatesApproximateZ) {
  const SimpleGraph k33(6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
  for (const SimpleGraph& g : {complete_graph(4), cycle_graph(5), k33, complete_graph(7), cycle_graph(8)}) {
    const int q = 3;
    const double alpha = expansion_parameter(g);
    const double beta = 2 * std::log(std::exp(1.0) * q) / alpha + 0.1;
    const double logZ = exact_potts_logZ(g, q, beta);
    const double logZr = exact_potts_restricted_logZ(g, q, beta, 0);
    EXPECT_LE(std::abs(std::log(q) + logZr - logZ), std::exp(-static_cast<double>(g.vertex_count())))
        << "n = " << g.vertex_count();
  }
}
