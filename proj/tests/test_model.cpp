#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "repnet/analysis.hpp"
#include "repnet/model.hpp"

using namespace repnet;

namespace {

CommunityState make(const ModelParams& p, std::vector<double> data) {
  return CommunityState(p.groups(), p.levels(), std::move(data));
}

// Random valid state: each group's share spread over levels by a Dirichlet-like draw.
CommunityState random_state(const ModelParams& p, std::mt19937_64& gen, bool sparse = false) {
  std::exponential_distribution<double> expo(1.0);
  std::bernoulli_distribution zero(0.4);
  CommunityState s = CommunityState::zeros(p);
  for (Group g : kAllGroups) {
    if (static_cast<std::size_t>(g) >= p.groups()) break;
    auto span = s.group(g);
    double total = 0.0;
    for (auto& v : span) {
      v = (sparse && zero(gen)) ? 0.0 : expo(gen);
      total += v;
    }
    if (total == 0.0) {
      span[0] = 1.0;
      total = 1.0;
    }
    for (auto& v : span) v *= p.group_fraction(g) / total;
  }
  return s;
}

ModelParams random_params(std::mt19937_64& gen, Variant v) {
  std::uniform_real_distribution<double> curv(-1.0, 1.0), unit(0.0, 1.0), half(0.0, 0.5);
  std::uniform_int_distribution<std::size_t> steps(1, 12);
  const std::size_t L = steps(gen);
  switch (v) {
    case Variant::NoClique: return no_clique_params(L, curv(gen), curv(gen));
    case Variant::OneClique: return one_clique_params(L, curv(gen), curv(gen), unit(gen), half(gen), unit(gen));
    case Variant::TwoCliques: {
      const double f1 = half(gen), f2 = half(gen);
      return two_cliques_params(L, curv(gen), curv(gen), f1, f2, half(gen), unit(gen));
    }
  }
  return no_clique_params(L, 0, 0);
}

}  // namespace

TEST(Selection, AllMassAtTop) {
  const auto p = no_clique_params(2, 0, 0);
  const auto s = selection_probs(make(p, {0, 0, 1}), p);
  EXPECT_EQ(s.reg, (std::vector<double>{0, 0, 1}));
}

TEST(Selection, ZeroDenominatorGivesZeros) {
  const auto p = no_clique_params(2, 0, 0);
  const auto s = selection_probs(make(p, {1, 0, 0}), p);
  EXPECT_EQ(s.reg, (std::vector<double>{0, 0, 0}));
  EXPECT_EQ(s.denominator, 0.0);
}

TEST(Selection, ProportionalToReputationMass) {
  const auto p = no_clique_params(2, 0, 0);
  const auto s = selection_probs(make(p, {0, 0.5, 0.5}), p);
  EXPECT_NEAR(s.reg[0], 0.0, 1e-15);
  EXPECT_NEAR(s.reg[1], 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.reg[2], 2.0 / 3.0, 1e-15);
}

TEST(Categories, PerfectEvaluators) {
  const auto p = no_clique_params(4, 0, 0);
  const auto c = category_probs(concentrated_state(p, 4), p);
  EXPECT_DOUBLE_EQ(c.pc_ind_of(Topic::Generic), 1.0);
  EXPECT_DOUBLE_EQ(c.pc_of(Topic::Generic), 1.0);
}

TEST(Categories, CliqueAtTopAcceptsItsAgenda) {
  const auto p = one_clique_params(10, 0, 0, 1.0, 0.01, 0.5);
  const auto c = category_probs(concentrated_state(p, 10), p);
  EXPECT_DOUBLE_EQ(c.pc_ind_of(Topic::Clique), 1.0);
  EXPECT_DOUBLE_EQ(c.pm_ind_of(Topic::Clique), 1.0);
}

TEST(Categories, SixtyPercentEvaluators) {
  const auto p = no_clique_params(10, 0, 0);
  const auto c = category_probs(concentrated_state(p, 6), p);
  EXPECT_NEAR(c.pc_ind_of(Topic::Generic), 0.6, 1e-15);
  EXPECT_NEAR(c.pc_of(Topic::Generic), 0.648, 1e-15);
}

TEST(Eval, PerfectMajorityReducesToAuthenticity) {
  const auto p = no_clique_params(10, 0.5, 0);
  const auto e = eval_probs(concentrated_state(p, 10), p);
  for (std::size_t k = 0; k <= 10; ++k) EXPECT_NEAR(e.reg[k], authenticity_prob(p.grid[k], 0.5), 1e-15);
}

TEST(Eval, CliqueOnlyCommunityAtTop) {
  const auto p = one_clique_params(10, 0, 0, 1.0, 0.01, 0.3);
  const auto e = eval_probs(concentrated_state(p, 10), p);
  for (double v : e.cl) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Eval, HandChainAtLevelSix) {
  const auto p = no_clique_params(10, 0, 0);
  const auto e = eval_probs(concentrated_state(p, 6), p);
  EXPECT_NEAR(e.reg[6], 0.5296, 1e-15);
}

TEST(Rhs, HandChainAtLevelSix) {
  const auto p = no_clique_params(10, 0, 0);
  const auto d = rhs(concentrated_state(p, 6), p);
  for (std::size_t k = 0; k <= 10; ++k) {
    const double want = k == 5 ? 0.4704 : k == 6 ? -1.0 : k == 7 ? 0.5296 : 0.0;
    EXPECT_NEAR(d.at(Group::Regular, k), want, 1e-15) << "k=" << k;
  }
}

TEST(Rhs, VanishesOnEquilibriumFamilies) {
  const std::vector<ModelParams> cases{no_clique_params(10, 0.3, -0.7), one_clique_params(10, 1, -1, 0.2, 0.01, 0.5),
                                       two_cliques_params(10, -1, 1, 0.3, 0.3, 0.01, 1.0)};
  for (const auto& p : cases) {
    for (double r0 : {0.0, 0.25, 0.5, 0.75, max_equilibrium_R0(p)}) {
      if (r0 > max_equilibrium_R0(p)) continue;
      const auto s = family_equilibrium({p.variant, r0}, p);
      for (double v : rhs(s, p).data()) EXPECT_LE(std::abs(v), 1e-12);
      EXPECT_NEAR(overall_pc(s, p), 1.0, 1e-12);
    }
  }
}

TEST(OverallPc, Examples) {
  const auto p = no_clique_params(10, 0, 0);
  EXPECT_NEAR(overall_pc(concentrated_state(p, 6), p), 0.648, 1e-15);
  EXPECT_DOUBLE_EQ(overall_pc(family_equilibrium({Variant::NoClique, 0.3}, p), p), 1.0);
  for (double gamma : {0.0, 0.25, 0.7, 1.0}) {
    const auto q = one_clique_params(10, 0, 0, 1.0, 0.01, gamma);
    EXPECT_NEAR(overall_pc(concentrated_state(q, 10), q), gamma, 1e-15);
  }
}

TEST(ModelProperties, ConservationOverRandomStates) {
  std::mt19937_64 gen(7);
  for (Variant v : {Variant::NoClique, Variant::OneClique, Variant::TwoCliques}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = random_params(gen, v);
      const auto s = random_state(p, gen, trial % 2 == 0);
      const auto d = rhs(s, p);
      for (std::size_t g = 0; g < p.groups(); ++g) {
        double sum = 0.0;
        for (double x : d.group(static_cast<Group>(g))) sum += x;
        EXPECT_LE(std::abs(sum), 1e-12);
      }
    }
  }
}

TEST(ModelProperties, ProbabilitiesStayInRange) {
  std::mt19937_64 gen(11);
  const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  for (Variant v : {Variant::NoClique, Variant::OneClique, Variant::TwoCliques}) {
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = random_params(gen, v);
      const auto s = random_state(p, gen, trial % 3 == 0);
      const Model m(p);
      const auto c = m.categories(s.data());
      for (std::size_t t = 0; t < 3; ++t) {
        EXPECT_TRUE(in_unit(c.pc_ind[t]) && in_unit(c.pm_ind[t]) && in_unit(c.pc[t]) && in_unit(c.pm[t]));
      }
      double doc_sum = 0.0;
      for (double d : c.prob_doc) {
        EXPECT_TRUE(in_unit(d));
        doc_sum += d;
      }
      EXPECT_NEAR(doc_sum, 1.0, 1e-12);
      const auto e = m.eval(c);
      for (Group g : kAllGroups)
        for (double x : e.of(g)) EXPECT_TRUE(in_unit(x));
      EXPECT_TRUE(in_unit(m.overall_pc(s.data())));
    }
  }
}

TEST(ModelProperties, BoundaryTrapping) {
  // A zero entry never gets a negative derivative.
  std::mt19937_64 gen(13);
  for (Variant v : {Variant::NoClique, Variant::OneClique, Variant::TwoCliques}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto p = random_params(gen, v);
      const auto s = random_state(p, gen, true);
      const auto d = rhs(s, p);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (s.data()[i] == 0.0) {
          EXPECT_GE(d.data()[i], 0.0);
        }
    }
  }
}

TEST(ModelProperties, VariantsDegenerate) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto nc = random_params(gen, Variant::NoClique);
    const double a = nc.behavior.alpha, sg = nc.behavior.sigma;
    const std::size_t L = nc.grid.steps();
    const auto s = random_state(nc, gen, trial % 2 == 0);

    // One clique of size zero vs no clique: Q is identically zero.
    const auto oc = one_clique_params(L, a, sg, 0.0, 0.2, 0.6);
    std::vector<double> y1(s.data().begin(), s.data().end());
    y1.resize(2 * (L + 1), 0.0);
    const CommunityState s1(2, L + 1, y1);
    const auto d0 = rhs(s, nc), d1 = rhs(s1, oc);
    for (std::size_t k = 0; k <= L; ++k) EXPECT_LE(std::abs(d0.data()[k] - d1.data()[k]), 1e-14);
    EXPECT_LE(std::abs(overall_pc(s, nc) - overall_pc(s1, oc)), 1e-14);

    // Two cliques with an empty anti-clique vs one clique.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double f = 0.5 * unit(gen);
    const auto oc2 = one_clique_params(L, a, sg, f, 0.1, 0.8);
    const auto tc = two_cliques_params(L, a, sg, f, 0.0, 0.1, 0.8);
    const auto s2 = random_state(oc2, gen);
    std::vector<double> y3(s2.data().begin(), s2.data().end());
    y3.resize(3 * (L + 1), 0.0);
    const CommunityState s3(3, L + 1, y3);
    const auto e2 = rhs(s2, oc2), e3 = rhs(s3, tc);
    for (std::size_t i = 0; i < s2.size(); ++i) EXPECT_LE(std::abs(e2.data()[i] - e3.data()[i]), 1e-14);
    EXPECT_LE(std::abs(overall_pc(s2, oc2) - overall_pc(s3, tc)), 1e-14);
  }
}

TEST(ModelProperties, MajorityAboveDiagonalOnUpperHalf) {
  for (double p = 0.01; p < 0.5; p += 0.01) EXPECT_LT(majority_prob(p), p);
  for (double p = 0.51; p < 1.0; p += 0.01) EXPECT_GT(majority_prob(p), p);
}

TEST(ModelInputs, RejectsWrongShape) {
  const auto p = one_clique_params(4, 0, 0, 0.2, 0.01, 1);
  const Model m(p);
  std::vector<double> y(5, 0.2);
  EXPECT_THROW(m.rhs(y), InvalidArgument);
}
