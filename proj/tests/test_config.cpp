#include <gtest/gtest.h>

#include <set>

#include "repnet/config.hpp"
#include "repnet/presets.hpp"

using namespace repnet;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(Parse, MinimalFileGetsDefaults) {
  const auto cfg = parse_config("variant = no_clique\nL = 10\ninit = regular 6 1\n");
  EXPECT_EQ(cfg.variant, Variant::NoClique);
  EXPECT_EQ(cfg.L, 10u);
  EXPECT_DOUBLE_EQ(cfg.integrator.abs_tol, 1e-7);
  EXPECT_DOUBLE_EQ(cfg.integrator.rel_tol, 1e-7);
  EXPECT_DOUBLE_EQ(cfg.integrator.t_end, 100.0);
  EXPECT_DOUBLE_EQ(cfg.integrator.sample_interval, 1.0);
  EXPECT_FALSE(cfg.oracle.has_value());
  EXPECT_FALSE(cfg.sweep.has_value());
  ASSERT_EQ(cfg.initial.size(), 1u);
  EXPECT_EQ(cfg.initial[0].level, 6u);
}

TEST(Parse, DefaultInitialLevelIsSixtyPercent) {
  const auto cfg = parse_config("variant = one_clique\nL = 20\nf_cl = 0.1\n");
  ASSERT_EQ(cfg.initial.size(), 2u);
  EXPECT_EQ(cfg.initial[0].level, 12u);
  EXPECT_EQ(cfg.initial[1].group, Group::Clique);
  EXPECT_DOUBLE_EQ(init_mass(cfg.initial[1], cfg.model_params()), 0.1);
}

TEST(Parse, CommentsAndWhitespace) {
  const auto cfg = parse_config("# header\n\n  alpha =  0.5   # trailing\nsigma=-0.25\n");
  EXPECT_DOUBLE_EQ(cfg.alpha, 0.5);
  EXPECT_DOUBLE_EQ(cfg.sigma, -0.25);
}

TEST(Parse, RangeErrorNamesKeyAndLine) {
  const std::string text = "variant = no_clique\nalpha = 2.0\n";
  const auto msg = error_of(text);
  EXPECT_NE(msg.find("alpha"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
  EXPECT_EQ(error_line(text), 2u);
}

TEST(Parse, UnknownAndDuplicateKeys) {
  EXPECT_EQ(error_line("L = 10\nbeta = 1\n"), 2u);
  EXPECT_NE(error_of("L = 10\nbeta = 1\n").find("unknown key"), std::string::npos);
  EXPECT_EQ(error_line("L = 10\n\nL = 4\n"), 3u);
  EXPECT_EQ(error_line("L = ten\n"), 1u);
  EXPECT_EQ(error_line("alpha\n"), 1u);
}

TEST(Parse, MassSumViolationNamesInitLine) {
  const std::string text = "variant = no_clique\nL = 10\ninit = regular 6 0.5\ninit = regular 7 0.4\n";
  EXPECT_EQ(error_line(text), 4u);
  EXPECT_NE(error_of(text).find("sum"), std::string::npos);
}

TEST(Parse, InitChecks) {
  EXPECT_EQ(error_line("variant = no_clique\nL = 4\ninit = regular 5 1\n"), 3u);
  EXPECT_EQ(error_line("variant = no_clique\ninit = clique 3 *\ninit = regular 6 1\n"), 2u);
  EXPECT_EQ(error_line("variant = no_clique\ninit = martian 3 1\n"), 2u);
}

TEST(Parse, VariantConstraints) {
  EXPECT_EQ(error_line("variant = no_clique\nf_cl = 0.2\n"), 2u);
  EXPECT_EQ(error_line("variant = one_clique\nf_cl = 0.2\nf_acl = 0.1\n"), 3u);
  EXPECT_EQ(error_line("variant = two_cliques\nf_cl = 0.6\nf_acl = 0.6\n"), 3u);
  EXPECT_EQ(error_line("variant = one_clique\np_lambda = 0.7\n"), 2u);
}

TEST(Parse, OracleBlock) {
  const auto cfg = parse_config("oracle.N = 500\noracle.seed = 7\n");
  ASSERT_TRUE(cfg.oracle.has_value());
  EXPECT_EQ(cfg.oracle->N, 500u);
  EXPECT_EQ(cfg.oracle->seed, 7u);
  EXPECT_DOUBLE_EQ(cfg.oracle->dt, 0.05);
  EXPECT_EQ(error_line("oracle.dt = 0.5\n"), 1u);
  EXPECT_EQ(error_line("oracle.N = 2\n"), 1u);
}

TEST(Parse, SweepAxes) {
  const auto cfg = parse_config("variant = one_clique\nsweep.axis1 = f_cl 0 1 11\nsweep.axis2 = gamma 0 1 5\n");
  const auto sc = sweep_config(cfg);
  EXPECT_EQ(sc.axis1.parameter, "f_cl");
  EXPECT_EQ(sc.axis1.count, 11u);
  EXPECT_DOUBLE_EQ(sc.axis1.value(3), 0.3);
  EXPECT_DOUBLE_EQ(sc.axis1.value(10), 1.0);
  EXPECT_DOUBLE_EQ(sc.axis2.value(2), 0.5);
  EXPECT_EQ(error_line("sweep.axis1 = L 1 5 5\nsweep.axis2 = gamma 0 1 5\n"), 1u);
  EXPECT_EQ(error_line("sweep.axis1 = alpha 0 1 3\n"), 1u);
  EXPECT_THROW(sweep_config(parse_config("L = 4\n")), ConfigError);
}

TEST(Presets, CatalogParsesAndIsUnique) {
  std::set<std::string> names;
  for (const auto& p : preset_catalog()) {
    EXPECT_TRUE(names.insert(p.name).second) << p.name;
    EXPECT_NO_THROW(p.config()) << p.name;
    EXPECT_EQ(p.config().name, p.name);
    EXPECT_EQ(p.kind == PresetKind::Sweep, p.config().sweep.has_value()) << p.name;
    EXPECT_EQ(p.kind == PresetKind::Oracle, p.config().oracle.has_value()) << p.name;
  }
  EXPECT_EQ(find_preset("nope"), nullptr);
}

TEST(Presets, CliqueSweepRoundTrip) {
  const auto* p = find_preset("fig6");
  ASSERT_NE(p, nullptr);
  const auto sc = sweep_config(p->config());
  EXPECT_EQ(sc.base.variant, Variant::OneClique);
  EXPECT_EQ(sc.axis1.parameter, "f_cl");
  EXPECT_DOUBLE_EQ(sc.axis1.start, 0.0);
  EXPECT_DOUBLE_EQ(sc.axis1.stop, 1.0);
  EXPECT_EQ(sc.axis2.parameter, "gamma");
  EXPECT_DOUBLE_EQ(sc.base.p_lambda, 0.01);
  EXPECT_DOUBLE_EQ(sc.base.integrator.t_end, 200.0);
}

TEST(Presets, Horizons) {
  for (const char* name : {"fig3", "fig4", "fig5"}) EXPECT_DOUBLE_EQ(find_preset(name)->config().integrator.t_end, 100.0);
  for (const char* name : {"fig6", "fig7", "fig8"}) EXPECT_DOUBLE_EQ(find_preset(name)->config().integrator.t_end, 200.0);
}

TEST(SetParameter, PairSetsBothFractions) {
  ScenarioConfig cfg;
  set_parameter(cfg, "f_pair", 0.25);
  EXPECT_DOUBLE_EQ(cfg.f_cl, 0.25);
  EXPECT_DOUBLE_EQ(cfg.f_acl, 0.25);
  EXPECT_THROW(set_parameter(cfg, "L", 3), InvalidArgument);
}
