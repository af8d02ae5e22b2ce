#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repnet/config.hpp"

namespace repnet {

enum class PresetKind { Scenario, Sweep, Field, Oracle };

/// A named, reproducible run. Scenario presets carry the interval their final
/// p_c is expected to land in.
struct Preset {
  std::string name;
  PresetKind kind;
  std::string description;
  std::string text;
  std::optional<std::pair<double, double>> expected_pc;

  ScenarioConfig config() const { return parse_config(text); }
};

inline const std::vector<Preset>& preset_catalog() {
  static const std::vector<Preset> catalog{
      {"fig2a", PresetKind::Field, "three-level vector field, alpha = sigma = 0",
       "name = fig2a\nvariant = no_clique\nL = 2\nalpha = 0\nsigma = 0\nfield.n = 21\n", std::nullopt},
      {"fig2b", PresetKind::Field, "three-level vector field, alpha = 1, sigma = -1",
       "name = fig2b\nvariant = no_clique\nL = 2\nalpha = 1\nsigma = -1\nfield.n = 21\n", std::nullopt},
      {"fig3", PresetKind::Scenario, "eleven levels, alpha = sigma = 0, all at r = 0.6: bimodal, p_c -> 1",
       "name = fig3\nvariant = no_clique\nL = 10\nalpha = 0\nsigma = 0\ninit = regular 6 1\nt_end = 100\n",
       std::pair{0.999, 1.0}},
      {"fig4", PresetKind::Scenario, "eleven levels, alpha = 1, sigma = -1, all at r = 0.6: low-reputation state",
       "name = fig4\nvariant = no_clique\nL = 10\nalpha = 1\nsigma = -1\ninit = regular 6 1\nt_end = 100\n",
       std::pair{0.06, 0.08}},
      {"bistable7", PresetKind::Scenario, "as fig4 but all at r = 0.7: bimodal (0.0425, 0, ..., 0.9575)",
       "name = bistable7\nvariant = no_clique\nL = 10\nalpha = 1\nsigma = -1\ninit = regular 7 1\nt_end = 200\n",
       std::pair{0.999, 1.0}},
      {"dim5", PresetKind::Scenario, "five levels, alpha = 1, sigma = -1, all at r = 0.6",
       "name = dim5\nvariant = no_clique\nL = 4\nalpha = 1\nsigma = -1\ninit = regular 3 1\nt_end = 200\n",
       std::pair{0.999, 1.0}},
      {"dim21", PresetKind::Scenario, "21 levels, alpha = 1, sigma = -1, all at r = 0.6",
       "name = dim21\nvariant = no_clique\nL = 20\nalpha = 1\nsigma = -1\ninit = regular 12 1\nt_end = 200\n",
       std::pair{0.03, 0.05}},
      {"dim21_r07", PresetKind::Scenario, "21 levels, alpha = 1, sigma = -1, all at r = 0.7",
       "name = dim21_r07\nvariant = no_clique\nL = 20\nalpha = 1\nsigma = -1\ninit = regular 14 1\nt_end = 200\n",
       std::pair{0.999, 1.0}},
      {"fig5", PresetKind::Sweep, "final p_c over alpha x sigma on a 21 x 21 grid, start at r = 0.6",
       "name = fig5\nvariant = no_clique\nL = 10\ninit = regular 6 1\nt_end = 100\n"
       "sweep.axis1 = alpha -1 1 21\nsweep.axis2 = sigma -1 1 21\n",
       std::nullopt},
      {"fig6", PresetKind::Sweep, "one clique: final p_c over f_cl x gamma, p_lambda = 0.01",
       "name = fig6\nvariant = one_clique\nL = 10\np_lambda = 0.01\ninit = regular 6 *\ninit = clique 6 *\n"
       "t_end = 200\nsweep.axis1 = f_cl 0 1 11\nsweep.axis2 = gamma 0 1 11\n",
       std::nullopt},
      {"fig7", PresetKind::Sweep, "one clique: final p_c over f_cl x p_lambda, gamma = 0.5",
       "name = fig7\nvariant = one_clique\nL = 10\ngamma = 0.5\ninit = regular 6 *\ninit = clique 6 *\n"
       "t_end = 200\nsweep.axis1 = f_cl 0 0.5 11\nsweep.axis2 = p_lambda 0 0.5 11\n",
       std::nullopt},
      {"fig8", PresetKind::Sweep, "two cliques of equal size: final p_c over f_cl = f_acl x gamma",
       "name = fig8\nvariant = two_cliques\nL = 10\np_lambda = 0.01\ninit = regular 6 *\ninit = clique 6 *\n"
       "init = anticlique 6 *\nt_end = 200\nsweep.axis1 = f_pair 0 0.5 11\nsweep.axis2 = gamma 0 1 11\n",
       std::nullopt},
      {"clique_only", PresetKind::Scenario, "community of clique members only (f_cl = 1, gamma = 0.5): p_c = gamma",
       "name = clique_only\nvariant = one_clique\nL = 10\nf_cl = 1\np_lambda = 0.01\ngamma = 0.5\n"
       "init = clique 6 *\nt_end = 200\n",
       std::pair{0.49, 0.51}},
      {"point_b", PresetKind::Scenario, "two cliques, f_cl = f_acl = 0.3, gamma = 1",
       "name = point_b\nvariant = two_cliques\nL = 10\nf_cl = 0.3\nf_acl = 0.3\np_lambda = 0.01\ngamma = 1\n"
       "init = regular 6 0.4\ninit = clique 6 0.3\ninit = anticlique 6 0.3\nt_end = 200\n",
       std::pair{0.67, 0.73}},
      {"oracle_fig3", PresetKind::Oracle, "agent oracle next to the fig3 mean-field run (N = 2000)",
       "name = oracle_fig3\nvariant = no_clique\nL = 10\ninit = regular 6 1\nt_end = 100\n"
       "oracle.N = 2000\noracle.dt = 0.05\noracle.seed = 20180326\n",
       std::nullopt},
  };
  return catalog;
}

inline const Preset* find_preset(std::string_view name) {
  for (const auto& p : preset_catalog())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace repnet
