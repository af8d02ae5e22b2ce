// Command-line front end: repnet <subcommand> ...
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "repnet/repnet.hpp"

namespace {

using namespace repnet;

enum Exit { kOk = 0, kConfigError = 1, kRuntimeError = 2 };

struct Options {
  std::string config_path;
  std::string out_dir;
  std::string preset;
  bool list = false;
  unsigned workers = 0;
  bool quiet = false;
};

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

unsigned worker_count(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

fs::path out_dir_for(const Options& o, const ScenarioConfig& cfg) {
  return o.out_dir.empty() ? fs::path(cfg.output_dir) : fs::path(o.out_dir);
}

void say(const Options& o, const std::string& line) {
  if (!o.quiet) std::cout << line << '\n';
}

void simulate(const Options& o, const ScenarioConfig& cfg) {
  const auto dir = out_dir_for(o, cfg);
  const auto r = run_scenario(cfg, dir);
  say(o, "final p_c = " + io::num(r.final_pc) + ", residual = " + io::num(r.residual) +
             (r.converged ? " (converged)" : "") + ", written to " + dir.string());
  if (cfg.oracle) {
    const auto orc = run_oracle_scenario(cfg, dir);
    say(o, "oracle: final TV distance to mean field = " + io::num(orc.tv_distance.back()));
  }
}

void sweep(const Options& o, const ScenarioConfig& cfg) {
  const auto dir = out_dir_for(o, cfg);
  const auto sc = sweep_config(cfg);
  const auto r = run_sweep(sc, dir, worker_count(o.workers));
  double lo = 1.0, hi = 0.0;
  for (const auto& c : r.cells) {
    lo = std::min(lo, c.pc);
    hi = std::max(hi, c.pc);
  }
  say(o, std::to_string(r.cells.size()) + " grid points, p_c in [" + io::num(lo) + ", " + io::num(hi) +
             "], written to " + dir.string());
}

void oracle(const Options& o, const ScenarioConfig& cfg) {
  const auto dir = out_dir_for(o, cfg);
  const auto r = run_oracle_scenario(cfg, dir);
  say(o, "oracle: " + std::to_string(r.empirical.totals.submitted) + " documents, " +
             std::to_string(r.empirical.totals.skipped) + " skipped, final TV distance " +
             io::num(r.tv_distance.back()) + ", written to " + dir.string());
}

void equilibria(const Options& o, const ScenarioConfig& cfg) {
  const auto params = cfg.model_params();
  const auto rows = equilibria_table(params);
  bool all = true;
  std::printf("%-10s %-14s %-14s %s\n", "R0", "residual", "p_c", "equilibrium");
  for (const auto& row : rows) {
    all = all && row.check.is_equilibrium;
    std::printf("%-10s %-14s %-14s %s\n", io::num(row.R0).c_str(), io::num(row.check.residual).c_str(),
                io::num(row.check.pc).c_str(), row.check.is_equilibrium ? "yes" : "no");
  }
  if (!all) throw std::runtime_error("equilibrium family check failed");
  (void)o;
}

void field(const Options& o, const ScenarioConfig& cfg) {
  const auto dir = out_dir_for(o, cfg);
  const auto samples = emit_vector_field(field_params(cfg), cfg.field_n, dir);
  say(o, std::to_string(samples.size()) + " field samples written to " + dir.string());
}

void list_presets() {
  for (const auto& p : preset_catalog()) std::printf("%-12s %s\n", p.name.c_str(), p.description.c_str());
}

void preset(Options o) {
  const Preset* p = find_preset(o.preset);
  if (!p) throw ConfigError(0, "unknown preset '" + o.preset + "' (see 'preset --list')");
  const auto cfg = p->config();
  if (o.out_dir.empty()) o.out_dir = (fs::path("out") / p->name).string();
  switch (p->kind) {
    case PresetKind::Scenario: simulate(o, cfg); break;
    case PresetKind::Sweep: sweep(o, cfg); break;
    case PresetKind::Field: field(o, cfg); break;
    case PresetKind::Oracle:
      simulate(o, cfg);
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reputation-weighted peer evaluation: mean-field model, analysis and agent oracle"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--workers", o.workers, "sweep worker threads (default: hardware concurrency)");
  app.add_flag("--quiet", o.quiet, "suppress progress output");

  auto with_config = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", o.config_path, "configuration file")->required();
    sub->add_option("--out", o.out_dir, "output directory (default: output_dir from the config)");
    sub->add_option("--workers", o.workers, "sweep worker threads");
    sub->add_flag("--quiet", o.quiet, "suppress progress output");
    return sub;
  };
  auto* sim = with_config("simulate", "integrate a scenario and write trajectory.csv and summary.csv");
  auto* swp = with_config("sweep", "steady-state p_c over a two-parameter grid");
  auto* orc = with_config("oracle", "run the agent-based oracle next to the mean-field model");
  auto* eqs = with_config("equilibria", "verify the equilibrium family of the configured variant");
  auto* fld = with_config("field", "sample the three-level vector field");
  auto* pre = app.add_subcommand("preset", "run a named preset");
  pre->add_option("name", o.preset, "preset name");
  pre->add_option("--out", o.out_dir, "output directory (default: out/<name>)");
  pre->add_flag("--list", o.list, "list the available presets");
  pre->add_option("--workers", o.workers, "sweep worker threads");
  pre->add_flag("--quiet", o.quiet, "suppress progress output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (pre->parsed()) {
      if (o.list) {
        list_presets();
        return kOk;
      }
      if (o.preset.empty()) throw ConfigError(0, "preset: give a preset name or --list");
      preset(o);
      return kOk;
    }
    const auto cfg = load_config(o.config_path);
    if (sim->parsed()) simulate(o, cfg);
    else if (swp->parsed()) sweep(o, cfg);
    else if (orc->parsed()) oracle(o, cfg);
    else if (eqs->parsed()) equilibria(o, cfg);
    else if (fld->parsed()) field(o, cfg);
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
