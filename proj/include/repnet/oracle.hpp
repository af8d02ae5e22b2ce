#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "repnet/model.hpp"
#include "repnet/params.hpp"
#include "repnet/state.hpp"

namespace repnet {

/// Portable random source: std::mt19937_64 (its output sequence is fixed by
/// the C++ standard) with hand-rolled uniform mappings, so a seed yields the
/// same stream on every platform and standard library.
class OracleRng {
 public:
  explicit OracleRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

struct Agent {
  Group group;
  std::uint32_t level;
};

/// Individual members with their group and reputation level index, plus the
/// per-(group, level) head counts the evaluator draw works from.
class AgentPopulation {
 public:
  AgentPopulation(ReputationGrid grid, std::size_t groups, std::vector<Agent> agents)
      : grid_(std::move(grid)), groups_(groups), agents_(std::move(agents)) {
    counts_.assign(3 * grid_.size(), 0);
    for (const auto& a : agents_) {
      if (a.level > grid_.steps()) throw InvalidArgument("agent level outside the grid");
      if (static_cast<std::size_t>(a.group) >= groups_) throw InvalidArgument("agent group not in the variant");
      ++slot(a.group, a.level);
    }
  }

  const ReputationGrid& grid() const noexcept { return grid_; }
  std::size_t groups() const noexcept { return groups_; }
  std::size_t size() const noexcept { return agents_.size(); }
  const std::vector<Agent>& agents() const noexcept { return agents_; }

  std::uint64_t count(Group g, std::size_t level) const { return counts_[index(g, level)]; }
  std::uint64_t group_size(Group g) const {
    std::uint64_t n = 0;
    for (std::size_t k = 0; k < grid_.size(); ++k) n += count(g, k);
    return n;
  }

  void move(std::size_t agent, std::uint32_t new_level) {
    auto& a = agents_[agent];
    --slot(a.group, a.level);
    a.level = new_level;
    ++slot(a.group, a.level);
  }

  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

 private:
  std::size_t index(Group g, std::size_t level) const { return static_cast<std::size_t>(g) * grid_.size() + level; }
  std::uint64_t& slot(Group g, std::size_t level) { return counts_[index(g, level)]; }

  ReputationGrid grid_;
  std::size_t groups_;
  std::vector<Agent> agents_;
  std::vector<std::uint64_t> counts_;
};

struct OracleSettings {
  std::size_t N = 2000;
  double dt = 0.05;
  double t_end = 20.0;
  std::uint64_t seed = 1;
  double sample_interval = 1.0;
  bool frozen = false;  // evaluate but never move reputations

  void validate() const {
    if (N < 4) throw InvalidArgument("oracle needs N >= 4 agents");
    if (!(dt > 0.0 && dt <= 0.1)) throw InvalidArgument("oracle dt must lie in (0, 0.1]");
    if (!(t_end > 0.0)) throw InvalidArgument("oracle t_end must be positive");
    if (!(sample_interval >= dt && sample_interval <= t_end))
      throw InvalidArgument("oracle sample_interval must lie in [dt, t_end]");
  }
};

/// Counters accumulated by `step`.
struct StepTally {
  std::uint64_t submitted = 0;
  std::uint64_t skipped = 0;  // fewer than three eligible evaluators
  std::uint64_t judged = 0;
  std::uint64_t judged_correctly = 0;
  // Per (group, level), group-major: submissions that were judged and how many
  // of them were judged authentic.
  std::vector<std::uint64_t> judged_at, promoted_at;

  void reset(std::size_t cells) {
    *this = StepTally{};
    judged_at.assign(cells, 0);
    promoted_at.assign(cells, 0);
  }
  double correct_fraction() const {
    return judged == 0 ? std::numeric_limits<double>::quiet_NaN()
                       : static_cast<double>(judged_correctly) / static_cast<double>(judged);
  }
};

using InitialLevels = std::array<std::size_t, 3>;  // per group

inline AgentPopulation init_population(std::size_t N, const ModelParams& params, const InitialLevels& levels) {
  params.validate();
  if (N < 4) throw InvalidArgument("population needs N >= 4 agents");
  for (std::size_t g = 0; g < params.groups(); ++g)
    if (levels[g] > params.grid.steps()) throw InvalidArgument("initial level outside the grid");
  const auto share = [N](double f) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(N) * f + 1e-9));
  };
  const std::size_t n_cl = params.groups() > 1 ? share(params.clique.f_cl) : 0;
  const std::size_t n_acl = params.groups() > 2 ? share(params.clique.f_acl) : 0;
  if (n_cl + n_acl > N) throw InvalidArgument("clique fractions exceed the population");
  std::vector<Agent> agents;
  agents.reserve(N);
  const auto lvl = [&](Group g) { return static_cast<std::uint32_t>(levels[static_cast<std::size_t>(g)]); };
  for (std::size_t i = 0; i < N - n_cl - n_acl; ++i) agents.push_back({Group::Regular, lvl(Group::Regular)});
  for (std::size_t i = 0; i < n_cl; ++i) agents.push_back({Group::Clique, lvl(Group::Clique)});
  for (std::size_t i = 0; i < n_acl; ++i) agents.push_back({Group::AntiClique, lvl(Group::AntiClique)});
  return AgentPopulation(params.grid, params.groups(), std::move(agents));
}

inline CommunityState empirical_distribution(const AgentPopulation& pop) {
  CommunityState s(pop.groups(), pop.grid().size());
  const double n = static_cast<double>(pop.size());
  for (std::size_t g = 0; g < pop.groups(); ++g)
    for (std::size_t k = 0; k < pop.grid().size(); ++k)
      s.at(static_cast<Group>(g), k) = static_cast<double>(pop.count(static_cast<Group>(g), k)) / n;
  return s;
}

namespace detail {

// Whether an evaluator of the given group and level calls the document authentic.
inline bool votes_authentic(Group g, std::size_t level, DocCategory doc, const Model& model, OracleRng& rng) {
  const bool authentic = doc.truth == Truth::Authentic;
  switch (g) {
    case Group::Regular:
      return rng.bernoulli(model.correctness()[level]) ? authentic : !authentic;
    case Group::Clique:
      if (doc.topic == Topic::Generic) return rng.bernoulli(0.5);
      return doc.topic == Topic::Clique;
    case Group::AntiClique:
      if (doc.topic == Topic::Generic) return rng.bernoulli(0.5);
      return doc.topic == Topic::AntiClique;
  }
  return false;
}

// Picks a (group, level) bucket with probability proportional to level * head count.
inline std::size_t draw_cell(const std::vector<std::uint64_t>& pool, std::uint64_t weight, std::size_t groups,
                             std::size_t levels, OracleRng& rng) {
  std::uint64_t pick = rng.below(weight);
  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t k = 1; k < levels; ++k) {
      const std::uint64_t w = k * pool[g * levels + k];
      if (pick < w) return g * levels + k;
      pick -= w;
    }
  }
  throw std::logic_error("evaluator draw ran past the total weight");
}

inline DocCategory draw_document(const Agent& author, const Model& model, OracleRng& rng) {
  const auto& p = model.params();
  const double a = model.authenticity()[author.level];
  switch (author.group) {
    case Group::Regular: {
      Topic topic = Topic::Generic;
      if (p.variant != Variant::NoClique) {
        const double u = rng.uniform();
        if (u < p.clique.p_lambda)
          topic = Topic::Clique;
        else if (u < 2.0 * p.clique.p_lambda)
          topic = Topic::AntiClique;
      }
      return {topic, rng.bernoulli(a) ? Truth::Authentic : Truth::Fake};
    }
    case Group::Clique:
      return {Topic::Clique, rng.bernoulli(p.clique.gamma * a) ? Truth::Authentic : Truth::Fake};
    case Group::AntiClique:
      return {Topic::AntiClique, rng.bernoulli(p.clique.gamma * a) ? Truth::Authentic : Truth::Fake};
  }
  return {Topic::Generic, Truth::Fake};
}

}  // namespace detail

/// Advances the population by one time step of length dt. Each agent submits
/// with probability dt; submitters are processed one at a time in random order.
/// Three distinct evaluators other than the author are drawn with probability
/// proportional to reputation, and the 2-of-3 majority moves the author one
/// level up (judged authentic) or down.
inline void step(AgentPopulation& pop, const Model& model, double dt, OracleRng& rng, StepTally& tally,
                 bool frozen = false) {
  const std::size_t levels = pop.grid().size();
  const std::size_t top = pop.grid().steps();
  if (tally.judged_at.size() != 3 * levels) tally.reset(3 * levels);

  std::vector<std::size_t> submitters;
  for (std::size_t i = 0; i < pop.size(); ++i)
    if (rng.bernoulli(dt)) submitters.push_back(i);
  for (std::size_t i = submitters.size(); i > 1; --i) std::swap(submitters[i - 1], submitters[rng.below(i)]);

  // Reputation weight of bucket (g, k) is proportional to k * count, kept integral.
  std::vector<std::uint64_t> pool(3 * levels);
  for (std::size_t id : submitters) {
    const Agent author = pop.agents()[id];
    ++tally.submitted;
    const DocCategory doc = detail::draw_document(author, model, rng);

    std::uint64_t eligible = 0, weight = 0;
    for (std::size_t g = 0; g < pop.groups(); ++g) {
      for (std::size_t k = 0; k < levels; ++k) {
        std::uint64_t c = pop.count(static_cast<Group>(g), k);
        if (static_cast<Group>(g) == author.group && k == author.level) --c;
        pool[g * levels + k] = c;
        if (k > 0) {
          eligible += c;
          weight += k * c;
        }
      }
    }
    if (eligible < 3) {
      ++tally.skipped;
      continue;
    }

    int votes_for = 0;
    for (int v = 0; v < 3; ++v) {
      const std::size_t cell = detail::draw_cell(pool, weight, pop.groups(), levels, rng);
      const std::size_t g = cell / levels, k = cell % levels;
      --pool[cell];
      weight -= k;
      if (detail::votes_authentic(static_cast<Group>(g), k, doc, model, rng)) ++votes_for;
    }

    const bool judged_authentic = votes_for >= 2;
    ++tally.judged;
    if (judged_authentic == (doc.truth == Truth::Authentic)) ++tally.judged_correctly;
    const std::size_t cell = static_cast<std::size_t>(author.group) * levels + author.level;
    ++tally.judged_at[cell];
    if (judged_authentic) ++tally.promoted_at[cell];

    if (!frozen) {
      if (judged_authentic && author.level < top)
        pop.move(id, author.level + 1);
      else if (!judged_authentic && author.level > 0)
        pop.move(id, author.level - 1);
    }
  }
}

/// Empirical trajectory of an oracle run.
struct OracleTrajectory {
  std::vector<double> times;
  std::vector<CommunityState> states;
  std::vector<double> pc;  // fraction judged correctly since the previous sample
  std::vector<double> conservation_error;
  std::uint64_t skipped = 0;
  StepTally totals;
};

inline OracleTrajectory run_oracle(const OracleSettings& settings, const ModelParams& params,
                                   const InitialLevels& initial_levels) {
  settings.validate();
  const Model model(params);
  AgentPopulation pop = init_population(settings.N, params, initial_levels);
  OracleRng rng(settings.seed);
  const auto steps = static_cast<std::size_t>(std::llround(settings.t_end / settings.dt));
  const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(settings.sample_interval / settings.dt)));
  const std::size_t cells = 3 * params.levels();

  OracleTrajectory out;
  out.totals.reset(cells);
  auto record = [&](std::size_t n, double pc) {
    auto s = empirical_distribution(pop);
    out.times.push_back(static_cast<double>(n) * settings.dt);
    out.conservation_error.push_back(conservation_error(s, params));
    out.states.push_back(std::move(s));
    out.pc.push_back(pc);
  };
  record(0, std::numeric_limits<double>::quiet_NaN());

  StepTally window;
  window.reset(cells);
  for (std::size_t n = 1; n <= steps; ++n) {
    StepTally tally;
    tally.reset(cells);
    step(pop, model, settings.dt, rng, tally, settings.frozen);
    window.judged += tally.judged;
    window.judged_correctly += tally.judged_correctly;
    out.totals.submitted += tally.submitted;
    out.totals.skipped += tally.skipped;
    out.totals.judged += tally.judged;
    out.totals.judged_correctly += tally.judged_correctly;
    for (std::size_t c = 0; c < cells; ++c) {
      out.totals.judged_at[c] += tally.judged_at[c];
      out.totals.promoted_at[c] += tally.promoted_at[c];
    }
    if (n % every == 0 || n == steps) {
      record(n, window.correct_fraction());
      window.reset(cells);
    }
  }
  out.skipped = out.totals.skipped;
  return out;
}

}  // namespace repnet
