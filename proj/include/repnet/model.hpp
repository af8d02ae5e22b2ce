#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "repnet/grid.hpp"
#include "repnet/params.hpp"
#include "repnet/state.hpp"

namespace repnet {

// Document topic relative to the clique agenda: generic, supporting (q), opposing (q-bar).
enum class Topic { Generic = 0, Clique = 1, AntiClique = 2 };
enum class Truth { Authentic = 0, Fake = 1 };

struct DocCategory {
  Topic topic;
  Truth truth;
};

inline constexpr std::array<Topic, 3> kAllTopics{Topic::Generic, Topic::Clique, Topic::AntiClique};
inline constexpr std::array<DocCategory, 6> kAllCategories{{{Topic::Generic, Truth::Authentic},
                                                            {Topic::Generic, Truth::Fake},
                                                            {Topic::Clique, Truth::Authentic},
                                                            {Topic::Clique, Truth::Fake},
                                                            {Topic::AntiClique, Truth::Authentic},
                                                            {Topic::AntiClique, Truth::Fake}}};

/// How the probability formulas treat state entries.
///  Clamped: negative masses count as 0 and probabilities are clipped to [0,1].
///  Raw: the polynomial/rational formulas are evaluated as written, which is the
///  smooth extension used for finite-difference Jacobians at boundary points.
enum class Evaluation { Clamped, Raw };

/// Evaluator selection probabilities per group and level. When no member has
/// positive reputation every entry is 0.
struct SelectionProbs {
  std::vector<double> reg, cl, acl;
  double denominator = 0.0;
};

/// Per-topic evaluator probabilities. `pc_ind[x]` is the chance that a random
/// evaluator calls an authentic x-document authentic, `pm_ind[x]` the chance it
/// calls a fake x-document authentic; `pc`, `pm` are the 2-of-3 majority
/// versions. `prob_doc` holds Prob(topic, truth) in kAllCategories order.
struct CategoryProbs {
  std::array<double, 3> pc_ind{}, pm_ind{}, pc{}, pm{};
  std::array<double, 6> prob_doc{};

  double pc_of(Topic t) const { return pc[static_cast<std::size_t>(t)]; }
  double pm_of(Topic t) const { return pm[static_cast<std::size_t>(t)]; }
  double pc_ind_of(Topic t) const { return pc_ind[static_cast<std::size_t>(t)]; }
  double pm_ind_of(Topic t) const { return pm_ind[static_cast<std::size_t>(t)]; }
  double doc(Topic t, Truth y) const {
    return prob_doc[2 * static_cast<std::size_t>(t) + static_cast<std::size_t>(y)];
  }
};

/// Probability that a document by a level-k member of each group is judged authentic.
struct EvalProbs {
  std::vector<double> reg, cl, acl;

  std::span<const double> of(Group g) const {
    switch (g) {
      case Group::Regular: return reg;
      case Group::Clique: return cl;
      case Group::AntiClique: return acl;
    }
    return reg;
  }
};

namespace detail {

inline double majority_unchecked(double p) noexcept { return p * p * (3.0 - 2.0 * p); }
inline double clip_unit(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

}  // namespace detail

/// The right-hand side of the compartmental model with the per-level
/// behavior tables precomputed. Immutable after construction.
class Model {
 public:
  explicit Model(ModelParams params) : params_(std::move(params)) {
    params_.validate();
    const auto n = params_.levels();
    a_.resize(n);
    c_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      a_[k] = authenticity_prob(params_.grid[k], params_.behavior.alpha);
      c_[k] = correctness_prob(params_.grid[k], params_.behavior.sigma);
    }
  }

  const ModelParams& params() const noexcept { return params_; }
  std::size_t dimension() const noexcept { return params_.groups() * params_.levels(); }
  std::span<const double> authenticity() const noexcept { return a_; }
  std::span<const double> correctness() const noexcept { return c_; }

  SelectionProbs selection(std::span<const double> y, Evaluation mode = Evaluation::Clamped) const {
    const auto n = params_.levels();
    const auto ng = params_.groups();
    SelectionProbs s;
    s.reg.assign(n, 0.0);
    if (ng > 1) s.cl.assign(n, 0.0);
    if (ng > 2) s.acl.assign(n, 0.0);
    double denom = 0.0;
    for (std::size_t g = 0; g < ng; ++g)
      for (std::size_t k = 0; k < n; ++k) denom += params_.grid[k] * mass(y, g, k, mode);
    s.denominator = denom;
    if (denom == 0.0) return s;
    std::vector<double>* out[3] = {&s.reg, &s.cl, &s.acl};
    for (std::size_t g = 0; g < ng; ++g)
      for (std::size_t k = 0; k < n; ++k) (*out[g])[k] = params_.grid[k] * mass(y, g, k, mode) / denom;
    return s;
  }

  CategoryProbs categories(std::span<const double> y, Evaluation mode = Evaluation::Clamped) const {
    const auto sel = selection(y, mode);
    const auto n = params_.levels();
    double reg_right = 0.0, reg_wrong = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      reg_right += sel.reg[k] * c_[k];
      reg_wrong += sel.reg[k] * (1.0 - c_[k]);
    }
    double cl = 0.0, acl = 0.0;
    for (double v : sel.cl) cl += v;
    for (double v : sel.acl) acl += v;

    // Clique members call q-documents authentic and q-bar documents fake; the
    // anti-clique does the opposite; both flip a coin on generic documents.
    CategoryProbs out;
    out.pc_ind = {reg_right + 0.5 * (cl + acl), reg_right + cl, reg_right + acl};
    out.pm_ind = {reg_wrong + 0.5 * (cl + acl), reg_wrong + cl, reg_wrong + acl};
    for (std::size_t t = 0; t < 3; ++t) {
      if (mode == Evaluation::Clamped) {
        out.pc_ind[t] = detail::clip_unit(out.pc_ind[t]);
        out.pm_ind[t] = detail::clip_unit(out.pm_ind[t]);
      }
      out.pc[t] = detail::majority_unchecked(out.pc_ind[t]);
      out.pm[t] = detail::majority_unchecked(out.pm_ind[t]);
    }

    const double pl = topic_share();
    const double gamma = params_.clique.gamma;
    double reg_auth = 0.0, reg_fake = 0.0, q_auth = 0.0, q_fake = 0.0, u_auth = 0.0, u_fake = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = mass(y, 0, k, mode);
      reg_auth += r * a_[k];
      reg_fake += r * (1.0 - a_[k]);
      if (params_.groups() > 1) {
        const double q = mass(y, 1, k, mode);
        q_auth += q * gamma * a_[k];
        q_fake += q * (1.0 - gamma * a_[k]);
      }
      if (params_.groups() > 2) {
        const double u = mass(y, 2, k, mode);
        u_auth += u * gamma * a_[k];
        u_fake += u * (1.0 - gamma * a_[k]);
      }
    }
    out.prob_doc = {(1.0 - 2.0 * pl) * reg_auth, (1.0 - 2.0 * pl) * reg_fake, pl * reg_auth + q_auth,
                    pl * reg_fake + q_fake,      pl * reg_auth + u_auth,      pl * reg_fake + u_fake};
    double total = 0.0;
    for (double v : out.prob_doc) total += v;
    if (total > 0.0)
      for (double& v : out.prob_doc) v /= total;
    return out;
  }

  EvalProbs eval(const CategoryProbs& cat) const {
    const auto n = params_.levels();
    const double pl = topic_share();
    const double gamma = params_.clique.gamma;
    const std::array<double, 3> weight{1.0 - 2.0 * pl, pl, pl};
    EvalProbs e;
    e.reg.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      double acc = 0.0;
      for (std::size_t t = 0; t < 3; ++t) acc += weight[t] * (a_[k] * cat.pc[t] + (1.0 - a_[k]) * cat.pm[t]);
      e.reg[k] = acc;
    }
    if (params_.groups() > 1) {
      e.cl.resize(n);
      for (std::size_t k = 0; k < n; ++k)
        e.cl[k] = gamma * a_[k] * cat.pc_of(Topic::Clique) + (1.0 - gamma * a_[k]) * cat.pm_of(Topic::Clique);
    }
    if (params_.groups() > 2) {
      e.acl.resize(n);
      for (std::size_t k = 0; k < n; ++k)
        e.acl[k] =
            gamma * a_[k] * cat.pc_of(Topic::AntiClique) + (1.0 - gamma * a_[k]) * cat.pm_of(Topic::AntiClique);
    }
    return e;
  }

  EvalProbs eval(std::span<const double> y, Evaluation mode = Evaluation::Clamped) const {
    return eval(categories(y, mode));
  }

  /// Writes d(state)/dt into `dy`. Each group is a birth-death chain on the
  /// levels: up with rate e_k, down with rate 1 - e_k, reflecting at 0 and L.
  void rhs(std::span<const double> y, std::span<double> dy, Evaluation mode = Evaluation::Clamped) const {
    if (y.size() != dimension() || dy.size() != dimension()) throw InvalidArgument("rhs: dimension mismatch");
    const auto e = eval(y, mode);
    const auto n = params_.levels();
    const auto last = n - 1;
    for (std::size_t g = 0; g < params_.groups(); ++g) {
      const auto ev = e.of(static_cast<Group>(g));
      const double* m = y.data() + g * n;
      double* d = dy.data() + g * n;
      d[0] = -m[0] * ev[0] + m[1] * (1.0 - ev[1]);
      for (std::size_t k = 1; k < last; ++k) d[k] = m[k - 1] * ev[k - 1] - m[k] + m[k + 1] * (1.0 - ev[k + 1]);
      d[last] = m[last - 1] * ev[last - 1] - m[last] * (1.0 - ev[last]);
    }
  }

  std::vector<double> rhs(std::span<const double> y, Evaluation mode = Evaluation::Clamped) const {
    std::vector<double> dy(dimension());
    rhs(y, dy, mode);
    return dy;
  }

  /// Probability that a randomly submitted document is judged correctly.
  double overall_pc(std::span<const double> y) const { return overall_pc(categories(y)); }

  static double overall_pc(const CategoryProbs& cat) {
    double acc = 0.0;
    for (Topic t : kAllTopics)
      acc += cat.doc(t, Truth::Authentic) * cat.pc_of(t) + cat.doc(t, Truth::Fake) * (1.0 - cat.pm_of(t));
    return acc;
  }

 private:
  // Regular members only split their documents over agenda topics when an agenda exists.
  double topic_share() const noexcept {
    return params_.variant == Variant::NoClique ? 0.0 : params_.clique.p_lambda;
  }

  double mass(std::span<const double> y, std::size_t g, std::size_t k, Evaluation mode) const {
    const double v = y[g * params_.levels() + k];
    return mode == Evaluation::Clamped ? std::max(v, 0.0) : v;
  }

  ModelParams params_;
  std::vector<double> a_, c_;
};

// Free-function surface over a state value.

inline SelectionProbs selection_probs(const CommunityState& s, const ModelParams& p) {
  return Model(p).selection(s.data());
}
inline CategoryProbs category_probs(const CommunityState& s, const ModelParams& p) {
  return Model(p).categories(s.data());
}
inline EvalProbs eval_probs(const CommunityState& s, const ModelParams& p) { return Model(p).eval(s.data()); }
inline CommunityState rhs(const CommunityState& s, const ModelParams& p) {
  return {s.groups(), s.levels(), Model(p).rhs(s.data())};
}
inline double overall_pc(const CommunityState& s, const ModelParams& p) { return Model(p).overall_pc(s.data()); }

}  // namespace repnet
