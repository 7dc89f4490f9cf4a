#pragma once

#include <cmath>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "resim/exec.hpp"
#include "resim/machine.hpp"
#include "resim/relations.hpp"
#include "resim/transition_system.hpp"
#include "resim/workload.hpp"

namespace resim::test {

// Two-configuration desk model: big is the baseline (tau 3, gamma 10 on
// the single action f), little is slower but cheaper (tau 5, gamma 4);
// reconfiguring costs 1 second and 2 joules.
inline CostModel desk_model(double theta = 2.0) {
  return CostModel({{"big", {{"f", 3.0}}, {{"f", 10.0}}},
                    {"little", {{"f", 5.0}}, {{"f", 4.0}}}},
                   "big", 1.0, theta);
}

inline WorkloadSpec w1() { return WorkloadSpec({{"f", 4.0}, {"f", 4.0}}); }
inline WorkloadSpec w2() { return WorkloadSpec({{"f", 8.0}, {"f", 8.0}}); }

// ---------------------------------------------------------------------------
// Seeded random instances. All values land on a dyadic grid so cumulative
// sums are exact in double arithmetic and state sharing in the builders
// actually collapses states.

struct InstanceParams {
  std::size_t max_actions = 50;
  int max_configs = 4;
  int max_labels = 3;
  double grid = 0.25;
  int max_tau_units = 16;    // tau values in grid * [1 .. max_tau_units]
  int max_slack_units = 8;   // budget = tau(rmax, a) + grid * [0 .. slack]
  int max_switch_units = 6;  // delta, theta in grid * [0 .. max_switch_units]
  int min_gamma_units = 0;   // raise to keep all energies strictly positive
  // Weaker configurations never draw more energy than the baseline; the
  // energy-guarded scheme only stays below the baseline under this
  // assumption.
  bool gamma_below_baseline = true;
};

struct Instance {
  WorkloadSpec spec;
  CostModel model;
};

inline Instance random_instance(std::mt19937_64& rng, const InstanceParams& p) {
  auto units = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  int nconf = units(1, p.max_configs);
  int nlabels = units(1, p.max_labels);
  static const std::vector<std::string> kLabels = {"f", "g", "h", "k"};
  std::vector<std::string> labels(kLabels.begin(), kLabels.begin() + nlabels);

  std::vector<ConfigSpec> configs(nconf);
  for (int r = 0; r < nconf; ++r) configs[r].name = "c" + std::to_string(r);
  for (const std::string& a : labels) {
    for (int r = 0; r < nconf; ++r)
      configs[r].tau[a] = p.grid * units(1, p.max_tau_units);
    // Half the models make the baseline elementarily fastest.
    if (rng() % 2 == 0) {
      double fastest = configs[0].tau[a];
      for (int r = 1; r < nconf; ++r) fastest = std::min(fastest, configs[r].tau[a]);
      configs[0].tau[a] = fastest;
    }
    int base_units = units(std::max(1, p.min_gamma_units), p.max_tau_units);
    configs[0].gamma[a] = p.grid * base_units;
    for (int r = 1; r < nconf; ++r) {
      int hi = p.gamma_below_baseline ? base_units : p.max_tau_units;
      configs[r].gamma[a] = p.grid * units(p.min_gamma_units, hi);
    }
  }
  double delta = p.grid * units(0, p.max_switch_units);
  double theta = p.grid * units(0, p.max_switch_units);
  CostModel model(std::move(configs), "c0", delta, theta);

  std::size_t n = rng() % (p.max_actions + 1);
  std::vector<WorkItem> items;
  items.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& a = labels[rng() % labels.size()];
    double budget = model.tau(0, a) + p.grid * units(0, p.max_slack_units);
    items.push_back({a, budget});
  }
  return Instance{WorkloadSpec(std::move(items)), std::move(model)};
}

// Instance whose |configs|^n stays within the brute-force oracle bound.
inline Instance small_instance(std::mt19937_64& rng, std::uint64_t bound,
                               InstanceParams p = {}) {
  Instance inst = random_instance(rng, p);
  std::size_t cap = 0;
  std::uint64_t count = 1;
  int k = inst.model.num_configs();
  while (cap < inst.spec.size()) {
    if (count > bound / static_cast<std::uint64_t>(k)) break;
    count *= static_cast<std::uint64_t>(k);
    ++cap;
  }
  return Instance{prefix(inst.spec, std::min(inst.spec.size(), cap)),
                  std::move(inst.model)};
}

// ---------------------------------------------------------------------------
// Clause verifiers, written straight from the definitions. These are the
// independent oracles the fixpoint checkers are tested against.

using PairSet = std::set<std::pair<StateId, StateId>>;

template <typename OrderOk>
bool satisfies_clauses(const WeightedTS& t1, const WeightedTS& t2, const PairSet& rel,
                       bool universal, const OrderOk& order_ok) {
  for (const auto& [p, q] : rel) {
    if (!order_ok(p, q)) return false;
    for (const Transition& tm : t1.transitions_from(p)) {
      auto succs = t2.successors(q, t1.action_label(tm.action));
      if (succs.empty()) return false;
      if (universal) {
        for (const auto& [q2, w] : succs)
          if (!rel.count({tm.dst, q2})) return false;
      } else {
        bool matched = false;
        for (const auto& [q2, w] : succs)
          if (rel.count({tm.dst, q2})) { matched = true; break; }
        if (!matched) return false;
      }
    }
  }
  return true;
}

inline bool is_simulation(const WeightedTS& t1, const WeightedTS& t2, const PairSet& rel,
                          ObsProjection obs) {
  return satisfies_clauses(t1, t2, rel, false, [&](StateId p, StateId q) {
    return obs_leq(t2.observation(q), t1.observation(p), obs);
  });
}

inline bool is_betterment(const WeightedTS& t1, const WeightedTS& t2, const PairSet& rel,
                          ObsProjection obs) {
  return satisfies_clauses(t1, t2, rel, true, [&](StateId p, StateId q) {
    return obs_leq(t2.observation(q), t1.observation(p), obs);
  });
}

inline bool is_c_simulation(const WeightedTS& t1, const WeightedTS& t2,
                            const PairSet& rel, double c, ObsProjection obs) {
  auto proj = [&](const TimeEnergyWeight& w) {
    return obs == ObsProjection::energy ? w.energy : w.time;
  };
  return satisfies_clauses(t1, t2, rel, false, [&](StateId p, StateId q) {
    return approx_leq(proj(t2.observation(q)), c * proj(t1.observation(p)));
  });
}

// Largest subset of `seed` satisfying the simulation clauses; used to
// manufacture assorted witnesses for the closure-law tests.
inline PairSet prune_to_simulation(const WeightedTS& t1, const WeightedTS& t2,
                                   PairSet seed, ObsProjection obs) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = seed.begin(); it != seed.end();) {
      PairSet single{*it};
      bool ok = true;
      const auto& [p, q] = *it;
      if (!obs_leq(t2.observation(q), t1.observation(p), obs)) ok = false;
      for (const Transition& tm : t1.transitions_from(p)) {
        if (!ok) break;
        bool matched = false;
        for (const auto& [q2, w] : t2.successors(q, t1.action_label(tm.action)))
          if (seed.count({tm.dst, q2})) { matched = true; break; }
        if (!matched) ok = false;
      }
      if (!ok) {
        it = seed.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return seed;
}

// Small random weighted TS (not necessarily cumulative) over a shared
// alphabet, for exercising the relation laws.
inline WeightedTS random_ts(std::mt19937_64& rng, int max_states = 6,
                            int num_labels = 2) {
  WeightedTS ts;
  static const char* kNames[] = {"a", "b", "c"};
  std::vector<ActionId> actions;
  for (int i = 0; i < num_labels; ++i) actions.push_back(ts.intern_action(kNames[i]));
  int n = 2 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_states - 1));
  for (int i = 0; i < n; ++i) {
    double t = 0.25 * static_cast<double>(rng() % 16);
    double e = 0.25 * static_cast<double>(rng() % 16);
    ts.add_state({t, e});
  }
  int edges = n + static_cast<int>(rng() % static_cast<std::uint64_t>(2 * n));
  for (int i = 0; i < edges; ++i) {
    StateId src = static_cast<StateId>(rng() % n);
    StateId dst = static_cast<StateId>(rng() % n);
    ActionId a = actions[rng() % actions.size()];
    double wt = 0.25 * static_cast<double>(rng() % 8);
    double we = 0.25 * static_cast<double>(rng() % 8);
    ts.add_transition(src, a, dst, {wt, we});
  }
  ts.mark_initial(static_cast<StateId>(rng() % n));
  if (rng() % 2 == 0) ts.mark_initial(static_cast<StateId>(rng() % n));
  return ts;
}

inline PairSet to_pair_set(const std::vector<std::pair<StateId, StateId>>& pairs) {
  return PairSet(pairs.begin(), pairs.end());
}

}  // namespace resim::test
