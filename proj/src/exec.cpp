#include "resim/exec.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <unordered_map>

#include "resim/errors.hpp"

namespace resim {

Scheme scheme_from_string(std::string_view s) {
  if (s == "baseline") return Scheme::baseline;
  if (s == "pal_time") return Scheme::pal_time;
  if (s == "pal_energy") return Scheme::pal_energy;
  if (s == "greedy_min_energy") return Scheme::greedy_min_energy;
  if (s == "optimal_dp") return Scheme::optimal_dp;
  throw InputError("unknown scheme '" + std::string(s) + "'");
}

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::baseline: return "baseline";
    case Scheme::pal_time: return "pal_time";
    case Scheme::pal_energy: return "pal_energy";
    case Scheme::greedy_min_energy: return "greedy_min_energy";
    case Scheme::optimal_dp: return "optimal_dp";
  }
  return "?";
}

GuardMode guard_mode_from_string(std::string_view s) {
  if (s == "literal") return GuardMode::literal;
  if (s == "tight") return GuardMode::tight;
  throw InputError("unknown guard mode '" + std::string(s) + "'");
}

std::string_view to_string(GuardMode g) {
  return g == GuardMode::literal ? "literal" : "tight";
}

Trace run_fixed(std::string_view config, const WorkloadSpec& spec, const CostModel& m) {
  int r = m.require_config(config);
  Trace trace;
  trace.start = ExecState{r, 0.0, 0.0, 0};
  double t = 0.0, e = 0.0;
  int i = 0;
  for (const WorkItem& it : spec.items()) {
    double dt = m.tau(r, it.label);
    double de = m.gamma(r, it.label);
    t += dt;
    e += de;
    ++i;
    trace.steps.push_back({it.label, r, {dt, de}, ExecState{r, t, e, i}});
  }
  return trace;
}

bool feasible_on(std::string_view config, const WorkloadSpec& spec, const CostModel& m) {
  Trace trace = run_fixed(config, spec, m);
  std::vector<double> d = deadlines(spec);
  for (std::size_t i = 0; i < trace.steps.size(); ++i)
    if (!approx_leq(trace.steps[i].state.time, d[i])) return false;
  return true;
}

namespace {

enum class SchemeKind { unrestricted, pal_time, pal_energy };

struct StateKey {
  int step;
  int config;
  std::uint64_t t_bits;
  std::uint64_t e_bits;
  bool operator==(const StateKey&) const = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(static_cast<std::uint64_t>(k.step));
    mix(static_cast<std::uint64_t>(k.config));
    mix(k.t_bits);
    mix(k.e_bits);
    return static_cast<std::size_t>(h);
  }
};

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

void check_horizon(const WorkloadSpec& spec, std::size_t horizon) {
  if (horizon > spec.size())
    throw InputError("horizon " + std::to_string(horizon) + " exceeds workload length " +
                     std::to_string(spec.size()));
}

void check_baseline_budgets(const WorkloadSpec& spec, const CostModel& m,
                            std::size_t horizon) {
  int rmax = m.rmax_id();
  for (std::size_t i = 0; i < horizon; ++i) {
    const WorkItem& it = spec.item(i);
    if (!approx_leq(m.tau(rmax, it.label), it.budget))
      throw InputError("baseline infeasible: tau(" + m.rmax_name() + ", " + it.label +
                       ") = " + std::to_string(m.tau(rmax, it.label)) +
                       " exceeds budget " + std::to_string(it.budget) + " of action " +
                       std::to_string(i + 1));
  }
}

bool time_guard_ok(const CostModel& m, GuardMode mode, int r, int r2, double slack,
                   double tau2) {
  double reserve = mode == GuardMode::literal ? 2.0 * m.delta()
                                              : m.reconfig_time(r, r2) + m.delta();
  return approx_leq(reserve + tau2, slack);
}

/// Configurations reachable in one scheme step from configuration r with
/// the given slack d_i - t. The baseline fallback is always present.
std::vector<char> allowed_moves(const CostModel& m, SchemeKind kind, GuardMode mode,
                                int r, double slack, const std::string& label) {
  std::vector<char> allowed(m.num_configs(), 0);
  int rmax = m.rmax_id();
  allowed[rmax] = 1;
  if (kind == SchemeKind::unrestricted) {
    std::fill(allowed.begin(), allowed.end(), 1);
    return allowed;
  }
  for (int r2 = 0; r2 < m.num_configs(); ++r2) {
    if (r2 == rmax && r2 != r) continue;  // faster moves only via the fallback
    if (!time_guard_ok(m, mode, r, r2, slack, m.tau(r2, label))) continue;
    if (kind == SchemeKind::pal_energy && r2 != r &&
        !approx_leq(m.gamma(r2, label) + 2.0 * m.theta(), m.gamma(r, label)))
      continue;
    allowed[r2] = 1;
  }
  return allowed;
}

ExecTS build_scheme_ts(const WorkloadSpec& spec, const CostModel& m, std::size_t horizon,
                       SchemeKind kind, GuardMode mode) {
  check_horizon(spec, horizon);
  if (kind != SchemeKind::unrestricted) check_baseline_budgets(spec, m, horizon);

  const bool with_energy = kind == SchemeKind::pal_energy;
  ExecTS out;
  std::unordered_map<StateKey, StateId, StateKeyHash> index;
  auto add_state = [&](int step, int config, double t, double e) {
    StateKey key{step, config, bits(t), with_energy ? bits(e) : 0};
    auto it = index.find(key);
    if (it != index.end()) return std::pair{it->second, false};
    StateId q = out.ts.add_state({t, with_energy ? e : 0.0});
    out.step.push_back(step);
    out.config.push_back(config);
    index.emplace(key, q);
    return std::pair{q, true};
  };

  auto [start, _] = add_state(0, m.rmax_id(), 0.0, 0.0);
  out.ts.mark_initial(start);

  std::vector<double> d = deadlines(spec);
  std::vector<StateId> frontier{start};
  for (std::size_t i = 0; i < horizon; ++i) {
    const std::string& label = spec.item(i).label;
    ActionId a = out.ts.intern_action(label);
    std::vector<StateId> next;
    for (StateId q : frontier) {
      int r = out.config[q];
      double t = out.ts.observation(q).time;
      double e = with_energy ? out.ts.observation(q).energy : 0.0;
      std::vector<char> allowed =
          allowed_moves(m, kind, mode, r, d[i] - t, label);
      for (int r2 = 0; r2 < m.num_configs(); ++r2) {
        if (!allowed[r2]) continue;
        double dt = m.reconfig_time(r, r2) + m.tau(r2, label);
        double de = m.reconfig_energy(r, r2) + m.gamma(r2, label);
        auto [dst, fresh] =
            add_state(static_cast<int>(i) + 1, r2, t + dt, e + de);
        out.ts.add_transition(q, a, dst, {dt, with_energy ? de : 0.0});
        if (fresh) next.push_back(dst);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace

ExecTS build_reconfigurable_ts(const WorkloadSpec& spec, const CostModel& m,
                               std::size_t horizon) {
  return build_scheme_ts(spec, m, horizon, SchemeKind::unrestricted, GuardMode::literal);
}

ExecTS build_pal_time_ts(const WorkloadSpec& spec, const CostModel& m,
                         std::size_t horizon, GuardMode mode) {
  return build_scheme_ts(spec, m, horizon, SchemeKind::pal_time, mode);
}

ExecTS build_pal_energy_ts(const WorkloadSpec& spec, const CostModel& m,
                           std::size_t horizon, GuardMode mode) {
  return build_scheme_ts(spec, m, horizon, SchemeKind::pal_energy, mode);
}

Trace run_policy(Scheme scheme, const WorkloadSpec& spec, const CostModel& m,
                 GuardMode mode) {
  if (scheme == Scheme::baseline) return run_fixed(m.rmax_name(), spec, m);
  if (scheme == Scheme::optimal_dp)
    throw InputError("optimal_dp is not an online policy; use optimal_offline");

  if (scheme != Scheme::greedy_min_energy)
    check_baseline_budgets(spec, m, spec.size());

  std::vector<double> d = deadlines(spec);
  int rmax = m.rmax_id();
  Trace trace;
  trace.start = ExecState{rmax, 0.0, 0.0, 0};
  int r = rmax;
  double t = 0.0, e = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const std::string& label = spec.item(i).label;
    int choice = -1;
    double choice_cost = 0.0;
    auto better = [&](double cost, int r2) {
      if (choice < 0) return true;
      if (cost != choice_cost) return cost < choice_cost;
      return m.config_name(r2) < m.config_name(choice);
    };
    if (scheme == Scheme::greedy_min_energy) {
      for (int r2 = 0; r2 < m.num_configs(); ++r2) {
        double t2 = t + m.reconfig_time(r, r2) + m.tau(r2, label);
        bool safe = r2 == rmax ? approx_leq(t2, d[i]) : approx_leq(t2 + m.delta(), d[i]);
        if (!safe) continue;
        double cost = m.reconfig_energy(r, r2) + m.gamma(r2, label);
        if (better(cost, r2)) { choice = r2; choice_cost = cost; }
      }
      if (choice < 0)
        throw InfeasibleError("no deadline-safe move at action " + std::to_string(i + 1),
                              static_cast<int>(i) + 1);
    } else {
      SchemeKind kind =
          scheme == Scheme::pal_time ? SchemeKind::pal_time : SchemeKind::pal_energy;
      std::vector<char> allowed = allowed_moves(m, kind, mode, r, d[i] - t, label);
      for (int r2 = 0; r2 < m.num_configs(); ++r2) {
        if (!allowed[r2]) continue;
        double cost = m.gamma(r2, label);
        if (better(cost, r2)) { choice = r2; choice_cost = cost; }
      }
    }
    double dt = m.reconfig_time(r, choice) + m.tau(choice, label);
    double de = m.reconfig_energy(r, choice) + m.gamma(choice, label);
    t += dt;
    e += de;
    r = choice;
    trace.steps.push_back(
        {label, r, {dt, de}, ExecState{r, t, e, static_cast<int>(i) + 1}});
  }
  return trace;
}

namespace {

// Forward frontier entry: cumulative (time, energy); exact comparisons
// keep the frontier canonical and oracle-comparable.
void insert_pareto_te(std::vector<std::pair<double, double>>& front, double t, double e) {
  for (const auto& [ft, fe] : front)
    if (ft <= t && fe <= e) return;  // dominated (or equal: merged)
  std::erase_if(front, [&](const auto& p) { return t <= p.first && e <= p.second; });
  front.emplace_back(t, e);
}

// Suffix entry: (suffix energy E, latest feasible start time S).
void insert_pareto_es(std::vector<std::pair<double, double>>& front, double en,
                      double slack) {
  for (const auto& [fe, fs] : front)
    if (fe <= en && fs >= slack) return;
  std::erase_if(front, [&](const auto& p) { return en <= p.first && slack >= p.second; });
  front.emplace_back(en, slack);
}

Trace trace_of_sequence(const std::vector<int>& seq, const WorkloadSpec& spec,
                        const CostModel& m) {
  Trace trace;
  int r = m.rmax_id();
  trace.start = ExecState{r, 0.0, 0.0, 0};
  double t = 0.0, e = 0.0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::string& label = spec.item(i).label;
    int r2 = seq[i];
    double dt = m.reconfig_time(r, r2) + m.tau(r2, label);
    double de = m.reconfig_energy(r, r2) + m.gamma(r2, label);
    t += dt;
    e += de;
    r = r2;
    trace.steps.push_back(
        {label, r, {dt, de}, ExecState{r, t, e, static_cast<int>(i) + 1}});
  }
  return trace;
}

std::vector<int> configs_by_name(const CostModel& m) {
  std::vector<int> order(m.num_configs());
  for (int i = 0; i < m.num_configs(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return m.config_name(a) < m.config_name(b); });
  return order;
}

}  // namespace

OptimalResult optimal_offline(const WorkloadSpec& spec, const CostModel& m) {
  const std::size_t n = spec.size();
  const int k = m.num_configs();
  const int rmax = m.rmax_id();
  std::vector<double> d = deadlines(spec);

  // Forward Pareto frontiers over (step, config).
  std::vector<std::vector<std::pair<double, double>>> front(k);
  front[rmax].emplace_back(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& label = spec.item(i).label;
    std::vector<std::vector<std::pair<double, double>>> next(k);
    bool any = false;
    for (int r = 0; r < k; ++r) {
      for (const auto& [t, e] : front[r]) {
        for (int r2 = 0; r2 < k; ++r2) {
          double t2 = t + m.reconfig_time(r, r2) + m.tau(r2, label);
          if (!approx_leq(t2, d[i])) continue;
          double e2 = e + m.reconfig_energy(r, r2) + m.gamma(r2, label);
          insert_pareto_te(next[r2], t2, e2);
          any = true;
        }
      }
    }
    if (!any)
      throw InfeasibleError("no feasible schedule: every configuration sequence misses "
                            "the deadline of action " + std::to_string(i + 1),
                            static_cast<int>(i) + 1);
    front = std::move(next);
  }
  double best = 0.0;
  bool have_best = false;
  for (int r = 0; r < k; ++r)
    for (const auto& [t, e] : front[r])
      if (!have_best || e < best) { best = e; have_best = true; }

  // Suffix frontiers (energy to go, latest feasible start time) drive the
  // lexicographically-least reconstruction; a forward walk with parent
  // pointers cannot guarantee lex order once Pareto merging kicks in.
  std::vector<std::vector<std::pair<double, double>>> suffix(k);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int r = 0; r < k; ++r) suffix[r].emplace_back(0.0, kInf);
  std::vector<std::vector<std::vector<std::pair<double, double>>>> suffix_at(n + 1);
  suffix_at[n] = suffix;
  for (std::size_t i = n; i-- > 0;) {
    const std::string& label = spec.item(i).label;
    std::vector<std::vector<std::pair<double, double>>> prev(k);
    for (int r = 0; r < k; ++r) {
      for (int r2 = 0; r2 < k; ++r2) {
        double step_t = m.reconfig_time(r, r2) + m.tau(r2, label);
        double step_e = m.reconfig_energy(r, r2) + m.gamma(r2, label);
        for (const auto& [en, slack] : suffix_at[i + 1][r2]) {
          double s = std::min(d[i], slack) - step_t;
          insert_pareto_es(prev[r], step_e + en, s);
        }
      }
    }
    suffix_at[i] = std::move(prev);
  }

  std::vector<int> order = configs_by_name(m);
  std::vector<int> seq;
  seq.reserve(n);
  int r = rmax;
  double t = 0.0, e = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& label = spec.item(i).label;
    int pick = -1;
    for (int r2 : order) {
      double t2 = t + m.reconfig_time(r, r2) + m.tau(r2, label);
      if (!approx_leq(t2, d[i])) continue;
      double e2 = e + m.reconfig_energy(r, r2) + m.gamma(r2, label);
      double completion = kInf;
      for (const auto& [en, slack] : suffix_at[i + 1][r2])
        if (approx_leq(t2, slack)) completion = std::min(completion, e2 + en);
      if (approx_eq(completion, best)) { pick = r2; break; }
    }
    if (pick < 0)
      throw InputError("internal: optimal schedule reconstruction failed at action " +
                       std::to_string(i + 1));
    double dt = m.reconfig_time(r, pick) + m.tau(pick, label);
    double de = m.reconfig_energy(r, pick) + m.gamma(pick, label);
    t += dt;
    e += de;
    r = pick;
    seq.push_back(pick);
  }

  OptimalResult res;
  res.trace = trace_of_sequence(seq, spec, m);
  res.total_energy = res.trace.total_energy();
  return res;
}

OptimalResult brute_force_optimal(const WorkloadSpec& spec, const CostModel& m,
                                  std::uint64_t bound) {
  const std::size_t n = spec.size();
  const int k = m.num_configs();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (count > bound / static_cast<std::uint64_t>(k)) {
      count = bound + 1;
      break;
    }
    count *= static_cast<std::uint64_t>(k);
  }
  if (count > bound)
    throw InputError("brute force bound exceeded: |configs|^n > " + std::to_string(bound));

  std::vector<double> d = deadlines(spec);
  std::vector<int> order = configs_by_name(m);
  std::vector<int> seq(n, -1), best_seq;
  bool have_best = false;
  double best_e = 0.0;
  std::size_t deepest = 0;

  // Depth-first in name-lex order; the first minimal-energy sequence
  // found is the lexicographically least one.
  auto dfs = [&](auto&& self, std::size_t i, int r, double t, double e) -> void {
    if (i == n) {
      if (!have_best || e < best_e) {
        best_e = e;
        best_seq = seq;
        have_best = true;
      }
      return;
    }
    const std::string& label = spec.item(i).label;
    for (int r2 : order) {
      double t2 = t + m.reconfig_time(r, r2) + m.tau(r2, label);
      if (!approx_leq(t2, d[i])) continue;
      deepest = std::max(deepest, i + 1);
      double e2 = e + m.reconfig_energy(r, r2) + m.gamma(r2, label);
      seq[i] = r2;
      self(self, i + 1, r2, t2, e2);
    }
  };
  dfs(dfs, 0, m.rmax_id(), 0.0, 0.0);

  if (!have_best && n > 0)
    throw InfeasibleError("no feasible schedule: every configuration sequence misses "
                          "the deadline of action " + std::to_string(deepest + 1),
                          static_cast<int>(deepest) + 1);
  if (n == 0) best_seq.clear();

  OptimalResult res;
  res.trace = trace_of_sequence(best_seq, spec, m);
  res.total_energy = res.trace.total_energy();
  return res;
}

ExecTS trace_ts(const Trace& trace, const CostModel& m) {
  (void)m;
  ExecTS out;
  StateId prev = out.ts.add_state({trace.start.time, trace.start.energy});
  out.step.push_back(trace.start.step);
  out.config.push_back(trace.start.config);
  out.ts.mark_initial(prev);
  for (const TraceStep& s : trace.steps) {
    ActionId a = out.ts.intern_action(s.label);
    StateId q = out.ts.add_state({s.state.time, s.state.energy});
    out.step.push_back(s.state.step);
    out.config.push_back(s.state.config);
    out.ts.add_transition(prev, a, q, s.weight);
    prev = q;
  }
  return out;
}

}  // namespace resim
