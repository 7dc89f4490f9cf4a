#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "resim/machine.hpp"
#include "resim/transition_system.hpp"
#include "resim/workload.hpp"

namespace resim {

struct ExecState {
  int config = 0;       // configuration id in the cost model
  double time = 0.0;    // cumulative seconds
  double energy = 0.0;  // cumulative joules
  int step = 0;         // index of the next action (1-based count completed)
};

struct TraceStep {
  std::string label;
  int config;               // configuration the action ran on
  TimeEnergyWeight weight;  // step cost (reconfiguration included)
  ExecState state;          // resulting state
};

/// A deterministic run: each resulting state's cumulative time/energy
/// is the predecessor's plus the step weight.
struct Trace {
  ExecState start;
  std::vector<TraceStep> steps;

  double total_time() const { return steps.empty() ? start.time : steps.back().state.time; }
  double total_energy() const {
    return steps.empty() ? start.energy : steps.back().state.energy;
  }
};

enum class Scheme { baseline, pal_time, pal_energy, greedy_min_energy, optimal_dp };

Scheme scheme_from_string(std::string_view s);
std::string_view to_string(Scheme s);

/// How the slack guard charges reconfiguration overhead on moves that
/// keep the current configuration: `literal` always reserves 2*delta,
/// `tight` reserves the actual switch cost plus one return trip.
enum class GuardMode { literal, tight };

GuardMode guard_mode_from_string(std::string_view s);
std::string_view to_string(GuardMode g);

/// Execution TS plus the per-state side tables (step index and
/// configuration id) the builders assign.
struct ExecTS {
  WeightedTS ts;
  std::vector<int> step;
  std::vector<int> config;
};

/// Run the whole workload on one fixed configuration.
Trace run_fixed(std::string_view config, const WorkloadSpec& spec, const CostModel& m);

/// Every cumulative time of run_fixed meets its deadline.
bool feasible_on(std::string_view config, const WorkloadSpec& spec, const CostModel& m);

/// The unrestricted reconfigurable system: from each state, one
/// successor per configuration, paying the reconfiguration time before
/// the action. Starts at the baseline with t = 0. States reached at the
/// same step with equal configuration and cumulative time are shared.
ExecTS build_reconfigurable_ts(const WorkloadSpec& spec, const CostModel& m,
                               std::size_t horizon);

/// The slack-guarded scheme: moves to non-baseline configurations (and
/// staying put) require d_i - t >= guard + tau(r', a_i); an unguarded
/// fallback to the baseline is always present. Requires the baseline to
/// meet every budget up to the horizon.
ExecTS build_pal_time_ts(const WorkloadSpec& spec, const CostModel& m,
                         std::size_t horizon, GuardMode mode = GuardMode::literal);

/// The energy-aware variant: a configuration change additionally needs
/// gamma(r, a_i) >= gamma(r', a_i) + 2*theta. Observations carry
/// (time, energy); states are shared per (step, config, time, energy).
ExecTS build_pal_energy_ts(const WorkloadSpec& spec, const CostModel& m,
                           std::size_t horizon, GuardMode mode = GuardMode::literal);

/// Deterministic refinement of a scheme. pal_* pick the allowed move
/// with minimal gamma(r', a_i); greedy_min_energy picks the cheapest
/// deadline-safe move of the unrestricted system. Ties break on the
/// lexicographically least configuration name.
Trace run_policy(Scheme scheme, const WorkloadSpec& spec, const CostModel& m,
                 GuardMode mode = GuardMode::literal);

struct OptimalResult {
  Trace trace;
  double total_energy = 0.0;
};

/// Minimal total energy over all configuration sequences meeting every
/// deadline, starting from the baseline. Dynamic program over
/// (step, config) keeping Pareto-minimal (time, energy) pairs; the
/// returned trace is the lexicographically least optimal sequence.
/// Throws InfeasibleError when no sequence meets the deadlines.
OptimalResult optimal_offline(const WorkloadSpec& spec, const CostModel& m);

/// Exhaustive enumeration oracle with the same objective and tie-break.
/// Throws InputError when |configs|^n exceeds the bound.
OptimalResult brute_force_optimal(const WorkloadSpec& spec, const CostModel& m,
                                  std::uint64_t bound = 1000000);

/// A trace as a deterministic path TS observing cumulative
/// (time, energy); side tables mirror the trace's steps and configs.
ExecTS trace_ts(const Trace& trace, const CostModel& m);

}  // namespace resim
