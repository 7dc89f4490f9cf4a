#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "resim/exec.hpp"
#include "resim/machine.hpp"
#include "resim/transition_system.hpp"
#include "resim/workload.hpp"

namespace resim {

struct Counterexample {
  enum class Kind {
    order_violation,   // right observation exceeds the allowed bound
    missing_move,      // left move with no matching right move
    unmatched_action,  // right branch on an action the left side lacks
    no_initial_match,  // no initial right state to pair with
  };
  Kind kind = Kind::order_violation;
  StateId p = -1;
  StateId q = -1;
  std::string action;             // offending action, when one exists
  std::vector<std::string> path;  // actions from the initial pair to (p, q)
  double left_obs = 0.0;          // projected observations for order violations
  double right_obs = 0.0;
  std::string message;
};

std::string_view to_string(Counterexample::Kind k);

/// Outcome of a relation check: a witness relation when it holds, a
/// shortest offending pair/path when it does not.
struct RelationVerdict {
  bool holds = false;
  std::vector<std::pair<StateId, StateId>> witness;
  std::optional<Counterexample> counterexample;
};

/// Greatest simulation between t1 and t2: pairs (p, q) with
/// O2(q) <= O1(p) under the projection where every move of p is matched
/// by some move of q staying in the relation. Holds iff every initial p
/// has a related initial q.
RelationVerdict largest_simulation(const WeightedTS& t1, const WeightedTS& t2,
                                   ObsProjection obs);

/// Every path of exec_ts simulates the deterministic spec_ts (time
/// observations): the synchronized product never exceeds a deadline,
/// never drops a specified move, and never branches off the specified
/// action. Counterexamples are shortest by breadth-first traversal.
RelationVerdict check_by_simulation(const WeightedTS& spec_ts, const WeightedTS& exec_ts);

/// Greatest betterment: matching is existential-and-universal — some
/// move must exist and every right move must stay in the relation.
/// Holds iff every initial p is related to every initial q.
RelationVerdict largest_betterment(const WeightedTS& t1, const WeightedTS& t2,
                                   ObsProjection obs);

/// Simulation with the order test relaxed to O2(q) <= c * O1(p). Needs a
/// scalar projection (the composite domain has no product).
RelationVerdict check_c_simulation(const WeightedTS& t1, const WeightedTS& t2, double c,
                                   ObsProjection obs);

/// Least c such that check_c_simulation holds: exact maximum of
/// observation ratios when both systems are deterministic, otherwise a
/// verified binary search (monotone in c) to absolute tolerance 1e-9.
/// 0/0 pairs constrain nothing; a positive observation against a zero
/// one raises an unbounded-ratio InputError.
double min_c_factor(const WeightedTS& t1, const WeightedTS& t2, ObsProjection obs);

enum class CapabilityOrder {
  r2_below_r,            // only r feasible: r2 strictly below r
  r_below_r2,            // only r2 feasible
  equi,                  // both feasible
  both_infeasible_equi,  // neither feasible (vacuously equi-capable)
  incomparable_never,    // unreachable; makes the decision table total
};

std::string_view to_string(CapabilityOrder o);

/// Capability comparison of two configurations on one workload, decided
/// by the two feasibility bits.
CapabilityOrder capability_compare(std::string_view r, std::string_view r2,
                                   const WorkloadSpec& spec, const CostModel& m);

}  // namespace resim
