#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "resim/weight.hpp"

namespace resim {

using StateId = int;
using ActionId = int;

/// Which component of a state's cumulative weight a check compares.
enum class ObsProjection { time, energy, composite };

/// True iff a <= b under the projection (componentwise for composite).
inline bool obs_leq(const TimeEnergyWeight& a, const TimeEnergyWeight& b,
                    ObsProjection obs) {
  switch (obs) {
    case ObsProjection::time: return approx_leq(a.time, b.time);
    case ObsProjection::energy: return approx_leq(a.energy, b.energy);
    case ObsProjection::composite: return leq(a, b);
  }
  return false;
}

struct Transition {
  StateId src;
  ActionId action;
  StateId dst;
  TimeEnergyWeight weight;
};

/// Finite explicit weighted transition system with an observation per
/// state. Stored transitions always carry finite weight; the absence of
/// a transition stands for weight omega. States are opaque integers;
/// any semantic payload lives in side tables kept by the builders.
class WeightedTS {
 public:
  ActionId intern_action(std::string_view label);
  ActionId action_id(std::string_view label) const;  // -1 when absent
  const std::string& action_label(ActionId a) const;
  std::size_t alphabet_size() const { return labels_.size(); }
  /// Alphabet labels sorted lexicographically.
  std::vector<std::string> alphabet() const;

  StateId add_state(TimeEnergyWeight observation);
  void add_transition(StateId src, ActionId a, StateId dst, TimeEnergyWeight w);
  void mark_initial(StateId q);

  int num_states() const { return static_cast<int>(observations_.size()); }
  std::size_t num_transitions() const;
  const std::vector<StateId>& initial() const { return initial_; }
  const TimeEnergyWeight& observation(StateId q) const;
  const std::vector<Transition>& transitions_from(StateId q) const;

  /// All (target, weight) pairs reachable from q on the action labelled
  /// `label`; an empty result means the move has weight omega. Throws
  /// InputError for an unknown state.
  std::vector<std::pair<StateId, TimeEnergyWeight>> successors(
      StateId q, std::string_view label) const;

  /// At most one successor per (state, action) and a single initial state.
  bool deterministic() const;

 private:
  void check_state(StateId q, const char* what) const;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, ActionId> label_ids_;
  std::vector<TimeEnergyWeight> observations_;
  std::vector<std::vector<Transition>> adjacency_;
  std::vector<StateId> initial_;
};

/// True iff every transition satisfies observe(dst) = observe(src) + w
/// on the components selected by the projection.
bool is_cumulative(const WeightedTS& ts, ObsProjection obs);

/// Label sets coincide (the systems speak the same alphabet).
bool same_alphabet(const WeightedTS& a, const WeightedTS& b);

}  // namespace resim
