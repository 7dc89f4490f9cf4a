#include "resim/transition_system.hpp"

#include <algorithm>

#include "resim/errors.hpp"

namespace resim {

ActionId WeightedTS::intern_action(std::string_view label) {
  if (label.empty()) throw InputError("action label must be non-empty");
  auto it = label_ids_.find(std::string(label));
  if (it != label_ids_.end()) return it->second;
  ActionId id = static_cast<ActionId>(labels_.size());
  labels_.emplace_back(label);
  label_ids_.emplace(labels_.back(), id);
  return id;
}

ActionId WeightedTS::action_id(std::string_view label) const {
  auto it = label_ids_.find(std::string(label));
  return it == label_ids_.end() ? -1 : it->second;
}

const std::string& WeightedTS::action_label(ActionId a) const {
  if (a < 0 || a >= static_cast<ActionId>(labels_.size()))
    throw InputError("unknown action id");
  return labels_[a];
}

std::vector<std::string> WeightedTS::alphabet() const {
  std::vector<std::string> out = labels_;
  std::sort(out.begin(), out.end());
  return out;
}

StateId WeightedTS::add_state(TimeEnergyWeight observation) {
  observations_.push_back(observation);
  adjacency_.emplace_back();
  return static_cast<StateId>(observations_.size() - 1);
}

void WeightedTS::add_transition(StateId src, ActionId a, StateId dst,
                                TimeEnergyWeight w) {
  check_state(src, "transition source");
  check_state(dst, "transition target");
  if (a < 0 || a >= static_cast<ActionId>(labels_.size()))
    throw InputError("transition action not in alphabet");
  adjacency_[src].push_back(Transition{src, a, dst, w});
}

void WeightedTS::mark_initial(StateId q) {
  check_state(q, "initial state");
  if (std::find(initial_.begin(), initial_.end(), q) == initial_.end())
    initial_.push_back(q);
}

std::size_t WeightedTS::num_transitions() const {
  std::size_t n = 0;
  for (const auto& row : adjacency_) n += row.size();
  return n;
}

const TimeEnergyWeight& WeightedTS::observation(StateId q) const {
  check_state(q, "state");
  return observations_[q];
}

const std::vector<Transition>& WeightedTS::transitions_from(StateId q) const {
  check_state(q, "state");
  return adjacency_[q];
}

std::vector<std::pair<StateId, TimeEnergyWeight>> WeightedTS::successors(
    StateId q, std::string_view label) const {
  check_state(q, "state");
  std::vector<std::pair<StateId, TimeEnergyWeight>> out;
  ActionId a = action_id(label);
  if (a < 0) return out;
  for (const Transition& t : adjacency_[q])
    if (t.action == a) out.emplace_back(t.dst, t.weight);
  return out;
}

bool WeightedTS::deterministic() const {
  if (initial_.size() > 1) return false;
  std::vector<char> seen;
  for (const auto& row : adjacency_) {
    seen.assign(labels_.size(), 0);
    for (const Transition& t : row) {
      if (seen[t.action]) return false;
      seen[t.action] = 1;
    }
  }
  return true;
}

void WeightedTS::check_state(StateId q, const char* what) const {
  if (q < 0 || q >= num_states())
    throw InputError(std::string("unknown ") + what + " id " + std::to_string(q));
}

bool is_cumulative(const WeightedTS& ts, ObsProjection obs) {
  for (StateId q = 0; q < ts.num_states(); ++q) {
    for (const Transition& t : ts.transitions_from(q)) {
      TimeEnergyWeight expect = combine(ts.observation(t.src), t.weight);
      const TimeEnergyWeight& got = ts.observation(t.dst);
      bool ok = true;
      switch (obs) {
        case ObsProjection::time: ok = approx_eq(expect.time, got.time); break;
        case ObsProjection::energy: ok = approx_eq(expect.energy, got.energy); break;
        case ObsProjection::composite: ok = eq(expect, got); break;
      }
      if (!ok) return false;
    }
  }
  return true;
}

bool same_alphabet(const WeightedTS& a, const WeightedTS& b) {
  return a.alphabet() == b.alphabet();
}

}  // namespace resim
