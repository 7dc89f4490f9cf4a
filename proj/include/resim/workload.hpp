#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "resim/transition_system.hpp"

namespace resim {

struct WorkItem {
  std::string label;   // action, key into the cost tables
  double budget = 0.0; // budgeted time b_i, >= 0
};

/// A finite sequence of actions with budgeted times. Absolute deadlines
/// are the running sums of the budgets and are always nondecreasing.
class WorkloadSpec {
 public:
  WorkloadSpec() = default;
  explicit WorkloadSpec(std::vector<WorkItem> items);

  const std::vector<WorkItem>& items() const { return items_; }
  const WorkItem& item(std::size_t i) const { return items_[i]; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// Distinct labels, sorted.
  std::vector<std::string> label_set() const;

  bool operator==(const WorkloadSpec& other) const;

 private:
  std::vector<WorkItem> items_;
};

/// d_i = sum of the first i budgets; one entry per action.
std::vector<double> deadlines(const WorkloadSpec& spec);

/// The workload as a deterministic path TS: state i observes deadline
/// d_i (energy component 0), the initial state observes 0. States are
/// keyed by index, never by deadline value, so zero budgets do not
/// collapse states.
WeightedTS build_spec_ts(const WorkloadSpec& spec);

/// First k items. Throws InputError when k exceeds the length.
WorkloadSpec prefix(const WorkloadSpec& spec, std::size_t k);

/// Budgets of s2 appended after s1; the tail's derived deadlines come
/// out as d'_j + d_m exactly.
WorkloadSpec concat_shifted(const WorkloadSpec& s1, const WorkloadSpec& s2);

enum class GenProfile { uniform, bursty };

struct GenParams {
  double min_budget = 0.25;
  double max_budget = 4.0;
  /// Labels cycled through by the generator's draws.
  std::vector<std::string> labels = {"f"};
};

/// Seed-deterministic synthetic workload. Budgets land on a 1/64 grid
/// inside [min_budget, max_budget] so serialized values round-trip
/// exactly. The bursty profile alternates seeded quiet phases (upper
/// half of the range) and burst phases (lower half).
WorkloadSpec gen_synthetic(GenProfile profile, std::size_t n, std::uint64_t seed,
                           const GenParams& params);

}  // namespace resim
