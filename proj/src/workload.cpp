#include "resim/workload.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "resim/errors.hpp"

namespace resim {

WorkloadSpec::WorkloadSpec(std::vector<WorkItem> items) : items_(std::move(items)) {
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (items_[i].label.empty())
      throw InputError("workload item " + std::to_string(i) + ": empty label");
    if (!(items_[i].budget >= 0.0))
      throw InputError("workload item " + std::to_string(i) + ": negative budget " +
                       std::to_string(items_[i].budget));
  }
}

std::vector<std::string> WorkloadSpec::label_set() const {
  std::vector<std::string> out;
  for (const WorkItem& it : items_) out.push_back(it.label);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool WorkloadSpec::operator==(const WorkloadSpec& other) const {
  if (items_.size() != other.items_.size()) return false;
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i].label != other.items_[i].label ||
        items_[i].budget != other.items_[i].budget)
      return false;
  return true;
}

std::vector<double> deadlines(const WorkloadSpec& spec) {
  std::vector<double> out;
  out.reserve(spec.size());
  double acc = 0.0;
  for (const WorkItem& it : spec.items()) {
    acc += it.budget;
    out.push_back(acc);
  }
  return out;
}

WeightedTS build_spec_ts(const WorkloadSpec& spec) {
  WeightedTS ts;
  StateId prev = ts.add_state(TimeEnergyWeight::zero());
  ts.mark_initial(prev);
  double acc = 0.0;
  for (const WorkItem& it : spec.items()) {
    ActionId a = ts.intern_action(it.label);
    acc += it.budget;
    StateId next = ts.add_state({acc, 0.0});
    ts.add_transition(prev, a, next, {it.budget, 0.0});
    prev = next;
  }
  return ts;
}

WorkloadSpec prefix(const WorkloadSpec& spec, std::size_t k) {
  if (k > spec.size())
    throw InputError("prefix length " + std::to_string(k) + " exceeds workload size " +
                     std::to_string(spec.size()));
  std::vector<WorkItem> items(spec.items().begin(), spec.items().begin() + k);
  return WorkloadSpec(std::move(items));
}

WorkloadSpec concat_shifted(const WorkloadSpec& s1, const WorkloadSpec& s2) {
  std::vector<WorkItem> items = s1.items();
  items.insert(items.end(), s2.items().begin(), s2.items().end());
  return WorkloadSpec(std::move(items));
}

namespace {

// Snap to the 1/64 grid so %.9f serialization round-trips bit-exactly.
double snap64(double v) { return std::round(v * 64.0) / 64.0; }

double draw_in(std::mt19937_64& rng, double lo, double hi) {
  double lo64 = std::ceil(lo * 64.0);
  double hi64 = std::floor(hi * 64.0);
  auto span = static_cast<std::uint64_t>(hi64 - lo64);
  std::uint64_t k = span == 0 ? 0 : rng() % (span + 1);
  return snap64((lo64 + static_cast<double>(k)) / 64.0);
}

}  // namespace

WorkloadSpec gen_synthetic(GenProfile profile, std::size_t n, std::uint64_t seed,
                           const GenParams& params) {
  if (!(params.min_budget >= 0.0))
    throw InputError("gen_synthetic: min budget must be >= 0");
  if (!(params.max_budget >= params.min_budget))
    throw InputError("gen_synthetic: max budget must be >= min budget");
  if (params.labels.empty()) throw InputError("gen_synthetic: need at least one label");
  for (const std::string& l : params.labels)
    if (l.empty()) throw InputError("gen_synthetic: empty label");

  std::mt19937_64 rng(seed);
  std::vector<WorkItem> items;
  items.reserve(n);
  double mid = snap64((params.min_budget + params.max_budget) / 2.0);
  bool in_burst = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& label = params.labels[rng() % params.labels.size()];
    double budget;
    switch (profile) {
      case GenProfile::uniform:
        budget = draw_in(rng, params.min_budget, params.max_budget);
        break;
      case GenProfile::bursty:
        // Phase switches with probability 1/4 per action.
        if (rng() % 4 == 0) in_burst = !in_burst;
        budget = in_burst ? draw_in(rng, params.min_budget, mid)
                          : draw_in(rng, mid, params.max_budget);
        break;
      default:
        throw InputError("gen_synthetic: unknown profile");
    }
    items.push_back({label, budget});
  }
  return WorkloadSpec(std::move(items));
}

}  // namespace resim
