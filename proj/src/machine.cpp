#include "resim/machine.hpp"

#include <algorithm>
#include <set>

#include "resim/errors.hpp"
#include "resim/weight.hpp"

namespace resim {

CostModel::CostModel(std::vector<ConfigSpec> configs, const std::string& rmax,
                     double delta, double theta)
    : configs_(std::move(configs)), rmax_(-1), delta_(delta), theta_(theta) {
  if (configs_.empty()) throw InputError("cost model needs at least one configuration");
  if (!(delta_ >= 0.0)) throw InputError("reconfiguration time delta must be >= 0");
  if (!(theta_ >= 0.0)) throw InputError("reconfiguration energy theta must be >= 0");
  std::set<std::string> names;
  std::set<std::string> labels;
  for (std::size_t i = 0; i < configs_.size(); ++i) {
    const ConfigSpec& c = configs_[i];
    if (c.name.empty()) throw InputError("configuration name must be non-empty");
    if (!names.insert(c.name).second)
      throw InputError("duplicate configuration name '" + c.name + "'");
    if (c.name == rmax) rmax_ = static_cast<int>(i);
    for (const auto& [label, _] : c.tau) labels.insert(label);
    for (const auto& [label, _] : c.gamma) labels.insert(label);
  }
  if (rmax_ < 0) throw InputError("rmax '" + rmax + "' is not a declared configuration");
  alphabet_.assign(labels.begin(), labels.end());
}

int CostModel::config_id(std::string_view name) const {
  for (int i = 0; i < num_configs(); ++i)
    if (configs_[i].name == name) return i;
  return -1;
}

int CostModel::require_config(std::string_view name) const {
  int id = config_id(name);
  if (id < 0) throw InputError("unknown configuration '" + std::string(name) + "'");
  return id;
}

double CostModel::tau(int r, const std::string& label) const {
  auto it = configs_[r].tau.find(label);
  if (it == configs_[r].tau.end())
    throw InputError("no time cost for action '" + label + "' on configuration '" +
                     configs_[r].name + "'");
  return it->second;
}

double CostModel::gamma(int r, const std::string& label) const {
  auto it = configs_[r].gamma.find(label);
  if (it == configs_[r].gamma.end())
    throw InputError("no energy cost for action '" + label + "' on configuration '" +
                     configs_[r].name + "'");
  return it->second;
}

bool CostModel::has_tau(int r, const std::string& label) const {
  return configs_[r].tau.count(label) > 0;
}

bool CostModel::has_gamma(int r, const std::string& label) const {
  return configs_[r].gamma.count(label) > 0;
}

double reconfig_time(const CostModel& m, std::string_view r, std::string_view r2) {
  return m.reconfig_time(m.require_config(r), m.require_config(r2));
}

double reconfig_energy(const CostModel& m, std::string_view r, std::string_view r2) {
  return m.reconfig_energy(m.require_config(r), m.require_config(r2));
}

bool elementary_leq(const CostModel& m, std::string_view r2, std::string_view r,
                    std::span<const std::string> alphabet) {
  int lo = m.require_config(r2);
  int hi = m.require_config(r);
  for (const std::string& a : alphabet)
    if (!approx_leq(m.tau(hi, a), m.tau(lo, a))) return false;
  return true;
}

std::vector<ModelViolation> validate_model(const CostModel& m,
                                           std::span<const std::string> alphabet) {
  std::vector<ModelViolation> out;
  if (!(m.delta() >= 0.0)) out.push_back({"", "", "delta is negative"});
  if (!(m.theta() >= 0.0)) out.push_back({"", "", "theta is negative"});
  for (int r = 0; r < m.num_configs(); ++r) {
    const std::string& name = m.config_name(r);
    for (const std::string& a : alphabet) {
      if (!m.has_tau(r, a)) {
        out.push_back({name, a, "missing tau entry"});
      } else if (!(m.tau(r, a) >= 0.0)) {
        out.push_back({name, a, "tau is negative"});
      }
      if (!m.has_gamma(r, a)) {
        out.push_back({name, a, "missing gamma entry"});
      } else if (!(m.gamma(r, a) >= 0.0)) {
        out.push_back({name, a, "gamma is negative"});
      }
    }
  }
  // rmax must be elementarily at least as capable as every configuration.
  int rmax = m.rmax_id();
  for (int r = 0; r < m.num_configs(); ++r) {
    if (r == rmax) continue;
    for (const std::string& a : alphabet) {
      if (!m.has_tau(r, a) || !m.has_tau(rmax, a)) continue;
      if (!approx_leq(m.tau(rmax, a), m.tau(r, a)))
        out.push_back({m.config_name(r), a,
                       "baseline '" + m.rmax_name() + "' is slower on this action (" +
                           std::to_string(m.tau(rmax, a)) + " > " +
                           std::to_string(m.tau(r, a)) + ")"});
    }
  }
  return out;
}

}  // namespace resim
