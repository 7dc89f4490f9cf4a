#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace resim {

struct ConfigSpec {
  std::string name;
  std::map<std::string, double> tau;    // per-action time cost
  std::map<std::string, double> gamma;  // per-action energy cost
};

/// Configurations with per-(config, action) time/energy cost tables,
/// one designated baseline configuration, and constant reconfiguration
/// costs. Self-reconfiguration is free; every change between distinct
/// configurations costs delta time and theta energy. Per-pair tables
/// can later replace the constants behind reconfig_time/reconfig_energy
/// without touching callers.
class CostModel {
 public:
  CostModel(std::vector<ConfigSpec> configs, const std::string& rmax, double delta,
            double theta);

  int num_configs() const { return static_cast<int>(configs_.size()); }
  int config_id(std::string_view name) const;  // -1 when unknown
  int require_config(std::string_view name) const;
  const std::string& config_name(int r) const { return configs_[r].name; }
  int rmax_id() const { return rmax_; }
  const std::string& rmax_name() const { return configs_[rmax_].name; }
  double delta() const { return delta_; }
  double theta() const { return theta_; }

  /// Union of action labels declared by any configuration, sorted.
  const std::vector<std::string>& alphabet() const { return alphabet_; }

  /// Cost lookups throw InputError for labels missing from the table.
  double tau(int r, const std::string& label) const;
  double gamma(int r, const std::string& label) const;
  bool has_tau(int r, const std::string& label) const;
  bool has_gamma(int r, const std::string& label) const;

  double reconfig_time(int r, int r2) const { return r == r2 ? 0.0 : delta_; }
  double reconfig_energy(int r, int r2) const { return r == r2 ? 0.0 : theta_; }

  const ConfigSpec& config(int r) const { return configs_[r]; }

 private:
  std::vector<ConfigSpec> configs_;
  int rmax_;
  double delta_;
  double theta_;
  std::vector<std::string> alphabet_;
};

/// Reconfiguration time by configuration name: 0 for r == r2, delta
/// otherwise. Throws InputError for unknown configurations.
double reconfig_time(const CostModel& m, std::string_view r, std::string_view r2);
double reconfig_energy(const CostModel& m, std::string_view r, std::string_view r2);

/// True iff `r` is elementarily at least as capable as `r2`:
/// tau(r, a) <= tau(r2, a) for every action in the alphabet.
bool elementary_leq(const CostModel& m, std::string_view r2, std::string_view r,
                    std::span<const std::string> alphabet);

struct ModelViolation {
  std::string config;
  std::string action;  // empty when the violation is not per-action
  std::string message;
};

/// Structural checks: nonnegative totals tables over the alphabet,
/// nonnegative reconfiguration constants, and the baseline being
/// elementarily at least as capable as every configuration. Violations
/// are data, not failures.
std::vector<ModelViolation> validate_model(const CostModel& m,
                                           std::span<const std::string> alphabet);

}  // namespace resim
