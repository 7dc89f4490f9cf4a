#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "resim/exec.hpp"
#include "resim/machine.hpp"
#include "resim/relations.hpp"
#include "resim/workload.hpp"

namespace resim {

enum class TextFormat { json, csv };

/// Workload document: JSON {"items":[{"label","budget"},...]} or CSV
/// with header index,label,budget. Parse errors carry the offending
/// line/field.
WorkloadSpec parse_workload(std::string_view text, TextFormat format);

/// Reads a workload file, inferring the format from the extension
/// (.csv vs anything else) unless one is forced.
WorkloadSpec load_workload(const std::string& path,
                           std::optional<TextFormat> format = std::nullopt);

/// Model document: {"configs":[{"name","tau":{..},"gamma":{..}},...],
/// "rmax", "delta", "theta"}.
CostModel parse_model(std::string_view text);
CostModel load_model(const std::string& path);

/// Byte-stable emitters: keys sorted, numbers with 9 fractional digits.
std::string workload_to_json(const WorkloadSpec& spec);
std::string workload_to_csv(const WorkloadSpec& spec);
std::string trace_to_json(const Trace& trace, const CostModel& m,
                          const WorkloadSpec& spec, std::string_view scheme);
std::string trace_to_csv(const Trace& trace, const CostModel& m,
                         const WorkloadSpec& spec, std::string_view scheme);
std::string verdict_to_json(const RelationVerdict& verdict, std::string_view relation,
                            std::optional<double> c = std::nullopt);

struct CompareReport {
  double scheme_energy = 0.0;
  double reference_energy = 0.0;
  double min_c = 0.0;
  double alpha_hat = 0.0;
};
std::string compare_report_to_json(const CompareReport& report);

/// Fixed-point rendering used everywhere a number is serialized.
std::string format_number(double v);

}  // namespace resim
