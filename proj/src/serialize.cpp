#include "resim/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "resim/errors.hpp"

namespace resim {

namespace {

using nlohmann::json;

json parse_json(std::string_view text, const char* what) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded())
    throw InputError(std::string(what) + ": malformed JSON document");
  return doc;
}

double number_field(const json& obj, const char* field, const char* where) {
  if (!obj.contains(field))
    throw InputError(std::string(where) + ": missing field '" + field + "'");
  const json& v = obj.at(field);
  if (!v.is_number())
    throw InputError(std::string(where) + ": field '" + field + "' must be a number");
  return v.get<double>();
}

std::string string_field(const json& obj, const char* field, const char* where) {
  if (!obj.contains(field))
    throw InputError(std::string(where) + ": missing field '" + field + "'");
  const json& v = obj.at(field);
  if (!v.is_string())
    throw InputError(std::string(where) + ": field '" + field + "' must be a string");
  return v.get<std::string>();
}

std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

WorkloadSpec parse_workload_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<WorkItem> items;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1) {
      if (line != "index,label,budget")
        throw InputError("workload CSV line 1: expected header 'index,label,budget'");
      continue;
    }
    std::size_t c1 = line.find(',');
    std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw InputError("workload CSV line " + std::to_string(lineno) +
                       ": expected three fields");
    std::string label = line.substr(c1 + 1, c2 - c1 - 1);
    std::string budget_text = line.substr(c2 + 1);
    if (label.empty())
      throw InputError("workload CSV line " + std::to_string(lineno) + ": empty label");
    double budget = 0.0;
    try {
      std::size_t used = 0;
      budget = std::stod(budget_text, &used);
      if (used != budget_text.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw InputError("workload CSV line " + std::to_string(lineno) +
                       ": bad budget '" + budget_text + "'");
    }
    if (!(budget >= 0.0))
      throw InputError("workload CSV line " + std::to_string(lineno) +
                       ": negative budget");
    items.push_back({std::move(label), budget});
  }
  return WorkloadSpec(std::move(items));
}

}  // namespace

WorkloadSpec parse_workload(std::string_view text, TextFormat format) {
  if (format == TextFormat::csv) return parse_workload_csv(text);
  json doc = parse_json(text, "workload");
  if (!doc.is_object() || !doc.contains("items") || !doc.at("items").is_array())
    throw InputError("workload: expected an object with an 'items' array");
  std::vector<WorkItem> items;
  int i = 0;
  for (const json& item : doc.at("items")) {
    std::string where = "workload item " + std::to_string(i);
    if (!item.is_object()) throw InputError(where + ": expected an object");
    std::string label = string_field(item, "label", where.c_str());
    double budget = number_field(item, "budget", where.c_str());
    if (label.empty()) throw InputError(where + ": empty label");
    if (!(budget >= 0.0))
      throw InputError(where + ": negative budget " + std::to_string(budget));
    items.push_back({std::move(label), budget});
    ++i;
  }
  return WorkloadSpec(std::move(items));
}

WorkloadSpec load_workload(const std::string& path, std::optional<TextFormat> format) {
  TextFormat f = format.value_or(path.size() > 4 && path.substr(path.size() - 4) == ".csv"
                                     ? TextFormat::csv
                                     : TextFormat::json);
  return parse_workload(read_file(path), f);
}

CostModel parse_model(std::string_view text) {
  json doc = parse_json(text, "model");
  if (!doc.is_object() || !doc.contains("configs") || !doc.at("configs").is_array())
    throw InputError("model: expected an object with a 'configs' array");
  std::vector<ConfigSpec> configs;
  int i = 0;
  for (const json& cj : doc.at("configs")) {
    std::string where = "model config " + std::to_string(i);
    if (!cj.is_object()) throw InputError(where + ": expected an object");
    ConfigSpec c;
    c.name = string_field(cj, "name", where.c_str());
    for (const char* table : {"tau", "gamma"}) {
      if (!cj.contains(table) || !cj.at(table).is_object())
        throw InputError(where + ": missing '" + table + "' table");
      for (const auto& [label, value] : cj.at(table).items()) {
        if (!value.is_number())
          throw InputError(where + ": " + table + "[" + label + "] must be a number");
        double v = value.get<double>();
        if (!(v >= 0.0))
          throw InputError(where + ": " + table + "[" + label + "] is negative");
        (table == std::string_view("tau") ? c.tau : c.gamma)[label] = v;
      }
    }
    configs.push_back(std::move(c));
    ++i;
  }
  std::string rmax = string_field(doc, "rmax", "model");
  double delta = number_field(doc, "delta", "model");
  double theta = number_field(doc, "theta", "model");
  return CostModel(std::move(configs), rmax, delta, theta);
}

CostModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

std::string workload_to_json(const WorkloadSpec& spec) {
  std::string out = "{\"items\":[";
  bool first = true;
  for (const WorkItem& it : spec.items()) {
    if (!first) out += ',';
    first = false;
    out += "{\"budget\":" + format_number(it.budget) + ",\"label\":\"" +
           json_escape(it.label) + "\"}";
  }
  out += "]}\n";
  return out;
}

std::string workload_to_csv(const WorkloadSpec& spec) {
  std::string out = "index,label,budget\n";
  for (std::size_t i = 0; i < spec.size(); ++i)
    out += std::to_string(i) + "," + spec.item(i).label + "," +
           format_number(spec.item(i).budget) + "\n";
  return out;
}

namespace {

std::string trace_step_json(const TraceStep& s, const CostModel& m, double deadline) {
  return "{\"config\":\"" + json_escape(m.config_name(s.config)) +
         "\",\"deadline\":" + format_number(deadline) +
         ",\"e\":" + format_number(s.state.energy) +
         ",\"i\":" + std::to_string(s.state.step) + ",\"label\":\"" +
         json_escape(s.label) + "\",\"t\":" + format_number(s.state.time) + "}";
}

}  // namespace

std::string trace_to_json(const Trace& trace, const CostModel& m,
                          const WorkloadSpec& spec, std::string_view scheme) {
  std::vector<double> d = deadlines(spec);
  std::string out = "{\"scheme\":\"" + json_escape(scheme) + "\",\"steps\":[";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (i > 0) out += ',';
    out += trace_step_json(trace.steps[i], m, d[i]);
  }
  out += "],\"total_energy\":" + format_number(trace.total_energy()) + "}\n";
  return out;
}

std::string trace_to_csv(const Trace& trace, const CostModel& m,
                         const WorkloadSpec& spec, std::string_view scheme) {
  (void)scheme;
  std::vector<double> d = deadlines(spec);
  std::string out = "i,label,config,t,e,deadline\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    out += std::to_string(s.state.step) + "," + s.label + "," +
           m.config_name(s.config) + "," + format_number(s.state.time) + "," +
           format_number(s.state.energy) + "," + format_number(d[i]) + "\n";
  }
  return out;
}

std::string verdict_to_json(const RelationVerdict& verdict, std::string_view relation,
                            std::optional<double> c) {
  std::string out = "{";
  if (c.has_value()) out += "\"c\":" + format_number(*c) + ",";
  if (verdict.counterexample.has_value()) {
    const Counterexample& ce = *verdict.counterexample;
    out += "\"counterexample\":{\"action\":\"" + json_escape(ce.action) +
           "\",\"kind\":\"" + std::string(to_string(ce.kind)) +
           "\",\"left_obs\":" + format_number(ce.left_obs) +
           ",\"message\":\"" + json_escape(ce.message) + "\",\"p\":" +
           std::to_string(ce.p) + ",\"path\":[";
    for (std::size_t i = 0; i < ce.path.size(); ++i) {
      if (i > 0) out += ',';
      out += "\"" + json_escape(ce.path[i]) + "\"";
    }
    out += "],\"q\":" + std::to_string(ce.q) +
           ",\"right_obs\":" + format_number(ce.right_obs) + "},";
  }
  out += "\"holds\":" + std::string(verdict.holds ? "true" : "false") +
         ",\"relation\":\"" + json_escape(relation) + "\"}\n";
  return out;
}

std::string compare_report_to_json(const CompareReport& report) {
  return "{\"alpha_hat\":" + format_number(report.alpha_hat) +
         ",\"min_c\":" + format_number(report.min_c) +
         ",\"reference_energy\":" + format_number(report.reference_energy) +
         ",\"scheme_energy\":" + format_number(report.scheme_energy) + "}\n";
}

}  // namespace resim
