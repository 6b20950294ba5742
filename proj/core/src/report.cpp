#include "starc/report.hpp"

#include <algorithm>
#include <cstdio>

namespace starc {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_json_string(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

std::string emit_report_text(const Report& report) {
  std::string out;
  out += "scenario: " + report.scenario_name + " (starc " + report.tool_version + ")\n";
  std::size_t name_w = 5;
  for (const auto& c : report.checks) name_w = std::max(name_w, c.check_name.size());
  char line[256];
  std::snprintf(line, sizeof line, "%-*s  %12s  %12s  %6s  %6s  %9s\n",
                static_cast<int>(name_w), "check", "max_residual", "tolerance", "pass",
                "points", "time_s");
  out += line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-*s  %12.4e  %12.4e  %6s  %6d  %9.4f\n",
                  static_cast<int>(name_w), c.check_name.c_str(), c.max_residual, c.tolerance,
                  c.pass ? "ok" : "FAIL", c.points_evaluated, c.wall_time);
    out += line;
    if (!c.error.empty()) out += "    error: " + c.error + "\n";
  }
  return out;
}

std::string emit_report_json(const Report& report) {
  // keys emitted in sorted order by construction
  std::string out = "{\n";
  out += "  \"checks\": [\n";
  for (std::size_t i = 0; i < report.checks.size(); ++i) {
    const CheckRecord& c = report.checks[i];
    out += "    {";
    out += "\"check_name\": ";
    append_json_string(out, c.check_name);
    if (!c.error.empty()) {
      out += ", \"error\": ";
      append_json_string(out, c.error);
    }
    out += ", \"max_residual\": " + fmt_double(c.max_residual);
    out += ", \"pass\": " + std::string(c.pass ? "true" : "false");
    out += ", \"points_evaluated\": " + std::to_string(c.points_evaluated);
    out += ", \"tolerance\": " + fmt_double(c.tolerance);
    out += ", \"wall_time\": " + fmt_double(c.wall_time);
    out += "}";
    if (i + 1 < report.checks.size()) out += ",";
    out += "\n";
  }
  out += "  ],\n";
  out += "  \"scenario\": " + report.scenario_echo + ",\n";
  out += "  \"scenario_name\": ";
  append_json_string(out, report.scenario_name);
  out += ",\n  \"tool_version\": ";
  append_json_string(out, report.tool_version);
  out += "\n}\n";
  return out;
}

}  // namespace starc
