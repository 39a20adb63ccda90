#pragma once

// Check reports and their v1 encodings: line-oriented key/value text, or
// JSON with the same fields. Atoms print with canonical variable names so
// a report does not depend on how fresh variables were numbered.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssem/syntax.hpp"
#include "ssem/term.hpp"

namespace ssem {

inline constexpr const char* kReportSchema = "v1";

enum class Verdict { kPass, kFail, kInconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kInconclusive:
      return "inconclusive-truncated";
  }
  return "?";
}

/// A violating head instance, or a target atom without a witness.
struct Counterexample {
  std::optional<std::size_t> clause;  // 1-based
  std::vector<Atom> body;
  Atom atom;
  std::string reason;
};

/// Per-target line of a completeness report.
struct TargetEntry {
  Atom atom;
  std::optional<std::size_t> clause;  // 1-based, when witnessed
  std::uint64_t level = 0;
  std::vector<std::uint64_t> body_levels;
  bool witnessed = false;
};

struct CheckReport {
  std::string kind;  // correctness | completeness | level-mapping
  std::string program;
  std::string spec;
  Verdict verdict = Verdict::kPass;
  std::map<std::string, std::int64_t> bounds;
  std::map<std::string, std::uint64_t> stats;
  std::vector<Counterexample> counterexamples;
  std::vector<TargetEntry> targets;
  std::optional<double> elapsed_ms;
};

namespace detail {

inline std::string bounds_text(const std::map<std::string, std::int64_t>& b) {
  std::string out;
  for (const auto& [k, v] : b) {
    if (!out.empty()) out += ',';
    out += k + "=" + std::to_string(v);
  }
  return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

}  // namespace detail

inline std::string report_encode_text(const CheckReport& r) {
  std::ostringstream os;
  os << "schema: " << kReportSchema << "\n";
  os << "kind: " << r.kind << "\n";
  if (!r.program.empty()) os << "program: " << r.program << "\n";
  os << "spec: " << r.spec << "\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  os << "bounded: true\n";
  os << "bounds: " << detail::bounds_text(r.bounds) << "\n";
  for (const auto& [k, v] : r.stats) os << "stat." << k << ": " << v << "\n";
  for (const auto& c : r.counterexamples) {
    os << "counterexample:";
    if (c.clause) os << " clause=" << *c.clause;
    os << " atom=" << print_canonical(c.atom);
    if (!c.body.empty()) {
      os << " body=[";
      for (std::size_t i = 0; i < c.body.size(); ++i)
        os << (i ? ", " : "") << print_canonical(c.body[i]);
      os << "]";
    }
    if (!c.reason.empty()) os << " reason=\"" << c.reason << "\"";
    os << "\n";
  }
  for (const auto& t : r.targets) {
    os << "target: atom=" << print_canonical(t.atom);
    if (t.clause) os << " clause=" << *t.clause;
    os << " level=" << t.level;
    if (t.witnessed)
      os << " body_levels=[" << detail::join_numbers(t.body_levels) << "]";
    else
      os << " witness=none";
    os << "\n";
  }
  if (r.elapsed_ms) os << "elapsed_ms: " << *r.elapsed_ms << "\n";
  return os.str();
}

inline nlohmann::ordered_json report_to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["kind"] = r.kind;
  if (!r.program.empty()) j["program"] = r.program;
  j["spec"] = r.spec;
  j["verdict"] = to_string(r.verdict);
  j["bounded"] = true;
  j["bounds"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.bounds) j["bounds"][k] = v;
  j["stats"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.stats) j["stats"][k] = v;
  j["counterexamples"] = nlohmann::ordered_json::array();
  for (const auto& c : r.counterexamples) {
    nlohmann::ordered_json e;
    if (c.clause) e["clause"] = *c.clause;
    e["atom"] = print_canonical(c.atom);
    e["body"] = nlohmann::ordered_json::array();
    for (const auto& b : c.body) e["body"].push_back(print_canonical(b));
    if (!c.reason.empty()) e["reason"] = c.reason;
    j["counterexamples"].push_back(std::move(e));
  }
  j["targets"] = nlohmann::ordered_json::array();
  for (const auto& t : r.targets) {
    nlohmann::ordered_json e;
    e["atom"] = print_canonical(t.atom);
    if (t.clause) e["clause"] = *t.clause;
    e["level"] = t.level;
    e["witnessed"] = t.witnessed;
    if (t.witnessed) e["body_levels"] = t.body_levels;
    j["targets"].push_back(std::move(e));
  }
  if (r.elapsed_ms) j["elapsed_ms"] = *r.elapsed_ms;
  return j;
}

enum class ReportFormat { kText, kJson };

inline std::string report_encode(const CheckReport& r,
                                 ReportFormat f = ReportFormat::kText) {
  if (f == ReportFormat::kJson) return report_to_json(r).dump(2) + "\n";
  return report_encode_text(r);
}

}  // namespace ssem
