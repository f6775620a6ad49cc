#pragma once

// Text renderings shared by the command-line driver and the tests.

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dialog/inference.hpp"
#include "dialog/models.hpp"
#include "dialog/spec.hpp"

namespace dialog::format {

/// Ordered key:value lines, the machine-readable output format.
class Fields {
 public:
  void add(std::string key, std::string value) { rows_.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  const std::vector<std::pair<std::string, std::string>>& rows() const { return rows_; }

  std::string str() const {
    std::string out;
    for (const auto& [k, v] : rows_) out += k + ": " + v + "\n";
    return out;
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

inline std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

/// Two left-aligned columns separated by at least two spaces.
inline std::string two_columns(const std::vector<std::pair<std::string, std::string>>& rows,
                               const std::pair<std::string, std::string>& header = {}) {
  std::size_t w = header.first.size();
  for (const auto& r : rows) w = std::max(w, r.first.size());
  std::ostringstream o;
  auto line = [&](const std::string& a, const std::string& b) {
    o << a << std::string(w - a.size() + 2, ' ') << b << "\n";
  };
  if (!header.first.empty() || !header.second.empty()) line(header.first, header.second);
  for (const auto& [a, b] : rows) line(a, b);
  return o.str();
}

/// Carrier listing per type, then one line per input of each function.
inline std::string model_table(const Specification& s, const FiniteModel& m, const std::string& indent = "") {
  std::ostringstream o;
  for (const auto& [t, carrier] : m.carriers) o << indent << "carrier " << t << " = {" << join(carrier, ", ") << "}\n";
  for (const auto& [f, table] : m.functions) {
    const TermSig& sig = s.sig(f);
    o << indent << f << " : " << sig.dom << " -> " << sig.cod << "\n";
    const auto& dom = m.carriers.at(sig.dom);
    const auto& cod = m.carriers.at(sig.cod);
    for (std::size_t i = 0; i < table.size(); ++i) o << indent << "  " << dom[i] << " |-> " << cod[table[i]] << "\n";
  }
  return o.str();
}

inline void model_fields(Fields& out, const std::string& prefix, const FiniteModel& m) {
  for (const auto& [t, carrier] : m.carriers) out.add(prefix + ".carrier." + t, join(carrier, " "));
  for (const auto& [f, table] : m.functions) {
    std::vector<std::string> row;
    for (std::size_t v : table) row.push_back(std::to_string(v));
    out.add(prefix + ".term." + f, join(row, " "));
  }
}

/// One line per rule application: rule, match and generated names.
inline std::string trace_line(const TraceEntry& e) {
  std::vector<std::string> match;
  for (const auto& [k, v] : e.match) match.push_back(k + "=" + v);
  return e.rule + " " + join(match, " ") + " => " + join(e.generated, " ");
}

inline std::string trace_text(const std::vector<TraceEntry>& trace) {
  std::string out;
  for (std::size_t i = 0; i < trace.size(); ++i) out += std::to_string(i + 1) + ". " + trace_line(trace[i]) + "\n";
  return out;
}

}  // namespace dialog::format
