/**
 * Copyright 2026, the qct developers.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE file in the root directory of this source tree.
 */
#include "qct/report.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "qct/error.hpp"
#include "qct/gates.hpp"

namespace qct {

namespace {

std::string pair_item(const std::pair<int, bool>& pair) {
  return "{site: " + std::to_string(pair.first) +
         ", polarity: " + (pair.second ? "true" : "false") + "}";
}

template <typename Seq>
void write_pair_list(std::ostream& out, const std::string& key,
                     const Seq& pairs) {
  if (pairs.empty()) {
    out << key << ": []\n";
    return;
  }
  out << key << ":\n";
  for (const auto& pair : pairs) out << "  - " << pair_item(pair) << "\n";
}

std::string classical_value(const ClassicalValue& v) {
  if (std::holds_alternative<std::int64_t>(v)) {
    return std::to_string(std::get<std::int64_t>(v));
  }
  return format_double(std::get<double>(v));
}

void write_state(std::ostream& out, const std::string& indent,
                 const StateVector& state) {
  for (const auto& amp : state.amps) {
    out << indent << "- [" << format_double(amp.real()) << ", "
        << format_double(amp.imag()) << "]\n";
  }
}

void write_classical(std::ostream& out, const TestCase& tc) {
  out << "{";
  bool first = true;
  for (const auto& [name, value] : tc.classical) {
    if (!first) out << ", ";
    first = false;
    out << name << ": " << classical_value(value);
  }
  out << "}";
}

std::string int_list(const std::set<std::int64_t>& values) {
  std::string s = "[";
  bool first = true;
  for (std::int64_t v : values) {
    if (!first) s += ", ";
    first = false;
    s += std::to_string(v);
  }
  return s + "]";
}

}  // namespace

void write_report(const Report& r, std::ostream& out, bool include_timings) {
  out << "schema: qct-report/1\n";
  out << "program: " << r.program << "\n";
  out << "seed: " << r.seed << "\n";
  out << "termination: " << r.termination << "\n";
  out << "iterations: " << r.iterations << "\n";
  out << "sites: " << r.total_sites << "\n";
  out << "coverage: " << format_double(branch_coverage(r)) << "\n";
  out << "feasible_pairs: " << r.feasible_pairs << "\n";
  out << "feasible_coverage: " << format_double(feasible_branch_coverage(r))
      << "\n";
  out << "distinct_traces: " << r.distinct_traces << "\n";
  out << "observed_results: " << int_list(r.observed_results) << "\n";
  write_pair_list(out, "covered", r.covered);
  write_pair_list(out, "unsat_branches", r.unsat_branches);
  write_pair_list(out, "timeout_branches", r.timeout_branches);
  write_pair_list(out, "abandoned_branches", r.abandoned_branches);
  if (r.unreached_sites.empty()) {
    out << "unreached_sites: []\n";
  } else {
    out << "unreached_sites:\n";
    for (int site : r.unreached_sites) out << "  - " << site << "\n";
  }
  out << "solver:\n";
  out << "  calls: " << r.solver_calls << "\n";
  out << "  sat: " << r.solver_sat << "\n";
  out << "  unsat: " << r.solver_unsat << "\n";
  out << "  timeouts: " << r.solver_timeouts << "\n";
  out << "  errors: " << r.solver_errors << "\n";
  if (include_timings) {
    out << "  seconds: " << format_double(r.solver_seconds) << "\n";
  }
  if (r.quality_entries.empty()) {
    out << "quality: []\n";
  } else {
    out << "quality:\n";
    double total = 0.0;
    for (const QualityEntry& entry : r.quality_entries) {
      total += entry.value;
      out << "  - {case: " << entry.case_index << ", site: " << entry.site
          << ", value: " << format_double(entry.value) << "}\n";
    }
    out << "quality_mean: "
        << format_double(total /
                         static_cast<double>(r.quality_entries.size()))
        << "\n";
  }
  out << "cases:\n";
  for (const CaseRecord& rec : r.cases) {
    out << "  - origin: " << rec.origin << "\n";
    if (rec.target_site < 0) {
      out << "    target: none\n";
    } else {
      out << "    target: {site: " << rec.target_site << ", polarity: "
          << (rec.target_polarity != 0 ? "true" : "false") << "}\n";
    }
    out << "    accepted: " << (rec.accepted ? "true" : "false") << "\n";
    out << "    new_traces: " << rec.new_traces << "\n";
    std::set<std::int64_t> results;
    for (const Trace& trace : rec.traces) results.insert(trace.result);
    out << "    results: " << int_list(results) << "\n";
    out << "    classical: ";
    write_classical(out, rec.tc);
    out << "\n";
    out << "    state:\n";
    write_state(out, "      ", rec.tc.initial_state);
  }
}

std::string report_to_string(const Report& r, bool include_timings) {
  std::ostringstream out;
  write_report(r, out, include_timings);
  return out.str();
}

void write_test_case(const TestCase& tc, int num_qubits, std::ostream& out) {
  out << "schema: qct-testcase/1\n";
  out << "qubits: " << num_qubits << "\n";
  out << "classical: ";
  write_classical(out, tc);
  out << "\n";
  out << "state:\n";
  write_state(out, "  ", tc.initial_state);
}

std::string test_case_to_string(const TestCase& tc, int num_qubits) {
  std::ostringstream out;
  write_test_case(tc, num_qubits, out);
  return out.str();
}

void write_manifest(const Manifest& m, std::ostream& out) {
  out << "schema: qct-manifest/1\n";
  out << "qubits: " << m.qubits << "\n";
  out << "delta: " << format_double(m.delta) << "\n";
  if (m.entries.empty()) {
    out << "programs: []\n";
    return;
  }
  out << "programs:\n";
  for (const ManifestEntry& entry : m.entries) {
    out << "  - {file: " << entry.file << ", structure: " << entry.structure
        << ", scale: " << entry.scale << ", seed: " << entry.seed << "}\n";
  }
}

namespace {

std::string trimmed(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string value_after(const std::string& line, const std::string& key) {
  return trimmed(line.substr(key.size()));
}

ManifestEntry parse_entry(const std::string& body) {
  ManifestEntry entry;
  std::istringstream in(body);
  std::string field;
  while (std::getline(in, field, ',')) {
    std::size_t colon = field.find(':');
    if (colon == std::string::npos) {
      throw ValidationError("manifest: malformed entry field: " + field);
    }
    std::string key = trimmed(field.substr(0, colon));
    std::string value = trimmed(field.substr(colon + 1));
    if (key == "file") {
      entry.file = value;
    } else if (key == "structure") {
      entry.structure = value;
    } else if (key == "scale") {
      entry.scale = value;
    } else if (key == "seed") {
      entry.seed = std::stoull(value);
    } else {
      throw ValidationError("manifest: unknown entry key: " + key);
    }
  }
  if (entry.file.empty()) {
    throw ValidationError("manifest: entry without file");
  }
  return entry;
}

}  // namespace

Manifest parse_manifest(const std::string& text) {
  Manifest m;
  bool saw_schema = false;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = trimmed(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("schema:", 0) == 0) {
      if (value_after(line, "schema:") != "qct-manifest/1") {
        throw ValidationError("manifest: unsupported schema");
      }
      saw_schema = true;
    } else if (line.rfind("qubits:", 0) == 0) {
      m.qubits = std::stoi(value_after(line, "qubits:"));
    } else if (line.rfind("delta:", 0) == 0) {
      m.delta = std::stod(value_after(line, "delta:"));
    } else if (line == "programs:" || line == "programs: []") {
      continue;
    } else if (line.rfind("- {", 0) == 0 && line.back() == '}') {
      m.entries.push_back(parse_entry(line.substr(3, line.size() - 4)));
    } else {
      throw ValidationError("manifest: unrecognized line: " + line);
    }
  }
  if (!saw_schema) throw ValidationError("manifest: missing schema line");
  return m;
}

}  // namespace qct
