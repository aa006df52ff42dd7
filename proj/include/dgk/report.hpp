#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace dgk {

struct CheckLine {
  std::string id;
  std::uint64_t tested = 0;
  std::uint64_t skipped = 0;
  std::uint64_t failed = 0;
  std::string first_counterexample;

  void record_pass() { ++tested; }
  void record_skip() { ++skipped; }
  void record_fail(const std::string& witness) {
    ++tested;
    if (failed++ == 0) first_counterexample = witness;
  }
  void merge(const CheckLine& o) {
    tested += o.tested;
    skipped += o.skipped;
    if (failed == 0 && o.failed > 0) first_counterexample = o.first_counterexample;
    failed += o.failed;
  }
};

struct VerificationReport {
  // deque keeps references from line() stable while new lines are added
  std::deque<CheckLine> lines;
  std::vector<std::string> notes;  // documented findings that are not failures

  CheckLine& line(const std::string& id) {
    for (auto& l : lines)
      if (l.id == id) return l;
    lines.push_back(CheckLine{id});
    return lines.back();
  }

  bool passed() const {
    for (const auto& l : lines)
      if (l.failed) return false;
    return true;
  }

  std::uint64_t total_tested() const {
    std::uint64_t n = 0;
    for (const auto& l : lines) n += l.tested;
    return n;
  }

  void merge(const VerificationReport& o) {
    for (const auto& l : o.lines) line(l.id).merge(l);
    notes.insert(notes.end(), o.notes.begin(), o.notes.end());
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& l : lines) {
      nlohmann::json j{{"identity-id", l.id},
                       {"tested", l.tested},
                       {"skipped", l.skipped},
                       {"failed", l.failed}};
      if (l.failed) j["first-counterexample"] = l.first_counterexample;
      arr.push_back(j);
    }
    nlohmann::json out{{"checks", arr}, {"passed", passed()}};
    if (!notes.empty()) out["findings"] = notes;
    return out;
  }
};

}  // namespace dgk
