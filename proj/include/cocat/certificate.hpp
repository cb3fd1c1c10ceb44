#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cocat/cocategory.hpp"

namespace cocat {

struct CheckRecord {
  std::string name;
  std::string scope;
  bool passed = true;
  std::string detail;
};

/// Machine-checkable list of the identities verified by a construction.
struct Certificate {
  std::string operation;
  std::vector<CheckRecord> checks;

  void record(std::string name, std::string scope, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), std::move(scope), passed, std::move(detail)});
  }
  void record(std::string name, std::string scope, const ValidationReport& report) {
    record(std::move(name), std::move(scope), report.ok(), report.to_string());
  }
  void record_equal(std::string name, std::string scope, const Matrix& lhs, const Matrix& rhs) {
    bool same = lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() && lhs == rhs;
    std::string text;
    if (!same) text = lhs.rows() == rhs.rows() && lhs.cols() == rhs.cols() ? detail::diff_detail(lhs, rhs) : "shape";
    record(std::move(name), std::move(scope), same, std::move(text));
  }
  void append(const Certificate& other, const std::string& prefix) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.scope, c.passed, c.detail});
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.passed ? 0 : 1;
    return n;
  }
  std::string failure_text() const {
    std::string s;
    for (const auto& c : checks) {
      if (!c.passed) s += c.name + " " + c.scope + ": " + c.detail + "\n";
    }
    return s;
  }
};

}  // namespace cocat
