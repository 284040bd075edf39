#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sphinterp/spherical.hpp"

namespace sphinterp::cli {

enum class Status { Pass, Fail, Info };

struct CaseRow {
  std::string key;     // sortable case identifier
  std::string metric;
  double value = 0.0;
  std::string limit;
  Status status = Status::Pass;
};

struct SuiteResult {
  std::string name;
  std::vector<CaseRow> rows;

  Index failures() const;
  Index checks() const;
  /// Rows ordered by key, then metric.
  void sort();
  std::string csv() const;
};

struct SuiteParams {
  Index n = 5;
  Index rmax = 6;
  Index m = 0;  // 0: suite default
  Index trials = 0;
  std::uint64_t seed = 1;
};

SuiteResult poisedness_suite(const SuiteParams& p);
SuiteResult chebyshev_suite(const SuiteParams& p);
SuiteResult factorization_suite(const SuiteParams& p);
SuiteResult lemmas_suite(const SuiteParams& p);
SuiteResult cubature_suite(const SuiteParams& p);

const char* status_name(Status s);

}  // namespace sphinterp::cli
