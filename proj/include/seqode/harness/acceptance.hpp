#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace seqode {

struct CriterionResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Pinned tolerances; tests tamper with them to check that criteria can fail.
struct Tolerances {
  double order = 0.25;             ///< C1: |slope - max(r,1)|
  double truncation_slope = 0.15;  ///< C2: |slope + (1 - 1/p)|
  double cost_slope_beta1[2] = {4.5, 5.5};
  double cost_slope_beta0[2] = {2.6, 3.4};
  double gap_ratio = 2.0;          ///< C5: max/min of gap n^m
  std::int64_t ulps = 4;           ///< C6: hand-written loops
  std::int64_t rational_ulps = 2;  ///< C6: double against the exact rational
};

struct AcceptanceOptions {
  int threads = 1;
  Tolerances tol;
};

/// Runs C1..C8 in order; on_result sees each line as soon as it is decided.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result = {});

/// One of C1..C6 on its own (C7 and C8 only exist as audits over the others).
CriterionResult run_criterion(const std::string& id, const AcceptanceOptions& options);

/// "C3 PASS name: detail (1.2 s)"
std::string format_result(const CriterionResult& result);

}  // namespace seqode
