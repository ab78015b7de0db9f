#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tablecount/asymptotics.hpp"
#include "tablecount/exact.hpp"
#include "tablecount/margins.hpp"

namespace tablecount {

struct ComparisonRow {
  std::string label;
  Degree S = 0;
  std::string exact_count;   // decimal
  double exact_log = 0.0;    // ln(count) from the exact integer
  double estimate_log = 0.0;
  double abs_log_error = 0.0;
  double predicted_order = 0.0;  // s^3 t^3 / S^2
  double ratio = 0.0;            // abs_log_error / predicted_order
  bool skipped = false;
  std::string skip_reason;
};

struct EstimateOptions {
  EntryAlphabet alphabet = EntryAlphabet::all();
  long double delta = 0.0;  // cm only
};

/// Dispatch on the formula name. Semiregular and cm need semiregular margins.
LogEstimate estimate_for(FormulaId formula, const MarginPair& margins,
                         const EstimateOptions& options = {});

/// Counts use the alphabet implied by the formula: {0,1} for 01, the given
/// alphabet for restricted, all nonnegative integers otherwise.
EntryAlphabet counting_alphabet(FormulaId formula, const EstimateOptions& options);

ComparisonRow compare(const std::string& label, const MarginPair& margins, FormulaId formula,
                      const EstimateOptions& options = {}, const GuardLimits& limits = {});

struct RegularFamily {
  Degree s = 1;
  Degree t = 1;
};

/// Size m gives m rows of sum s and m*s/t columns of sum t. Rows whose
/// count exceeds a guard are marked skipped rather than thrown.
std::vector<ComparisonRow> convergence_report(RegularFamily family, const std::vector<std::int64_t>& sizes,
                                              FormulaId formula, const EstimateOptions& options = {},
                                              const GuardLimits& limits = {});

std::optional<FormulaId> parse_formula(std::string_view name);

}  // namespace tablecount
