#include "tablecount/report.hpp"

#include <cmath>

#include "tablecount/errors.hpp"

namespace tablecount {

LogEstimate estimate_for(FormulaId formula, const MarginPair& margins, const EstimateOptions& options) {
  switch (formula) {
    case FormulaId::Main: return estimate_main(margins);
    case FormulaId::ZeroOne: return estimate_01(margins);
    case FormulaId::Semiregular: return estimate_semiregular(SemiregularSpec::from_margins(margins));
    case FormulaId::MomentForm: return estimate_moment_form(margins);
    case FormulaId::NearRegular: return estimate_near_regular(margins);
    case FormulaId::Restricted: return estimate_restricted(margins, options.alphabet);
    case FormulaId::CanfieldMcKay:
      return cm_estimate(SemiregularSpec::from_margins(margins), options.delta);
  }
  throw TableError(ErrorKind::InvalidInput, "unknown formula");
}

EntryAlphabet counting_alphabet(FormulaId formula, const EstimateOptions& options) {
  switch (formula) {
    case FormulaId::ZeroOne: return EntryAlphabet::zero_one();
    case FormulaId::Restricted: return options.alphabet;
    default: return EntryAlphabet::all();
  }
}

ComparisonRow compare(const std::string& label, const MarginPair& margins, FormulaId formula,
                      const EstimateOptions& options, const GuardLimits& limits) {
  ComparisonRow row;
  row.label = label;
  row.S = margins.total();
  row.predicted_order = error_order(margins);
  const LogEstimate est = estimate_for(formula, margins, options);
  row.estimate_log = static_cast<double>(est.log_value);
  const CountResult exact = count_exact(margins, counting_alphabet(formula, options), limits);
  if (exact.count == 0) {
    throw TableError(ErrorKind::EmptyClass, "no matrix has these margins in the alphabet");
  }
  row.exact_count = to_decimal(exact.count);
  const long double exact_log = log_of(exact.count);
  row.exact_log = static_cast<double>(exact_log);
  row.abs_log_error = static_cast<double>(std::fabs(exact_log - est.log_value));
  row.ratio = row.predicted_order > 0 ? row.abs_log_error / row.predicted_order : 0.0;
  return row;
}

std::vector<ComparisonRow> convergence_report(RegularFamily family, const std::vector<std::int64_t>& sizes,
                                              FormulaId formula, const EstimateOptions& options,
                                              const GuardLimits& limits) {
  if (family.s < 1 || family.t < 1) {
    throw TableError(ErrorKind::InvalidInput, "regular family needs s, t >= 1");
  }
  std::vector<ComparisonRow> out;
  for (std::int64_t m : sizes) {
    if (m < 1 || (m * family.s) % family.t != 0) {
      throw TableError(ErrorKind::InvalidInput,
                       "size " + std::to_string(m) + " does not give an integral column count");
    }
    const std::int64_t n = m * family.s / family.t;
    const std::vector<Degree> rows(static_cast<std::size_t>(m), family.s);
    const std::vector<Degree> cols(static_cast<std::size_t>(n), family.t);
    const MarginPair margins = validate_margins(rows, cols);
    const std::string label = "regular(" + std::to_string(family.s) + "," + std::to_string(family.t) +
                              ") m=" + std::to_string(m);
    try {
      out.push_back(compare(label, margins, formula, options, limits));
    } catch (const TableError& e) {
      if (!e.is_guard()) throw;
      ComparisonRow row;
      row.label = label;
      row.S = margins.total();
      row.predicted_order = error_order(margins);
      row.skipped = true;
      row.skip_reason = e.what();
      out.push_back(std::move(row));
    }
  }
  return out;
}

std::optional<FormulaId> parse_formula(std::string_view name) {
  for (FormulaId id : {FormulaId::Main, FormulaId::ZeroOne, FormulaId::Semiregular, FormulaId::MomentForm,
                       FormulaId::NearRegular, FormulaId::Restricted, FormulaId::CanfieldMcKay}) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

}  // namespace tablecount
