#include "tablecount/json_io.hpp"

#include <cmath>
#include <sstream>

#include "tablecount/errors.hpp"

namespace tablecount {

namespace {

std::vector<Degree> integer_array(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_array()) {
    throw TableError(ErrorKind::InvalidInput, std::string("expected integer array \"") + key + "\"");
  }
  std::vector<Degree> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number_integer()) {
      throw TableError(ErrorKind::InvalidInput, std::string("non-integer in \"") + key + "\"");
    }
    out.push_back(v.get<Degree>());
  }
  return out;
}

// Non-finite doubles become null instead of invalid JSON.
Json real(long double x) {
  if (!std::isfinite(x)) return nullptr;
  return static_cast<double>(x);
}

}  // namespace

MarginPair margins_from_json(const Json& j) {
  const auto rows = integer_array(j, "rows");
  const auto cols = integer_array(j, "cols");
  return validate_margins(rows, cols);
}

TableMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("entries") || !j.at("entries").is_array()) {
    throw TableError(ErrorKind::InvalidInput, "expected \"entries\" array of rows");
  }
  std::vector<std::vector<Degree>> rows;
  for (const auto& row : j.at("entries")) {
    if (!row.is_array()) throw TableError(ErrorKind::InvalidInput, "matrix row is not an array");
    auto& out = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number_integer()) throw TableError(ErrorKind::InvalidInput, "non-integer matrix entry");
      out.push_back(v.get<Degree>());
    }
  }
  return TableMatrix::from_rows(rows);
}

Json to_json(const BigInt& value) { return to_decimal(value); }

Json to_json(const Rational& value) {
  return {{"num", to_decimal(numerator(value))}, {"den", to_decimal(denominator(value))}};
}

Json to_json(const MarginPair& margins) {
  return {{"rows", margins.rows()}, {"cols", margins.cols()}};
}

Json to_json(const TableMatrix& matrix) { return {{"entries", matrix.to_rows()}}; }

Json to_json(const MomentSummary& s) {
  return {{"s_max", s.s_max}, {"t_max", s.t_max}, {"S2", to_json(s.S2)},   {"S3", to_json(s.S3)},
          {"T2", to_json(s.T2)}, {"T3", to_json(s.T3)}, {"mu2", to_json(s.mu2)}, {"mu3", to_json(s.mu3)},
          {"nu2", to_json(s.nu2)}, {"nu3", to_json(s.nu3)}, {"sparsity_ratio", real(s.sparsity_ratio)}};
}

Json to_json(const RegimeReport& r) {
  return {{"substantial", r.substantial}, {"N2", r.N2}, {"N3", r.N3}, {"delta_cap", r.delta_cap},
          {"sparsity_ratio", real(r.sparsity_ratio)}, {"sparse", r.sparse}};
}

Json to_json(const CountResult& r) {
  return {{"count", to_json(r.count)}, {"states_visited", r.states_visited}};
}

Json to_json(const ExpectedMoments& e) {
  return {{"mu2", to_json(e.mu2)}, {"nu2", to_json(e.nu2)}, {"mu3", to_json(e.mu3)}, {"nu3", to_json(e.nu3)}};
}

Json to_json(const LogEstimate& e) {
  return {{"formula", std::string(to_string(e.formula))},
          {"log_value", real(e.log_value)},
          {"log10_value", real(e.log10_value())},
          {"error_order", real(e.error_order)},
          {"applicability",
           {{"sparse", e.applicability.sparse},
            {"near_regular", e.applicability.near_regular},
            {"semiregular", e.applicability.semiregular},
            {"hypothesis_eq1", e.applicability.hypothesis_eq1}}}};
}

Json to_json(const Decomposition& d) {
  return {{"log_M", real(d.log_M)}, {"log_P1", real(d.log_P1)}, {"log_P2", real(d.log_P2)},
          {"log_E", real(d.log_E)}, {"log_sum", real(d.sum())}};
}

Json to_json(const DeltaExtraction& d) {
  return {{"delta", real(d.delta)}, {"predicted_limit", real(d.predicted_limit)}};
}

Json to_json(const ComparisonRow& r) {
  Json j = {{"label", r.label}, {"S", r.S}, {"skipped", r.skipped}};
  if (r.skipped) {
    j["skip_reason"] = r.skip_reason;
    j["predicted_order"] = real(r.predicted_order);
    return j;
  }
  j["exact_count"] = r.exact_count;
  j["exact_log"] = real(r.exact_log);
  j["estimate_log"] = real(r.estimate_log);
  j["abs_log_error"] = real(r.abs_log_error);
  j["predicted_order"] = real(r.predicted_order);
  j["ratio"] = real(r.ratio);
  return j;
}

Json to_json(const PairingStatistics& s) {
  Json b = Json::array(), p = Json::array();
  for (std::size_t r = 0; r < s.doublet_histogram.size(); ++r) {
    b.push_back(to_json(s.binomial_moment(static_cast<int>(r))));
    p.push_back(to_json(s.probability(static_cast<int>(r))));
  }
  return {{"pairings", s.pairings},
          {"weight_sum", s.weight_sum},
          {"simple_pairings", s.simple_pairings},
          {"doublet_histogram", s.doublet_histogram},
          {"binomial_moments", b},
          {"probabilities", p}};
}

Json to_json(const DoubletMoments& d) {
  Json b = Json::array();
  for (std::size_t r = 0; r < d.b.size(); ++r) {
    Json entry = {{"r", r}, {"truncated", d.truncated[r]}};
    entry["value"] = d.b[r] ? to_json(*d.b[r]) : Json(nullptr);
    b.push_back(entry);
  }
  return {{"b", b}};
}

Json to_json(const ClassProbabilities& c) {
  Json p = Json::array();
  for (const auto& v : c.p) p.push_back(to_json(v));
  Json approx = Json::array();
  for (const auto& v : c.p) approx.push_back(real(to_double(v)));
  return {{"p", p}, {"p_approx", approx}, {"truncated", c.truncated}};
}

Json to_json(const MonteCarloResult& r) {
  return {{"samples", r.samples}, {"hits", r.hits}, {"fraction", real(r.fraction())},
          {"standard_error", real(r.standard_error())}};
}

Json to_json(const WeightIdentity& w) {
  return {{"lhs", to_json(w.lhs)}, {"rhs", to_json(w.rhs)}, {"holds", w.holds()}};
}

Json to_json(const SwitchingSite& site) {
  Json cells = Json::array();
  for (const Cell& c : site.positions) cells.push_back({c.row, c.col});
  return {{"D", site.D}, {"positions", cells}};
}

Json to_json(const SwitchingEnumeration& e) {
  Json sites = Json::array();
  for (const auto& s : e.sites) sites.push_back(to_json(s));
  return {{"count", e.count}, {"sites", sites}};
}

Json to_json(const SwitchingBounds& b) {
  return {{"J", b.J}, {"K", b.K}, {"lower", to_json(b.lower)}, {"upper_reverse", to_json(b.upper_reverse)}};
}

Json to_json(const InequalityCheck& c) {
  return {{"log_lhs", real(c.log_lhs)}, {"log_rhs", real(c.log_rhs)}, {"hypothesis_ok", c.hypothesis_ok},
          {"holds", c.holds}};
}

Json to_json(const SummationBounds& b) {
  Json terms = Json::array();
  for (double t : b.terms) terms.push_back(real(t));
  return {{"sigma", real(b.sigma)}, {"sigma1", real(b.sigma1)}, {"sigma2", real(b.sigma2)},
          {"hypotheses_ok", b.hypotheses_ok}, {"terms", terms}};
}

std::string rows_to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "label,S,exact_count,exact_log,estimate_log,abs_log_error,predicted_order,ratio,skipped\n";
  for (const auto& r : rows) {
    out << '"' << r.label << "\"," << r.S << ',';
    if (r.skipped) {
      out << ",,,,," << r.predicted_order << ",,1\n";
    } else {
      out << r.exact_count << ',' << r.exact_log << ',' << r.estimate_log << ',' << r.abs_log_error << ','
          << r.predicted_order << ',' << r.ratio << ",0\n";
    }
  }
  return out.str();
}

}  // namespace tablecount
