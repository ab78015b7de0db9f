#include "tablecount/margins.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tablecount/errors.hpp"

namespace tablecount {

MarginPair validate_margins(std::span<const Degree> rows, std::span<const Degree> cols) {
  if (rows.empty() || cols.empty()) {
    throw TableError(ErrorKind::EmptyMargin, rows.empty() ? "no row sums" : "no column sums");
  }
  Degree row_total = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 0) throw TableError(ErrorKind::NegativeEntry, "row index " + std::to_string(i));
    row_total += rows[i];
  }
  Degree col_total = 0;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0) {
      throw TableError(ErrorKind::NegativeEntry, "column index " + std::to_string(j));
    }
    col_total += cols[j];
  }
  if (row_total != col_total) {
    throw TableError(ErrorKind::SumMismatch,
                     std::to_string(row_total) + " != " + std::to_string(col_total));
  }
  return MarginPair({rows.begin(), rows.end()}, {cols.begin(), cols.end()}, row_total);
}

BigInt falling_power_sum(std::span<const Degree> degrees, int k) {
  BigInt sum = 0;
  for (Degree d : degrees) sum += falling_factorial(d, k);
  return sum;
}

PowerSums power_sums(const MarginPair& margins, int k) {
  if (k < 1 || k > 4) {
    throw TableError(ErrorKind::UnsupportedOrder, "k = " + std::to_string(k));
  }
  return {falling_power_sum(margins.rows(), k), falling_power_sum(margins.cols(), k)};
}

namespace {

Rational central_sum(std::span<const Degree> degrees, Degree total, int k) {
  const Rational mean(BigInt(total), BigInt(static_cast<std::int64_t>(degrees.size())));
  Rational sum = 0;
  for (Degree d : degrees) {
    Rational dev = Rational(BigInt(d)) - mean;
    Rational term = 1;
    for (int i = 0; i < k; ++i) term *= dev;
    sum += term;
  }
  return sum;
}

BigInt ceil_div(const Rational& value) {
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (q * den < num) q += 1;
  return q;
}

void require_total(const MarginPair& margins, Degree minimum) {
  if (margins.total() < minimum) {
    throw TableError(ErrorKind::ZeroTotal, "total S = " + std::to_string(margins.total()) +
                                               " (need S >= " + std::to_string(minimum) + ")");
  }
}

}  // namespace

MomentSummary central_moments(const MarginPair& margins) {
  require_total(margins, 1);
  const Degree S = margins.total();
  const auto mn = static_cast<std::int64_t>(margins.m() * margins.n());

  MomentSummary out;
  out.s_max = *std::max_element(margins.rows().begin(), margins.rows().end());
  out.t_max = *std::max_element(margins.cols().begin(), margins.cols().end());
  out.S2 = falling_power_sum(margins.rows(), 2);
  out.S3 = falling_power_sum(margins.rows(), 3);
  out.T2 = falling_power_sum(margins.cols(), 2);
  out.T3 = falling_power_sum(margins.cols(), 3);

  const Rational scale(BigInt(mn), BigInt(S) * BigInt(mn + S));
  out.mu2 = scale * central_sum(margins.rows(), S, 2);
  out.mu3 = scale * central_sum(margins.rows(), S, 3);
  out.nu2 = scale * central_sum(margins.cols(), S, 2);
  out.nu3 = scale * central_sum(margins.cols(), S, 3);
  out.sparsity_ratio = static_cast<double>(out.s_max) * static_cast<double>(out.t_max) /
                       std::cbrt(static_cast<double>(S) * static_cast<double>(S));
  return out;
}

RegimeReport classify_regime(const MarginPair& margins) {
  require_total(margins, 2);
  const MomentSummary moments = central_moments(margins);
  const Degree S = margins.total();
  const long double log_s = std::log(static_cast<long double>(S));
  const long double s_real = static_cast<long double>(S);

  const BigInt S2T2 = moments.S2 * moments.T2;
  const BigInt S3T3 = moments.S3 * moments.T3;
  const long double s2t2 = S2T2.convert_to<long double>();
  const auto log_ceiling = static_cast<std::int64_t>(std::ceil(log_s));

  RegimeReport report;
  report.sparsity_ratio = moments.sparsity_ratio;
  report.sparse = moments.sparsity_ratio <= 1.0;
  report.delta_cap = std::min(moments.s_max, moments.t_max);

  if (s2t2 < std::pow(s_real, 1.75L)) {
    report.N2 = 22;
  } else if (s2t2 < s_real * s_real * log_s / 5600.0L) {
    report.N2 = log_ceiling;
  } else {
    const Rational ratio = Rational(5600 * S2T2, BigInt(S) * BigInt(S));
    report.N2 = ceil_div(ratio).convert_to<std::int64_t>();
  }

  const Rational triple_ratio = Rational(230000 * S3T3, BigInt(S) * BigInt(S) * BigInt(S));
  report.N3 = std::max(log_ceiling, ceil_div(triple_ratio).convert_to<std::int64_t>());

  const long double s = static_cast<long double>(moments.s_max);
  const long double t = static_cast<long double>(moments.t_max);
  const long double log2_s = log_s * log_s;
  const bool degree_condition = moments.S2.convert_to<long double>() >= s * log2_s &&
                                moments.T2.convert_to<long double>() >= t * log2_s;
  const bool product_condition = s2t2 >= std::pow(s * t, 1.5L) * s_real;
  report.substantial = moments.s_max * moments.t_max >= 1 && report.sparse &&
                       degree_condition && product_condition;
  return report;
}

}  // namespace tablecount
