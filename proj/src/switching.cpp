#include "tablecount/switching.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tablecount/errors.hpp"

namespace tablecount {

namespace {

std::string site_shape_violation(const TableMatrix& a, const SwitchingSite& site) {
  if (site.D < 2) return "D must be at least 2";
  if (site.positions.size() != static_cast<std::size_t>(site.D) + 1) {
    return "site needs D+1 positions";
  }
  std::vector<std::size_t> rows, cols;
  for (const Cell& c : site.positions) {
    if (c.row >= a.rows() || c.col >= a.cols()) return "position outside the matrix";
    rows.push_back(c.row);
    cols.push_back(c.col);
  }
  std::sort(rows.begin(), rows.end());
  std::sort(cols.begin(), cols.end());
  if (std::adjacent_find(rows.begin(), rows.end()) != rows.end()) return "rows not distinct";
  if (std::adjacent_find(cols.begin(), cols.end()) != cols.end()) return "columns not distinct";
  return {};
}

}  // namespace

std::string forward_violation(const TableMatrix& q, const SwitchingSite& site) {
  if (auto shape = site_shape_violation(q, site); !shape.empty()) return shape;
  const Cell pivot = site.positions[0];
  if (q(pivot.row, pivot.col) != site.D) return "pivot entry is not D";
  for (std::size_t l = 1; l < site.positions.size(); ++l) {
    const Cell c = site.positions[l];
    const Degree v = q(c.row, c.col);
    if (v == 0 || v == site.D + 1) return "diagonal entry " + std::to_string(l) + " is 0 or D+1";
    if (q(c.row, pivot.col) != 0 || q(pivot.row, c.col) != 0) {
      return "border entry " + std::to_string(l) + " is not 0";
    }
  }
  return {};
}

std::string reverse_violation(const TableMatrix& r, const SwitchingSite& site) {
  if (auto shape = site_shape_violation(r, site); !shape.empty()) return shape;
  const Cell pivot = site.positions[0];
  if (r(pivot.row, pivot.col) != 0) return "pivot entry is not 0";
  for (std::size_t l = 1; l < site.positions.size(); ++l) {
    const Cell c = site.positions[l];
    if (r(c.row, c.col) == site.D) return "diagonal entry " + std::to_string(l) + " equals D";
    if (r(c.row, pivot.col) != 1 || r(pivot.row, c.col) != 1) {
      return "border entry " + std::to_string(l) + " is not 1";
    }
  }
  return {};
}

TableMatrix apply_switching(const TableMatrix& q, const SwitchingSite& site) {
  if (auto why = forward_violation(q, site); !why.empty()) {
    throw TableError(ErrorKind::NotApplicable, why);
  }
  TableMatrix out = q;
  const Cell pivot = site.positions[0];
  out(pivot.row, pivot.col) = 0;
  for (std::size_t l = 1; l < site.positions.size(); ++l) {
    const Cell c = site.positions[l];
    out(c.row, pivot.col) = 1;
    out(pivot.row, c.col) = 1;
    out(c.row, c.col) -= 1;
  }
  return out;
}

TableMatrix apply_reverse_switching(const TableMatrix& r, const SwitchingSite& site) {
  if (auto why = reverse_violation(r, site); !why.empty()) {
    throw TableError(ErrorKind::NotApplicable, why);
  }
  TableMatrix out = r;
  const Cell pivot = site.positions[0];
  out(pivot.row, pivot.col) = site.D;
  for (std::size_t l = 1; l < site.positions.size(); ++l) {
    const Cell c = site.positions[l];
    out(c.row, pivot.col) = 0;
    out(pivot.row, c.col) = 0;
    out(c.row, c.col) += 1;
  }
  return out;
}

namespace {

// Backtracking over ordered diagonal cells once the pivot is fixed.
template <typename Accept>
void extend_sites(const TableMatrix& a, SwitchingSite& site, std::vector<bool>& row_used,
                  std::vector<bool>& col_used, Accept&& accept, SwitchingEnumeration& out) {
  if (site.positions.size() == static_cast<std::size_t>(site.D) + 1) {
    ++out.count;
    out.sites.push_back(site);
    return;
  }
  const Cell pivot = site.positions[0];
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (row_used[i]) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (col_used[j]) continue;
      if (!accept(i, j, pivot)) continue;
      row_used[i] = col_used[j] = true;
      site.positions.push_back({i, j});
      extend_sites(a, site, row_used, col_used, accept, out);
      site.positions.pop_back();
      row_used[i] = col_used[j] = false;
    }
  }
}

template <typename Pivot, typename Accept>
SwitchingEnumeration enumerate_sites(const TableMatrix& a, Degree D, Pivot&& is_pivot,
                                     Accept&& accept) {
  SwitchingEnumeration out;
  if (D < 2) return out;
  std::vector<bool> row_used(a.rows(), false), col_used(a.cols(), false);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!is_pivot(a(i, j))) continue;
      SwitchingSite site{D, {{i, j}}};
      row_used[i] = col_used[j] = true;
      extend_sites(a, site, row_used, col_used, accept, out);
      row_used[i] = col_used[j] = false;
    }
  }
  return out;
}

}  // namespace

SwitchingEnumeration enumerate_switchings(const TableMatrix& q, Degree D, bool restricted) {
  return enumerate_sites(
      q, D, [D](Degree v) { return v == D; },
      [&](std::size_t i, std::size_t j, Cell pivot) {
        const Degree v = q(i, j);
        if (restricted ? v != 1 : (v == 0 || v == D + 1)) return false;
        return q(i, pivot.col) == 0 && q(pivot.row, j) == 0;
      });
}

SwitchingEnumeration enumerate_reverse_switchings(const TableMatrix& r, Degree D) {
  return enumerate_sites(
      r, D, [](Degree v) { return v == 0; },
      [&](std::size_t i, std::size_t j, Cell pivot) {
        return r(i, j) != D && r(i, pivot.col) == 1 && r(pivot.row, j) == 1;
      });
}

SwitchingBounds switching_bounds(const TableMatrix& q, Degree D) {
  SwitchingBounds out;
  for (Degree v : q.data()) {
    if (v == D) ++out.J;
    if (v >= 1 && v <= D) ++out.K;
  }
  const auto rows = q.row_sums();
  const auto cols = q.col_sums();
  const Degree s = rows.empty() ? 0 : *std::max_element(rows.begin(), rows.end());
  const Degree t = cols.empty() ? 0 : *std::max_element(cols.begin(), cols.end());
  const std::int64_t slack = std::max<std::int64_t>(out.K - 2 * s * t, 0);
  out.lower = BigInt(out.J) * boost::multiprecision::pow(BigInt(slack), static_cast<unsigned>(D));
  out.upper_reverse = falling_power_sum(rows, static_cast<int>(D)) *
                      falling_power_sum(cols, static_cast<int>(D));
  return out;
}

// ----------------------------------------------------------- inequalities

double InequalityCheck::lhs() const { return std::exp(log_lhs); }
double InequalityCheck::rhs() const { return std::exp(log_rhs); }

InequalityCheck useful_inequality_check(double n, double q, std::int64_t k) {
  InequalityCheck out;
  if (k < 1 || n <= 0 || q <= 0) {
    throw TableError(ErrorKind::OutOfRange, "need k >= 1 and n, q > 0");
  }
  const double kq = static_cast<double>(k) * q;
  // Relative slack only absorbs rounding in k*q at the boundary n = kq.
  out.hypothesis_ok = n >= kq * (1.0 - 1e-12);
  long double log_lhs = 0.0L;
  bool positive = true;
  for (std::int64_t i = 0; i < k; ++i) {
    const long double factor = static_cast<long double>(n) - static_cast<long double>(i) * q;
    if (factor <= 0) {
      positive = false;
      break;
    }
    log_lhs += std::log(factor);
  }
  out.log_lhs = positive ? static_cast<double>(log_lhs) : -INFINITY;
  out.log_rhs = static_cast<double>(k) * (std::log(n) - 1.0);
  out.holds = positive && log_lhs >= static_cast<long double>(out.log_rhs);
  return out;
}

SummationBounds summation_bounds(const BoundSpec& spec) {
  const auto N = static_cast<std::size_t>(std::max<std::int64_t>(spec.N, 0));
  const bool lemma6 = spec.variant == BoundVariant::Lemma6;
  if (spec.N < 1 || spec.A.size() != N || spec.B.size() != N ||
      (lemma6 && (spec.delta.size() != N || spec.K < 0 ||
                  spec.gamma.size() != static_cast<std::size_t>(spec.K) + 1))) {
    throw TableError(ErrorKind::SpecShapeMismatch,
                     "A and B need N entries; lemma6 also needs N deltas and K+1 gammas");
  }

  SummationBounds out;
  out.terms.assign(N + 1, 0.0);
  out.terms[0] = 1.0;
  long double term = 1.0L, sum = 1.0L;
  for (std::size_t i = 1; i <= N; ++i) {
    const long double a = spec.A[i - 1];
    const long double shrink = 1.0L - static_cast<long double>(i - 1) * spec.B[i - 1];
    if (a == 0 || (!lemma6 && shrink == 0)) break;  // n_j = 0 from here on
    long double ratio = a / static_cast<long double>(i) * shrink;
    if (lemma6) ratio *= 1.0L + spec.delta[i - 1];
    term *= ratio;
    out.terms[i] = static_cast<double>(term);
    sum += term;
  }
  out.sigma = static_cast<double>(sum);

  const double A1 = *std::min_element(spec.A.begin(), spec.A.end());
  const double A2 = *std::max_element(spec.A.begin(), spec.A.end());
  const double e = std::numbers::e;
  const double Nd = static_cast<double>(N);
  bool ok = spec.N >= 2 && A1 >= 0;

  if (lemma6) {
    const double B1 = *std::min_element(spec.B.begin(), spec.B.end());
    const double B2 = *std::max_element(spec.B.begin(), spec.B.end());
    ok = ok && spec.K <= spec.N && spec.c > 2 * e;
    ok = ok && A2 * spec.c < static_cast<double>(spec.N - spec.K + 1);
    ok = ok && std::abs(B1) * Nd < 1 && std::abs(B2) * Nd < 1;
    double delta_sum = 0.0;
    for (std::size_t i = 1; i <= N && ok; ++i) {
      delta_sum += std::abs(spec.delta[i - 1]);
      double budget = 0.0;
      for (std::size_t j = 0; j < spec.gamma.size(); ++j) {
        if (spec.gamma[j] < 0) ok = false;
        budget += spec.gamma[j] * falling_factorial(static_cast<std::int64_t>(i), static_cast<int>(j))
                                      .convert_to<double>();
      }
      ok = ok && delta_sum <= budget && budget < 0.2;
    }
    double g1 = 0.0, g2 = 0.0;
    for (std::size_t j = 0; j < spec.gamma.size(); ++j) {
      g1 += spec.gamma[j] * std::pow(3 * A1, static_cast<double>(j));
      g2 += spec.gamma[j] * std::pow(3 * A2, static_cast<double>(j));
    }
    const double tail = 0.25 * std::pow(2 * e / spec.c, Nd);
    out.sigma1 = std::exp(A1 - 0.5 * A1 * A1 * B2 - 4 * g1) - tail;
    out.sigma2 = std::exp(A2 - 0.5 * A2 * A2 * B1 + 0.5 * A2 * A2 * A2 * B1 * B1 + 4 * g2) + tail;
  } else {
    double C1 = INFINITY, C2 = -INFINITY;
    for (std::size_t i = 0; i < N; ++i) {
      const double Ci = spec.A[i] * spec.B[i];
      C1 = std::min(C1, Ci);
      C2 = std::max(C2, Ci);
      if (1.0 - static_cast<double>(i) * spec.B[i] < 0) ok = false;
    }
    ok = ok && spec.c_hat > 0 && spec.c_hat < 1.0 / 3.0;
    ok = ok && A2 / Nd <= spec.c_hat && std::max(std::abs(C1), std::abs(C2)) <= spec.c_hat;
    const double tail = std::pow(2 * e * spec.c_hat, Nd);
    out.sigma1 = std::exp(A1 - 0.5 * A1 * C2) - tail;
    out.sigma2 = std::exp(A2 - 0.5 * A2 * C1 + 0.5 * A2 * C1 * C1) + tail;
  }
  out.hypotheses_ok = ok;
  return out;
}

}  // namespace tablecount
