#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tablecount/numeric.hpp"

namespace tablecount {

using Degree = std::int64_t;

/// Row sums s_1..s_m and column sums t_1..t_n with a shared total S.
/// Only constructible through validate_margins().
class MarginPair {
 public:
  const std::vector<Degree>& rows() const noexcept { return rows_; }
  const std::vector<Degree>& cols() const noexcept { return cols_; }
  Degree total() const noexcept { return total_; }
  std::size_t m() const noexcept { return rows_.size(); }
  std::size_t n() const noexcept { return cols_.size(); }

  /// Swaps the roles of rows and columns.
  MarginPair transposed() const { return MarginPair(cols_, rows_, total_); }

  bool operator==(const MarginPair&) const = default;

 private:
  friend MarginPair validate_margins(std::span<const Degree>, std::span<const Degree>);
  MarginPair(std::vector<Degree> rows, std::vector<Degree> cols, Degree total)
      : rows_(std::move(rows)), cols_(std::move(cols)), total_(total) {}

  std::vector<Degree> rows_;
  std::vector<Degree> cols_;
  Degree total_ = 0;
};

/// Throws SumMismatch, NegativeEntry or EmptyMargin.
MarginPair validate_margins(std::span<const Degree> rows, std::span<const Degree> cols);

/// Sum of [x]_k over a degree sequence, for any k >= 0.
BigInt falling_power_sum(std::span<const Degree> degrees, int k);

struct PowerSums {
  BigInt rows;  // S_k
  BigInt cols;  // T_k
};

/// (S_k, T_k) for k in {1,2,3,4}; UnsupportedOrder otherwise.
PowerSums power_sums(const MarginPair& margins, int k);

struct MomentSummary {
  Degree s_max = 0;
  Degree t_max = 0;
  BigInt S2, S3, T2, T3;
  Rational mu2, mu3, nu2, nu3;
  double sparsity_ratio = 0.0;  // s_max * t_max / S^{2/3}
};

/// Scaled central moments mn/(S(mn+S)) * sum (s_i - S/m)^k, and the
/// column analogues. ZeroTotal when S = 0.
MomentSummary central_moments(const MarginPair& margins);

struct RegimeReport {
  bool substantial = false;
  std::int64_t N2 = 0;
  std::int64_t N3 = 0;
  Degree delta_cap = 0;  // largest possible entry, min(s_max, t_max)
  double sparsity_ratio = 0.0;
  bool sparse = false;   // s_max * t_max <= S^{2/3}
};

/// High-probability caps N2/N3 on the number of 2s and 3s and the
/// substantial-pair test. Natural log throughout. ZeroTotal when S < 2.
RegimeReport classify_regime(const MarginPair& margins);

}  // namespace tablecount
