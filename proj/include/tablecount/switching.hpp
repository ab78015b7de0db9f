#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tablecount/margins.hpp"
#include "tablecount/numeric.hpp"
#include "tablecount/table_matrix.hpp"

namespace tablecount {

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;
  bool operator==(const Cell&) const = default;
  auto operator<=>(const Cell&) const = default;
};

/// (i_0,j_0), ..., (i_D,j_D): the pivot cell holding D followed by D
/// diagonal cells, all rows and columns distinct.
struct SwitchingSite {
  Degree D = 2;
  std::vector<Cell> positions;

  bool operator==(const SwitchingSite&) const = default;
  auto operator<=>(const SwitchingSite&) const = default;
};

/// Empty string when the D-switching applies to q, otherwise the first
/// failed condition.
std::string forward_violation(const TableMatrix& q, const SwitchingSite& site);
std::string reverse_violation(const TableMatrix& r, const SwitchingSite& site);

/// D at the pivot and zeros on its border become 0 and 1s; each diagonal
/// q_l becomes q_l - 1. NotApplicable on a failed precondition.
TableMatrix apply_switching(const TableMatrix& q, const SwitchingSite& site);
/// Inverse of apply_switching. NotApplicable on a failed precondition.
TableMatrix apply_reverse_switching(const TableMatrix& r, const SwitchingSite& site);

struct SwitchingEnumeration {
  std::int64_t count = 0;
  std::vector<SwitchingSite> sites;
};

/// All ordered forward sites. `restricted` additionally requires q_l = 1.
SwitchingEnumeration enumerate_switchings(const TableMatrix& q, Degree D, bool restricted = false);
/// All ordered reverse sites.
SwitchingEnumeration enumerate_reverse_switchings(const TableMatrix& r, Degree D);

struct SwitchingBounds {
  BigInt lower;           // J * max(K - 2st, 0)^D
  BigInt upper_reverse;   // S_D * T_D
  std::int64_t J = 0;     // entries equal to D
  std::int64_t K = 0;     // nonzero entries not greater than D
};

SwitchingBounds switching_bounds(const TableMatrix& q, Degree D);

struct InequalityCheck {
  double log_lhs = 0.0;  // sum ln(n - i q), i < k
  double log_rhs = 0.0;  // k ln(n / e)
  bool hypothesis_ok = false;  // n >= k q
  bool holds = false;

  double lhs() const;
  double rhs() const;
};

/// n(n-q)...(n-(k-1)q) >= (n/e)^k for n >= kq. Compared in log space; when
/// the hypothesis fails both sides are still returned.
InequalityCheck useful_inequality_check(double n, double q, std::int64_t k);

enum class BoundVariant { Lemma6, Lemma7 };

/// Inputs to the two summation lemmas bracketing sum n_i for
/// n_i / n_{i-1} = (A(i)/i)(1 - (i-1)B(i))(1 + delta_i).
/// Lemma6 uses delta, gamma, K and c; Lemma7 uses c_hat and no delta.
struct BoundSpec {
  BoundVariant variant = BoundVariant::Lemma6;
  std::int64_t N = 2;
  std::int64_t K = 0;
  std::vector<double> A;      // A(1..N)
  std::vector<double> B;      // B(1..N)
  std::vector<double> delta;  // delta_1..delta_N
  std::vector<double> gamma;  // gamma_0..gamma_K
  double c = 6.0;
  double c_hat = 0.25;
};

struct SummationBounds {
  double sigma = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  bool hypotheses_ok = false;
  std::vector<double> terms;  // n_0..n_N
};

/// SpecShapeMismatch when array lengths do not fit N and K.
SummationBounds summation_bounds(const BoundSpec& spec);

}  // namespace tablecount
