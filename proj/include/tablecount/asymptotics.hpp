#pragma once

#include <cstdint>
#include <string_view>

#include "tablecount/exact.hpp"
#include "tablecount/margins.hpp"
#include "tablecount/numeric.hpp"

namespace tablecount {

enum class FormulaId {
  Main,
  ZeroOne,
  Semiregular,
  MomentForm,
  NearRegular,
  Restricted,
  CanfieldMcKay,
};

std::string_view to_string(FormulaId id);

struct Applicability {
  bool sparse = false;        // s*t <= S^{2/3}
  bool near_regular = false;  // (1 + mu2)(1 + nu2) <= S^{1/3}
  bool semiregular = false;   // all row sums equal, all column sums equal
  bool hypothesis_eq1 = false;  // Canfield-McKay range hypothesis (cm only)
};

/// Natural-log estimate with its uniform relative-error order s^3 t^3 / S^2.
struct LogEstimate {
  long double log_value = 0.0;
  double error_order = 0.0;
  FormulaId formula = FormulaId::Main;
  Applicability applicability;

  double log10_value() const;
};

/// m rows of sum s and n columns of sum t, with m*s = n*t.
class SemiregularSpec {
 public:
  /// InconsistentSemiregular unless all arguments are positive and ms = nt.
  static SemiregularSpec make(std::int64_t m, std::int64_t s, std::int64_t n, std::int64_t t);
  /// InconsistentSemiregular unless the margins are semiregular.
  static SemiregularSpec from_margins(const MarginPair& margins);

  std::int64_t m() const noexcept { return m_; }
  std::int64_t n() const noexcept { return n_; }
  std::int64_t s() const noexcept { return s_; }
  std::int64_t t() const noexcept { return t_; }
  std::int64_t total() const noexcept { return m_ * s_; }
  Rational lambda() const { return Rational(BigInt(s_), BigInt(n_)); }
  MarginPair margins() const;

  /// Left side of the range hypothesis
  /// (1+2l)^2/(4l(1+l)) * (1 + 5m/6n + 5n/6m).
  double hypothesis_lhs() const;
  bool hypothesis_holds(double a) const;

 private:
  SemiregularSpec(std::int64_t m, std::int64_t s, std::int64_t n, std::int64_t t)
      : m_(m), s_(s), n_(n), t_(t) {}
  std::int64_t m_, s_, n_, t_;
};

LogEstimate estimate_01(const MarginPair& margins);
LogEstimate estimate_main(const MarginPair& margins);
LogEstimate estimate_semiregular(const SemiregularSpec& spec);
LogEstimate estimate_moment_form(const MarginPair& margins);
LogEstimate estimate_near_regular(const MarginPair& margins);
/// AlphabetMissingZeroOne unless 0 and 1 are allowed.
LogEstimate estimate_restricted(const MarginPair& margins, const EntryAlphabet& alphabet);

/// The restricted-entry exponent with explicit indicators, for (chi2, chi3)
/// in {0,1}^2. (1,1) is the main formula, (0,0) the 0-1 formula.
LogEstimate estimate_with_indicators(const MarginPair& margins, int chi2, int chi3);

/// S2T2/S^2 + S2T2/S^3: the gap between the main and 0-1 estimates.
long double main_minus_01(const MarginPair& margins);

/// M(s,t) = M * P1 * P2 * E in log space.
struct Decomposition {
  long double log_M = 0.0;
  long double log_P1 = 0.0;
  long double log_P2 = 0.0;
  long double log_E = 0.0;

  long double sum() const { return log_M + log_P1 + log_P2 + log_E; }
};

Decomposition decompose_mp1p2e(const MarginPair& margins);

/// Canfield-McKay semiregular formula with the residual exponent supplied.
/// `a` is the constant in the range hypothesis, reported as a flag.
LogEstimate cm_estimate(const SemiregularSpec& spec, long double delta = 0.0, double a = 0.49);

struct DeltaExtraction {
  long double delta = 0.0;
  double predicted_limit = 0.0;  // 5(s+t)/(6st)
};

/// Solves the Canfield-McKay formula for the residual exponent given a true
/// log count.
DeltaExtraction delta_from_count(const SemiregularSpec& spec, long double log_count);

/// Uniform relative-error order s^3 t^3 / S^2.
double error_order(const MarginPair& margins);

}  // namespace tablecount
