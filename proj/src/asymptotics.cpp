#include "tablecount/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tablecount/errors.hpp"

namespace tablecount {

std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::Main: return "main";
    case FormulaId::ZeroOne: return "01";
    case FormulaId::Semiregular: return "semiregular";
    case FormulaId::MomentForm: return "moments";
    case FormulaId::NearRegular: return "nearreg";
    case FormulaId::Restricted: return "restricted";
    case FormulaId::CanfieldMcKay: return "cm";
  }
  return "unknown";
}

double LogEstimate::log10_value() const {
  return static_cast<double>(log_value / std::log(10.0L));
}

namespace {

void require_positive_total(const MarginPair& margins) {
  if (margins.total() < 1) throw TableError(ErrorKind::ZeroTotal, "estimate needs S >= 1");
}

long double to_ld(const Rational& value) { return value.convert_to<long double>(); }

bool all_equal(const std::vector<Degree>& v) {
  return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
}

Applicability applicability_for(const MarginPair& margins, const MomentSummary& moments) {
  Applicability flags;
  const double S = static_cast<double>(margins.total());
  flags.sparse = moments.sparsity_ratio <= 1.0;
  flags.near_regular =
      (1.0 + to_double(moments.mu2)) * (1.0 + to_double(moments.nu2)) <= std::cbrt(S);
  flags.semiregular = all_equal(margins.rows()) && all_equal(margins.cols());
  return flags;
}

/// ln S! - sum ln s_i! - sum ln t_j!
long double log_pairing_prefactor(const MarginPair& margins) {
  long double value = log_factorial(margins.total());
  for (Degree s : margins.rows()) value -= log_factorial(s);
  for (Degree t : margins.cols()) value -= log_factorial(t);
  return value;
}

/// prod binom(n+s_i-1, s_i) * prod binom(m+t_j-1, t_j) / binom(mn+S-1, S), in logs.
struct BinomialPrefactor {
  long double rows = 0.0;
  long double cols = 0.0;
  long double all = 0.0;
};

BinomialPrefactor binomial_prefactor(const MarginPair& margins) {
  const auto m = static_cast<std::int64_t>(margins.m());
  const auto n = static_cast<std::int64_t>(margins.n());
  const Degree S = margins.total();
  BinomialPrefactor out;
  for (Degree s : margins.rows()) out.rows += log_binomial(n + s - 1, s);
  for (Degree t : margins.cols()) out.cols += log_binomial(m + t - 1, t);
  out.all = log_binomial(m * n + S - 1, S);
  return out;
}

/// Exponent of the restricted-entry formula; (1,1) gives the main theorem's
/// expanded form and (0,0) the 0-1 formula.
Rational indicator_exponent(const MomentSummary& mo, Degree total, int chi2, int chi3) {
  const BigInt S(total);
  const BigInt S2 = S * S, S3 = S2 * S, S4 = S3 * S, S5 = S4 * S;
  const BigInt s2t2 = mo.S2 * mo.T2;
  const BigInt s3t3 = mo.S3 * mo.T3;
  const Rational c2 = Rational(2 * chi2 - 1, 2);
  const Rational c3 = Rational(3 * (chi3 - chi2) + 1, 3);

  Rational e = c2 * Rational(s2t2, S2);
  e += c2 * Rational(s2t2, S3);
  e += c3 * Rational(s3t3, S3);
  e -= Rational(s2t2 * (mo.S2 + mo.T2), 4 * S4);
  e -= Rational(mo.S2 * mo.S2 * mo.T3 + mo.S3 * mo.T2 * mo.T2, 2 * S4);
  e += Rational(s2t2 * s2t2, 2 * S5);
  return e;
}

}  // namespace

double error_order(const MarginPair& margins) {
  if (margins.total() == 0) return 0.0;
  const double s = static_cast<double>(*std::max_element(margins.rows().begin(), margins.rows().end()));
  const double t = static_cast<double>(*std::max_element(margins.cols().begin(), margins.cols().end()));
  const double S = static_cast<double>(margins.total());
  return s * s * s * t * t * t / (S * S);
}

LogEstimate estimate_with_indicators(const MarginPair& margins, int chi2, int chi3) {
  require_positive_total(margins);
  if (chi2 < 0 || chi2 > 1 || chi3 < 0 || chi3 > 1) {
    throw TableError(ErrorKind::InvalidInput, "indicators must be 0 or 1");
  }
  const MomentSummary moments = central_moments(margins);
  LogEstimate out;
  out.log_value = log_pairing_prefactor(margins) +
                  to_ld(indicator_exponent(moments, margins.total(), chi2, chi3));
  out.error_order = error_order(margins);
  out.formula = FormulaId::Restricted;
  out.applicability = applicability_for(margins, moments);
  return out;
}

LogEstimate estimate_01(const MarginPair& margins) {
  LogEstimate out = estimate_with_indicators(margins, 0, 0);
  out.formula = FormulaId::ZeroOne;
  return out;
}

LogEstimate estimate_main(const MarginPair& margins) {
  LogEstimate out = estimate_with_indicators(margins, 1, 1);
  out.formula = FormulaId::Main;
  return out;
}

LogEstimate estimate_restricted(const MarginPair& margins, const EntryAlphabet& alphabet) {
  if (!alphabet.has_zero_and_one()) {
    throw TableError(ErrorKind::AlphabetMissingZeroOne, "allowed entries must include 0 and 1");
  }
  return estimate_with_indicators(margins, alphabet.chi2(), alphabet.chi3());
}

long double main_minus_01(const MarginPair& margins) {
  require_positive_total(margins);
  const BigInt S(margins.total());
  const auto sums = power_sums(margins, 2);
  const BigInt s2t2 = sums.rows * sums.cols;
  return to_ld(Rational(s2t2, S * S) + Rational(s2t2, S * S * S));
}

// -------------------------------------------------------------- semiregular

SemiregularSpec SemiregularSpec::make(std::int64_t m, std::int64_t s, std::int64_t n,
                                      std::int64_t t) {
  if (m < 1 || n < 1 || s < 1 || t < 1) {
    throw TableError(ErrorKind::InconsistentSemiregular, "m, s, n, t must be positive");
  }
  if (m * s != n * t) {
    throw TableError(ErrorKind::InconsistentSemiregular,
                     "m*s = " + std::to_string(m * s) + " but n*t = " + std::to_string(n * t));
  }
  return SemiregularSpec(m, s, n, t);
}

SemiregularSpec SemiregularSpec::from_margins(const MarginPair& margins) {
  if (!all_equal(margins.rows()) || !all_equal(margins.cols())) {
    throw TableError(ErrorKind::InconsistentSemiregular, "margins are not semiregular");
  }
  return make(static_cast<std::int64_t>(margins.m()), margins.rows().front(),
              static_cast<std::int64_t>(margins.n()), margins.cols().front());
}

MarginPair SemiregularSpec::margins() const {
  const std::vector<Degree> rows(static_cast<std::size_t>(m_), s_);
  const std::vector<Degree> cols(static_cast<std::size_t>(n_), t_);
  return validate_margins(rows, cols);
}

double SemiregularSpec::hypothesis_lhs() const {
  const double lambda = static_cast<double>(s_) / static_cast<double>(n_);
  const double m = static_cast<double>(m_);
  const double n = static_cast<double>(n_);
  const double shape = (1 + 2 * lambda) * (1 + 2 * lambda) / (4 * lambda * (1 + lambda));
  return shape * (1 + 5 * m / (6 * n) + 5 * n / (6 * m));
}

bool SemiregularSpec::hypothesis_holds(double a) const {
  return hypothesis_lhs() <= a * std::log(static_cast<double>(n_));
}

LogEstimate estimate_semiregular(const SemiregularSpec& spec) {
  const std::int64_t m = spec.m(), n = spec.n(), s = spec.s(), t = spec.t();
  const std::int64_t S = spec.total();
  const Rational shift =
      Rational((s - 1) * (t - 1), 2) -
      Rational(BigInt((s - 1) * (t - 1)) * (2 * s * t - s - t - 10), BigInt(12 * S));

  const MarginPair margins = spec.margins();
  LogEstimate out;
  out.log_value = log_factorial(S) - static_cast<long double>(m) * log_factorial(s) -
                  static_cast<long double>(n) * log_factorial(t) + to_ld(shift);
  out.error_order = error_order(margins);
  out.formula = FormulaId::Semiregular;
  out.applicability = applicability_for(margins, central_moments(margins));
  return out;
}

// ------------------------------------------------------- moment formulations

LogEstimate estimate_moment_form(const MarginPair& margins) {
  require_positive_total(margins);
  const MomentSummary mo = central_moments(margins);
  const BigInt S(margins.total());
  const BigInt m(static_cast<std::int64_t>(margins.m()));
  const BigInt n(static_cast<std::int64_t>(margins.n()));
  const Rational one(1);
  const Rational mu2 = mo.mu2, nu2 = mo.nu2;
  const Rational mn = mu2 * nu2;

  Rational e = (one - mu2) * (one - nu2) * (Rational(1, 2) + (3 - mn) / Rational(4 * S));
  e -= (one - mu2) * (3 + mu2 - 2 * mn) / Rational(4 * n);
  e -= (one - nu2) * (3 + nu2 - 2 * mn) / Rational(4 * m);
  e += (one - 3 * mu2 * mu2 + 2 * mo.mu3) * (one - 3 * nu2 * nu2 + 2 * mo.nu3) / Rational(12 * S);

  const BinomialPrefactor pre = binomial_prefactor(margins);
  LogEstimate out;
  out.log_value = pre.rows + pre.cols - pre.all + to_ld(e);
  out.error_order = error_order(margins);
  out.formula = FormulaId::MomentForm;
  out.applicability = applicability_for(margins, mo);
  return out;
}

Decomposition decompose_mp1p2e(const MarginPair& margins) {
  require_positive_total(margins);
  const MomentSummary mo = central_moments(margins);
  const BinomialPrefactor pre = binomial_prefactor(margins);
  Decomposition d;
  d.log_M = pre.all;
  d.log_P1 = pre.rows - pre.all;
  d.log_P2 = pre.cols - pre.all;
  d.log_E = to_ld(Rational(1, 2) * (1 - mo.mu2) * (1 - mo.nu2));
  return d;
}

LogEstimate estimate_near_regular(const MarginPair& margins) {
  const Decomposition d = decompose_mp1p2e(margins);
  LogEstimate out;
  out.log_value = d.sum();
  out.error_order = error_order(margins);
  out.formula = FormulaId::NearRegular;
  out.applicability = applicability_for(margins, central_moments(margins));
  return out;
}

// ------------------------------------------------------------ Canfield-McKay

LogEstimate cm_estimate(const SemiregularSpec& spec, long double delta, double a) {
  const std::int64_t m = spec.m(), n = spec.n(), s = spec.s(), t = spec.t();
  const std::int64_t cells_total = m * s;  // lambda * m * n
  const long double M = static_cast<long double>(m);
  const long double N = static_cast<long double>(n);

  LogEstimate out;
  out.log_value = M * log_binomial(n + s - 1, s) + N * log_binomial(m + t - 1, t) -
                  log_binomial(m * n + cells_total - 1, cells_total) +
                  (M - 1) / 2 * std::log((M + 1) / M) + (N - 1) / 2 * std::log((N + 1) / N) -
                  0.5L + delta / (M + N);
  const MarginPair margins = spec.margins();
  out.error_order = error_order(margins);
  out.formula = FormulaId::CanfieldMcKay;
  out.applicability = applicability_for(margins, central_moments(margins));
  out.applicability.hypothesis_eq1 = spec.hypothesis_holds(a);
  return out;
}

DeltaExtraction delta_from_count(const SemiregularSpec& spec, long double log_count) {
  DeltaExtraction out;
  const long double base = cm_estimate(spec, 0.0L).log_value;
  out.delta = static_cast<long double>(spec.m() + spec.n()) * (log_count - base);
  const double s = static_cast<double>(spec.s());
  const double t = static_cast<double>(spec.t());
  out.predicted_limit = 5.0 * (s + t) / (6.0 * s * t);
  return out;
}

}  // namespace tablecount
