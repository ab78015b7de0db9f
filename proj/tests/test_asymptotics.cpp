#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tablecount/asymptotics.hpp"
#include "tablecount/errors.hpp"
#include "tablecount/exact.hpp"
#include "tablecount/margins.hpp"

using namespace tablecount;

namespace {

MarginPair mp(std::vector<Degree> r, std::vector<Degree> c) { return validate_margins(r, c); }

MarginPair regular(std::size_t k, Degree d) {
  const std::vector<Degree> v(k, d);
  return validate_margins(v, v);
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const TableError& e) {
    return e.kind();
  }
  FAIL("expected a TableError");
  return ErrorKind::InvalidInput;
}

long double rel(long double a, long double b) {
  const long double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0 ? 0 : std::fabs(a - b) / scale;
}

// ln prod binom(n + s_i - 1, s_i) prod binom(m + t_j - 1, t_j) / binom(mn + S - 1, S), from exact integers
long double log_prefactor(const MarginPair& m) {
  const auto M = static_cast<std::int64_t>(m.m()), N = static_cast<std::int64_t>(m.n());
  long double out = -log_of(binomial(M * N + m.total() - 1, m.total()));
  for (Degree s : m.rows()) out += log_of(binomial(N + s - 1, s));
  for (Degree t : m.cols()) out += log_of(binomial(M + t - 1, t));
  return out;
}

long double exact_log(const MarginPair& m, const EntryAlphabet& a = EntryAlphabet::all()) {
  return log_of(count_exact(m, a).count);
}

}  // namespace

TEST_CASE("log factorial") {
  CHECK(log_factorial(0) == 0);
  CHECK(log_factorial(1) == 0);
  CHECK(rel(log_factorial(10), std::log(3628800.0L)) < 1e-15L);
  for (std::int64_t x : {2, 17, 100, 1000, 54321}) {
    CHECK(rel(log_factorial(x), oracle::log_factorial_sum(x)) < 1e-13L);
  }
  CHECK(rel(log_factorial(2000000), std::lgamma(2000001.0L)) < 1e-14L);
  CHECK(rel(log_of(factorial(300)), log_factorial(300)) < 1e-15L);
}

TEST_CASE("zero-one and main estimates on permutation margins") {
  for (std::size_t k : {1, 2, 5, 12}) {
    const auto m = regular(k, 1);
    const long double lf = log_factorial(static_cast<std::int64_t>(k));
    CHECK(std::fabs(estimate_01(m).log_value - lf) < 1e-12L);
    CHECK(std::fabs(estimate_main(m).log_value - lf) < 1e-12L);
  }
  CHECK(std::fabs(estimate_01(mp({3}, {1, 1, 1})).log_value) < 1e-15L);
  CHECK(kind_of([] { estimate_main(mp({0}, {0})); }) == ErrorKind::ZeroTotal);
  CHECK(kind_of([] { estimate_01(mp({0}, {0})); }) == ErrorKind::ZeroTotal);
}

TEST_CASE("zero-one estimate tracks the exact count") {
  // S2T2/S^2 scale errors: the estimate improves as the family grows
  const double e8 = std::fabs(static_cast<double>(estimate_01(regular(8, 2)).log_value -
                                                  exact_log(regular(8, 2), EntryAlphabet::zero_one())));
  const double e16 = std::fabs(static_cast<double>(estimate_01(regular(16, 2)).log_value -
                                                   exact_log(regular(16, 2), EntryAlphabet::zero_one())));
  CHECK(e16 < e8);
  CHECK(e8 < 0.05);
}

TEST_CASE("main minus zero-one identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 30, 6);
    const auto m = validate_margins(r, c);
    if (m.total() == 0) continue;
    const auto p2 = power_sums(m, 2);
    const Rational S2T2(p2.rows * p2.cols);
    const Rational S(m.total());
    const long double expected = static_cast<long double>(to_double(S2T2 / (S * S) + S2T2 / (S * S * S)));
    const long double got = estimate_main(m).log_value - estimate_01(m).log_value;
    CHECK(std::fabs(got - expected) <= 1e-12L * std::max(1.0L, std::fabs(expected)));
    CHECK(main_minus_01(m) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));
  }
}

TEST_CASE("semiregular estimate") {
  CHECK(std::fabs(estimate_semiregular(SemiregularSpec::make(4, 1, 4, 1)).log_value - std::log(24.0L)) < 1e-14L);
  const auto spec = SemiregularSpec::make(8, 2, 8, 2);
  CHECK(rel(estimate_semiregular(spec).log_value, estimate_main(spec.margins()).log_value) < 1e-9L);
  // leading term (s-1)(t-1)/2 = 1/2
  const long double base = log_factorial(16) - 16 * std::log(2.0L);
  const long double tail = estimate_semiregular(spec).log_value - base;
  CHECK(std::fabs(tail - (0.5L - (1.0L * 8 - 4 - 10) / (12 * 16))) < 1e-12L);

  const auto rect = SemiregularSpec::make(6, 2, 4, 3);
  CHECK(rect.lambda() == Rational(1, 2));
  CHECK(rel(estimate_semiregular(rect).log_value, estimate_main(rect.margins()).log_value) < 1e-9L);
  CHECK(kind_of([] { SemiregularSpec::make(3, 2, 4, 2); }) == ErrorKind::InconsistentSemiregular);
  CHECK(kind_of([] { SemiregularSpec::from_margins(mp({2, 1}, {2, 1})); }) == ErrorKind::InconsistentSemiregular);
  CHECK(SemiregularSpec::from_margins(regular(5, 3)).s() == 3);
}

TEST_CASE("moment form") {
  for (std::size_t k : {2, 4, 7}) {
    for (Degree d : {1, 2, 3}) {
      const auto m = regular(k, d);
      const long double S = static_cast<long double>(m.total()), n = static_cast<long double>(k);
      const long double expected = 0.5L + 3 / (4 * S) - 3 / (4 * n) - 3 / (4 * n) + 1 / (12 * S);
      CHECK(std::fabs(estimate_moment_form(m).log_value - log_prefactor(m) - expected) < 1e-12L);
    }
  }
  const auto m = regular(8, 2);
  const long double gap = std::fabs(estimate_moment_form(m).log_value - estimate_main(m).log_value);
  CHECK(gap <= 4 * estimate_main(m).error_order);
  // both forms approach the exact count
  CHECK(std::fabs(estimate_moment_form(m).log_value - exact_log(m)) < 0.1L);
  CHECK(std::fabs(estimate_moment_form(regular(2, 1)).log_value - std::log(2.0L)) < 0.5L);
}

TEST_CASE("near-regular estimate and decomposition") {
  for (std::size_t k : {3, 8}) {
    const auto m = regular(k, 2);
    CHECK(std::fabs(estimate_near_regular(m).log_value - log_prefactor(m) - 0.5L) < 1e-12L);
    CHECK(estimate_near_regular(m).applicability.near_regular);
  }
  const double e16 = std::fabs(static_cast<double>(estimate_near_regular(regular(8, 2)).log_value - exact_log(regular(8, 2))));
  const double e32 = std::fabs(static_cast<double>(estimate_near_regular(regular(16, 2)).log_value - exact_log(regular(16, 2))));
  const double main16 = std::fabs(static_cast<double>(estimate_main(regular(8, 2)).log_value - exact_log(regular(8, 2))));
  CHECK(e16 <= 0.25);
  CHECK(e32 < e16);
  CHECK(main16 < e16);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 8, 6);
    const auto m = validate_margins(r, c);
    if (m.total() == 0) continue;
    const auto d = decompose_mp1p2e(m);
    CHECK(d.sum() == estimate_near_regular(m).log_value);
    CHECK(d.log_P1 <= 1e-15L);
    CHECK(d.log_P2 <= 1e-15L);
  }

  const auto one = decompose_mp1p2e(mp({5}, {5}));
  CHECK(std::fabs(one.log_M) < 1e-15L);
  CHECK(std::fabs(one.log_P1) < 1e-15L);
  CHECK(std::fabs(one.log_P2) < 1e-15L);
  CHECK(std::fabs(one.log_E - 0.5L) < 1e-15L);

  // probability that a random composition of 2 into a 2x2 grid has row sums (1,1)
  int hits = 0, all = 0;
  oracle::each_composition(4, 2, [&](const oracle::Vec& v) {
    ++all;
    hits += (v[0] + v[1] == 1);
  });
  const auto d = decompose_mp1p2e(mp({1, 1}, {1, 1}));
  CHECK(std::fabs(std::exp(d.log_P1) - static_cast<long double>(hits) / all) < 1e-15L);
  CHECK(hits * 5 == all * 2);
}

TEST_CASE("Canfield-McKay estimate and residual exponent") {
  const auto spec = SemiregularSpec::make(5, 2, 5, 2);
  for (long double d : {-1.5L, 0.3L, 2.0L}) {
    CHECK(std::fabs(cm_estimate(spec, d).log_value - cm_estimate(spec, 0).log_value - d / 10) < 1e-14L);
  }
  const auto s20 = SemiregularSpec::make(20, 2, 20, 2);
  const double lambda = 0.1;
  const double lhs = (1 + 2 * lambda) * (1 + 2 * lambda) / (4 * lambda * (1 + lambda)) * (1 + 5.0 / 6 + 5.0 / 6);
  CHECK(s20.hypothesis_lhs() == doctest::Approx(lhs));
  CHECK(s20.hypothesis_holds(0.49) == (lhs <= 0.49 * std::log(20.0)));
  CHECK_FALSE(cm_estimate(s20).applicability.hypothesis_eq1);
  CHECK(std::isfinite(static_cast<double>(cm_estimate(SemiregularSpec::make(2, 1, 2, 1)).log_value)));

  CHECK(delta_from_count(spec, 0).predicted_limit == doctest::Approx(5.0 / 6.0));
  const auto perm = SemiregularSpec::make(6, 1, 6, 1);
  const auto ext = delta_from_count(perm, log_factorial(6));
  CHECK(std::fabs(ext.delta - 12 * (log_factorial(6) - cm_estimate(perm).log_value)) < 1e-12L);
  // round trip: plugging the extracted delta back reproduces the count
  const long double lm = exact_log(spec.margins());
  const auto back = delta_from_count(spec, lm);
  CHECK(std::fabs(cm_estimate(spec, back.delta).log_value - lm) < 1e-12L);
}

TEST_CASE("restricted alphabet estimate") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 12, 5);
    const auto m = validate_margins(r, c);
    if (m.total() == 0) continue;
    CHECK(estimate_restricted(m, EntryAlphabet::all()).log_value == estimate_main(m).log_value);
    CHECK(estimate_restricted(m, EntryAlphabet::zero_to_three()).log_value == estimate_main(m).log_value);
    CHECK(estimate_restricted(m, EntryAlphabet::zero_one()).log_value == estimate_01(m).log_value);
    CHECK(estimate_with_indicators(m, 1, 1).log_value == estimate_main(m).log_value);
  }
  CHECK(kind_of([] { estimate_restricted(regular(3, 2), EntryAlphabet::finite({0, 2})); }) ==
        ErrorKind::AlphabetMissingZeroOne);

  const auto m = regular(8, 2);
  const auto j = EntryAlphabet::finite({0, 1, 3});
  const long double lj = exact_log(m, j);
  CHECK(std::fabs(estimate_restricted(m, j).log_value - lj) <
        std::fabs(estimate_with_indicators(m, 1, 1).log_value - lj));
}

TEST_CASE("estimators are invariant under permutation and transposition") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 9, 5);
    const auto m = validate_margins(r, c);
    if (m.total() < 2) continue;
    auto r2 = r, c2 = c;
    std::shuffle(r2.begin(), r2.end(), rng);
    std::shuffle(c2.begin(), c2.end(), rng);
    const auto p = validate_margins(r2, c2);
    const auto t = m.transposed();
    for (auto fn : {estimate_main, estimate_01, estimate_moment_form, estimate_near_regular}) {
      const long double base = fn(m).log_value;
      CHECK(rel(fn(p).log_value, base) < 1e-12L);
      CHECK(rel(fn(t).log_value, base) < 1e-12L);
    }
  }
}

TEST_CASE("error order and applicability flags") {
  CHECK(error_order(regular(8, 2)) == doctest::Approx(64.0 / 256));
  const auto e = estimate_main(regular(8, 2));
  CHECK(e.applicability.semiregular);
  CHECK(e.applicability.sparse == (4 <= std::pow(16.0, 2.0 / 3.0)));
  CHECK_FALSE(estimate_main(mp({3, 1}, {2, 2})).applicability.semiregular);
  CHECK(e.log10_value() == doctest::Approx(static_cast<double>(e.log_value) / std::log(10.0)));
}
