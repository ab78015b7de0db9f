#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tablecount/errors.hpp"
#include "tablecount/margins.hpp"

using namespace tablecount;

namespace {

MarginPair mp(std::vector<Degree> r, std::vector<Degree> c) { return validate_margins(r, c); }

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const TableError& e) {
    return e.kind();
  }
  FAIL("expected a TableError");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("validate_margins") {
  const auto a = mp({2, 2}, {2, 2});
  CHECK(a.total() == 4);
  CHECK(a.m() == 2);
  CHECK(mp({0}, {0}).total() == 0);
  CHECK(kind_of([] { mp({1, 2}, {2, 2}); }) == ErrorKind::SumMismatch);
  CHECK(kind_of([] { mp({-1, 3}, {2}); }) == ErrorKind::NegativeEntry);
  CHECK(kind_of([] { mp({}, {}); }) == ErrorKind::EmptyMargin);
  CHECK(a.transposed() == mp({2, 2}, {2, 2}));
  CHECK(mp({3, 1}, {2, 2}).transposed().rows() == std::vector<Degree>{2, 2});
}

TEST_CASE("falling factorial") {
  CHECK(falling_factorial(5, 0) == 1);
  CHECK(falling_factorial(2, 2) == 2);
  CHECK(falling_factorial(3, 4) == 0);
  CHECK(falling_factorial(30, 30) == factorial(30));
  CHECK(falling_factorial(-2, 2) == 6);
}

TEST_CASE("power sums") {
  auto p = power_sums(mp({2, 2}, {2, 2}), 2);
  CHECK(p.rows == 4);
  CHECK(p.cols == 4);
  p = power_sums(mp({3}, {1, 1, 1}), 2);
  CHECK(p.rows == 6);
  CHECK(p.cols == 0);
  p = power_sums(mp({2, 1}, {2, 1}), 1);
  CHECK(p.rows == 3);
  CHECK(p.cols == 3);
  CHECK(kind_of([] { power_sums(mp({1}, {1}), 0); }) == ErrorKind::UnsupportedOrder);
  CHECK(kind_of([] { power_sums(mp({1}, {1}), 5); }) == ErrorKind::UnsupportedOrder);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 6, 9);
    const auto m = validate_margins(r, c);
    const auto p1 = power_sums(m, 1);
    CHECK(p1.rows == m.total());
    CHECK(p1.cols == m.total());
  }
}

TEST_CASE("central moments") {
  auto s = central_moments(mp({2, 2}, {2, 2}));
  CHECK(s.mu2 == 0);
  CHECK(s.nu2 == 0);
  CHECK(s.mu3 == 0);
  s = central_moments(mp({2, 0}, {1, 1}));
  CHECK(s.mu2 == Rational(2, 3));
  CHECK(central_moments(mp({1, 1}, {2})).nu2 == 0);
  CHECK(kind_of([] { central_moments(mp({0}, {0})); }) == ErrorKind::ZeroTotal);

  s = central_moments(mp({3, 1, 1}, {4, 1}));
  CHECK(s.s_max == 3);
  CHECK(s.t_max == 4);
  CHECK(s.S2 == 6);
  CHECK(s.S3 == 6);
  CHECK(s.T2 == 12);
  CHECK(s.T3 == 24);
  CHECK(s.sparsity_ratio == doctest::Approx(12.0 / std::pow(5.0, 2.0 / 3.0)));
}

TEST_CASE("central moments against direct formula and bounds") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 7, 12);
    const auto m = validate_margins(r, c);
    if (m.total() == 0) continue;
    const auto s = central_moments(m);
    const auto M = static_cast<std::int64_t>(m.m()), N = static_cast<std::int64_t>(m.n());
    CHECK(s.mu2 == oracle::scaled_moment(r, M, N, m.total(), 2));
    CHECK(s.mu3 == oracle::scaled_moment(r, M, N, m.total(), 3));
    CHECK(s.nu2 == oracle::scaled_moment(c, M, N, m.total(), 2));
    CHECK(s.nu3 == oracle::scaled_moment(c, M, N, m.total(), 3));
    CHECK(s.mu2 >= 0);
    CHECK(s.mu2 <= s.s_max);
    CHECK(s.nu2 <= s.t_max);
    CHECK(abs(s.mu3) <= s.s_max * s.mu2);
    CHECK(abs(s.nu3) <= s.t_max * s.nu2);
  }
}

TEST_CASE("classify regime") {
  const std::vector<Degree> ones(100, 1), twos(50, 2);
  auto r = classify_regime(validate_margins(ones, ones));
  CHECK_FALSE(r.substantial);
  CHECK(r.N2 == 22);
  CHECK(r.N3 == 5);
  CHECK(r.delta_cap == 1);

  r = classify_regime(validate_margins(twos, twos));
  CHECK(r.N3 == 5);
  CHECK(r.substantial);
  CHECK(r.N2 == 5600);  // 10^4 above both 100^1.75 and S^2 ln S / 5600
  CHECK(r.delta_cap == 2);

  // S2T2 far above S^2 log S / 5600: third branch, exact ceiling
  r = classify_regime(mp({10}, {10}));
  CHECK(r.N2 == 453600);
  CHECK(r.N3 == std::int64_t{230000} * 720 * 720 / 1000);
  CHECK_FALSE(r.sparse);

  CHECK(kind_of([] { classify_regime(mp({1}, {1})); }) == ErrorKind::ZeroTotal);
}
