#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "tablecount/errors.hpp"
#include "tablecount/exact.hpp"

using namespace tablecount;

namespace {

MarginPair mp(std::vector<Degree> r, std::vector<Degree> c) { return validate_margins(r, c); }

std::function<bool(std::int64_t)> allow_fn(const EntryAlphabet& a) {
  return [a](std::int64_t v) { return a.allows(v); };
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

const std::vector<EntryAlphabet>& alphabets() {
  static const std::vector<EntryAlphabet> all = {EntryAlphabet::all(), EntryAlphabet::zero_one(),
                                                 EntryAlphabet::zero_to_three(), EntryAlphabet::finite({0, 1, 3})};
  return all;
}

}  // namespace

TEST_CASE("entry alphabets") {
  const auto j = EntryAlphabet::finite({0, 1, 3});
  CHECK(j.chi2() == 0);
  CHECK(j.chi3() == 1);
  CHECK(j.has_zero_and_one());
  CHECK(EntryAlphabet::zero_to_three().chi2() == 1);
  CHECK(EntryAlphabet::all().allows(1000));
  CHECK_FALSE(EntryAlphabet::all().allows(-1));
  CHECK(EntryAlphabet::zero_one().is_subset_of(j));
  CHECK_FALSE(j.is_subset_of(EntryAlphabet::zero_one()));
  CHECK(j.is_subset_of(EntryAlphabet::all()));
  CHECK(j.max_member() == 3);
  CHECK_FALSE(EntryAlphabet::all().max_member().has_value());
  CHECK(kind_of([] { EntryAlphabet::finite({1, 2}); }) == ErrorKind::InvalidInput);
  CHECK(j.members_up_to(2) == std::vector<Degree>{0, 1});
}

TEST_CASE("table matrix") {
  const auto q = TableMatrix::from_rows({{1, 2}, {0, 3}});
  CHECK(q.row_sums() == std::vector<Degree>{3, 3});
  CHECK(q.col_sums() == std::vector<Degree>{1, 5});
  CHECK(q.count_equal(3) == 1);
  CHECK(q.to_rows() == std::vector<std::vector<Degree>>{{1, 2}, {0, 3}});
  CHECK(kind_of([] { TableMatrix::from_rows({{1, 2}, {0}}); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { TableMatrix::from_rows({{1, -2}}); }) == ErrorKind::InvalidInput);
}

TEST_CASE("brute force examples") {
  CHECK(count_bruteforce(mp({2, 2}, {2, 2}), EntryAlphabet::all()) == 3);
  CHECK(count_bruteforce(mp({2, 2}, {2, 2}), EntryAlphabet::zero_one()) == 1);
  CHECK(count_bruteforce(mp({2}, {2}), EntryAlphabet::zero_one()) == 0);
  CHECK(count_bruteforce(mp({0}, {0}), EntryAlphabet::all()) == 1);
}

TEST_CASE("count_exact examples") {
  CHECK(count_exact(mp({1, 1}, {1, 1}), EntryAlphabet::all()).count == 2);
  CHECK(count_exact(mp({0}, {0}), EntryAlphabet::all()).count == 1);
  CHECK(count_exact_serial(mp({0}, {0}), EntryAlphabet::all()).count == 1);
  CHECK(count_exact(mp({2}, {2}), EntryAlphabet::zero_one()).count == 0);
  CHECK(count_exact(mp({2, 2}, {2, 2}), EntryAlphabet::all()).count == 3);
  const auto threes = mp({3, 3, 3, 3}, {3, 3, 3, 3});
  const BigInt oracle_count = oracle::count_matrices(threes.rows(), threes.cols(), [](std::int64_t) { return true; });
  CHECK(count_exact(threes, EntryAlphabet::all()).count == oracle_count);
  CHECK(count_bruteforce(threes, EntryAlphabet::all()) == oracle_count);
  CHECK(count_exact_serial(threes, EntryAlphabet::all()).count == oracle_count);
  // permutation matrices
  const std::vector<Degree> ones(9, 1);
  CHECK(count_exact(validate_margins(ones, ones), EntryAlphabet::all()).count == factorial(9));
}

TEST_CASE("exact counts agree with the direct oracle on random margins") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 4, 4);
    const auto m = validate_margins(r, c);
    for (const auto& a : alphabets()) {
      const BigInt expected = oracle::count_matrices(r, c, allow_fn(a));
      CHECK(count_exact(m, a).count == expected);
      CHECK(count_exact_serial(m, a).count == expected);
      if (m.m() * m.n() <= 16 && m.total() <= 12) CHECK(count_bruteforce(m, a) == expected);
    }
  }
}

TEST_CASE("count symmetries and alphabet monotonicity") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto [r, c] = oracle::random_margins(rng, 6, 5);
    const auto m = validate_margins(r, c);
    std::vector<BigInt> per_alphabet;
    for (const auto& a : alphabets()) {
      const BigInt base = count_exact(m, a).count;
      per_alphabet.push_back(base);
      CHECK(count_exact(m.transposed(), a).count == base);
      auto r2 = r, c2 = c;
      std::shuffle(r2.begin(), r2.end(), rng);
      std::shuffle(c2.begin(), c2.end(), rng);
      CHECK(count_exact(validate_margins(r2, c2), a).count == base);
    }
    // {0,1} within {0,1,3} within {0..3} is false; {0,1} within {0..3} within all is true
    CHECK(per_alphabet[1] <= per_alphabet[3]);
    CHECK(per_alphabet[1] <= per_alphabet[2]);
    CHECK(per_alphabet[2] <= per_alphabet[0]);
    CHECK(per_alphabet[3] <= per_alphabet[0]);
  }
}

TEST_CASE("guards") {
  const std::vector<Degree> fives(5, 1);
  const auto big = validate_margins(fives, fives);  // 25 cells
  CHECK(kind_of([&] { count_bruteforce(big, EntryAlphabet::all()); }) == ErrorKind::SizeGuardExceeded);
  GuardLimits lifted;
  lifted.override_guards = true;
  CHECK(count_bruteforce(big, EntryAlphabet::all(), lifted) == 120);

  GuardLimits tight;
  tight.dp_states = 3;
  const std::vector<Degree> twos(8, 2);
  const auto fam = validate_margins(twos, twos);
  CHECK(kind_of([&] { count_exact(fam, EntryAlphabet::all(), tight); }) == ErrorKind::MemoryGuardExceeded);
  CHECK(kind_of([&] { count_exact_serial(fam, EntryAlphabet::all(), tight); }) == ErrorKind::MemoryGuardExceeded);
  tight.override_guards = true;
  CHECK(count_exact(fam, EntryAlphabet::all(), tight).count == 545007960);
}

TEST_CASE("parallel and serial counts agree on larger inputs") {
  const std::vector<Degree> rows{4, 3, 3, 2, 2, 2, 1, 1}, cols{5, 4, 3, 3, 2, 1};
  const auto m = validate_margins(rows, cols);
  for (const auto& a : alphabets()) {
    CHECK(count_exact(m, a).count == count_exact_serial(m, a).count);
  }
}

TEST_CASE("uniform sampler") {
  SUBCASE("two permutation matrices") {
    UniformSampler sampler(mp({1, 1}, {1, 1}), EntryAlphabet::all());
    int identity = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) identity += sampler.draw(seed)(0, 0) == 1;
    CHECK(identity / 10000.0 == doctest::Approx(0.5).epsilon(0.04));
  }
  SUBCASE("three 2x2 matrices") {
    const auto m = mp({2, 2}, {2, 2});
    UniformSampler sampler(m, EntryAlphabet::all());
    CHECK(sampler.class_size() == 3);
    std::map<TableMatrix, int> seen;
    for (std::uint64_t seed = 0; seed < 30000; ++seed) {
      const auto q = sampler.draw(seed);
      CHECK(q.margins() == m);
      ++seen[q];
    }
    CHECK(seen.size() == 3);
    for (const auto& [q, k] : seen) CHECK(std::abs(k / 30000.0 - 1.0 / 3.0) < 0.01);
  }
  SUBCASE("deterministic and alphabet respecting") {
    const auto m = mp({3, 2, 2, 1}, {2, 2, 2, 2});
    const auto j = EntryAlphabet::finite({0, 1, 3});
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto q = sample_uniform(m, j, seed);
      CHECK(q == sample_uniform(m, j, seed));
      CHECK(q.margins() == m);
      for (Degree v : q.data()) CHECK(j.allows(v));
    }
  }
  SUBCASE("uniform over a larger class") {
    const auto m = mp({2, 2, 1}, {2, 2, 1});
    const BigInt total = count_exact(m, EntryAlphabet::all()).count;
    UniformSampler sampler(m, EntryAlphabet::all());
    std::map<TableMatrix, int> seen;
    const int draws = 40000;
    for (int seed = 0; seed < draws; ++seed) ++seen[sampler.draw(static_cast<std::uint64_t>(seed))];
    CHECK(BigInt(seen.size()) == total);
    const double expect = draws / total.convert_to<double>();
    for (const auto& [q, k] : seen) CHECK(std::abs(k - expect) < 5 * std::sqrt(expect));
  }
  CHECK(kind_of([] { sample_uniform(mp({2}, {2}), EntryAlphabet::zero_one(), 1); }) == ErrorKind::EmptyClass);
}

TEST_CASE("row sum distribution") {
  CHECK(row_sum_distribution(1, 1, 5, 5) == 1);
  CHECK(row_sum_distribution(2, 1, 2, 1) == Rational(1, 3));
  Rational total = 0;
  for (int k = 0; k <= 3; ++k) total += row_sum_distribution(2, 2, 3, k);
  CHECK(total == 1);
  CHECK(kind_of([] { row_sum_distribution(2, 2, 3, 4); }) == ErrorKind::OutOfRange);

  for (std::int64_t m = 1; m <= 3; ++m)
    for (std::int64_t n = 1; m * n <= 6; ++n)
      for (std::int64_t S = 0; S <= 5; ++S) {
        std::map<std::int64_t, std::int64_t> freq;
        std::int64_t all = 0;
        oracle::each_composition(static_cast<std::size_t>(m * n), S, [&](const oracle::Vec& v) {
          std::int64_t first = 0;
          for (std::int64_t j = 0; j < n; ++j) first += v[static_cast<std::size_t>(j)];
          ++freq[first];
          ++all;
        });
        for (std::int64_t k = 0; k <= S; ++k) {
          CHECK(row_sum_distribution(m, n, S, k) == Rational(BigInt(freq[k]), BigInt(all)));
        }
      }
}

TEST_CASE("expected moments") {
  CHECK(expected_moments(2, 2, 7).mu2 == Rational(2, 5));
  CHECK(expected_moments(1, 4, 3).mu2 == 0);
  for (auto [m, n, S] : std::vector<std::array<std::int64_t, 3>>{{2, 2, 3}, {2, 3, 4}, {3, 2, 4}, {3, 3, 3}}) {
    Rational mu2 = 0, nu2 = 0, mu3 = 0, nu3 = 0;
    std::int64_t count = 0;
    oracle::each_composition(static_cast<std::size_t>(m * n), S, [&](const oracle::Vec& v) {
      oracle::Vec rows(static_cast<std::size_t>(m), 0), cols(static_cast<std::size_t>(n), 0);
      for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = 0; j < n; ++j) {
          rows[static_cast<std::size_t>(i)] += v[static_cast<std::size_t>(i * n + j)];
          cols[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i * n + j)];
        }
      mu2 += oracle::scaled_moment(rows, m, n, S, 2);
      mu3 += oracle::scaled_moment(rows, m, n, S, 3);
      nu2 += oracle::scaled_moment(cols, m, n, S, 2);
      nu3 += oracle::scaled_moment(cols, m, n, S, 3);
      ++count;
    });
    const auto e = expected_moments(m, n, S);
    CHECK(e.mu2 == mu2 / count);
    CHECK(e.nu2 == nu2 / count);
    CHECK(e.mu3 == mu3 / count);
    CHECK(e.nu3 == nu3 / count);
  }
}
