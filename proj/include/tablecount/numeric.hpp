#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace tablecount {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string to_decimal(const BigInt& value);

/// Natural log of a positive big integer; -inf for zero.
long double log_of(const BigInt& value);
double to_double(const Rational& value);

/// [x]_k = x(x-1)...(x-k+1), with [x]_0 = 1.
BigInt falling_factorial(std::int64_t x, int k);

BigInt factorial(std::int64_t x);
BigInt binomial(std::int64_t n, std::int64_t k);

/// Number of weak compositions of `total` into `parts` cells, i.e.
/// binom(total + parts - 1, total); equals [total == 0] when parts == 0.
BigInt compositions(std::int64_t total, std::int64_t parts);

/// ln(x!). Summed exactly term by term up to 10^6 from a shared table,
/// log-gamma beyond. Safe for concurrent callers.
long double log_factorial(std::int64_t x);
long double log_binomial(std::int64_t n, std::int64_t k);

}  // namespace tablecount
