#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "tablecount/numeric.hpp"
#include "tablecount/switching.hpp"
#include "tablecount/table_matrix.hpp"

namespace gen {

using namespace tablecount;

inline TableMatrix random_matrix(std::mt19937_64& rng, int lo_dim, int hi_dim, std::vector<double> weights) {
  std::uniform_int_distribution<int> dim(lo_dim, hi_dim);
  std::discrete_distribution<int> entry(weights.begin(), weights.end());
  TableMatrix q(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
  for (std::size_t i = 0; i < q.rows(); ++i)
    for (std::size_t j = 0; j < q.cols(); ++j) q(i, j) = entry(rng);
  return q;
}

// Specs drawn inside the hypotheses of each variant.
inline BoundSpec random_lemma7(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BoundSpec spec;
  spec.variant = BoundVariant::Lemma7;
  spec.N = 4 + static_cast<std::int64_t>(rng() % 40);
  spec.c_hat = 0.02 + 0.3 * u(rng);
  const double a_max = spec.c_hat * static_cast<double>(spec.N) * u(rng);
  const double a_min = a_max * u(rng);
  for (std::int64_t i = 1; i <= spec.N; ++i) {
    const double a = (i == 1) ? a_max : a_min + (a_max - a_min) * u(rng);
    double b_hi = a > 0 ? spec.c_hat / a : 1.0;
    if (i > 1) b_hi = std::min(b_hi, 1.0 / static_cast<double>(i - 1));
    const double b_lo = a > 0 ? -spec.c_hat / a : -1.0;
    spec.A.push_back(a);
    spec.B.push_back(b_lo + (b_hi - b_lo) * u(rng));
  }
  return spec;
}

inline BoundSpec random_lemma6(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  BoundSpec spec;
  spec.variant = BoundVariant::Lemma6;
  spec.N = 4 + static_cast<std::int64_t>(rng() % 40);
  spec.K = static_cast<std::int64_t>(rng() % 4);
  spec.c = 2 * std::numbers::e + 0.01 + 6 * u(rng);
  const double a_cap = 0.999 * static_cast<double>(spec.N - spec.K + 1) / spec.c;
  const double a_max = a_cap * u(rng);
  const double a_min = a_max * u(rng);
  const double n = static_cast<double>(spec.N);
  for (std::int64_t j = 0; j <= spec.K; ++j) {
    const double ff = falling_factorial(spec.N, static_cast<int>(j)).convert_to<double>();
    spec.gamma.push_back(0.199 * u(rng) / (static_cast<double>(spec.K + 1) * ff));
  }
  auto budget = [&](std::int64_t i) {
    double b = 0;
    for (std::int64_t j = 0; j <= spec.K; ++j)
      b += spec.gamma[static_cast<std::size_t>(j)] * falling_factorial(i, static_cast<int>(j)).convert_to<double>();
    return b;
  };
  for (std::int64_t i = 1; i <= spec.N; ++i) {
    spec.A.push_back(i == 1 ? a_max : a_min + (a_max - a_min) * u(rng));
    spec.B.push_back((2 * u(rng) - 1) * 0.999 / n);
    const double room = i == 1 ? budget(1) : budget(i) - budget(i - 1);
    spec.delta.push_back((u(rng) < 0.5 ? -1 : 1) * 0.999 * room * u(rng));
  }
  return spec;
}

}  // namespace gen
