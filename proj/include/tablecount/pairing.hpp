#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "tablecount/exact.hpp"
#include "tablecount/margins.hpp"
#include "tablecount/numeric.hpp"
#include "tablecount/table_matrix.hpp"

namespace tablecount {

/// A perfect matching between S row points and S column points. Row points
/// 0..S-1 are grouped consecutively by cell in input order, and likewise for
/// column points; `image[x]` is the column point paired with row point x.
class Pairing {
 public:
  /// Throws InvalidInput unless `image` is a permutation of 0..S-1.
  Pairing(const MarginPair& margins, std::vector<std::int32_t> image);

  const MarginPair& margins() const noexcept { return margins_; }
  const std::vector<std::int32_t>& image() const noexcept { return image_; }

  std::size_t row_cell(std::int32_t point) const { return row_cell_[static_cast<std::size_t>(point)]; }
  std::size_t col_cell(std::int32_t point) const { return col_cell_[static_cast<std::size_t>(point)]; }

 private:
  MarginPair margins_;
  std::vector<std::int32_t> image_;
  std::vector<std::size_t> row_cell_;
  std::vector<std::size_t> col_cell_;
};

/// Cell index of each point for a degree sequence.
std::vector<std::size_t> cell_of_points(const std::vector<Degree>& degrees);

/// a_r: number of parallel classes of multiplicity r, for r >= 2.
using MultiplicityVector = std::map<Degree, std::int64_t>;

struct WeightedMultiplicity {
  MultiplicityVector multiplicities;
  BigInt weight;  // prod (r!)^{a_r}
};

/// Visits all S! pairings. SizeGuardExceeded when S exceeds the pairing guard.
void enumerate_pairings(const MarginPair& margins, const std::function<void(const Pairing&)>& visit,
                        const GuardLimits& limits = {});

/// Uniform over all S! pairings; ZeroTotal when S = 0.
Pairing random_pairing(const MarginPair& margins, std::uint64_t seed);

TableMatrix pairing_to_matrix(const Pairing& pairing);

WeightedMultiplicity multiplicity_and_weight(const Pairing& pairing);
/// Multiplicity vector read off a matrix: a_r = number of entries equal to r.
MultiplicityVector multiplicities_of(const TableMatrix& matrix);
BigInt weight_of(const MultiplicityVector& a);

/// Unordered sets of two parallel pairs: sum over classes of C(r, 2).
std::int64_t doublet_count(const Pairing& pairing);

using MultiplicityPredicate = std::function<bool(const MultiplicityVector&)>;

struct WeightIdentity {
  BigInt lhs;    // matrices whose multiplicity vector satisfies the predicate
  Rational rhs;  // sum of pairing weights / (prod s_i! prod t_j!)
  bool holds() const { return Rational(lhs) == rhs; }
};

WeightIdentity verify_weight_identity(const MarginPair& margins,
                                      const MultiplicityPredicate& predicate,
                                      const GuardLimits& limits = {});

/// Exhaustive statistics over all S! pairings.
struct PairingStatistics {
  std::int64_t pairings = 0;
  std::int64_t weight_sum = 0;        // sum of w(P)
  std::int64_t simple_pairings = 0;   // pairings with w(P) = 1
  std::vector<std::int64_t> doublet_histogram;  // index = number of doublets

  /// sum over pairings of C(X, r) / S!, X = doublet count.
  Rational binomial_moment(int r) const;
  /// Pr(X = k).
  Rational probability(int k) const;
};

/// OpenMP-parallel over prefixes of the permutation space.
PairingStatistics exhaustive_statistics(const MarginPair& margins, const GuardLimits& limits = {});
/// Serial reference.
PairingStatistics exhaustive_statistics_serial(const MarginPair& margins,
                                               const GuardLimits& limits = {});

/// b_0..b_4. Entries needing a zero falling-factorial denominator are empty.
/// b_3 keeps only its rational main term and b_4 is reported as 0; both are
/// flagged truncated.
struct DoubletMoments {
  std::array<std::optional<Rational>, 5> b;
  std::array<bool, 5> truncated{false, false, false, true, true};

  /// UndefinedMoment(r) when b_r is empty.
  const Rational& at(int r) const;
};

DoubletMoments doublet_moments(const MarginPair& margins);

/// Main terms of p_0..p_3 (Pr of exactly k doublets) with the
/// O(s^3 t^3 / S^2) remainders dropped. UndefinedMoment when S < 4.
struct ClassProbabilities {
  std::array<Rational, 4> p;
  bool truncated = true;
};

ClassProbabilities class_probabilities(const MarginPair& margins);

struct MonteCarloResult {
  std::int64_t samples = 0;
  std::int64_t hits = 0;  // pairings with no doublet
  double fraction() const { return samples ? static_cast<double>(hits) / static_cast<double>(samples) : 0.0; }
  /// sqrt(p(1-p)/N) at the empirical p.
  double standard_error() const;
};

/// Fraction of uniformly random pairings with no parallel class of
/// multiplicity >= 2. Samples are split into fixed-size chunks, each with its
/// own seeded stream, so the result does not depend on thread count.
MonteCarloResult monte_carlo_simple_fraction(const MarginPair& margins, std::int64_t samples,
                                             std::uint64_t seed);
MonteCarloResult monte_carlo_simple_fraction_serial(const MarginPair& margins,
                                                    std::int64_t samples, std::uint64_t seed);

}  // namespace tablecount
