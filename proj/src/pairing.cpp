#include "tablecount/pairing.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "tablecount/errors.hpp"

namespace tablecount {

std::vector<std::size_t> cell_of_points(const std::vector<Degree>& degrees) {
  std::vector<std::size_t> cells;
  for (std::size_t c = 0; c < degrees.size(); ++c) cells.insert(cells.end(), static_cast<std::size_t>(degrees[c]), c);
  return cells;
}

Pairing::Pairing(const MarginPair& margins, std::vector<std::int32_t> image)
    : margins_(margins),
      image_(std::move(image)),
      row_cell_(cell_of_points(margins.rows())),
      col_cell_(cell_of_points(margins.cols())) {
  const auto S = static_cast<std::size_t>(margins.total());
  if (image_.size() != S) throw TableError(ErrorKind::InvalidInput, "pairing must have S pairs");
  std::vector<bool> seen(S, false);
  for (std::int32_t y : image_) {
    if (y < 0 || static_cast<std::size_t>(y) >= S || seen[static_cast<std::size_t>(y)]) {
      throw TableError(ErrorKind::InvalidInput, "pairing image is not a permutation");
    }
    seen[static_cast<std::size_t>(y)] = true;
  }
}

namespace {

void check_pairing_guard(const MarginPair& margins, const GuardLimits& limits) {
  if (!limits.override_guards && margins.total() > limits.pairing_total) {
    throw TableError(ErrorKind::SizeGuardExceeded,
                     "exhaustive pairing enumeration limited to S <= " +
                         std::to_string(limits.pairing_total) + " (got S = " +
                         std::to_string(margins.total()) + ")");
  }
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::vector<std::int32_t> identity_image(Degree total) {
  std::vector<std::int32_t> image(static_cast<std::size_t>(total));
  std::iota(image.begin(), image.end(), 0);
  return image;
}

// Per-pairing multiplicity scan over a reusable m x n buffer.
class ClassScanner {
 public:
  explicit ClassScanner(const MarginPair& margins)
      : n_(margins.n()),
        row_cell_(cell_of_points(margins.rows())),
        col_cell_(cell_of_points(margins.cols())),
        counts_(margins.m() * margins.n(), 0) {}

  struct Summary {
    std::int64_t weight;
    std::int64_t doublets;
  };

  // Only for S small enough that weights fit in 64 bits (S <= 20).
  Summary scan(const std::vector<std::int32_t>& image) {
    touched_.clear();
    for (std::size_t x = 0; x < image.size(); ++x) {
      const std::size_t cell = row_cell_[x] * n_ + col_cell_[static_cast<std::size_t>(image[x])];
      if (counts_[cell]++ == 0) touched_.push_back(cell);
    }
    Summary out{1, 0};
    for (std::size_t cell : touched_) {
      const std::int64_t r = counts_[cell];
      for (std::int64_t k = 2; k <= r; ++k) out.weight *= k;
      out.doublets += r * (r - 1) / 2;
      counts_[cell] = 0;
    }
    return out;
  }

  bool all_simple(const std::vector<std::int32_t>& image) {
    touched_.clear();
    bool simple = true;
    for (std::size_t x = 0; x < image.size(); ++x) {
      const std::size_t cell = row_cell_[x] * n_ + col_cell_[static_cast<std::size_t>(image[x])];
      if (counts_[cell]++ == 0) {
        touched_.push_back(cell);
      } else {
        simple = false;
        break;
      }
    }
    for (std::size_t cell : touched_) counts_[cell] = 0;
    return simple;
  }

 private:
  std::size_t n_;
  std::vector<std::size_t> row_cell_;
  std::vector<std::size_t> col_cell_;
  std::vector<std::int64_t> counts_;
  std::vector<std::size_t> touched_;
};

void accumulate(PairingStatistics& stats, const ClassScanner::Summary& summary) {
  ++stats.pairings;
  stats.weight_sum += summary.weight;
  if (summary.weight == 1) ++stats.simple_pairings;
  const auto k = static_cast<std::size_t>(summary.doublets);
  if (stats.doublet_histogram.size() <= k) stats.doublet_histogram.resize(k + 1, 0);
  ++stats.doublet_histogram[k];
}

void merge(PairingStatistics& into, const PairingStatistics& from) {
  into.pairings += from.pairings;
  into.weight_sum += from.weight_sum;
  into.simple_pairings += from.simple_pairings;
  if (into.doublet_histogram.size() < from.doublet_histogram.size()) {
    into.doublet_histogram.resize(from.doublet_histogram.size(), 0);
  }
  for (std::size_t k = 0; k < from.doublet_histogram.size(); ++k) {
    into.doublet_histogram[k] += from.doublet_histogram[k];
  }
}

}  // namespace

void enumerate_pairings(const MarginPair& margins, const std::function<void(const Pairing&)>& visit,
                        const GuardLimits& limits) {
  check_pairing_guard(margins, limits);
  auto image = identity_image(margins.total());
  do {
    visit(Pairing(margins, image));
  } while (std::next_permutation(image.begin(), image.end()));
}

Pairing random_pairing(const MarginPair& margins, std::uint64_t seed) {
  if (margins.total() < 1) throw TableError(ErrorKind::ZeroTotal, "no points to pair");
  auto rng = seeded_engine(seed);
  auto image = identity_image(margins.total());
  std::shuffle(image.begin(), image.end(), rng);
  return Pairing(margins, std::move(image));
}

TableMatrix pairing_to_matrix(const Pairing& pairing) {
  const MarginPair& margins = pairing.margins();
  TableMatrix out(margins.m(), margins.n());
  const auto& image = pairing.image();
  for (std::size_t x = 0; x < image.size(); ++x) {
    ++out(pairing.row_cell(static_cast<std::int32_t>(x)), pairing.col_cell(image[x]));
  }
  return out;
}

MultiplicityVector multiplicities_of(const TableMatrix& matrix) {
  MultiplicityVector a;
  for (Degree v : matrix.data())
    if (v >= 2) ++a[v];
  return a;
}

BigInt weight_of(const MultiplicityVector& a) {
  BigInt w = 1;
  for (const auto& [r, count] : a) w *= boost::multiprecision::pow(factorial(r), static_cast<unsigned>(count));
  return w;
}

WeightedMultiplicity multiplicity_and_weight(const Pairing& pairing) {
  WeightedMultiplicity out;
  out.multiplicities = multiplicities_of(pairing_to_matrix(pairing));
  out.weight = weight_of(out.multiplicities);
  return out;
}

std::int64_t doublet_count(const Pairing& pairing) {
  std::int64_t d = 0;
  const TableMatrix q = pairing_to_matrix(pairing);
  for (Degree r : q.data()) d += r * (r - 1) / 2;
  return d;
}

WeightIdentity verify_weight_identity(const MarginPair& margins,
                                      const MultiplicityPredicate& predicate,
                                      const GuardLimits& limits) {
  check_pairing_guard(margins, limits);
  WeightIdentity out;
  for_each_matrix(margins, EntryAlphabet::all(), [&](const TableMatrix& q) {
    if (predicate(multiplicities_of(q))) ++out.lhs;
  });

  BigInt weight_sum = 0;
  enumerate_pairings(margins, [&](const Pairing& p) {
    auto wm = multiplicity_and_weight(p);
    if (predicate(wm.multiplicities)) weight_sum += wm.weight;
  }, limits);

  BigInt denominator = 1;
  for (Degree s : margins.rows()) denominator *= factorial(s);
  for (Degree t : margins.cols()) denominator *= factorial(t);
  out.rhs = Rational(weight_sum, denominator);
  return out;
}

// --------------------------------------------------------- exhaustive sums

Rational PairingStatistics::binomial_moment(int r) const {
  BigInt sum = 0;
  for (std::size_t k = 0; k < doublet_histogram.size(); ++k) {
    sum += binomial(static_cast<std::int64_t>(k), r) * doublet_histogram[k];
  }
  return Rational(sum, BigInt(pairings));
}

Rational PairingStatistics::probability(int k) const {
  const auto idx = static_cast<std::size_t>(k);
  const std::int64_t hits = idx < doublet_histogram.size() ? doublet_histogram[idx] : 0;
  return Rational(BigInt(hits), BigInt(pairings));
}

PairingStatistics exhaustive_statistics_serial(const MarginPair& margins,
                                               const GuardLimits& limits) {
  check_pairing_guard(margins, limits);
  PairingStatistics stats;
  ClassScanner scanner(margins);
  auto image = identity_image(margins.total());
  do {
    accumulate(stats, scanner.scan(image));
  } while (std::next_permutation(image.begin(), image.end()));
  return stats;
}

PairingStatistics exhaustive_statistics(const MarginPair& margins, const GuardLimits& limits) {
  check_pairing_guard(margins, limits);
  const auto S = static_cast<std::int32_t>(margins.total());
  if (S < 3) return exhaustive_statistics_serial(margins, limits);

  // One task per ordered choice of the first two images.
  const std::int64_t tasks = static_cast<std::int64_t>(S) * (S - 1);
  PairingStatistics total;

#pragma omp parallel
  {
    PairingStatistics local;
    ClassScanner scanner(margins);
    std::vector<std::int32_t> image(static_cast<std::size_t>(S));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t task = 0; task < tasks; ++task) {
      const auto first = static_cast<std::int32_t>(task / (S - 1));
      auto second = static_cast<std::int32_t>(task % (S - 1));
      if (second >= first) ++second;
      image[0] = first;
      image[1] = second;
      std::size_t pos = 2;
      for (std::int32_t y = 0; y < S; ++y)
        if (y != first && y != second) image[pos++] = y;
      do {
        accumulate(local, scanner.scan(image));
      } while (std::next_permutation(image.begin() + 2, image.end()));
    }
#pragma omp critical(tablecount_pairing_merge)
    merge(total, local);
  }
  return total;
}

// ------------------------------------------------------- doublet moments

const Rational& DoubletMoments::at(int r) const {
  if (r < 0 || r > 4 || !b[static_cast<std::size_t>(r)]) {
    throw TableError(ErrorKind::UndefinedMoment, "b_" + std::to_string(r));
  }
  return *b[static_cast<std::size_t>(r)];
}

namespace {

struct DoubletTerms {
  BigInt S2T2, S3T3, cross;  // cross = (S2^2-4S3-2S2)(T2^2-4T3-2T2)
  BigInt ff2, ff3, ff4;      // [S]_2, [S]_3, [S]_4
};

DoubletTerms doublet_terms(const MarginPair& margins) {
  const BigInt S2 = falling_power_sum(margins.rows(), 2);
  const BigInt S3 = falling_power_sum(margins.rows(), 3);
  const BigInt T2 = falling_power_sum(margins.cols(), 2);
  const BigInt T3 = falling_power_sum(margins.cols(), 3);
  DoubletTerms d;
  d.S2T2 = S2 * T2;
  d.S3T3 = S3 * T3;
  d.cross = (S2 * S2 - 4 * S3 - 2 * S2) * (T2 * T2 - 4 * T3 - 2 * T2);
  d.ff2 = falling_factorial(margins.total(), 2);
  d.ff3 = falling_factorial(margins.total(), 3);
  d.ff4 = falling_factorial(margins.total(), 4);
  return d;
}

}  // namespace

DoubletMoments doublet_moments(const MarginPair& margins) {
  const DoubletTerms d = doublet_terms(margins);
  DoubletMoments out;
  out.b[0] = Rational(1);
  if (d.ff2 != 0) out.b[1] = Rational(d.S2T2, 2 * d.ff2);
  if (d.ff4 != 0) out.b[2] = Rational(d.S3T3, 2 * d.ff3) + Rational(d.cross, 8 * d.ff4);
  if (d.ff3 != 0) out.b[3] = Rational(d.S3T3, 6 * d.ff3);
  out.b[4] = Rational(0);
  return out;
}

ClassProbabilities class_probabilities(const MarginPair& margins) {
  if (margins.total() < 4) {
    throw TableError(ErrorKind::UndefinedMoment, "class probabilities need S >= 4");
  }
  const DoubletTerms d = doublet_terms(margins);
  const Rational one_doublet(d.S2T2, 2 * d.ff2);
  const Rational two_doublets(d.cross, 8 * d.ff4);
  ClassProbabilities out;
  out.p[0] = 1 - one_doublet + Rational(d.S3T3, 3 * d.ff3) + two_doublets;
  out.p[1] = one_doublet - Rational(d.S3T3, 2 * d.ff3) - 2 * two_doublets;
  out.p[2] = two_doublets;
  out.p[3] = Rational(d.S3T3, 6 * d.ff3);
  return out;
}

// ------------------------------------------------------------ Monte Carlo

double MonteCarloResult::standard_error() const {
  if (samples == 0) return 0.0;
  const double p = fraction();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

namespace {

constexpr std::int64_t kChunk = 4096;

std::int64_t run_chunk(ClassScanner& scanner,
                       std::vector<std::int32_t>& image, std::int64_t chunk,
                       std::int64_t samples, std::uint64_t seed) {
  auto rng = seeded_engine(seed, static_cast<std::uint64_t>(chunk));
  const std::int64_t begin = chunk * kChunk;
  const std::int64_t end = std::min(samples, begin + kChunk);
  std::int64_t hits = 0;
  for (std::int64_t k = begin; k < end; ++k) {
    std::iota(image.begin(), image.end(), 0);
    std::shuffle(image.begin(), image.end(), rng);
    if (scanner.all_simple(image)) ++hits;
  }
  return hits;
}

void check_samples(const MarginPair& margins, std::int64_t samples) {
  if (margins.total() < 1) throw TableError(ErrorKind::ZeroTotal, "no points to pair");
  if (samples < 1) throw TableError(ErrorKind::InvalidInput, "need at least one sample");
}

}  // namespace

MonteCarloResult monte_carlo_simple_fraction_serial(const MarginPair& margins,
                                                    std::int64_t samples, std::uint64_t seed) {
  check_samples(margins, samples);
  ClassScanner scanner(margins);
  std::vector<std::int32_t> image(static_cast<std::size_t>(margins.total()));
  MonteCarloResult out{samples, 0};
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  for (std::int64_t c = 0; c < chunks; ++c) out.hits += run_chunk(scanner, image, c, samples, seed);
  return out;
}

MonteCarloResult monte_carlo_simple_fraction(const MarginPair& margins, std::int64_t samples,
                                             std::uint64_t seed) {
  check_samples(margins, samples);
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  std::int64_t hits = 0;
#pragma omp parallel reduction(+ : hits)
  {
    ClassScanner scanner(margins);
    std::vector<std::int32_t> image(static_cast<std::size_t>(margins.total()));
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) hits += run_chunk(scanner, image, c, samples, seed);
  }
  return {samples, hits};
}

}  // namespace tablecount
