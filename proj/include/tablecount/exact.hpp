#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "tablecount/margins.hpp"
#include "tablecount/numeric.hpp"
#include "tablecount/table_matrix.hpp"

namespace tablecount {

/// Set J of allowed matrix entries. Always contains 0.
class EntryAlphabet {
 public:
  enum class Kind { AllNonnegative, FiniteSet, ZeroOne, ZeroToThree };

  static EntryAlphabet all();
  static EntryAlphabet zero_one();
  static EntryAlphabet zero_to_three();
  /// Throws InvalidInput if 0 is missing or a member is negative.
  static EntryAlphabet finite(std::set<Degree> members);

  Kind kind() const noexcept { return kind_; }
  const std::set<Degree>& members() const noexcept { return members_; }
  bool is_finite() const noexcept { return kind_ != Kind::AllNonnegative; }

  bool allows(Degree value) const;
  /// Largest member, or nullopt when unbounded.
  std::optional<Degree> max_member() const;
  /// Members v with 0 <= v <= limit, ascending.
  std::vector<Degree> members_up_to(Degree limit) const;

  bool has_zero_and_one() const { return allows(0) && allows(1); }
  int chi2() const { return allows(2) ? 1 : 0; }
  int chi3() const { return allows(3) ? 1 : 0; }

  bool is_subset_of(const EntryAlphabet& other) const;

 private:
  EntryAlphabet(Kind kind, std::set<Degree> members) : kind_(kind), members_(std::move(members)) {}

  Kind kind_;
  std::set<Degree> members_;
};

/// Size guards. Configuration only; `override_guards` lifts all of them.
struct GuardLimits {
  std::size_t brute_force_cells = 16;
  Degree brute_force_total = 12;
  std::size_t dp_states = 10'000'000;
  Degree pairing_total = 8;
  bool override_guards = false;
};

struct CountResult {
  BigInt count;
  std::size_t states_visited = 0;
};

/// Visits every matrix with the given margins and entries in the alphabet,
/// row by row. No size guard.
void for_each_matrix(const MarginPair& margins, const EntryAlphabet& alphabet,
                     const std::function<void(const TableMatrix&)>& visit);

/// Direct enumeration oracle. SizeGuardExceeded beyond m*n > 16 or S > 12.
BigInt count_bruteforce(const MarginPair& margins, const EntryAlphabet& alphabet,
                        const GuardLimits& limits = {});

/// Column-by-column DP over sorted residual row sums, level-synchronous and
/// OpenMP-parallel across the states of each level.
CountResult count_exact(const MarginPair& margins, const EntryAlphabet& alphabet,
                        const GuardLimits& limits = {});

/// Serial reference: top-down memo keyed on (residual multiset, remaining
/// column multiset).
CountResult count_exact_serial(const MarginPair& margins, const EntryAlphabet& alphabet,
                               const GuardLimits& limits = {});

/// Memoized downstream counts shared by the serial counter and the sampler.
class CountingMemo {
 public:
  CountingMemo(EntryAlphabet alphabet, std::size_t state_limit);
  ~CountingMemo();
  CountingMemo(CountingMemo&&) noexcept;
  CountingMemo& operator=(CountingMemo&&) noexcept;

  /// Number of ways to fill the remaining columns. Both arguments are
  /// multisets: zeros are ignored and order does not matter.
  BigInt count(std::vector<Degree> residual_rows, std::vector<Degree> remaining_cols);
  std::size_t size() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Exact uniform sampler over M(s,t,J); reuses its memo across draws.
class UniformSampler {
 public:
  /// EmptyClass when the class is empty.
  UniformSampler(const MarginPair& margins, const EntryAlphabet& alphabet,
                 const GuardLimits& limits = {});

  const BigInt& class_size() const noexcept { return total_; }
  TableMatrix draw(std::uint64_t seed);

 private:
  MarginPair margins_;
  EntryAlphabet alphabet_;
  CountingMemo memo_;
  BigInt total_;
};

TableMatrix sample_uniform(const MarginPair& margins, const EntryAlphabet& alphabet,
                           std::uint64_t seed, const GuardLimits& limits = {});

/// Pr(s_i = k) for the row sum of a uniformly random composition of S into
/// an m x n grid. OutOfRange unless 0 <= k <= S and m, n >= 1.
Rational row_sum_distribution(std::int64_t m, std::int64_t n, std::int64_t S, std::int64_t k);

struct ExpectedMoments {
  Rational mu2, nu2, mu3, nu3;
};

/// Expectations of the scaled central moments over uniform compositions.
ExpectedMoments expected_moments(std::int64_t m, std::int64_t n, std::int64_t S);

}  // namespace tablecount
