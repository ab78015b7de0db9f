#include "tablecount/exact.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <unordered_map>

#include "dp_transitions.hpp"
#include "tablecount/errors.hpp"

namespace tablecount {

// ---------------------------------------------------------------- alphabet

EntryAlphabet EntryAlphabet::all() { return EntryAlphabet(Kind::AllNonnegative, {}); }
EntryAlphabet EntryAlphabet::zero_one() { return EntryAlphabet(Kind::ZeroOne, {0, 1}); }
EntryAlphabet EntryAlphabet::zero_to_three() {
  return EntryAlphabet(Kind::ZeroToThree, {0, 1, 2, 3});
}

EntryAlphabet EntryAlphabet::finite(std::set<Degree> members) {
  if (!members.count(0)) throw TableError(ErrorKind::InvalidInput, "alphabet must contain 0");
  if (*members.begin() < 0) throw TableError(ErrorKind::InvalidInput, "negative alphabet member");
  return EntryAlphabet(Kind::FiniteSet, std::move(members));
}

bool EntryAlphabet::allows(Degree value) const {
  if (value < 0) return false;
  return kind_ == Kind::AllNonnegative || members_.count(value) > 0;
}

std::optional<Degree> EntryAlphabet::max_member() const {
  if (kind_ == Kind::AllNonnegative) return std::nullopt;
  return *members_.rbegin();
}

std::vector<Degree> EntryAlphabet::members_up_to(Degree limit) const {
  std::vector<Degree> out;
  if (kind_ == Kind::AllNonnegative) {
    out.resize(static_cast<std::size_t>(std::max<Degree>(limit + 1, 0)));
    std::iota(out.begin(), out.end(), Degree{0});
    return out;
  }
  for (Degree v : members_) {
    if (v > limit) break;
    out.push_back(v);
  }
  return out;
}

bool EntryAlphabet::is_subset_of(const EntryAlphabet& other) const {
  if (other.kind_ == Kind::AllNonnegative) return true;
  if (kind_ == Kind::AllNonnegative) return false;
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

// ------------------------------------------------------------ table matrix

TableMatrix TableMatrix::from_rows(const std::vector<std::vector<Degree>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw TableError(ErrorKind::InvalidInput, "matrix must have at least one row and column");
  }
  TableMatrix out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != out.cols_) throw TableError(ErrorKind::InvalidInput, "ragged matrix");
    for (std::size_t j = 0; j < out.cols_; ++j) {
      if (rows[i][j] < 0) throw TableError(ErrorKind::InvalidInput, "negative matrix entry");
      out(i, j) = rows[i][j];
    }
  }
  return out;
}

std::vector<Degree> TableMatrix::row_sums() const {
  std::vector<Degree> sums(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) sums[i] += (*this)(i, j);
  return sums;
}

std::vector<Degree> TableMatrix::col_sums() const {
  std::vector<Degree> sums(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) sums[j] += (*this)(i, j);
  return sums;
}

MarginPair TableMatrix::margins() const {
  const auto r = row_sums();
  const auto c = col_sums();
  return validate_margins(r, c);
}

std::size_t TableMatrix::count_equal(Degree value) const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), value));
}

std::vector<std::vector<Degree>> TableMatrix::to_rows() const {
  std::vector<std::vector<Degree>> out(rows_, std::vector<Degree>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
  return out;
}

// ------------------------------------------------------------- brute force

namespace {

class MatrixWalker {
 public:
  MatrixWalker(const MarginPair& margins, const EntryAlphabet& alphabet,
               const std::function<void(const TableMatrix&)>& visit)
      : margins_(margins),
        alphabet_(alphabet),
        visit_(visit),
        matrix_(margins.m(), margins.n()),
        col_left_(margins.cols()) {}

  void run() { fill(0, 0, margins_.rows().empty() ? 0 : margins_.rows()[0]); }

 private:
  void fill(std::size_t i, std::size_t j, Degree row_left) {
    const std::size_t m = margins_.m();
    const std::size_t n = margins_.n();
    if (i == m) {
      visit_(matrix_);
      return;
    }
    if (j + 1 == n) {
      // Last cell of the row takes what is left.
      if (row_left <= col_left_[j] && alphabet_.allows(row_left)) {
        matrix_(i, j) = row_left;
        col_left_[j] -= row_left;
        fill(i + 1, 0, i + 1 < m ? margins_.rows()[i + 1] : 0);
        col_left_[j] += row_left;
        matrix_(i, j) = 0;
      }
      return;
    }
    Degree reachable = 0;
    for (std::size_t k = j + 1; k < n; ++k) reachable += col_left_[k];
    const Degree hi = std::min(row_left, col_left_[j]);
    for (Degree v = 0; v <= hi; ++v) {
      if (row_left - v > reachable) continue;
      if (!alphabet_.allows(v)) continue;
      matrix_(i, j) = v;
      col_left_[j] -= v;
      fill(i, j + 1, row_left - v);
      col_left_[j] += v;
    }
    matrix_(i, j) = 0;
  }

  const MarginPair& margins_;
  const EntryAlphabet& alphabet_;
  const std::function<void(const TableMatrix&)>& visit_;
  TableMatrix matrix_;
  std::vector<Degree> col_left_;
};

bool guard_active(const GuardLimits& limits) { return !limits.override_guards; }

}  // namespace

void for_each_matrix(const MarginPair& margins, const EntryAlphabet& alphabet,
                     const std::function<void(const TableMatrix&)>& visit) {
  MatrixWalker(margins, alphabet, visit).run();
}

BigInt count_bruteforce(const MarginPair& margins, const EntryAlphabet& alphabet,
                        const GuardLimits& limits) {
  const std::size_t cells = margins.m() * margins.n();
  if (guard_active(limits) &&
      (cells > limits.brute_force_cells || margins.total() > limits.brute_force_total)) {
    throw TableError(ErrorKind::SizeGuardExceeded,
                     "brute force limited to " + std::to_string(limits.brute_force_cells) +
                         " cells and S <= " + std::to_string(limits.brute_force_total) +
                         " (got " + std::to_string(cells) + " cells, S = " +
                         std::to_string(margins.total()) + ")");
  }
  BigInt count = 0;
  for_each_matrix(margins, alphabet, [&](const TableMatrix&) { ++count; });
  return count;
}

// ------------------------------------------------------- parallel DP count

CountResult count_exact(const MarginPair& margins, const EntryAlphabet& alphabet,
                        const GuardLimits& limits) {
  using detail::State;
  using Frontier = std::unordered_map<State, BigInt, detail::StateHash>;

  State columns = detail::canonical(margins.cols());
  const auto cap = alphabet.max_member();

  Frontier frontier;
  frontier.emplace(detail::canonical(margins.rows()), BigInt(1));
  std::size_t visited = 1;

  for (std::size_t level = 0; level < columns.size(); ++level) {
    const Degree column_sum = columns[level];
    const auto columns_after = static_cast<Degree>(columns.size() - level - 1);
    const Degree per_column = columns_after > 0 ? columns[level + 1] : 0;
    const Degree residual_cap = columns_after * (cap ? std::min(*cap, per_column) : per_column);

    std::vector<std::pair<State, BigInt>> items(std::make_move_iterator(frontier.begin()),
                                                std::make_move_iterator(frontier.end()));
    Frontier next;

#pragma omp parallel
    {
      Frontier local;
#pragma omp for schedule(dynamic, 4)
      for (std::size_t k = 0; k < items.size(); ++k) {
        const auto& [state, ways] = items[k];
        const auto groups = detail::group_state(state);
        detail::TransitionGenerator gen(alphabet, groups);
        gen.run(column_sum, [&](State&& target, const BigInt& weight, const auto&) {
          if (!target.empty() && target.front() > residual_cap) return;
          local[std::move(target)] += ways * weight;
        });
      }
#pragma omp critical(tablecount_merge)
      {
        for (auto& [state, ways] : local) next[state] += ways;
      }
    }

    visited += next.size();
    if (!limits.override_guards && visited > limits.dp_states) {
      throw TableError(ErrorKind::MemoryGuardExceeded,
                       "DP visited " + std::to_string(visited) + " states by column " +
                           std::to_string(level + 1) + " of " + std::to_string(columns.size()) +
                           " (limit " + std::to_string(limits.dp_states) + ")");
    }
    frontier = std::move(next);
    if (frontier.empty()) return {BigInt(0), visited};
  }

  const auto done = frontier.find(State{});
  return {done == frontier.end() ? BigInt(0) : done->second, visited};
}

// ----------------------------------------------------------------- sampler

namespace {

BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng) {
  const auto bits = boost::multiprecision::msb(bound) + 1;
  const BigInt mask = (BigInt(1) << bits) - 1;
  while (true) {
    BigInt x = 0;
    for (std::size_t have = 0; have < bits; have += 64) x = (x << 64) | BigInt(rng());
    x &= mask;
    if (x < bound) return x;
  }
}

}  // namespace

UniformSampler::UniformSampler(const MarginPair& margins, const EntryAlphabet& alphabet,
                               const GuardLimits& limits)
    : margins_(margins),
      alphabet_(alphabet),
      memo_(alphabet, limits.override_guards ? std::size_t(-1) : limits.dp_states) {
  total_ = memo_.count(margins.rows(), margins.cols());
  if (total_ == 0) throw TableError(ErrorKind::EmptyClass, "no matrix has these margins");
}

TableMatrix UniformSampler::draw(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);

  const std::size_t m = margins_.m();
  const std::size_t n = margins_.n();
  TableMatrix out(m, n);
  std::vector<Degree> residual = margins_.rows();

  for (std::size_t j = 0; j < n; ++j) {
    const std::vector<Degree> remaining(margins_.cols().begin() + static_cast<std::ptrdiff_t>(j) + 1,
                                        margins_.cols().end());
    // Group live rows by residual value, descending.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < m; ++i)
      if (residual[i] > 0) order.push_back(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return residual[a] > residual[b]; });
    std::vector<detail::Group> groups;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i : order) {
      if (groups.empty() || groups.back().value != residual[i]) {
        groups.push_back({residual[i], 0});
        members.emplace_back();
      }
      ++groups.back().size;
      members.back().push_back(i);
    }

    std::vector<std::vector<detail::GroupChoice>> options;
    std::vector<BigInt> weights;
    BigInt total = 0;
    detail::TransitionGenerator gen(alphabet_, groups);
    gen.run(margins_.cols()[j], [&](detail::State&& next, const BigInt& weight,
                                    const std::vector<detail::GroupChoice>& choices) {
      BigInt w = weight * memo_.count(std::move(next), remaining);
      if (w == 0) return;
      total += w;
      weights.push_back(std::move(w));
      options.push_back(choices);
    });
    if (total == 0) throw TableError(ErrorKind::EmptyClass, "sampler reached a dead state");

    BigInt pick = uniform_below(total, rng);
    std::size_t chosen = 0;
    while (pick >= weights[chosen]) {
      pick -= weights[chosen];
      ++chosen;
    }

    for (std::size_t g = 0; g < groups.size(); ++g) {
      auto rows = members[g];
      std::shuffle(rows.begin(), rows.end(), rng);
      std::size_t cursor = 0;
      for (const auto& [value, count] : options[chosen][g]) {
        for (std::int64_t c = 0; c < count; ++c, ++cursor) {
          out(rows[cursor], j) = value;
          residual[rows[cursor]] -= value;
        }
      }
    }
  }
  return out;
}

TableMatrix sample_uniform(const MarginPair& margins, const EntryAlphabet& alphabet,
                           std::uint64_t seed, const GuardLimits& limits) {
  UniformSampler sampler(margins, alphabet, limits);
  return sampler.draw(seed);
}

// ------------------------------------------------------ composition law

Rational row_sum_distribution(std::int64_t m, std::int64_t n, std::int64_t S, std::int64_t k) {
  if (m < 1 || n < 1 || S < 0 || k < 0 || k > S) {
    throw TableError(ErrorKind::OutOfRange, "need m, n >= 1 and 0 <= k <= S");
  }
  const BigInt favourable = compositions(k, n) * compositions(S - k, (m - 1) * n);
  return Rational(favourable, compositions(S, m * n));
}

ExpectedMoments expected_moments(std::int64_t m, std::int64_t n, std::int64_t S) {
  if (m < 1 || n < 1 || S < 1) throw TableError(ErrorKind::OutOfRange, "need m, n, S >= 1");
  const BigInt M(m), N(n), MN(m * n), TwoS(2 * S);
  ExpectedMoments out;
  out.mu2 = Rational(N * (M - 1), MN + 1);
  out.nu2 = Rational(M * (N - 1), MN + 1);
  out.mu3 = Rational(N * (M - 1) * (M - 2) * (MN + TwoS), M * (MN + 1) * (MN + 2));
  out.nu3 = Rational(M * (N - 1) * (N - 2) * (MN + TwoS), N * (MN + 1) * (MN + 2));
  return out;
}

}  // namespace tablecount
