#pragma once

// Shared transition generator for the column-by-column counting DP.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tablecount/exact.hpp"

namespace tablecount::detail {

using State = std::vector<Degree>;

struct StateHash {
  std::size_t operator()(const State& state) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Degree v : state) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct Group {
  Degree value;
  std::int64_t size;
};

/// Drops zeros and sorts descending.
inline State canonical(State state) {
  state.erase(std::remove(state.begin(), state.end(), Degree{0}), state.end());
  std::sort(state.begin(), state.end(), std::greater<>());
  return state;
}

/// Run-length groups of a canonical state.
inline std::vector<Group> group_state(const State& state) {
  std::vector<Group> groups;
  for (Degree v : state) {
    if (!groups.empty() && groups.back().value == v) {
      ++groups.back().size;
    } else {
      groups.push_back({v, 1});
    }
  }
  return groups;
}

/// How many rows of one group receive each entry value.
struct ValueCount {
  Degree value;
  std::int64_t rows;
};
using GroupChoice = std::vector<ValueCount>;

/// Enumerates every way to place a column sum over grouped residual rows with
/// entries from the alphabet. For each, calls
/// visit(next_state, multiplicity, choices) where multiplicity counts the
/// row-level assignments collapsed into the grouped choice.
class TransitionGenerator {
 public:
  TransitionGenerator(const EntryAlphabet& alphabet, const std::vector<Group>& groups)
      : alphabet_(alphabet), groups_(groups), choices_(groups.size()) {
    const auto cap = alphabet.max_member();
    capacity_.assign(groups.size() + 1, 0);
    for (std::size_t g = groups.size(); g-- > 0;) {
      const Degree per_row = cap ? std::min(*cap, groups[g].value) : groups[g].value;
      capacity_[g] = capacity_[g + 1] + per_row * groups[g].size;
    }
    allowed_.reserve(groups.size());
    for (const auto& group : groups) {
      auto values = alphabet.members_up_to(group.value);
      std::reverse(values.begin(), values.end());  // descending, 0 last
      allowed_.push_back(std::move(values));
    }
  }

  template <typename Visit>
  void run(Degree column_sum, Visit&& visit) {
    next_.clear();
    if (column_sum > capacity_[0]) return;
    walk_group(0, column_sum, BigInt(1), visit);
  }

 private:
  template <typename Visit>
  void walk_group(std::size_t g, Degree remaining, const BigInt& weight, Visit& visit) {
    if (g == groups_.size()) {
      if (remaining == 0) visit(canonical(next_), weight, choices_);
      return;
    }
    if (remaining > capacity_[g]) return;
    choices_[g].clear();
    walk_value(g, 0, groups_[g].size, remaining, weight, visit);
  }

  template <typename Visit>
  void walk_value(std::size_t g, std::size_t vi, std::int64_t rows_left, Degree remaining,
                  const BigInt& weight, Visit& visit) {
    const auto& values = allowed_[g];
    const Degree value = values[vi];
    const Degree group_value = groups_[g].value;
    if (value == 0 || vi + 1 == values.size()) {
      // Zero absorbs all rows that are left.
      const std::size_t mark = next_.size();
      choices_[g].push_back({0, rows_left});
      next_.insert(next_.end(), static_cast<std::size_t>(rows_left), group_value);
      walk_group(g + 1, remaining, weight, visit);
      next_.resize(mark);
      choices_[g].pop_back();
      return;
    }
    const std::int64_t max_rows = std::min<std::int64_t>(rows_left, remaining / value);
    BigInt ways = 1;  // binom(rows_left, c)
    for (std::int64_t c = 0; c <= max_rows; ++c) {
      if (c > 0) {
        ways *= (rows_left - c + 1);
        ways /= c;
      }
      const std::size_t mark = next_.size();
      next_.insert(next_.end(), static_cast<std::size_t>(c), group_value - value);
      if (c > 0) choices_[g].push_back({value, c});
      walk_value(g, vi + 1, rows_left - c, remaining - c * value, weight * ways, visit);
      if (c > 0) choices_[g].pop_back();
      next_.resize(mark);
    }
  }

  const EntryAlphabet& alphabet_;
  const std::vector<Group>& groups_;
  std::vector<std::vector<Degree>> allowed_;
  std::vector<Degree> capacity_;
  std::vector<GroupChoice> choices_;
  State next_;
};

}  // namespace tablecount::detail
