// Serial reference counter: top-down recursion with a memo keyed on the
// residual row multiset and the multiset of columns still to fill.

#include <string>
#include <unordered_map>

#include "dp_transitions.hpp"
#include "tablecount/errors.hpp"
#include "tablecount/exact.hpp"

namespace tablecount {

struct CountingMemo::Impl {
  EntryAlphabet alphabet;
  std::size_t state_limit;
  std::unordered_map<detail::State, BigInt, detail::StateHash> memo;

  // Key layout: residual rows, then -1, then remaining columns.
  BigInt count(const detail::State& rows, const detail::State& cols) {
    if (cols.empty()) return rows.empty() ? BigInt(1) : BigInt(0);
    if (rows.empty()) return BigInt(0);

    const auto cap = alphabet.max_member();
    const Degree per_column = cap ? std::min(*cap, cols.front()) : cols.front();
    if (rows.front() > per_column * static_cast<Degree>(cols.size())) return BigInt(0);

    detail::State key = rows;
    key.push_back(-1);
    key.insert(key.end(), cols.begin(), cols.end());
    if (auto it = memo.find(key); it != memo.end()) return it->second;

    const detail::State rest(cols.begin() + 1, cols.end());
    const auto groups = detail::group_state(rows);
    detail::TransitionGenerator gen(alphabet, groups);
    BigInt total = 0;
    gen.run(cols.front(), [&](detail::State&& next, const BigInt& weight, const auto&) {
      total += weight * count(next, rest);
    });

    if (memo.size() >= state_limit) {
      throw TableError(ErrorKind::MemoryGuardExceeded,
                       "memo holds " + std::to_string(memo.size()) + " states (limit " +
                           std::to_string(state_limit) + ")");
    }
    memo.emplace(std::move(key), total);
    return total;
  }
};

CountingMemo::CountingMemo(EntryAlphabet alphabet, std::size_t state_limit)
    : impl_(std::make_unique<Impl>(Impl{std::move(alphabet), state_limit, {}})) {}
CountingMemo::~CountingMemo() = default;
CountingMemo::CountingMemo(CountingMemo&&) noexcept = default;
CountingMemo& CountingMemo::operator=(CountingMemo&&) noexcept = default;

BigInt CountingMemo::count(std::vector<Degree> residual_rows, std::vector<Degree> remaining_cols) {
  return impl_->count(detail::canonical(std::move(residual_rows)),
                      detail::canonical(std::move(remaining_cols)));
}

std::size_t CountingMemo::size() const { return impl_->memo.size(); }

CountResult count_exact_serial(const MarginPair& margins, const EntryAlphabet& alphabet,
                               const GuardLimits& limits) {
  CountingMemo memo(alphabet, limits.override_guards ? std::size_t(-1) : limits.dp_states);
  BigInt count = memo.count(margins.rows(), margins.cols());
  return {std::move(count), memo.size()};
}

}  // namespace tablecount
