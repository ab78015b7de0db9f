#include "tablecount/numeric.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "tablecount/errors.hpp"

namespace tablecount {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SumMismatch: return "SumMismatch";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::EmptyMargin: return "EmptyMargin";
    case ErrorKind::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorKind::ZeroTotal: return "ZeroTotal";
    case ErrorKind::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorKind::MemoryGuardExceeded: return "MemoryGuardExceeded";
    case ErrorKind::EmptyClass: return "EmptyClass";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InconsistentSemiregular: return "InconsistentSemiregular";
    case ErrorKind::AlphabetMissingZeroOne: return "AlphabetMissingZeroOne";
    case ErrorKind::UndefinedMoment: return "UndefinedMoment";
    case ErrorKind::NotApplicable: return "NotApplicable";
    case ErrorKind::SpecShapeMismatch: return "SpecShapeMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::string to_decimal(const BigInt& value) { return value.str(); }

long double log_of(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<long double>::infinity();
  const auto bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 128) return std::log(value.convert_to<long double>());
  // Keep the top 128 bits and add back the shifted-out power of two.
  const auto shift = bits - 128;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<long double>()) +
         static_cast<long double>(shift) * std::log(2.0L);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

BigInt falling_factorial(std::int64_t x, int k) {
  BigInt result = 1;
  for (int i = 0; i < k; ++i) result *= (x - i);
  return result;
}

BigInt factorial(std::int64_t x) {
  if (x < 0) throw TableError(ErrorKind::OutOfRange, "factorial of negative number");
  BigInt result = 1;
  for (std::int64_t i = 2; i <= x; ++i) result *= i;
  return result;
}

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    result *= (n - k + i);
    result /= i;
  }
  return result;
}

BigInt compositions(std::int64_t total, std::int64_t parts) {
  if (total < 0 || parts < 0) return 0;
  if (parts == 0) return total == 0 ? 1 : 0;
  return binomial(total + parts - 1, total);
}

namespace {

constexpr std::int64_t kExactLogLimit = 1'000'000;

// Append-only table of ln(k!) as cumulative long-double sums.
class LogFactorialTable {
 public:
  long double get(std::int64_t x) {
    {
      std::shared_lock lock(mutex_);
      if (x < static_cast<std::int64_t>(table_.size())) return table_[x];
    }
    std::unique_lock lock(mutex_);
    if (table_.empty()) table_.push_back(0.0L);
    std::int64_t target = std::max<std::int64_t>(x + 1, 2 * static_cast<std::int64_t>(table_.size()));
    target = std::min(target, kExactLogLimit + 1);
    table_.reserve(static_cast<std::size_t>(target));
    for (auto k = static_cast<std::int64_t>(table_.size()); k < target; ++k) {
      table_.push_back(table_.back() + std::log(static_cast<long double>(k)));
    }
    return table_[x];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<long double> table_;
};

LogFactorialTable& log_factorial_table() {
  static LogFactorialTable table;
  return table;
}

}  // namespace

long double log_factorial(std::int64_t x) {
  if (x < 0) throw TableError(ErrorKind::OutOfRange, "log_factorial of negative number");
  if (x <= 1) return 0.0;
  if (x <= kExactLogLimit) return log_factorial_table().get(x);
  return std::lgamma(static_cast<long double>(x) + 1.0L);
}

long double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return -std::numeric_limits<long double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace tablecount
