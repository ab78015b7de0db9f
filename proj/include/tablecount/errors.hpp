#pragma once

#include <stdexcept>
#include <string>

namespace tablecount {

enum class ErrorKind {
  SumMismatch,
  NegativeEntry,
  EmptyMargin,
  UnsupportedOrder,
  ZeroTotal,
  SizeGuardExceeded,
  MemoryGuardExceeded,
  EmptyClass,
  OutOfRange,
  InconsistentSemiregular,
  AlphabetMissingZeroOne,
  UndefinedMoment,
  NotApplicable,
  SpecShapeMismatch,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

class TableError : public std::runtime_error {
 public:
  TableError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  // Guard errors are soft: they can be lifted by configuration.
  bool is_guard() const noexcept {
    return kind_ == ErrorKind::SizeGuardExceeded || kind_ == ErrorKind::MemoryGuardExceeded;
  }

 private:
  ErrorKind kind_;
};

}  // namespace tablecount
