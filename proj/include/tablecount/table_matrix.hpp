#pragma once

#include <cstddef>
#include <vector>

#include "tablecount/margins.hpp"

namespace tablecount {

/// Dense m x n grid of nonnegative integers, row-major.
class TableMatrix {
 public:
  TableMatrix() = default;
  TableMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Throws InvalidInput on ragged or negative input.
  static TableMatrix from_rows(const std::vector<std::vector<Degree>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Degree& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Degree operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Degree>& data() const noexcept { return data_; }

  std::vector<Degree> row_sums() const;
  std::vector<Degree> col_sums() const;
  MarginPair margins() const;

  /// Number of entries equal to `value`.
  std::size_t count_equal(Degree value) const;
  std::vector<std::vector<Degree>> to_rows() const;

  bool operator==(const TableMatrix&) const = default;
  auto operator<=>(const TableMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Degree> data_;
};

}  // namespace tablecount
