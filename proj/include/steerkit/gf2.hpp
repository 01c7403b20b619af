#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace steerkit::gf2 {

class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t len);
  static BitVector from_string(const std::string &bits);
  static BitVector unit(std::size_t len, std::size_t i);

  std::size_t size() const { return len_; }
  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }
  void set(std::size_t i, bool v);
  void flip(std::size_t i) { words_[i >> 6] ^= 1ULL << (i & 63); }

  BitVector &operator^=(const BitVector &o);
  BitVector operator^(const BitVector &o) const;
  bool operator==(const BitVector &o) const;
  bool operator!=(const BitVector &o) const { return !(*this == o); }

  bool dot(const BitVector &o) const;
  std::size_t weight() const;
  bool is_zero() const;
  // first set index, or size() when zero
  std::size_t first_one() const;

  std::string to_string() const;
  const std::vector<std::uint64_t> &words() const { return words_; }
  std::vector<std::uint64_t> &words() { return words_; }

private:
  std::vector<std::uint64_t> words_;
  std::size_t len_ = 0;
};

class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector> &rows, std::size_t cols);
  static BitMatrix from_strings(const std::vector<std::string> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return data_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v) { data_[r].set(c, v); }
  const BitVector &row(std::size_t r) const { return data_[r]; }
  BitVector &row(std::size_t r) { return data_[r]; }
  BitVector column(std::size_t c) const;
  void append_row(const BitVector &r);

  BitMatrix transpose() const;
  BitMatrix operator*(const BitMatrix &o) const;
  BitMatrix operator+(const BitMatrix &o) const;
  BitVector operator*(const BitVector &v) const;  // M v
  BitVector left_multiply(const BitVector &v) const;  // v^T M
  bool operator==(const BitMatrix &o) const;
  bool is_zero() const;

  std::string to_string() const;

private:
  std::vector<BitVector> data_;
  std::size_t rows_ = 0, cols_ = 0;
};

BitMatrix outer(const BitVector &u, const BitVector &v);

struct RowReduction {
  BitMatrix reduced;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RowReduction row_reduce(const BitMatrix &m);
std::size_t rank(const BitMatrix &m);
std::vector<BitVector> right_null_space(const BitMatrix &m);
std::vector<BitVector> left_null_space(const BitMatrix &m);
// m x = b; nullopt when b is not in the column span of m
std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b);
std::optional<BitMatrix> inverse(const BitMatrix &m);
bool in_row_space(const BitMatrix &m, const BitVector &v);

}  // namespace steerkit::gf2
