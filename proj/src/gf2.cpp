#include "steerkit/gf2.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace steerkit::gf2 {

BitVector::BitVector(std::size_t len) : words_((len + 63) / 64, 0ULL), len_(len) {}

BitVector BitVector::from_string(const std::string &bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1')
      v.set(i, true);
    else if (bits[i] != '0')
      throw std::invalid_argument("bit string may only contain 0 and 1: " + bits);
  }
  return v;
}

BitVector BitVector::unit(std::size_t len, std::size_t i) {
  BitVector v(len);
  v.set(i, true);
  return v;
}

void BitVector::set(std::size_t i, bool v) {
  if (v)
    words_[i >> 6] |= 1ULL << (i & 63);
  else
    words_[i >> 6] &= ~(1ULL << (i & 63));
}

BitVector &BitVector::operator^=(const BitVector &o) {
  if (o.len_ != len_) {
    std::stringstream ss;
    ss << "bit vector length mismatch: " << len_ << " vs " << o.len_;
    throw std::invalid_argument(ss.str());
  }
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
  return *this;
}

BitVector BitVector::operator^(const BitVector &o) const {
  BitVector r = *this;
  r ^= o;
  return r;
}

bool BitVector::operator==(const BitVector &o) const {
  return len_ == o.len_ && words_ == o.words_;
}

bool BitVector::dot(const BitVector &o) const {
  if (o.len_ != len_) throw std::invalid_argument("bit vector length mismatch in dot");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & o.words_[w];
  return std::popcount(acc) & 1;
}

std::size_t BitVector::weight() const {
  std::size_t c = 0;
  for (auto w : words_) c += std::popcount(w);
  return c;
}

bool BitVector::is_zero() const {
  for (auto w : words_)
    if (w) return false;
  return true;
}

std::size_t BitVector::first_one() const {
  for (std::size_t w = 0; w < words_.size(); ++w)
    if (words_[w]) return w * 64 + std::countr_zero(words_[w]);
  return len_;
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : data_(rows, BitVector(cols)), rows_(rows), cols_(cols) {}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector> &rows, std::size_t cols) {
  BitMatrix m(0, cols);
  for (const auto &r : rows) m.append_row(r);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows) {
  if (rows.empty()) return BitMatrix();
  BitMatrix m(0, rows[0].size());
  for (const auto &r : rows) m.append_row(BitVector::from_string(r));
  return m;
}

BitVector BitMatrix::column(std::size_t c) const {
  BitVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (get(r, c)) v.set(r, true);
  return v;
}

void BitMatrix::append_row(const BitVector &r) {
  if (r.size() != cols_) {
    std::stringstream ss;
    ss << "row of length " << r.size() << " appended to matrix with " << cols_ << " columns";
    throw std::invalid_argument(ss.str());
  }
  data_.push_back(r);
  ++rows_;
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r, true);
  return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix &o) const {
  if (cols_ != o.rows_) {
    std::stringstream ss;
    ss << "matrix product shape mismatch: " << rows_ << "x" << cols_ << " * " << o.rows_ << "x"
       << o.cols_;
    throw std::invalid_argument(ss.str());
  }
  BitMatrix p(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k)
      if (get(r, k)) p.data_[r] ^= o.data_[k];
  return p;
}

BitMatrix BitMatrix::operator+(const BitMatrix &o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum shape mismatch");
  BitMatrix s = *this;
  for (std::size_t r = 0; r < rows_; ++r) s.data_[r] ^= o.data_[r];
  return s;
}

BitVector BitMatrix::operator*(const BitVector &v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
  BitVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (data_[r].dot(v)) out.set(r, true);
  return out;
}

BitVector BitMatrix::left_multiply(const BitVector &v) const {
  if (v.size() != rows_) throw std::invalid_argument("vector-matrix shape mismatch");
  BitVector out(cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    if (v.get(r)) out ^= data_[r];
  return out;
}

bool BitMatrix::operator==(const BitMatrix &o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool BitMatrix::is_zero() const {
  for (const auto &r : data_)
    if (!r.is_zero()) return false;
  return true;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_; ++r) {
    s += data_[r].to_string();
    if (r + 1 < rows_) s += '\n';
  }
  return s;
}

BitMatrix outer(const BitVector &u, const BitVector &v) {
  BitMatrix m(u.size(), v.size());
  for (std::size_t r = 0; r < u.size(); ++r)
    if (u.get(r)) m.row(r) = v;
  return m;
}

RowReduction row_reduce(const BitMatrix &m) {
  RowReduction out;
  out.reduced = m;
  BitMatrix &a = out.reduced;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && !a.get(p, c)) ++p;
    if (p == a.rows()) continue;
    std::swap(a.row(p), a.row(r));
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (i != r && a.get(i, c)) a.row(i) ^= a.row(r);
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t rank(const BitMatrix &m) { return row_reduce(m).rank; }

std::vector<BitVector> right_null_space(const BitMatrix &m) {
  auto rr = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : rr.pivots) is_pivot[p] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f, true);
    for (std::size_t i = 0; i < rr.rank; ++i)
      if (rr.reduced.get(i, f)) v.set(rr.pivots[i], true);
    basis.push_back(v);
  }
  return basis;
}

std::vector<BitVector> left_null_space(const BitMatrix &m) { return right_null_space(m.transpose()); }

std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b) {
  if (b.size() != m.rows()) {
    std::stringstream ss;
    ss << "solve: right-hand side has length " << b.size() << " but matrix has " << m.rows()
       << " rows";
    throw std::invalid_argument(ss.str());
  }
  // augmented [m | b]
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, m.cols(), b.get(r));
  }
  auto rr = row_reduce(aug);
  BitVector x(m.cols());
  for (std::size_t i = 0; i < rr.rank; ++i) {
    if (rr.pivots[i] == m.cols()) return std::nullopt;
    x.set(rr.pivots[i], rr.reduced.get(i, m.cols()));
  }
  return x;
}

std::optional<BitMatrix> inverse(const BitMatrix &m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  BitMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, n + r, true);
  }
  auto rr = row_reduce(aug);
  if (rr.rank < n || rr.pivots[n - 1] >= n) return std::nullopt;
  BitMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, rr.reduced.get(r, n + c));
  return inv;
}

bool in_row_space(const BitMatrix &m, const BitVector &v) {
  BitMatrix ext = m;
  ext.append_row(v);
  return rank(ext) == rank(m);
}

}  // namespace steerkit::gf2
