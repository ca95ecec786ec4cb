#pragma once

#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Dense bit-packed linear algebra over F2. Vectors and matrices of arbitrary
// dimension are stored as arrays of 64-bit words; everything the classifier
// touches in practice fits in a handful of words per object.

namespace order3 {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a structural guarantee fails; callers treat it as a signal of
// corrupted input rather than a valid outcome.
class corruption_error : public error {
 public:
  using error::error;
};

class cap_error : public error {
 public:
  using error::error;
};

namespace detail {
inline uint32_t words_for(uint32_t bits) { return (bits + 63) / 64; }

inline uint64_t mix64(uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  x ^= x >> 33;
  return x;
}
}  // namespace detail

class BitVector {
 public:
  BitVector() : n_(0) {}
  explicit BitVector(uint32_t n) : n_(n), w_(detail::words_for(n), 0) {}

  static BitVector unit(uint32_t n, uint32_t i) {
    BitVector v(n);
    v.set(i, true);
    return v;
  }

  // Low 64 coordinates from a mask; coordinate i is bit i.
  static BitVector from_mask(uint32_t n, uint64_t mask) {
    if (n > 64) throw error("from_mask: dimension exceeds 64");
    if (n < 64 && (mask >> n) != 0) throw error("from_mask: mask wider than dimension");
    BitVector v(n);
    if (!v.w_.empty()) v.w_[0] = mask;
    return v;
  }

  static BitVector from_words(uint32_t n, const uint64_t* w, size_t count) {
    BitVector v(n);
    if (count != v.w_.size()) throw error("from_words: word count mismatch");
    for (size_t k = 0; k < count; ++k) v.w_[k] = w[k];
    return v;
  }

  static BitVector from_string(std::string_view s) {
    BitVector v(static_cast<uint32_t>(s.size()));
    for (uint32_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1')
        v.set(i, true);
      else if (s[i] != '0')
        throw error("bit string must contain only '0'/'1'");
    }
    return v;
  }

  uint32_t size() const { return n_; }

  bool get(uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void set(uint32_t i, bool b) {
    if (i >= n_) throw error("BitVector index out of range");
    uint64_t m = uint64_t(1) << (i & 63);
    if (b)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }

  bool zero() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }

  int popcount() const {
    int c = 0;
    for (uint64_t w : w_) c += std::popcount(w);
    return c;
  }

  // Index of the first set bit, or size() when zero.
  uint32_t leading() const {
    for (uint32_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return k * 64 + static_cast<uint32_t>(std::countr_zero(w_[k]));
    return n_;
  }

  uint64_t mask() const {
    if (n_ > 64) throw error("mask(): dimension exceeds 64");
    return w_.empty() ? 0 : w_[0];
  }

  BitVector& operator^=(const BitVector& o) {
    if (o.n_ != n_) throw error("BitVector dimension mismatch");
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  // Parity of the coordinatewise product; the standard dot product on F2^n.
  bool dot(const BitVector& o) const {
    if (o.n_ != n_) throw error("BitVector dimension mismatch");
    uint64_t acc = 0;
    for (size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
    return std::popcount(acc) & 1;
  }

  friend bool operator==(const BitVector& a, const BitVector& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }
  friend bool operator!=(const BitVector& a, const BitVector& b) { return !(a == b); }
  friend bool operator<(const BitVector& a, const BitVector& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.w_ < b.w_;
  }

  size_t hash() const {
    uint64_t h = detail::mix64(n_);
    for (uint64_t w : w_) h = detail::mix64(h ^ w);
    return static_cast<size_t>(h);
  }

  std::string str() const {
    std::string s(n_, '0');
    for (uint32_t i = 0; i < n_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  uint32_t n_;
  std::vector<uint64_t> w_;
};

// Matrices act on row vectors from the right: v -> v*M. Row i is the image
// of the i-th unit vector.
class BitMatrix {
 public:
  BitMatrix() : rows_(0), cols_(0), wpr_(0) {}
  BitMatrix(uint32_t rows, uint32_t cols)
      : rows_(rows), cols_(cols), wpr_(detail::words_for(cols)), w_(size_t(rows) * wpr_, 0) {}

  static BitMatrix identity(uint32_t n) {
    BitMatrix m(n, n);
    for (uint32_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  static BitMatrix from_rows(const std::vector<BitVector>& rows) {
    if (rows.empty()) throw error("from_rows: empty");
    BitMatrix m(static_cast<uint32_t>(rows.size()), rows[0].size());
    for (uint32_t i = 0; i < m.rows_; ++i) m.set_row(i, rows[i]);
    return m;
  }

  static BitMatrix from_strings(const std::vector<std::string>& rows) {
    std::vector<BitVector> v;
    v.reserve(rows.size());
    for (const auto& r : rows) v.push_back(BitVector::from_string(r));
    return from_rows(v);
  }

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  bool get(uint32_t i, uint32_t j) const {
    return (w_[size_t(i) * wpr_ + (j >> 6)] >> (j & 63)) & 1;
  }

  void set(uint32_t i, uint32_t j, bool b) {
    if (i >= rows_ || j >= cols_) throw error("BitMatrix index out of range");
    uint64_t m = uint64_t(1) << (j & 63);
    size_t at = size_t(i) * wpr_ + (j >> 6);
    if (b)
      w_[at] |= m;
    else
      w_[at] &= ~m;
  }

  BitVector row(uint32_t i) const {
    return BitVector::from_words(cols_, &w_[size_t(i) * wpr_], wpr_);
  }

  void set_row(uint32_t i, const BitVector& v) {
    if (v.size() != cols_) throw error("set_row: dimension mismatch");
    for (uint32_t k = 0; k < wpr_; ++k) w_[size_t(i) * wpr_ + k] = v.words()[k];
  }

  void xor_row(uint32_t dst, uint32_t src) {
    for (uint32_t k = 0; k < wpr_; ++k)
      w_[size_t(dst) * wpr_ + k] ^= w_[size_t(src) * wpr_ + k];
  }

  void swap_rows(uint32_t a, uint32_t b) {
    if (a == b) return;
    for (uint32_t k = 0; k < wpr_; ++k)
      std::swap(w_[size_t(a) * wpr_ + k], w_[size_t(b) * wpr_ + k]);
  }

  // v * M for a row vector v.
  BitVector apply(const BitVector& v) const {
    if (v.size() != rows_) throw error("apply: dimension mismatch");
    BitVector out(cols_);
    for (uint32_t i = 0; i < rows_; ++i)
      if (v.get(i)) out ^= row(i);
    return out;
  }

  friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols_ != b.rows_) throw error("matrix product: dimension mismatch");
    BitMatrix c(a.rows_, b.cols_);
    for (uint32_t i = 0; i < a.rows_; ++i) {
      for (uint32_t k = 0; k < a.wpr_; ++k) {
        uint64_t bits = a.w_[size_t(i) * a.wpr_ + k];
        while (bits) {
          uint32_t j = k * 64 + static_cast<uint32_t>(std::countr_zero(bits));
          bits &= bits - 1;
          for (uint32_t t = 0; t < c.wpr_; ++t)
            c.w_[size_t(i) * c.wpr_ + t] ^= b.w_[size_t(j) * b.wpr_ + t];
        }
      }
    }
    return c;
  }

  friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw error("matrix sum: dimension mismatch");
    BitMatrix c = a;
    for (size_t k = 0; k < c.w_.size(); ++k) c.w_[k] ^= b.w_[k];
    return c;
  }

  BitMatrix transpose() const {
    BitMatrix t(cols_, rows_);
    for (uint32_t i = 0; i < rows_; ++i)
      for (uint32_t j = 0; j < cols_; ++j)
        if (get(i, j)) t.set(j, i, true);
    return t;
  }

  BitMatrix pow(uint64_t e) const {
    if (!square()) throw error("pow: matrix not square");
    BitMatrix acc = identity(rows_);
    BitMatrix base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (uint32_t i = 0; i < rows_; ++i)
      for (uint32_t j = 0; j < cols_; ++j)
        if (get(i, j) != (i == j)) return false;
    return true;
  }

  bool is_zero() const {
    for (uint64_t w : w_)
      if (w) return false;
    return true;
  }

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.w_ == b.w_;
  }
  friend bool operator!=(const BitMatrix& a, const BitMatrix& b) { return !(a == b); }
  friend bool operator<(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.w_ < b.w_;
  }

  size_t hash() const {
    uint64_t h = detail::mix64((uint64_t(rows_) << 32) | cols_);
    for (uint64_t w : w_) h = detail::mix64(h ^ w);
    return static_cast<size_t>(h);
  }

  const std::vector<uint64_t>& words() const { return w_; }

 private:
  uint32_t rows_, cols_, wpr_;
  std::vector<uint64_t> w_;
};

struct BitVectorHash {
  size_t operator()(const BitVector& v) const { return v.hash(); }
};
struct BitMatrixHash {
  size_t operator()(const BitMatrix& m) const { return m.hash(); }
};

struct RrefResult {
  BitMatrix mat;
  uint32_t rank;
};

inline RrefResult rref(const BitMatrix& m) {
  BitMatrix r = m;
  uint32_t piv = 0;
  for (uint32_t c = 0; c < r.cols() && piv < r.rows(); ++c) {
    uint32_t sel = piv;
    while (sel < r.rows() && !r.get(sel, c)) ++sel;
    if (sel == r.rows()) continue;
    r.swap_rows(piv, sel);
    for (uint32_t i = 0; i < r.rows(); ++i)
      if (i != piv && r.get(i, c)) r.xor_row(i, piv);
    ++piv;
  }
  return {r, piv};
}

inline uint32_t rank(const BitMatrix& m) { return rref(m).rank; }

inline bool invertible(const BitMatrix& m) { return m.square() && rank(m) == m.rows(); }

inline BitMatrix inverse(const BitMatrix& m) {
  if (!m.square()) throw error("inverse: matrix not square");
  uint32_t n = m.rows();
  BitMatrix a = m;
  BitMatrix inv = BitMatrix::identity(n);
  uint32_t piv = 0;
  for (uint32_t c = 0; c < n; ++c) {
    uint32_t sel = piv;
    while (sel < n && !a.get(sel, c)) ++sel;
    if (sel == n) throw error("inverse: matrix is singular");
    a.swap_rows(piv, sel);
    inv.swap_rows(piv, sel);
    for (uint32_t i = 0; i < n; ++i)
      if (i != piv && a.get(i, c)) {
        a.xor_row(i, piv);
        inv.xor_row(i, piv);
      }
    ++piv;
  }
  return inv;
}

// Least k >= 1 with m^k = I. The cap guards against corrupted input; orders in
// scope are tiny.
inline uint64_t element_order(const BitMatrix& m, uint64_t cap = 1000000) {
  if (!invertible(m)) throw error("element_order: matrix not invertible");
  BitMatrix acc = m;
  uint64_t k = 1;
  while (!acc.is_identity()) {
    acc = acc * m;
    ++k;
    if (k > cap) throw cap_error("element_order: cap exceeded");
  }
  return k;
}

// ---- text format ------------------------------------------------------
// First line "rows cols", then one '0'/'1' string per row. Round-trips
// bit-exactly; generator files are sequences of these separated by blank
// lines.

inline std::string to_text(const BitMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (uint32_t i = 0; i < m.rows(); ++i) {
    for (uint32_t j = 0; j < m.cols(); ++j) out += m.get(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

inline BitMatrix parse_matrix(std::istream& in) {
  uint32_t r = 0, c = 0;
  if (!(in >> r >> c)) throw error("matrix text: missing \"rows cols\" header");
  BitMatrix m(r, c);
  for (uint32_t i = 0; i < r; ++i) {
    std::string line;
    if (!(in >> line)) throw error("matrix text: unexpected end of input");
    if (line.size() != c) throw error("matrix text: row width mismatch");
    for (uint32_t j = 0; j < c; ++j) {
      if (line[j] == '1')
        m.set(i, j, true);
      else if (line[j] != '0')
        throw error("matrix text: rows must be '0'/'1' strings");
    }
  }
  return m;
}

inline BitMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

inline std::vector<BitMatrix> parse_matrix_list(std::istream& in) {
  std::vector<BitMatrix> out;
  while (true) {
    in >> std::ws;
    if (!in || in.peek() == EOF) break;
    out.push_back(parse_matrix(in));
  }
  return out;
}

inline std::vector<BitMatrix> parse_matrix_list(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix_list(in);
}

inline std::string to_text(const std::vector<BitMatrix>& ms) {
  std::string out;
  for (size_t i = 0; i < ms.size(); ++i) {
    if (i) out += "\n";
    out += to_text(ms[i]);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const BitMatrix& m) {
  return os << to_text(m);
}

}  // namespace order3
