#pragma once

#include <algorithm>
#include <optional>

#include "order3/bits.hpp"

// Subspaces of F2^n held in reduced row-echelon form. The representation is
// canonical: two subspaces are equal iff their basis lists are identical,
// so structural comparison replaces rank computations everywhere downstream.

namespace order3 {

class Subspace {
 public:
  Subspace() : ambient_(0) {}
  explicit Subspace(uint32_t ambient) : ambient_(ambient) {}

  static Subspace zero(uint32_t ambient) { return Subspace(ambient); }

  static Subspace full(uint32_t ambient) {
    std::vector<BitVector> b;
    b.reserve(ambient);
    for (uint32_t i = 0; i < ambient; ++i) b.push_back(BitVector::unit(ambient, i));
    Subspace s(ambient);
    s.basis_ = std::move(b);
    return s;
  }

  static Subspace span(uint32_t ambient, const std::vector<BitVector>& vecs) {
    Subspace s(ambient);
    for (const auto& v : vecs) {
      if (v.size() != ambient) throw error("span: ambient dimension mismatch");
      s.insert(v);
    }
    return s;
  }

  static Subspace of_vector(const BitVector& v) {
    Subspace s(v.size());
    s.insert(v);
    return s;
  }

  // Row space of a matrix.
  static Subspace row_space(const BitMatrix& m) {
    Subspace s(m.cols());
    for (uint32_t i = 0; i < m.rows(); ++i) s.insert(m.row(i));
    return s;
  }

  uint32_t ambient() const { return ambient_; }
  uint32_t dim() const { return static_cast<uint32_t>(basis_.size()); }
  const std::vector<BitVector>& basis() const { return basis_; }

  // Reduce v against the basis; returns the residue (zero iff v is contained).
  BitVector reduce(BitVector v) const {
    for (const auto& b : basis_) {
      uint32_t p = b.leading();
      if (p < v.size() && v.get(p)) v ^= b;
    }
    return v;
  }

  bool contains(const BitVector& v) const {
    if (v.size() != ambient_) throw error("contains: ambient dimension mismatch");
    return reduce(v).zero();
  }

  bool contains(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw error("contains: ambient dimension mismatch");
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  Subspace sum(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw error("sum: ambient dimension mismatch");
    Subspace s = *this;
    for (const auto& b : o.basis_) s.insert(b);
    return s;
  }

  // Zassenhaus: row-reduce [A|A; B|0]; rows with zero left half carry the
  // intersection in their right half.
  Subspace meet(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw error("meet: ambient dimension mismatch");
    uint32_t n = ambient_;
    uint32_t rows = dim() + o.dim();
    if (rows == 0) return Subspace(n);
    BitMatrix m(rows, 2 * n);
    uint32_t r = 0;
    for (const auto& b : basis_) {
      for (uint32_t j = 0; j < n; ++j)
        if (b.get(j)) {
          m.set(r, j, true);
          m.set(r, n + j, true);
        }
      ++r;
    }
    for (const auto& b : o.basis_) {
      for (uint32_t j = 0; j < n; ++j)
        if (b.get(j)) m.set(r, j, true);
      ++r;
    }
    BitMatrix red = rref(m).mat;
    Subspace out(n);
    for (uint32_t i = 0; i < rows; ++i) {
      bool left_zero = true;
      for (uint32_t j = 0; j < n && left_zero; ++j)
        if (red.get(i, j)) left_zero = false;
      if (!left_zero) continue;
      BitVector v(n);
      for (uint32_t j = 0; j < n; ++j)
        if (red.get(i, n + j)) v.set(j, true);
      if (!v.zero()) out.insert(v);
    }
    return out;
  }

  // Image under a matrix acting on row vectors.
  Subspace apply(const BitMatrix& m) const {
    if (m.rows() != ambient_) throw error("apply: ambient dimension mismatch");
    Subspace out(m.cols());
    for (const auto& b : basis_) out.insert(m.apply(b));
    return out;
  }

  // All nonzero vectors; guarded, intended for desk-scale enumeration.
  std::vector<BitVector> vectors() const {
    if (dim() > 24) throw error("vectors(): subspace too large to enumerate");
    std::vector<BitVector> out;
    uint64_t total = uint64_t(1) << dim();
    out.reserve(total - 1);
    for (uint64_t mask = 1; mask < total; ++mask) {
      BitVector v(ambient_);
      uint64_t m = mask;
      while (m) {
        uint32_t k = static_cast<uint32_t>(std::countr_zero(m));
        m &= m - 1;
        v ^= basis_[k];
      }
      out.push_back(v);
    }
    return out;
  }

  BitMatrix basis_matrix() const {
    BitMatrix m(std::max<uint32_t>(dim(), 1), ambient_);
    for (uint32_t i = 0; i < dim(); ++i) m.set_row(i, basis_[i]);
    return m;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.basis_ < b.basis_;
  }

  size_t hash() const {
    uint64_t h = detail::mix64(ambient_);
    for (const auto& b : basis_) h = detail::mix64(h ^ b.hash());
    return static_cast<size_t>(h);
  }

 private:
  // Insert keeping RREF shape: strictly increasing pivots, each pivot column
  // cleared in all other rows.
  void insert(BitVector v) {
    v = reduce(std::move(v));
    if (v.zero()) return;
    uint32_t p = v.leading();
    for (auto& b : basis_)
      if (b.get(p)) b ^= v;
    auto it = std::upper_bound(basis_.begin(), basis_.end(), v,
                               [](const BitVector& a, const BitVector& b) {
                                 return a.leading() < b.leading();
                               });
    basis_.insert(it, std::move(v));
  }

  uint32_t ambient_;
  std::vector<BitVector> basis_;
};

struct SubspaceHash {
  size_t operator()(const Subspace& s) const { return s.hash(); }
};

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) { return a.sum(b); }
inline Subspace subspace_meet(const Subspace& a, const Subspace& b) { return a.meet(b); }

// {v : v*m = 0}. With the row-vector action this is the nullspace of the
// transposed matrix.
inline Subspace kernel(const BitMatrix& m) {
  uint32_t n = m.rows();
  BitMatrix t = m.transpose();
  RrefResult r = rref(t);
  // pivot columns of the reduced transpose
  std::vector<int> pivot_row(n, -1);
  std::vector<uint32_t> pivots;
  uint32_t pr = 0;
  for (uint32_t c = 0; c < n && pr < r.rank; ++c) {
    if (r.mat.get(pr, c)) {
      pivot_row[c] = static_cast<int>(pr);
      pivots.push_back(c);
      ++pr;
    }
  }
  Subspace out(n);
  std::vector<BitVector> basis;
  for (uint32_t c = 0; c < n; ++c) {
    if (pivot_row[c] >= 0) continue;
    BitVector v(n);
    v.set(c, true);
    for (uint32_t k = 0; k < pivots.size(); ++k)
      if (r.mat.get(k, c)) v.set(pivots[k], true);
    basis.push_back(v);
  }
  return Subspace::span(n, basis);
}

// Row space of m; realizes [V,d] as image(d + I).
inline Subspace image(const BitMatrix& m) { return Subspace::row_space(m); }

}  // namespace order3
