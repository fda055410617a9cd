#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "primel/ring.hpp"

namespace primel {

using vec = std::vector<scalar>;

/// Dense matrix with ring-tagged exact entries. Vectors are rows throughout
/// the library: a matrix M of shape (m, n) represents the map v -> v*M from
/// rank-m to rank-n coordinates.
class matrix {
 public:
  matrix() : rows_(0), cols_(0) {}
  matrix(ring r, std::size_t rows, std::size_t cols)
      : ring_(std::move(r)), rows_(rows), cols_(cols), a_(rows * cols, scalar(0)) {}

  static matrix identity(const ring& r, std::size_t n) {
    matrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = r.one();
    return m;
  }

  static matrix from_rows(const ring& r, std::size_t cols, const std::vector<vec>& rows) {
    matrix m(r, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) fail(errc::shape_mismatch, "row length != declared cols");
      for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = r.reduce(rows[i][j]);
    }
    return m;
  }

  const ring& base_ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  scalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const scalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  vec row(std::size_t i) const {
    return vec(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
               a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  std::vector<vec> row_list() const {
    std::vector<vec> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  matrix transpose() const {
    matrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  matrix mul(const matrix& other) const {
    if (ring_ != other.ring_) fail(errc::ring_mismatch, "matrix product over distinct rings");
    if (cols_ != other.rows_) fail(errc::shape_mismatch, "inner dimensions disagree");
    matrix out(ring_, rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const scalar& s = at(i, k);
        if (sgn(s) == 0) continue;
        for (std::size_t j = 0; j < other.cols_; ++j) {
          const scalar& t = other.at(k, j);
          if (sgn(t) == 0) continue;
          out.at(i, j) += s * t;
        }
      }
    for (auto& e : out.a_) e = ring_.reduce(e);
    return out;
  }

  static matrix vstack(const matrix& top, const matrix& bottom) {
    if (top.ring_ != bottom.ring_ || top.cols_ != bottom.cols_)
      fail(errc::shape_mismatch, "vstack of incompatible matrices");
    matrix out(top.ring_, top.rows_ + bottom.rows_, top.cols_);
    for (std::size_t i = 0; i < top.rows_; ++i)
      for (std::size_t j = 0; j < top.cols_; ++j) out.at(i, j) = top.at(i, j);
    for (std::size_t i = 0; i < bottom.rows_; ++i)
      for (std::size_t j = 0; j < top.cols_; ++j) out.at(top.rows_ + i, j) = bottom.at(i, j);
    return out;
  }

  matrix map(const ring_hom& hom) const {
    if (hom.src() != ring_) fail(errc::ring_mismatch, "hom source differs from matrix ring");
    matrix out(hom.dst(), rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = hom.apply(a_[i]);
    return out;
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (sgn(e) != 0) return false;
    return true;
  }

  friend bool operator==(const matrix& a, const matrix& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const matrix& a, const matrix& b) { return !(a == b); }

 private:
  ring ring_;
  std::size_t rows_, cols_;
  std::vector<scalar> a_;
};

inline vec zero_vec(std::size_t n) { return vec(n, scalar(0)); }

inline vec unit_vec(const ring& r, std::size_t n, std::size_t i) {
  vec v(n, scalar(0));
  v[i] = r.one();
  return v;
}

/// v * M for a row vector v of length M.rows().
inline vec mul_vec(const ring& r, const vec& v, const matrix& m) {
  if (v.size() != m.rows()) fail(errc::shape_mismatch, "vector/matrix product shape");
  vec out(m.cols(), scalar(0));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const scalar& t = m.at(i, j);
      if (sgn(t) == 0) continue;
      out[j] += v[i] * t;
    }
  }
  for (auto& e : out) e = r.reduce(e);
  return out;
}

inline vec add_vec(const ring& r, const vec& a, const vec& b) {
  if (a.size() != b.size()) fail(errc::shape_mismatch, "vector sum shape");
  vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.add(a[i], b[i]);
  return out;
}

inline vec sub_vec(const ring& r, const vec& a, const vec& b) {
  if (a.size() != b.size()) fail(errc::shape_mismatch, "vector difference shape");
  vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.sub(a[i], b[i]);
  return out;
}

inline vec scale_vec(const ring& r, const scalar& c, const vec& a) {
  vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = r.mul(c, a[i]);
  return out;
}

inline bool is_zero_vec(const vec& a) {
  for (const auto& e : a)
    if (sgn(e) != 0) return false;
  return true;
}

inline scalar dot_vec(const ring& r, const vec& a, const vec& b) {
  if (a.size() != b.size()) fail(errc::shape_mismatch, "dot product shape");
  scalar acc(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) acc += a[i] * b[i];
  return r.reduce(acc);
}

}  // namespace primel
