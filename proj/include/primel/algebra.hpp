#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "primel/submodule.hpp"

namespace primel {

/// One entry of a sparse structure tensor: coefficient c on e_k.
struct term {
  std::size_t k;
  scalar c;
  friend bool operator==(const term&, const term&) = default;
};

/// e_i * e_j carries coefficient c on e_k.
struct mult_term {
  std::size_t i, j, k;
  scalar c;
};

namespace detail {

/// Signed accumulator for comparing two sparse expansions without clearing a
/// dense buffer each time.
class accumulator {
 public:
  explicit accumulator(std::size_t n) : buf_(n, scalar(0)) {}

  void add(std::size_t k, const scalar& c) {
    if (sgn(buf_[k]) == 0) touched_.push_back(k);
    buf_[k] += c;
  }

  bool all_zero_and_reset(const ring& r) {
    bool ok = true;
    for (std::size_t k : touched_) {
      if (sgn(r.reduce(buf_[k])) != 0) ok = false;
      buf_[k] = 0;
    }
    touched_.clear();
    return ok;
  }

 private:
  vec buf_;
  std::vector<std::size_t> touched_;
};

}  // namespace detail

/// Finite free commutative k-algebra presented by structure constants on a
/// chosen basis. Construction verifies commutativity, associativity and the
/// unit law; every downstream computation assumes them.
class finite_algebra {
 public:
  static finite_algebra make(ring k, std::size_t rank, std::vector<std::string> labels,
                             const std::vector<mult_term>& terms, vec unit) {
    if (labels.size() != rank) fail(errc::shape_mismatch, "label count != rank");
    if (unit.size() != rank) fail(errc::shape_mismatch, "unit vector length != rank");
    for (auto& e : unit) e = k.reduce(e);
    finite_algebra a;
    a.ring_ = k;
    a.rank_ = rank;
    a.labels_ = std::move(labels);
    a.unit_ = std::move(unit);
    a.table_.assign(rank * rank, {});
    for (const auto& t : terms) {
      if (t.i >= rank || t.j >= rank || t.k >= rank)
        fail(errc::shape_mismatch, "structure tensor index out of range");
      scalar c = k.reduce(t.c);
      if (sgn(c) == 0) continue;
      a.add_term(t.i, t.j, t.k, c);
    }
    a.symmetrize_and_check();
    a.check_unit_law();
    a.check_associativity();
    return a;
  }

  const ring& base_ring() const { return ring_; }
  std::size_t rank() const { return rank_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const vec& unit() const { return unit_; }

  const std::vector<term>& basis_product(std::size_t i, std::size_t j) const {
    return table_[i * rank_ + j];
  }

  /// Sparse tensor with i <= j, ordered, for serialization and comparison.
  std::vector<mult_term> mult_terms() const {
    std::vector<mult_term> out;
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i; j < rank_; ++j)
        for (const auto& t : basis_product(i, j)) out.push_back({i, j, t.k, t.c});
    return out;
  }

  vec multiply(const vec& u, const vec& v) const {
    if (u.size() != rank_ || v.size() != rank_)
      fail(errc::shape_mismatch, "product of vectors of wrong length");
    vec out(rank_, scalar(0));
    for (std::size_t i = 0; i < rank_; ++i) {
      if (sgn(u[i]) == 0) continue;
      for (std::size_t j = 0; j < rank_; ++j) {
        if (sgn(v[j]) == 0) continue;
        scalar uv = u[i] * v[j];
        for (const auto& t : basis_product(i, j)) out[t.k] += uv * t.c;
      }
    }
    for (auto& e : out) e = ring_.reduce(e);
    return out;
  }

  /// Matrix of f -> u*f acting on row coordinates (apply as f * M).
  matrix multiplication_operator(const vec& u) const {
    matrix m(ring_, rank_, rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      for (std::size_t a = 0; a < rank_; ++a) {
        if (sgn(u[a]) == 0) continue;
        for (const auto& t : basis_product(a, i)) m.at(i, t.k) = ring_.add(m.at(i, t.k), ring_.mul(u[a], t.c));
      }
    }
    return m;
  }

  bool same_structure_as(const finite_algebra& other) const {
    return ring_ == other.ring_ && rank_ == other.rank_ && unit_ == other.unit_ &&
           table_ == other.table_;
  }

  /// Human form of an element in the basis labels, e.g. "1+x+x^2".
  std::string format_element(const vec& v) const {
    std::string out;
    for (std::size_t i = 0; i < rank_; ++i) {
      if (sgn(v[i]) == 0) continue;
      std::string coeff = ring_.display(v[i]);
      std::string piece;
      if (labels_[i] == "1") {
        piece = coeff;
      } else if (coeff == "1") {
        piece = labels_[i];
      } else if (coeff == "-1") {
        piece = "-" + labels_[i];
      } else {
        piece = coeff + "*" + labels_[i];
      }
      if (out.empty())
        out = piece;
      else if (!piece.empty() && piece[0] == '-')
        out += piece;
      else
        out += "+" + piece;
    }
    return out.empty() ? "0" : out;
  }

 private:
  void add_term(std::size_t i, std::size_t j, std::size_t k, const scalar& c) {
    auto& row = table_[i * rank_ + j];
    for (auto& t : row)
      if (t.k == k) {
        t.c = ring_.add(t.c, c);
        return;
      }
    row.push_back({k, c});
  }

  static void sort_and_prune(std::vector<term>& row) {
    std::erase_if(row, [](const term& t) { return sgn(t.c) == 0; });
    std::sort(row.begin(), row.end(), [](const term& a, const term& b) { return a.k < b.k; });
  }

  void symmetrize_and_check() {
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j <= i; ++j) {
        auto& lo = table_[j * rank_ + i];
        auto& hi = table_[i * rank_ + j];
        sort_and_prune(lo);
        sort_and_prune(hi);
        if (i == j) continue;
        if (lo.empty() && !hi.empty()) {
          lo = hi;
        } else if (hi.empty() && !lo.empty()) {
          hi = lo;
        } else if (lo != hi) {
          fail(errc::non_commutative, "e_" + std::to_string(i) + "*e_" + std::to_string(j) +
                                          " differs from the transposed entry");
        }
      }
  }

  void check_unit_law() {
    for (std::size_t i = 0; i < rank_; ++i) {
      vec e = unit_vec(ring_, rank_, i);
      if (multiply(unit_, e) != e)
        fail(errc::bad_unit, "1*e_" + std::to_string(i) + " != e_" + std::to_string(i));
    }
  }

  void check_associativity() {
    detail::accumulator acc(rank_);
    auto expand = [&](std::size_t a, std::size_t b, std::size_t c, int sign) {
      // sign * (e_a e_b) e_c
      for (const auto& t : basis_product(a, b))
        for (const auto& s : basis_product(t.k, c))
          acc.add(s.k, sign > 0 ? scalar(t.c * s.c) : scalar(-(t.c * s.c)));
    };
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i; j < rank_; ++j)
        for (std::size_t l = j; l < rank_; ++l) {
          expand(i, j, l, +1);
          expand(j, l, i, -1);  // e_i (e_j e_l) = (e_j e_l) e_i by commutativity
          if (!acc.all_zero_and_reset(ring_))
            fail(errc::non_associative, "(e_i e_j) e_l != e_i (e_j e_l) at (" +
                                            std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(l) + ")");
          expand(i, l, j, +1);
          expand(i, j, l, -1);
          if (!acc.all_zero_and_reset(ring_))
            fail(errc::non_associative, "(e_i e_l) e_j != (e_i e_j) e_l at (" +
                                            std::to_string(i) + "," + std::to_string(j) + "," +
                                            std::to_string(l) + ")");
        }
  }

  ring ring_;
  std::size_t rank_ = 0;
  std::vector<std::string> labels_;
  vec unit_;
  std::vector<std::vector<term>> table_;
};

/// Counit-equipped algebra: the coordinate ring of a pointed scheme. The
/// counit must be an algebra map onto k.
class augmented_algebra {
 public:
  static augmented_algebra make(finite_algebra alg, vec counit) {
    if (counit.size() != alg.rank()) fail(errc::shape_mismatch, "counit length != rank");
    augmented_algebra out;
    out.alg_ = std::move(alg);
    out.counit_ = std::move(counit);
    const ring& k = out.alg_.base_ring();
    for (auto& e : out.counit_) e = k.reduce(e);
    if (out.counit_value(out.alg_.unit()) != k.one())
      fail(errc::bad_counit, "counit(1) != 1");
    for (std::size_t i = 0; i < out.alg_.rank(); ++i)
      for (std::size_t j = i; j < out.alg_.rank(); ++j) {
        scalar lhs = k.zero();
        for (const auto& t : out.alg_.basis_product(i, j))
          lhs = k.add(lhs, k.mul(t.c, out.counit_[t.k]));
        if (lhs != k.mul(out.counit_[i], out.counit_[j]))
          fail(errc::bad_counit, "counit not multiplicative at (" + std::to_string(i) + "," +
                                     std::to_string(j) + ")");
      }
    return out;
  }

  const finite_algebra& algebra() const { return alg_; }
  const ring& base_ring() const { return alg_.base_ring(); }
  std::size_t rank() const { return alg_.rank(); }
  const vec& counit() const { return counit_; }

  scalar counit_value(const vec& f) const { return dot_vec(alg_.base_ring(), f, counit_); }

  /// ker(counit) as a canonical submodule.
  submodule augmentation_ideal() const {
    matrix m(alg_.base_ring(), alg_.rank(), 1);
    for (std::size_t i = 0; i < alg_.rank(); ++i) m.at(i, 0) = counit_[i];
    return kernel(m);
  }

 private:
  finite_algebra alg_;
  vec counit_;
};

/// A multiplicatively closed submodule of an algebra.
struct ideal {
  submodule carrier;
};

inline bool is_multiplicatively_closed(const finite_algebra& a, const submodule& s) {
  for (std::size_t g = 0; g < s.generator_count(); ++g) {
    vec row = s.generators().row(g);
    for (std::size_t i = 0; i < a.rank(); ++i) {
      if (!s.contains(a.multiply(row, unit_vec(a.base_ring(), a.rank(), i)))) return false;
    }
  }
  return true;
}

/// Smallest ideal containing the given elements: saturate under basis
/// multiplication until the canonical form stops moving.
inline ideal ideal_generated(const finite_algebra& a, const std::vector<vec>& gens) {
  submodule current = submodule::span(a.base_ring(), a.rank(), gens);
  for (;;) {
    std::vector<vec> rows = current.generators().row_list();
    std::vector<vec> next = rows;
    for (const auto& row : rows)
      for (std::size_t i = 0; i < a.rank(); ++i)
        next.push_back(a.multiply(row, unit_vec(a.base_ring(), a.rank(), i)));
    submodule bigger = submodule::span(a.base_ring(), a.rank(), next);
    if (bigger == current) return {current};
    current = bigger;
  }
}

inline ideal ideal_from_submodule(const finite_algebra& a, submodule s) {
  if (!is_multiplicatively_closed(a, s))
    fail(errc::shape_mismatch, "carrier is not multiplicatively closed");
  return {std::move(s)};
}

/// {f : u*f = 0 for all u in I}, via intersected kernels of the
/// multiplication operators of I's generators.
inline submodule annihilator(const finite_algebra& a, const submodule& of) {
  const ring& k = a.base_ring();
  submodule sol = submodule::full(k, a.rank());
  bool first = true;
  for (std::size_t g = 0; g < of.generator_count(); ++g) {
    matrix op = a.multiplication_operator(of.generators().row(g));
    if (first) {
      sol = kernel(op);
      first = false;
    } else {
      matrix restricted = sol.generators().mul(op);
      submodule coeffs = kernel(restricted);
      std::vector<vec> gens;
      for (std::size_t i = 0; i < coeffs.generator_count(); ++i)
        gens.push_back(mul_vec(k, coeffs.generators().row(i), sol.generators()));
      sol = submodule::span(k, a.rank(), gens);
    }
    if (sol.is_zero()) break;
  }
  return sol;
}

inline submodule annihilator(const finite_algebra& a, const ideal& i) {
  return annihilator(a, i.carrier);
}

struct quotient_result {
  finite_algebra algebra;
  matrix projection;             // rank(A) x rank(Q), an algebra hom
  std::vector<std::size_t> kept; // indices of the original basis vectors kept
};

/// A/I with basis the lexicographically first family of original basis
/// vectors whose images span the quotient freely. Requires the quotient to be
/// free over k; otherwise reports the offending invariant factors.
inline quotient_result quotient_algebra(const finite_algebra& a, const ideal& i) {
  const ring& k = a.base_ring();
  const std::size_t n = a.rank();
  const submodule& carrier = i.carrier;
  if (carrier.ambient_rank() != n) fail(errc::shape_mismatch, "ideal of a different algebra");
  cotype_info ct = carrier.cotype();
  if (!ct.is_free_quotient) {
    std::string msg = "quotient has invariant factors (";
    for (std::size_t t = 0; t < ct.invariant_factors.size(); ++t)
      msg += (t ? "," : "") + ct.invariant_factors[t].get_str();
    fail(errc::not_free, msg + ") not explained by the ring");
  }
  const std::size_t t = ct.free_rank;
  std::vector<std::size_t> kept;
  submodule span_so_far = carrier;
  for (std::size_t b = 0; b < n && kept.size() < t; ++b) {
    vec e = unit_vec(k, n, b);
    if (span_so_far.contains(e)) continue;
    kept.push_back(b);
    span_so_far = span_so_far.sum(submodule::span(k, n, {e}));
  }
  if (kept.size() != t || span_so_far != submodule::full(k, n))
    fail(errc::not_free, "no subset of the basis complements the ideal");

  // Reduction to the kept coordinates: solve v = c*E_kept + (ideal element).
  matrix system(k, t + carrier.generator_count(), n);
  for (std::size_t r = 0; r < t; ++r) system.at(r, kept[r]) = k.one();
  for (std::size_t r = 0; r < carrier.generator_count(); ++r)
    for (std::size_t c = 0; c < n; ++c) system.at(t + r, c) = carrier.generators().at(r, c);
  linear_solver solver(system);
  auto reduce = [&](const vec& v) {
    auto x = solver.solve(v);
    if (!x) fail(errc::internal, "quotient reduction failed on a spanning set");
    return vec(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(t));
  };

  matrix projection(k, n, t);
  for (std::size_t b = 0; b < n; ++b) {
    vec coords = reduce(unit_vec(k, n, b));
    for (std::size_t c = 0; c < t; ++c) projection.at(b, c) = coords[c];
  }
  std::vector<mult_term> terms;
  for (std::size_t x = 0; x < t; ++x)
    for (std::size_t y = x; y < t; ++y) {
      vec prod(n, scalar(0));
      for (const auto& tm : a.basis_product(kept[x], kept[y])) prod[tm.k] = tm.c;
      vec coords = reduce(prod);
      for (std::size_t c = 0; c < t; ++c)
        if (sgn(coords[c]) != 0) terms.push_back({x, y, c, coords[c]});
    }
  std::vector<std::string> labels;
  for (std::size_t x : kept) labels.push_back(a.labels()[x]);
  vec unit = mul_vec(k, a.unit(), projection);
  finite_algebra q = finite_algebra::make(k, t, std::move(labels), terms, std::move(unit));
  return {std::move(q), std::move(projection), std::move(kept)};
}

/// k[x]/(x^n - r(x)) for a rewriting vector r = coordinates of x^n on the
/// basis 1, x, ..., x^{n-1}.
inline finite_algebra monogenic_algebra(const ring& k, std::size_t n, const vec& x_power_n,
                                        const std::string& var = "x") {
  if (n == 0) fail(errc::shape_mismatch, "monogenic algebra needs rank >= 1");
  if (x_power_n.size() != n) fail(errc::shape_mismatch, "rewriting vector length != rank");
  std::vector<vec> pow(2 * n - 1);
  for (std::size_t d = 0; d < n; ++d) pow[d] = unit_vec(k, n, d);
  for (std::size_t d = n; d < 2 * n - 1; ++d) {
    const vec& prev = pow[d - 1];
    vec next(n, scalar(0));
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] = prev[i];
    if (sgn(prev[n - 1]) != 0)
      next = add_vec(k, next, scale_vec(k, prev[n - 1], x_power_n));
    pow[d] = std::move(next);
  }
  std::vector<mult_term> terms;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t kk = 0; kk < n; ++kk)
        if (sgn(pow[i + j][kk]) != 0) terms.push_back({i, j, kk, pow[i + j][kk]});
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(i == 0 ? "1" : (i == 1 ? var : var + "^" + std::to_string(i)));
  return finite_algebra::make(k, n, std::move(labels), terms, unit_vec(k, n, 0));
}

inline finite_algebra tensor_product(const finite_algebra& a1, const finite_algebra& a2) {
  const ring& k = a1.base_ring();
  if (k != a2.base_ring()) fail(errc::ring_mismatch, "tensor product over distinct rings");
  const std::size_t n1 = a1.rank(), n2 = a2.rank(), n = n1 * n2;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      labels.push_back(a1.labels()[i] + "\xE2\x8A\x97" + a2.labels()[j]);  // ⊗
  std::vector<mult_term> terms;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      std::size_t i1 = a / n2, i2 = a % n2, j1 = b / n2, j2 = b % n2;
      for (const auto& t1 : a1.basis_product(i1, j1))
        for (const auto& t2 : a2.basis_product(i2, j2))
          terms.push_back({a, b, t1.k * n2 + t2.k, k.mul(t1.c, t2.c)});
    }
  vec unit(n, scalar(0));
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j) unit[i * n2 + j] = k.mul(a1.unit()[i], a2.unit()[j]);
  return finite_algebra::make(k, n, std::move(labels), terms, std::move(unit));
}

inline finite_algebra base_change(const finite_algebra& a, const ring_hom& hom) {
  if (hom.src() != a.base_ring()) fail(errc::ring_mismatch, "hom source != algebra ring");
  std::vector<mult_term> terms;
  for (const auto& t : a.mult_terms()) terms.push_back({t.i, t.j, t.k, hom.apply(t.c)});
  vec unit;
  for (const auto& e : a.unit()) unit.push_back(hom.apply(e));
  return finite_algebra::make(hom.dst(), a.rank(), a.labels(), terms, unit);
}

inline augmented_algebra base_change(const augmented_algebra& a, const ring_hom& hom) {
  vec counit;
  for (const auto& e : a.counit()) counit.push_back(hom.apply(e));
  return augmented_algebra::make(base_change(a.algebra(), hom), counit);
}

/// True iff v -> v*M is a unital algebra homomorphism A -> B.
inline bool is_algebra_hom(const finite_algebra& a, const finite_algebra& b, const matrix& m) {
  if (a.base_ring() != b.base_ring()) fail(errc::ring_mismatch, "hom between distinct rings");
  if (m.rows() != a.rank() || m.cols() != b.rank())
    fail(errc::shape_mismatch, "hom matrix shape != (rank A, rank B)");
  const ring& k = a.base_ring();
  if (mul_vec(k, a.unit(), m) != b.unit()) return false;
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = i; j < a.rank(); ++j) {
      vec prod(a.rank(), scalar(0));
      for (const auto& t : a.basis_product(i, j)) prod[t.k] = t.c;
      vec lhs = mul_vec(k, prod, m);
      vec rhs = b.multiply(m.row(i), m.row(j));
      if (lhs != rhs) return false;
    }
  return true;
}

}  // namespace primel
