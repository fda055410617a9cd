#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "primel/normal_form.hpp"

namespace primel {

enum class submodule_relation { equal, strictly_contains, strictly_contained, incomparable };

inline const char* relation_name(submodule_relation r) {
  switch (r) {
    case submodule_relation::equal: return "equal";
    case submodule_relation::strictly_contains: return "strictly_contains";
    case submodule_relation::strictly_contained: return "strictly_contained";
    case submodule_relation::incomparable: return "incomparable";
  }
  return "?";
}

/// Shape of the quotient ambient/S: torsion invariant factors beyond what the
/// ring itself imposes, the free rank, and the two flags the group-scheme
/// computations rely on.
struct cotype_info {
  std::vector<mpz_class> invariant_factors;
  std::size_t free_rank = 0;
  bool is_free_quotient = false;
  bool is_direct_summand = false;
};

/// A finitely generated submodule of k^n in the ring's canonical form: row
/// Hermite form over Z, the Howell-style form obtained from the lifted
/// lattice over Z/N, and reduced row echelon form over Q. Canonical forms are
/// unique, so two submodules are equal as sets iff their matrices are equal.
class submodule {
 public:
  static submodule span(const ring& k, std::size_t ambient, const std::vector<vec>& gens) {
    return submodule(k, ambient, canonical_rows(k, ambient, gens));
  }

  static submodule span(const matrix& gens) {
    return span(gens.base_ring(), gens.cols(), gens.row_list());
  }

  static submodule zero(const ring& k, std::size_t ambient) {
    return submodule(k, ambient, matrix(k, 0, ambient));
  }

  static submodule full(const ring& k, std::size_t ambient) {
    return submodule(k, ambient, matrix::identity(k, ambient));
  }

  const ring& base_ring() const { return ring_; }
  std::size_t ambient_rank() const { return ambient_; }
  const matrix& generators() const { return basis_; }
  std::size_t generator_count() const { return basis_.rows(); }
  bool is_zero() const { return basis_.rows() == 0; }

  friend bool operator==(const submodule& a, const submodule& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const submodule& a, const submodule& b) { return !(a == b); }

  /// Membership by staircase reduction against the canonical rows.
  bool contains(const vec& v) const {
    if (v.size() != ambient_) fail(errc::shape_mismatch, "membership in wrong ambient rank");
    vec w(v);
    for (auto& e : w) e = ring_.reduce(e);
    std::size_t col = 0;
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
      while (col < ambient_ && sgn(basis_.at(r, col)) == 0) ++col;
      if (col == ambient_) break;
      if (sgn(w[col]) != 0) {
        auto q = ring_.divide(w[col], basis_.at(r, col));
        if (!q) return false;
        for (std::size_t j = col; j < ambient_; ++j)
          w[j] = ring_.sub(w[j], ring_.mul(*q, basis_.at(r, j)));
      }
      ++col;
    }
    return is_zero_vec(w);
  }

  bool contains(const submodule& other) const {
    check_compatible(other);
    for (std::size_t i = 0; i < other.basis_.rows(); ++i)
      if (!contains(other.basis_.row(i))) return false;
    return true;
  }

  submodule_relation compare(const submodule& other) const {
    check_compatible(other);
    if (basis_ == other.basis_) return submodule_relation::equal;
    bool ge = contains(other), le = other.contains(*this);
    if (ge && le) return submodule_relation::equal;  // unreachable with canonical forms
    if (ge) return submodule_relation::strictly_contains;
    if (le) return submodule_relation::strictly_contained;
    return submodule_relation::incomparable;
  }

  submodule sum(const submodule& other) const {
    check_compatible(other);
    auto rows = basis_.row_list();
    for (auto& r : other.basis_.row_list()) rows.push_back(r);
    return span(ring_, ambient_, rows);
  }

  /// {v : v in S1 and v in S2}, via the kernel of the stacked generators.
  submodule intersect(const submodule& other) const;

  cotype_info cotype() const {
    cotype_info out;
    const std::size_t n = ambient_;
    switch (ring_.kind()) {
      case ring_kind::rationals: {
        out.free_rank = n - basis_.rows();
        out.is_free_quotient = true;
        out.is_direct_summand = true;
        return out;
      }
      case ring_kind::integers: {
        detail::snf_result_z z = detail::snf(detail::lift(basis_));
        for (const auto& d : detail::snf_diagonal(z.s))
          if (d > 1) out.invariant_factors.push_back(d);
        out.free_rank = n - basis_.rows();
        out.is_free_quotient = out.invariant_factors.empty();
        out.is_direct_summand = out.invariant_factors.empty();
        return out;
      }
      case ring_kind::int_mod: {
        const mpz_class& nn = ring_.modulus();
        detail::zmat lat = detail::with_modulus_rows(detail::lift(basis_), n, nn);
        detail::snf_result_z z = detail::snf(std::move(lat));
        out.is_free_quotient = true;
        out.is_direct_summand = true;
        mpz_class g;
        for (const auto& d : detail::snf_diagonal(z.s)) {
          if (d == nn) {
            ++out.free_rank;
            continue;
          }
          if (d == 1) continue;
          out.invariant_factors.push_back(d);
          out.is_free_quotient = false;
          mpz_class cofactor = nn / d;
          mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), cofactor.get_mpz_t());
          if (g != 1) out.is_direct_summand = false;
        }
        return out;
      }
    }
    fail(errc::internal, "bad ring kind");
  }

  /// Free rank of the submodule itself (defined when it is a free module,
  /// which holds whenever the quotient check below passes).
  std::size_t module_rank() const {
    if (ring_.kind() != ring_kind::int_mod) return basis_.rows();
    const mpz_class& nn = ring_.modulus();
    detail::zmat lat =
        detail::with_modulus_rows(detail::lift(basis_), ambient_, nn);
    detail::snf_result_z z = detail::snf(std::move(lat));
    std::size_t rank = 0;
    for (const auto& d : detail::snf_diagonal(z.s))
      if (d == 1) ++rank;
    return rank;
  }

  /// A single spanning element when the submodule is cyclic, normalized so
  /// its last nonzero coordinate is 1 whenever that coordinate is a unit.
  std::optional<vec> cyclic_generator() const {
    if (basis_.rows() == 0) return std::nullopt;
    if (ring_.kind() != ring_kind::int_mod) {
      if (basis_.rows() != 1) return std::nullopt;
      return normalize_generator(basis_.row(0));
    }
    // Over Z/p^m some canonical row of a cyclic module always spans it.
    for (std::size_t i = 0; i < basis_.rows(); ++i) {
      vec cand = basis_.row(i);
      if (span(ring_, ambient_, {cand}) == *this) return normalize_generator(cand);
    }
    return std::nullopt;
  }

 private:
  submodule(ring k, std::size_t ambient, matrix basis)
      : ring_(std::move(k)), ambient_(ambient), basis_(std::move(basis)) {}

  void check_compatible(const submodule& other) const {
    if (ring_ != other.ring_) fail(errc::ring_mismatch, "submodules over distinct rings");
    if (ambient_ != other.ambient_)
      fail(errc::shape_mismatch, "submodules of distinct ambient rank");
  }

  vec normalize_generator(vec g) const {
    for (std::size_t j = g.size(); j-- > 0;) {
      if (sgn(g[j]) == 0) continue;
      if (ring_.is_unit(g[j])) {
        scalar inv = ring_.inv(g[j]);
        for (auto& e : g) e = ring_.mul(inv, e);
      }
      break;
    }
    return g;
  }

  static matrix canonical_rows(const ring& k, std::size_t ambient, const std::vector<vec>& gens) {
    for (const auto& g : gens)
      if (g.size() != ambient) fail(errc::shape_mismatch, "generator of wrong length");
    switch (k.kind()) {
      case ring_kind::rationals: {
        detail::rref_result rr = detail::rref(matrix::from_rows(k, ambient, gens));
        matrix out(k, rr.pivot_cols.size(), ambient);
        for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
          for (std::size_t j = 0; j < ambient; ++j) out.at(i, j) = rr.r.at(i, j);
        return out;
      }
      case ring_kind::integers: {
        detail::hermite_result h = detail::hermite(detail::lift(matrix::from_rows(k, ambient, gens)));
        detail::zmat rows(h.h.begin(), h.h.begin() + static_cast<std::ptrdiff_t>(h.pivot_cols.size()));
        return detail::lower(k, rows, ambient);
      }
      case ring_kind::int_mod: {
        detail::zmat lat = detail::with_modulus_rows(
            detail::lift(matrix::from_rows(k, ambient, gens)), ambient, k.modulus());
        detail::hermite_result h = detail::hermite(std::move(lat));
        std::vector<vec> keep;
        for (std::size_t i = 0; i < h.pivot_cols.size(); ++i) {
          vec row(ambient);
          bool nonzero = false;
          for (std::size_t j = 0; j < ambient; ++j) {
            row[j] = k.from_mpz(h.h[i][j]);
            nonzero = nonzero || sgn(row[j]) != 0;
          }
          if (nonzero) keep.push_back(std::move(row));
        }
        return matrix::from_rows(k, ambient, keep);
      }
    }
    fail(errc::internal, "bad ring kind");
  }

  ring ring_;
  std::size_t ambient_;
  matrix basis_;
};

/// Left kernel {v : v*M = 0}, complete and in canonical form.
inline submodule kernel(const matrix& m) {
  const ring& k = m.base_ring();
  switch (k.kind()) {
    case ring_kind::rationals: {
      detail::rref_result rr = detail::rref(m.transpose());
      // Rows of M with no pivot in rref(M^T) give the usual nullspace basis.
      std::vector<bool> is_pivot(m.rows(), false);
      for (std::size_t c : rr.pivot_cols) is_pivot[c] = true;
      std::vector<vec> gens;
      for (std::size_t free = 0; free < m.rows(); ++free) {
        if (is_pivot[free]) continue;
        vec v(m.rows(), scalar(0));
        v[free] = k.one();
        for (std::size_t r = 0; r < rr.pivot_cols.size(); ++r)
          v[rr.pivot_cols[r]] = k.neg(rr.r.at(r, free));
        gens.push_back(std::move(v));
      }
      return submodule::span(k, m.rows(), gens);
    }
    case ring_kind::integers: {
      detail::hermite_result h = detail::hermite(detail::lift(m));
      std::vector<vec> gens;
      for (std::size_t i = h.pivot_cols.size(); i < m.rows(); ++i) {
        vec v(m.rows());
        for (std::size_t j = 0; j < m.rows(); ++j) v[j] = k.from_mpz(h.u[i][j]);
        gens.push_back(std::move(v));
      }
      return submodule::span(k, m.rows(), gens);
    }
    case ring_kind::int_mod: {
      // v*M = 0 over Z/N iff (v | w) * [M ; N*I] = 0 over Z for some w.
      detail::zmat stacked = detail::lift(m);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        detail::zrow row(m.cols(), 0);
        row[j] = k.modulus();
        stacked.push_back(std::move(row));
      }
      detail::hermite_result h = detail::hermite(std::move(stacked));
      std::vector<vec> gens;
      for (std::size_t i = h.pivot_cols.size(); i < m.rows() + m.cols(); ++i) {
        vec v(m.rows());
        for (std::size_t j = 0; j < m.rows(); ++j) v[j] = k.from_mpz(h.u[i][j]);
        gens.push_back(std::move(v));
      }
      return submodule::span(k, m.rows(), gens);
    }
  }
  fail(errc::internal, "bad ring kind");
}

inline submodule submodule::intersect(const submodule& other) const {
  check_compatible(other);
  // kernel of the stacked generators gives (a | b) with a*S1 + b*S2 = 0, so
  // a*S1 = -(b*S2) lies in both modules, and every common element arises so.
  submodule ker = kernel(matrix::vstack(basis_, other.basis_));
  std::vector<vec> gens;
  for (std::size_t i = 0; i < ker.generator_count(); ++i) {
    vec ab = ker.generators().row(i);
    vec a(ab.begin(), ab.begin() + static_cast<std::ptrdiff_t>(basis_.rows()));
    gens.push_back(mul_vec(ring_, a, basis_));
  }
  return span(ring_, ambient_, gens);
}

/// One solution of x*M = b, if any.
inline std::optional<vec> solve_left(const matrix& m, const vec& b);

/// Factorization of a fixed M supporting repeated x*M = b solves and the
/// kernel of the same map.
class linear_solver {
 public:
  explicit linear_solver(const matrix& m) : ring_(m.base_ring()), rows_(m.rows()), cols_(m.cols()) {
    switch (ring_.kind()) {
      case ring_kind::rationals: {
        rr_ = detail::rref(m.transpose());
        break;
      }
      case ring_kind::integers: {
        hz_ = detail::hermite(detail::lift(m));
        aux_rows_ = 0;
        break;
      }
      case ring_kind::int_mod: {
        detail::zmat stacked = detail::lift(m);
        for (std::size_t j = 0; j < cols_; ++j) {
          detail::zrow row(cols_, 0);
          row[j] = ring_.modulus();
          stacked.push_back(std::move(row));
        }
        hz_ = detail::hermite(std::move(stacked));
        aux_rows_ = cols_;
        break;
      }
    }
  }

  std::optional<vec> solve(const vec& b) const {
    if (b.size() != cols_) fail(errc::shape_mismatch, "rhs of wrong length");
    if (ring_.kind() == ring_kind::rationals) return solve_rational(b);
    return solve_lattice(b);
  }

 private:
  std::optional<vec> solve_rational(const vec& b) const {
    // rr_ is rref of M^T with transform: U*(M^T) = R. Solve M^T y^T = b^T.
    vec rhs(b);
    vec y(rows_, scalar(0));
    // Apply U to rhs, then read off coordinates on pivot rows.
    vec ub(rr_.u.rows(), scalar(0));
    for (std::size_t i = 0; i < rr_.u.rows(); ++i) {
      scalar acc(0);
      for (std::size_t j = 0; j < rr_.u.cols(); ++j)
        if (sgn(rr_.u.at(i, j)) != 0 && sgn(rhs[j]) != 0) acc += rr_.u.at(i, j) * rhs[j];
      ub[i] = ring_.reduce(acc);
    }
    for (std::size_t r = 0; r < rr_.pivot_cols.size(); ++r) y[rr_.pivot_cols[r]] = ub[r];
    for (std::size_t r = rr_.pivot_cols.size(); r < rr_.u.rows(); ++r)
      if (sgn(ub[r]) != 0) return std::nullopt;
    return y;
  }

  std::optional<vec> solve_lattice(const vec& b) const {
    // hz_: U*M' = H for the (possibly modulus-extended) integer lift M'.
    // Solve y*H = b by the staircase, then x = y*U, dropping aux rows.
    const std::size_t total = rows_ + aux_rows_;
    detail::zrow rem(cols_);
    for (std::size_t j = 0; j < cols_; ++j) rem[j] = b[j].get_num();
    detail::zrow y(total, 0);
    for (std::size_t r = 0; r < hz_.pivot_cols.size(); ++r) {
      std::size_t c = hz_.pivot_cols[r];
      if (rem[c] == 0) continue;
      mpz_class q, rr;
      mpz_tdiv_qr(q.get_mpz_t(), rr.get_mpz_t(), rem[c].get_mpz_t(), hz_.h[r][c].get_mpz_t());
      if (rr != 0) return std::nullopt;
      y[r] = q;
      for (std::size_t j = c; j < cols_; ++j) rem[j] -= q * hz_.h[r][j];
    }
    for (std::size_t j = 0; j < cols_; ++j)
      if (rem[j] != 0) return std::nullopt;
    vec x(rows_);
    for (std::size_t j = 0; j < rows_; ++j) {
      mpz_class acc(0);
      for (std::size_t r = 0; r < hz_.pivot_cols.size(); ++r)
        if (y[r] != 0 && hz_.u[r][j] != 0) acc += y[r] * hz_.u[r][j];
      x[j] = ring_.from_mpz(acc);
    }
    return x;
  }

  ring ring_;
  std::size_t rows_, cols_;
  std::size_t aux_rows_ = 0;
  detail::hermite_result hz_;
  detail::rref_result rr_;
};

inline std::optional<vec> solve_left(const matrix& m, const vec& b) {
  return linear_solver(m).solve(b);
}

/// Canonical span of the images of S's generators under v -> v*M.
inline submodule image_of(const submodule& s, const matrix& m) {
  std::vector<vec> gens;
  for (std::size_t i = 0; i < s.generator_count(); ++i)
    gens.push_back(mul_vec(m.base_ring(), s.generators().row(i), m));
  return submodule::span(m.base_ring(), m.cols(), gens);
}

/// {v : v*M in S}, complete: the kernel of the composite into ambient/S.
inline submodule preimage_of(const submodule& s, const matrix& m) {
  if (s.ambient_rank() != m.cols()) fail(errc::shape_mismatch, "preimage ambient mismatch");
  matrix stacked = matrix::vstack(m, s.generators());
  submodule ker = kernel(stacked);
  std::vector<vec> gens;
  for (std::size_t i = 0; i < ker.generator_count(); ++i) {
    vec row = ker.generators().row(i);
    gens.emplace_back(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(m.rows()));
  }
  return submodule::span(m.base_ring(), m.rows(), gens);
}

/// True when S is a free rank-1 direct summand of its ambient module — the
/// shape Raynaud's theorem prescribes for D_G and J_G.
inline bool is_rank_one_free_summand(const submodule& s) {
  cotype_info ct = s.cotype();
  return ct.invariant_factors.empty() && ct.is_direct_summand &&
         ct.free_rank + 1 == s.ambient_rank();
}

}  // namespace primel
