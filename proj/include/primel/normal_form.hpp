#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "primel/matrix.hpp"

namespace primel {
namespace detail {

using zrow = std::vector<mpz_class>;
using zmat = std::vector<zrow>;

inline zmat zmat_identity(std::size_t n) {
  zmat m(n, zrow(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline zmat zmat_mul(const zmat& a, const zmat& b) {
  std::size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
  zmat out(m, zrow(n, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (b[t][j] != 0) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

/// Row-style Hermite normal form. Returns H = U*M with U unimodular, H in
/// echelon form with positive pivots and entries above each pivot reduced
/// into [0, pivot).
struct hermite_result {
  zmat h;
  zmat u;
  std::vector<std::size_t> pivot_cols;  // one per nonzero row of h
};

inline hermite_result hermite(zmat m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  zmat u = zmat_identity(rows);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  mpz_class g, p, q, ad, bd, tmp;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (m[i][col] != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(m[piv], m[r]);
      std::swap(u[piv], u[r]);
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      // Unimodular 2x2 combining rows r and i: gcd into row r, zero row i.
      mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), m[r][col].get_mpz_t(),
                 m[i][col].get_mpz_t());
      ad = m[r][col] / g;
      bd = m[i][col] / g;
      for (std::size_t j = 0; j < cols; ++j) {
        tmp = p * m[r][j] + q * m[i][j];
        m[i][j] = ad * m[i][j] - bd * m[r][j];
        m[r][j] = tmp;
      }
      for (std::size_t j = 0; j < rows; ++j) {
        tmp = p * u[r][j] + q * u[i][j];
        u[i][j] = ad * u[i][j] - bd * u[r][j];
        u[r][j] = tmp;
      }
    }
    if (m[r][col] < 0) {
      for (auto& e : m[r]) e = -e;
      for (auto& e : u[r]) e = -e;
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (m[i][col] == 0) continue;
      mpz_fdiv_q(q.get_mpz_t(), m[i][col].get_mpz_t(), m[r][col].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
      for (std::size_t j = 0; j < rows; ++j) u[i][j] -= q * u[r][j];
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(m), std::move(u), std::move(pivots)};
}

/// Inverse of a unimodular integer matrix: its Hermite form is the identity,
/// so the recorded transform is the inverse.
inline zmat unimodular_inverse(const zmat& w) {
  hermite_result h = hermite(w);
  return h.u;
}

/// Smith normal form over Z: returns (U, S, V) with M = U*S*V, U and V
/// unimodular, S diagonal with d_1 | d_2 | ... and nonnegative entries.
struct snf_result_z {
  zmat u, s, v;
};

inline snf_result_z snf(zmat s) {
  const std::size_t rows = s.size();
  const std::size_t cols = rows ? s[0].size() : 0;
  // Accumulate P (row ops) and Q (col ops) with P*M*Q = S, then invert.
  zmat pm = zmat_identity(rows);
  zmat qm = zmat_identity(cols);
  const std::size_t lim = rows < cols ? rows : cols;
  mpz_class g, p, q, ad, bd, tmp;

  // Exact-division fast paths keep already-clean data clean; a gcd dance runs
  // only when it strictly shrinks the pivot, which bounds the clearing loop.
  auto row_gcd_step = [&](std::size_t t, std::size_t i, std::size_t col) {
    if (s[t][col] != 0 && s[i][col] % s[t][col] == 0) {
      mpz_class c = s[i][col] / s[t][col];
      for (std::size_t j = 0; j < cols; ++j) s[i][j] -= c * s[t][j];
      for (std::size_t j = 0; j < rows; ++j) pm[i][j] -= c * pm[t][j];
      return;
    }
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), s[t][col].get_mpz_t(),
               s[i][col].get_mpz_t());
    ad = s[t][col] / g;
    bd = s[i][col] / g;
    for (std::size_t j = 0; j < cols; ++j) {
      tmp = p * s[t][j] + q * s[i][j];
      s[i][j] = ad * s[i][j] - bd * s[t][j];
      s[t][j] = tmp;
    }
    for (std::size_t j = 0; j < rows; ++j) {
      tmp = p * pm[t][j] + q * pm[i][j];
      pm[i][j] = ad * pm[i][j] - bd * pm[t][j];
      pm[t][j] = tmp;
    }
  };
  auto col_gcd_step = [&](std::size_t t, std::size_t j, std::size_t row) {
    if (s[row][t] != 0 && s[row][j] % s[row][t] == 0) {
      mpz_class c = s[row][j] / s[row][t];
      for (std::size_t i = 0; i < rows; ++i) s[i][j] -= c * s[i][t];
      for (std::size_t i = 0; i < cols; ++i) qm[i][j] -= c * qm[i][t];
      return;
    }
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), s[row][t].get_mpz_t(),
               s[row][j].get_mpz_t());
    ad = s[row][t] / g;
    bd = s[row][j] / g;
    for (std::size_t i = 0; i < rows; ++i) {
      tmp = p * s[i][t] + q * s[i][j];
      s[i][j] = ad * s[i][j] - bd * s[i][t];
      s[i][t] = tmp;
    }
    for (std::size_t i = 0; i < cols; ++i) {
      tmp = p * qm[i][t] + q * qm[i][j];
      qm[i][j] = ad * qm[i][j] - bd * qm[i][t];
      qm[i][t] = tmp;
    }
  };

  for (std::size_t t = 0; t < lim; ++t) {
    // Find a pivot in the trailing block.
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = t; i < rows && pi == rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (s[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == rows) break;
    if (pi != t) {
      std::swap(s[pi], s[t]);
      std::swap(pm[pi], pm[t]);
    }
    if (pj != t) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(s[i][pj], s[i][t]);
      for (std::size_t i = 0; i < cols; ++i) std::swap(qm[i][pj], qm[i][t]);
    }
    // Alternate clearing column t and row t until both are clean.
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i)
        if (s[i][t] != 0) {
          row_gcd_step(t, i, t);
          dirty = true;
        }
      bool row_dirty = false;
      for (std::size_t j = t + 1; j < cols; ++j)
        if (s[t][j] != 0) {
          col_gcd_step(t, j, t);
          row_dirty = true;
        }
      if (!row_dirty && !dirty) break;
      if (!row_dirty) break;  // column untouched by the row pass
    }
  }
  // Sign normalization.
  for (std::size_t t = 0; t < lim; ++t)
    if (s[t][t] < 0) {
      for (std::size_t j = 0; j < cols; ++j) s[t][j] = -s[t][j];
      for (std::size_t j = 0; j < rows; ++j) pm[t][j] = -pm[t][j];
    }
  // Push zero diagonal entries to the end.
  for (std::size_t t = 0; t < lim; ++t) {
    if (s[t][t] != 0) continue;
    for (std::size_t i = t + 1; i < lim; ++i)
      if (s[i][i] != 0) {
        std::swap(s[i], s[t]);
        std::swap(pm[i], pm[t]);
        for (std::size_t j = 0; j < rows; ++j) std::swap(s[j][i], s[j][t]);
        for (std::size_t j = 0; j < cols; ++j) std::swap(qm[j][i], qm[j][t]);
        break;
      }
  }
  // Divisibility chain: repair adjacent pairs until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t t = 0; t + 1 < lim; ++t) {
      const mpz_class &a = s[t][t], &b = s[t + 1][t + 1];
      if (a == 0 || b == 0 || b % a == 0) continue;
      // col_t += col_{t+1}, then one gcd dance restores diagonal (g, lcm).
      s[t + 1][t] = b;
      for (std::size_t i = 0; i < cols; ++i) qm[i][t] += qm[i][t + 1];
      row_gcd_step(t, t + 1, t);
      // s[t][t+1] is now a multiple of the new pivot; clear it.
      mpz_class c = s[t][t + 1] / s[t][t];
      if (c != 0) {
        for (std::size_t i = 0; i < rows; ++i) s[i][t + 1] -= c * s[i][t];
        for (std::size_t i = 0; i < cols; ++i) qm[i][t + 1] -= c * qm[i][t];
      }
      if (s[t][t] < 0) {
        for (std::size_t j = 0; j < cols; ++j) s[t][j] = -s[t][j];
        for (std::size_t j = 0; j < rows; ++j) pm[t][j] = -pm[t][j];
      }
      if (s[t + 1][t + 1] < 0) {
        for (std::size_t j = 0; j < cols; ++j) s[t + 1][j] = -s[t + 1][j];
        for (std::size_t j = 0; j < rows; ++j) pm[t + 1][j] = -pm[t + 1][j];
      }
      changed = true;
    }
  }
  return {unimodular_inverse(pm), std::move(s), unimodular_inverse(qm)};
}

inline std::vector<mpz_class> snf_diagonal(const zmat& s) {
  std::vector<mpz_class> d;
  const std::size_t lim = s.empty() ? 0 : (s.size() < s[0].size() ? s.size() : s[0].size());
  for (std::size_t t = 0; t < lim; ++t) d.push_back(s[t][t]);
  return d;
}

/// Lift a matrix over Z or Z/N to integer rows (canonical residues).
inline zmat lift(const matrix& m) {
  zmat out(m.rows(), zrow(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j).get_num();
  return out;
}

inline matrix lower(const ring& r, const zmat& m, std::size_t cols) {
  matrix out(r, m.size(), cols);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = r.from_mpz(m[i][j]);
  return out;
}

/// Append N*identity relation rows, the standard lift of Z/N module problems
/// to lattice problems over Z.
inline zmat with_modulus_rows(zmat m, std::size_t cols, const mpz_class& n) {
  for (std::size_t j = 0; j < cols; ++j) {
    zrow row(cols, 0);
    row[j] = n;
    m.push_back(std::move(row));
  }
  return m;
}

/// Reduced row echelon form over Q with recorded transform U (U*M = R).
struct rref_result {
  matrix r;
  matrix u;
  std::vector<std::size_t> pivot_cols;
};

inline rref_result rref(const matrix& in) {
  const ring& k = in.base_ring();
  matrix m = in;
  matrix u = matrix::identity(k, m.rows());
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = m.rows();
    for (std::size_t i = r; i < m.rows(); ++i)
      if (sgn(m.at(i, col)) != 0) {
        piv = i;
        break;
      }
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(piv, j), m.at(r, j));
    for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(piv, j), u.at(r, j));
    scalar inv = k.inv(m.at(r, col));
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) = k.mul(inv, m.at(r, j));
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(r, j) = k.mul(inv, u.at(r, j));
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m.at(i, col)) == 0) continue;
      scalar c = m.at(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) = k.sub(m.at(i, j), k.mul(c, m.at(r, j)));
      for (std::size_t j = 0; j < u.cols(); ++j)
        u.at(i, j) = k.sub(u.at(i, j), k.mul(c, u.at(r, j)));
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(m), std::move(u), std::move(pivots)};
}

}  // namespace detail

/// Smith normal form over Z or Z/N: M = U*S*V with U, V invertible over the
/// ring and S diagonal with a divisibility chain (over Z/N the diagonal
/// divides N up to units). Rejects rational input: use echelon reduction.
struct snf_result {
  matrix u, s, v;
};

inline snf_result snf(const matrix& m) {
  const ring& k = m.base_ring();
  if (k.kind() == ring_kind::rationals)
    fail(errc::unsupported_ring, "snf over Q is caller misuse; use echelon reduction");
  detail::snf_result_z z = detail::snf(detail::lift(m));
  if (k.kind() == ring_kind::integers)
    return {detail::lower(k, z.u, m.rows()), detail::lower(k, z.s, m.cols()),
            detail::lower(k, z.v, m.cols())};
  // Over Z/N, replace each diagonal entry d by gcd(d, N) via a unit
  // rescaling folded into U.
  const std::size_t lim = m.rows() < m.cols() ? m.rows() : m.cols();
  std::vector<scalar> w_inv(m.rows(), k.one());
  for (std::size_t t = 0; t < lim; ++t) {
    scalar d = k.from_mpz(z.s[t][t]);
    scalar wu = k.canonical_unit(d);
    z.s[t][t] = k.mul(wu, d).get_num();
    w_inv[t] = k.inv(wu);
  }
  matrix u = detail::lower(k, z.u, m.rows());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = k.mul(u.at(i, j), w_inv[j]);
  return {std::move(u), detail::lower(k, z.s, m.cols()), detail::lower(k, z.v, m.cols())};
}

}  // namespace primel
