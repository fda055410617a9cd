#pragma once

#include <map>
#include <string>
#include <vector>

#include "primel/hopf.hpp"

namespace primel {

namespace detail {

/// Mixed-radix indexing of tuples in prod Z/n_j (last coordinate fastest).
struct tuple_index {
  std::vector<unsigned long> orders;

  std::size_t size() const {
    std::size_t s = 1;
    for (auto n : orders) s *= n;
    return s;
  }
  std::vector<unsigned long> tuple(std::size_t idx) const {
    std::vector<unsigned long> t(orders.size());
    for (std::size_t d = orders.size(); d-- > 0;) {
      t[d] = idx % orders[d];
      idx /= orders[d];
    }
    return t;
  }
  std::size_t index(const std::vector<unsigned long>& t) const {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < orders.size(); ++d) idx = idx * orders[d] + (t[d] % orders[d]);
    return idx;
  }
  std::size_t add(std::size_t a, std::size_t b) const {
    auto ta = tuple(a), tb = tuple(b);
    for (std::size_t d = 0; d < orders.size(); ++d) ta[d] = (ta[d] + tb[d]) % orders[d];
    return index(ta);
  }
  std::size_t negate(std::size_t a) const {
    auto t = tuple(a);
    for (std::size_t d = 0; d < orders.size(); ++d) t[d] = (orders[d] - t[d]) % orders[d];
    return index(t);
  }
};

inline std::string tuple_label(const tuple_index& ti, std::size_t idx) {
  auto t = ti.tuple(idx);
  if (t.size() == 1) return std::to_string(t[0]);
  std::string s = "(";
  for (std::size_t d = 0; d < t.size(); ++d) s += (d ? "," : "") + std::to_string(t[d]);
  return s + ")";
}

inline std::string monomial_var(std::size_t d, std::size_t total) {
  static const char* names[] = {"x", "y", "z", "w", "u", "v"};
  if (total <= 6) return names[d];
  return "x" + std::to_string(d + 1);
}

}  // namespace detail

/// Algebra of k-valued functions on a finite abelian group, with pointwise
/// multiplication, convolution comultiplication and evaluation at the
/// identity as counit.
inline hopf_algebra constant_group(const std::vector<unsigned long>& orders, const ring& k) {
  if (orders.empty()) fail(errc::shape_mismatch, "constant group needs at least one order");
  for (auto n : orders)
    if (n == 0) fail(errc::shape_mismatch, "cyclic order must be >= 1");
  detail::tuple_index ti{orders};
  const std::size_t n = ti.size();
  std::vector<mult_term> mult;
  for (std::size_t i = 0; i < n; ++i) mult.push_back({i, i, i, k.one()});
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("1_" + detail::tuple_label(ti, i));
  finite_algebra alg = finite_algebra::make(k, n, std::move(labels), mult, vec(n, k.one()));
  vec counit(n, scalar(0));
  counit[0] = k.one();
  std::vector<comult_term> comult;
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < n; ++a)
      comult.push_back({c, a, ti.add(c, ti.negate(a)), k.one()});
  matrix antipode(k, n, n);
  for (std::size_t i = 0; i < n; ++i) antipode.at(i, ti.negate(i)) = k.one();
  return hopf_algebra::make(augmented_algebra::make(std::move(alg), std::move(counit)), comult,
                            std::move(antipode));
}

/// Group algebra of prod Z/n_j: a diagonalizable group scheme with grouplike
/// monomial basis. diagonalizable_group({N}) is mu_N.
inline hopf_algebra diagonalizable_group(const std::vector<unsigned long>& orders, const ring& k) {
  if (orders.empty()) fail(errc::shape_mismatch, "diagonalizable group needs at least one order");
  for (auto n : orders)
    if (n == 0) fail(errc::shape_mismatch, "cyclic order must be >= 1");
  detail::tuple_index ti{orders};
  const std::size_t n = ti.size();
  std::vector<mult_term> mult;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) mult.push_back({i, j, ti.add(i, j), k.one()});
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = ti.tuple(i);
    std::string s;
    for (std::size_t d = 0; d < t.size(); ++d) {
      if (t[d] == 0) continue;
      if (!s.empty()) s += "*";
      s += detail::monomial_var(d, t.size());
      if (t[d] > 1) s += "^" + std::to_string(t[d]);
    }
    labels.push_back(s.empty() ? "1" : s);
  }
  finite_algebra alg = finite_algebra::make(k, n, std::move(labels), mult, unit_vec(k, n, 0));
  std::vector<comult_term> comult;
  for (std::size_t i = 0; i < n; ++i) comult.push_back({i, i, i, k.one()});
  matrix antipode(k, n, n);
  for (std::size_t i = 0; i < n; ++i) antipode.at(i, ti.negate(i)) = k.one();
  return hopf_algebra::make(augmented_algebra::make(std::move(alg), vec(n, k.one())), comult,
                            std::move(antipode));
}

/// k[x]/(x^p) with the additive (binomial) comultiplication; only defined
/// when p vanishes in k.
inline hopf_algebra alpha_p(unsigned long p, const ring& k) {
  if (!k.is_zero(k.from_int(static_cast<long>(p))))
    fail(errc::characteristic_mismatch, "alpha_p needs p = 0 in the base ring");
  const std::size_t n = p;
  finite_algebra alg = monogenic_algebra(k, n, vec(n, scalar(0)));
  vec counit(n, scalar(0));
  counit[0] = k.one();
  std::vector<comult_term> comult;
  mpz_class binom;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(i),
                   static_cast<unsigned long>(j));
      scalar c = k.from_mpz(binom);
      if (sgn(c) != 0) comult.push_back({i, j, i - j, c});
    }
  matrix antipode(k, n, n);
  for (std::size_t i = 0; i < n; ++i)
    antipode.at(i, i) = (i % 2 == 0) ? k.one() : k.neg(k.one());
  return hopf_algebra::make(augmented_algebra::make(std::move(alg), std::move(counit)), comult,
                            std::move(antipode));
}

/// Oort-Tate algebra k[x]/(x^p - a x) with counit x -> 0. The non-nullity
/// ideal is determined by the algebra and the augmentation alone, so no
/// comultiplication is attached.
inline augmented_algebra oort_tate_algebra(unsigned long p, const scalar& a, const ring& k) {
  if (p < 2) fail(errc::shape_mismatch, "oort-tate needs p >= 2");
  const std::size_t n = p;
  vec xp(n, scalar(0));
  xp[1] = k.reduce(a);
  finite_algebra alg = monogenic_algebra(k, n, xp);
  vec counit(n, scalar(0));
  counit[0] = k.one();
  return augmented_algebra::make(std::move(alg), std::move(counit));
}

/// Raynaud algebra k[x_1..x_n]/(x_i^p - delta_i x_{i+1}), cyclic in i, with
/// all variables killed by the counit.
inline augmented_algebra raynaud_algebra(unsigned long p, const std::vector<scalar>& deltas,
                                         const ring& k) {
  if (p < 2 || deltas.empty()) fail(errc::shape_mismatch, "raynaud needs p >= 2 and n >= 1");
  const std::size_t nvars = deltas.size();
  detail::tuple_index ti{std::vector<unsigned long>(nvars, p)};
  const std::size_t n = ti.size();
  // Reduce a monomial given by raw exponents to a combination of basis
  // monomials: x_i^p -> delta_i x_{i+1} strictly lowers total degree.
  auto reduce_monomial = [&](std::vector<unsigned long> e, scalar coeff) {
    std::map<std::size_t, scalar> out;
    std::vector<std::pair<std::vector<unsigned long>, scalar>> work{{std::move(e), std::move(coeff)}};
    while (!work.empty()) {
      auto [exp, c] = std::move(work.back());
      work.pop_back();
      if (sgn(c) == 0) continue;
      std::size_t hot = nvars;
      for (std::size_t d = 0; d < nvars; ++d)
        if (exp[d] >= p) {
          hot = d;
          break;
        }
      if (hot == nvars) {
        out[ti.index(exp)] += c;
        continue;
      }
      exp[hot] -= p;
      exp[(hot + 1) % nvars] += 1;
      work.push_back({std::move(exp), k.mul(c, k.reduce(deltas[hot]))});
    }
    return out;
  };
  std::vector<mult_term> mult;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      auto ei = ti.tuple(i), ej = ti.tuple(j);
      std::vector<unsigned long> e(nvars);
      for (std::size_t d = 0; d < nvars; ++d) e[d] = ei[d] + ej[d];
      for (auto& [idx, c] : reduce_monomial(std::move(e), k.one())) {
        scalar r = k.reduce(c);
        if (sgn(r) != 0) mult.push_back({i, j, idx, r});
      }
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    auto t = ti.tuple(i);
    std::string s;
    for (std::size_t d = 0; d < nvars; ++d) {
      if (t[d] == 0) continue;
      if (!s.empty()) s += "*";
      s += "x" + std::to_string(d + 1);
      if (t[d] > 1) s += "^" + std::to_string(t[d]);
    }
    labels.push_back(s.empty() ? "1" : s);
  }
  finite_algebra alg = finite_algebra::make(k, n, std::move(labels), mult, unit_vec(k, n, 0));
  vec counit(n, scalar(0));
  counit[0] = k.one();
  return augmented_algebra::make(std::move(alg), std::move(counit));
}

/// Kronecker product in the basis order used by tensor_product/hopf_product.
inline matrix matrix_tensor(const matrix& m1, const matrix& m2) {
  const ring& k = m1.base_ring();
  matrix out(k, m1.rows() * m2.rows(), m1.cols() * m2.cols());
  for (std::size_t i1 = 0; i1 < m1.rows(); ++i1)
    for (std::size_t i2 = 0; i2 < m2.rows(); ++i2)
      for (std::size_t j1 = 0; j1 < m1.cols(); ++j1) {
        if (sgn(m1.at(i1, j1)) == 0) continue;
        for (std::size_t j2 = 0; j2 < m2.cols(); ++j2)
          out.at(i1 * m2.rows() + i2, j1 * m2.cols() + j2) =
              k.mul(m1.at(i1, j1), m2.at(i2, j2));
      }
  return out;
}

/// A truncated p-divisible group: levels G_1, ..., G_r with the pullbacks
/// phi_i of multiplication by p^{i-1} from G_i down to G_1.
struct tower {
  ring base;
  unsigned long p = 0;
  std::size_t height = 0;
  std::vector<hopf_algebra> levels;
  std::vector<matrix> power_maps;  // phi_i: A(G_1) -> A(G_i)

  std::size_t length() const { return levels.size(); }
};

namespace detail {

inline void validate_tower(const tower& t) {
  mpz_class expected = 1;
  mpz_class step;
  mpz_ui_pow_ui(step.get_mpz_t(), t.p, t.height);
  for (std::size_t i = 0; i < t.levels.size(); ++i) {
    expected *= step;
    if (mpz_class(static_cast<unsigned long>(t.levels[i].rank())) != expected)
      fail(errc::rank_mismatch, "tower level " + std::to_string(i + 1) + " has rank " +
                                    std::to_string(t.levels[i].rank()) + ", expected p^(h*i)");
    if (!is_hopf_hom(t.levels[0], t.levels[i], t.power_maps[i]))
      fail(errc::not_hopf_hom, "power map " + std::to_string(i + 1) + " is not a Hopf hom");
  }
  if (t.power_maps[0] != matrix::identity(t.base, t.levels[0].rank()))
    fail(errc::shape_mismatch, "phi_1 must be the identity");
}

}  // namespace detail

/// mu_{p^i} levels; phi_i is x -> x^{p^{i-1}} on coordinate rings.
inline tower mu_tower(unsigned long p, std::size_t r, const ring& k) {
  if (r < 1) fail(errc::shape_mismatch, "tower length must be >= 1");
  tower t{k, p, 1, {}, {}};
  unsigned long level_order = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    level_order *= p;
    t.levels.push_back(diagonalizable_group({level_order}, k));
    unsigned long power = 1;
    for (std::size_t s = 1; s < i; ++s) power *= p;
    matrix phi(k, p, level_order);
    for (unsigned long j = 0; j < p; ++j) phi.at(j, (j * power) % level_order) = k.one();
    t.power_maps.push_back(std::move(phi));
  }
  detail::validate_tower(t);
  return t;
}

/// Constant (Z/p^i)^h levels; phi_i pulls an indicator back to the indicator
/// of its fiber under componentwise reduction mod p.
inline tower constant_tower(unsigned long p, std::size_t r, std::size_t h, const ring& k) {
  if (r < 1 || h < 1) fail(errc::shape_mismatch, "tower parameters must be >= 1");
  tower t{k, p, h, {}, {}};
  unsigned long level_order = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    level_order *= p;
    std::vector<unsigned long> orders(h, level_order);
    t.levels.push_back(constant_group(orders, k));
    detail::tuple_index base{std::vector<unsigned long>(h, p)};
    detail::tuple_index lvl{orders};
    matrix phi(k, base.size(), lvl.size());
    for (std::size_t g = 0; g < lvl.size(); ++g) {
      auto tup = lvl.tuple(g);
      for (auto& c : tup) c %= p;
      phi.at(base.index(tup), g) = k.one();
    }
    t.power_maps.push_back(std::move(phi));
  }
  detail::validate_tower(t);
  return t;
}

/// Levelwise product of two towers of the same prime and length; heights add.
inline tower tower_product(const tower& t1, const tower& t2) {
  if (t1.p != t2.p || t1.length() != t2.length())
    fail(errc::shape_mismatch, "towers must share p and length");
  if (t1.base != t2.base) fail(errc::ring_mismatch, "towers over distinct rings");
  tower t{t1.base, t1.p, t1.height + t2.height, {}, {}};
  for (std::size_t i = 0; i < t1.length(); ++i) {
    t.levels.push_back(hopf_product(t1.levels[i], t2.levels[i]));
    t.power_maps.push_back(matrix_tensor(t1.power_maps[i], t2.power_maps[i]));
  }
  detail::validate_tower(t);
  return t;
}

/// Short exact sequence mu_p -> mu_{p^2} ->> mu_p: iota is y -> x^p, pi is
/// x -> x.
inline short_exact_sequence ses_mu_chain(unsigned long p, const ring& k) {
  hopf_algebra a = diagonalizable_group({p * p}, k);
  hopf_algebra b = diagonalizable_group({p}, k);
  hopf_algebra c = diagonalizable_group({p}, k);
  matrix iota(k, p, p * p);
  for (unsigned long j = 0; j < p; ++j) iota.at(j, j * p) = k.one();
  matrix pi(k, p * p, p);
  for (unsigned long j = 0; j < p * p; ++j) pi.at(j, j % p) = k.one();
  return verify_ses(std::move(c), std::move(a), std::move(b), std::move(iota), std::move(pi));
}

/// Short exact sequence Z/p -> Z/p^2 ->> Z/p of constant groups: pi restricts
/// functions to the subgroup pZ/p^2, iota pulls back along reduction mod p.
inline short_exact_sequence ses_constant_chain(unsigned long p, const ring& k) {
  hopf_algebra a = constant_group({p * p}, k);
  hopf_algebra b = constant_group({p}, k);
  hopf_algebra c = constant_group({p}, k);
  matrix iota(k, p, p * p);
  for (unsigned long g = 0; g < p * p; ++g) iota.at(g % p, g) = k.one();
  matrix pi(k, p * p, p);
  for (unsigned long j = 0; j < p; ++j) pi.at(j * p, j) = k.one();
  return verify_ses(std::move(c), std::move(a), std::move(b), std::move(iota), std::move(pi));
}

/// Product sequence H -> H x K ->> K: iota is c -> 1 (x) c and pi kills K by
/// its counit.
inline short_exact_sequence ses_product(const hopf_algebra& h, const hopf_algebra& kk) {
  const ring& k = h.base_ring();
  hopf_algebra a = hopf_product(h, kk);
  matrix iota(k, kk.rank(), h.rank() * kk.rank());
  for (std::size_t c = 0; c < kk.rank(); ++c)
    for (std::size_t i = 0; i < h.rank(); ++i)
      iota.at(c, i * kk.rank() + c) = h.unit()[i];
  matrix pi(k, h.rank() * kk.rank(), h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t c = 0; c < kk.rank(); ++c)
      pi.at(i * kk.rank() + c, i) = kk.counit()[c];
  return verify_ses(kk, std::move(a), h, std::move(iota), std::move(pi));
}

}  // namespace primel
