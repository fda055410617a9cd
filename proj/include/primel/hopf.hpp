#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "primel/algebra.hpp"

namespace primel {

/// Delta(e_i) carries coefficient c on e_j (x) e_k.
struct comult_term {
  std::size_t i, j, k;
  scalar c;
};

/// A measure on G is an element of the dual A', stored as the vector of
/// pairings <mu, e_i> against the chosen basis of A.
using measure = vec;

namespace detail {

struct pair_term {
  std::size_t j, k;
  scalar c;
};

using pair_map = std::map<std::pair<std::size_t, std::size_t>, scalar>;
using triple_map = std::map<std::array<std::size_t, 3>, scalar>;

template <typename Map>
bool map_is_zero(const ring& r, const Map& m) {
  for (const auto& [key, val] : m)
    if (sgn(r.reduce(val)) != 0) return false;
  return true;
}

}  // namespace detail

/// The coordinate Hopf algebra of a finite locally free commutative group
/// scheme with commutative Cartier dual. Construction checks coassociativity,
/// the counit laws, compatibility of multiplication and comultiplication,
/// cocommutativity, and the antipode axiom when an antipode is supplied.
class hopf_algebra {
 public:
  static hopf_algebra make(augmented_algebra aug, const std::vector<comult_term>& comult,
                           std::optional<matrix> antipode = std::nullopt) {
    hopf_algebra h;
    const std::size_t n = aug.rank();
    h.aug_ = std::move(aug);
    const ring& k = h.aug_.base_ring();
    h.comult_.assign(n, {});
    for (const auto& t : comult) {
      if (t.i >= n || t.j >= n || t.k >= n)
        fail(errc::shape_mismatch, "comultiplication index out of range");
      scalar c = k.reduce(t.c);
      if (sgn(c) == 0) continue;
      bool merged = false;
      for (auto& e : h.comult_[t.i])
        if (e.j == t.j && e.k == t.k) {
          e.c = k.add(e.c, c);
          merged = true;
          break;
        }
      if (!merged) h.comult_[t.i].push_back({t.j, t.k, c});
    }
    for (auto& row : h.comult_)
      std::erase_if(row, [&](const detail::pair_term& t) { return sgn(t.c) == 0; });
    h.antipode_ = std::move(antipode);
    h.validate();
    return h;
  }

  const augmented_algebra& augmented() const { return aug_; }
  const finite_algebra& algebra() const { return aug_.algebra(); }
  const ring& base_ring() const { return aug_.base_ring(); }
  std::size_t rank() const { return aug_.rank(); }
  const vec& counit() const { return aug_.counit(); }
  const vec& unit() const { return algebra().unit(); }
  const std::vector<detail::pair_term>& comult_row(std::size_t i) const { return comult_[i]; }
  const std::optional<matrix>& antipode() const { return antipode_; }

  std::vector<comult_term> comult_terms() const {
    std::vector<comult_term> out;
    for (std::size_t i = 0; i < rank(); ++i)
      for (const auto& t : comult_[i]) out.push_back({i, t.j, t.k, t.c});
    return out;
  }

  bool same_structure_as(const hopf_algebra& other) const {
    if (!algebra().same_structure_as(other.algebra())) return false;
    if (counit() != other.counit()) return false;
    for (std::size_t i = 0; i < rank(); ++i) {
      detail::pair_map a, b;
      for (const auto& t : comult_[i]) a[{t.j, t.k}] = t.c;
      for (const auto& t : other.comult_[i]) b[{t.j, t.k}] = t.c;
      if (a != b) return false;
    }
    return true;
  }

 private:
  void validate() const {
    const ring& k = base_ring();
    const std::size_t n = rank();
    // Counit laws on both sides.
    for (std::size_t i = 0; i < n; ++i) {
      vec left(n, scalar(0)), right(n, scalar(0));
      for (const auto& t : comult_[i]) {
        left[t.k] += counit()[t.j] * t.c;
        right[t.j] += counit()[t.k] * t.c;
      }
      for (auto& e : left) e = k.reduce(e);
      for (auto& e : right) e = k.reduce(e);
      vec ei = unit_vec(k, n, i);
      if (left != ei || right != ei)
        fail(errc::counit_law_fails, "(counit (x) id)Delta != id at e_" + std::to_string(i));
    }
    // Cocommutativity.
    for (std::size_t i = 0; i < n; ++i) {
      detail::pair_map m;
      for (const auto& t : comult_[i]) m[{t.j, t.k}] = t.c;
      for (const auto& [key, val] : m) {
        auto it = m.find({key.second, key.first});
        if (it == m.end() || it->second != val)
          fail(errc::not_cocommutative, "Delta(e_" + std::to_string(i) + ") is not symmetric");
      }
    }
    // Delta is an algebra hom A -> A (x) A.
    {
      detail::pair_map du;
      for (std::size_t i = 0; i < n; ++i) {
        if (sgn(unit()[i]) == 0) continue;
        for (const auto& t : comult_[i]) du[{t.j, t.k}] += unit()[i] * t.c;
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (sgn(unit()[a]) != 0 && sgn(unit()[b]) != 0) du[{a, b}] -= unit()[a] * unit()[b];
      if (!detail::map_is_zero(k, du)) fail(errc::not_bialgebra, "Delta(1) != 1 (x) 1");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        detail::pair_map acc;
        for (const auto& t : algebra().basis_product(i, j))
          for (const auto& d : comult_[t.k]) acc[{d.j, d.k}] += t.c * d.c;
        for (const auto& di : comult_[i])
          for (const auto& dj : comult_[j]) {
            scalar c = di.c * dj.c;
            for (const auto& t1 : algebra().basis_product(di.j, dj.j)) {
              for (const auto& t2 : algebra().basis_product(di.k, dj.k))
                acc[{t1.k, t2.k}] -= c * t1.c * t2.c;
            }
          }
        if (!detail::map_is_zero(k, acc))
          fail(errc::not_bialgebra, "Delta(e_i e_j) != Delta(e_i)Delta(e_j) at (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
      }
    // Coassociativity.
    for (std::size_t i = 0; i < n; ++i) {
      detail::triple_map acc;
      for (const auto& t : comult_[i]) {
        for (const auto& l : comult_[t.j]) acc[{l.j, l.k, t.k}] += t.c * l.c;
        for (const auto& r : comult_[t.k]) acc[{t.j, r.j, r.k}] -= t.c * r.c;
      }
      if (!detail::map_is_zero(k, acc))
        fail(errc::not_coassociative, "coassociativity fails at e_" + std::to_string(i));
    }
    // Antipode axiom m(S (x) id)Delta = unit . counit.
    if (antipode_) {
      if (antipode_->rows() != n || antipode_->cols() != n)
        fail(errc::shape_mismatch, "antipode matrix shape");
      for (std::size_t i = 0; i < n; ++i) {
        vec acc(n, scalar(0));
        for (const auto& t : comult_[i]) {
          vec prod = algebra().multiply(antipode_->row(t.j), unit_vec(k, n, t.k));
          for (std::size_t s = 0; s < n; ++s) acc[s] += t.c * prod[s];
        }
        for (auto& e : acc) e = k.reduce(e);
        if (acc != scale_vec(k, counit()[i], unit()))
          fail(errc::antipode_fails, "antipode axiom fails at e_" + std::to_string(i));
      }
    }
  }

  augmented_algebra aug_;
  std::vector<std::vector<detail::pair_term>> comult_;
  std::optional<matrix> antipode_;
};

/// Multiplication and comultiplication swap under k-linear duality; the unit
/// and counit trade places. Applying it twice restores the input on the nose.
inline hopf_algebra cartier_dual(const hopf_algebra& h) {
  const ring& k = h.base_ring();
  const std::size_t n = h.rank();
  std::vector<mult_term> mult;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& t : h.comult_row(i))
      if (t.j <= t.k) mult.push_back({t.j, t.k, i, t.c});
  std::vector<comult_term> comult;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = j; l < n; ++l)
      for (const auto& t : h.algebra().basis_product(j, l)) {
        comult.push_back({t.k, j, l, t.c});
        if (j != l) comult.push_back({t.k, l, j, t.c});
      }
  std::vector<std::string> labels;
  for (const auto& l : h.algebra().labels()) {
    if (!l.empty() && l.back() == '\'')
      labels.push_back(l.substr(0, l.size() - 1));
    else
      labels.push_back(l + "'");
  }
  finite_algebra alg = finite_algebra::make(k, n, std::move(labels), mult, h.counit());
  augmented_algebra aug = augmented_algebra::make(std::move(alg), h.unit());
  std::optional<matrix> antipode;
  if (h.antipode()) antipode = h.antipode()->transpose();
  return hopf_algebra::make(std::move(aug), comult, std::move(antipode));
}

namespace detail {

/// Intersection of the kernels of a family of operators, restricting the
/// solution space one operator at a time.
inline submodule intersect_kernels(const ring& k, std::size_t n,
                                   const std::vector<matrix>& ops) {
  submodule sol = submodule::full(k, n);
  bool first = true;
  for (const auto& op : ops) {
    if (first) {
      sol = kernel(op);
      first = false;
    } else {
      submodule coeffs = kernel(sol.generators().mul(op));
      std::vector<vec> gens;
      for (std::size_t i = 0; i < coeffs.generator_count(); ++i)
        gens.push_back(mul_vec(k, coeffs.generators().row(i), sol.generators()));
      sol = submodule::span(k, n, gens);
    }
    if (sol.is_zero()) break;
  }
  return sol;
}

}  // namespace detail

/// J_G: the annihilator of the augmentation ideal, equal to the invariant
/// measures on the Cartier dual sitting inside A. Both descriptions are
/// computed and must agree.
inline submodule nonnull_ideal(const augmented_algebra& a) {
  const ring& k = a.base_ring();
  const std::size_t n = a.rank();
  submodule i = a.augmentation_ideal();
  submodule ann = annihilator(a.algebra(), i);
  std::vector<matrix> ops;
  for (std::size_t g = 0; g < n; ++g) {
    matrix op = a.algebra().multiplication_operator(unit_vec(k, n, g));
    for (std::size_t d = 0; d < n; ++d) op.at(d, d) = k.sub(op.at(d, d), a.counit()[g]);
    ops.push_back(std::move(op));
  }
  submodule direct = detail::intersect_kernels(k, n, ops);
  if (ann != direct)
    fail(errc::internal, "annihilator route and invariance route disagree on J");
  return ann;
}

inline submodule nonnull_ideal(const hopf_algebra& h) { return nonnull_ideal(h.augmented()); }

/// <mu * nu, f> = (mu (x) nu)(Delta f): convolution of measures.
inline measure star_measures(const hopf_algebra& h, const measure& mu, const measure& nu) {
  const ring& k = h.base_ring();
  const std::size_t n = h.rank();
  if (mu.size() != n || nu.size() != n) fail(errc::shape_mismatch, "measure of wrong length");
  measure out(n, scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : h.comult_row(i))
      if (sgn(mu[t.j]) != 0 && sgn(nu[t.k]) != 0) out[i] += t.c * mu[t.j] * nu[t.k];
    out[i] = k.reduce(out[i]);
  }
  return out;
}

/// mu * f = (mu (x) id)(Delta f): the A'-module action on A.
inline vec sweep(const hopf_algebra& h, const measure& mu, const vec& f) {
  const ring& k = h.base_ring();
  const std::size_t n = h.rank();
  if (mu.size() != n || f.size() != n) fail(errc::shape_mismatch, "sweep shape");
  vec out(n, scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(f[i]) == 0) continue;
    for (const auto& t : h.comult_row(i))
      if (sgn(mu[t.j]) != 0) out[t.k] += f[i] * t.c * mu[t.j];
  }
  for (auto& e : out) e = k.reduce(e);
  return out;
}

/// <f mu, g> = <mu, fg>: the A-module action on A'.
inline measure scale_measure(const hopf_algebra& h, const vec& f, const measure& mu) {
  const ring& k = h.base_ring();
  const std::size_t n = h.rank();
  if (mu.size() != n || f.size() != n) fail(errc::shape_mismatch, "scale shape");
  measure out(n, scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    out[i] = dot_vec(k, h.algebra().multiply(f, unit_vec(k, n, i)), mu);
  return out;
}

/// D_G: invariant measures, computed as the non-nullity ideal of the Cartier
/// dual and cross-checked against the direct invariance equations. Must be a
/// free rank-1 direct summand of A'.
inline submodule invariant_measures(const hopf_algebra& h) {
  const ring& k = h.base_ring();
  const std::size_t n = h.rank();
  submodule via_dual = nonnull_ideal(cartier_dual(h));
  // nu * mu = <nu, 1> mu for each basis functional nu = e'_j.
  std::vector<matrix> ops;
  for (std::size_t j = 0; j < n; ++j) {
    matrix op(k, n, n);  // mu -> e'_j * mu - <e'_j, 1> mu
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& t : h.comult_row(i))
        if (t.j == j) op.at(t.k, i) = k.add(op.at(t.k, i), t.c);
    for (std::size_t d = 0; d < n; ++d) op.at(d, d) = k.sub(op.at(d, d), h.unit()[j]);
    ops.push_back(std::move(op));
  }
  submodule direct = detail::intersect_kernels(k, n, ops);
  if (via_dual != direct)
    fail(errc::internal, "dual route and invariance route disagree on D");
  if (!is_rank_one_free_summand(via_dual))
    fail(errc::rank_not_one, "invariant measures are not a rank-1 direct summand");
  return via_dual;
}

inline bool generates_unit_ideal(const ring& k, const vec& v) {
  switch (k.kind()) {
    case ring_kind::rationals:
      return !is_zero_vec(v);
    case ring_kind::integers:
    case ring_kind::int_mod: {
      mpz_class g = k.kind() == ring_kind::int_mod ? k.modulus() : mpz_class(0);
      for (const auto& e : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.get_num().get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

/// A Haar measure is an invariant measure that is surjective onto k.
inline bool is_haar(const hopf_algebra& h, const measure& mu) {
  return invariant_measures(h).contains(mu) && generates_unit_ideal(h.base_ring(), mu);
}

inline bool is_invertible(const matrix& m) {
  if (m.rows() != m.cols()) return false;
  linear_solver ls(m);
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!ls.solve(unit_vec(m.base_ring(), m.cols(), i))) return false;
  return true;
}

struct duality_info {
  bool pairing_is_perfect = false;
  bool measure_iso_holds = false;
  std::optional<measure> haar_generator;
  measure d_generator;
  vec j_generator;
};

/// Raynaud's structure facts for one group: the pairing between D_G and J_G
/// is perfect, and f (x) mu -> f mu identifies A (x) D_G with A'.
inline duality_info duality_report(const hopf_algebra& h) {
  const ring& k = h.base_ring();
  submodule d = invariant_measures(h);
  submodule j = nonnull_ideal(h);
  auto mu0 = d.cyclic_generator();
  auto f0 = j.cyclic_generator();
  if (!mu0 || !f0) fail(errc::rank_not_one, "no single generator for D_G or J_G");
  duality_info out;
  out.d_generator = *mu0;
  out.j_generator = *f0;
  out.pairing_is_perfect = k.is_unit(dot_vec(k, *mu0, *f0));
  matrix iso(k, h.rank(), h.rank());
  for (std::size_t i = 0; i < h.rank(); ++i) {
    measure row = scale_measure(h, unit_vec(k, h.rank(), i), *mu0);
    for (std::size_t c = 0; c < h.rank(); ++c) iso.at(i, c) = row[c];
  }
  out.measure_iso_holds = is_invertible(iso);
  if (generates_unit_ideal(k, *mu0)) out.haar_generator = *mu0;
  return out;
}

inline hopf_algebra hopf_product(const hopf_algebra& h1, const hopf_algebra& h2) {
  const ring& k = h1.base_ring();
  const std::size_t n1 = h1.rank(), n2 = h2.rank();
  finite_algebra alg = tensor_product(h1.algebra(), h2.algebra());
  vec counit(n1 * n2);
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      counit[i * n2 + j] = k.mul(h1.counit()[i], h2.counit()[j]);
  std::vector<comult_term> comult;
  for (std::size_t i = 0; i < n1; ++i)
    for (std::size_t j = 0; j < n2; ++j)
      for (const auto& t1 : h1.comult_row(i))
        for (const auto& t2 : h2.comult_row(j))
          comult.push_back({i * n2 + j, t1.j * n2 + t2.j, t1.k * n2 + t2.k, k.mul(t1.c, t2.c)});
  std::optional<matrix> antipode;
  if (h1.antipode() && h2.antipode()) {
    matrix s(k, n1 * n2, n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t a = 0; a < n1; ++a)
          for (std::size_t b = 0; b < n2; ++b)
            s.at(i * n2 + j, a * n2 + b) =
                k.mul(h1.antipode()->at(i, a), h2.antipode()->at(j, b));
    antipode = std::move(s);
  }
  return hopf_algebra::make(augmented_algebra::make(std::move(alg), std::move(counit)), comult,
                            std::move(antipode));
}

inline hopf_algebra hopf_base_change(const hopf_algebra& h, const ring_hom& hom) {
  augmented_algebra aug = base_change(h.augmented(), hom);
  std::vector<comult_term> comult;
  for (const auto& t : h.comult_terms()) comult.push_back({t.i, t.j, t.k, hom.apply(t.c)});
  std::optional<matrix> antipode;
  if (h.antipode()) antipode = h.antipode()->map(hom);
  return hopf_algebra::make(std::move(aug), comult, std::move(antipode));
}

/// Detects the groups this artifact certifies as etale: constant-by-structure
/// over any ring (orthogonal idempotent basis), or anything over Q.
inline bool is_etale_like(const hopf_algebra& h) {
  if (h.base_ring().kind() == ring_kind::rationals) return true;
  const ring& k = h.base_ring();
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t j = i; j < h.rank(); ++j) {
      const auto& prod = h.algebra().basis_product(i, j);
      if (i != j && !prod.empty()) return false;
      if (i == j && !(prod.size() == 1 && prod[0].k == i && prod[0].c == k.one())) return false;
    }
  return true;
}

/// True iff M is an algebra hom commuting with counits and comultiplications.
inline bool is_hopf_hom(const hopf_algebra& src, const hopf_algebra& dst, const matrix& m) {
  if (!is_algebra_hom(src.algebra(), dst.algebra(), m)) return false;
  const ring& k = src.base_ring();
  for (std::size_t i = 0; i < src.rank(); ++i)
    if (dot_vec(k, m.row(i), dst.counit()) != src.counit()[i]) return false;
  for (std::size_t i = 0; i < src.rank(); ++i) {
    detail::pair_map acc;
    for (const auto& t : src.comult_row(i)) {
      vec rj = m.row(t.j), rk = m.row(t.k);
      for (std::size_t a = 0; a < dst.rank(); ++a) {
        if (sgn(rj[a]) == 0) continue;
        for (std::size_t b = 0; b < dst.rank(); ++b)
          if (sgn(rk[b]) != 0) acc[{a, b}] += t.c * rj[a] * rk[b];
      }
    }
    vec mi = m.row(i);
    for (std::size_t t = 0; t < dst.rank(); ++t) {
      if (sgn(mi[t]) == 0) continue;
      for (const auto& d : dst.comult_row(t)) acc[{d.j, d.k}] -= mi[t] * d.c;
    }
    if (!detail::map_is_zero(k, acc)) return false;
  }
  return true;
}

/// A certified short exact sequence 0 -> H -> G -> K -> 0 in coordinate-ring
/// form: C = O(K) includes into A = O(G) via iota, and A surjects onto
/// B = O(H) via pi, with ker(pi) generated by iota of C's augmentation ideal.
struct short_exact_sequence {
  hopf_algebra c, a, b;
  matrix iota;  // rank(C) x rank(A), injective Hopf hom
  matrix pi;    // rank(A) x rank(B), surjective Hopf hom
};

inline short_exact_sequence verify_ses(hopf_algebra c, hopf_algebra a, hopf_algebra b,
                                       matrix iota, matrix pi) {
  const ring& k = a.base_ring();
  if (c.base_ring() != k || b.base_ring() != k)
    fail(errc::ring_mismatch, "sequence over distinct rings");
  if (a.rank() != b.rank() * c.rank())
    fail(errc::rank_mismatch, "|G| != |H| * |K|: " + std::to_string(a.rank()) +
                                  " != " + std::to_string(b.rank()) + "*" + std::to_string(c.rank()));
  if (iota.rows() != c.rank() || iota.cols() != a.rank() || pi.rows() != a.rank() ||
      pi.cols() != b.rank())
    fail(errc::shape_mismatch, "iota/pi shapes do not match the three coordinate rings");
  if (!kernel(iota).is_zero()) fail(errc::not_injective, "iota has a nonzero kernel");
  if (submodule::span(pi) != submodule::full(k, b.rank()))
    fail(errc::not_surjective, "pi does not span the target");
  if (!is_hopf_hom(c, a, iota)) fail(errc::not_hopf_hom, "iota is not a Hopf algebra hom");
  if (!is_hopf_hom(a, b, pi)) fail(errc::not_hopf_hom, "pi is not a Hopf algebra hom");
  // ker(pi) equals the ideal generated by iota(I_C).
  submodule ker_pi = kernel(pi);
  submodule aug_c = c.augmented().augmentation_ideal();
  std::vector<vec> pushed;
  for (std::size_t i = 0; i < aug_c.generator_count(); ++i)
    pushed.push_back(mul_vec(k, aug_c.generators().row(i), iota));
  ideal ic_a = ideal_generated(a.algebra(), pushed);
  if (ker_pi != ic_a.carrier)
    fail(errc::kernel_mismatch, "ker(pi) differs from the ideal generated by iota(I_C)");
  return {std::move(c), std::move(a), std::move(b), std::move(iota), std::move(pi)};
}

/// Haar-measure construction along a short exact sequence: lift mu_K through
/// A' ->> C', embed mu_H along pi, and convolve. The result is invariant,
/// independent of the lift, and (checked here) equals mu_K composed with
/// integration over H.
inline measure integrate_in_stages(const short_exact_sequence& ses, const measure& mu_h,
                                   const measure& mu_k) {
  const ring& k = ses.a.base_ring();
  if (!invariant_measures(ses.b).contains(mu_h))
    fail(errc::input_not_invariant, "mu_H is not an invariant measure on H");
  if (!invariant_measures(ses.c).contains(mu_k))
    fail(errc::input_not_invariant, "mu_K is not an invariant measure on K");
  matrix iota_t = ses.iota.transpose();
  auto lift = solve_left(iota_t, mu_k);
  if (!lift) fail(errc::lift_failed, "no preimage of mu_K under the dual surjection");
  measure mu_h_hat = mul_vec(k, mu_h, ses.pi.transpose());
  measure mu_g = star_measures(ses.a, *lift, mu_h_hat);
  // Lift independence: every kernel direction of the dual surjection must
  // annihilate the embedded mu_H under convolution.
  submodule ker = kernel(iota_t);
  for (std::size_t i = 0; i < ker.generator_count(); ++i)
    if (!is_zero_vec(star_measures(ses.a, ker.generators().row(i), mu_h_hat)))
      fail(errc::internal, "integration in stages depends on the lift");
  if (!invariant_measures(ses.a).contains(mu_g))
    fail(errc::internal, "integrated measure is not invariant");
  // Alternative route: <mu_G, f> = <mu_K, corestriction of mu_H * f>.
  for (std::size_t t = 0; t < ses.a.rank(); ++t) {
    vec swept = sweep(ses.a, mu_h_hat, unit_vec(k, ses.a.rank(), t));
    auto core = solve_left(ses.iota, swept);
    if (!core) fail(errc::internal, "sweep by mu_H left the subalgebra C");
    if (dot_vec(k, mu_k, *core) != mu_g[t])
      fail(errc::internal, "integration in stages disagrees with mu_K after I_H");
  }
  return mu_g;
}

/// eq. J_A = pi^{-1}(J_B) * (J_C A): both sides as canonical submodules, plus
/// the rank form of the tensor statement.
inline bool jabc_verify(const short_exact_sequence& ses) {
  const ring& k = ses.a.base_ring();
  submodule j_a = nonnull_ideal(ses.a);
  submodule j_b = nonnull_ideal(ses.b);
  submodule j_c = nonnull_ideal(ses.c);
  submodule pre = preimage_of(j_b, ses.pi);
  std::vector<vec> pushed;
  for (std::size_t i = 0; i < j_c.generator_count(); ++i)
    pushed.push_back(mul_vec(k, j_c.generators().row(i), ses.iota));
  ideal jc_a = ideal_generated(ses.a.algebra(), pushed);
  std::vector<vec> products;
  for (std::size_t i = 0; i < pre.generator_count(); ++i)
    for (std::size_t j = 0; j < jc_a.carrier.generator_count(); ++j)
      products.push_back(
          ses.a.algebra().multiply(pre.generators().row(i), jc_a.carrier.generators().row(j)));
  submodule rhs = submodule::span(k, ses.a.rank(), products);
  bool ideals_equal = (rhs == j_a);
  bool ranks_match = j_b.module_rank() * j_c.module_rank() == j_a.module_rank();
  return ideals_equal && ranks_match;
}

struct extension_info {
  bool h_inclusion_ok = false;
  bool pullback_inclusion_ok = false;
  bool square_cartesian = false;
  bool k_etale = false;
  submodule pushed_ideal;  // pi(J_A) inside B
};

/// The extension lemma: H^x sits inside G^x (pi(J_A) <= J_B), G^x sits inside
/// the pullback of K^x (J_A <= J_C A), and the comparison square is cartesian
/// exactly when pi(J_A) = J_B, which etale K forces.
inline extension_info extension_report(const short_exact_sequence& ses) {
  const ring& k = ses.a.base_ring();
  submodule j_a = nonnull_ideal(ses.a);
  submodule j_b = nonnull_ideal(ses.b);
  submodule j_c = nonnull_ideal(ses.c);
  submodule pushed = image_of(j_a, ses.pi);
  std::vector<vec> pushed_jc;
  for (std::size_t i = 0; i < j_c.generator_count(); ++i)
    pushed_jc.push_back(mul_vec(k, j_c.generators().row(i), ses.iota));
  ideal jc_a = ideal_generated(ses.a.algebra(), pushed_jc);
  extension_info out{j_b.contains(pushed), jc_a.carrier.contains(j_a), pushed == j_b,
                     is_etale_like(ses.c), pushed};
  return out;
}

}  // namespace primel
