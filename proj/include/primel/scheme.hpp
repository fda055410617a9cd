#pragma once

#include <optional>
#include <string>
#include <vector>

#include "primel/groups.hpp"

namespace primel {

/// A closed subscheme presented as a quotient of the coordinate ring: carries
/// the cut-out ideal, the quotient presentation, and the freeness facts the
/// rank formulas assert.
struct quotient_scheme_report {
  submodule ideal_carrier;
  std::vector<vec> cut_generators;  // ideal generators the subscheme is cut out by
  finite_algebra quotient;
  matrix projection;
  std::vector<std::size_t> kept_basis;
  std::size_t rank = 0;
  bool is_free = false;
  bool ideal_is_summand = false;
  std::optional<vec> ideal_generator;
};

namespace detail {

inline quotient_scheme_report quotient_report(const finite_algebra& a, const submodule& carrier,
                                              std::vector<vec> cut_generators) {
  quotient_result q = quotient_algebra(a, ideal{carrier});
  quotient_scheme_report out{carrier,
                             std::move(cut_generators),
                             std::move(q.algebra),
                             std::move(q.projection),
                             std::move(q.kept),
                             0,
                             true,
                             is_rank_one_free_summand(carrier),
                             carrier.cyclic_generator()};
  out.rank = out.quotient.rank();
  return out;
}

}  // namespace detail

/// G^x = Spec(A/J_G), the non-null subscheme.
inline quotient_scheme_report nonnull_scheme(const augmented_algebra& a) {
  submodule j = nonnull_ideal(a);
  std::vector<vec> cut;
  if (auto g = j.cyclic_generator())
    cut.push_back(*g);
  else
    cut = j.generators().row_list();
  return detail::quotient_report(a.algebra(), j, std::move(cut));
}

inline quotient_scheme_report nonnull_scheme(const hopf_algebra& h) {
  return nonnull_scheme(h.augmented());
}

inline mpz_class primitive_rank_formula(unsigned long p, std::size_t h, std::size_t level) {
  mpz_class ph;
  mpz_ui_pow_ui(ph.get_mpz_t(), p, h);
  mpz_class tail;
  mpz_ui_pow_ui(tail.get_mpz_t(), p, h * (level - 1));
  return (ph - 1) * tail;
}

/// The primitive-element subscheme of level i: cut out by the ideal generated
/// by phi_i(J_{G_1}), whose quotient rank must match (p^h - 1) p^{h(i-1)}.
inline quotient_scheme_report primitive_scheme(const tower& t, std::size_t level) {
  if (level < 1 || level > t.length())
    fail(errc::parse_error, "tower level " + std::to_string(level) + " out of range 1.." +
                                std::to_string(t.length()));
  const hopf_algebra& top = t.levels[level - 1];
  submodule j1 = nonnull_ideal(t.levels[0]);
  std::vector<vec> pushed;
  if (auto g = j1.cyclic_generator())
    pushed.push_back(mul_vec(t.base, *g, t.power_maps[level - 1]));
  else
    for (std::size_t i = 0; i < j1.generator_count(); ++i)
      pushed.push_back(mul_vec(t.base, j1.generators().row(i), t.power_maps[level - 1]));
  ideal cut = ideal_generated(top.algebra(), pushed);
  quotient_scheme_report out = detail::quotient_report(top.algebra(), cut.carrier, pushed);
  mpz_class expected = primitive_rank_formula(t.p, t.height, level);
  if (mpz_class(static_cast<unsigned long>(out.rank)) != expected)
    fail(errc::rank_mismatch, "primitive scheme rank " + std::to_string(out.rank) +
                                  " != (p^h-1)p^(h(i-1)) = " + expected.get_str());
  return out;
}

/// An R-valued point of Spec(A): a k-algebra map A -> R recorded by the
/// images of the basis elements, together with the base map k -> R.
struct point {
  ring_hom base;
  vec values;
};

inline point make_point(const finite_algebra& a, ring_hom base, vec values) {
  if (base.src() != a.base_ring()) fail(errc::invalid_point, "base hom source != algebra ring");
  if (values.size() != a.rank()) fail(errc::invalid_point, "value count != rank");
  const ring& r = base.dst();
  for (auto& v : values) v = r.reduce(v);
  // unit goes to 1
  scalar u = r.zero();
  for (std::size_t i = 0; i < a.rank(); ++i)
    u = r.add(u, r.mul(base.apply(a.unit()[i]), values[i]));
  if (u != r.one()) fail(errc::invalid_point, "point does not send 1 to 1");
  // multiplicative on all basis pairs
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = i; j < a.rank(); ++j) {
      scalar rhs = r.zero();
      for (const auto& t : a.basis_product(i, j))
        rhs = r.add(rhs, r.mul(base.apply(t.c), values[t.k]));
      if (r.mul(values[i], values[j]) != rhs)
        fail(errc::invalid_point, "point is not multiplicative at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    }
  return {std::move(base), std::move(values)};
}

/// g(f) for f with coordinates over k.
inline scalar evaluate_point(const point& pt, const vec& f) {
  const ring& r = pt.base.dst();
  scalar acc = r.zero();
  for (std::size_t i = 0; i < f.size(); ++i)
    acc = r.add(acc, r.mul(pt.base.apply(f[i]), pt.values[i]));
  return acc;
}

inline bool point_kills(const point& pt, const submodule& s) {
  const ring& r = pt.base.dst();
  for (std::size_t i = 0; i < s.generator_count(); ++i)
    if (!r.is_zero(evaluate_point(pt, s.generators().row(i)))) return false;
  return true;
}

/// Non-nullity: the point kills J_G after base change.
inline bool is_nonnull_point(const augmented_algebra& a, const point& pt) {
  return point_kills(pt, nonnull_ideal(a));
}

inline bool is_nonnull_point(const hopf_algebra& h, const point& pt) {
  return is_nonnull_point(h.augmented(), pt);
}

/// Primitivity: the image of the point under raising to the power p^{i-1} is
/// non-null at level 1. Computed both through the composite point and through
/// the primitive ideal; the two answers must agree.
inline bool is_primitive_point(const tower& t, std::size_t level, const point& pt) {
  if (level < 1 || level > t.length())
    fail(errc::parse_error, "tower level out of range");
  if (pt.values.size() != t.levels[level - 1].rank())
    fail(errc::invalid_point, "point lives on a different level");
  const matrix& phi = t.power_maps[level - 1];
  const ring& r = pt.base.dst();
  vec bar(phi.rows());
  for (std::size_t c = 0; c < phi.rows(); ++c) {
    scalar acc = r.zero();
    for (std::size_t g = 0; g < phi.cols(); ++g) {
      const scalar& e = phi.at(c, g);
      if (sgn(e) != 0) acc = r.add(acc, r.mul(pt.base.apply(e), pt.values[g]));
    }
    bar[c] = acc;
  }
  point image = make_point(t.levels[0].algebra(), pt.base, std::move(bar));
  bool via_image = is_nonnull_point(t.levels[0], image);

  submodule j1 = nonnull_ideal(t.levels[0]);
  std::vector<vec> pushed;
  for (std::size_t i = 0; i < j1.generator_count(); ++i)
    pushed.push_back(mul_vec(t.base, j1.generators().row(i), phi));
  ideal cut = ideal_generated(t.levels[level - 1].algebra(), pushed);
  bool via_ideal = point_kills(pt, cut.carrier);
  if (via_image != via_ideal)
    fail(errc::internal, "primitivity routes disagree (composite vs ideal)");
  return via_image;
}

}  // namespace primel
