#include <catch2/catch_amalgamated.hpp>

#include "primel/scheme.hpp"

using namespace primel;

namespace {

vec rowv(const ring& k, const std::vector<long>& r) {
  vec v;
  for (long e : r) v.push_back(k.from_int(e));
  return v;
}

submodule spanv(const ring& k, std::size_t ambient, const std::vector<std::vector<long>>& rows) {
  std::vector<vec> rs;
  for (const auto& r : rows) rs.push_back(rowv(k, r));
  return submodule::span(k, ambient, rs);
}

point mu_point(const hopf_algebra& g, ring_hom hom, long zeta) {
  // x^i -> zeta^i
  const ring& r = hom.dst();
  vec values(g.rank());
  scalar acc = r.one();
  for (std::size_t i = 0; i < g.rank(); ++i) {
    values[i] = acc;
    acc = r.mul(acc, r.from_int(zeta));
  }
  return make_point(g.algebra(), std::move(hom), std::move(values));
}

point constant_point(const hopf_algebra& g, ring_hom hom, std::size_t element) {
  vec values(g.rank(), scalar(0));
  values[element] = hom.dst().one();
  return make_point(g.algebra(), std::move(hom), std::move(values));
}

}  // namespace

TEST_CASE("nonnull_scheme") {
  ring z = ring::integers();
  SECTION("mu_4 over Z: rank 3") {
    quotient_scheme_report r = nonnull_scheme(diagonalizable_group({4}, z));
    CHECK(r.rank == 3);
    CHECK(r.ideal_carrier == spanv(z, 4, {{1, 1, 1, 1}}));
    CHECK(r.ideal_is_summand);
    CHECK(r.is_free);
    // presentation: basis 1, x, x^2 with x^3 = -1-x-x^2
    CHECK(r.quotient.multiply(rowv(z, {0, 0, 1}), rowv(z, {0, 1, 0})) == rowv(z, {-1, -1, -1}));
  }
  SECTION("constant Z/2 x Z/2: functions on the three non-identity points") {
    quotient_scheme_report r = nonnull_scheme(constant_group({2, 2}, z));
    CHECK(r.rank == 3);
    CHECK(r.kept_basis == std::vector<std::size_t>{1, 2, 3});
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        vec prod = r.quotient.multiply(unit_vec(z, 3, i), unit_vec(z, 3, j));
        CHECK(prod == (i == j ? unit_vec(z, 3, i) : zero_vec(3)));
      }
  }
  SECTION("trivial group: rank 0") {
    quotient_scheme_report r = nonnull_scheme(constant_group({1}, z));
    CHECK(r.rank == 0);
    CHECK(r.ideal_carrier == submodule::full(z, 1));
  }
}

TEST_CASE("primitive_scheme") {
  ring z = ring::integers();
  SECTION("mu tower, p=2, level 2: ideal (1+x^2), rank 2") {
    tower t = mu_tower(2, 2, z);
    quotient_scheme_report r = primitive_scheme(t, 2);
    CHECK(r.rank == 2);
    CHECK(r.ideal_carrier == spanv(z, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
    // quotient is Z[x]/(x^2+1)
    CHECK(r.quotient.multiply(rowv(z, {0, 1}), rowv(z, {0, 1})) == rowv(z, {-1, 0}));
  }
  SECTION("constant tower, p=3, h=1, level 2: functions on the units of Z/9") {
    tower t = constant_tower(3, 2, 1, z);
    quotient_scheme_report r = primitive_scheme(t, 2);
    CHECK(r.rank == 6);
    CHECK(r.kept_basis == std::vector<std::size_t>{1, 2, 4, 5, 7, 8});
  }
  SECTION("level 1 coincides with the non-null scheme") {
    tower t = mu_tower(3, 2, z);
    quotient_scheme_report r1 = primitive_scheme(t, 1);
    quotient_scheme_report rn = nonnull_scheme(t.levels[0]);
    CHECK(r1.rank == rn.rank);
    CHECK(r1.ideal_carrier == rn.ideal_carrier);
    CHECK(r1.rank == 2);
  }
  SECTION("level out of range is a usage error") {
    tower t = mu_tower(2, 2, z);
    CHECK_THROWS_MATCHES(primitive_scheme(t, 3), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::parse_error; }));
  }
  SECTION("distinction: nonnull rank p^2-1 vs primitive rank (p-1)p on mu_{p^2}") {
    for (unsigned long p : {2ul, 3ul}) {
      tower t = mu_tower(p, 2, z);
      CHECK(nonnull_scheme(t.levels[1]).rank == p * p - 1);
      CHECK(primitive_scheme(t, 2).rank == (p - 1) * p);
    }
  }
}

TEST_CASE("primitive rank law across the tower grid") {
  ring z = ring::integers();
  std::vector<tower> towers;
  for (unsigned long p : {2ul, 3ul})
    for (std::size_t r : {1ul, 2ul}) {
      towers.push_back(mu_tower(p, r, z));
      towers.push_back(constant_tower(p, r, 1, z));
      towers.push_back(constant_tower(p, r, 2, z));
      towers.push_back(tower_product(mu_tower(p, r, z), constant_tower(p, r, 1, z)));
    }
  for (const auto& t : towers)
    for (std::size_t level = 1; level <= t.length(); ++level) {
      quotient_scheme_report rep = primitive_scheme(t, level);
      CHECK(mpz_class(static_cast<unsigned long>(rep.rank)) ==
            primitive_rank_formula(t.p, t.height, level));
      CHECK(rep.is_free);
    }
}

TEST_CASE("is_nonnull_point") {
  ring z = ring::integers();
  SECTION("zeta = 4 in mu_3(Z/9) is not non-null") {
    hopf_algebra m3 = diagonalizable_group({3}, z);
    point pt = mu_point(m3, ring_hom(z, ring::int_mod(9)), 4);
    CHECK_FALSE(is_nonnull_point(m3, pt));
  }
  SECTION("zeta = 1 in mu_3(F_3) is non-null: the identity can be non-null") {
    ring f3 = ring::int_mod(3);
    hopf_algebra m3 = diagonalizable_group({3}, f3);
    point pt = mu_point(m3, ring_hom::identity(f3), 1);
    CHECK(is_nonnull_point(m3, pt));
  }
  SECTION("(1, y) in mu_p x mu_p is non-null iff p*Phi_p(y) = 0") {
    for (unsigned long p : {2ul, 3ul}) {
      for (const ring& r : {ring::int_mod(static_cast<long>(p)),
                            ring::int_mod(static_cast<long>(p * p))}) {
        hopf_algebra mp = diagonalizable_group({p}, r);
        hopf_algebra sq = hopf_product(mp, mp);
        // enumerate mu_p(R) = {y : y^p = 1}
        for (long y = 0; y < r.modulus().get_si(); ++y) {
          scalar yp = r.one();
          for (unsigned long e = 0; e < p; ++e) yp = r.mul(yp, r.from_int(y));
          if (yp != r.one()) continue;
          vec values(sq.rank());
          for (std::size_t i = 0; i < p; ++i)
            for (std::size_t j = 0; j < p; ++j) {
              scalar yj = r.one();
              for (std::size_t e = 0; e < j; ++e) yj = r.mul(yj, r.from_int(y));
              values[i * p + j] = yj;
            }
          point pt = make_point(sq.algebra(), ring_hom::identity(r), values);
          scalar phi = r.zero();
          scalar ypow = r.one();
          for (unsigned long e = 0; e < p; ++e) {
            phi = r.add(phi, ypow);
            ypow = r.mul(ypow, r.from_int(y));
          }
          scalar p_phi = r.mul(r.from_int(static_cast<long>(p)), phi);
          CHECK(is_nonnull_point(sq, pt) == r.is_zero(p_phi));
        }
      }
    }
  }
  SECTION("invalid points are rejected") {
    hopf_algebra m3 = diagonalizable_group({3}, z);
    CHECK_THROWS_MATCHES(
        make_point(m3.algebra(), ring_hom::identity(z), rowv(z, {1, 2, 3})), error,
        Catch::Matchers::Predicate<error>(
            [](const error& e) { return e.code() == errc::invalid_point; }));
  }
}

TEST_CASE("constant-group points over Z are exactly the non-identity sections") {
  ring z = ring::integers();
  for (auto orders : {std::vector<unsigned long>{4}, std::vector<unsigned long>{2, 2}}) {
    hopf_algebra c = constant_group(orders, z);
    std::size_t nonnull_count = 0;
    for (std::size_t g = 0; g < c.rank(); ++g) {
      point pt = constant_point(c, ring_hom::identity(z), g);
      bool nn = is_nonnull_point(c, pt);
      CHECK(nn == (g != 0));
      if (nn) ++nonnull_count;
    }
    CHECK(nonnull_count == c.rank() - 1);
  }
}

TEST_CASE("overring principle: Z-points keep their answer in Q") {
  ring z = ring::integers();
  ring q = ring::rationals();
  hopf_algebra m4z = diagonalizable_group({4}, z);
  hopf_algebra m4q = diagonalizable_group({4}, q);
  for (long zeta : {1L, -1L}) {
    point over_z = mu_point(m4z, ring_hom::identity(z), zeta);
    point over_q = mu_point(m4q, ring_hom::identity(q), zeta);
    CHECK(is_nonnull_point(m4z, over_z) == is_nonnull_point(m4q, over_q));
  }
  // constant group sections as well
  hopf_algebra cz = constant_group({3}, z);
  hopf_algebra cq = constant_group({3}, q);
  for (std::size_t g = 0; g < 3; ++g)
    CHECK(is_nonnull_point(cz, constant_point(cz, ring_hom::identity(z), g)) ==
          is_nonnull_point(cq, constant_point(cq, ring_hom::identity(q), g)));
}

TEST_CASE("base-change coherence for point tests") {
  ring z = ring::integers();
  ring z9 = ring::int_mod(9);
  hopf_algebra m3 = diagonalizable_group({3}, z);
  hopf_algebra m3_z9 = hopf_base_change(m3, ring_hom(z, z9));
  for (long zeta : {1L, 4L, 7L}) {
    point via_hom = mu_point(m3, ring_hom(z, z9), zeta);
    point via_bc = mu_point(m3_z9, ring_hom::identity(z9), zeta);
    CHECK(is_nonnull_point(m3, via_hom) == is_nonnull_point(m3_z9, via_bc));
  }
}

TEST_CASE("is_primitive_point") {
  ring z = ring::integers();
  SECTION("x = -1 in mu_4(Z) is not primitive") {
    tower t = mu_tower(2, 2, z);
    point pt = mu_point(t.levels[1], ring_hom::identity(z), -1);
    CHECK_FALSE(is_primitive_point(t, 2, pt));
  }
  SECTION("x = 1 in mu_4(F_2) is primitive") {
    ring f2 = ring::int_mod(2);
    tower t = mu_tower(2, 2, f2);
    point pt = mu_point(t.levels[1], ring_hom::identity(f2), 1);
    CHECK(is_primitive_point(t, 2, pt));
  }
  SECTION("constant tower Z/4 over Z: section 1 is primitive, section 2 is not") {
    tower t = constant_tower(2, 2, 1, z);
    point one = constant_point(t.levels[1], ring_hom::identity(z), 1);
    point two = constant_point(t.levels[1], ring_hom::identity(z), 2);
    CHECK(is_primitive_point(t, 2, one));
    CHECK_FALSE(is_primitive_point(t, 2, two));
  }
  SECTION("primitive sections of the constant tower are the units") {
    tower t = constant_tower(3, 2, 1, z);
    for (std::size_t g = 0; g < 9; ++g) {
      point pt = constant_point(t.levels[1], ring_hom::identity(z), g);
      CHECK(is_primitive_point(t, 2, pt) == (g % 3 != 0));
    }
  }
}
