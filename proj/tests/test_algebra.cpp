#include <catch2/catch_amalgamated.hpp>

#include "primel/algebra.hpp"

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

// mu_N group algebra k[x]/(x^N - 1).
finite_algebra cyclic(const ring& k, std::size_t n) {
  return monogenic_algebra(k, n, unit_vec(k, n, 0));
}

// Oort-Tate algebra k[x]/(x^p - a x), as a bare algebra.
finite_algebra ot_algebra(const ring& k, std::size_t p, long a) {
  vec xp(p, scalar(0));
  xp[1] = k.from_int(a);
  return monogenic_algebra(k, p, xp);
}

// All vectors over Z/p of the given length, for brute-force oracles.
std::vector<vec> all_vectors(const ring& k, long p, std::size_t n) {
  std::vector<vec> out;
  std::vector<long> idx(n, 0);
  for (;;) {
    out.push_back(rowv(k, std::vector<long>(idx.begin(), idx.end())));
    std::size_t d = 0;
    while (d < n && ++idx[d] == p) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

}  // namespace

TEST_CASE("make_algebra accepts k[x]/(x^2-1) and the trivial algebra") {
  ring z = ring::integers();
  finite_algebra a = cyclic(z, 2);
  CHECK(a.rank() == 2);
  CHECK(a.multiply(rowv(z, {0, 1}), rowv(z, {0, 1})) == rowv(z, {1, 0}));

  finite_algebra one = finite_algebra::make(z, 1, {"1"}, {{0, 0, 0, z.one()}}, rowv(z, {1}));
  CHECK(one.unit() == rowv(z, {1}));
}

TEST_CASE("make_algebra rejects tampered tensors, naming the violation") {
  ring z = ring::integers();
  // Z[x]/(x^3-1) data with x^2*x^2 rewired to x^2: (x*x)*x^2 = x^2 but
  // x*(x*x^2) = x, so associativity breaks.
  std::vector<mult_term> assoc_broken = {{0, 0, 0, z.one()}, {0, 1, 1, z.one()},
                                         {0, 2, 2, z.one()}, {1, 1, 2, z.one()},
                                         {1, 2, 0, z.one()}, {2, 2, 2, z.one()}};
  CHECK_THROWS_MATCHES(
      finite_algebra::make(z, 3, {"1", "x", "x^2"}, assoc_broken, rowv(z, {1, 0, 0})), error,
      Catch::Matchers::Predicate<error>(
          [](const error& e) { return e.code() == errc::non_associative; }));

  // 1*x rewired to x^2: the declared unit no longer acts as one.
  std::vector<mult_term> unit_broken = {{0, 0, 0, z.one()}, {0, 1, 2, z.one()},
                                        {0, 2, 2, z.one()}, {1, 1, 2, z.one()},
                                        {1, 2, 0, z.one()}, {2, 2, 1, z.one()}};
  CHECK_THROWS_MATCHES(
      finite_algebra::make(z, 3, {"1", "x", "x^2"}, unit_broken, rowv(z, {1, 0, 0})), error,
      Catch::Matchers::Predicate<error>(
          [](const error& e) { return e.code() == errc::bad_unit; }));

  // Asymmetric tensor: e0*e1 != e1*e0.
  std::vector<mult_term> asym = {{0, 0, 0, z.one()}, {0, 1, 1, z.one()},
                                 {1, 0, 0, z.one()}, {1, 1, 0, z.one()}};
  CHECK_THROWS_MATCHES(finite_algebra::make(z, 2, {"1", "x"}, asym, rowv(z, {1, 0})), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::non_commutative; }));
}

TEST_CASE("multiply: unit law, Oort-Tate relation, exponents mod 4") {
  ring z9 = ring::int_mod(9);
  finite_algebra ot = ot_algebra(z9, 3, 3);
  vec v = rowv(z9, {5, 7, 2});
  CHECK(ot.multiply(ot.unit(), v) == v);
  // x^{p-1} * x = a*x with p=3, a=3
  CHECK(ot.multiply(rowv(z9, {0, 0, 1}), rowv(z9, {0, 1, 0})) == rowv(z9, {0, 3, 0}));

  ring z = ring::integers();
  finite_algebra c4 = cyclic(z, 4);
  CHECK(c4.multiply(rowv(z, {0, 0, 0, 1}), rowv(z, {0, 0, 1, 0})) == rowv(z, {0, 1, 0, 0}));
}

TEST_CASE("ideal_generated") {
  ring z = ring::integers();
  finite_algebra c4 = cyclic(z, 4);
  SECTION("1 generates everything") {
    ideal i = ideal_generated(c4, {c4.unit()});
    CHECK(i.carrier == submodule::full(z, 4));
  }
  SECTION("1+x^2 saturates to rank 2") {
    ideal i = ideal_generated(c4, {rowv(z, {1, 0, 1, 0})});
    CHECK(i.carrier == spanv(z, 4, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
    CHECK(is_multiplicatively_closed(c4, i.carrier));
  }
  SECTION("empty generator list gives the zero ideal") {
    CHECK(ideal_generated(c4, {}).carrier.is_zero());
  }
}

TEST_CASE("annihilator examples") {
  SECTION("Oort-Tate p=3, a=3 over Z/9") {
    ring z9 = ring::int_mod(9);
    finite_algebra a = ot_algebra(z9, 3, 3);
    ideal i = ideal_generated(a, {rowv(z9, {0, 1, 0})});
    submodule ann = annihilator(a, i);
    CHECK(ann == spanv(z9, 3, {{-3, 0, 1}}));
    auto gen = ann.cyclic_generator();
    REQUIRE(gen.has_value());
    CHECK(a.format_element(*gen) == "-3+x^2");
  }
  SECTION("augmentation ideal of Z[x]/(x^3-1)") {
    ring z = ring::integers();
    finite_algebra a = cyclic(z, 3);
    // ker(eval at x=1) = span{x-1, x^2-1}
    ideal i = ideal_generated(a, {rowv(z, {-1, 1, 0}), rowv(z, {-1, 0, 1})});
    CHECK(annihilator(a, i) == spanv(z, 3, {{1, 1, 1}}));
  }
  SECTION("zero ideal annihilates to the whole algebra") {
    ring z = ring::integers();
    finite_algebra a = cyclic(z, 3);
    CHECK(annihilator(a, ideal{submodule::zero(z, 3)}) == submodule::full(z, 3));
  }
}

TEST_CASE("annihilator agrees with exhaustive enumeration over small fields") {
  for (long p : {2L, 3L}) {
    ring k = ring::int_mod(p);
    std::vector<finite_algebra> algebras;
    algebras.push_back(cyclic(k, 2));
    algebras.push_back(cyclic(k, 3));
    algebras.push_back(cyclic(k, 4));
    algebras.push_back(ot_algebra(k, static_cast<std::size_t>(p), 0));  // alpha_p shape
    for (const auto& a : algebras) {
      std::vector<vec> gens;
      for (std::size_t i = 1; i < a.rank(); ++i) {
        // x^i - 1 spans the augmentation ideal of the cyclic algebras; the
        // same recipe feeds the nilpotent one a valid ideal too.
        vec g(a.rank(), scalar(0));
        g[i] = k.one();
        g[0] = k.sub(g[0], k.one());
        gens.push_back(g);
      }
      ideal i = ideal_generated(a, gens);
      submodule ann = annihilator(a, i);
      std::vector<vec> brute;
      for (const auto& f : all_vectors(k, p, a.rank())) {
        bool kills = true;
        for (std::size_t g = 0; g < i.carrier.generator_count() && kills; ++g)
          kills = is_zero_vec(a.multiply(i.carrier.generators().row(g), f));
        if (kills) brute.push_back(f);
      }
      CHECK(ann == submodule::span(k, a.rank(), brute));
      CHECK(is_multiplicatively_closed(a, ann));
    }
  }
}

TEST_CASE("quotient_algebra") {
  ring z = ring::integers();
  finite_algebra c4 = cyclic(z, 4);
  SECTION("by (1+x^2): rank 2 with x^2 = -1") {
    ideal i = ideal_generated(c4, {rowv(z, {1, 0, 1, 0})});
    quotient_result q = quotient_algebra(c4, i);
    CHECK(q.algebra.rank() == 2);
    CHECK(q.kept == std::vector<std::size_t>{0, 1});
    CHECK(q.algebra.multiply(rowv(z, {0, 1}), rowv(z, {0, 1})) == rowv(z, {-1, 0}));
    CHECK(is_algebra_hom(c4, q.algebra, q.projection));
    CHECK(q.algebra.rank() + i.carrier.generator_count() == c4.rank());
  }
  SECTION("by the zero ideal: identity projection") {
    quotient_result q = quotient_algebra(c4, ideal{submodule::zero(z, 4)});
    CHECK(q.algebra.same_structure_as(c4));
    CHECK(q.projection == matrix::identity(z, 4));
  }
  SECTION("by the norm ideal of Z[x]/(x^3-1): rank 2") {
    finite_algebra c3 = cyclic(z, 3);
    ideal i = ideal_generated(c3, {rowv(z, {1, 1, 1})});
    quotient_result q = quotient_algebra(c3, i);
    CHECK(q.algebra.rank() == 2);
    CHECK(is_algebra_hom(c3, q.algebra, q.projection));
  }
  SECTION("torsion quotient is rejected with the invariant factors") {
    finite_algebra c2 = cyclic(z, 2);
    ideal i = ideal_generated(c2, {rowv(z, {2, 0})});
    CHECK_THROWS_MATCHES(quotient_algebra(c2, i), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::not_free; }));
  }
  SECTION("free quotient over Z/9 whose ideal needs two canonical rows") {
    ring z9 = ring::int_mod(9);
    finite_algebra ot = ot_algebra(z9, 3, 3);
    ideal j = ideal_generated(ot, {rowv(z9, {-3, 0, 1})});
    quotient_result q = quotient_algebra(ot, j);
    CHECK(q.algebra.rank() == 2);
    // x^2 = 3 in the quotient
    CHECK(q.algebra.multiply(rowv(z9, {0, 1}), rowv(z9, {0, 1})) == rowv(z9, {3, 0}));
    CHECK(is_algebra_hom(ot, q.algebra, q.projection));
  }
}

TEST_CASE("tensor_product") {
  ring z = ring::integers();
  finite_algebra c2 = cyclic(z, 2);
  finite_algebra one = finite_algebra::make(z, 1, {"1"}, {{0, 0, 0, z.one()}}, rowv(z, {1}));
  SECTION("A (x) k = A") {
    CHECK(tensor_product(c2, one).same_structure_as(c2));
  }
  SECTION("mu_2 algebra squared: rank 4, (x(x)1)*(1(x)y) = x(x)y") {
    finite_algebra t = tensor_product(c2, c2);
    CHECK(t.rank() == 4);
    CHECK(t.multiply(rowv(z, {0, 0, 1, 0}), rowv(z, {0, 1, 0, 0})) == rowv(z, {0, 0, 0, 1}));
  }
  SECTION("rank multiplicativity and associativity up to reindexing") {
    finite_algebra c3 = cyclic(z, 3);
    CHECK(tensor_product(c3, c3).rank() == 9);
    finite_algebra left = tensor_product(tensor_product(c2, c3), c2);
    finite_algebra right = tensor_product(c2, tensor_product(c3, c2));
    // (i,j),l and i,(j,l) flatten to the same mixed-radix order.
    CHECK(left.same_structure_as(right));
  }
}

TEST_CASE("base_change") {
  ring z = ring::integers();
  ring z3 = ring::int_mod(3);
  ring q = ring::rationals();
  finite_algebra c3 = cyclic(z, 3);
  SECTION("Z -> F_3 reduces constants") {
    finite_algebra f = base_change(c3, ring_hom(z, z3));
    CHECK(f.base_ring() == z3);
    CHECK(f.rank() == 3);
    CHECK(f.multiply(rowv(z3, {0, 0, 1}), rowv(z3, {0, 0, 1})) == rowv(z3, {0, 1, 0}));
  }
  SECTION("Z/9 -> Z/3") {
    ring z9 = ring::int_mod(9);
    finite_algebra a = ot_algebra(z9, 3, 3);
    finite_algebra f = base_change(a, ring_hom(z9, z3));
    // x^3 = 3x = 0 after reduction
    CHECK(f.multiply(rowv(z3, {0, 0, 1}), rowv(z3, {0, 1, 0})) == rowv(z3, {0, 0, 0}));
  }
  SECTION("Z -> Q keeps integer constants") {
    finite_algebra f = base_change(c3, ring_hom(z, q));
    CHECK(f.base_ring() == q);
    CHECK(f.multiply(rowv(q, {0, 1, 0}), rowv(q, {0, 0, 1})) == rowv(q, {1, 0, 0}));
  }
  SECTION("unsupported hom is rejected") {
    CHECK_THROWS_AS(ring_hom(ring::int_mod(4), z3), error);
    CHECK_THROWS_AS(ring_hom(q, z), error);
  }
}

TEST_CASE("is_algebra_hom") {
  ring z = ring::integers();
  finite_algebra c2 = cyclic(z, 2);  // Z[y]/(y^2-1)
  finite_algebra c4 = cyclic(z, 4);  // Z[x]/(x^4-1)
  SECTION("y -> x^2 is a hom") {
    matrix m(z, 2, 4);
    m.at(0, 0) = z.one();
    m.at(1, 2) = z.one();
    CHECK(is_algebra_hom(c2, c4, m));
  }
  SECTION("y -> x is not") {
    matrix m(z, 2, 4);
    m.at(0, 0) = z.one();
    m.at(1, 1) = z.one();
    CHECK_FALSE(is_algebra_hom(c2, c4, m));
  }
  SECTION("identity is a hom; bad shapes are rejected") {
    CHECK(is_algebra_hom(c4, c4, matrix::identity(z, 4)));
    CHECK_THROWS_AS(is_algebra_hom(c2, c4, matrix::identity(z, 2)), error);
  }
}

TEST_CASE("augmented_algebra validates the counit") {
  ring z = ring::integers();
  finite_algebra c3 = cyclic(z, 3);
  augmented_algebra aug = augmented_algebra::make(c3, rowv(z, {1, 1, 1}));  // eval at 1
  CHECK(aug.counit_value(rowv(z, {2, 3, 4})) == z.from_int(9));
  CHECK(aug.augmentation_ideal() == spanv(z, 3, {{1, 0, -1}, {0, 1, -1}}));
  CHECK_THROWS_MATCHES(augmented_algebra::make(c3, rowv(z, {1, 1, 2})), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::bad_counit; }));
  CHECK_THROWS_MATCHES(augmented_algebra::make(c3, rowv(z, {0, 0, 0})), error,
                       Catch::Matchers::Predicate<error>(
                           [](const error& e) { return e.code() == errc::bad_counit; }));
}

TEST_CASE("quotient bookkeeping on free-quotient ideals of Z[x]/(x^6-1)") {
  ring z = ring::integers();
  finite_algebra c6 = cyclic(z, 6);
  for (const auto& gen :
       {std::vector<long>{1, 1, 1, 1, 1, 1}, std::vector<long>{1, 0, 0, 1, 0, 0}}) {
    ideal i = ideal_generated(c6, {rowv(z, gen)});
    quotient_result q = quotient_algebra(c6, i);
    CHECK(q.algebra.rank() + i.carrier.generator_count() == c6.rank());
    CHECK(is_algebra_hom(c6, q.algebra, q.projection));
    // projection annihilates exactly the ideal
    for (std::size_t g = 0; g < i.carrier.generator_count(); ++g)
      CHECK(is_zero_vec(mul_vec(z, i.carrier.generators().row(g), q.projection)));
    CHECK(kernel(q.projection) == i.carrier);
  }
}
