#pragma once

#include <atomic>
#include <functional>
#include <random>
#include <thread>

#include "primel/names.hpp"

namespace primel {

struct check_result {
  std::string suite;
  std::string check;
  std::string subject;
  bool pass = false;
  std::string detail;
};

namespace detail {

using check_task = std::function<check_result()>;

/// Run independent cells in parallel; results land at fixed indices so the
/// emitted order is deterministic.
inline std::vector<check_result> run_tasks(const std::vector<check_task>& tasks, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size() ? tasks.size() : 1));
  std::vector<check_result> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        results[i].pass = false;
        results[i].detail = e.what();
      }
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

inline check_result ok(std::string suite, std::string check, std::string subject) {
  return {std::move(suite), std::move(check), std::move(subject), true, ""};
}

inline check_result bad(std::string suite, std::string check, std::string subject,
                        std::string detail) {
  return {std::move(suite), std::move(check), std::move(subject), false, std::move(detail)};
}

}  // namespace detail

inline std::vector<ring> catalog_rings() {
  return {ring::integers(), ring::rationals(), ring::int_mod(2), ring::int_mod(3),
          ring::int_mod(4), ring::int_mod(9),  ring::int_mod(8), ring::int_mod(27)};
}

/// The Hopf-group grid: constants up to order 9, mu_N, alpha_p where defined,
/// and mu x mu / mu x constant products.
struct grid_entry {
  std::string name;
  std::function<hopf_algebra(const ring&)> build;
};

inline std::vector<grid_entry> hopf_group_grid() {
  std::vector<grid_entry> out;
  auto add_constant = [&](std::vector<unsigned long> orders, std::string name) {
    out.push_back({std::move(name), [orders](const ring& k) { return constant_group(orders, k); }});
  };
  add_constant({2}, "constant:2");
  add_constant({3}, "constant:3");
  add_constant({4}, "constant:4");
  add_constant({2, 2}, "constant:2x2");
  add_constant({5}, "constant:5");
  add_constant({6}, "constant:6");
  add_constant({7}, "constant:7");
  add_constant({8}, "constant:8");
  add_constant({2, 4}, "constant:2x4");
  add_constant({2, 2, 2}, "constant:2x2x2");
  add_constant({9}, "constant:9");
  add_constant({3, 3}, "constant:3x3");
  for (unsigned long n : {2ul, 3ul, 4ul, 8ul, 9ul})
    out.push_back({"mu:" + std::to_string(n),
                   [n](const ring& k) { return diagonalizable_group({n}, k); }});
  for (unsigned long p : {2ul, 3ul})
    out.push_back({"alpha:" + std::to_string(p), [p](const ring& k) { return alpha_p(p, k); }});
  out.push_back({"mu:2 x mu:2", [](const ring& k) {
                   return hopf_product(diagonalizable_group({2}, k), diagonalizable_group({2}, k));
                 }});
  out.push_back({"mu:3 x mu:3", [](const ring& k) {
                   return hopf_product(diagonalizable_group({3}, k), diagonalizable_group({3}, k));
                 }});
  out.push_back({"mu:2 x mu:4", [](const ring& k) {
                   return hopf_product(diagonalizable_group({2}, k), diagonalizable_group({4}, k));
                 }});
  out.push_back({"mu:3 x constant:3", [](const ring& k) {
                   return hopf_product(diagonalizable_group({3}, k), constant_group({3}, k));
                 }});
  out.push_back({"mu:2 x constant:2", [](const ring& k) {
                   return hopf_product(diagonalizable_group({2}, k), constant_group({2}, k));
                 }});
  return out;
}

inline bool group_defined_over(const std::string& name, const ring& k) {
  if (name.rfind("alpha:", 0) != 0) return true;
  unsigned long p = std::stoul(name.substr(6));
  return k.is_zero(k.from_int(static_cast<long>(p)));
}

/// Certified short exact sequences for the extension and integration checks.
struct ses_entry {
  std::string name;
  std::function<short_exact_sequence(const ring&)> build;
  bool k_constant;  // quotient group is constant (hence etale)
};

inline std::vector<ses_entry> ses_grid() {
  std::vector<ses_entry> out;
  for (unsigned long p : {2ul, 3ul}) {
    out.push_back({"mu:" + std::to_string(p) + " in mu:" + std::to_string(p * p),
                   [p](const ring& k) { return ses_mu_chain(p, k); }, false});
    out.push_back({"constant:" + std::to_string(p) + " in constant:" + std::to_string(p * p),
                   [p](const ring& k) { return ses_constant_chain(p, k); }, true});
  }
  out.push_back({"mu:2 in mu:2 x constant:2",
                 [](const ring& k) {
                   return ses_product(diagonalizable_group({2}, k), constant_group({2}, k));
                 },
                 true});
  out.push_back({"mu:3 in mu:3 x mu:3",
                 [](const ring& k) {
                   return ses_product(diagonalizable_group({3}, k), diagonalizable_group({3}, k));
                 },
                 false});
  return out;
}

// ---------------------------------------------------------------------------
// Named checks. Each returns one result per grid cell.
// ---------------------------------------------------------------------------

/// Non-null scheme rank |G|-1 with a rank-1 direct summand ideal.
inline std::vector<detail::check_task> tasks_rank_law() {
  std::vector<detail::check_task> tasks;
  for (const auto& entry : hopf_group_grid())
    for (const ring& k : catalog_rings()) {
      if (!group_defined_over(entry.name, k)) continue;
      tasks.push_back([entry, k]() -> check_result {
        hopf_algebra h = entry.build(k);
        quotient_scheme_report rep = nonnull_scheme(h);
        std::string subject = entry.name + " over " + k.name();
        if (rep.rank != h.rank() - 1)
          return detail::bad("raynaud", "rank-law", subject,
                             "rank(G^x) = " + std::to_string(rep.rank));
        if (!rep.ideal_is_summand)
          return detail::bad("raynaud", "rank-law", subject, "J is not a rank-1 summand");
        return detail::ok("raynaud", "rank-law", subject);
      });
    }
  return tasks;
}

/// D_G is a rank-1 summand, the D-J pairing is perfect, and f -> f mu_0 is an
/// isomorphism A -> A'; plus existence of a Haar measure on the catalog.
inline std::vector<detail::check_task> tasks_duality() {
  std::vector<detail::check_task> tasks;
  for (const auto& entry : hopf_group_grid())
    for (const ring& k : catalog_rings()) {
      if (!group_defined_over(entry.name, k)) continue;
      tasks.push_back([entry, k]() -> check_result {
        hopf_algebra h = entry.build(k);
        duality_info d = duality_report(h);
        std::string subject = entry.name + " over " + k.name();
        if (!d.pairing_is_perfect)
          return detail::bad("raynaud", "duality", subject, "pairing <D, J> is not perfect");
        if (!d.measure_iso_holds)
          return detail::bad("raynaud", "duality", subject, "A (x) D -> A' not invertible");
        if (!d.haar_generator)
          return detail::bad("raynaud", "duality", subject, "no Haar measure found");
        return detail::ok("raynaud", "duality", subject);
      });
    }
  return tasks;
}

/// Oort-Tate: the annihilator of (x) in k[x]/(x^p - a x) is span{x^{p-1}-a}.
inline std::vector<detail::check_task> tasks_oort_tate() {
  std::vector<detail::check_task> tasks;
  for (unsigned long p : {2ul, 3ul, 5ul}) {
    long pl = static_cast<long>(p);
    for (long a : {0L, 1L, pl, pl * pl - pl})
      for (const ring& k : {ring::int_mod(pl * pl * pl), ring::int_mod(pl)}) {
        tasks.push_back([p, a, k]() -> check_result {
          augmented_algebra alg = oort_tate_algebra(p, k.from_int(a), k);
          submodule j = nonnull_ideal(alg);
          vec expected(p, scalar(0));
          expected[p - 1] = k.one();
          expected[0] = k.neg(k.from_int(a));
          std::string subject =
              "oort-tate:" + std::to_string(p) + ":" + std::to_string(a) + " over " + k.name();
          if (j != submodule::span(k, p, {expected}))
            return detail::bad("raynaud", "oort-tate-formula", subject,
                               "J != span{x^(p-1) - a}");
          return detail::ok("raynaud", "oort-tate-formula", subject);
        });
      }
  }
  return tasks;
}

/// Raynaud groups at q = 4: J = span{x1 x2 - d1 d2} for every delta pair.
inline std::vector<detail::check_task> tasks_raynaud_formula() {
  std::vector<detail::check_task> tasks;
  ring z4 = ring::int_mod(4);
  for (long d1 = 0; d1 < 4; ++d1)
    for (long d2 = 0; d2 < 4; ++d2) {
      tasks.push_back([d1, d2, z4]() -> check_result {
        augmented_algebra alg = raynaud_algebra(2, {z4.from_int(d1), z4.from_int(d2)}, z4);
        submodule j = nonnull_ideal(alg);
        vec expected(4, scalar(0));
        expected[3] = z4.one();
        expected[0] = z4.neg(z4.from_int(d1 * d2));
        std::string subject =
            "raynaud:2:" + std::to_string(d1) + "," + std::to_string(d2) + " over zmod:4";
        if (j != submodule::span(z4, 4, {expected}))
          return detail::bad("raynaud", "raynaud-formula", subject,
                             "J != span{x1*x2 - d1*d2}");
        return detail::ok("raynaud", "raynaud-formula", subject);
      });
    }
  return tasks;
}

/// Etale split A = I (+) J for constant groups over every ring and all
/// catalog groups over Q.
inline std::vector<detail::check_task> tasks_etale_split() {
  std::vector<detail::check_task> tasks;
  auto add = [&](const grid_entry& entry, const ring& k) {
    tasks.push_back([entry, k]() -> check_result {
      hopf_algebra h = entry.build(k);
      submodule i = h.augmented().augmentation_ideal();
      submodule j = nonnull_ideal(h);
      std::string subject = entry.name + " over " + k.name();
      if (i.sum(j) != submodule::full(k, h.rank()))
        return detail::bad("raynaud", "etale-split", subject, "I + J is not everything");
      if (!i.intersect(j).is_zero())
        return detail::bad("raynaud", "etale-split", subject, "I and J overlap");
      return detail::ok("raynaud", "etale-split", subject);
    });
  };
  for (const auto& entry : hopf_group_grid()) {
    if (entry.name.rfind("constant:", 0) == 0)
      for (const ring& k : catalog_rings()) add(entry, k);
    if (group_defined_over(entry.name, ring::rationals())) add(entry, ring::rationals());
  }
  return tasks;
}

/// Product formula J_{G1 x G2} = J_1 (x) J_2 as canonical submodules.
inline std::vector<detail::check_task> tasks_product_formula() {
  std::vector<detail::check_task> tasks;
  struct pair_entry {
    std::string name;
    std::function<hopf_algebra(const ring&)> left, right;
  };
  std::vector<pair_entry> pairs = {
      {"mu:2 x mu:2", [](const ring& k) { return diagonalizable_group({2}, k); },
       [](const ring& k) { return diagonalizable_group({2}, k); }},
      {"mu:3 x mu:3", [](const ring& k) { return diagonalizable_group({3}, k); },
       [](const ring& k) { return diagonalizable_group({3}, k); }},
      {"mu:3 x constant:3", [](const ring& k) { return diagonalizable_group({3}, k); },
       [](const ring& k) { return constant_group({3}, k); }},
  };
  for (const auto& pe : pairs)
    for (const ring& k : {ring::integers(), ring::int_mod(2), ring::int_mod(3)}) {
      tasks.push_back([pe, k]() -> check_result {
        hopf_algebra h1 = pe.left(k);
        hopf_algebra h2 = pe.right(k);
        hopf_algebra prod = hopf_product(h1, h2);
        submodule j1 = nonnull_ideal(h1);
        submodule j2 = nonnull_ideal(h2);
        std::vector<vec> tensor_gens;
        for (std::size_t a = 0; a < j1.generator_count(); ++a)
          for (std::size_t b = 0; b < j2.generator_count(); ++b) {
            vec u = j1.generators().row(a), v = j2.generators().row(b);
            vec w(h1.rank() * h2.rank(), scalar(0));
            for (std::size_t i = 0; i < h1.rank(); ++i)
              for (std::size_t j = 0; j < h2.rank(); ++j)
                w[i * h2.rank() + j] = k.mul(u[i], v[j]);
            tensor_gens.push_back(std::move(w));
          }
        submodule expected = submodule::span(k, prod.rank(), tensor_gens);
        std::string subject = pe.name + " over " + k.name();
        if (nonnull_ideal(prod) != expected)
          return detail::bad("products", "product-formula", subject, "J != J1 (x) J2");
        return detail::ok("products", "product-formula", subject);
      });
    }
  return tasks;
}

/// Integration in stages: invariance, lift independence, Haar to Haar, and
/// generator (x) generator to generator along the certified sequences.
inline std::vector<detail::check_task> tasks_integration() {
  std::vector<detail::check_task> tasks;
  std::vector<ring> rings = catalog_rings();
  for (const auto& se : ses_grid())
    for (const ring& k : rings) {
      tasks.push_back([se, k]() -> check_result {
        short_exact_sequence s = se.build(k);
        std::string subject = se.name + " over " + k.name();
        auto gen_b = invariant_measures(s.b).cyclic_generator();
        auto gen_c = invariant_measures(s.c).cyclic_generator();
        if (!gen_b || !gen_c)
          return detail::bad("extensions", "integration", subject, "no D generator found");
        // integrate_in_stages verifies invariance, lift independence and the
        // mu_K . I_H route internally.
        measure g = integrate_in_stages(s, *gen_b, *gen_c);
        if (submodule::span(k, s.a.rank(), {g}) != invariant_measures(s.a))
          return detail::bad("extensions", "integration", subject,
                             "generator (x) generator misses a generator of D_G");
        if (is_haar(s.b, *gen_b) && is_haar(s.c, *gen_c) && !is_haar(s.a, g))
          return detail::bad("extensions", "integration", subject, "Haar (x) Haar not Haar");
        return detail::ok("extensions", "integration", subject);
      });
    }
  return tasks;
}

/// jabc equality and the extension lemma flags over the sequence catalog.
inline std::vector<detail::check_task> tasks_extensions() {
  std::vector<detail::check_task> tasks;
  std::vector<ring> rings = catalog_rings();
  for (const auto& se : ses_grid())
    for (const ring& k : rings) {
      tasks.push_back([se, k]() -> check_result {
        short_exact_sequence s = se.build(k);
        std::string subject = se.name + " over " + k.name();
        if (!jabc_verify(s))
          return detail::bad("extensions", "jabc", subject, "J_A != pi^{-1}(J_B) * J_C A");
        extension_info e = extension_report(s);
        if (!e.h_inclusion_ok)
          return detail::bad("extensions", "extension-lemma", subject, "pi(J_A) not inside J_B");
        if (!e.pullback_inclusion_ok)
          return detail::bad("extensions", "extension-lemma", subject, "J_A not inside J_C A");
        if (e.k_etale && !e.square_cartesian)
          return detail::bad("extensions", "extension-lemma", subject,
                             "etale K but the square is not cartesian");
        if (k.kind() == ring_kind::rationals && !e.square_cartesian)
          return detail::bad("extensions", "extension-lemma", subject,
                             "everything is etale over Q");
        return detail::ok("extensions", "extension-lemma", subject);
      });
    }
  // The sharp counterexample: mu_2 in mu_4 over F_2.
  tasks.push_back([]() -> check_result {
    ring f2 = ring::int_mod(2);
    extension_info e = extension_report(ses_mu_chain(2, f2));
    if (e.square_cartesian || !e.pushed_ideal.is_zero())
      return detail::bad("extensions", "extension-counterexample", "mu:2 in mu:4 over zmod:2",
                         "expected pi(J_A) = 0 and a non-cartesian square");
    return detail::ok("extensions", "extension-counterexample", "mu:2 in mu:4 over zmod:2");
  });
  return tasks;
}

struct tower_entry {
  std::string name;
  std::function<tower(const ring&)> build;
};

inline std::vector<tower_entry> tower_grid() {
  std::vector<tower_entry> out;
  for (unsigned long p : {2ul, 3ul})
    for (std::size_t r : {1ul, 2ul}) {
      std::string suffix = std::to_string(p) + ":" + std::to_string(r);
      out.push_back({"tower:mu:" + suffix, [p, r](const ring& k) { return mu_tower(p, r, k); }});
      out.push_back({"tower:constant:" + suffix + ":1",
                     [p, r](const ring& k) { return constant_tower(p, r, 1, k); }});
      out.push_back({"tower:constant:" + suffix + ":2",
                     [p, r](const ring& k) { return constant_tower(p, r, 2, k); }});
      out.push_back({"tower:product:tower:mu:" + suffix + "+tower:constant:" + suffix + ":1",
                     [p, r](const ring& k) {
                       return tower_product(mu_tower(p, r, k), constant_tower(p, r, 1, k));
                     }});
    }
  return out;
}

/// Primitive rank law (p^h - 1) p^{h(i-1)} at every level of every tower.
inline std::vector<detail::check_task> tasks_towers() {
  std::vector<detail::check_task> tasks;
  for (const auto& te : tower_grid()) {
    tasks.push_back([te]() -> check_result {
      ring z = ring::integers();
      tower t = te.build(z);
      for (std::size_t level = 1; level <= t.length(); ++level) {
        quotient_scheme_report rep = primitive_scheme(t, level);
        mpz_class expected = primitive_rank_formula(t.p, t.height, level);
        if (mpz_class(static_cast<unsigned long>(rep.rank)) != expected)
          return detail::bad("towers", "primitive-rank", te.name + " over z",
                             "level " + std::to_string(level) + ": rank " +
                                 std::to_string(rep.rank) + " != " + expected.get_str());
      }
      return detail::ok("towers", "primitive-rank", te.name + " over z");
    });
  }
  // mu_{p^2}: non-null and primitive ranks genuinely differ.
  for (unsigned long p : {2ul, 3ul}) {
    tasks.push_back([p]() -> check_result {
      ring z = ring::integers();
      tower t = mu_tower(p, 2, z);
      std::size_t nn = nonnull_scheme(t.levels[1]).rank;
      std::size_t pr = primitive_scheme(t, 2).rank;
      std::string subject = "mu:" + std::to_string(p * p) + " over z";
      if (nn != p * p - 1 || pr != (p - 1) * p)
        return detail::bad("towers", "distinction", subject,
                           "nonnull " + std::to_string(nn) + ", primitive " + std::to_string(pr));
      return detail::ok("towers", "distinction", subject);
    });
  }
  return tasks;
}

/// Point semantics: the worked examples plus the p*Phi_p(y) product rule and
/// exactness of constant-group sections.
inline std::vector<detail::check_task> tasks_points() {
  std::vector<detail::check_task> tasks;
  tasks.push_back([]() -> check_result {
    ring z = ring::integers();
    ring z9 = ring::int_mod(9);
    hopf_algebra m3 = diagonalizable_group({3}, z);
    vec values = {z9.one(), z9.from_int(4), z9.from_int(7)};
    point pt = make_point(m3.algebra(), ring_hom(z, z9), values);
    if (is_nonnull_point(m3, pt))
      return detail::bad("towers", "points", "zeta=4 in mu_3(zmod:9)", "expected null");
    return detail::ok("towers", "points", "zeta=4 in mu_3(zmod:9)");
  });
  tasks.push_back([]() -> check_result {
    ring f3 = ring::int_mod(3);
    hopf_algebra m3 = diagonalizable_group({3}, f3);
    point pt = make_point(m3.algebra(), ring_hom::identity(f3), vec(3, f3.one()));
    if (!is_nonnull_point(m3, pt))
      return detail::bad("towers", "points", "zeta=1 in mu_3(zmod:3)", "expected non-null");
    return detail::ok("towers", "points", "zeta=1 in mu_3(zmod:3)");
  });
  for (unsigned long p : {2ul, 3ul})
    for (long modulus : {static_cast<long>(p), static_cast<long>(p * p)}) {
      tasks.push_back([p, modulus]() -> check_result {
        ring r = ring::int_mod(modulus);
        hopf_algebra mp = diagonalizable_group({p}, r);
        hopf_algebra sq = hopf_product(mp, mp);
        std::string subject =
            "(1,y) in mu_" + std::to_string(p) + "^2 over zmod:" + std::to_string(modulus);
        for (long y = 0; y < modulus; ++y) {
          scalar yp = r.one();
          for (unsigned long e = 0; e < p; ++e) yp = r.mul(yp, r.from_int(y));
          if (yp != r.one()) continue;
          vec values(sq.rank());
          scalar phi = r.zero(), ypow = r.one();
          for (std::size_t jj = 0; jj < p; ++jj) {
            for (std::size_t i = 0; i < p; ++i) values[i * p + jj] = ypow;
            phi = r.add(phi, ypow);
            ypow = r.mul(ypow, r.from_int(y));
          }
          point pt = make_point(sq.algebra(), ring_hom::identity(r), values);
          bool rule = r.is_zero(r.mul(r.from_int(static_cast<long>(p)), phi));
          if (is_nonnull_point(sq, pt) != rule)
            return detail::bad("towers", "points", subject,
                               "p*Phi_p(y) rule fails at y=" + std::to_string(y));
        }
        return detail::ok("towers", "points", subject);
      });
    }
  for (auto orders : {std::vector<unsigned long>{4}, std::vector<unsigned long>{2, 2},
                      std::vector<unsigned long>{9}}) {
    tasks.push_back([orders]() -> check_result {
      ring z = ring::integers();
      hopf_algebra c = constant_group(orders, z);
      std::string subject = "sections of a constant group of order " + std::to_string(c.rank());
      for (std::size_t g = 0; g < c.rank(); ++g) {
        vec values(c.rank(), scalar(0));
        values[g] = z.one();
        point pt = make_point(c.algebra(), ring_hom::identity(z), values);
        if (is_nonnull_point(c, pt) != (g != 0))
          return detail::bad("towers", "points", subject, "section " + std::to_string(g));
      }
      return detail::ok("towers", "points", subject);
    });
  }
  return tasks;
}

/// Base-change commutation: pushing J forward agrees with recomputing J after
/// base change, for every catalog group and supported hom.
inline std::vector<detail::check_task> tasks_base_change() {
  std::vector<detail::check_task> tasks;
  struct hom_entry {
    ring src, dst;
  };
  std::vector<hom_entry> homs;
  for (const ring& dst : {ring::rationals(), ring::int_mod(2), ring::int_mod(3),
                          ring::int_mod(4), ring::int_mod(9), ring::int_mod(8), ring::int_mod(27)})
    homs.push_back({ring::integers(), dst});
  homs.push_back({ring::int_mod(4), ring::int_mod(2)});
  homs.push_back({ring::int_mod(8), ring::int_mod(4)});
  homs.push_back({ring::int_mod(8), ring::int_mod(2)});
  homs.push_back({ring::int_mod(9), ring::int_mod(3)});
  homs.push_back({ring::int_mod(27), ring::int_mod(9)});
  homs.push_back({ring::int_mod(27), ring::int_mod(3)});

  auto push_check = [](const std::string& name, const augmented_algebra& src,
                       const augmented_algebra& dst, const ring_hom& hom) -> check_result {
    submodule j = nonnull_ideal(src);
    std::vector<vec> pushed;
    for (std::size_t i = 0; i < j.generator_count(); ++i) {
      vec row = j.generators().row(i);
      vec out;
      for (const auto& e : row) out.push_back(hom.apply(e));
      pushed.push_back(std::move(out));
    }
    std::string subject = name + ": " + hom.src().name() + " -> " + hom.dst().name();
    if (submodule::span(hom.dst(), src.rank(), pushed) != nonnull_ideal(dst))
      return detail::bad("towers", "base-change", subject, "pushed J differs from J after push");
    return detail::ok("towers", "base-change", subject);
  };

  for (const auto& he : homs) {
    for (const auto& entry : hopf_group_grid()) {
      if (!group_defined_over(entry.name, he.src)) continue;
      tasks.push_back([entry, he, push_check]() -> check_result {
        ring_hom hom(he.src, he.dst);
        hopf_algebra src = entry.build(he.src);
        hopf_algebra dst = hopf_base_change(src, hom);
        return push_check(entry.name, src.augmented(), dst.augmented(), hom);
      });
    }
    tasks.push_back([he, push_check]() -> check_result {
      ring_hom hom(he.src, he.dst);
      augmented_algebra src = oort_tate_algebra(3, he.src.from_int(3), he.src);
      augmented_algebra dst = base_change(src, hom);
      return push_check("oort-tate:3:3", src, dst, hom);
    });
    tasks.push_back([he, push_check]() -> check_result {
      ring_hom hom(he.src, he.dst);
      augmented_algebra src =
          raynaud_algebra(2, {he.src.from_int(1), he.src.from_int(2)}, he.src);
      augmented_algebra dst = base_change(src, hom);
      return push_check("raynaud:2:1,2", src, dst, hom);
    });
  }
  return tasks;
}

/// Kernels and annihilators against exhaustive enumeration over F_2 and F_3
/// at rank <= 4.
inline std::vector<detail::check_task> tasks_oracle_equivalence() {
  std::vector<detail::check_task> tasks;
  for (long p : {2L, 3L}) {
    tasks.push_back([p]() -> check_result {
      ring k = ring::int_mod(p);
      std::mt19937_64 rng(1234 + static_cast<unsigned long>(p));
      std::string subject = "kernels over zmod:" + std::to_string(p);
      for (int trial = 0; trial < 25; ++trial) {
        std::size_t rows = 1 + static_cast<std::size_t>(rng() % 4);
        std::size_t cols = 1 + static_cast<std::size_t>(rng() % 4);
        matrix m(k, rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
          for (std::size_t j = 0; j < cols; ++j)
            m.at(i, j) = k.from_int(static_cast<long>(rng() % static_cast<unsigned long>(p)));
        submodule ker = kernel(m);
        std::vector<vec> brute;
        std::vector<long> idx(rows, 0);
        for (;;) {
          vec v;
          for (long e : idx) v.push_back(k.from_int(e));
          if (is_zero_vec(mul_vec(k, v, m))) brute.push_back(v);
          std::size_t d = 0;
          while (d < rows && ++idx[d] == p) idx[d++] = 0;
          if (d == rows) break;
        }
        if (ker != submodule::span(k, rows, brute))
          return detail::bad("towers", "oracle-kernel", subject,
                             "trial " + std::to_string(trial));
      }
      return detail::ok("towers", "oracle-kernel", subject);
    });
    tasks.push_back([p]() -> check_result {
      ring k = ring::int_mod(p);
      std::string subject = "annihilators over zmod:" + std::to_string(p);
      std::vector<hopf_algebra> algebras = {diagonalizable_group({2}, k),
                                            diagonalizable_group({4}, k),
                                            constant_group({2, 2}, k),
                                            alpha_p(static_cast<unsigned long>(p), k)};
      for (const auto& h : algebras) {
        submodule aug = h.augmented().augmentation_ideal();
        submodule ann = annihilator(h.algebra(), aug);
        std::vector<vec> brute;
        std::vector<long> idx(h.rank(), 0);
        for (;;) {
          vec f;
          for (long e : idx) f.push_back(k.from_int(e));
          bool kills = true;
          for (std::size_t g = 0; g < aug.generator_count() && kills; ++g)
            kills = is_zero_vec(h.algebra().multiply(aug.generators().row(g), f));
          if (kills) brute.push_back(f);
          std::size_t d = 0;
          while (d < h.rank() && ++idx[d] == p) idx[d++] = 0;
          if (d == h.rank()) break;
        }
        if (ann != submodule::span(k, h.rank(), brute))
          return detail::bad("towers", "oracle-annihilator", subject,
                             "rank " + std::to_string(h.rank()));
      }
      return detail::ok("towers", "oracle-annihilator", subject);
    });
  }
  return tasks;
}

inline std::vector<check_result> run_suite(const std::string& name, unsigned jobs = 0) {
  std::vector<detail::check_task> tasks;
  auto append = [&](std::vector<detail::check_task> more) {
    for (auto& t : more) tasks.push_back(std::move(t));
  };
  bool known = false;
  if (name == "raynaud" || name == "all") {
    known = true;
    append(tasks_rank_law());
    append(tasks_duality());
    append(tasks_oort_tate());
    append(tasks_raynaud_formula());
    append(tasks_etale_split());
  }
  if (name == "products" || name == "all") {
    known = true;
    append(tasks_product_formula());
  }
  if (name == "extensions" || name == "all") {
    known = true;
    append(tasks_integration());
    append(tasks_extensions());
  }
  if (name == "towers" || name == "all") {
    known = true;
    append(tasks_towers());
    append(tasks_points());
    append(tasks_base_change());
    append(tasks_oracle_equivalence());
  }
  if (!known) fail(errc::parse_error, "unknown suite '" + name + "'");
  return detail::run_tasks(tasks, jobs);
}

}  // namespace primel
