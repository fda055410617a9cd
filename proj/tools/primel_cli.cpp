// primel: exact computations with finite locally free group schemes.
//
// Subcommands: catalog, nonnull, primitive, point, verify. Exit codes:
// 0 success, 1 a mathematical verification failed, 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "primel/suites.hpp"

namespace {

using namespace primel;

std::string ideal_display(const finite_algebra& source, const quotient_scheme_report& rep) {
  std::string out;
  for (std::size_t i = 0; i < rep.cut_generators.size(); ++i) {
    if (i) out += ", ";
    out += source.format_element(rep.cut_generators[i]);
  }
  return out.empty() ? "0" : out;
}

int cmd_catalog(const std::string& group_spec, const std::string& tower_spec,
                const std::string& ring_spec, const std::string& format) {
  if (group_spec.empty() && tower_spec.empty()) {
    std::cout << "group  := constant:<n>(x<n>)* | mu:<N> | alpha:<p> | oort-tate:<p>:<a>\n"
              << "        | raynaud:<p>:<d1>,...,<dn>\n"
              << "tower  := tower:mu:<p>:<r> | tower:constant:<p>:<r>:<h>\n"
              << "        | tower:product:<tower>+<tower>\n"
              << "ring   := z | q | zmod:<N>\n";
    return 0;
  }
  ring k = parse_ring(ring_spec);
  if (!tower_spec.empty()) {
    tower t = parse_tower(tower_spec, k);
    if (format == "json") {
      json j;
      j["p"] = t.p;
      j["height"] = t.height;
      j["ring"] = ring_to_json(k);
      json levels = json::array();
      for (const auto& lvl : t.levels) levels.push_back(group_to_json(group_object(lvl)));
      j["levels"] = levels;
      json maps = json::array();
      for (const auto& m : t.power_maps) maps.push_back(matrix_to_json(m));
      j["power_maps"] = maps;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << tower_spec << " over " << k.name() << ": p = " << t.p
                << ", height = " << t.height << ", levels =";
      for (const auto& lvl : t.levels) std::cout << " " << lvl.rank();
      std::cout << "\n";
    }
    return 0;
  }
  group_object g = parse_group(group_spec, k);
  if (format == "json") {
    std::cout << group_to_json(g).dump(2) << "\n";
  } else {
    const augmented_algebra& aug = augmented_of(g);
    std::cout << group_spec << " over " << k.name() << ": rank " << aug.rank() << ", basis";
    for (const auto& l : aug.algebra().labels()) std::cout << " " << l;
    std::cout << (std::holds_alternative<hopf_algebra>(g) ? "" : " (algebra + counit only)")
              << "\n";
  }
  return 0;
}

int cmd_nonnull(const std::string& group_spec, const std::string& ring_spec,
                const std::string& format) {
  ring k = parse_ring(ring_spec);
  group_object g = parse_group(group_spec, k);
  const augmented_algebra& aug = augmented_of(g);
  quotient_scheme_report rep = nonnull_scheme(aug);
  bool ok = rep.rank == aug.rank() - 1 && rep.ideal_is_summand && rep.is_free;
  if (format == "json") {
    json j = report_to_json(aug.algebra(), rep);
    j["group"] = group_spec;
    j["expected_rank"] = aug.rank() - 1;
    j["ok"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "J = <" << ideal_display(aug.algebra(), rep) << ">, rank(G^x) = " << rep.rank
              << "\n";
    if (!ok)
      std::cout << "FAIL: expected rank " << (aug.rank() - 1)
                << (rep.ideal_is_summand ? "" : "; J is not a rank-1 direct summand") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_primitive(const std::string& tower_spec, std::size_t level, const std::string& ring_spec,
                  const std::string& format) {
  ring k = parse_ring(ring_spec);
  tower t = parse_tower(tower_spec, k);
  mpz_class expected = level >= 1 && level <= t.length()
                           ? primitive_rank_formula(t.p, t.height, level)
                           : mpz_class(0);
  try {
    quotient_scheme_report rep = primitive_scheme(t, level);
    const finite_algebra& src = t.levels[level - 1].algebra();
    if (format == "json") {
      json j = report_to_json(src, rep);
      j["tower"] = tower_spec;
      j["level"] = level;
      j["expected_rank"] = expected.get_str();
      j["ok"] = true;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "ideal = <" << ideal_display(src, rep) << ">, rank = " << rep.rank
                << ", expected = " << expected.get_str() << ", OK\n";
    }
    return 0;
  } catch (const error& e) {
    if (e.code() == errc::rank_mismatch) {
      std::cout << "FAIL: " << e.what() << "\n";
      return 1;
    }
    throw;
  }
}

int cmd_point(const std::string& group_spec, const std::string& tower_spec, std::size_t level,
              const std::string& ring_spec, const std::string& points_path,
              const std::string& format) {
  ring k = parse_ring(ring_spec);
  std::ifstream in(points_path);
  if (!in) fail(errc::parse_error, "cannot open points file '" + points_path + "'");
  json doc = json::parse(in, nullptr, true);
  std::vector<point_input> inputs = points_from_json(doc);

  std::optional<tower> t;
  std::optional<group_object> g;
  if (!tower_spec.empty()) {
    t = parse_tower(tower_spec, k);
    if (level < 1 || level > t->length()) fail(errc::parse_error, "level out of range");
  } else {
    g = parse_group(group_spec, k);
  }
  json out = json::array();
  for (std::size_t idx = 0; idx < inputs.size(); ++idx) {
    ring_hom hom(k, inputs[idx].target);
    std::string verdict;
    if (t) {
      point pt = make_point(t->levels[level - 1].algebra(), hom, inputs[idx].values);
      verdict = is_primitive_point(*t, level, pt) ? "primitive" : "not primitive";
    } else {
      const augmented_algebra& aug = augmented_of(*g);
      point pt = make_point(aug.algebra(), hom, inputs[idx].values);
      verdict = is_nonnull_point(aug, pt) ? "non-null" : "null";
    }
    if (format == "json") {
      json entry;
      entry["target_ring"] = ring_to_json(inputs[idx].target);
      entry["values"] = vec_to_json(inputs[idx].target, inputs[idx].values);
      entry["verdict"] = verdict;
      out.push_back(entry);
    } else {
      std::cout << "point " << idx << ": " << verdict << "\n";
    }
  }
  if (format == "json") std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, const std::string& format, unsigned jobs) {
  std::vector<check_result> results = run_suite(suite, jobs);
  std::size_t passed = 0;
  for (const auto& r : results)
    if (r.pass) ++passed;
  if (format == "json") {
    json out = json::array();
    for (const auto& r : results) {
      json e;
      e["suite"] = r.suite;
      e["check"] = r.check;
      e["subject"] = r.subject;
      e["pass"] = r.pass;
      if (!r.detail.empty()) e["detail"] = r.detail;
      out.push_back(e);
    }
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) {
      if (r.pass)
        std::cout << "ok   " << r.check << "  " << r.subject << "\n";
      else
        std::cout << "FAIL " << r.check << "  " << r.subject << ": " << r.detail << "\n";
    }
    std::cout << passed << "/" << results.size() << " OK\n";
  }
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with finite locally free group schemes"};
  app.require_subcommand(1);

  std::string group_spec, tower_spec, ring_spec = "z", format = "text", points_path, suite;
  std::size_t level = 1;
  unsigned jobs = 0;

  auto add_common = [&](CLI::App* cmd, bool with_group, bool with_tower) {
    if (with_group) cmd->add_option("--group", group_spec, "group spec, e.g. mu:4");
    if (with_tower) cmd->add_option("--tower", tower_spec, "tower spec, e.g. tower:mu:2:2");
    cmd->add_option("--ring", ring_spec, "base ring: z, q, or zmod:<N>");
    cmd->add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* catalog = app.add_subcommand("catalog", "describe a catalog object");
  add_common(catalog, true, true);

  CLI::App* nonnull = app.add_subcommand("nonnull", "compute J_G and the non-null subscheme");
  add_common(nonnull, true, false);
  nonnull->get_option("--group")->required();

  CLI::App* primitive =
      app.add_subcommand("primitive", "compute the primitive-element subscheme of a tower level");
  add_common(primitive, false, true);
  primitive->get_option("--tower")->required();
  primitive->add_option("--level", level, "tower level i >= 1")->required();

  CLI::App* pointcmd = app.add_subcommand("point", "test points for non-nullity or primitivity");
  add_common(pointcmd, true, true);
  pointcmd->add_option("--level", level, "tower level for primitivity tests");
  pointcmd->add_option("--points", points_path, "JSON file with points")->required();

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "raynaud | products | extensions | towers | all")
      ->required()
      ->check(CLI::IsMember({"raynaud", "products", "extensions", "towers", "all"}));
  verify->add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--jobs", jobs, "worker threads (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (catalog->parsed()) return cmd_catalog(group_spec, tower_spec, ring_spec, format);
    if (nonnull->parsed()) return cmd_nonnull(group_spec, ring_spec, format);
    if (primitive->parsed()) return cmd_primitive(tower_spec, level, ring_spec, format);
    if (pointcmd->parsed()) {
      if (group_spec.empty() == tower_spec.empty())
        fail(errc::parse_error, "point needs exactly one of --group or --tower");
      return cmd_point(group_spec, tower_spec, level, ring_spec, points_path, format);
    }
    if (verify->parsed()) return cmd_verify(suite, format, jobs);
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    bool usage = e.code() == errc::parse_error || e.code() == errc::invalid_point ||
                 e.code() == errc::characteristic_mismatch ||
                 e.code() == errc::unsupported_hom || e.code() == errc::bad_modulus;
    return usage ? 2 : 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
