// rvq: command-line front end for the Rauzy-Veech toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rvq/class_cache.hpp"
#include "rvq/components.hpp"
#include "rvq/double_cover.hpp"
#include "rvq/extensions.hpp"
#include "rvq/group.hpp"
#include "rvq/homology.hpp"
#include "rvq/strata.hpp"

namespace {

using nlohmann::json;
using namespace rvq;

struct Globals {
  bool json = false;
  unsigned threads = 1;
  std::size_t budget = 10'000'000;
  std::string cache_dir;
};

Globals g;

void emit(const json& j) { std::cout << j.dump() << '\n'; }

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(static_cast<long long>(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::shared_ptr<ClassStore> store() {
  static auto s = std::make_shared<ClassStore>(
      g.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(g.cache_dir));
  return s;
}

ClassOptions class_options(bool reduced = false, bool admissible = false) {
  ClassOptions o;
  o.budget = g.budget;
  o.threads = g.threads;
  o.reduced = reduced;
  o.admissible_only = admissible;
  return o;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-', 1);
    if (dash != std::string::npos) {
      const int a = std::stoi(item.substr(0, dash)), b = std::stoi(item.substr(dash + 1));
      for (int i = a; i <= b; ++i) out.push_back(i);
    } else {
      out.push_back(std::stoi(item));
    }
  }
  return out;
}

int cmd_validate(const std::string& text) {
  const auto gp = parse_gp(text);
  const auto r = validate(gp);
  const auto dec = find_reducing_decomposition(gp);
  const bool ok = r.convention_holds && !dec;
  if (g.json) {
    json j = {{"gp", gp.to_string()},
              {"genuine", r.genuine},
              {"convention", r.convention_holds},
              {"irreducible", !dec},
              {"violations", r.violations}};
    if (dec) j["decomposition"] = dec->pattern;
    emit(j);
  } else {
    std::cout << gp.to_string() << '\n'
              << (r.genuine ? "genuine" : "strict") << '\n'
              << "convention " << (r.convention_holds ? "holds" : "violated") << '\n';
    for (const auto& v : r.violations) std::cout << "  " << v << '\n';
    std::cout << (dec ? "reducible (" + dec->pattern + ")" : std::string("irreducible")) << '\n';
  }
  return ok ? 0 : 1;
}

int cmd_stratum(const std::string& text) {
  const auto gp = parse_gp(text);
  const auto s = stratum_signature(gp);
  if (g.json) {
    json orbits = json::array();
    for (const auto& o : turning_orbits(gp)) orbits.push_back({{"positions", o}, {"order", orbit_order(gp, o)}});
    emit({{"gp", gp.to_string()},
          {"stratum", s.to_string()},
          {"orders", s.orders},
          {"genus", s.genus},
          {"marked_points", s.marked_points},
          {"abelian", s.abelian},
          {"orbits", orbits}});
  } else {
    std::cout << s.to_string() << " genus=" << s.genus << '\n';
  }
  return 0;
}

int cmd_class(const std::string& text, bool reduced, bool admissible, const std::string& dot) {
  const auto gp = parse_gp(text);
  std::shared_ptr<const RauzyClass> cls;
  bool truncated = false;
  try {
    cls = store()->get(gp, class_options(reduced, admissible));
  } catch (const ClassBudgetExceeded& e) {
    cls = e.partial();
    truncated = true;
  }
  if (!dot.empty()) std::ofstream(dot) << export_graph(*cls);
  const bool sc = !truncated && cls->strongly_connected();
  if (g.json) {
    emit({{"base", cls->base().to_string()},
          {"vertices", cls->size()},
          {"arrows", cls->arrow_count()},
          {"complete", cls->complete()},
          {"reduced", reduced},
          {"admissible_only", admissible},
          {"strongly_connected", sc}});
  } else {
    std::cout << "vertices " << cls->size() << '\n'
              << "arrows " << cls->arrow_count() << '\n'
              << (cls->complete() ? "complete" : "truncated at budget") << '\n';
    if (!truncated) std::cout << (sc ? "strongly connected" : "not strongly connected") << '\n';
  }
  return truncated ? 1 : 0;
}

int cmd_cocycle(const std::string& text, const std::string& walk, bool minus) {
  const auto gp = parse_gp(text);
  const auto r = minus ? kz_minus_walk(gp, walk) : kz_walk(gp, walk);
  if (g.json) {
    emit({{"gp", gp.to_string()}, {"walk", walk}, {"minus", minus}, {"end", r.end.to_string()},
          {"matrix", matrix_json(r.matrix)}});
  } else {
    std::cout << to_string(r.matrix);
    if (r.matrix.rows() == 0 || to_string(r.matrix).back() != '\n') std::cout << '\n';
  }
  return 0;
}

int cmd_cover(const std::string& text) {
  const auto gp = parse_gp(text);
  const auto c = cover_stratum(gp);
  std::optional<PermutationWithInvolution> pwi;
  if (!gp.is_genuine()) pwi = to_perm_involution(gp);
  if (g.json) {
    json j = {{"gp", gp.to_string()},
              {"cover", c.to_string()},
              {"orders", c.orders},
              {"marked_points", c.marked_points},
              {"genus", c.genus},
              {"minus_eligible", c.minus_eligible}};
    if (pwi) {
      j["involution_table"] = pwi->to_string(gp);
      j["involution_condition"] = pwi->involution_condition;
    }
    emit(j);
  } else {
    std::cout << c.to_string() << '\n';
    if (pwi)
      std::cout << pwi->to_string(gp) << '\n'
                << "involution condition " << (pwi->involution_condition ? "holds" : "fails") << '\n';
  }
  return 0;
}

int cmd_extend(const std::string& text, std::size_t singularity, const std::string& orders) {
  const auto gp = parse_gp(text);
  const auto parts = parse_int_list(orders);
  const auto orbits = turning_orbits(gp);
  if (singularity < 1 || singularity > orbits.size())
    throw Error(ErrorCode::OutOfRange, "singularity index must be in 1.." + std::to_string(orbits.size()));
  GeneralizedPermutation out = gp;
  if (parts.size() == 2) {
    const int m1 = orbit_order(gp, orbits[singularity - 1]);
    if (parts[0] + parts[1] != m1)
      throw Error(ErrorCode::NotSplittable, "orders must add up to " + std::to_string(m1));
    out = split_singularity(gp, singularity - 1, parts[0]);
  } else if (parts.size() == 3) {
    out = split_even_zero(gp, singularity - 1, parts[0], parts[1], parts[2]);
  } else {
    throw CLI::ValidationError("--orders", "expects two or three integers");
  }
  const auto s = stratum_signature(out);
  if (g.json)
    emit({{"gp", gp.to_string()}, {"extension", out.to_string()}, {"stratum", s.to_string()}, {"genus", s.genus}});
  else
    std::cout << out.to_string() << '\n' << s.to_string() << " genus=" << s.genus << '\n';
  return 0;
}

int cmd_search(const std::string& from, const std::string& target, bool nonhyp, std::size_t max) {
  const auto gp = parse_gp(from);
  SearchTarget t;
  t.orders = parse_orders(target);
  std::sort(t.orders.begin(), t.orders.end(), std::greater<>());
  if (nonhyp) {
    t.accept = [](const GeneralizedPermutation& p) {
      try {
        return !hyperelliptic_test(p);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::CriterionInapplicable) return true;
        throw;
      }
    };
  }
  SearchOptions o;
  o.budget = g.budget;
  o.threads = g.threads;
  o.max_results = max;
  const auto found = search_extensions(gp, t, o);
  for (const auto& r : found) {
    if (g.json)
      emit({{"source", r.first.base.to_string()},
            {"mid", r.first.extended.to_string()},
            {"result", r.second.extended.to_string()}});
    else
      std::cout << r.second.extended.to_string() << "   from " << r.first.base.to_string() << '\n';
  }
  if (!g.json) std::cout << found.size() << " result" << (found.size() == 1 ? "" : "s") << '\n';
  return found.empty() ? 1 : 0;
}

int cmd_identify(const std::string& text) {
  const auto gp = parse_gp(text);
  ComponentIdentifier id(store(), g.budget, g.threads);
  const auto r = id.identify(gp);
  if (g.json)
    emit({{"gp", gp.to_string()},
          {"component", r.label ? json(*r.label) : json(nullptr)},
          {"orders", r.orders},
          {"exhaustive", r.exhaustive}});
  else
    std::cout << r.label.value_or("unknown") << '\n';
  return r.label ? 0 : 1;
}

int cmd_group(const std::string& text, int p, bool minus, std::size_t cycles, std::size_t maxlen,
              std::uint64_t seed) {
  const auto gp = parse_gp(text);
  GroupOptions o;
  o.p = p;
  o.minus = minus;
  o.harvest.cycles = cycles;
  o.harvest.max_length = maxlen;
  o.harvest.seed = seed;
  o.class_budget = g.budget;
  o.closure.budget = g.budget;
  o.closure.threads = g.threads;
  const auto r = group_report(gp, o);
  if (g.json) {
    emit({{"gp", gp.to_string()},
          {"p", p},
          {"minus", minus},
          {"order", r.closure.order},
          {"sp_order", r.closure.group_order.str()},
          {"index", r.closure.index.str()},
          {"genus", r.closure.genus},
          {"class_size", r.class_size},
          {"cycles", r.cycles.size()},
          {"max_length", maxlen},
          {"seed", seed}});
  } else {
    std::cout << "order " << r.closure.order << '\n'
              << "Sp(" << 2 * r.closure.genus << ",F_" << p << ") order " << r.closure.group_order << '\n'
              << "index " << r.closure.index << " (upper bound for the image mod " << p << ")\n"
              << r.cycles.size() << " cycles of length <= " << maxlen << ", seed " << seed
              << ", class of " << r.class_size << " vertices\n";
  }
  return 0;
}

int cmd_verify_table(const std::string& rows) {
  ComponentIdentifier id(store(), g.budget, g.threads);
  const auto reports = verify_extension_table(id, rows.empty() ? std::vector<int>{} : parse_int_list(rows));
  bool ok = true;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    if (g.json) {
      emit({{"row", r.id},
            {"start", r.start},
            {"end", r.end},
            {"irreducible", r.irreducible},
            {"convention", r.convention},
            {"erase_order", r.erase_order},
            {"identified", r.identified ? json(*r.identified) : json(nullptr)},
            {"stratum", format_orders(r.orders)},
            {"hyperelliptic", r.hyperelliptic ? json(*r.hyperelliptic) : json(nullptr)},
            {"failures", r.failures},
            {"status", r.passed() ? "PASS" : "FAIL"}});
    } else {
      std::cout << (r.passed() ? "PASS" : "FAIL") << " row " << r.id << ": " << r.start << " -> " << r.end;
      for (const auto& f : r.failures) std::cout << " [" << f << "]";
      std::cout << '\n';
    }
  }
  return ok ? 0 : 1;
}

int report_error(const Error& e) {
  if (g.json)
    emit({{"error", error_name(e.code())}, {"message", e.what()}});
  else
    std::cerr << "error: " << e.what() << '\n';
  return e.code() == ErrorCode::MalformedText ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rauzy-Veech induction for generalized permutations"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g.json, "JSON-lines output");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "vertex and group element budget")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", g.cache_dir, "class cache directory (default RVQ_CACHE_DIR or ./.rvq-cache)");

  std::string gp_text, walk = "", orders, target, rows, dot;
  bool minus = false, reduced = false, admissible = false, nonhyp = false;
  std::size_t singularity = 1, max_results = 20, cycles = 200, maxlen = 60;
  int p = 2;
  std::uint64_t seed = 1;

  std::function<int()> run;
  auto gp_arg = [&](CLI::App* sub) { sub->add_option("gp", gp_text, "generalized permutation")->required(); };

  auto* validate_cmd = app.add_subcommand("validate", "check letter counts, convention and irreducibility");
  gp_arg(validate_cmd);
  validate_cmd->callback([&] { run = [&] { return cmd_validate(gp_text); }; });

  auto* stratum_cmd = app.add_subcommand("stratum", "stratum and genus");
  gp_arg(stratum_cmd);
  stratum_cmd->callback([&] { run = [&] { return cmd_stratum(gp_text); }; });

  auto* class_cmd = app.add_subcommand("class", "enumerate the Rauzy class");
  gp_arg(class_cmd);
  class_cmd->add_flag("--reduced", reduced, "identify permutations up to relabeling");
  class_cmd->add_flag("--admissible", admissible, "drop arrows whose winner is a duplicate letter");
  class_cmd->add_option("--dot", dot, "write the graph in DOT format");
  class_cmd->callback([&] { run = [&] { return cmd_class(gp_text, reduced, admissible, dot); }; });

  auto* cocycle_cmd = app.add_subcommand("cocycle", "cocycle matrix along a walk");
  gp_arg(cocycle_cmd);
  cocycle_cmd->add_option("--walk", walk, "moves t/b, upper case for reversed arrows");
  cocycle_cmd->add_flag("--minus", minus, "minus cocycle on letters in both rows");
  cocycle_cmd->callback([&] { run = [&] { return cmd_cocycle(gp_text, walk, minus); }; });

  auto* cover_cmd = app.add_subcommand("cover", "stratum of the orientation double cover");
  gp_arg(cover_cmd);
  cover_cmd->callback([&] { run = [&] { return cmd_cover(gp_text); }; });

  auto* extend_cmd = app.add_subcommand("extend", "split a singularity by a simple extension");
  gp_arg(extend_cmd);
  extend_cmd->add_option("--singularity", singularity, "1-based turning orbit index (see stratum --json)");
  extend_cmd->add_option("--orders", orders, "m11,m12 or m11,m12,m13")->required();
  extend_cmd->callback([&] { run = [&] { return cmd_extend(gp_text, singularity, orders); }; });

  auto* search_cmd = app.add_subcommand("search", "two-letter extensions into a target stratum");
  search_cmd->add_option("--from", gp_text, "source permutation")->required();
  search_cmd->add_option("--target-stratum", target, "orders, e.g. 6,3,-1")->required();
  search_cmd->add_flag("--nonhyp", nonhyp, "reject results in hyperelliptic form");
  search_cmd->add_option("--max", max_results, "stop after this many results (0: all)");
  search_cmd->callback([&] { run = [&] { return cmd_search(gp_text, target, nonhyp, max_results); }; });

  auto* identify_cmd = app.add_subcommand("identify", "connected component by class membership");
  gp_arg(identify_cmd);
  identify_cmd->callback([&] { run = [&] { return cmd_identify(gp_text); }; });

  auto* group_cmd = app.add_subcommand("group", "mod p closure of the Rauzy-Veech group");
  gp_arg(group_cmd);
  group_cmd->add_option("--mod", p, "prime")->check(CLI::Range(2, 251));
  group_cmd->add_flag("--minus", minus, "minus group on admissible cycles");
  group_cmd->add_option("--cycles", cycles, "number of random cycles");
  group_cmd->add_option("--maxlen", maxlen, "maximal cycle length");
  group_cmd->add_option("--seed", seed, "random seed");
  group_cmd->callback([&] { run = [&] { return cmd_group(gp_text, p, minus, cycles, maxlen, seed); }; });

  auto* table_cmd = app.add_subcommand("verify-table", "verify the exceptional-strata extension table");
  table_cmd->add_option("--rows", rows, "e.g. 1-12 or 1,5,7");
  table_cmd->callback([&] { run = [&] { return cmd_verify_table(rows); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    return run();
  } catch (const Error& e) {
    return report_error(e);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: bad number: " << e.what() << '\n';
    return 2;
  }
}
