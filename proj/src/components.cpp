#include "rvq/components.hpp"

#include <algorithm>
#include <regex>

#include "rvq/extensions.hpp"
#include "rvq/strata.hpp"

namespace rvq {

namespace {

using Seq = std::vector<Letter>;

bool is_rotation(const Seq& a, const Seq& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  Seq doubled = a;
  doubled.insert(doubled.end(), a.begin(), a.end());
  return std::search(doubled.begin(), doubled.end(), b.begin(), b.end()) != doubled.end();
}

// Row equal to some sequence written twice.
bool doubled(const Seq& row) {
  if (row.empty() || row.size() % 2) return false;
  const std::size_t h = row.size() / 2;
  for (std::size_t i = 0; i < h; ++i)
    if (row[i] != row[i + h]) return false;
  return true;
}

std::vector<Letter> duplicates_in(const Seq& row) {
  std::vector<Letter> out;
  for (std::size_t i = 0; i < row.size(); ++i)
    for (std::size_t j = i + 1; j < row.size(); ++j)
      if (row[i] == row[j]) out.push_back(row[i]);
  return out;
}

// top ~ A X A Y and bottom ~ rev(Y) B rev(X) B, with X, Y non-empty.
bool interleaved_form(const Seq& top, const Seq& bottom) {
  const auto a = duplicates_in(top), b = duplicates_in(bottom);
  if (a.size() != 1 || b.size() != 1) return false;
  for (std::size_t start = 0; start < top.size(); ++start) {
    if (top[start] != a[0]) continue;
    Seq t(top.begin() + start, top.end());
    t.insert(t.end(), top.begin(), top.begin() + start);
    const auto second = std::find(t.begin() + 1, t.end(), a[0]);
    Seq x(t.begin() + 1, second), y(second + 1, t.end());
    if (x.empty() || y.empty()) continue;
    Seq want(y.rbegin(), y.rend());
    want.push_back(b[0]);
    want.insert(want.end(), x.rbegin(), x.rend());
    want.push_back(b[0]);
    if (is_rotation(bottom, want)) return true;
  }
  return false;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (int x : v) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

}  // namespace

bool hyperelliptic_test(const GeneralizedPermutation& gp) {
  if (gp.is_genuine())
    throw Error(ErrorCode::CriterionInapplicable, "the criterion concerns strict permutations");
  const auto top = gp.top();
  const auto bottom = gp.bottom();
  if (top.front() != bottom.back())
    throw Error(ErrorCode::CriterionInapplicable,
                "first top letter differs from last bottom letter in " + gp.to_string());
  const Letter z = top.front();
  Seq t, b;
  for (Letter a : top)
    if (a != z) t.push_back(a);
  for (Letter a : bottom)
    if (a != z) b.push_back(a);
  if (t.empty() || b.empty()) return false;
  return interleaved_form(t, b) || (doubled(t) && doubled(b));
}

GeneralizedPermutation canonical_rep(std::string_view label_in) {
  const std::string label(label_in);
  static const std::regex one(R"(\s*(\w+)\(\s*(-?\d+)\s*\)\s*)");
  static const std::regex two(R"(\s*(\w+)\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::smatch m;
  auto range = [&](bool ok) {
    if (!ok) throw Error(ErrorCode::OutOfRange, label);
  };
  if (std::regex_match(label, m, one)) {
    const std::string name = m[1];
    const int n = std::stoi(m[2]);
    std::string top, bottom;
    auto add = [](std::string& row, int x) { row += (row.empty() ? "" : " ") + std::to_string(x); };
    if (name == "tau_sym") {
      range(n >= 2);
      for (int i = 0; i < n; ++i) add(top, i);
      for (int i = n - 1; i >= 0; --i) add(bottom, i);
      return parse_gp(top + " / " + bottom);
    }
    if (name == "tau_zorich" || name == "sigma_zorich") {
      const bool sigma = name == "sigma_zorich";
      range(sigma ? n >= 4 : n >= 3);
      for (int i = 0; i <= 3; ++i) add(top, i);
      for (int k = 2; k <= n - 1; ++k) {
        add(top, 3 * k - 1);
        add(top, 3 * k);
      }
      int k0 = 2;
      if (sigma) {
        bottom = "6 5 3 2";
        k0 = 3;
      } else {
        bottom = "3 2";
      }
      for (int k = k0; k <= n - 1; ++k) {
        add(bottom, 3 * k);
        add(bottom, 3 * k - 1);
      }
      add(bottom, 1);
      add(bottom, 0);
      return parse_gp(top + " / " + bottom);
    }
    if (name == "table1") {
      range(n >= 1 && n <= 12);
      return parse_gp(extension_table()[n - 1].gp);
    }
  } else if (std::regex_match(label, m, two) && m[1] == "sigma_hyp") {
    const int s = std::stoi(m[2]), r = std::stoi(m[3]);
    range(s >= 1 && r >= 1);
    std::string top = "0 A", bottom;
    for (int i = 1; i <= s; ++i) top += " " + std::to_string(i);
    top += " A";
    for (int i = s + 1; i <= s + r; ++i) top += " " + std::to_string(i);
    for (int i = s + r; i >= s + 1; --i) bottom += std::to_string(i) + " ";
    bottom += "B";
    for (int i = s; i >= 1; --i) bottom += " " + std::to_string(i);
    bottom += " B 0";
    return parse_gp(top + " / " + bottom);
  }
  throw Error(ErrorCode::UnknownLabel, label);
}

const std::vector<ComponentEntry>& component_registry() {
  static const std::vector<ComponentEntry> entries = {
      {"H(0)", {0}, true, {"0 1 / 1 0"}},
      {"H(2)", {4}, true, {"0 1 2 3 / 3 2 1 0"}},
      {"H(1,1)", {2, 2}, true, {"0 1 2 3 4 / 4 3 2 1 0"}},
      {"H(4)^hyp", {8}, true, {"0 1 2 3 4 5 / 5 4 3 2 1 0"}},
      {"H(4)^odd", {8}, true, {"0 1 2 3 5 6 / 3 2 6 5 1 0"}},
      // One class per choice of marked zero.
      {"H(3,1)", {6, 2}, true, {"0 1 2 3 5 4 6 / 4 3 2 6 5 1 0", "0 1 2 4 3 5 6 / 3 4 2 6 5 1 0"}},
      {"H(2,2)^hyp", {4, 4}, true, {"0 1 2 3 4 5 6 / 6 5 4 3 2 1 0"}},
      {"H(6)^hyp", {12}, true, {"0 1 2 3 4 5 6 7 / 7 6 5 4 3 2 1 0"}},
      {"H(6)^even", {12}, true, {"0 1 2 3 5 6 8 9 / 6 5 3 2 9 8 1 0"}},
      {"H(6)^odd", {12}, true, {"0 1 2 3 5 6 8 9 / 3 2 6 5 9 8 1 0"}},
      {"H(3,3)^hyp", {6, 6}, true, {"0 1 2 3 4 5 6 7 8 / 8 7 6 5 4 3 2 1 0"}},
      {"H(3,3)^nonhyp", {6, 6}, true, {"0 1 2 4 3 5 6 8 9 / 3 2 6 5 9 4 8 1 0"}},
      {"Q(6,-1,-1)^nonhyp", {6, -1, -1}, false, {"1 2 3 A A 4 / 4 3 B B 2 1"}},
      {"Q(3,3,-1,-1)^nonhyp", {3, 3, -1, -1}, false, {"1 2 A A 3 4 5 / 5 B B 4 3 2 1"}},
  };
  return entries;
}

bool registry_exhaustive(const std::vector<int>& orders, bool abelian) {
  static const std::vector<std::vector<int>> covered = {{0}, {4}, {2, 2}, {8}, {6, 2}, {12}, {6, 6}};
  return abelian && std::find(covered.begin(), covered.end(), orders) != covered.end();
}

ComponentIdentifier::ComponentIdentifier(std::shared_ptr<ClassStore> store, std::size_t budget,
                                         unsigned threads)
    : store_(std::move(store)) {
  options_.budget = budget;
  options_.threads = threads;
  options_.reduced = true;
}

Identification ComponentIdentifier::identify(const GeneralizedPermutation& gp) {
  Identification out;
  out.orders = stratum_orders(gp);
  const bool abelian = gp.is_genuine();
  out.exhaustive = registry_exhaustive(out.orders, abelian);
  for (const auto& entry : component_registry()) {
    if (entry.abelian != abelian || entry.orders != out.orders) continue;
    for (const auto& rep : entry.representatives) {
      auto cls = store_->get(parse_gp(rep), options_);
      if (cls->find(gp)) {
        out.label = entry.label;
        return out;
      }
    }
  }
  return out;
}

Identification identify_component(const GeneralizedPermutation& gp) {
  ComponentIdentifier id;
  return id.identify(gp);
}

const std::vector<TableRow>& extension_table() {
  static const std::vector<TableRow> rows = {
      {"1", "H(4)^hyp", "Q(6,3,-1)^reg", {6, 3, -1}, "1 2 3 A 4 A 5 6 / 6 5 4 3 2 B B 1"},
      {"2", "H(4)^odd", "Q(6,3,-1)^reg", {6, 3, -1}, "1 2 3 4 A 5 A 6 / 6 4 B B 2 5 3 1"},
      {"3", "H(4)^hyp", "Q(6,3,-1)^irr", {6, 3, -1}, "1 A 2 3 4 5 A 6 / 6 B B 5 4 3 2 1"},
      {"4", "H(4)^odd", "Q(6,3,-1)^irr", {6, 3, -1}, "1 2 3 4 5 A A 6 / 6 B 3 B 5 2 4 1"},
      {"5", "H(3,1)", "Q(3,3,3,-1)^reg", {3, 3, 3, -1}, "1 A A 2 3 4 5 6 7 / 7 6 B 5 2 B 4 3 1"},
      {"6", "H(3,1)", "Q(3,3,3,-1)^irr", {3, 3, 3, -1}, "1 2 3 4 5 A 6 A 7 / 7 6 2 B B 5 4 3 1"},
      {"7", "H(6)^even", "Q(6,3,3)^reg", {6, 3, 3}, "1 2 A 3 4 5 6 7 A 8 / 8 7 5 B 2 6 B 4 3 1"},
      {"8", "H(6)^odd", "Q(6,3,3)^reg", {6, 3, 3}, "1 A 2 3 4 5 A 6 7 8 / 8 4 7 B 5 3 6 B 2 1"},
      {"9", "H(6)^even", "Q(6,3,3)^irr", {6, 3, 3}, "1 2 3 4 A 5 A 6 7 8 / 8 7 5 B 2 6 B 4 3 1"},
      {"10", "H(6)^odd", "Q(6,3,3)^irr", {6, 3, 3}, "1 2 3 4 5 6 A 7 A 8 / 8 B 5 B 3 7 4 6 2 1"},
      {"11", "H(3,3)^nonhyp", "Q(3,3,3,3)^reg", {3, 3, 3, 3},
       "1 A 2 A 3 4 5 6 7 8 9 / 9 6 B 5 3 7 2 8 B 4 1"},
      {"12", "H(3,3)^nonhyp", "Q(3,3,3,3)^irr", {3, 3, 3, 3},
       "1 A 2 A 3 4 5 6 7 8 9 / 9 5 2 6 4 3 B 8 B 7 1"},
  };
  return rows;
}

const std::vector<TableRow>& low_genus_examples() {
  static const std::vector<TableRow> rows = {
      {"g2a", "H(2)", "Q(6,-1,-1)^nonhyp", {6, -1, -1}, "1 2 3 A A 4 / 4 3 B B 2 1"},
      {"g2b", "H(1,1)", "Q(3,3,-1,-1)^nonhyp", {3, 3, -1, -1}, "1 2 A A 3 4 5 / 5 B B 4 3 2 1"},
      {"g3a", "H(4)^hyp", "Q(10,-1,-1)^nonhyp", {10, -1, -1}, "1 A A 2 3 4 5 6 / 6 B B 5 4 3 2 1"},
      {"g3b", "H(4)^hyp", "Q(6,1,1)^nonhyp", {6, 1, 1}, "1 A 2 3 A 4 5 6 / 6 B 5 4 B 3 2 1"},
  };
  return rows;
}

RowReport verify_row(const TableRow& row, ComponentIdentifier& identifier) {
  RowReport r;
  r.id = row.id;
  r.start = row.start;
  r.end = row.end;
  GeneralizedPermutation pi = parse_gp(row.gp);

  r.irreducible = is_irreducible(pi);
  r.convention = satisfies_convention(pi);
  if (!r.irreducible) r.failures.push_back("not irreducible");
  if (!r.convention) r.failures.push_back("convention violated");

  std::optional<GeneralizedPermutation> erased;
  for (auto [x, y] : {std::pair{"B", "A"}, std::pair{"A", "B"}}) {
    const auto mid = erase_letters(pi, std::vector<std::string>{x});
    const auto base = erase_letters(mid, std::vector<std::string>{y});
    if (is_simple_extension(pi, mid).letter && is_simple_extension(mid, base).letter) {
      r.erase_order = std::string(x) + "," + y;
      erased = base;
      break;
    }
  }
  if (!erased) {
    r.failures.push_back("no erase order gives nested simple extensions");
  } else {
    r.identified = identifier.identify(*erased).label;
    r.start_matches = r.identified == row.start;
    if (!r.start_matches)
      r.failures.push_back("erased permutation identified as " + r.identified.value_or("unknown"));
  }

  r.orders = stratum_signature(pi).orders;
  r.stratum_matches = r.orders == row.orders;
  if (!r.stratum_matches) r.failures.push_back("stratum " + join(r.orders));

  try {
    r.hyperelliptic = hyperelliptic_test(pi);
    if (*r.hyperelliptic) r.failures.push_back("hyperelliptic form detected");
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CriterionInapplicable) throw;
  }
  return r;
}

std::vector<RowReport> verify_extension_table(ComponentIdentifier& identifier,
                                              const std::vector<int>& rows) {
  std::vector<RowReport> out;
  const auto& table = extension_table();
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!rows.empty() && std::find(rows.begin(), rows.end(), static_cast<int>(i + 1)) == rows.end())
      continue;
    out.push_back(verify_row(table[i], identifier));
  }
  return out;
}

}  // namespace rvq
