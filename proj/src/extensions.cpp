#include "rvq/extensions.hpp"

#include <algorithm>
#include <map>

#include "parallel.hpp"

namespace rvq {

namespace {

std::string fresh_name(const GeneralizedPermutation& gp, const std::string& wanted) {
  if (!wanted.empty()) {
    if (gp.find(wanted)) throw Error(ErrorCode::AlphabetMismatch, "letter " + wanted + " already present");
    return wanted;
  }
  for (char c = 'A'; c <= 'Z'; ++c)
    if (!gp.find(std::string(1, c))) return std::string(1, c);
  for (int i = 0;; ++i)
    if (!gp.find("x" + std::to_string(i))) return "x" + std::to_string(i);
}

// Builds pi from explicit rows and checks both bullets of the definition.
ExtensionWitness make_witness(const GeneralizedPermutation& tau, const std::string& alpha,
                              std::vector<Letter> top, std::vector<Letter> bottom) {
  std::vector<std::string> names = tau.alphabet();
  names.push_back(alpha);
  GeneralizedPermutation pi(std::move(names), std::move(top), std::move(bottom));
  const Letter a = static_cast<Letter>(tau.size());
  auto [i, j] = pi.occurrences(a);
  const std::size_t l = pi.top_size(), n = pi.positions();
  if (i == l || j == l || j == n)
    throw Error(ErrorCode::IllegalPosition, alpha + " would end a row of " + pi.to_string());
  auto row_start = [&](std::size_t p) { return p == 1 || p == l + 1; };
  if (row_start(i) && row_start(j))
    throw Error(ErrorCode::IllegalPosition, "both copies of " + alpha + " start a row");
  return {tau, pi, a, i, j, satisfies_convention(pi)};
}

}  // namespace

ExtensionWitness insert_letter(const GeneralizedPermutation& tau, const std::string& alpha_in,
                               Slot a, Slot b) {
  const std::string alpha = fresh_name(tau, alpha_in);
  const Letter code = static_cast<Letter>(tau.size());
  auto build = [&](std::span<const Letter> row, Row which) {
    std::vector<std::size_t> slots;
    for (const Slot& s : {a, b})
      if (s.row == which) slots.push_back(s.index);
    std::sort(slots.begin(), slots.end());
    if (slots.size() == 2 && slots[0] == slots[1])
      throw Error(ErrorCode::IllegalPosition, "both copies in one slot");
    const std::size_t len = row.size() + slots.size();
    std::vector<Letter> out;
    std::size_t next = 0;
    for (std::size_t idx = 1; idx <= len; ++idx) {
      if (std::find(slots.begin(), slots.end(), idx) != slots.end()) out.push_back(code);
      else out.push_back(row[next++]);
    }
    for (auto s : slots)
      if (s < 1 || s > len) throw Error(ErrorCode::IllegalPosition, "slot out of range");
    return out;
  };
  return make_witness(tau, alpha, build(tau.top(), Row::Top), build(tau.bottom(), Row::Bottom));
}

ExtensionWitness insert_before(const GeneralizedPermutation& tau, const std::string& alpha_in,
                               std::size_t p, std::size_t q) {
  if (p > q) std::swap(p, q);
  if (p < 1 || q > tau.positions())
    throw Error(ErrorCode::IllegalPosition, "insertion position out of range");
  const std::string alpha = fresh_name(tau, alpha_in);
  const Letter code = static_cast<Letter>(tau.size());
  std::vector<Letter> top, bottom;
  for (std::size_t pos = 1; pos <= tau.positions(); ++pos) {
    auto& row = pos <= tau.top_size() ? top : bottom;
    if (pos == p) row.push_back(code);
    if (pos == q) row.push_back(code);
    row.push_back(tau.at(pos));
  }
  return make_witness(tau, alpha, std::move(top), std::move(bottom));
}

SimpleExtensionCheck is_simple_extension(const GeneralizedPermutation& pi,
                                         const GeneralizedPermutation& tau) {
  std::vector<Letter> extra;
  for (std::size_t a = 0; a < pi.size(); ++a)
    if (!tau.find(pi.name(static_cast<Letter>(a)))) extra.push_back(static_cast<Letter>(a));
  if (extra.size() != 1 || pi.size() != tau.size() + 1)
    throw Error(ErrorCode::AlphabetMismatch, "alphabets must differ by exactly one letter");

  SimpleExtensionCheck r;
  r.base_irreducible = is_irreducible(tau);
  r.extended_irreducible = is_irreducible(pi);
  r.lemma_consistent = !(r.base_irreducible && !tau.is_genuine() && !r.extended_irreducible);

  const Letter alpha = extra[0];
  if (erase_letters(pi, std::vector<Letter>{alpha}).to_string() != tau.to_string()) return r;
  auto [i, j] = pi.occurrences(alpha);
  const std::size_t l = pi.top_size(), n = pi.positions();
  if (i == l || j == l || j == n) return r;
  const bool si = i == 1 || i == l + 1, sj = j == 1 || j == l + 1;
  if (si && sj) return r;
  if (!r.base_irreducible) return r;
  r.letter = alpha;
  return r;
}

std::optional<ExtensionWitness> witness_for(const GeneralizedPermutation& pi,
                                            const GeneralizedPermutation& tau) {
  auto check = is_simple_extension(pi, tau);
  if (!check.letter) return std::nullopt;
  auto [i, j] = pi.occurrences(*check.letter);
  return ExtensionWitness{tau, pi, *check.letter, i, j, satisfies_convention(pi)};
}

std::optional<std::size_t> orbit_with_order(const GeneralizedPermutation& gp, int order) {
  auto orbits = turning_orbits(gp);
  for (std::size_t k = 0; k < orbits.size(); ++k)
    if (orbit_order(gp, orbits[k]) == order) return k;
  return std::nullopt;
}

namespace {

// All results of the constructive split, in preference order: the chosen
// orbit first, other orbits of the same order next, then the same scan on
// the row-swapped permutation.
std::vector<GeneralizedPermutation> split_candidates(const GeneralizedPermutation& tau,
                                                     std::size_t orbit, int m11,
                                                     const std::string& alpha, bool first_only) {
  auto orbits = turning_orbits(tau);
  if (orbit >= orbits.size()) throw Error(ErrorCode::OutOfRange, "no such singularity");
  const int m1 = orbit_order(tau, orbits[orbit]);
  if (m1 < 1) throw Error(ErrorCode::NotSplittable, "singularity of order " + std::to_string(m1));
  int m12 = m1 - m11;
  if (m11 < -1 || m12 < -1)
    throw Error(ErrorCode::NotSplittable, "orders must be at least -1");
  if (m11 == -1) std::swap(m11, m12);

  std::vector<int> want = stratum_orders(tau);
  want.erase(std::find(want.begin(), want.end(), m1));
  want.push_back(m11);
  want.push_back(m12);
  std::sort(want.begin(), want.end(), std::greater<>());

  std::vector<GeneralizedPermutation> out;
  for (bool flipped : {false, true}) {
    const GeneralizedPermutation g = flipped ? tau.swapped_rows() : tau;
    const std::size_t l = g.top_size(), last = g.positions();
    auto gorbits = turning_orbits(g);
    std::vector<std::size_t> order;
    if (!flipped) order.push_back(orbit);
    for (std::size_t k = 0; k < gorbits.size(); ++k)
      if ((flipped || k != orbit) && orbit_order(g, gorbits[k]) == m1) order.push_back(k);

    for (auto k : order) {
      for (std::size_t j : gorbits[k]) {
        if (j < 2 || j > l) continue;
        std::vector<std::size_t> lst;
        std::size_t x = j;
        do {
          if (x != 1 && x != last) lst.push_back(x);
          x = turning_map(g, x);
        } while (x != j);
        const std::size_t n = lst.size();
        if (static_cast<int>(n) != m1 + 2) throw Error(ErrorCode::OrbitTooSmall, g.to_string());
        // On swapped rows the orbit runs the other way, so either piece may
        // be the one that is counted first.
        for (int piece : {m11, m12}) {
          const std::size_t e = lst[static_cast<std::size_t>(1 + piece) % n];
          std::size_t i = e;
          if (e > l) i = g.sigma(lst[static_cast<std::size_t>(2 + piece) % n]);
          std::optional<ExtensionWitness> w;
          try {
            w = insert_before(g, alpha, i, j);
          } catch (const Error&) {
            continue;
          }
          GeneralizedPermutation h = flipped ? w->extended.swapped_rows() : w->extended;
          if (stratum_orders(h) != want || !is_irreducible(h)) continue;
          if (std::find(out.begin(), out.end(), h) != out.end()) continue;
          out.push_back(std::move(h));
          if (first_only) return out;
        }
      }
    }
  }
  return out;
}

}  // namespace

GeneralizedPermutation split_singularity(const GeneralizedPermutation& tau, std::size_t orbit,
                                         int m11, const std::string& alpha) {
  auto c = split_candidates(tau, orbit, m11, fresh_name(tau, alpha), true);
  if (c.empty()) throw Error(ErrorCode::NotSplittable, "no insertion realizes the split");
  return c.front();
}

GeneralizedPermutation split_even_zero(const GeneralizedPermutation& tau, std::size_t orbit,
                                       int m11, int m12, int m13) {
  if (!tau.is_genuine()) throw Error(ErrorCode::NotSplittable, "expected a genuine permutation");
  if (m11 % 2 == 0 || m12 % 2 == 0)
    throw Error(ErrorCode::ParityError, "the first two orders must be odd");
  auto orbits = turning_orbits(tau);
  if (orbit >= orbits.size()) throw Error(ErrorCode::OutOfRange, "no such singularity");
  const int m1 = orbit_order(tau, orbits[orbit]);
  if (m11 + m12 + m13 != m1)
    throw Error(ErrorCode::NotSplittable, "orders must add up to " + std::to_string(m1));
  if (m13 < -1) throw Error(ErrorCode::NotSplittable, "orders must be at least -1");

  const std::string a = fresh_name(tau, {});
  for (auto [first, rest_a, rest_b] : {std::tuple{m11, m12, m13}, std::tuple{m12, m11, m13}}) {
    const int rest = m1 - first;
    if (rest < 1) continue;
    for (const auto& mid : split_candidates(tau, orbit, first, a, false)) {
      const std::string b = fresh_name(mid, {});
      auto morbits = turning_orbits(mid);
      for (std::size_t k = 0; k < morbits.size(); ++k) {
        if (orbit_order(mid, morbits[k]) != rest) continue;
        for (const auto& out : split_candidates(mid, k, rest_a, b, false))
          if (satisfies_convention(out)) return out;
      }
      (void)rest_b;
    }
  }
  throw Error(ErrorCode::NotSplittable, "no double insertion satisfies the convention");
}

ExtendedArrow extend_arrow(const ExtensionWitness& w, Move eta) {
  const Arrow base_arrow = apply_arrow(w.base, eta);
  const auto row = eta == Move::Top ? w.extended.bottom() : w.extended.top();
  int count = 1;
  if (row.size() >= 2 && row[row.size() - 2] == w.letter) count = w.second == w.first + 1 ? 3 : 2;

  GeneralizedPermutation cur = w.extended;
  std::string walk;
  for (int s = 0; s < count; ++s) {
    auto a = try_arrow(cur, eta);
    if (!a) throw Error(ErrorCode::CaseUnmatched, "extended move undefined at " + cur.to_string());
    cur = a->target;
    walk.push_back(move_char(eta));
  }
  auto end = witness_for(cur, base_arrow.target);
  if (!end)
    throw Error(ErrorCode::CaseUnmatched,
                cur.to_string() + " is not a simple extension of " + base_arrow.target.to_string());
  return {walk, *end};
}

ExtendedArrow extend_walk(const ExtensionWitness& witness, std::string_view walk) {
  ExtendedArrow out{"", witness};
  for (auto step : parse_walk(walk)) {
    if (step.reversed) throw Error(ErrorCode::MalformedText, "extension of reversed arrows");
    auto e = extend_arrow(out.end, step.kind);
    out.walk += e.walk;
    out.end = std::move(e.end);
  }
  return out;
}

std::string extend_walk(const ExtensionWitness& inner, const ExtensionWitness& outer,
                        std::string_view walk) {
  ExtensionWitness in = inner, out = outer;
  std::string result;
  for (auto step : parse_walk(walk)) {
    if (step.reversed) throw Error(ErrorCode::MalformedText, "extension of reversed arrows");
    auto mid = extend_arrow(in, step.kind);
    for (char c : mid.walk) {
      auto e = extend_arrow(out, c == 't' ? Move::Top : Move::Bottom);
      result += e.walk;
      out = std::move(e.end);
    }
    in = std::move(mid.end);
  }
  return result;
}

std::vector<TwoLetterExtension> search_extensions(const GeneralizedPermutation& source,
                                                  const SearchTarget& target,
                                                  const SearchOptions& options) {
  ClassOptions copt;
  copt.budget = options.budget;
  copt.threads = options.threads;
  auto cls = enumerate_class(source, copt);
  std::vector<int> want = target.orders;
  std::sort(want.begin(), want.end(), std::greater<>());

  std::vector<std::vector<TwoLetterExtension>> found(cls->size());
  detail::parallel_for(cls->size(), options.threads, [&](std::size_t v) {
    const GeneralizedPermutation tau = cls->vertex(v);
    const std::string a = fresh_name(tau, {});
    const std::size_t n = tau.positions();
    for (std::size_t p = 1; p <= n; ++p) {
      for (std::size_t q = p; q <= n; ++q) {
        std::optional<ExtensionWitness> first;
        try {
          first = insert_before(tau, a, p, q);
        } catch (const Error&) {
          continue;
        }
        if (!is_irreducible(first->extended)) continue;
        const GeneralizedPermutation& mid = first->extended;
        const std::string b = fresh_name(mid, {});
        for (std::size_t r = 1; r <= n + 2; ++r) {
          for (std::size_t s = r; s <= n + 2; ++s) {
            std::optional<ExtensionWitness> second;
            try {
              second = insert_before(mid, b, r, s);
            } catch (const Error&) {
              continue;
            }
            const auto& pi = second->extended;
            if (stratum_orders(pi) != want) continue;
            if (!satisfies_convention(pi) || !is_irreducible(pi)) continue;
            if (target.accept && !target.accept(pi)) continue;
            found[v].push_back({*first, *second});
          }
        }
      }
    }
  });

  std::map<std::string, TwoLetterExtension> unique;
  for (auto& list : found)
    for (auto& e : list) unique.emplace(e.second.extended.to_string(), std::move(e));
  std::vector<TwoLetterExtension> out;
  for (auto& [k, e] : unique) {
    if (options.max_results && out.size() >= options.max_results) break;
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rvq
