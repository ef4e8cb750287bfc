#include "rvq/double_cover.hpp"

#include <algorithm>
#include <functional>

namespace rvq {

PermutationWithInvolution to_perm_involution(const GeneralizedPermutation& gp) {
  if (!satisfies_convention(gp))
    throw Error(ErrorCode::ConventionViolated, gp.to_string() + " lacks a duplicate in some row");
  const std::size_t l = gp.top_size(), n = gp.positions();
  std::vector<int> eps(n + 1, 0);
  for (std::size_t p = 1; p <= n; ++p) eps[p] = gp.sigma(p) < p ? 1 : 0;

  PermutationWithInvolution r;
  for (std::size_t p = n; p > l; --p) {
    r.table.push_back(SignedLetter{gp.at(p), eps[p]});
    r.left.push_back(*r.table.back());
  }
  r.star = r.table.size();
  r.table.push_back(std::nullopt);
  for (std::size_t p = 1; p <= l; ++p) {
    r.table.push_back(SignedLetter{gp.at(p), eps[p]});
    r.right.push_back(*r.table.back());
  }
  auto inside = [](const std::vector<SignedLetter>& from, const std::vector<SignedLetter>& into) {
    for (const auto& x : from) {
      SignedLetter img{x.letter, 1 - x.epsilon};
      if (std::find(into.begin(), into.end(), img) == into.end()) return false;
    }
    return true;
  };
  r.involution_condition = !inside(r.left, r.right) && !inside(r.right, r.left);
  return r;
}

std::string PermutationWithInvolution::to_string(const GeneralizedPermutation& gp) const {
  std::string out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i) out += ' ';
    if (!table[i]) out += '*';
    else out += "(" + gp.name(table[i]->letter) + "," + std::to_string(table[i]->epsilon) + ")";
  }
  return out;
}

CoverStratum cover_stratum(const std::vector<int>& orders) {
  CoverStratum c;
  int sum = 0;
  for (int m : orders) {
    sum += m;
    if (m % 2 != 0) {
      ++c.odd_count;
      c.orders.push_back(m + 1);
    } else {
      c.orders.push_back(m / 2);
      c.orders.push_back(m / 2);
    }
  }
  std::sort(c.orders.begin(), c.orders.end(), std::greater<>());
  c.marked_points = static_cast<int>(std::count(c.orders.begin(), c.orders.end(), 0));
  const int g = genus_of(orders);
  c.genus = 2 * g - 1 + c.odd_count / 2;
  int cover_sum = 0;
  for (int m : c.orders) cover_sum += m;
  if (g < 0 || c.odd_count % 2 != 0 || cover_sum != 2 * c.genus - 2 ||
      2 * c.genus - 2 != 4 * g - 4 + c.odd_count)
    throw Error(ErrorCode::InconsistentGenus, "cover genus bookkeeping failed for " +
                                                  format_orders(orders));
  c.minus_eligible = c.odd_count == 2;
  return c;
}

CoverStratum cover_stratum(const GeneralizedPermutation& gp) {
  return cover_stratum(stratum_signature(gp).orders);
}

std::string CoverStratum::to_string() const {
  std::vector<int> zeros;
  for (int m : orders)
    if (m != 0) zeros.push_back(m);
  std::string out = zeros.empty() ? "H(0)" : format_orders(zeros, 'H');
  if (marked_points)
    out += " + " + std::to_string(marked_points) + " marked point" + (marked_points > 1 ? "s" : "");
  out += " genus=" + std::to_string(genus);
  if (minus_eligible) out += " minus-eligible";
  return out;
}

}  // namespace rvq
