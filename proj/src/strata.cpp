#include "rvq/strata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "rvq/homology.hpp"

namespace rvq {

std::size_t turning_map(const GeneralizedPermutation& gp, std::size_t k) {
  const std::size_t l = gp.top_size(), n = gp.positions();
  if (k == 1) return gp.sigma(l + 1);
  if (k <= l) return gp.sigma(k - 1);
  if (k < n) return gp.sigma(k + 1);
  return gp.sigma(l);
}

std::vector<std::vector<std::size_t>> turning_orbits(const GeneralizedPermutation& gp) {
  const std::size_t n = gp.positions();
  std::vector<bool> seen(n + 1, false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= n; ++k) {
    if (seen[k]) continue;
    std::vector<std::size_t> orbit;
    for (std::size_t x = k; !seen[x]; x = turning_map(gp, x)) {
      seen[x] = true;
      orbit.push_back(x);
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

int orbit_order(const GeneralizedPermutation& gp, const std::vector<std::size_t>& orbit) {
  const std::size_t last = gp.positions();
  int size = 0;
  for (auto x : orbit) size += (x != 1 && x != last);
  return size - 2;
}

std::vector<int> stratum_orders(const GeneralizedPermutation& gp) {
  std::vector<int> orders;
  for (const auto& o : turning_orbits(gp)) orders.push_back(orbit_order(gp, o));
  std::sort(orders.begin(), orders.end(), std::greater<>());
  return orders;
}

int genus_of(const std::vector<int>& orders) {
  const int sum = std::accumulate(orders.begin(), orders.end(), 0);
  if ((sum + 4) % 4 != 0) return -1;
  return (sum + 4) / 4;
}

StratumSignature stratum_signature(const GeneralizedPermutation& gp) {
  StratumSignature sig;
  sig.orders = stratum_orders(gp);
  sig.genus = genus_of(sig.orders);
  sig.marked_points = static_cast<int>(std::count(sig.orders.begin(), sig.orders.end(), 0));
  sig.abelian = gp.is_genuine();
  const auto r = rank(intersection_form(gp));
  if (sig.genus < 0 || static_cast<int>(r) != 2 * sig.genus)
    throw Error(ErrorCode::InconsistentGenus,
                gp.to_string() + ": orders give genus " + std::to_string(sig.genus) +
                    ", intersection form has rank " + std::to_string(r));
  return sig;
}

std::string format_orders(const std::vector<int>& orders, char prefix) {
  std::string out(1, prefix);
  out += '(';
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(orders[i]);
  }
  return out + ')';
}

std::string StratumSignature::quadratic_string() const { return format_orders(orders, 'Q'); }

std::string StratumSignature::abelian_string() const {
  if (!abelian) return {};
  std::vector<int> half;
  for (int m : orders) half.push_back(m / 2);
  return format_orders(half, 'H');
}

std::string StratumSignature::to_string() const {
  if (abelian) return abelian_string() + " [as " + quadratic_string() + "]";
  return quadratic_string();
}

std::vector<int> parse_orders(std::string_view text) {
  int factor = 1;
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), ::isspace), s.end());
  if (!s.empty() && (s[0] == 'H' || s[0] == 'Q')) {
    factor = s[0] == 'H' ? 2 : 1;
    if (s.size() < 3 || s[1] != '(' || s.back() != ')')
      throw Error(ErrorCode::MalformedText, "bad stratum " + std::string(text));
    s = s.substr(2, s.size() - 3);
  }
  std::vector<int> out;
  std::istringstream in(s);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v * factor);
    } catch (const std::exception&) {
      throw Error(ErrorCode::MalformedText, "bad order '" + tok + "'");
    }
  }
  if (out.empty()) throw Error(ErrorCode::MalformedText, "empty stratum");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace rvq
