#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rvq/gp.hpp"

namespace rvq {

// Orbits of the turning bijection s on positions 1..2d. Each orbit starts at
// its smallest position and follows s; orbits are sorted by that position.
std::vector<std::vector<std::size_t>> turning_orbits(const GeneralizedPermutation& gp);
std::size_t turning_map(const GeneralizedPermutation& gp, std::size_t k);
int orbit_order(const GeneralizedPermutation& gp, const std::vector<std::size_t>& orbit);

struct StratumSignature {
  std::vector<int> orders;  // quadratic convention, sorted descending
  int genus = 0;
  int marked_points = 0;
  bool abelian = false;  // genuine permutation: all orders even

  std::string quadratic_string() const;  // "Q(6,-1,-1)"
  std::string abelian_string() const;    // "H(2)"; empty unless abelian
  // "Q(6,-1,-1)" or "H(2) [as Q(4)]".
  std::string to_string() const;
  friend bool operator==(const StratumSignature&, const StratumSignature&) = default;
};

// Throws InconsistentGenus when the orbit count and rank of the
// intersection form disagree.
StratumSignature stratum_signature(const GeneralizedPermutation& gp);
// Orbit-only signature without the rank cross-check (cheap).
std::vector<int> stratum_orders(const GeneralizedPermutation& gp);
int genus_of(const std::vector<int>& orders);

// "6,3,-1" or "Q(6,3,-1)" or "H(2)" (Abelian orders are doubled).
std::vector<int> parse_orders(std::string_view text);
std::string format_orders(const std::vector<int>& orders, char prefix = 'Q');

}  // namespace rvq
