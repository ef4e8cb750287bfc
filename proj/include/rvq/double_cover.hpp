#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rvq/gp.hpp"
#include "rvq/strata.hpp"

namespace rvq {

struct SignedLetter {
  Letter letter;
  int epsilon;  // 0 or 1
  friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
};

// Table (pi(l+m), e) ... (pi(l+1), e) * (pi(1), e) ... (pi(l), e) on A x {0,1}.
// Each letter gets epsilon 0 at its first occurrence in reading order.
struct PermutationWithInvolution {
  std::vector<std::optional<SignedLetter>> table;  // nullopt marks the star
  std::size_t star = 0;
  std::vector<SignedLetter> left, right;
  // iota(A_l) is not inside A_r and iota(A_r) is not inside A_l.
  bool involution_condition = false;
  std::string to_string(const GeneralizedPermutation& gp) const;
};

// Throws ConventionViolated for strict permutations without duplicates in
// both rows.
PermutationWithInvolution to_perm_involution(const GeneralizedPermutation& gp);

struct CoverStratum {
  std::vector<int> orders;  // Abelian orders of the cover, zeros and marked points
  int marked_points = 0;
  int genus = 0;
  int odd_count = 0;
  bool minus_eligible = false;  // exactly two odd orders, so genus doubles
  std::string to_string() const;
};

CoverStratum cover_stratum(const std::vector<int>& orders);
CoverStratum cover_stratum(const GeneralizedPermutation& gp);

}  // namespace rvq
