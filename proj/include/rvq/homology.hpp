#pragma once

#include <string_view>
#include <vector>

#include "rvq/gp.hpp"
#include "rvq/induction.hpp"
#include "rvq/matrix.hpp"

namespace rvq {

// Alternating form on the curves theta_a, indexed by alphabet order.
IntMatrix intersection_form(const GeneralizedPermutation& gp);
// Form on the letters appearing in both rows (both_rows_letters order).
IntMatrix minus_form(const GeneralizedPermutation& gp);

// Matrix of one arrow, evaluated with the source's form.
IntMatrix kz_plus(const Arrow& arrow);
IntMatrix kz_plus_inverse(const Arrow& arrow);

struct CocycleResult {
  IntMatrix matrix;
  GeneralizedPermutation end;
};

// Ordered product B_n ... B_1 along the walk; reversed steps contribute the
// inverse of the forward arrow's matrix.
CocycleResult kz_walk(const GeneralizedPermutation& base, std::string_view walk);

// Minus matrices act on the letters in both rows, which stay the same along
// walks whose winners are never duplicates. Throws DuplicateWinner.
IntMatrix kz_minus(const Arrow& arrow, const std::vector<Letter>& index);
CocycleResult kz_minus_walk(const GeneralizedPermutation& base, std::string_view walk);

// Integral basis of Z^n / ker(form) chosen by unimodular column elimination
// with pivots taken in index order.
class QuotientBasis {
 public:
  explicit QuotientBasis(const IntMatrix& form);

  std::size_t dimension() const { return rank_; }
  // Rows: complement vectors first, then the kernel basis.
  const IntMatrix& basis() const { return basis_; }
  // Induced form on the complement.
  const IntMatrix& form() const { return reduced_form_; }
  const IntMatrix& full_form() const { return form_; }
  // Action induced on the quotient by a matrix acting on row vectors.
  IntMatrix induce(const IntMatrix& m) const;

 private:
  IntMatrix form_;
  IntMatrix basis_;
  IntMatrix basis_inverse_;
  IntMatrix reduced_form_;
  std::size_t rank_ = 0;
};

struct QuotientAction {
  IntMatrix basis;   // rank x d, rows span the complement
  IntMatrix form;    // rank x rank
  IntMatrix matrix;  // rank x rank
};

// Throws NotOmegaPreserving.
QuotientAction quotient_action(const GeneralizedPermutation& gp, const IntMatrix& matrix);

bool preserves(const IntMatrix& form, const IntMatrix& m);

}  // namespace rvq
