#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvq/gp.hpp"
#include "rvq/induction.hpp"
#include "rvq/matrix.hpp"

namespace rvq {

// p^(g^2) * prod_{i=1..g} (p^(2i) - 1).
BigInt sp_order(int g, int p);

// Square matrix over F_p, entries stored as bytes (p < 256).
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t n, int p);
  static ModMatrix identity(std::size_t n, int p);
  static ModMatrix reduce(const IntMatrix& m, int p);

  std::size_t size() const { return n_; }
  int prime() const { return p_; }
  std::uint8_t operator()(std::size_t i, std::size_t j) const {
    return static_cast<std::uint8_t>(data_[i * n_ + j]);
  }
  void set(std::size_t i, std::size_t j, int v);
  const std::string& bytes() const { return data_; }

  ModMatrix operator*(const ModMatrix& b) const;
  ModMatrix transpose() const;
  friend bool operator==(const ModMatrix& a, const ModMatrix& b) {
    return a.n_ == b.n_ && a.p_ == b.p_ && a.data_ == b.data_;
  }
  bool invertible() const;

 private:
  std::size_t n_ = 0;
  int p_ = 2;
  std::string data_;
};

struct ClosureOptions {
  std::size_t budget = 10'000'000;
  unsigned threads = 1;
};

struct ClosureResult {
  std::size_t order = 0;
  int genus = 0;
  BigInt group_order;  // |Sp(2g, F_p)|
  BigInt index;
};

// Subgroup of Sp(form mod p) generated by the matrices. The form must be
// non-degenerate mod p (OutOfRange otherwise). Throws BudgetExceeded,
// NonSymplecticGenerator, NonDividingOrder.
ClosureResult modp_closure(const std::vector<IntMatrix>& generators, const IntMatrix& form, int p,
                           const ClosureOptions& options = {});

// Minimum over letters of the win counts along a directed walk. Throws
// MoveUndefined, and OutOfRange for reversed steps.
int k_completeness(const GeneralizedPermutation& base, std::string_view walk);

// No proper non-empty cycle at the base is both a prefix and a suffix.
bool is_gamma_star(const GeneralizedPermutation& base, std::string_view walk);

struct SearchLimits {
  std::size_t class_budget = 10'000'000;
  std::size_t exhaustive_length = 16;
  std::size_t random_attempts = 10'000;
  std::uint64_t seed = 1;
};

// Shortest-then-lexicographic k-complete unbordered directed cycle at the
// base; random search beyond the exhaustive length. Throws BudgetExceeded.
std::string find_gamma_star(const GeneralizedPermutation& base, int k,
                            const SearchLimits& limits = {});

struct SignedCycle {
  std::string walk;  // directed cycle at the base
  bool inverse;      // contributes B^{-1}
};

struct CycleDecomposition {
  std::vector<SignedCycle> cycles;  // in walk order
  bool verified = false;            // product matches B of the input walk
};

// Writes a cycle with reversed arrows as a product of directed cycles and
// their inverses. The class must contain the base (labeled, complete).
CycleDecomposition directed_decomposition(const RauzyClass& cls, std::string_view walk);

struct HarvestOptions {
  std::size_t cycles = 200;
  std::size_t max_length = 60;
  std::uint64_t seed = 1;
  bool mixed = false;  // allow reversed arrows
};

// Random cycles at the class base. The class must be labeled and complete.
std::vector<std::string> harvest_cycles(const RauzyClass& cls, const HarvestOptions& options);

struct GroupOptions {
  int p = 2;
  bool minus = false;
  HarvestOptions harvest;
  std::size_t class_budget = 10'000'000;
  ClosureOptions closure;
};

struct GroupReport {
  int p = 2;
  bool minus = false;
  std::size_t class_size = 0;
  std::size_t dimension = 0;  // rank of the quotient
  std::vector<std::string> cycles;
  ClosureResult closure;
};

// Plus group: cycles act on Z^A / ker(Omega). Minus group: admissible
// cycles act on the letters in both rows modulo the kernel of the minus
// form, scaled by its content.
GroupReport group_report(const GeneralizedPermutation& base, const GroupOptions& options = {});

// Cocycle matrix of a cycle induced on the quotient.
IntMatrix plus_generator(const GeneralizedPermutation& base, std::string_view cycle);
IntMatrix minus_generator(const GeneralizedPermutation& base, std::string_view cycle);
IntMatrix plus_quotient_form(const GeneralizedPermutation& base);
IntMatrix minus_quotient_form(const GeneralizedPermutation& base);

}  // namespace rvq
