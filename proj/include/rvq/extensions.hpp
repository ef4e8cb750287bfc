#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rvq/gp.hpp"
#include "rvq/induction.hpp"
#include "rvq/strata.hpp"

namespace rvq {

// A place in a row of the extended permutation, 1-based within the row.
struct Slot {
  Row row;
  std::size_t index;
};

struct ExtensionWitness {
  GeneralizedPermutation base;      // tau
  GeneralizedPermutation extended;  // pi
  Letter letter;                    // alpha, in the alphabet of pi
  std::size_t first;                // positions of alpha in pi
  std::size_t second;
  bool convention_holds;
};

// The new letter is appended to the alphabet. Slots refer to the rows of the
// extended permutation. Throws IllegalPosition, AlphabetMismatch.
ExtensionWitness insert_letter(const GeneralizedPermutation& tau, const std::string& alpha, Slot a,
                               Slot b);
// Insert alpha immediately before positions p <= q of tau (1-based; equal
// positions give two consecutive copies).
ExtensionWitness insert_before(const GeneralizedPermutation& tau, const std::string& alpha,
                               std::size_t p, std::size_t q);

struct SimpleExtensionCheck {
  std::optional<Letter> letter;  // alpha in pi's alphabet, when pi is a simple extension
  bool base_irreducible = false;
  bool extended_irreducible = false;
  // tau irreducible and strict implies pi irreducible.
  bool lemma_consistent = true;
};

// Throws AlphabetMismatch unless pi has exactly one letter more than tau.
SimpleExtensionCheck is_simple_extension(const GeneralizedPermutation& pi,
                                         const GeneralizedPermutation& tau);
std::optional<ExtensionWitness> witness_for(const GeneralizedPermutation& pi,
                                            const GeneralizedPermutation& tau);

// Splits the singularity of the given turning orbit into orders m11 and
// m1 - m11. Throws NotSplittable, OrbitTooSmall.
GeneralizedPermutation split_singularity(const GeneralizedPermutation& tau, std::size_t orbit,
                                         int m11, const std::string& alpha = {});
// Splits one zero of a genuine permutation (quadratic order m1 = 2k) into
// m11, m12 (odd) and m13 with sum 2*m1. Throws ParityError.
GeneralizedPermutation split_even_zero(const GeneralizedPermutation& tau, std::size_t orbit,
                                       int m11, int m12, int m13);
// Orbit index of some singularity of the given order, if any.
std::optional<std::size_t> orbit_with_order(const GeneralizedPermutation& gp, int order);

struct ExtendedArrow {
  std::string walk;  // 1 to 3 arrows of the same kind
  ExtensionWitness end;
};

// The path E_*(eta) at witness.extended. Throws CaseUnmatched if the end is
// not a simple extension of eta's end.
ExtendedArrow extend_arrow(const ExtensionWitness& witness, Move eta);
// Composes extend_arrow along a lowercase walk.
ExtendedArrow extend_walk(const ExtensionWitness& witness, std::string_view walk);
// Two nested witnesses: tau -> mid -> pi. Returns the walk at pi.
std::string extend_walk(const ExtensionWitness& inner, const ExtensionWitness& outer,
                        std::string_view walk);

struct SearchTarget {
  std::vector<int> orders;  // sorted descending
  // Extra test run after the stratum, convention and irreducibility checks.
  std::function<bool(const GeneralizedPermutation&)> accept;
};

struct SearchOptions {
  std::size_t budget = 10'000'000;
  std::size_t max_results = 0;  // 0: unlimited
  unsigned threads = 1;
};

struct TwoLetterExtension {
  ExtensionWitness first;   // vertex of the source class -> mid
  ExtensionWitness second;  // mid -> result
};

// Depth-first scan over the vertices of the source class and all legal
// positions of two inserted letters A, B. Results are sorted by encoding.
std::vector<TwoLetterExtension> search_extensions(const GeneralizedPermutation& source,
                                                  const SearchTarget& target,
                                                  const SearchOptions& options = {});

}  // namespace rvq
