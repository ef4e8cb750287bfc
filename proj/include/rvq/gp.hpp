#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rvq/errors.hpp"

namespace rvq {

// Index into the alphabet of a generalized permutation.
using Letter = int;
using Rational = boost::multiprecision::cpp_rational;

enum class Row { Top, Bottom };

// Two rows of letters, each letter occurring exactly twice. Positions are
// 1-based: 1..l on the top row, l+1..l+m on the bottom row. The alphabet is
// shared between permutations derived from one another, so letters keep
// their matrix index along induction walks.
class GeneralizedPermutation {
 public:
  GeneralizedPermutation(std::shared_ptr<const std::vector<std::string>> alphabet,
                         std::vector<Letter> top, std::vector<Letter> bottom);
  GeneralizedPermutation(std::vector<std::string> alphabet, std::vector<Letter> top,
                         std::vector<Letter> bottom);

  // Alphabet in order of first appearance, top row first.
  static GeneralizedPermutation from_tokens(const std::vector<std::string>& top,
                                            const std::vector<std::string>& bottom);

  std::size_t top_size() const { return ell_; }
  std::size_t bottom_size() const { return seq_.size() - ell_; }
  std::size_t size() const { return alphabet_->size(); }
  std::size_t positions() const { return seq_.size(); }

  Letter at(std::size_t pos) const { return seq_[pos - 1]; }
  std::size_t sigma(std::size_t pos) const { return mate_[pos - 1] + 1; }
  std::span<const Letter> sequence() const { return seq_; }
  std::span<const Letter> top() const { return {seq_.data(), ell_}; }
  std::span<const Letter> bottom() const { return {seq_.data() + ell_, seq_.size() - ell_}; }

  const std::vector<std::string>& alphabet() const { return *alphabet_; }
  const std::shared_ptr<const std::vector<std::string>>& shared_alphabet() const {
    return alphabet_;
  }
  const std::string& name(Letter a) const { return (*alphabet_)[a]; }
  std::optional<Letter> find(std::string_view name) const;
  Letter letter(std::string_view name) const;

  // Both positions of a letter, first < second.
  std::pair<std::size_t, std::size_t> occurrences(Letter a) const {
    return {first_[a] + 1, mate_[first_[a]] + 1};
  }
  Row row_of(std::size_t pos) const { return pos <= ell_ ? Row::Top : Row::Bottom; }
  bool is_duplicate(Letter a) const;
  bool is_top_duplicate(Letter a) const;
  bool is_bottom_duplicate(Letter a) const;
  bool has_top_duplicate() const;
  bool has_bottom_duplicate() const;
  bool is_genuine() const;
  // Letters appearing once in each row, in alphabet order.
  std::vector<Letter> both_rows_letters() const;

  bool same_alphabet(const GeneralizedPermutation& other) const;

  // Same alphabet, new rows.
  GeneralizedPermutation with_rows(std::vector<Letter> top, std::vector<Letter> bottom) const;
  GeneralizedPermutation swapped_rows() const;

  std::string to_string() const;
  // Compact byte key used for deduplication: l, then the letter sequence.
  std::string key() const;
  static GeneralizedPermutation from_key(std::shared_ptr<const std::vector<std::string>> alphabet,
                                         std::string_view key);

  friend bool operator==(const GeneralizedPermutation& a, const GeneralizedPermutation& b);

 private:
  void build();

  std::shared_ptr<const std::vector<std::string>> alphabet_;
  std::vector<Letter> seq_;
  std::vector<std::uint32_t> mate_;
  std::vector<std::uint32_t> first_;
  std::size_t ell_ = 0;
};

GeneralizedPermutation parse_gp(std::string_view text);

struct ValidityReport {
  bool genuine = false;
  bool strict = false;
  bool top_duplicate = false;
  bool bottom_duplicate = false;
  bool convention_holds = false;
  std::vector<std::string> violations;
};

ValidityReport validate(const GeneralizedPermutation& gp);
bool satisfies_convention(const GeneralizedPermutation& gp);

// Corners are a prefix and a suffix of each row; the prefix ends before the
// suffix starts. Row-relative, 0-based, half-open.
struct Decomposition {
  std::size_t top_left_end = 0;
  std::size_t top_right_begin = 0;
  std::size_t bottom_left_end = 0;
  std::size_t bottom_right_begin = 0;
  std::vector<Letter> top_left, top_right, bottom_left, bottom_right;
  std::string pattern;
};

std::optional<Decomposition> find_reducing_decomposition(const GeneralizedPermutation& gp);
bool is_irreducible(const GeneralizedPermutation& gp);

GeneralizedPermutation erase_letters(const GeneralizedPermutation& gp, std::span<const Letter> letters);
GeneralizedPermutation erase_letters(const GeneralizedPermutation& gp,
                                     const std::vector<std::string>& names);

// Letters renamed 0..d-1 by first appearance, top row first.
GeneralizedPermutation reduced_form(const GeneralizedPermutation& gp);
// names[a] is the new name of letter a; the alphabet order is kept.
GeneralizedPermutation relabel(const GeneralizedPermutation& gp, std::vector<std::string> names);

struct SuspensionValue {
  Rational re;
  Rational im;
};
using SuspensionDatum = std::vector<SuspensionValue>;

struct SuspensionViolation {
  enum class Kind { NonPositiveReal, TopPrefix, BottomPrefix, TotalMismatch };
  Kind kind;
  std::size_t index;  // letter for NonPositiveReal, prefix length otherwise
};

std::vector<SuspensionViolation> check_suspension(const GeneralizedPermutation& gp,
                                                  const SuspensionDatum& zeta);

}  // namespace rvq
