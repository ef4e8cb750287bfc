#include "rvq/gp.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rvq {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedText: return "MalformedText";
    case ErrorCode::LetterCountError: return "LetterCountError";
    case ErrorCode::EmptyRow: return "EmptyRow";
    case ErrorCode::MoveUndefined: return "MoveUndefined";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ReducibleSeed: return "ReducibleSeed";
    case ErrorCode::InconsistentGenus: return "InconsistentGenus";
    case ErrorCode::NotOmegaPreserving: return "NotOmegaPreserving";
    case ErrorCode::ReverseArrowAmbiguous: return "ReverseArrowAmbiguous";
    case ErrorCode::ReverseArrowMissing: return "ReverseArrowMissing";
    case ErrorCode::DuplicateWinner: return "DuplicateWinner";
    case ErrorCode::IllegalPosition: return "IllegalPosition";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::NotSplittable: return "NotSplittable";
    case ErrorCode::OrbitTooSmall: return "OrbitTooSmall";
    case ErrorCode::ParityError: return "ParityError";
    case ErrorCode::CaseUnmatched: return "CaseUnmatched";
    case ErrorCode::ConventionViolated: return "ConventionViolated";
    case ErrorCode::CriterionInapplicable: return "CriterionInapplicable";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonSymplecticGenerator: return "NonSymplecticGenerator";
    case ErrorCode::NonDividingOrder: return "NonDividingOrder";
    case ErrorCode::CacheCorrupt: return "CacheCorrupt";
  }
  return "Error";
}

GeneralizedPermutation::GeneralizedPermutation(
    std::shared_ptr<const std::vector<std::string>> alphabet, std::vector<Letter> top,
    std::vector<Letter> bottom)
    : alphabet_(std::move(alphabet)), ell_(top.size()) {
  if (top.empty() || bottom.empty()) throw Error(ErrorCode::EmptyRow, "both rows must be non-empty");
  seq_ = std::move(top);
  seq_.insert(seq_.end(), bottom.begin(), bottom.end());
  build();
}

GeneralizedPermutation::GeneralizedPermutation(std::vector<std::string> alphabet,
                                               std::vector<Letter> top, std::vector<Letter> bottom)
    : GeneralizedPermutation(std::make_shared<const std::vector<std::string>>(std::move(alphabet)),
                             std::move(top), std::move(bottom)) {}

void GeneralizedPermutation::build() {
  const std::size_t d = alphabet_->size();
  if (d < 2) throw Error(ErrorCode::LetterCountError, "at least two letters are required");
  if (d > 250) throw Error(ErrorCode::OutOfRange, "alphabet too large");
  if (seq_.size() != 2 * d)
    throw Error(ErrorCode::LetterCountError, "expected " + std::to_string(2 * d) + " positions");
  constexpr std::uint32_t none = ~0u;
  first_.assign(d, none);
  mate_.assign(seq_.size(), none);
  for (std::size_t p = 0; p < seq_.size(); ++p) {
    Letter a = seq_[p];
    if (a < 0 || static_cast<std::size_t>(a) >= d)
      throw Error(ErrorCode::LetterCountError, "letter index out of range");
    if (first_[a] == none) {
      first_[a] = static_cast<std::uint32_t>(p);
    } else if (mate_[first_[a]] == none) {
      mate_[first_[a]] = static_cast<std::uint32_t>(p);
      mate_[p] = first_[a];
    } else {
      throw Error(ErrorCode::LetterCountError, "letter " + (*alphabet_)[a] + " occurs more than twice");
    }
  }
  for (std::size_t a = 0; a < d; ++a)
    if (first_[a] == none || mate_[first_[a]] == none)
      throw Error(ErrorCode::LetterCountError, "letter " + (*alphabet_)[a] + " does not occur twice");
}

GeneralizedPermutation GeneralizedPermutation::from_tokens(const std::vector<std::string>& top,
                                                           const std::vector<std::string>& bottom) {
  std::vector<std::string> alphabet;
  std::map<std::string, Letter> index;
  std::map<std::string, int> count;
  auto convert = [&](const std::vector<std::string>& row) {
    std::vector<Letter> out;
    for (const auto& tok : row) {
      auto [it, fresh] = index.emplace(tok, static_cast<Letter>(alphabet.size()));
      if (fresh) alphabet.push_back(tok);
      ++count[tok];
      out.push_back(it->second);
    }
    return out;
  };
  auto t = convert(top);
  auto b = convert(bottom);
  for (const auto& [tok, c] : count)
    if (c != 2)
      throw Error(ErrorCode::LetterCountError,
                  "letter " + tok + " occurs " + std::to_string(c) + " times");
  return GeneralizedPermutation(std::move(alphabet), std::move(t), std::move(b));
}

std::optional<Letter> GeneralizedPermutation::find(std::string_view n) const {
  for (std::size_t a = 0; a < alphabet_->size(); ++a)
    if ((*alphabet_)[a] == n) return static_cast<Letter>(a);
  return std::nullopt;
}

Letter GeneralizedPermutation::letter(std::string_view n) const {
  auto a = find(n);
  if (!a) throw Error(ErrorCode::AlphabetMismatch, "no letter " + std::string(n));
  return *a;
}

bool GeneralizedPermutation::is_duplicate(Letter a) const {
  auto [i, j] = occurrences(a);
  return row_of(i) == row_of(j);
}

bool GeneralizedPermutation::is_top_duplicate(Letter a) const {
  return occurrences(a).second <= ell_;
}

bool GeneralizedPermutation::is_bottom_duplicate(Letter a) const {
  return occurrences(a).first > ell_;
}

bool GeneralizedPermutation::has_top_duplicate() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (is_top_duplicate(static_cast<Letter>(a))) return true;
  return false;
}

bool GeneralizedPermutation::has_bottom_duplicate() const {
  for (std::size_t a = 0; a < size(); ++a)
    if (is_bottom_duplicate(static_cast<Letter>(a))) return true;
  return false;
}

bool GeneralizedPermutation::is_genuine() const {
  return ell_ == size() && !has_top_duplicate();
}

std::vector<Letter> GeneralizedPermutation::both_rows_letters() const {
  std::vector<Letter> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (!is_duplicate(static_cast<Letter>(a))) out.push_back(static_cast<Letter>(a));
  return out;
}

bool GeneralizedPermutation::same_alphabet(const GeneralizedPermutation& other) const {
  return alphabet_ == other.alphabet_ || *alphabet_ == *other.alphabet_;
}

GeneralizedPermutation GeneralizedPermutation::with_rows(std::vector<Letter> top,
                                                         std::vector<Letter> bottom) const {
  return GeneralizedPermutation(alphabet_, std::move(top), std::move(bottom));
}

GeneralizedPermutation GeneralizedPermutation::swapped_rows() const {
  auto t = top();
  auto b = bottom();
  return with_rows({b.begin(), b.end()}, {t.begin(), t.end()});
}

std::string GeneralizedPermutation::to_string() const {
  std::string out;
  for (std::size_t p = 0; p < seq_.size(); ++p) {
    if (p == ell_) out += " /";
    if (p > 0) out += ' ';
    out += (*alphabet_)[seq_[p]];
  }
  return out;
}

std::string GeneralizedPermutation::key() const {
  std::string k(seq_.size() + 1, '\0');
  k[0] = static_cast<char>(ell_);
  for (std::size_t p = 0; p < seq_.size(); ++p) k[p + 1] = static_cast<char>(seq_[p]);
  return k;
}

GeneralizedPermutation GeneralizedPermutation::from_key(
    std::shared_ptr<const std::vector<std::string>> alphabet, std::string_view key) {
  std::size_t ell = static_cast<unsigned char>(key[0]);
  std::vector<Letter> t, b;
  for (std::size_t p = 1; p < key.size(); ++p)
    (p <= ell ? t : b).push_back(static_cast<unsigned char>(key[p]));
  return GeneralizedPermutation(std::move(alphabet), std::move(t), std::move(b));
}

bool operator==(const GeneralizedPermutation& a, const GeneralizedPermutation& b) {
  return a.ell_ == b.ell_ && a.seq_ == b.seq_ && a.same_alphabet(b);
}

GeneralizedPermutation parse_gp(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos || text.find('/', slash + 1) != std::string_view::npos)
    throw Error(ErrorCode::MalformedText, "expected exactly one '/' separating the rows");
  auto split = [](std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
  };
  auto top = split(text.substr(0, slash));
  auto bottom = split(text.substr(slash + 1));
  if (top.empty() || bottom.empty()) throw Error(ErrorCode::MalformedText, "empty row");
  return GeneralizedPermutation::from_tokens(top, bottom);
}

bool satisfies_convention(const GeneralizedPermutation& gp) {
  if (gp.is_genuine()) return true;
  return gp.has_top_duplicate() && gp.has_bottom_duplicate();
}

ValidityReport validate(const GeneralizedPermutation& gp) {
  ValidityReport r;
  r.genuine = gp.is_genuine();
  r.strict = !r.genuine;
  r.top_duplicate = gp.has_top_duplicate();
  r.bottom_duplicate = gp.has_bottom_duplicate();
  r.convention_holds = r.genuine || (r.top_duplicate && r.bottom_duplicate);
  if (r.strict && !r.top_duplicate) r.violations.push_back("no duplicate letter in the top row");
  if (r.strict && !r.bottom_duplicate) r.violations.push_back("no duplicate letter in the bottom row");
  return r;
}

namespace {

using Mask = std::uint64_t;

std::vector<Letter> letters_of(Mask m) {
  std::vector<Letter> out;
  for (Letter a = 0; m; ++a, m >>= 1)
    if (m & 1) out.push_back(a);
  return out;
}

}  // namespace

std::optional<Decomposition> find_reducing_decomposition(const GeneralizedPermutation& gp) {
  if (gp.size() > 64) throw Error(ErrorCode::OutOfRange, "reducibility scan supports at most 64 letters");
  auto t = gp.top();
  auto b = gp.bottom();
  const std::size_t l = t.size(), m = b.size();

  if (gp.is_genuine()) {
    Mask mt = 0, mb = 0;
    for (std::size_t k = 1; k < gp.size(); ++k) {
      mt |= Mask{1} << t[k - 1];
      mb |= Mask{1} << b[k - 1];
      if (mt == mb) {
        Decomposition dec{k, l, k, m, letters_of(mt), {}, letters_of(mb), {}, "prefix"};
        return dec;
      }
    }
    return std::nullopt;
  }

  std::vector<Mask> tpre(l + 1, 0), tsuf(l + 1, 0), bpre(m + 1, 0), bsuf(m + 1, 0);
  for (std::size_t i = 1; i <= l; ++i) tpre[i] = tpre[i - 1] | (Mask{1} << t[i - 1]);
  for (std::size_t i = l; i-- > 0;) tsuf[i] = tsuf[i + 1] | (Mask{1} << t[i]);
  for (std::size_t i = 1; i <= m; ++i) bpre[i] = bpre[i - 1] | (Mask{1} << b[i - 1]);
  for (std::size_t i = m; i-- > 0;) bsuf[i] = bsuf[i + 1] | (Mask{1} << b[i]);

  for (std::size_t i1 = 0; i1 <= l; ++i1) {
    for (std::size_t i2 = i1; i2 <= l; ++i2) {
      const Mask tl = tpre[i1], tr = tsuf[i2];
      for (std::size_t i3 = 0; i3 <= m; ++i3) {
        for (std::size_t i4 = i3; i4 <= m; ++i4) {
          const Mask bl = bpre[i3], br = bsuf[i4];
          const Mask A = tl & bl, B = tl & tr, C = bl & br, D = tr & br;
          if (tl != (A | B) || tr != (D | B) || bl != (A | C) || br != (D | C)) continue;
          if ((A & B) || (A & C) || (A & D) || (B & C) || (B & D) || (C & D)) continue;
          const bool etl = !tl, etr = !tr, ebl = !bl, ebr = !br;
          const int empty = etl + etr + ebl + ebr;
          std::string pattern;
          if (empty == 0) pattern = "no empty corner";
          else if (empty == 1 && (etl || ebl)) pattern = "one empty left corner";
          else if (empty == 2 && etl && ebl) pattern = "two empty left corners";
          else if (empty == 2 && etr && ebr) pattern = "two empty right corners";
          else continue;
          return Decomposition{i1, i2, i3, i4, letters_of(tl), letters_of(tr),
                               letters_of(bl), letters_of(br), pattern};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_irreducible(const GeneralizedPermutation& gp) {
  return !find_reducing_decomposition(gp).has_value();
}

GeneralizedPermutation erase_letters(const GeneralizedPermutation& gp, std::span<const Letter> letters) {
  std::vector<bool> gone(gp.size(), false);
  for (Letter a : letters) gone.at(a) = true;
  std::vector<std::string> alphabet;
  std::vector<Letter> rename(gp.size(), -1);
  for (std::size_t a = 0; a < gp.size(); ++a) {
    if (gone[a]) continue;
    rename[a] = static_cast<Letter>(alphabet.size());
    alphabet.push_back(gp.name(static_cast<Letter>(a)));
  }
  std::vector<Letter> t, b;
  for (Letter a : gp.top())
    if (!gone[a]) t.push_back(rename[a]);
  for (Letter a : gp.bottom())
    if (!gone[a]) b.push_back(rename[a]);
  if (t.empty() || b.empty()) throw Error(ErrorCode::EmptyRow, "erasing leaves an empty row");
  if (letters.empty()) return gp;
  return GeneralizedPermutation(std::move(alphabet), std::move(t), std::move(b));
}

GeneralizedPermutation erase_letters(const GeneralizedPermutation& gp,
                                     const std::vector<std::string>& names) {
  std::vector<Letter> letters;
  for (const auto& n : names) letters.push_back(gp.letter(n));
  return erase_letters(gp, letters);
}

GeneralizedPermutation reduced_form(const GeneralizedPermutation& gp) {
  std::vector<Letter> rename(gp.size(), -1);
  Letter next = 0;
  std::vector<Letter> seq;
  for (Letter a : gp.sequence()) {
    if (rename[a] < 0) rename[a] = next++;
    seq.push_back(rename[a]);
  }
  // Shared so that every reduced form of a given size uses one alphabet object.
  static thread_local std::vector<std::shared_ptr<const std::vector<std::string>>> cache;
  const std::size_t d = gp.size();
  if (cache.size() <= d) cache.resize(d + 1);
  if (!cache[d]) {
    std::vector<std::string> names;
    for (std::size_t a = 0; a < d; ++a) names.push_back(std::to_string(a));
    cache[d] = std::make_shared<const std::vector<std::string>>(std::move(names));
  }
  std::vector<Letter> t(seq.begin(), seq.begin() + gp.top_size());
  std::vector<Letter> b(seq.begin() + gp.top_size(), seq.end());
  return GeneralizedPermutation(cache[d], std::move(t), std::move(b));
}

GeneralizedPermutation relabel(const GeneralizedPermutation& gp, std::vector<std::string> names) {
  if (names.size() != gp.size()) throw Error(ErrorCode::AlphabetMismatch, "relabeling size mismatch");
  auto t = gp.top();
  auto b = gp.bottom();
  return GeneralizedPermutation(std::move(names), {t.begin(), t.end()}, {b.begin(), b.end()});
}

std::vector<SuspensionViolation> check_suspension(const GeneralizedPermutation& gp,
                                                  const SuspensionDatum& zeta) {
  using K = SuspensionViolation::Kind;
  if (zeta.size() != gp.size()) throw Error(ErrorCode::AlphabetMismatch, "datum size mismatch");
  std::vector<SuspensionViolation> out;
  for (std::size_t a = 0; a < zeta.size(); ++a)
    if (zeta[a].re <= 0) out.push_back({K::NonPositiveReal, a});

  Rational im = 0, top_re = 0, top_im = 0;
  auto t = gp.top();
  for (std::size_t i = 0; i < t.size(); ++i) {
    im += zeta[t[i]].im;
    top_re += zeta[t[i]].re;
    if (i + 1 < t.size() && im <= 0) out.push_back({K::TopPrefix, i + 1});
  }
  top_im = im;
  im = 0;
  Rational bottom_re = 0;
  auto b = gp.bottom();
  for (std::size_t i = 0; i < b.size(); ++i) {
    im += zeta[b[i]].im;
    bottom_re += zeta[b[i]].re;
    if (i + 1 < b.size() && im >= 0) out.push_back({K::BottomPrefix, i + 1});
  }
  if (top_re != bottom_re || top_im != im) out.push_back({K::TotalMismatch, 0});
  return out;
}

}  // namespace rvq
