#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rvq/gp.hpp"

namespace rvq {

enum class Move { Top = 0, Bottom = 1 };

inline char move_char(Move k) { return k == Move::Top ? 't' : 'b'; }
inline Move other(Move k) { return k == Move::Top ? Move::Bottom : Move::Top; }

struct Arrow {
  GeneralizedPermutation source;
  Move kind;
  Letter winner;
  Letter loser;
  GeneralizedPermutation target;
  bool type_change;
};

// nullopt when the move is not defined at gp.
std::optional<Arrow> try_arrow(const GeneralizedPermutation& gp, Move kind);
// Throws MoveUndefined.
Arrow apply_arrow(const GeneralizedPermutation& gp, Move kind);

// The arrow of the given kind ending at gp, found by inverting the move
// locally. Only irreducible sources are accepted. At most one exists.
std::optional<Arrow> try_reverse_arrow(const GeneralizedPermutation& gp, Move kind);
Arrow reverse_arrow(const GeneralizedPermutation& gp, Move kind);

// Walks are strings over {t, b, T, B}; upper case means the arrow is
// traversed backwards.
struct Step {
  Move kind;
  bool reversed;
};

std::vector<Step> parse_walk(std::string_view walk);
std::string format_walk(const std::vector<Step>& steps);
std::string inverse_walk(std::string_view walk);

struct ResolvedStep {
  Arrow arrow;  // always the forward arrow
  bool reversed;
};

struct ResolvedWalk {
  std::vector<ResolvedStep> steps;
  GeneralizedPermutation end;
};

// Throws MoveUndefined or ReverseArrowMissing.
ResolvedWalk resolve_walk(const GeneralizedPermutation& base, std::string_view walk);

// Raw byte-level moves on compact keys (see GeneralizedPermutation::key).
bool step_key(std::string_view key, Move kind, std::string& out);

struct ClassOptions {
  std::size_t budget = 10'000'000;
  unsigned threads = 1;
  // Vertices are stored in reduced form.
  bool reduced = false;
  // Keep only arrows whose winner is not a duplicate letter.
  bool admissible_only = false;
};

class RauzyClass {
 public:
  static constexpr std::uint32_t npos = ~std::uint32_t{0};

  const GeneralizedPermutation& base() const { return base_; }
  std::size_t size() const { return count_; }
  bool complete() const { return complete_; }
  bool reduced() const { return reduced_; }
  bool admissible_only() const { return admissible_only_; }

  GeneralizedPermutation vertex(std::size_t i) const;
  std::string_view key(std::size_t i) const {
    return std::string_view(arena_).substr(i * key_len_, key_len_);
  }
  // Looks gp up as stored (reducing it first for reduced classes).
  std::optional<std::size_t> find(const GeneralizedPermutation& gp) const;
  std::optional<std::size_t> find_key(std::string_view key) const;

  std::uint32_t target(std::size_t i, Move k) const { return targets_[i][static_cast<int>(k)]; }
  Letter winner(std::size_t i, Move k) const { return winners_[i][static_cast<int>(k)]; }
  // Unique vertex with an arrow of kind k into i, or npos.
  std::uint32_t source(std::size_t i, Move k) const { return sources_[i][static_cast<int>(k)]; }
  bool explored(std::size_t i) const { return i < explored_; }

  // BFS distances along forward arrows, from v / to v. npos when unreachable.
  std::vector<std::uint32_t> distances_from(std::size_t v) const;
  std::vector<std::uint32_t> distances_to(std::size_t v) const;
  bool strongly_connected() const;

  std::size_t arrow_count() const;

  // Assembly, used by enumeration and the cache loader.
  RauzyClass(GeneralizedPermutation base, bool reduced, bool admissible_only);
  RauzyClass(const RauzyClass&) = delete;
  RauzyClass& operator=(const RauzyClass&) = delete;
  std::uint32_t add(std::string_view key);
  void set_arrow(std::size_t i, Move k, std::uint32_t target, Letter winner);
  void finish(bool complete, std::size_t explored);

 private:
  struct KeyHash {
    const RauzyClass* owner;
    std::size_t operator()(std::uint32_t i) const;
  };
  struct KeyEq {
    const RauzyClass* owner;
    bool operator()(std::uint32_t a, std::uint32_t b) const;
  };
  std::string_view probe_or_key(std::uint32_t i) const;

  GeneralizedPermutation base_;
  bool reduced_;
  bool admissible_only_;
  std::shared_ptr<const std::vector<std::string>> alphabet_;
  std::size_t key_len_;
  std::size_t count_ = 0;
  std::string arena_;
  std::unordered_set<std::uint32_t, KeyHash, KeyEq> index_;
  std::vector<std::array<std::uint32_t, 2>> targets_;
  std::vector<std::array<Letter, 2>> winners_;
  std::vector<std::array<std::uint32_t, 2>> sources_;
  bool complete_ = false;
  std::size_t explored_ = 0;
};

class ClassBudgetExceeded : public Error {
 public:
  ClassBudgetExceeded(std::shared_ptr<const RauzyClass> partial, std::size_t budget)
      : Error(ErrorCode::BudgetExceeded,
              "class exceeds " + std::to_string(budget) + " vertices"),
        partial_(std::move(partial)) {}
  const std::shared_ptr<const RauzyClass>& partial() const { return partial_; }

 private:
  std::shared_ptr<const RauzyClass> partial_;
};

// Breadth-first closure. Throws ReducibleSeed, ConventionViolated or
// ClassBudgetExceeded (carrying the truncated class).
std::shared_ptr<const RauzyClass> enumerate_class(const GeneralizedPermutation& seed,
                                                  const ClassOptions& options = {});

// DOT digraph; vertices labeled by their encoding, edges by move and winner.
std::string export_graph(const RauzyClass& cls);

}  // namespace rvq
