#include "rvq/induction.hpp"

#include <deque>
#include <sstream>

#include "parallel.hpp"

namespace rvq {

namespace {

using uchar = unsigned char;

inline uchar at(std::string_view s, std::size_t i) { return static_cast<uchar>(s[i]); }

// Top move on a key: [l, seq...].
bool top_key(std::string_view key, std::string& out) {
  const std::size_t ell = at(key, 0);
  const std::string_view seq = key.substr(1);
  const std::size_t n = seq.size();
  const uchar w = at(seq, ell - 1), x = at(seq, n - 1);
  if (w == x) return false;
  std::size_t s = 0;
  while (s < n && (at(seq, s) != w || s == ell - 1)) ++s;

  out.clear();
  out.reserve(key.size());
  if (s >= ell) {
    // The loser moves right after the winner's bottom occurrence.
    out.push_back(static_cast<char>(ell));
    out.append(seq.substr(0, s + 1));
    out.push_back(static_cast<char>(x));
    out.append(seq.substr(s + 1, n - 1 - (s + 1)));
    return true;
  }
  bool other_dup = false;
  for (std::size_t i = ell; i + 1 < n && !other_dup; ++i) {
    if (at(seq, i) == x) continue;
    for (std::size_t j = i + 1; j < n; ++j)
      if (at(seq, j) == at(seq, i)) {
        other_dup = true;
        break;
      }
  }
  if (!other_dup) return false;
  // Type change: the loser lands just before the winner's first occurrence.
  out.push_back(static_cast<char>(ell + 1));
  out.append(seq.substr(0, s));
  out.push_back(static_cast<char>(x));
  out.append(seq.substr(s, n - 1 - s));
  return true;
}

std::string swap_key(std::string_view key) {
  const std::size_t ell = at(key, 0);
  const std::size_t n = key.size() - 1;
  std::string out;
  out.reserve(key.size());
  out.push_back(static_cast<char>(n - ell));
  out.append(key.substr(1 + ell));
  out.append(key.substr(1, ell));
  return out;
}

// Preimage of a top move, if the shape allows one.
bool reverse_top_key(std::string_view key, std::string& out) {
  const std::size_t ell = at(key, 0);
  const std::string_view seq = key.substr(1);
  const std::size_t n = seq.size();
  const uchar w = at(seq, ell - 1);
  std::size_t s = 0;
  while (s < n && (at(seq, s) != w || s == ell - 1)) ++s;
  out.clear();
  if (s >= ell) {
    if (s + 1 >= n) return false;
    out.push_back(static_cast<char>(ell));
    out.append(seq.substr(0, s + 1));
    out.append(seq.substr(s + 2));
    out.push_back(seq[s + 1]);
    return true;
  }
  if (s == 0 || ell < 2) return false;
  out.push_back(static_cast<char>(ell - 1));
  out.append(seq.substr(0, s - 1));
  out.append(seq.substr(s));
  out.push_back(seq[s - 1]);
  return true;
}

bool reverse_key(std::string_view key, Move kind, std::string& out) {
  if (kind == Move::Top) return reverse_top_key(key, out);
  std::string tmp;
  if (!reverse_top_key(swap_key(key), tmp)) return false;
  out = swap_key(tmp);
  return true;
}

std::pair<Letter, Letter> winner_loser(std::string_view key, Move kind) {
  const std::size_t ell = at(key, 0);
  const Letter last_top = at(key, ell), last_bottom = at(key, key.size() - 1);
  return kind == Move::Top ? std::pair{last_top, last_bottom} : std::pair{last_bottom, last_top};
}

bool is_duplicate_in_key(std::string_view key, Letter a) {
  const std::size_t ell = at(key, 0);
  int top = 0;
  for (std::size_t p = 1; p <= ell; ++p) top += at(key, p) == a;
  return top != 1;
}

}  // namespace

bool step_key(std::string_view key, Move kind, std::string& out) {
  if (kind == Move::Top) return top_key(key, out);
  std::string tmp;
  if (!top_key(swap_key(key), tmp)) return false;
  out = swap_key(tmp);
  return true;
}

std::optional<Arrow> try_arrow(const GeneralizedPermutation& gp, Move kind) {
  const std::string key = gp.key();
  std::string out;
  if (!step_key(key, kind, out)) return std::nullopt;
  auto [w, l] = winner_loser(key, kind);
  auto target = GeneralizedPermutation::from_key(gp.shared_alphabet(), out);
  const bool change = target.top_size() != gp.top_size();
  return Arrow{gp, kind, w, l, std::move(target), change};
}

Arrow apply_arrow(const GeneralizedPermutation& gp, Move kind) {
  auto a = try_arrow(gp, kind);
  if (!a)
    throw Error(ErrorCode::MoveUndefined,
                std::string(1, move_char(kind)) + " is not defined on " + gp.to_string());
  return std::move(*a);
}

std::optional<Arrow> try_reverse_arrow(const GeneralizedPermutation& gp, Move kind) {
  const std::string key = gp.key();
  std::string pre, check;
  if (!reverse_key(key, kind, pre)) return std::nullopt;
  if (!step_key(pre, kind, check) || check != key) return std::nullopt;
  auto source = GeneralizedPermutation::from_key(gp.shared_alphabet(), pre);
  if (!is_irreducible(source)) return std::nullopt;
  return apply_arrow(source, kind);
}

Arrow reverse_arrow(const GeneralizedPermutation& gp, Move kind) {
  auto a = try_reverse_arrow(gp, kind);
  if (!a)
    throw Error(ErrorCode::ReverseArrowMissing,
                std::string("no ") + move_char(kind) + " arrow ends at " + gp.to_string());
  return std::move(*a);
}

std::vector<Step> parse_walk(std::string_view walk) {
  std::vector<Step> out;
  for (char c : walk) {
    switch (c) {
      case 't': out.push_back({Move::Top, false}); break;
      case 'b': out.push_back({Move::Bottom, false}); break;
      case 'T': out.push_back({Move::Top, true}); break;
      case 'B': out.push_back({Move::Bottom, true}); break;
      default: throw Error(ErrorCode::MalformedText, std::string("bad walk character '") + c + "'");
    }
  }
  return out;
}

std::string format_walk(const std::vector<Step>& steps) {
  std::string out;
  for (auto s : steps) {
    char c = move_char(s.kind);
    out.push_back(s.reversed ? static_cast<char>(c - 'a' + 'A') : c);
  }
  return out;
}

std::string inverse_walk(std::string_view walk) {
  auto steps = parse_walk(walk);
  std::vector<Step> inv(steps.rbegin(), steps.rend());
  for (auto& s : inv) s.reversed = !s.reversed;
  return format_walk(inv);
}

ResolvedWalk resolve_walk(const GeneralizedPermutation& base, std::string_view walk) {
  ResolvedWalk out{{}, base};
  for (auto step : parse_walk(walk)) {
    if (!step.reversed) {
      auto a = apply_arrow(out.end, step.kind);
      out.end = a.target;
      out.steps.push_back({std::move(a), false});
    } else {
      auto a = reverse_arrow(out.end, step.kind);
      out.end = a.source;
      out.steps.push_back({std::move(a), true});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {
thread_local std::string_view probe_key;
constexpr std::uint32_t probe_id = RauzyClass::npos;
}  // namespace

RauzyClass::RauzyClass(GeneralizedPermutation base, bool reduced, bool admissible_only)
    : base_(reduced ? reduced_form(base) : std::move(base)),
      reduced_(reduced),
      admissible_only_(admissible_only),
      alphabet_(base_.shared_alphabet()),
      key_len_(base_.positions() + 1),
      index_(16, KeyHash{this}, KeyEq{this}) {}

std::string_view RauzyClass::probe_or_key(std::uint32_t i) const {
  return i == probe_id ? probe_key : key(i);
}

std::size_t RauzyClass::KeyHash::operator()(std::uint32_t i) const {
  return std::hash<std::string_view>{}(owner->probe_or_key(i));
}

bool RauzyClass::KeyEq::operator()(std::uint32_t a, std::uint32_t b) const {
  return owner->probe_or_key(a) == owner->probe_or_key(b);
}

GeneralizedPermutation RauzyClass::vertex(std::size_t i) const {
  return GeneralizedPermutation::from_key(alphabet_, key(i));
}

std::optional<std::size_t> RauzyClass::find_key(std::string_view k) const {
  if (k.size() != key_len_) return std::nullopt;
  probe_key = k;
  auto it = index_.find(probe_id);
  probe_key = {};
  if (it == index_.end()) return std::nullopt;
  return *it;
}

std::optional<std::size_t> RauzyClass::find(const GeneralizedPermutation& gp) const {
  if (gp.size() != base_.size()) return std::nullopt;
  if (reduced_) return find_key(reduced_form(gp).key());
  if (!gp.same_alphabet(base_)) return std::nullopt;
  return find_key(gp.key());
}

std::uint32_t RauzyClass::add(std::string_view k) {
  if (auto f = find_key(k)) return static_cast<std::uint32_t>(*f);
  const auto id = static_cast<std::uint32_t>(count_);
  arena_.append(k);
  ++count_;
  index_.insert(id);
  targets_.push_back({npos, npos});
  winners_.push_back({-1, -1});
  return id;
}

void RauzyClass::set_arrow(std::size_t i, Move k, std::uint32_t target, Letter winner) {
  targets_[i][static_cast<int>(k)] = target;
  winners_[i][static_cast<int>(k)] = winner;
}

void RauzyClass::finish(bool complete, std::size_t explored) {
  complete_ = complete;
  explored_ = explored;
  sources_.assign(count_, {npos, npos});
  for (std::size_t i = 0; i < count_; ++i) {
    for (int k = 0; k < 2; ++k) {
      const auto t = targets_[i][k];
      if (t == npos) continue;
      if (sources_[t][k] != npos && sources_[t][k] != i)
        throw Error(ErrorCode::ReverseArrowAmbiguous,
                    "two arrows of one kind end at " + vertex(t).to_string());
      sources_[t][k] = static_cast<std::uint32_t>(i);
    }
  }
}

std::vector<std::uint32_t> RauzyClass::distances_from(std::size_t v) const {
  std::vector<std::uint32_t> dist(count_, npos);
  std::deque<std::size_t> q{v};
  dist[v] = 0;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (int k = 0; k < 2; ++k) {
      auto t = targets_[x][k];
      if (t != npos && dist[t] == npos) {
        dist[t] = dist[x] + 1;
        q.push_back(t);
      }
    }
  }
  return dist;
}

std::vector<std::uint32_t> RauzyClass::distances_to(std::size_t v) const {
  std::vector<std::uint32_t> dist(count_, npos);
  std::deque<std::size_t> q{v};
  dist[v] = 0;
  while (!q.empty()) {
    auto x = q.front();
    q.pop_front();
    for (int k = 0; k < 2; ++k) {
      auto s = sources_[x][k];
      if (s != npos && dist[s] == npos) {
        dist[s] = dist[x] + 1;
        q.push_back(s);
      }
    }
  }
  return dist;
}

bool RauzyClass::strongly_connected() const {
  if (count_ == 0) return true;
  for (auto d : distances_from(0))
    if (d == npos) return false;
  for (auto d : distances_to(0))
    if (d == npos) return false;
  return true;
}

std::size_t RauzyClass::arrow_count() const {
  std::size_t n = 0;
  for (const auto& t : targets_) n += (t[0] != npos) + (t[1] != npos);
  return n;
}

std::shared_ptr<const RauzyClass> enumerate_class(const GeneralizedPermutation& seed,
                                                  const ClassOptions& options) {
  if (!is_irreducible(seed)) throw Error(ErrorCode::ReducibleSeed, seed.to_string());
  if (!satisfies_convention(seed))
    throw Error(ErrorCode::ConventionViolated, seed.to_string());

  auto cls = std::make_shared<RauzyClass>(seed, options.reduced, options.admissible_only);
  cls->add(cls->base().key());

  struct Out {
    std::array<std::string, 2> key;
    std::array<Letter, 2> winner{-1, -1};
  };

  std::size_t lo = 0;
  while (lo < cls->size()) {
    const std::size_t hi = cls->size();
    std::vector<Out> level(hi - lo);
    detail::parallel_for(hi - lo, options.threads, [&](std::size_t j) {
      const std::string_view src = cls->key(lo + j);
      std::string next;
      for (Move k : {Move::Top, Move::Bottom}) {
        const int ki = static_cast<int>(k);
        if (!step_key(src, k, next)) continue;
        const Letter w = winner_loser(src, k).first;
        if (options.admissible_only && is_duplicate_in_key(src, w)) continue;
        if (options.reduced) {
          auto alpha = cls->base().shared_alphabet();
          next = reduced_form(GeneralizedPermutation::from_key(alpha, next)).key();
        }
        level[j].key[ki] = next;
        level[j].winner[ki] = w;
      }
    });
    // Sequential merge keeps discovery order independent of the thread count.
    for (std::size_t j = 0; j < level.size(); ++j) {
      for (int ki = 0; ki < 2; ++ki) {
        if (level[j].winner[ki] < 0) continue;
        const auto t = cls->add(level[j].key[ki]);
        cls->set_arrow(lo + j, static_cast<Move>(ki), t, level[j].winner[ki]);
      }
      if (cls->size() > options.budget) {
        cls->finish(false, lo + j + 1);
        throw ClassBudgetExceeded(cls, options.budget);
      }
    }
    lo = hi;
  }
  cls->finish(true, cls->size());
  return cls;
}

std::string export_graph(const RauzyClass& cls) {
  std::ostringstream out;
  out << "digraph rauzy {\n";
  if (!cls.complete())
    out << "  // truncated: " << cls.size() << " vertices, " << cls.size() - [&] {
      std::size_t e = 0;
      for (std::size_t i = 0; i < cls.size(); ++i) e += cls.explored(i);
      return e;
    }() << " unexplored\n  label=\"truncated\";\n";
  const auto& names = cls.base().alphabet();
  for (std::size_t i = 0; i < cls.size(); ++i)
    out << "  n" << i << " [label=\"" << cls.vertex(i).to_string() << "\"];\n";
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (Move k : {Move::Top, Move::Bottom}) {
      auto t = cls.target(i, k);
      if (t == RauzyClass::npos) continue;
      out << "  n" << i << " -> n" << t << " [label=\"" << move_char(k) << " "
          << names[cls.winner(i, k)] << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace rvq
