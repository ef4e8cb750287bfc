#include "rvq/group.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <unordered_set>

#include "parallel.hpp"
#include "rvq/homology.hpp"

namespace rvq {

BigInt sp_order(int g, int p) {
  if (g < 1 || p < 2) throw Error(ErrorCode::OutOfRange, "sp_order needs g >= 1 and p >= 2");
  BigInt q = p;
  BigInt out = boost::multiprecision::pow(q, static_cast<unsigned>(g * g));
  for (int i = 1; i <= g; ++i) out *= boost::multiprecision::pow(q, static_cast<unsigned>(2 * i)) - 1;
  return out;
}

ModMatrix::ModMatrix(std::size_t n, int p) : n_(n), p_(p), data_(n * n, '\0') {
  if (p < 2 || p > 251) throw Error(ErrorCode::OutOfRange, "prime out of range");
}

ModMatrix ModMatrix::identity(std::size_t n, int p) {
  ModMatrix m(n, p);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ModMatrix ModMatrix::reduce(const IntMatrix& m, int p) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::OutOfRange, "matrix is not square");
  ModMatrix r(m.rows(), p);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      BigInt v = m(i, j) % p;
      if (v < 0) v += p;
      r.set(i, j, static_cast<int>(v));
    }
  return r;
}

void ModMatrix::set(std::size_t i, std::size_t j, int v) {
  v %= p_;
  if (v < 0) v += p_;
  data_[i * n_ + j] = static_cast<char>(v);
}

ModMatrix ModMatrix::operator*(const ModMatrix& b) const {
  ModMatrix c(n_, p_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < n_; ++k) s += (*this)(i, k) * b(k, j);
      c.data_[i * n_ + j] = static_cast<char>(s % p_);
    }
  return c;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix t(n_, p_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) t.data_[j * n_ + i] = data_[i * n_ + j];
  return t;
}

bool ModMatrix::invertible() const {
  std::vector<std::vector<int>> a(n_, std::vector<int>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) a[i][j] = (*this)(i, j);
  auto inv = [&](int x) {
    for (int y = 1; y < p_; ++y)
      if (x * y % p_ == 1) return y;
    return 0;
  };
  for (std::size_t c = 0, r = 0; c < n_; ++c, ++r) {
    std::size_t piv = r;
    while (piv < n_ && a[piv][c] == 0) ++piv;
    if (piv == n_) return false;
    std::swap(a[piv], a[r]);
    const int s = inv(a[r][c]);
    for (std::size_t i = r + 1; i < n_; ++i) {
      const int f = a[i][c] * s % p_;
      for (std::size_t j = c; j < n_; ++j) a[i][j] = ((a[i][j] - f * a[r][j]) % p_ + p_) % p_;
    }
  }
  return true;
}

ClosureResult modp_closure(const std::vector<IntMatrix>& generators, const IntMatrix& form, int p,
                           const ClosureOptions& options) {
  const ModMatrix j = ModMatrix::reduce(form, p);
  if (!j.invertible())
    throw Error(ErrorCode::OutOfRange, "form is degenerate mod " + std::to_string(p));
  const std::size_t n = j.size();
  if (n % 2) throw Error(ErrorCode::OutOfRange, "form has odd rank");

  std::vector<ModMatrix> gens;
  for (const auto& g : generators) {
    ModMatrix m = ModMatrix::reduce(g, p);
    if (m.size() != n || !(m * j * m.transpose() == j))
      throw Error(ErrorCode::NonSymplecticGenerator,
                  "generator does not preserve the form mod " + std::to_string(p));
    if (std::find(gens.begin(), gens.end(), m) == gens.end()) gens.push_back(std::move(m));
  }

  const ModMatrix id = ModMatrix::identity(n, p);
  std::unordered_set<std::string> seen{id.bytes()};
  std::vector<ModMatrix> frontier{id};
  while (!frontier.empty()) {
    std::vector<ModMatrix> products(frontier.size() * gens.size());
    detail::parallel_for(frontier.size(), options.threads, [&](std::size_t i) {
      for (std::size_t g = 0; g < gens.size(); ++g) products[i * gens.size() + g] = frontier[i] * gens[g];
    });
    std::vector<ModMatrix> next;
    for (auto& m : products) {
      if (!seen.insert(m.bytes()).second) continue;
      if (seen.size() > options.budget)
        throw Error(ErrorCode::BudgetExceeded,
                    "closure exceeds " + std::to_string(options.budget) + " elements");
      next.push_back(std::move(m));
    }
    frontier = std::move(next);
  }

  ClosureResult r;
  r.order = seen.size();
  r.genus = static_cast<int>(n / 2);
  r.group_order = sp_order(r.genus, p);
  if (r.group_order % r.order != 0)
    throw Error(ErrorCode::NonDividingOrder, "closure order " + std::to_string(r.order) +
                                                 " does not divide " + r.group_order.str());
  r.index = r.group_order / r.order;
  return r;
}

int k_completeness(const GeneralizedPermutation& base, std::string_view walk) {
  if (walk.empty()) return 0;
  const auto resolved = resolve_walk(base, walk);
  std::vector<int> wins(base.size(), 0);
  for (const auto& s : resolved.steps) {
    if (s.reversed) throw Error(ErrorCode::OutOfRange, "walk has reversed arrows");
    ++wins[s.arrow.winner];
  }
  return *std::min_element(wins.begin(), wins.end());
}

namespace {

// Vertex sequence of a directed walk of class indices, or nullopt if a move
// is undefined.
std::optional<std::vector<std::uint32_t>> trace(const RauzyClass& cls, std::uint32_t start,
                                                std::string_view walk) {
  std::vector<std::uint32_t> vs{start};
  for (char c : walk) {
    const Move k = (c == 't' || c == 'T') ? Move::Top : Move::Bottom;
    const bool rev = c == 'T' || c == 'B';
    const auto next = rev ? cls.source(vs.back(), k) : cls.target(vs.back(), k);
    if (next == RauzyClass::npos) return std::nullopt;
    vs.push_back(next);
  }
  return vs;
}

bool bordered(std::string_view walk, const std::vector<std::uint32_t>& vs, std::uint32_t base) {
  const std::size_t n = walk.size();
  for (std::size_t len = 1; len < n; ++len)
    if (vs[len] == base && vs[n - len] == base && walk.substr(0, len) == walk.substr(n - len))
      return true;
  return false;
}

std::uint32_t base_index(const RauzyClass& cls) {
  const auto b = cls.find(cls.base());
  if (!b) throw Error(ErrorCode::OutOfRange, "class does not contain its base");
  return static_cast<std::uint32_t>(*b);
}

// Shortest directed path from v to the target of dist.
std::string return_path(const RauzyClass& cls, std::uint32_t v,
                        const std::vector<std::uint32_t>& dist) {
  std::string out;
  while (dist[v] != 0) {
    for (Move k : {Move::Top, Move::Bottom}) {
      const auto t = cls.target(v, k);
      if (t != RauzyClass::npos && dist[t] + 1 == dist[v]) {
        out += move_char(k);
        v = t;
        break;
      }
    }
  }
  return out;
}

std::shared_ptr<const RauzyClass> labeled_class(const GeneralizedPermutation& base, std::size_t budget,
                                                bool admissible_only = false, unsigned threads = 1) {
  ClassOptions o;
  o.budget = budget;
  o.threads = threads;
  o.admissible_only = admissible_only;
  return enumerate_class(base, o);
}

IntMatrix divide(const IntMatrix& m, const BigInt& c) {
  IntMatrix out = m;
  if (c == 0) return out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) / c;
  return out;
}

}  // namespace

bool is_gamma_star(const GeneralizedPermutation& base, std::string_view walk) {
  std::vector<GeneralizedPermutation> vs{base};
  for (const auto& s : parse_walk(walk)) {
    if (s.reversed) return false;
    auto a = try_arrow(vs.back(), s.kind);
    if (!a) return false;
    vs.push_back(a->target);
  }
  if (walk.empty() || !(vs.back() == base)) return false;
  const std::size_t n = walk.size();
  for (std::size_t len = 1; len < n; ++len)
    if (vs[len] == base && vs[n - len] == base && walk.substr(0, len) == walk.substr(n - len))
      return false;
  return true;
}

std::string find_gamma_star(const GeneralizedPermutation& base, int k, const SearchLimits& limits) {
  const auto cls = labeled_class(base, limits.class_budget);
  const std::uint32_t b = base_index(*cls);
  const auto dist = cls->distances_to(b);
  const std::size_t d = base.size();

  std::string walk;
  std::vector<std::uint32_t> vs{b};
  std::vector<int> wins(d, 0);
  auto deficit = [&] {
    std::size_t s = 0;
    for (int w : wins) s += static_cast<std::size_t>(std::max(0, k - w));
    return s;
  };
  std::function<bool(std::size_t)> dfs = [&](std::size_t n) -> bool {
    const auto v = vs.back();
    if (walk.size() == n) return v == b && deficit() == 0 && !bordered(walk, vs, b);
    const std::size_t left = n - walk.size();
    if (dist[v] == RauzyClass::npos || dist[v] > left || deficit() > left) return false;
    for (Move m : {Move::Top, Move::Bottom}) {
      const auto t = cls->target(v, m);
      if (t == RauzyClass::npos) continue;
      const Letter w = cls->winner(v, m);
      walk.push_back(move_char(m));
      vs.push_back(t);
      ++wins[w];
      if (dfs(n)) return true;
      --wins[w];
      vs.pop_back();
      walk.pop_back();
    }
    return false;
  };
  for (std::size_t n = 1; n <= limits.exhaustive_length; ++n)
    if (dfs(n)) return walk;

  std::mt19937_64 rng(limits.seed);
  for (std::size_t attempt = 0; attempt < limits.random_attempts; ++attempt) {
    walk.clear();
    vs.assign(1, b);
    std::fill(wins.begin(), wins.end(), 0);
    while ((deficit() > 0 || walk.empty()) && walk.size() < 100'000) {
      std::vector<Move> moves;
      for (Move m : {Move::Top, Move::Bottom})
        if (cls->target(vs.back(), m) != RauzyClass::npos &&
            dist[cls->target(vs.back(), m)] != RauzyClass::npos)
          moves.push_back(m);
      if (moves.empty()) break;
      const Move m = moves[rng() % moves.size()];
      ++wins[cls->winner(vs.back(), m)];
      walk.push_back(move_char(m));
      vs.push_back(cls->target(vs.back(), m));
    }
    for (char c : return_path(*cls, vs.back(), dist)) {
      const Move m = c == 't' ? Move::Top : Move::Bottom;
      ++wins[cls->winner(vs.back(), m)];
      walk.push_back(c);
      vs.push_back(cls->target(vs.back(), m));
    }
    if (deficit() == 0 && !bordered(walk, vs, b)) return walk;
  }
  throw Error(ErrorCode::BudgetExceeded, "no k-complete unbordered cycle found");
}

CycleDecomposition directed_decomposition(const RauzyClass& cls, std::string_view walk) {
  const std::uint32_t b = base_index(cls);
  const auto vs = trace(cls, b, walk);
  if (!vs) throw Error(ErrorCode::ReverseArrowMissing, "walk leaves the class");
  if (vs->back() != b) throw Error(ErrorCode::OutOfRange, "walk is not a cycle at the base");

  CycleDecomposition out;
  const bool directed = std::none_of(walk.begin(), walk.end(), [](char c) { return c == 'T' || c == 'B'; });
  if (directed) {
    if (!walk.empty()) out.cycles.push_back({std::string(walk), false});
  } else {
    // u(v): directed path base -> v from a BFS tree; w(v): shortest path v -> base.
    std::vector<std::string> u(cls.size());
    std::vector<bool> reached(cls.size(), false);
    std::deque<std::uint32_t> q{b};
    reached[b] = true;
    while (!q.empty()) {
      const auto x = q.front();
      q.pop_front();
      for (Move m : {Move::Top, Move::Bottom}) {
        const auto t = cls.target(x, m);
        if (t == RauzyClass::npos || reached[t]) continue;
        reached[t] = true;
        u[t] = u[x] + move_char(m);
        q.push_back(t);
      }
    }
    const auto dist = cls.distances_to(b);
    auto w = [&](std::uint32_t v) { return return_path(cls, v, dist); };
    auto push = [&](std::string c, bool inverse) {
      if (c.empty()) return;
      if (!out.cycles.empty() && out.cycles.back().walk == c && out.cycles.back().inverse != inverse) {
        out.cycles.pop_back();
        return;
      }
      out.cycles.push_back({std::move(c), inverse});
    };
    for (std::size_t i = 0; i < walk.size(); ++i) {
      const char c = walk[i];
      const auto prev = (*vs)[i], cur = (*vs)[i + 1];
      if (c == 't' || c == 'b') {
        push(u[prev] + c + w(cur), false);
        push(u[cur] + w(cur), true);
      } else {
        const char f = c == 'T' ? 't' : 'b';
        push(u[prev] + w(prev), false);
        push(u[cur] + f + w(prev), true);
      }
    }
  }

  const auto& base = cls.base();
  IntMatrix product = IntMatrix::identity(base.size());
  for (const auto& c : out.cycles) {
    IntMatrix m = kz_walk(base, c.walk).matrix;
    product = (c.inverse ? integer_inverse(m) : m) * product;
  }
  out.verified = product == kz_walk(base, walk).matrix;
  return out;
}

std::vector<std::string> harvest_cycles(const RauzyClass& cls, const HarvestOptions& options) {
  const std::uint32_t b = base_index(cls);
  const auto dist = cls.distances_to(b);
  std::mt19937_64 rng(options.seed);
  std::vector<std::string> out;
  std::size_t failures = 0;
  while (out.size() < options.cycles) {
    std::string walk;
    std::uint32_t v = b;
    const std::size_t steps = 1 + rng() % std::max<std::size_t>(1, options.max_length);
    for (std::size_t s = 0; s < steps; ++s) {
      std::vector<std::pair<char, std::uint32_t>> moves;
      for (Move m : {Move::Top, Move::Bottom}) {
        auto t = cls.target(v, m);
        if (t != RauzyClass::npos) moves.emplace_back(move_char(m), t);
        if (options.mixed) {
          auto r = cls.source(v, m);
          if (r != RauzyClass::npos) moves.emplace_back(m == Move::Top ? 'T' : 'B', r);
        }
      }
      moves.erase(std::remove_if(moves.begin(), moves.end(),
                                 [&](const auto& mv) {
                                   return dist[mv.second] == RauzyClass::npos ||
                                          walk.size() + 1 + dist[mv.second] > options.max_length;
                                 }),
                  moves.end());
      if (moves.empty()) break;
      const auto& mv = moves[rng() % moves.size()];
      walk += mv.first;
      v = mv.second;
    }
    walk += return_path(cls, v, dist);
    if (walk.empty()) {
      if (++failures > 1000) throw Error(ErrorCode::OutOfRange, "no cycles at the base");
      continue;
    }
    out.push_back(std::move(walk));
  }
  return out;
}

IntMatrix plus_quotient_form(const GeneralizedPermutation& base) {
  return QuotientBasis(intersection_form(base)).form();
}

IntMatrix plus_generator(const GeneralizedPermutation& base, std::string_view cycle) {
  auto r = kz_walk(base, cycle);
  if (!(r.end == base)) throw Error(ErrorCode::OutOfRange, "walk is not a cycle at the base");
  return quotient_action(base, r.matrix).matrix;
}

IntMatrix minus_quotient_form(const GeneralizedPermutation& base) {
  const IntMatrix f = minus_form(base);
  return QuotientBasis(divide(f, content(f))).form();
}

IntMatrix minus_generator(const GeneralizedPermutation& base, std::string_view cycle) {
  auto r = kz_minus_walk(base, cycle);
  if (!(r.end == base)) throw Error(ErrorCode::OutOfRange, "walk is not a cycle at the base");
  const IntMatrix f = minus_form(base);
  if (!preserves(f, r.matrix))
    throw Error(ErrorCode::NotOmegaPreserving, "minus matrix does not preserve the form");
  return QuotientBasis(divide(f, content(f))).induce(r.matrix);
}

GroupReport group_report(const GeneralizedPermutation& base, const GroupOptions& options) {
  GroupReport rep;
  rep.p = options.p;
  rep.minus = options.minus;
  const auto cls = labeled_class(base, options.class_budget, options.minus, options.closure.threads);
  rep.class_size = cls->size();
  rep.cycles = harvest_cycles(*cls, options.harvest);
  std::vector<IntMatrix> gens;
  for (const auto& c : rep.cycles)
    gens.push_back(options.minus ? minus_generator(base, c) : plus_generator(base, c));
  const IntMatrix form = options.minus ? minus_quotient_form(base) : plus_quotient_form(base);
  rep.dimension = form.rows();
  rep.closure = modp_closure(gens, form, options.p, options.closure);
  return rep;
}

}  // namespace rvq
