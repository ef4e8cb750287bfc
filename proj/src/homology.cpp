#include "rvq/homology.hpp"

#include <algorithm>

namespace rvq {

namespace {

// Value of the form on (a, b) given ordered positions (ia < ja), (ib < jb).
int pair_value(std::size_t ia, std::size_t ja, std::size_t ib, std::size_t jb, std::size_t l) {
  if ((ia < ib && ib <= l && ja > jb && jb > l) || (ia < ib && ib < ja && ja < jb && jb <= l) ||
      (ib < ia && ia < jb && jb <= l && l < ja) || (ja > jb && jb > ia && ia > l && ia > ib))
    return 1;
  if ((ib < ia && ia <= l && jb > ja && ja > l) || (ib < ia && ia < jb && jb < ja && ja <= l) ||
      (ia < ib && ib < ja && ja <= l && l < jb) || (jb > ja && ja > ib && ib > l && ib > ia))
    return -1;
  return 0;
}

}  // namespace

IntMatrix intersection_form(const GeneralizedPermutation& gp) {
  const std::size_t d = gp.size(), l = gp.top_size();
  IntMatrix o(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    auto [ia, ja] = gp.occurrences(static_cast<Letter>(a));
    for (std::size_t b = 0; b < d; ++b) {
      if (a == b) continue;
      auto [ib, jb] = gp.occurrences(static_cast<Letter>(b));
      o(a, b) = pair_value(ia, ja, ib, jb, l);
    }
  }
  return o;
}

IntMatrix minus_form(const GeneralizedPermutation& gp) {
  const auto letters = gp.both_rows_letters();
  const std::size_t n = letters.size();
  IntMatrix o(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    auto [ia, ja] = gp.occurrences(letters[x]);
    for (std::size_t y = 0; y < n; ++y) {
      auto [ib, jb] = gp.occurrences(letters[y]);
      if (ia < ib && ja > jb) o(x, y) = 2;
      else if (ib < ia && jb > ja) o(x, y) = -2;
    }
  }
  return o;
}

IntMatrix kz_plus(const Arrow& arrow) {
  const std::size_t d = arrow.source.size();
  IntMatrix b = IntMatrix::identity(d);
  const auto l = static_cast<std::size_t>(arrow.loser), w = static_cast<std::size_t>(arrow.winner);
  auto [il, jl] = arrow.source.occurrences(arrow.loser);
  auto [iw, jw] = arrow.source.occurrences(arrow.winner);
  if (pair_value(il, jl, iw, jw, arrow.source.top_size()) != 0) {
    b(l, w) += 1;
  } else {
    b(l, w) -= 1;
    b(l, l) -= 2;
  }
  return b;
}

IntMatrix kz_plus_inverse(const Arrow& arrow) {
  IntMatrix b = kz_plus(arrow);
  const auto l = static_cast<std::size_t>(arrow.loser), w = static_cast<std::size_t>(arrow.winner);
  // Id + E_lw inverts to Id - E_lw; the other shape is an involution.
  if (b(l, l) == 1) b(l, w) = -1;
  return b;
}

CocycleResult kz_walk(const GeneralizedPermutation& base, std::string_view walk) {
  auto resolved = resolve_walk(base, walk);
  IntMatrix m = IntMatrix::identity(base.size());
  for (const auto& s : resolved.steps)
    m = (s.reversed ? kz_plus_inverse(s.arrow) : kz_plus(s.arrow)) * m;
  return {std::move(m), std::move(resolved.end)};
}

IntMatrix kz_minus(const Arrow& arrow, const std::vector<Letter>& index) {
  if (arrow.source.is_duplicate(arrow.winner))
    throw Error(ErrorCode::DuplicateWinner,
                "winner " + arrow.source.name(arrow.winner) + " is a duplicate letter");
  IntMatrix b = IntMatrix::identity(index.size());
  auto pos = [&](Letter a) {
    auto it = std::find(index.begin(), index.end(), a);
    return it == index.end() ? index.size() : static_cast<std::size_t>(it - index.begin());
  };
  const std::size_t l = pos(arrow.loser), w = pos(arrow.winner);
  if (l < index.size()) b(l, w) += 1;
  return b;
}

CocycleResult kz_minus_walk(const GeneralizedPermutation& base, std::string_view walk) {
  const auto index = base.both_rows_letters();
  IntMatrix m = IntMatrix::identity(index.size());
  GeneralizedPermutation cur = base;
  for (auto step : parse_walk(walk)) {
    if (!step.reversed) {
      auto a = apply_arrow(cur, step.kind);
      m = kz_minus(a, index) * m;
      cur = a.target;
    } else {
      auto a = reverse_arrow(cur, step.kind);
      IntMatrix inv = kz_minus(a, index);
      for (std::size_t i = 0; i < inv.rows(); ++i)
        for (std::size_t j = 0; j < inv.cols(); ++j)
          if (i != j) inv(i, j) = -inv(i, j);
      m = inv * m;
      cur = a.source;
    }
  }
  return {std::move(m), std::move(cur)};
}

bool preserves(const IntMatrix& form, const IntMatrix& m) {
  return m * form * m.transpose() == form;
}

QuotientBasis::QuotientBasis(const IntMatrix& form) : form_(form) {
  const std::size_t n = form.rows();
  IntMatrix a = form;
  IntMatrix v = IntMatrix::identity(n);
  IntMatrix vinv = IntMatrix::identity(n);

  // Column operations on a, mirrored on v (a = form * v) and on v^-1 by rows.
  auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
      a(i, dst) += q * a(i, src);
      v(i, dst) += q * v(i, src);
    }
    for (std::size_t j = 0; j < n; ++j) vinv(src, j) -= q * vinv(dst, j);
  };
  auto swap_col = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(a(i, x), a(i, y));
      std::swap(v(i, x), v(i, y));
    }
    for (std::size_t j = 0; j < n; ++j) std::swap(vinv(x, j), vinv(y, j));
  };

  std::size_t pc = 0;
  for (std::size_t row = 0; row < n && pc < n; ++row) {
    for (;;) {
      std::size_t best = n;
      for (std::size_t c = pc; c < n; ++c)
        if (a(row, c) != 0 && (best == n || abs(a(row, c)) < abs(a(row, best)))) best = c;
      if (best == n) break;
      swap_col(pc, best);
      bool done = true;
      for (std::size_t c = pc + 1; c < n; ++c) {
        if (a(row, c) == 0) continue;
        add_col(c, pc, -(a(row, c) / a(row, pc)));
        if (a(row, c) != 0) done = false;
      }
      if (done) {
        ++pc;
        break;
      }
    }
  }
  rank_ = pc;
  basis_ = v.transpose();
  basis_inverse_ = vinv.transpose();
  IntMatrix w(rank_, n);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = basis_(i, j);
  reduced_form_ = w * form_ * w.transpose();
}

IntMatrix QuotientBasis::induce(const IntMatrix& m) const {
  const std::size_t n = form_.rows();
  IntMatrix w(rank_, n);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < n; ++j) w(i, j) = basis_(i, j);
  IntMatrix coords = w * m * basis_inverse_;
  IntMatrix out(rank_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = 0; j < rank_; ++j) out(i, j) = coords(i, j);
  return out;
}

QuotientAction quotient_action(const GeneralizedPermutation& gp, const IntMatrix& matrix) {
  const IntMatrix omega = intersection_form(gp);
  if (!preserves(omega, matrix))
    throw Error(ErrorCode::NotOmegaPreserving, "matrix does not preserve the form of " + gp.to_string());
  QuotientBasis q(omega);
  IntMatrix w(q.dimension(), gp.size());
  for (std::size_t i = 0; i < q.dimension(); ++i)
    for (std::size_t j = 0; j < gp.size(); ++j) w(i, j) = q.basis()(i, j);
  return {std::move(w), q.form(), q.induce(matrix)};
}

}  // namespace rvq
