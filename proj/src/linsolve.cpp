#include "bsarr/linsolve.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace bsarr {

namespace {

// Sorted by column; the rhs sits in column `columns`.
using IntRow = std::vector<std::pair<std::size_t, Integer>>;

IntRow to_integer_row(const std::vector<std::pair<std::size_t, Rational>>& row, const Rational& b,
                      std::size_t columns) {
  std::map<std::size_t, Rational> merged;
  for (const auto& [c, v] : row) {
    if (c >= columns) throw std::out_of_range("linear system column out of range");
    merged[c] += v;
  }
  if (b != 0) merged[columns] += b;
  Integer den = 1;
  for (const auto& [c, v] : merged)
    if (v != 0) den = lcm(den, Integer(v.get_den()));
  IntRow out;
  for (const auto& [c, v] : merged)
    if (v != 0) out.emplace_back(c, Integer(v.get_num() * (den / v.get_den())));
  return out;
}

void remove_content(IntRow& r) {
  if (r.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : r) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  if (r.front().second < 0) g = -g;
  for (auto& [c, v] : r) v /= g;
}

// r <- a*r - b*p, cancelling p's leading column.
IntRow combine(const IntRow& r, const Integer& a, const IntRow& p, const Integer& b) {
  IntRow out;
  out.reserve(r.size() + p.size());
  auto i = r.begin();
  auto j = p.begin();
  Integer tmp;
  while (i != r.end() || j != p.end()) {
    if (j == p.end() || (i != r.end() && i->first < j->first)) {
      out.emplace_back(i->first, a * i->second);
      ++i;
    } else if (i == r.end() || j->first < i->first) {
      out.emplace_back(j->first, -b * j->second);
      ++j;
    } else {
      tmp = a * i->second - b * j->second;
      if (tmp != 0) out.emplace_back(i->first, tmp);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<Rational>> solve_exact(const LinearSystem& system, SolveStats* stats) {
  const std::size_t n = system.columns;
  if (system.rows.size() != system.rhs.size()) throw std::invalid_argument("row/rhs count mismatch");
  std::map<std::size_t, IntRow> pivots;
  for (std::size_t k = 0; k < system.rows.size(); ++k) {
    IntRow r = to_integer_row(system.rows[k], system.rhs[k], n);
    remove_content(r);
    while (!r.empty()) {
      std::size_t lead = r.front().first;
      if (lead == n) return std::nullopt;  // 0 = nonzero
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(r));
        break;
      }
      const IntRow& p = it->second;
      Integer g = gcd(p.front().second, r.front().second);
      Integer a = p.front().second / g;
      Integer b = r.front().second / g;
      r = combine(r, a, p, b);
      remove_content(r);
    }
  }
  if (stats) stats->rank = pivots.size();
  std::vector<Rational> x(n, Rational(0));
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const IntRow& row = it->second;
    Rational acc = 0;
    for (std::size_t t = 1; t < row.size(); ++t) {
      if (row[t].first == n)
        acc += Rational(row[t].second);
      else if (x[row[t].first] != 0)
        acc -= Rational(row[t].second) * x[row[t].first];
    }
    x[it->first] = acc / Rational(row.front().second);
  }
  return x;
}

std::optional<std::vector<Rational>> solve_square(const std::vector<std::vector<Rational>>& a,
                                                  const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  LinearSystem sys;
  sys.columns = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n) throw std::invalid_argument("solve_square: matrix is not square");
    std::vector<std::pair<std::size_t, Rational>> row;
    for (std::size_t j = 0; j < n; ++j)
      if (a[i][j] != 0) row.emplace_back(j, a[i][j]);
    sys.add_row(std::move(row), b.at(i));
  }
  SolveStats st;
  auto x = solve_exact(sys, &st);
  if (!x || st.rank < n) return std::nullopt;
  return x;
}

std::optional<std::vector<std::vector<Rational>>> invert(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n, Rational(0));
    e[j] = 1;
    auto col = solve_square(a, e);
    if (!col) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) inv[i][j] = (*col)[i];
  }
  return inv;
}

Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace bsarr
