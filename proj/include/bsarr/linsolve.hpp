#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "bsarr/rational.hpp"

namespace bsarr {

/// Sparse linear system A x = b over Q. Each row lists (column, value) pairs.
struct LinearSystem {
  std::size_t columns = 0;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  std::vector<Rational> rhs;

  void add_row(std::vector<std::pair<std::size_t, Rational>> row, Rational b) {
    rows.push_back(std::move(row));
    rhs.push_back(std::move(b));
  }
};

struct SolveStats {
  std::size_t rank = 0;
};

/// Fraction-free elimination on integer-scaled rows. Pivot columns are taken
/// in increasing column order, rows in input order; free variables are set to
/// zero, so the returned solution is deterministic. nullopt when inconsistent.
std::optional<std::vector<Rational>> solve_exact(const LinearSystem& system, SolveStats* stats = nullptr);

/// Dense square solve; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(const std::vector<std::vector<Rational>>& a,
                                                  const std::vector<Rational>& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<std::vector<std::vector<Rational>>> invert(const std::vector<std::vector<Rational>>& a);

Rational determinant(std::vector<std::vector<Rational>> a);

}  // namespace bsarr
