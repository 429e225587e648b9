#pragma once

#include <random>
#include <string>
#include <vector>

#include "bsarr/ls_module.hpp"

namespace bsarr {

/// Diesis symbols of the annihilator of l^s for p = n+1, written in the
/// coordinates (l_1, ..., l_n) with dual variables xi. The context has blocks
/// s > xi > l; s_1 never occurs in the reduced generators.
struct SymbolIdeal {
  Arrangement arrangement;
  AdaptedFrame frame;
  ContextPtr ctx;
  /// sigma#(E~).
  MultiPoly euler;
  /// 0-based (i, j), 1 <= i < j <= n, i.e. forms 2..n+1.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  /// sigma#(U~_{i,j}) for the pairs above: the generators of J'.
  std::vector<MultiPoly> reduced;

  std::size_t n() const { return arrangement.n; }
  std::size_t p() const { return arrangement.p(); }
  /// l_k in the l coordinates.
  MultiPoly form(std::size_t k) const;
  /// sigma(U_{i,j}), degree one in xi.
  MultiPoly sigma_U(std::size_t i, std::size_t j) const;
  /// U_{i,j}(l_k).
  Rational U_value(std::size_t i, std::size_t j, std::size_t k) const;
  /// sigma#(U~_{i,j}) for any distinct i, j.
  MultiPoly sharp_U(std::size_t i, std::size_t j) const;
  /// sigma#(E~) followed by J'.
  std::vector<MultiPoly> generators() const;
  MultiPoly s(std::size_t j) const;
  MultiPoly xi(std::size_t i) const;
};

/// Throws NotGeneric, WrongP (p != n+1).
SymbolIdeal symbol_ideal(const Arrangement& a);

struct GroebnerReport {
  std::vector<std::string> labels;
  std::vector<std::string> leading;
  std::vector<std::string> expected;
  bool leading_ok = true;
  BuchbergerStats stats;
  bool buchberger_ok = true;
  std::size_t syzygies_checked = 0;
  bool syzygies_ok = true;
  /// First offending pair or identity, empty on success.
  std::string failure;
  bool passed() const { return leading_ok && buchberger_ok && syzygies_ok; }
};

GroebnerReport groebner_check(const SymbolIdeal& s);

struct AnnMembership {
  bool member = false;
  /// E~ and U~_{i,j} (2 <= i < j <= n+1) in x coordinates.
  std::vector<AnnGenerator> generators;
  /// P = sum cofactors[k] * generators[k] when member.
  std::vector<WeylOp> cofactors;
  /// Diesis weight where the reduction stopped (when not a member).
  int failed_weight = -1;
};

/// Reduction along the diesis filtration: the top symbol is divided by the
/// symbol ideal, the cofactors are lifted to operators and subtracted.
AnnMembership ann_membership(const WeylOp& p, const Arrangement& a);

struct ComponentCheck {
  std::string name;
  std::vector<std::string> ideal;
  bool contains_equations = false;
  /// Slopes (indices into SlopeReport::slopes) lying in the component ideal.
  std::vector<std::size_t> slopes_in_ideal;
};

struct SlopeReport {
  /// Integer coefficient vectors over s_1..s_p.
  std::vector<std::vector<long>> slopes;
  std::vector<ComponentCheck> components;
  std::size_t dichotomy_checked = 0;
  bool dichotomy_ok = true;
  std::string failure;
  bool passed() const;
};

SlopeReport slopes_report(const Arrangement& a);

struct StratumCheck {
  /// 0-based forms cut out by the stratum; empty for the zero section.
  std::vector<std::size_t> forms;
  std::string name;
  std::vector<std::string> ideal;
  bool contains_equations = false;
};

struct ConormalReport {
  /// Equations of W#(0): sigma(E) and l_i l_j sigma(U_{i,j}).
  std::vector<std::string> equations;
  std::vector<StratumCheck> strata;
  std::string failure;
  bool passed() const;
};

ConormalReport conormal_check(const Arrangement& a);

struct RegularityReport {
  std::size_t tested = 0;
  std::size_t skipped_in_ideal = 0;
  std::size_t failures = 0;
};

/// For random u with nonzero normal form modulo J', checks that l_2 u also
/// has a nonzero normal form.
RegularityReport regularity_check(const SymbolIdeal& s, std::size_t count, std::uint64_t seed);

}  // namespace bsarr
