#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsarr/poly.hpp"

namespace bsarr {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroOperator : std::domain_error {
  using std::domain_error::domain_error;
};

/// Shared coefficient context for A_n[s_1..s_p]: block "x" = x1..xn, block
/// "s" = s1..sp. Identical (n, p) always yields the same pointer.
ContextPtr weyl_context(std::size_t n, std::size_t p);

/// Symbol ring context with blocks "s" (s1..sp), "xi" (xi1..xin) and a space
/// block named `space_block` whose variables are `space_prefix`1..n. The lex
/// order is s > xi > space.
ContextPtr symbol_context(std::size_t n, std::size_t p, const std::string& space_block = "x",
                          const std::string& space_prefix = "x");

/// Descending order on derivation multi-indices.
struct MonomialGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return a > b; }
};

/// Element of A_n(Q)[s_1..s_p] stored left-normal: sum of c_gamma(x,s) d^gamma
/// with coefficients to the left of the derivations. The first n slots of a
/// key are the derivation exponents.
class WeylOp {
 public:
  using TermMap = std::map<Monomial, MultiPoly, MonomialGreater>;

  WeylOp() = default;
  WeylOp(std::size_t n, std::size_t p);

  static WeylOp zero(std::size_t n, std::size_t p) { return WeylOp(n, p); }
  static WeylOp scalar(std::size_t n, std::size_t p, const Rational& c);
  /// Multiplication operator by a coefficient polynomial in (x, s).
  static WeylOp multiplication(std::size_t n, std::size_t p, const MultiPoly& c);
  static WeylOp x(std::size_t n, std::size_t p, std::size_t i);
  static WeylOp s(std::size_t n, std::size_t p, std::size_t j);
  static WeylOp d(std::size_t n, std::size_t p, std::size_t i);
  /// Constant vector field sum a_i d_i.
  static WeylOp field(std::size_t n, std::size_t p, const std::vector<Rational>& a);
  /// c(x,s) d^gamma.
  static WeylOp term(std::size_t n, std::size_t p, const Monomial& gamma, const MultiPoly& c);

  std::size_t n() const { return n_; }
  std::size_t p() const { return p_; }
  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const;
  /// Highest derivation order.
  unsigned order() const;
  /// Highest total degree of a coefficient monomial in (x, s).
  unsigned coefficient_degree() const;
  /// Highest diesis weight: derivation order plus s-degree.
  int sharp_weight() const;
  /// Keeps only the terms of diesis weight w.
  WeylOp weight_part(int w) const;

  WeylOp operator-() const;
  WeylOp& operator+=(const WeylOp& o);
  WeylOp& operator-=(const WeylOp& o);
  WeylOp& operator*=(const Rational& c);
  friend WeylOp operator+(WeylOp a, const WeylOp& b) { return a += b; }
  friend WeylOp operator-(WeylOp a, const WeylOp& b) { return a -= b; }
  friend WeylOp operator*(WeylOp a, const Rational& c) { return a *= c; }
  friend WeylOp operator*(const Rational& c, WeylOp a) { return a *= c; }
  friend WeylOp operator*(const WeylOp& a, const WeylOp& b);
  friend bool operator==(const WeylOp& a, const WeylOp& b);

  /// Left multiplication by a coefficient polynomial (stays left-normal).
  WeylOp left_multiply(const MultiPoly& c) const;

  /// Right-normal view: the operator equals sum over gamma of d^gamma r_gamma.
  TermMap right_normal_form() const;
  /// Coefficient of d^0 in the right-normal view.
  MultiPoly right_constant_term() const;
  static WeylOp from_right_normal(std::size_t n, std::size_t p, const TermMap& right);

  /// Linear change of coordinates y = M x, returns the same operator written
  /// in y (variables still named x1..xn, d1..dn). M must be invertible.
  WeylOp change_coordinates(const std::vector<std::vector<Rational>>& m) const;

  /// Canonical text: terms by descending derivation index then descending
  /// coefficient monomial, e.g. "x1^2*d1^2 + 4*x1*d1 + 2".
  std::string to_string() const;

 private:
  void check_same(const WeylOp& o) const;
  std::size_t n_ = 0, p_ = 0;
  ContextPtr ctx_;
  TermMap terms_;
};

/// Normal-ordered product; throws DimensionMismatch.
WeylOp weyl_mul(const WeylOp& a, const WeylOp& b);

/// Anti-automorphism x -> x, d -> -d, s -> s.
WeylOp weyl_transpose(const WeylOp& a);

/// Top diesis-weight part with d^gamma replaced by xi^gamma, in
/// `target` (default symbol_context(n, p)). Throws ZeroOperator.
MultiPoly sharp_symbol(const WeylOp& a, const ContextPtr& target = nullptr);

/// Order-one symbol sigma(U) of a constant field a as a polynomial in the xi block.
MultiPoly field_symbol(const std::vector<Rational>& a, const ContextPtr& symbol_ctx);

/// Parses the canonical text form (and any product of x_i, s_j, d_i, rationals,
/// multiplied out in the Weyl algebra). Throws std::invalid_argument.
WeylOp parse_weyl(const std::string& text, std::size_t n, std::size_t p);

/// C_k^{i_1..i_n}: key is the multi-index.
struct CkTable {
  std::size_t n = 0;
  std::size_t k = 0;
  std::map<std::vector<unsigned>, Integer> entries;
};

CkTable ck_table(std::size_t n, std::size_t k);

enum class EulerOffset {
  MinusJ,     // prod_{j<k} (E - j)
  PlusJPlusN  // prod_{j<k} (E + j + n)
};

/// Normal-ordered product of the k Euler factors (no s-parameters unless p>0).
WeylOp euler_expand(std::size_t n, std::size_t k, EulerOffset offset, std::size_t p = 0);

/// sum over |i| = k of C_k^i x^i d^i (MinusJ) or C_k^i d^i x^i (PlusJPlusN).
WeylOp ck_operator(const CkTable& table, EulerOffset offset, std::size_t p = 0);

/// Euler field E = sum x_i d_i.
WeylOp euler_field(std::size_t n, std::size_t p);

}  // namespace bsarr
