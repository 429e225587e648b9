#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsarr/rational.hpp"

namespace bsarr {

inline constexpr std::size_t kMaxVars = 16;

struct ZeroPolynomial : std::domain_error {
  using std::domain_error::domain_error;
};
struct ContextMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotGroebner : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exponent vector. Variable 0 is the most significant for the lex order,
/// which makes the order a plain byte comparison.
struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};

  std::uint8_t operator[](std::size_t i) const { return e[i]; }
  std::uint8_t& operator[](std::size_t i) { return e[i]; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return std::memcmp(a.e.data(), b.e.data(), kMaxVars) == 0;
  }
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    int c = std::memcmp(a.e.data(), b.e.data(), kMaxVars);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const { return degree() == 0; }
  bool divides(const Monomial& other) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e[i] > other.e[i]) return false;
    return true;
  }
  /// Throws std::overflow_error past exponent 255.
  Monomial operator*(const Monomial& other) const;
  /// Caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - other.e[i]);
    return r;
  }
  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
    return r;
  }
  static bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }
  static Monomial unit(std::size_t var, unsigned power = 1);
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept {
    std::uint64_t a, b;
    std::memcpy(&a, m.e.data(), 8);
    std::memcpy(&b, m.e.data() + 8, 8);
    return static_cast<std::size_t>(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL + (a << 6) + (a >> 2)));
  }
};

/// Named variable blocks in a fixed order. The lex order runs over the
/// concatenation of the blocks; inside a block the first variable is the most
/// significant.
class VarContext {
 public:
  struct Block {
    std::string name;
    std::vector<std::string> vars;
    friend bool operator==(const Block&, const Block&) = default;
  };

  explicit VarContext(std::vector<Block> blocks);

  std::size_t size() const { return names_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const std::string& name(std::size_t var) const { return names_.at(var); }
  /// Index of a variable by name; throws std::out_of_range.
  std::size_t index(std::string_view var) const;
  std::optional<std::size_t> find(std::string_view var) const;
  /// First variable index of the named block; throws std::out_of_range.
  std::size_t block_offset(std::string_view block) const;
  std::size_t block_size(std::string_view block) const;

  friend bool operator==(const VarContext& a, const VarContext& b) { return a.blocks_ == b.blocks_; }

 private:
  std::vector<Block> blocks_;
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

ContextPtr make_context(std::vector<VarContext::Block> blocks);

/// The only supported order: lex over the context's variable sequence.
struct TermOrder {
  enum class Kind { BlockLex };
  Kind kind = Kind::BlockLex;
  friend bool operator==(const TermOrder&, const TermOrder&) = default;
};

class MultiPoly {
 public:
  struct Term {
    Monomial mono;
    Rational coef;
  };

  MultiPoly() = default;
  explicit MultiPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static MultiPoly constant(ContextPtr ctx, const Rational& c);
  static MultiPoly variable(ContextPtr ctx, std::size_t var);
  static MultiPoly variable(ContextPtr ctx, std::string_view name);
  static MultiPoly monomial(ContextPtr ctx, const Monomial& m, const Rational& c = 1);
  /// Sorts, merges duplicates and drops zero coefficients.
  static MultiPoly from_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const { return ctx_; }
  /// Terms in strictly descending lex order; never contains a zero coefficient.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  Rational coeff(const Monomial& m) const;
  const Term& leading() const;
  unsigned total_degree() const;
  unsigned degree_in(std::size_t var) const;
  /// Total degree restricted to variables [first, first+count).
  unsigned degree_in_range(std::size_t first, std::size_t count) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& operator*=(const Rational& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  /// this * c * m; monomial multiplication preserves the order so no sort is needed.
  MultiPoly mul_term(const Monomial& m, const Rational& c) const;
  /// this += c * m * other, by merging.
  void add_scaled(const MultiPoly& other, const Monomial& m, const Rational& c);
  MultiPoly pow(unsigned k) const;
  MultiPoly derivative(std::size_t var) const;
  /// Makes the leading coefficient 1; zero stays zero.
  MultiPoly monic() const;

  /// Replaces variable i by images[i]; images live in `target`.
  MultiPoly substitute(const std::vector<MultiPoly>& images, const ContextPtr& target) const;
  /// Moves the polynomial into `target`, sending variable i to index_map[i].
  /// Variables mapped to -1 must not occur.
  MultiPoly remap(const ContextPtr& target, std::span<const int> index_map) const;

  /// Human-readable form, terms in descending lex order, e.g. "3/2*x1^2*s1 - 1".
  std::string to_string() const;

 private:
  void check_same(const MultiPoly& o) const;
  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Exact division; nullopt when the divisor does not divide.
std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& divisor);

struct IdealBasis {
  std::vector<MultiPoly> generators;
  TermOrder order{};
  /// Set by buchberger(); ideal_member relies on it to trust a nonzero remainder.
  bool groebner = false;

  IdealBasis() = default;
  /// Validates: nonempty contexts agree, zero generators are rejected.
  explicit IdealBasis(std::vector<MultiPoly> gens, bool is_groebner = false);
  ContextPtr context() const;
};

std::pair<Monomial, Rational> leading_term(const MultiPoly& p, const TermOrder& order = {});

/// Remainder of full multivariate division. The greatest reducible term is
/// reduced first, generators are tried in list order. If `cofactors` is
/// non-null it receives q_k with p = sum q_k g_k + remainder.
MultiPoly normal_form(const MultiPoly& p, const IdealBasis& basis,
                      std::vector<MultiPoly>* cofactors = nullptr);

/// S-polynomial with respect to leading monomials.
MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g);

struct BuchbergerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_skipped_coprime = 0;
  std::size_t nonzero_remainders = 0;
};

/// Reduced Groebner basis, monic, sorted by descending leading monomial.
IdealBasis buchberger(const IdealBasis& gens, BuchbergerStats* stats = nullptr);

/// True when every S-pair of the list reduces to zero modulo the list.
bool is_groebner(const IdealBasis& basis);

/// Removes generators whose leading monomial is divisible by another one and
/// fully reduces the rest; the result spans the same ideal when the input is
/// a Groebner basis.
IdealBasis interreduce(const IdealBasis& basis);

struct Membership {
  bool member = false;
  std::vector<MultiPoly> cofactors;
  MultiPoly remainder;
};

/// Membership by division. Throws NotGroebner when the remainder is nonzero
/// and the basis is not certified (or cannot be verified) to be a Groebner basis.
Membership ideal_member(const MultiPoly& p, const IdealBasis& basis);

}  // namespace bsarr
