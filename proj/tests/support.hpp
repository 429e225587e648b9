#pragma once

#include <ostream>
#include <random>

#include "bsarr/poly.hpp"
#include "bsarr/weyl.hpp"

namespace bsarr {

inline void PrintTo(const MultiPoly& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const WeylOp& a, std::ostream* os) { *os << a.to_string(); }

}  // namespace bsarr

namespace bsarr::gen {

inline Rational small_rational(std::mt19937& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline MultiPoly random_poly(std::mt19937& rng, const ContextPtr& ctx, unsigned terms, unsigned max_exp) {
  std::uniform_int_distribution<unsigned> e(0, max_exp);
  std::vector<MultiPoly::Term> t;
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m;
    for (std::size_t v = 0; v < ctx->size(); ++v) m[v] = static_cast<std::uint8_t>(e(rng));
    t.push_back({m, small_rational(rng)});
  }
  return MultiPoly::from_terms(ctx, std::move(t));
}

/// Random operator with `terms` terms of order <= max_order in A_n[s].
inline WeylOp random_op(std::mt19937& rng, std::size_t n, std::size_t p, unsigned terms, unsigned max_order,
                        unsigned max_exp) {
  std::uniform_int_distribution<unsigned> o(0, max_order);
  std::uniform_int_distribution<std::size_t> var(0, n - 1);
  WeylOp op(n, p);
  auto ctx = weyl_context(n, p);
  for (unsigned k = 0; k < terms; ++k) {
    Monomial gamma;
    unsigned ord = o(rng);
    for (unsigned j = 0; j < ord; ++j) gamma[var(rng)]++;
    op += WeylOp::term(n, p, gamma, random_poly(rng, ctx, 2, max_exp));
  }
  return op;
}

}  // namespace bsarr::gen
