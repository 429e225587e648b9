#include "bsarr/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

namespace bsarr {

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned{e[i]} + other.e[i];
    if (s > 255) throw std::overflow_error("monomial exponent exceeds 255");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  return r;
}

Monomial Monomial::unit(std::size_t var, unsigned power) {
  if (var >= kMaxVars || power > 255) throw std::out_of_range("Monomial::unit");
  Monomial m;
  m.e[var] = static_cast<std::uint8_t>(power);
  return m;
}

VarContext::VarContext(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_)
    for (const auto& v : b.vars) {
      if (std::find(names_.begin(), names_.end(), v) != names_.end())
        throw std::invalid_argument("duplicate variable name '" + v + "'");
      names_.push_back(v);
    }
  if (names_.size() > kMaxVars) throw std::invalid_argument("too many variables for Monomial");
}

std::optional<std::size_t> VarContext::find(std::string_view var) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == var) return i;
  return std::nullopt;
}

std::size_t VarContext::index(std::string_view var) const {
  if (auto i = find(var)) return *i;
  throw std::out_of_range("unknown variable '" + std::string(var) + "'");
}

std::size_t VarContext::block_offset(std::string_view block) const {
  std::size_t off = 0;
  for (const auto& b : blocks_) {
    if (b.name == block) return off;
    off += b.vars.size();
  }
  throw std::out_of_range("unknown block '" + std::string(block) + "'");
}

std::size_t VarContext::block_size(std::string_view block) const {
  for (const auto& b : blocks_)
    if (b.name == block) return b.vars.size();
  throw std::out_of_range("unknown block '" + std::string(block) + "'");
}

ContextPtr make_context(std::vector<VarContext::Block> blocks) {
  return std::make_shared<const VarContext>(std::move(blocks));
}

// ---------------------------------------------------------------------------

namespace {

bool same_context(const ContextPtr& a, const ContextPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

bool term_greater(const MultiPoly::Term& a, const MultiPoly::Term& b) { return a.mono > b.mono; }

}  // namespace

void MultiPoly::check_same(const MultiPoly& o) const {
  if (!same_context(ctx_, o.ctx_)) throw ContextMismatch("polynomials live in different variable contexts");
}

MultiPoly MultiPoly::constant(ContextPtr ctx, const Rational& c) {
  MultiPoly p(std::move(ctx));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

MultiPoly MultiPoly::variable(ContextPtr ctx, std::size_t var) {
  if (var >= ctx->size()) throw std::out_of_range("variable index");
  return monomial(std::move(ctx), Monomial::unit(var), 1);
}

MultiPoly MultiPoly::variable(ContextPtr ctx, std::string_view name) {
  auto i = ctx->index(name);
  return variable(std::move(ctx), i);
}

MultiPoly MultiPoly::monomial(ContextPtr ctx, const Monomial& m, const Rational& c) {
  MultiPoly p(std::move(ctx));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  MultiPoly p(std::move(ctx));
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  // A merged-then-cancelled entry can leave equal neighbours apart; the loop
  // above pops immediately so adjacent duplicates cannot survive.
  return p;
}

Rational MultiPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.mono > key; });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return 0;
}

const MultiPoly::Term& MultiPoly::leading() const {
  if (terms_.empty()) throw ZeroPolynomial("leading term of the zero polynomial");
  return terms_.front();
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

unsigned MultiPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[var]);
  return d;
}

unsigned MultiPoly::degree_in_range(std::size_t first, std::size_t count) const {
  unsigned d = 0;
  for (const auto& t : terms_) {
    unsigned s = 0;
    for (std::size_t i = first; i < first + count; ++i) s += t.mono[i];
    d = std::max(d, s);
  }
  return d;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

void MultiPoly::add_scaled(const MultiPoly& other, const Monomial& m, const Rational& c) {
  if (other.terms_.empty() || c == 0) return;
  if (!ctx_) ctx_ = other.ctx_;
  check_same(other);
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  Rational tmp;
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end()) {
      out.push_back(std::move(*a++));
      continue;
    }
    Monomial bm = b->mono * m;
    if (a == terms_.end() || bm > a->mono) {
      out.push_back({bm, b->coef * c});
      ++b;
    } else if (a->mono > bm) {
      out.push_back(std::move(*a++));
    } else {
      mpq_mul(tmp.get_mpq_t(), b->coef.get_mpq_t(), c.get_mpq_t());
      a->coef += tmp;
      if (a->coef != 0) out.push_back(std::move(*a));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  add_scaled(o, Monomial{}, 1);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  add_scaled(o, Monomial{}, -1);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) {
    MultiPoly z(a.ctx_ ? a.ctx_ : b.ctx_);
    if (a.ctx_ && b.ctx_) a.check_same(b);
    return z;
  }
  a.check_same(b);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coef);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coef);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  Rational tmp;
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) {
      mpq_mul(tmp.get_mpq_t(), ta.coef.get_mpq_t(), tb.coef.get_mpq_t());
      acc[ta.mono * tb.mono] += tmp;
    }
  MultiPoly r(a.ctx_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(), term_greater);
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty() && !same_context(a.ctx_, b.ctx_)) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  return true;
}

MultiPoly MultiPoly::mul_term(const Monomial& m, const Rational& c) const {
  MultiPoly r(ctx_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coef * c});
  return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(ctx_, 1);
  MultiPoly base = *this;
  while (k) {
    if (k & 1u) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  MultiPoly r(ctx_);
  for (const auto& t : terms_) {
    if (t.mono[var] == 0) continue;
    Term d{t.mono, t.coef * static_cast<unsigned long>(t.mono[var])};
    d.mono[var] -= 1;
    r.terms_.push_back(std::move(d));
  }
  // Lowering one exponent keeps distinct monomials distinct and preserves
  // lex order among them.
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coef;
  return *this * inv;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images, const ContextPtr& target) const {
  if (images.size() < (ctx_ ? ctx_->size() : 0)) throw std::invalid_argument("substitute: too few images");
  std::vector<std::vector<MultiPoly>> powers(images.size());
  auto power = [&](std::size_t v, unsigned k) -> const MultiPoly& {
    auto& pv = powers[v];
    if (pv.empty()) pv.push_back(constant(target, 1));
    while (pv.size() <= k) pv.push_back(pv.back() * images[v]);
    return pv[k];
  };
  // Terms are lex sorted, so terms sharing the exponent of variable v form
  // contiguous runs once the earlier variables agree.
  std::function<MultiPoly(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t lo, std::size_t hi,
                                                                             std::size_t v) -> MultiPoly {
    if (v == images.size() || v == kMaxVars) {
      Rational c = 0;
      for (std::size_t i = lo; i < hi; ++i) c += terms_[i].coef;
      return constant(target, c);
    }
    MultiPoly out(target);
    std::size_t i = lo;
    while (i < hi) {
      unsigned k = terms_[i].mono[v];
      std::size_t j = i;
      while (j < hi && terms_[j].mono[v] == k) ++j;
      MultiPoly inner = rec(i, j, v + 1);
      out += k ? inner * power(v, k) : inner;
      i = j;
    }
    return out;
  };
  return rec(0, terms_.size(), 0);
}

MultiPoly MultiPoly::remap(const ContextPtr& target, std::span<const int> index_map) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < index_map.size(); ++v) {
      if (!t.mono[v]) continue;
      if (index_map[v] < 0) throw std::invalid_argument("remap: variable has no image");
      m[static_cast<std::size_t>(index_map[v])] = static_cast<std::uint8_t>(m[static_cast<std::size_t>(index_map[v])] + t.mono[v]);
    }
    out.push_back({m, t.coef});
  }
  return from_terms(target, std::move(out));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (first) {
      if (c < 0) {
        os << '-';
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool need_star = false;
    if (c != 1 || t.mono.is_one()) {
      os << c.get_str();
      need_star = true;
    }
    for (std::size_t v = 0; v < (ctx_ ? ctx_->size() : 0); ++v) {
      if (!t.mono[v]) continue;
      if (need_star) os << '*';
      os << ctx_->name(v);
      if (t.mono[v] > 1) os << '^' << static_cast<unsigned>(t.mono[v]);
      need_star = true;
    }
  }
  return os.str();
}

namespace {

// Synthetic division by a = c*v + r with r free of v: the quotient slices
// q_k (coefficients of v^k) satisfy p_k = c q_{k-1} + r q_k.
std::optional<MultiPoly> divide_by_linear(const MultiPoly& p, const MultiPoly& divisor) {
  const auto& lead = divisor.leading();
  std::size_t v = 0;
  while (lead.mono[v] == 0) ++v;
  const Rational inv_c = 1 / lead.coef;
  MultiPoly r = divisor - MultiPoly::monomial(divisor.context(), lead.mono, lead.coef);
  const unsigned top = p.degree_in(v);
  std::vector<std::vector<MultiPoly::Term>> slice_terms(top + 1);
  for (const auto& t : p.terms()) {
    Monomial m = t.mono;
    unsigned k = m[v];
    m[v] = 0;
    slice_terms[k].push_back({m, t.coef});
  }
  std::vector<MultiPoly> slices;
  for (auto& st : slice_terms) slices.push_back(MultiPoly::from_terms(p.context(), std::move(st)));
  if (top == 0) return std::nullopt;
  std::vector<MultiPoly> q(top);
  q[top - 1] = slices[top] * inv_c;
  for (unsigned k = top - 1; k >= 1; --k) {
    MultiPoly rest = slices[k];
    rest.add_scaled(r * q[k], Monomial{}, -1);
    q[k - 1] = rest * inv_c;
  }
  MultiPoly rem = slices[0];
  rem.add_scaled(r * q[0], Monomial{}, -1);
  if (!rem.is_zero()) return std::nullopt;
  std::vector<MultiPoly::Term> out;
  for (unsigned k = 0; k < top; ++k)
    for (const auto& t : q[k].terms()) out.push_back({t.mono * Monomial::unit(v, k), t.coef});
  return MultiPoly::from_terms(p.context(), std::move(out));
}

}  // namespace

std::optional<MultiPoly> divide_exact(const MultiPoly& p, const MultiPoly& divisor) {
  if (divisor.is_zero()) throw ZeroPolynomial("division by zero polynomial");
  if (!p.is_zero() && divisor.total_degree() == 1) {
    if (!same_context(p.context(), divisor.context()))
      throw ContextMismatch("divide_exact: contexts differ");
    return divide_by_linear(p, divisor);
  }
  IdealBasis basis({divisor}, true);
  std::vector<MultiPoly> q;
  MultiPoly r = normal_form(p, basis, &q);
  if (!r.is_zero()) return std::nullopt;
  return std::move(q[0]);
}

// ---------------------------------------------------------------------------

IdealBasis::IdealBasis(std::vector<MultiPoly> gens, bool is_groebner)
    : generators(std::move(gens)), groebner(is_groebner) {
  for (const auto& g : generators) {
    if (g.is_zero()) throw ZeroPolynomial("zero generator in ideal basis");
    if (!same_context(g.context(), generators.front().context()))
      throw ContextMismatch("ideal generators live in different contexts");
  }
}

ContextPtr IdealBasis::context() const { return generators.empty() ? nullptr : generators.front().context(); }

std::pair<Monomial, Rational> leading_term(const MultiPoly& p, const TermOrder&) {
  const auto& t = p.leading();
  return {t.mono, t.coef};
}

MultiPoly normal_form(const MultiPoly& p, const IdealBasis& basis, std::vector<MultiPoly>* cofactors) {
  const auto& gens = basis.generators;
  if (!gens.empty() && !p.is_zero() && !same_context(p.context(), gens.front().context()))
    throw ContextMismatch("normal_form: polynomial and basis contexts differ");
  ContextPtr ctx = p.context() ? p.context() : basis.context();
  if (cofactors) cofactors->assign(gens.size(), MultiPoly(ctx));
  std::vector<std::vector<MultiPoly::Term>> cof_terms(cofactors ? gens.size() : 0);

  // Terms of `work` before `pos` are irreducible and form the remainder so
  // far; a reduction step only touches monomials at or below the one at pos.
  MultiPoly work = p;
  std::size_t pos = 0;
  std::vector<Monomial> lms;
  std::vector<Rational> lcs;
  for (const auto& g : gens) {
    lms.push_back(g.leading().mono);
    lcs.push_back(g.leading().coef);
  }
  while (pos < work.size()) {
    const auto& lt = work.terms()[pos];
    bool reduced = false;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (!lms[k].divides(lt.mono)) continue;
      Monomial q = lt.mono / lms[k];
      Rational c = lt.coef / lcs[k];
      if (cofactors) cof_terms[k].push_back({q, c});
      work.add_scaled(gens[k], q, -c);
      reduced = true;
      break;
    }
    if (!reduced) ++pos;
  }
  if (cofactors)
    for (std::size_t k = 0; k < gens.size(); ++k)
      (*cofactors)[k] = MultiPoly::from_terms(ctx, std::move(cof_terms[k]));
  if (!work.context()) return MultiPoly(ctx);
  return work;
}

MultiPoly s_polynomial(const MultiPoly& f, const MultiPoly& g) {
  const auto& lf = f.leading();
  const auto& lg = g.leading();
  Monomial l = Monomial::lcm(lf.mono, lg.mono);
  MultiPoly s = f.mul_term(l / lf.mono, 1 / lf.coef);
  s.add_scaled(g, l / lg.mono, -1 / lg.coef);
  return s;
}

namespace {

struct Pair {
  Monomial lcm;
  std::size_t i, j;
};

}  // namespace

IdealBasis buchberger(const IdealBasis& input, BuchbergerStats* stats) {
  if (input.generators.empty()) throw std::invalid_argument("buchberger: empty generator list");
  BuchbergerStats local;
  std::vector<MultiPoly> g;
  for (const auto& p : input.generators) g.push_back(p.monic());

  // Normal selection strategy: smallest lcm first, ties broken by (j, i).
  auto cmp = [](const Pair& a, const Pair& b) {
    if (!(a.lcm == b.lcm)) return a.lcm < b.lcm;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::vector<Pair> pairs;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.push_back({Monomial::lcm(g[i].leading().mono, g[j].leading().mono), i, j});

  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), cmp);
    Pair pr = *best;
    pairs.erase(best);
    ++local.pairs_considered;
    const auto& mi = g[pr.i].leading().mono;
    const auto& mj = g[pr.j].leading().mono;
    if (Monomial::coprime(mi, mj)) {
      ++local.pairs_skipped_coprime;
      continue;
    }
    MultiPoly r = normal_form(s_polynomial(g[pr.i], g[pr.j]), IdealBasis(g));
    if (r.is_zero()) continue;
    ++local.nonzero_remainders;
    g.push_back(r.monic());
    std::size_t n = g.size() - 1;
    for (std::size_t i = 0; i < n; ++i) pairs.push_back({Monomial::lcm(g[i].leading().mono, g[n].leading().mono), i, n});
  }
  if (stats) *stats = local;
  IdealBasis out = interreduce(IdealBasis(std::move(g)));
  out.groebner = true;
  return out;
}

IdealBasis interreduce(const IdealBasis& basis) {
  std::vector<MultiPoly> g;
  for (const auto& p : basis.generators) g.push_back(p.monic());
  // Minimalize: drop any element whose leading monomial is divisible by an
  // earlier kept one (or by a later one with a different leading monomial).
  std::vector<bool> keep(g.size(), true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size() && keep[i]; ++j) {
      if (i == j || !keep[j]) continue;
      const auto& mi = g[i].leading().mono;
      const auto& mj = g[j].leading().mono;
      if (mj.divides(mi) && (!(mi == mj) || j < i)) keep[i] = false;
    }
  }
  std::vector<MultiPoly> min;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (keep[i]) min.push_back(g[i]);
  std::vector<MultiPoly> red;
  for (std::size_t i = 0; i < min.size(); ++i) {
    std::vector<MultiPoly> others;
    for (std::size_t j = 0; j < min.size(); ++j)
      if (j != i) others.push_back(min[j]);
    MultiPoly tail = min[i];
    const auto lt = tail.leading();
    MultiPoly rest = tail - MultiPoly::monomial(tail.context(), lt.mono, lt.coef);
    MultiPoly r = others.empty() ? rest : normal_form(rest, IdealBasis(others));
    red.push_back((r + MultiPoly::monomial(tail.context(), lt.mono, lt.coef)).monic());
  }
  std::sort(red.begin(), red.end(),
            [](const MultiPoly& a, const MultiPoly& b) { return a.leading().mono > b.leading().mono; });
  IdealBasis out(std::move(red));
  out.order = basis.order;
  return out;
}

bool is_groebner(const IdealBasis& basis) {
  const auto& g = basis.generators;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (Monomial::coprime(g[i].leading().mono, g[j].leading().mono)) continue;
      if (!normal_form(s_polynomial(g[i], g[j]), basis).is_zero()) return false;
    }
  return true;
}

Membership ideal_member(const MultiPoly& p, const IdealBasis& basis) {
  Membership m;
  m.remainder = normal_form(p, basis, &m.cofactors);
  m.member = m.remainder.is_zero();
  if (!m.member && !basis.groebner && !is_groebner(basis))
    throw NotGroebner("ideal_member: nonzero remainder modulo a basis that is not a Groebner basis");
  return m;
}

}  // namespace bsarr
