#include "bsarr/weyl.hpp"

#include <cctype>
#include <functional>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "bsarr/linsolve.hpp"

namespace bsarr {

namespace {

using Accumulator = std::unordered_map<Monomial, Rational, MonomialHash>;

MultiPoly to_poly(const ContextPtr& ctx, Accumulator& acc) {
  std::vector<MultiPoly::Term> terms;
  terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) terms.push_back({m, std::move(c)});
  return MultiPoly::from_terms(ctx, std::move(terms));
}

unsigned order_of(const Monomial& gamma, std::size_t n) {
  unsigned s = 0;
  for (std::size_t i = 0; i < n; ++i) s += gamma[i];
  return s;
}

/// Calls fn(kappa, prod binom(gamma_i, kappa_i)) for every kappa <= gamma.
void for_each_subindex(const Monomial& gamma, std::size_t n,
                       const std::function<void(const Monomial&, const Integer&)>& fn) {
  Monomial kappa;
  std::function<void(std::size_t, const Integer&)> rec = [&](std::size_t i, const Integer& coeff) {
    if (i == n) {
      fn(kappa, coeff);
      return;
    }
    Integer b = 1;
    for (unsigned k = 0; k <= gamma[i]; ++k) {
      kappa[i] = static_cast<std::uint8_t>(k);
      rec(i + 1, coeff * b);
      b = b * (gamma[i] - k) / (k + 1);
    }
    kappa[i] = 0;
  };
  rec(0, Integer(1));
}

/// d^kappa applied to a coefficient polynomial (x-variables are the first n).
MultiPoly differentiate(const MultiPoly& c, const Monomial& kappa, std::size_t n) {
  MultiPoly r = c;
  for (std::size_t i = 0; i < n && !r.is_zero(); ++i)
    for (unsigned k = 0; k < kappa[i] && !r.is_zero(); ++k) r = r.derivative(i);
  return r;
}

}  // namespace

ContextPtr weyl_context(std::size_t n, std::size_t p) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, ContextPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, p}];
  if (!slot) {
    VarContext::Block xb{"x", {}}, sb{"s", {}};
    for (std::size_t i = 1; i <= n; ++i) xb.vars.push_back("x" + std::to_string(i));
    for (std::size_t j = 1; j <= p; ++j) sb.vars.push_back("s" + std::to_string(j));
    slot = make_context({xb, sb});
  }
  return slot;
}

ContextPtr symbol_context(std::size_t n, std::size_t p, const std::string& space_block,
                          const std::string& space_prefix) {
  static std::mutex mu;
  static std::map<std::tuple<std::size_t, std::size_t, std::string, std::string>, ContextPtr> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, p, space_block, space_prefix}];
  if (!slot) {
    VarContext::Block sb{"s", {}}, xib{"xi", {}}, xb{space_block, {}};
    for (std::size_t j = 1; j <= p; ++j) sb.vars.push_back("s" + std::to_string(j));
    for (std::size_t i = 1; i <= n; ++i) xib.vars.push_back("xi" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) xb.vars.push_back(space_prefix + std::to_string(i));
    slot = make_context({sb, xib, xb});
  }
  return slot;
}

// ---------------------------------------------------------------------------

WeylOp::WeylOp(std::size_t n, std::size_t p) : n_(n), p_(p), ctx_(weyl_context(n, p)) {
  if (n + p > kMaxVars) throw std::invalid_argument("too many variables for A_n[s]");
}

WeylOp WeylOp::scalar(std::size_t n, std::size_t p, const Rational& c) {
  return multiplication(n, p, MultiPoly::constant(weyl_context(n, p), c));
}

WeylOp WeylOp::multiplication(std::size_t n, std::size_t p, const MultiPoly& c) {
  return term(n, p, Monomial{}, c);
}

WeylOp WeylOp::term(std::size_t n, std::size_t p, const Monomial& gamma, const MultiPoly& c) {
  WeylOp op(n, p);
  if (!c.is_zero()) {
    if (c.context() && !(*c.context() == *op.ctx_)) throw ContextMismatch("coefficient context is not A_n[s]");
    MultiPoly cc = c;
    if (c.context() != op.ctx_) cc = MultiPoly::from_terms(op.ctx_, c.terms());
    op.terms_.emplace(gamma, std::move(cc));
  }
  return op;
}

WeylOp WeylOp::x(std::size_t n, std::size_t p, std::size_t i) {
  return multiplication(n, p, MultiPoly::variable(weyl_context(n, p), i));
}

WeylOp WeylOp::s(std::size_t n, std::size_t p, std::size_t j) {
  return multiplication(n, p, MultiPoly::variable(weyl_context(n, p), n + j));
}

WeylOp WeylOp::d(std::size_t n, std::size_t p, std::size_t i) {
  return term(n, p, Monomial::unit(i), MultiPoly::constant(weyl_context(n, p), 1));
}

WeylOp WeylOp::field(std::size_t n, std::size_t p, const std::vector<Rational>& a) {
  WeylOp op(n, p);
  for (std::size_t i = 0; i < n; ++i)
    if (a.at(i) != 0) op.terms_.emplace(Monomial::unit(i), MultiPoly::constant(op.ctx_, a[i]));
  return op;
}

void WeylOp::check_same(const WeylOp& o) const {
  if (n_ != o.n_ || p_ != o.p_) throw DimensionMismatch("Weyl operators with different (n, p)");
}

std::size_t WeylOp::term_count() const {
  std::size_t c = 0;
  for (const auto& [g, poly] : terms_) c += poly.size();
  return c;
}

unsigned WeylOp::order() const {
  unsigned o = 0;
  for (const auto& [g, c] : terms_) o = std::max(o, order_of(g, n_));
  return o;
}

unsigned WeylOp::coefficient_degree() const {
  unsigned d = 0;
  for (const auto& [g, c] : terms_) d = std::max(d, c.total_degree());
  return d;
}

int WeylOp::sharp_weight() const {
  if (terms_.empty()) return -1;
  int w = 0;
  for (const auto& [g, c] : terms_)
    w = std::max(w, static_cast<int>(order_of(g, n_) + c.degree_in_range(n_, p_)));
  return w;
}

WeylOp WeylOp::weight_part(int w) const {
  WeylOp out(n_, p_);
  for (const auto& [g, c] : terms_) {
    std::vector<MultiPoly::Term> keep;
    int og = static_cast<int>(order_of(g, n_));
    for (const auto& t : c.terms()) {
      int sdeg = 0;
      for (std::size_t j = 0; j < p_; ++j) sdeg += t.mono[n_ + j];
      if (og + sdeg == w) keep.push_back(t);
    }
    if (!keep.empty()) out.terms_.emplace(g, MultiPoly::from_terms(ctx_, std::move(keep)));
  }
  return out;
}

WeylOp WeylOp::operator-() const {
  WeylOp r = *this;
  for (auto& [g, c] : r.terms_) c = -c;
  return r;
}

WeylOp& WeylOp::operator+=(const WeylOp& o) {
  if (!ctx_) {
    *this = o;
    return *this;
  }
  if (!o.ctx_) return *this;
  check_same(o);
  for (const auto& [g, c] : o.terms_) {
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(g, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

WeylOp& WeylOp::operator-=(const WeylOp& o) {
  if (!ctx_) {
    *this = -o;
    return *this;
  }
  if (!o.ctx_) return *this;
  check_same(o);
  for (const auto& [g, c] : o.terms_) {
    auto it = terms_.find(g);
    if (it == terms_.end()) {
      terms_.emplace(g, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

WeylOp& WeylOp::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [g, poly] : terms_) poly *= c;
  return *this;
}

bool operator==(const WeylOp& a, const WeylOp& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.terms_.empty()) return true;
  if (a.n_ != b.n_ || a.p_ != b.p_) return false;
  auto i = a.terms_.begin();
  auto j = b.terms_.begin();
  for (; i != a.terms_.end(); ++i, ++j)
    if (!(i->first == j->first) || !(i->second == j->second)) return false;
  return true;
}

WeylOp operator*(const WeylOp& a, const WeylOp& b) { return weyl_mul(a, b); }

WeylOp WeylOp::left_multiply(const MultiPoly& c) const {
  WeylOp out(n_, p_);
  if (c.is_zero()) return out;
  for (const auto& [g, poly] : terms_) {
    MultiPoly prod = c * poly;
    if (!prod.is_zero()) out.terms_.emplace(g, std::move(prod));
  }
  return out;
}

WeylOp weyl_mul(const WeylOp& a, const WeylOp& b) {
  if (a.n() != b.n() || a.p() != b.p()) throw DimensionMismatch("weyl_mul: operators with different (n, p)");
  const std::size_t n = a.n();
  WeylOp out(n, a.p());
  if (a.is_zero() || b.is_zero()) return out;
  std::map<Monomial, Accumulator, MonomialGreater> acc;
  // Cache of d^kappa(b_beta).
  std::map<std::pair<Monomial, Monomial>, MultiPoly> dcache;
  Rational tmp;
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& [beta, cb] : b.terms()) {
      for_each_subindex(alpha, n, [&](const Monomial& kappa, const Integer& binom) {
        auto key = std::make_pair(beta, kappa);
        auto it = dcache.find(key);
        if (it == dcache.end()) it = dcache.emplace(key, differentiate(cb, kappa, n)).first;
        const MultiPoly& db = it->second;
        if (db.is_zero()) return;
        Monomial gamma = (alpha / kappa) * beta;
        auto& slot = acc[gamma];
        Rational bq(binom);
        for (const auto& ta : ca.terms())
          for (const auto& tb : db.terms()) {
            mpq_mul(tmp.get_mpq_t(), ta.coef.get_mpq_t(), tb.coef.get_mpq_t());
            if (binom != 1) tmp *= bq;
            slot[ta.mono * tb.mono] += tmp;
          }
      });
    }
  }
  WeylOp::TermMap terms;
  for (auto& [gamma, slot] : acc) {
    MultiPoly c = to_poly(a.context(), slot);
    if (!c.is_zero()) terms.emplace(gamma, std::move(c));
  }
  WeylOp r(n, a.p());
  for (auto& [g, c] : terms) r += WeylOp::term(n, a.p(), g, c);
  return r;
}

WeylOp WeylOp::from_right_normal(std::size_t n, std::size_t p, const TermMap& right) {
  // d^gamma r = sum_kappa binom(gamma, kappa) d^kappa(r) d^(gamma - kappa)
  std::map<Monomial, Accumulator, MonomialGreater> acc;
  auto ctx = weyl_context(n, p);
  for (const auto& [gamma, r] : right) {
    for_each_subindex(gamma, n, [&](const Monomial& kappa, const Integer& binom) {
      MultiPoly dr = differentiate(r, kappa, n);
      if (dr.is_zero()) return;
      auto& slot = acc[gamma / kappa];
      for (const auto& t : dr.terms()) slot[t.mono] += t.coef * Rational(binom);
    });
  }
  WeylOp out(n, p);
  for (auto& [g, slot] : acc) {
    MultiPoly c = to_poly(ctx, slot);
    if (!c.is_zero()) out.terms_.emplace(g, std::move(c));
  }
  return out;
}

WeylOp::TermMap WeylOp::right_normal_form() const {
  // c d^gamma = sum_kappa (-1)^|kappa| binom(gamma, kappa) d^(gamma - kappa) d^kappa(c)
  std::map<Monomial, Accumulator, MonomialGreater> acc;
  for (const auto& [gamma, c] : terms_) {
    for_each_subindex(gamma, n_, [&](const Monomial& kappa, const Integer& binom) {
      MultiPoly dc = differentiate(c, kappa, n_);
      if (dc.is_zero()) return;
      Rational f(binom);
      if (order_of(kappa, n_) % 2) f = -f;
      auto& slot = acc[gamma / kappa];
      for (const auto& t : dc.terms()) slot[t.mono] += t.coef * f;
    });
  }
  TermMap out;
  for (auto& [g, slot] : acc) {
    MultiPoly c = to_poly(ctx_, slot);
    if (!c.is_zero()) out.emplace(g, std::move(c));
  }
  return out;
}

MultiPoly WeylOp::right_constant_term() const {
  auto r = right_normal_form();
  auto it = r.find(Monomial{});
  if (it == r.end()) return MultiPoly(ctx_);
  return it->second;
}

WeylOp weyl_transpose(const WeylOp& a) {
  WeylOp::TermMap right;
  for (const auto& [gamma, c] : a.terms()) right.emplace(gamma, order_of(gamma, a.n()) % 2 ? -c : c);
  return WeylOp::from_right_normal(a.n(), a.p(), right);
}

WeylOp WeylOp::change_coordinates(const std::vector<std::vector<Rational>>& m) const {
  const std::size_t n = n_;
  if (m.size() != n) throw DimensionMismatch("change_coordinates: matrix size");
  auto minv = invert(m);
  if (!minv) throw std::invalid_argument("change_coordinates: singular matrix");
  // x_i = sum_k minv[i][k] y_k ; s unchanged.
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly img(ctx_);
    for (std::size_t k = 0; k < n; ++k)
      if ((*minv)[i][k] != 0) img += MultiPoly::variable(ctx_, k) * (*minv)[i][k];
    images.push_back(std::move(img));
  }
  for (std::size_t j = 0; j < p_; ++j) images.push_back(MultiPoly::variable(ctx_, n + j));
  // d_{x_k} = sum_i m[i][k] d_{y_i}; powers expanded in a commutative ring on the derivation slots.
  auto dctx = weyl_context(n, 0);
  std::vector<MultiPoly> dx;
  for (std::size_t k = 0; k < n; ++k) {
    MultiPoly f(dctx);
    for (std::size_t i = 0; i < n; ++i)
      if (m[i][k] != 0) f += MultiPoly::variable(dctx, i) * m[i][k];
    dx.push_back(std::move(f));
  }
  std::map<std::pair<std::size_t, unsigned>, MultiPoly> dpow;
  auto power = [&](std::size_t k, unsigned e) -> const MultiPoly& {
    auto key = std::make_pair(k, e);
    auto it = dpow.find(key);
    if (it == dpow.end()) it = dpow.emplace(key, dx[k].pow(e)).first;
    return it->second;
  };
  WeylOp out(n, p_);
  for (const auto& [gamma, c] : terms_) {
    MultiPoly cy = c.substitute(images, ctx_);
    MultiPoly dpoly = MultiPoly::constant(dctx, 1);
    for (std::size_t k = 0; k < n; ++k)
      if (gamma[k]) dpoly = dpoly * power(k, gamma[k]);
    for (const auto& t : dpoly.terms()) out += WeylOp::term(n, p_, t.mono, cy * t.coef);
  }
  return out;
}

std::string WeylOp::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [gamma, c] : terms_) {
    for (const auto& t : c.terms()) {
      Rational q = t.coef;
      if (first) {
        if (q < 0) {
          os << '-';
          q = -q;
        }
      } else {
        os << (q < 0 ? " - " : " + ");
        if (q < 0) q = -q;
      }
      first = false;
      bool star = false;
      bool bare = t.mono.is_one() && order_of(gamma, n_) == 0;
      if (q != 1 || bare) {
        os << q.get_str();
        star = true;
      }
      for (std::size_t v = 0; v < n_ + p_; ++v) {
        if (!t.mono[v]) continue;
        if (star) os << '*';
        os << ctx_->name(v);
        if (t.mono[v] > 1) os << '^' << static_cast<unsigned>(t.mono[v]);
        star = true;
      }
      for (std::size_t i = 0; i < n_; ++i) {
        if (!gamma[i]) continue;
        if (star) os << '*';
        os << 'd' << (i + 1);
        if (gamma[i] > 1) os << '^' << static_cast<unsigned>(gamma[i]);
        star = true;
      }
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------

MultiPoly sharp_symbol(const WeylOp& a, const ContextPtr& target) {
  if (a.is_zero()) throw ZeroOperator("sharp_symbol of the zero operator");
  const std::size_t n = a.n(), p = a.p();
  ContextPtr ctx = target ? target : symbol_context(n, p);
  const std::size_t s_off = ctx->block_offset("s");
  const std::size_t xi_off = ctx->block_offset("xi");
  if (ctx->block_size("s") < p || ctx->block_size("xi") != n || ctx->size() != p + 2 * n)
    throw DimensionMismatch("sharp_symbol: target context shape");
  // The space block is whatever block is not s / xi.
  std::size_t x_off = 0;
  for (const auto& b : ctx->blocks())
    if (b.name != "s" && b.name != "xi") x_off = ctx->block_offset(b.name);
  const int w = a.sharp_weight();
  std::vector<MultiPoly::Term> out;
  for (const auto& [gamma, c] : a.terms()) {
    int og = static_cast<int>(order_of(gamma, n));
    for (const auto& t : c.terms()) {
      int sdeg = 0;
      for (std::size_t j = 0; j < p; ++j) sdeg += t.mono[n + j];
      if (og + sdeg != w) continue;
      Monomial m;
      for (std::size_t j = 0; j < p; ++j) m[s_off + j] = t.mono[n + j];
      for (std::size_t i = 0; i < n; ++i) m[xi_off + i] = gamma[i];
      for (std::size_t i = 0; i < n; ++i) m[x_off + i] = t.mono[i];
      out.push_back({m, t.coef});
    }
  }
  return MultiPoly::from_terms(ctx, std::move(out));
}

MultiPoly field_symbol(const std::vector<Rational>& a, const ContextPtr& symbol_ctx) {
  const std::size_t xi_off = symbol_ctx->block_offset("xi");
  MultiPoly r(symbol_ctx);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) r += MultiPoly::variable(symbol_ctx, xi_off + i) * a[i];
  return r;
}

// ---------------------------------------------------------------------------

namespace {

class WeylParser {
 public:
  WeylParser(const std::string& text, std::size_t n, std::size_t p) : s_(text), n_(n), p_(p) {}

  WeylOp parse() {
    WeylOp r = expression();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  struct Pending {
    Rational c = 1;
    Monomial xs;  // coefficient monomial in (x, s)
    Monomial dd;  // derivation multi-index
  };

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("operator parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  unsigned number() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
  }

  WeylOp pending_op(const Pending& pd) const {
    return WeylOp::term(n_, p_, pd.dd, MultiPoly::monomial(weyl_context(n_, p_), pd.xs, pd.c));
  }

  WeylOp expression() {
    WeylOp acc(n_, p_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    while (true) {
      WeylOp t = term();
      if (negate)
        acc -= t;
      else
        acc += t;
      if (accept('+'))
        negate = false;
      else if (accept('-'))
        negate = true;
      else
        break;
    }
    return acc;
  }

  WeylOp term() {
    std::optional<WeylOp> acc;
    Pending pd;
    auto flush = [&] {
      WeylOp op = pending_op(pd);
      acc = acc ? weyl_mul(*acc, op) : op;
      pd = Pending{};
    };
    do {
      skip_ws();
      if (pos_ >= s_.size()) fail("unexpected end of input");
      char c = s_[pos_];
      if (c == '(') {
        ++pos_;
        WeylOp sub = expression();
        if (!accept(')')) fail("expected ')'");
        flush();
        acc = weyl_mul(*acc, sub);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '/')) ++pos_;
        pd.c *= parse_rational(s_.substr(start, pos_ - start));
      } else if (c == 'x' || c == 's' || c == 'd') {
        ++pos_;
        unsigned idx = number();
        unsigned e = 1;
        if (accept('^')) e = number();
        std::size_t limit = c == 's' ? p_ : n_;
        if (idx < 1 || idx > limit) fail(std::string("index out of range for ") + c);
        std::size_t i = idx - 1;
        if (c == 's') {
          pd.xs = pd.xs * Monomial::unit(n_ + i, e);
        } else if (c == 'd') {
          pd.dd = pd.dd * Monomial::unit(i, e);
        } else {
          if (pd.dd[i] > 0) flush();
          pd.xs = pd.xs * Monomial::unit(i, e);
        }
      } else {
        fail("unexpected character");
      }
    } while (accept('*'));
    WeylOp last = pending_op(pd);
    return acc ? weyl_mul(*acc, last) : last;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  std::size_t n_, p_;
};

}  // namespace

WeylOp parse_weyl(const std::string& text, std::size_t n, std::size_t p) { return WeylParser(text, n, p).parse(); }

// ---------------------------------------------------------------------------

CkTable ck_table(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("ck_table: need n >= 1 and k >= 1");
  std::map<std::vector<unsigned>, Integer> cur;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<unsigned> e(n, 0);
    e[j] = 1;
    cur[e] = 1;
  }
  for (std::size_t level = 2; level <= k; ++level) {
    std::map<std::vector<unsigned>, Integer> next;
    for (const auto& [idx, v] : cur)
      for (std::size_t j = 0; j < n; ++j) {
        auto up = idx;
        ++up[j];
        next[up] += v;
      }
    cur = std::move(next);
  }
  return CkTable{n, k, std::move(cur)};
}

WeylOp euler_field(std::size_t n, std::size_t p) {
  WeylOp e(n, p);
  for (std::size_t i = 0; i < n; ++i) e += weyl_mul(WeylOp::x(n, p, i), WeylOp::d(n, p, i));
  return e;
}

WeylOp euler_expand(std::size_t n, std::size_t k, EulerOffset offset, std::size_t p) {
  if (n < 1 || k < 1) throw std::invalid_argument("euler_expand: need n >= 1 and k >= 1");
  WeylOp e = euler_field(n, p);
  WeylOp prod = WeylOp::scalar(n, p, 1);
  for (std::size_t j = 0; j < k; ++j) {
    Rational shift = offset == EulerOffset::MinusJ ? Rational(-static_cast<long>(j))
                                                   : Rational(static_cast<long>(j + n));
    prod = weyl_mul(prod, e + WeylOp::scalar(n, p, shift));
  }
  return prod;
}

WeylOp ck_operator(const CkTable& table, EulerOffset offset, std::size_t p) {
  const std::size_t n = table.n;
  auto ctx = weyl_context(n, p);
  WeylOp out(n, p);
  for (const auto& [idx, c] : table.entries) {
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint8_t>(idx[i]);
    MultiPoly xm = MultiPoly::monomial(ctx, m, Rational(c));
    if (offset == EulerOffset::MinusJ) {
      out += WeylOp::term(n, p, m, xm);
    } else {
      out += weyl_mul(WeylOp::term(n, p, m, MultiPoly::constant(ctx, Rational(c))),
                      WeylOp::multiplication(n, p, MultiPoly::monomial(ctx, m, 1)));
    }
  }
  return out;
}

}  // namespace bsarr
