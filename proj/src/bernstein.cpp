#include "bsarr/bernstein.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "bsarr/linsolve.hpp"

namespace bsarr {

namespace {

MultiPoly s_var(std::size_t n, std::size_t p, std::size_t j) { return MultiPoly::variable(weyl_context(n, p), n + j); }

MultiPoly forms_power_product(const std::vector<MultiPoly>& forms, const std::vector<unsigned>& a, ContextPtr ctx) {
  MultiPoly r = MultiPoly::constant(ctx, 1);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k]) r = r * forms[k].pow(a[k]);
  return r;
}

}  // namespace

MultiPoly BFactored::expand() const {
  auto ctx = weyl_context(n, p);
  MultiPoly r = MultiPoly::constant(ctx, 1);
  for (const auto& f : factors) {
    MultiPoly lin(ctx);
    if (f.kind == BFactor::Kind::SPlusOne) {
      lin = s_var(n, p, f.index) + MultiPoly::constant(ctx, 1);
    } else {
      for (std::size_t j = 0; j < p; ++j) lin += s_var(n, p, j);
      lin += MultiPoly::constant(ctx, Rational(f.c));
    }
    r = r * lin.pow(f.multiplicity);
  }
  return r;
}

std::size_t BFactored::factor_count() const {
  std::size_t k = 0;
  for (const auto& f : factors) k += f.multiplicity;
  return k;
}

std::string BFactored::to_string() const {
  if (factors.empty()) return "1";
  std::ostringstream os;
  for (const auto& f : factors) {
    os << '(';
    if (f.kind == BFactor::Kind::SPlusOne) {
      os << 's' << f.index + 1 << " + 1";
    } else {
      for (std::size_t j = 0; j < p; ++j) os << (j ? " + s" : "s") << j + 1;
      if (f.c > 0) os << " + " << f.c;
      if (f.c < 0) os << " - " << -f.c;
    }
    os << ')';
    if (f.multiplicity != 1) os << '^' << f.multiplicity;
  }
  return os.str();
}

std::size_t sigma_block_length(std::size_t n, std::size_t p) {
  if (p <= n) return 0;
  if (p == n + 1) return n + 1;
  return 2 * (p - n) + n - 1;
}

BFactored candidate_b(const Arrangement& a) {
  require_generic(a);
  BFactored b;
  b.n = a.n;
  b.p = a.p();
  for (std::size_t j = 0; j < b.p; ++j) b.factors.push_back({BFactor::Kind::SPlusOne, j, 0, 1});
  const std::size_t k = sigma_block_length(b.n, b.p);
  for (std::size_t t = 0; t < k; ++t)
    b.factors.push_back({BFactor::Kind::SigmaPlus, 0, static_cast<long>(b.n + t), 1});
  b.generator = b.p <= b.n + 1;
  return b;
}

std::vector<ExchangeTerm> exchange_terms(const Arrangement& arr, const std::vector<unsigned>& a, std::size_t i,
                                         const std::vector<std::size_t>& J) {
  const std::size_t n = arr.n, p = arr.p();
  if (p < n + 1 || J.size() != p - n) throw std::invalid_argument("exchange: |J| must be p - n >= 1");
  if (a.size() != p) throw std::invalid_argument("exchange: exponent vector must have length p");
  if (a[i] != 0) throw std::invalid_argument("exchange: l_i must not divide the target");
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < p; ++k) {
    bool in_j = std::find(J.begin(), J.end(), k) != J.end();
    if (k == i && in_j) throw std::invalid_argument("exchange: i must not lie in J");
    if (in_j && a[k] == 0) throw std::invalid_argument("exchange: l_j must divide the target");
    if (k != i && !in_j) others.push_back(k);
  }
  Vec u = dual_field(arr, i, others);
  auto ctx = weyl_context(n, p);
  std::vector<ExchangeTerm> out;
  for (std::size_t t = 0; t < J.size(); ++t) {
    const std::size_t j = J[t];
    Rational uj = field_apply(u, arr.forms[j]);
    MultiPoly shift = s_var(n, p, j) + MultiPoly::constant(ctx, Rational(a[j]));
    WeylOp op = WeylOp::multiplication(n, p, shift * (-uj));
    if (t == 0) op += WeylOp::field(n, p, u) * WeylOp::multiplication(n, p, form_poly(arr, j));
    if (op.is_zero()) continue;
    std::vector<unsigned> e = a;
    ++e[i];
    --e[j];
    out.push_back({j, std::move(op), std::move(e)});
  }
  return out;
}

bool check_exchange(const FramePtr& frame, const std::vector<unsigned>& a, std::size_t i,
                    const std::vector<ExchangeTerm>& terms, bool adapted) {
  const std::size_t n = frame->arrangement.n, p = frame->arrangement.p();
  auto ctx = weyl_context(n, p);
  MultiPoly lhs_num = forms_power_product(frame->l_y, a, ctx) * (s_var(n, p, i) + MultiPoly::constant(ctx, 1));
  LsElement diff = LsElement::from_y(frame, lhs_num);
  for (const auto& t : terms) {
    auto e = LsElement::from_y(frame, forms_power_product(frame->l_y, t.exponents, ctx));
    diff -= adapted ? apply_op_y(t.op, e) : apply_op(t.op, e);
  }
  return diff.canonical().is_zero();
}

ExchangeResult exchange_step(const Arrangement& a, std::size_t i, std::size_t j, const std::vector<unsigned>& m) {
  require_generic(a);
  if (a.p() != a.n + 1) throw WrongP("exchange_step needs p = n+1");
  if (i == j || i >= a.p() || j >= a.p()) throw std::invalid_argument("exchange_step: need distinct form indices");
  if (m.size() != a.p()) throw std::invalid_argument("exchange_step: exponent vector must have length p");
  std::vector<unsigned> target = m;
  ++target[j];
  if (std::all_of(m.begin(), m.end(), [](unsigned e) { return e >= 1; }))
    return {WeylOp::scalar(a.n, a.p(), 1), target, true};
  auto terms = exchange_terms(a, target, i, {j});
  if (terms.size() != 1) throw ConstructionFailed("exchange_step: unexpected number of terms");
  if (!check_exchange(make_frame(a), target, i, terms))
    throw ConstructionFailed("exchange_step: identity failed to verify");
  return {std::move(terms[0].op), std::move(terms[0].exponents), false};
}

std::string to_string(BernsteinCertificate::Provenance p) {
  switch (p) {
    case BernsteinCertificate::Provenance::ClosedForm:
      return "closed-form";
    case BernsteinCertificate::Provenance::Exchange:
      return "exchange";
    case BernsteinCertificate::Provenance::Recursion:
      return "recursion";
    case BernsteinCertificate::Provenance::Ansatz:
      return "ansatz";
  }
  return "?";
}

std::string to_string(BernsteinCertificate::Status s) {
  return s == BernsteinCertificate::Status::Verified ? "verified" : "unverified";
}

namespace {

/// Builds R_a with prod_{j : a_j = 0} (s_j + 1) l^a l^s = R_a (H l^s), all in
/// the adapted coordinates.
class Reducer {
 public:
  Reducer(FramePtr frame, bool check) : frame_(std::move(frame)), check_(check) {}

  const WeylOp& reduce(const std::vector<unsigned>& a) {
    auto it = memo_.find(a);
    if (it != memo_.end()) return it->second;
    WeylOp r = compute(a);
    return memo_.emplace(a, std::move(r)).first->second;
  }

  std::size_t exchanges = 0;
  std::size_t rebalances = 0;

 private:
  WeylOp compute(const std::vector<unsigned>& a) {
    const auto& arr = frame_->adapted.in_y;
    const std::size_t n = arr.n, p = arr.p();
    auto ctx = weyl_context(n, p);
    auto zero = std::find(a.begin(), a.end(), 0u);
    if (zero == a.end()) {
      std::vector<unsigned> rest = a;
      for (auto& e : rest) --e;
      return WeylOp::multiplication(n, p, forms_power_product(frame_->l_y, rest, ctx));
    }
    const std::size_t i = static_cast<std::size_t>(zero - a.begin());
    std::vector<std::size_t> squares;
    for (std::size_t k = 0; k < p; ++k)
      if (a[k] >= 2) squares.push_back(k);
    WeylOp r(n, p);
    if (squares.size() >= p - n) {
      squares.resize(p - n);
      auto terms = exchange_terms(arr, a, i, squares);
      if (check_ && !check_exchange(frame_, a, i, terms, true))
        throw ConstructionFailed("exchange identity failed to verify");
      ++exchanges;
      for (const auto& t : terms) r += t.op * reduce(t.exponents);
      return r;
    }
    // Too few squares: move one factor of a high power onto n forms that
    // occur at most once.
    auto high = std::find_if(a.begin(), a.end(), [](unsigned e) { return e >= 3; });
    if (high == a.end()) throw ConstructionFailed("no exchange or rebalance applies");
    const std::size_t k = static_cast<std::size_t>(high - a.begin());
    std::vector<std::size_t> basis;
    for (std::size_t b = 0; b < p && basis.size() < n; ++b)
      if (a[b] <= 1) basis.push_back(b);
    if (basis.size() < n) throw ConstructionFailed("rebalance found no basis");
    Matrix m(n, Vec(n));
    for (std::size_t row = 0; row < n; ++row)
      for (std::size_t col = 0; col < n; ++col) m[row][col] = arr.forms[basis[col]][row];
    auto c = solve_square(m, arr.forms[k]);
    if (!c) throw ConstructionFailed("rebalance basis is singular");
    ++rebalances;
    for (std::size_t t = 0; t < n; ++t) {
      if ((*c)[t] == 0) continue;
      const std::size_t b = basis[t];
      std::vector<unsigned> next = a;
      --next[k];
      ++next[b];
      MultiPoly f = MultiPoly::constant(ctx, (*c)[t]);
      if (a[b] == 0) f = f * (s_var(n, p, b) + MultiPoly::constant(ctx, 1));
      r += reduce(next).left_multiply(f);
    }
    return r;
  }

  FramePtr frame_;
  bool check_;
  std::map<std::vector<unsigned>, WeylOp> memo_;
};

}  // namespace

BernsteinCertificate build_witness(const Arrangement& a, const BFactored& b, const WitnessOptions& opt) {
  require_generic(a);
  if (!(b == candidate_b(a))) throw std::invalid_argument("build_witness: b must be the candidate of this arrangement");
  const std::size_t n = a.n, p = a.p();
  auto frame = make_frame(a);
  auto ctx = weyl_context(n, p);
  BernsteinCertificate cert;
  cert.arrangement = a;
  cert.b = b;
  WeylOp p_y(n, p);
  if (p <= n) {
    cert.provenance = BernsteinCertificate::Provenance::ClosedForm;
    p_y = WeylOp::scalar(n, p, 1);
    for (std::size_t i = 0; i < p; ++i) p_y = p_y * WeylOp::d(n, p, i);
  } else {
    cert.provenance =
        p == n + 1 ? BernsteinCertificate::Provenance::Exchange : BernsteinCertificate::Provenance::Recursion;
    const std::size_t k = sigma_block_length(n, p);
    Reducer reducer(frame, opt.check_steps);
    CkTable table = ck_table(n, k);
    for (const auto& [iota, coef] : table.entries) {
      std::vector<unsigned> exps(p, 0);
      Monomial gamma;
      for (std::size_t v = 0; v < n; ++v) {
        exps[v] = iota[v];
        gamma[v] = static_cast<std::uint8_t>(iota[v]);
      }
      MultiPoly f = MultiPoly::constant(ctx, Rational(coef));
      for (std::size_t j = 0; j < p; ++j)
        if (exps[j] > 0) f = f * (s_var(n, p, j) + MultiPoly::constant(ctx, 1));
      p_y += WeylOp::term(n, p, gamma, MultiPoly::constant(ctx, 1)) * reducer.reduce(exps).left_multiply(f);
    }
    cert.exchange_steps = reducer.exchanges;
    cert.rebalance_steps = reducer.rebalances;
  }
  cert.witness = p_y.change_coordinates(frame->adapted.m_inv);
  if (opt.verify && !verify_certificate(cert)) throw ConstructionFailed("assembled witness failed verification");
  return cert;
}

bool verify_certificate(BernsteinCertificate& c) {
  c.status = BernsteinCertificate::Status::Unverified;
  const auto& a = c.arrangement;
  if (c.witness.n() != a.n || c.witness.p() != a.p() || c.b.n != a.n || c.b.p != a.p()) return false;
  if (!check_generic(a).generic) return false;
  auto frame = make_frame(a);
  LsElement lhs = apply_op(c.witness, shifted_unit(frame));
  LsElement rhs = LsElement::unit(frame).times(c.b.expand());
  bool ok = (lhs - rhs).canonical().is_zero();
  if (ok) c.status = BernsteinCertificate::Status::Verified;
  return ok;
}

std::optional<WeylOp> ansatz_solve(const Arrangement& a, const BFactored& b, unsigned order_bound,
                                   unsigned degree_bound, AnsatzStats* stats) {
  require_generic(a);
  const std::size_t n = a.n, p = a.p();
  auto frame = make_frame(a);
  auto ctx = weyl_context(n, p);
  const LsElement start = shifted_unit(frame).canonical();

  // d^gamma (H l^s) for every |gamma| <= order_bound.
  std::map<Monomial, LsElement> derivs;
  derivs.emplace(Monomial{}, start);
  std::function<const LsElement&(const Monomial&)> deriv = [&](const Monomial& g) -> const LsElement& {
    auto it = derivs.find(g);
    if (it != derivs.end()) return it->second;
    std::size_t m = 0;
    while (g[m] == 0) ++m;
    LsElement d = deriv(g / Monomial::unit(m)).derivative_y(m).canonical();
    return derivs.emplace(g, std::move(d)).first->second;
  };

  std::vector<Monomial> gammas;
  std::function<void(std::size_t, unsigned, Monomial&)> enum_gamma = [&](std::size_t v, unsigned left, Monomial& g) {
    if (v == n) {
      gammas.push_back(g);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      g[v] = static_cast<std::uint8_t>(e);
      enum_gamma(v + 1, left - e, g);
    }
    g[v] = 0;
  };
  Monomial g0;
  enum_gamma(0, order_bound, g0);
  std::sort(gammas.begin(), gammas.end());

  // Coefficient monomials y^alpha s^beta of total degree <= degree_bound.
  // The y-degree is forced: P(H l^s) = b l^s is homogeneous of y-degree 0
  // and H has degree p, so only |gamma| - |alpha| = p contributes.
  std::vector<Monomial> coef_monos;
  std::function<void(std::size_t, unsigned, Monomial&)> enum_coef = [&](std::size_t v, unsigned left, Monomial& m) {
    if (v == n + p) {
      coef_monos.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[v] = static_cast<std::uint8_t>(e);
      enum_coef(v + 1, left - e, m);
    }
    m[v] = 0;
  };
  Monomial m0;
  enum_coef(0, degree_bound, m0);
  std::sort(coef_monos.begin(), coef_monos.end());

  struct Column {
    Monomial gamma, coef;
  };
  std::vector<Column> columns;
  std::vector<unsigned> target(p, 0);
  for (const auto& g : gammas) {
    const unsigned order = g.degree();
    if (order < p) continue;
    for (const auto& cm : coef_monos) {
      unsigned ydeg = 0;
      for (std::size_t v = 0; v < n; ++v) ydeg += cm[v];
      if (ydeg + p != order) continue;
      columns.push_back({g, cm});
    }
    const auto& d = deriv(g);
    if (!d.is_zero())
      for (std::size_t k = 0; k < p; ++k) target[k] = std::max(target[k], d.denom()[k]);
  }

  std::map<Monomial, MultiPoly> lifted;
  for (const auto& col : columns)
    if (!lifted.count(col.gamma)) {
      const auto& d = deriv(col.gamma);
      lifted.emplace(col.gamma, d.is_zero() ? MultiPoly(ctx) : d.with_denominator(target).numerator_y());
    }

  std::map<Monomial, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows;
  auto row_index = [&](const Monomial& m) {
    auto [it, fresh] = row_of.emplace(m, rows.size());
    if (fresh) rows.emplace_back();
    return it->second;
  };
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& t : lifted.at(columns[c].gamma).terms())
      rows[row_index(t.mono * columns[c].coef)].emplace_back(c, t.coef);
  MultiPoly rhs = LsElement::unit(frame).times(b.expand()).with_denominator(target).numerator_y();
  std::vector<Rational> rhs_values(rows.size());
  for (const auto& t : rhs.terms()) {
    std::size_t r = row_index(t.mono);
    if (r >= rhs_values.size()) rhs_values.resize(r + 1);
    rhs_values[r] = t.coef;
  }
  rhs_values.resize(rows.size());

  LinearSystem sys;
  sys.columns = columns.size();
  for (std::size_t r = 0; r < rows.size(); ++r) sys.add_row(std::move(rows[r]), rhs_values[r]);
  SolveStats st;
  auto sol = solve_exact(sys, &st);
  if (stats) *stats = {columns.size(), sys.rows.size(), st.rank};
  if (!sol) return std::nullopt;

  WeylOp p_y(n, p);
  for (std::size_t c = 0; c < columns.size(); ++c)
    if ((*sol)[c] != 0) p_y += WeylOp::term(n, p, columns[c].gamma, MultiPoly::monomial(ctx, columns[c].coef, (*sol)[c]));
  return p_y.change_coordinates(frame->adapted.m_inv);
}

}  // namespace bsarr
