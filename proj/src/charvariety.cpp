#include "bsarr/charvariety.hpp"

#include <algorithm>
#include <set>

namespace bsarr {

namespace {

std::string pair_label(std::size_t i, std::size_t j) {
  return "U~[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

std::vector<std::string> to_strings(const std::vector<MultiPoly>& ps) {
  std::vector<std::string> out;
  for (const auto& q : ps) out.push_back(q.to_string());
  return out;
}

bool contains_all(const IdealBasis& gb, const std::vector<MultiPoly>& ps) {
  for (const auto& q : ps)
    if (!normal_form(q, gb).is_zero()) return false;
  return true;
}

MultiPoly drop_s(const MultiPoly& q, std::size_t s_off, std::size_t p) {
  std::vector<MultiPoly::Term> out;
  for (const auto& t : q.terms()) {
    bool has_s = false;
    for (std::size_t j = 0; j < p; ++j) has_s = has_s || t.mono[s_off + j] != 0;
    if (!has_s) out.push_back(t);
  }
  return MultiPoly::from_terms(q.context(), std::move(out));
}

}  // namespace

MultiPoly SymbolIdeal::form(std::size_t k) const {
  const std::size_t off = ctx->block_offset("l");
  MultiPoly r(ctx);
  for (std::size_t m = 0; m < n(); ++m)
    if (frame.in_y.forms.at(k)[m] != 0) r += MultiPoly::variable(ctx, off + m) * frame.in_y.forms[k][m];
  return r;
}

MultiPoly SymbolIdeal::sigma_U(std::size_t i, std::size_t j) const {
  return field_symbol(dual_field_pair(frame.in_y, i, j), ctx);
}

Rational SymbolIdeal::U_value(std::size_t i, std::size_t j, std::size_t k) const {
  return field_apply(dual_field_pair(frame.in_y, i, j), frame.in_y.forms.at(k));
}

MultiPoly SymbolIdeal::sharp_U(std::size_t i, std::size_t j) const {
  return sharp_symbol(tilde_U_pair(frame.in_y, i, j), ctx);
}

std::vector<MultiPoly> SymbolIdeal::generators() const {
  std::vector<MultiPoly> g{euler};
  g.insert(g.end(), reduced.begin(), reduced.end());
  return g;
}

MultiPoly SymbolIdeal::s(std::size_t j) const { return MultiPoly::variable(ctx, ctx->block_offset("s") + j); }

MultiPoly SymbolIdeal::xi(std::size_t i) const { return MultiPoly::variable(ctx, ctx->block_offset("xi") + i); }

SymbolIdeal symbol_ideal(const Arrangement& a) {
  require_generic(a);
  if (a.p() != a.n + 1) throw WrongP("the symbol ideal is implemented for p = n+1");
  SymbolIdeal s;
  s.arrangement = a;
  s.frame = adapted_frame(a);
  s.ctx = symbol_context(a.n, a.p(), "l", "l");
  s.euler = sharp_symbol(tilde_E(s.frame.in_y), s.ctx);
  for (std::size_t i = 1; i < a.p(); ++i)
    for (std::size_t j = i + 1; j < a.p(); ++j) {
      s.pairs.emplace_back(i, j);
      s.reduced.push_back(s.sharp_U(i, j));
    }
  return s;
}

GroebnerReport groebner_check(const SymbolIdeal& s) {
  GroebnerReport r;
  const std::size_t n = s.n();
  auto fail = [&](const std::string& what) {
    if (r.failure.empty()) r.failure = what;
  };

  // (a) leading monomials: l_j s_i for j <= n, l_1 s_i for j = n+1 (1-based).
  for (std::size_t t = 0; t < s.pairs.size(); ++t) {
    auto [i, j] = s.pairs[t];
    MultiPoly expected = (j < n ? s.form(j) : MultiPoly::variable(s.ctx, s.ctx->block_offset("l"))) * s.s(i);
    const Monomial lead = s.reduced[t].leading().mono;
    const Monomial want = expected.leading().mono;
    r.labels.push_back(pair_label(i, j));
    r.leading.push_back(MultiPoly::monomial(s.ctx, lead).to_string());
    r.expected.push_back(MultiPoly::monomial(s.ctx, want).to_string());
    if (lead != want) {
      r.leading_ok = false;
      fail("leading monomial of " + pair_label(i, j) + " is " + r.leading.back() + ", expected " + r.expected.back());
    }
  }

  // (b) Buchberger adds nothing and keeps the leading monomials.
  IdealBasis input(s.reduced);
  IdealBasis gb = buchberger(input, &r.stats);
  std::set<Monomial> in_lead, out_lead;
  for (const auto& g : s.reduced) in_lead.insert(g.leading().mono);
  for (const auto& g : gb.generators) out_lead.insert(g.leading().mono);
  if (r.stats.nonzero_remainders != 0 || in_lead != out_lead) {
    r.buchberger_ok = false;
    fail("buchberger produced " + std::to_string(r.stats.nonzero_remainders) + " new elements");
  }

  // (c) the symbol-level syzygies behind each S-pair family.
  auto S = [&](std::size_t i, std::size_t j) { return s.sharp_U(i, j); };
  auto A = [&](std::size_t i, std::size_t j) {
    return s.form(i) * s.form(j) * s.sigma_U(i, j) - s.form(i) * s.s(j) * s.U_value(i, j, j);
  };
  auto check = [&](const std::string& name, const MultiPoly& lhs, const MultiPoly& rhs) {
    ++r.syzygies_checked;
    if (!(lhs == rhs)) {
      r.syzygies_ok = false;
      fail(name);
    }
  };
  auto idx = [](std::size_t i, std::size_t j, std::size_t k) {
    return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
  };
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      for (std::size_t k = j + 1; k <= n; ++k) {
        check("l_k S_ij - l_j S_ik " + idx(i, j, k), s.form(k) * S(i, j) - s.form(j) * S(i, k),
              s.form(i) * S(j, k) * s.U_value(i, j, j));
        check("s_j S_ik - s_i S_jk " + idx(i, j, k), s.s(j) * S(i, k) - s.s(i) * S(j, k),
              -(s.form(i) * s.sigma_U(i, k) * S(j, k)) + s.form(j) * s.sigma_U(j, k) * S(i, k) -
                  s.s(k) * S(i, j) * s.U_value(j, k, k));
        check("s_j S_ik - s_i S_jk via S_ij " + idx(i, j, k), s.s(j) * S(i, k) - s.s(i) * S(j, k),
              -(s.form(i) * s.sigma_U(i, j) * S(j, k)) + s.form(k) * s.sigma_U(j, k) * S(i, j) -
                  s.s(k) * S(i, j) * s.U_value(j, k, k));
      }
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t m = 1; m <= n; ++m) {
        if (i == j || j == m || i == m) continue;
        check("l_m s_j S_ij - l_j s_i S_jm " + idx(i, j, m), s.form(m) * s.s(j) * S(i, j) - s.form(j) * s.s(i) * S(j, m),
              -(A(i, j) * S(j, m)) + A(j, m) * S(i, j));
        for (std::size_t k = 1; k <= n; ++k) {
          if (k == i || k == j || k == m) continue;
          check("l_m s_k S_ij - l_j s_i S_km " + idx(i, j, k) + "," + std::to_string(m + 1),
                s.form(m) * s.s(k) * S(i, j) - s.form(j) * s.s(i) * S(k, m), -(A(i, j) * S(k, m)) + A(k, m) * S(i, j));
        }
      }
  return r;
}

AnnMembership ann_membership(const WeylOp& p, const Arrangement& a) {
  SymbolIdeal sym = symbol_ideal(a);
  const std::size_t n = a.n, np = a.p();
  auto wctx = weyl_context(n, np);
  const auto& in_y = sym.frame.in_y;

  std::vector<WeylOp> gens_y{tilde_E(in_y)};
  AnnMembership out;
  out.generators.push_back({"E~", tilde_E(a)});
  for (auto [i, j] : sym.pairs) {
    gens_y.push_back(tilde_U_pair(in_y, i, j));
    out.generators.push_back({pair_label(i, j), tilde_U_pair(a, i, j)});
  }
  IdealBasis basis(sym.generators());
  basis.groebner = is_groebner(basis);

  const std::size_t s_off = sym.ctx->block_offset("s"), xi_off = sym.ctx->block_offset("xi"),
                    l_off = sym.ctx->block_offset("l");
  auto lift = [&](const MultiPoly& c) {
    WeylOp op(n, np);
    for (const auto& t : c.terms()) {
      Monomial gamma, coef;
      for (std::size_t i = 0; i < n; ++i) {
        gamma[i] = t.mono[xi_off + i];
        coef[i] = t.mono[l_off + i];
      }
      for (std::size_t j = 0; j < np; ++j) coef[n + j] = t.mono[s_off + j];
      op += WeylOp::term(n, np, gamma, MultiPoly::monomial(wctx, coef, t.coef));
    }
    return op;
  };

  std::vector<WeylOp> cof(gens_y.size(), WeylOp(n, np));
  WeylOp rest = p.change_coordinates(sym.frame.m);
  while (!rest.is_zero()) {
    const int w = rest.sharp_weight();
    MultiPoly top = sharp_symbol(rest, sym.ctx);
    Membership m;
    try {
      m = ideal_member(top, basis);
    } catch (const NotGroebner&) {
      m.member = false;
    }
    if (!m.member) {
      out.failed_weight = w;
      return out;
    }
    for (std::size_t g = 0; g < gens_y.size(); ++g) {
      if (m.cofactors[g].is_zero()) continue;
      WeylOp c = lift(m.cofactors[g]);
      rest -= c * gens_y[g];
      cof[g] += c;
    }
    if (!rest.is_zero() && rest.sharp_weight() >= w) {
      out.failed_weight = w;
      return out;
    }
  }
  out.member = true;
  for (auto& c : cof) out.cofactors.push_back(c.change_coordinates(sym.frame.m_inv));
  return out;
}

bool SlopeReport::passed() const {
  if (!dichotomy_ok || components.size() != slopes.size()) return false;
  std::set<std::size_t> hit;
  for (const auto& c : components) {
    if (!c.contains_equations || c.slopes_in_ideal.size() != 1) return false;
    hit.insert(c.slopes_in_ideal[0]);
  }
  return hit.size() == slopes.size();
}

SlopeReport slopes_report(const Arrangement& a) {
  SymbolIdeal sym = symbol_ideal(a);
  const std::size_t n = a.n, p = a.p();
  SlopeReport r;
  auto fail = [&](const std::string& what) {
    if (r.failure.empty()) r.failure = what;
  };

  std::vector<MultiPoly> equations = sym.generators();
  MultiPoly h = MultiPoly::constant(sym.ctx, 1);
  for (std::size_t k = 0; k < p; ++k) h = h * sym.form(k);
  equations.push_back(h);

  // Over l_i = 0 the generator U~_{i,j} leaves -l_j s_i.
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<MultiPoly> g = sym.generators();
    g.push_back(sym.form(i));
    IdealBasis gb = buchberger(IdealBasis(g));
    for (std::size_t j = 0; j < p; ++j) {
      if (j == i) continue;
      ++r.dichotomy_checked;
      MultiPoly lj_si = sym.form(j) * sym.s(i);
      bool identity = divide_exact(lj_si + sym.sharp_U(i, j), sym.form(i)).has_value();
      bool reduces = normal_form(lj_si, gb).is_zero();
      if (!identity || !reduces) {
        r.dichotomy_ok = false;
        fail("dichotomy l_" + std::to_string(j + 1) + " s_" + std::to_string(i + 1) + " modulo l_" +
             std::to_string(i + 1));
      }
    }
  }

  std::vector<MultiPoly> slope_polys;
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<long> v(p, 0);
    v[i] = 1;
    r.slopes.push_back(v);
    slope_polys.push_back(sym.s(i));
  }
  r.slopes.push_back(std::vector<long>(p, 1));
  MultiPoly sigma(sym.ctx);
  for (std::size_t j = 0; j < p; ++j) sigma += sym.s(j);
  slope_polys.push_back(sigma);

  auto add_component = [&](std::string name, std::vector<MultiPoly> ideal) {
    ComponentCheck c;
    c.name = std::move(name);
    c.ideal = to_strings(ideal);
    IdealBasis gb = buchberger(IdealBasis(ideal));
    c.contains_equations = contains_all(gb, equations);
    if (!c.contains_equations) fail("component " + c.name + " does not contain J + (H)");
    for (std::size_t t = 0; t < slope_polys.size(); ++t)
      if (normal_form(slope_polys[t], gb).is_zero()) c.slopes_in_ideal.push_back(t);
    if (c.slopes_in_ideal.size() != 1) fail("component " + c.name + " does not project onto exactly one slope");
    r.components.push_back(std::move(c));
  };

  for (std::size_t i = 0; i < p; ++i) {
    // Equations over H_i: l_i = s_i = 0, the Euler relation of the restricted
    // arrangement, and the U~ symbols not involving i.
    const std::size_t k0 = i == p - 1 ? p - 2 : p - 1;
    MultiPoly euler_i(sym.ctx);
    for (std::size_t k = 0; k < p; ++k)
      if (k != i && k != k0) euler_i += sym.form(k) * sym.sigma_U(k, k0);
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) euler_i -= sym.s(j);
    std::vector<MultiPoly> ideal{sym.form(i), sym.s(i), euler_i};
    for (std::size_t j = 0; j < p; ++j)
      for (std::size_t k = j + 1; k < p; ++k)
        if (j != i && k != i) ideal.push_back(sym.sharp_U(j, k));
    add_component("W#(H_" + std::to_string(i + 1) + ") x C in s_" + std::to_string(i + 1) + " = 0", ideal);
  }
  std::vector<MultiPoly> central;
  for (std::size_t k = 0; k < n; ++k) central.push_back(sym.form(k));
  central.push_back(sigma);
  add_component("T*_0 C^n x {s_1 + ... + s_" + std::to_string(p) + " = 0}", central);
  return r;
}

bool ConormalReport::passed() const {
  return !strata.empty() &&
         std::all_of(strata.begin(), strata.end(), [](const StratumCheck& s) { return s.contains_equations; });
}

ConormalReport conormal_check(const Arrangement& a) {
  SymbolIdeal sym = symbol_ideal(a);
  const std::size_t n = a.n, p = a.p();
  const std::size_t s_off = sym.ctx->block_offset("s");
  ConormalReport r;

  std::vector<MultiPoly> eqs{drop_s(sym.euler, s_off, p)};
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) eqs.push_back(drop_s(sym.sharp_U(i, j), s_off, p));
  r.equations = to_strings(eqs);

  auto add = [&](std::vector<std::size_t> forms, std::string name, std::vector<MultiPoly> ideal) {
    StratumCheck c;
    c.forms = std::move(forms);
    c.name = std::move(name);
    c.ideal = to_strings(ideal);
    c.contains_equations = contains_all(buchberger(IdealBasis(ideal)), eqs);
    if (!c.contains_equations && r.failure.empty()) r.failure = "stratum " + c.name;
    r.strata.push_back(std::move(c));
  };

  std::vector<MultiPoly> zero;
  for (std::size_t i = 0; i < n; ++i) zero.push_back(sym.xi(i));
  add({}, "zero section", zero);
  for (std::size_t k = 1; k < n; ++k)
    for (const auto& K : subsets(p, k)) {
      std::vector<MultiPoly> ideal;
      std::string name = "conormal to H";
      for (auto q : K) {
        ideal.push_back(sym.form(q));
        name += "_" + std::to_string(q + 1);
      }
      for (std::size_t u = 0; u < p; ++u)
        for (std::size_t v = u + 1; v < p; ++v)
          if (!std::count(K.begin(), K.end(), u) && !std::count(K.begin(), K.end(), v))
            ideal.push_back(sym.sigma_U(u, v));
      add(K, name, ideal);
    }
  std::vector<std::size_t> first(n);
  std::vector<MultiPoly> origin;
  for (std::size_t q = 0; q < n; ++q) {
    first[q] = q;
    origin.push_back(sym.form(q));
  }
  add(first, "T*_0 C^n", origin);
  return r;
}

RegularityReport regularity_check(const SymbolIdeal& s, std::size_t count, std::uint64_t seed) {
  RegularityReport r;
  std::mt19937_64 rng(seed);
  const std::size_t n = s.n(), p = s.p();
  IdealBasis basis(s.reduced, true);
  const std::size_t s_off = s.ctx->block_offset("s"), xi_off = s.ctx->block_offset("xi"),
                    l_off = s.ctx->block_offset("l");
  std::vector<std::size_t> vars;
  for (std::size_t j = 1; j < p; ++j) vars.push_back(s_off + j);
  for (std::size_t i = 0; i < n; ++i) vars.push_back(xi_off + i);
  for (std::size_t i = 0; i < n; ++i) vars.push_back(l_off + i);
  std::uniform_int_distribution<int> coef(-4, 4), expo(0, 2), nterms(1, 4);
  const MultiPoly l2 = MultiPoly::variable(s.ctx, l_off + 1);
  std::size_t attempts = 0;
  while (r.tested < count && attempts < 100 * count) {
    ++attempts;
    std::vector<MultiPoly::Term> terms;
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      Monomial m;
      for (auto v : vars) m[v] = static_cast<std::uint8_t>(expo(rng));
      terms.push_back({m, Rational(coef(rng))});
    }
    MultiPoly u = MultiPoly::from_terms(s.ctx, std::move(terms));
    if (u.is_zero() || normal_form(u, basis).is_zero()) {
      ++r.skipped_in_ideal;
      continue;
    }
    ++r.tested;
    if (normal_form(l2 * u, basis).is_zero()) ++r.failures;
  }
  return r;
}

}  // namespace bsarr
