// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "bsarr/bernstein.hpp"
#include "bsarr/charvariety.hpp"

using namespace bsarr;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

Arrangement xy_sum() { return Arrangement(2, {{1, 0}, {0, 1}, {1, 1}}); }
Arrangement four_lines() { return Arrangement(2, {{1, 0}, {0, 1}, {1, 1}, {1, -1}}); }

std::vector<Arrangement> randoms(std::size_t n, std::size_t p, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Arrangement> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_generic_arrangement(n, p, rng));
  return out;
}

std::string sigma_text(std::size_t p, long c) {
  std::string s = "(";
  for (std::size_t j = 0; j < p; ++j) s += (j ? " + s" : "s") + std::to_string(j + 1);
  return s + " + " + std::to_string(c) + ")";
}

WeylOp mul(const Arrangement& a, const MultiPoly& c) { return WeylOp::multiplication(a.n, a.p(), c); }
WeylOp L(const Arrangement& a, std::size_t k) { return mul(a, form_poly(a, k)); }
WeylOp S(const Arrangement& a, std::size_t j) { return WeylOp::s(a.n, a.p(), j); }
WeylOp U(const Arrangement& a, std::size_t i, std::size_t j) { return WeylOp::field(a.n, a.p(), dual_field_pair(a, i, j)); }
Rational Uval(const Arrangement& a, std::size_t i, std::size_t j, std::size_t k) {
  return field_apply(dual_field_pair(a, i, j), a.forms[k]);
}
WeylOp Ut(const Arrangement& a, std::size_t i, std::size_t j) { return tilde_U_pair(a, i, j); }

std::string idx(std::initializer_list<std::size_t> v) {
  std::string s = "(";
  bool first = true;
  for (auto k : v) {
    s += (first ? "" : ",") + std::to_string(k + 1);
    first = false;
  }
  return s + ")";
}

// Criterion bodies. Those reused by the invariance check take the arrangements
// as arguments.

Outcome classic() {
  Outcome o;
  Arrangement a(1, {{1}});
  auto c = build_witness(a, candidate_b(a));
  o.require(c.b.to_string() == "(s1 + 1)", "b = " + c.b.to_string());
  o.require(c.status == BernsteinCertificate::Status::Verified, "not verified");
  o.require(c.witness == WeylOp::d(1, 1, 0), "witness " + c.witness.to_string());
  return o;
}

Outcome few_forms(const Arrangement& a) {
  Outcome o;
  auto b = candidate_b(a);
  bool only_s = b.factors.size() == a.p();
  for (const auto& f : b.factors) only_s = only_s && f.kind == BFactor::Kind::SPlusOne && f.multiplicity == 1;
  o.require(only_s, "b = " + b.to_string());
  auto c = build_witness(a, b);
  o.require(c.status == BernsteinCertificate::Status::Verified, "not verified");
  o.require(c.provenance == BernsteinCertificate::Provenance::ClosedForm, "provenance " + to_string(c.provenance));
  return o;
}

Outcome generator_case(const std::vector<Arrangement>& arrs, double limit, std::string* timing) {
  Outcome o;
  double worst = 0;
  for (const auto& a : arrs) {
    const auto t0 = std::chrono::steady_clock::now();
    auto b = candidate_b(a);
    std::string expected;
    for (std::size_t j = 0; j < a.p(); ++j) expected += "(s" + std::to_string(j + 1) + " + 1)";
    for (std::size_t k = 0; k <= a.n; ++k) expected += sigma_text(a.p(), static_cast<long>(a.n + k));
    o.require(b.to_string() == expected, "b = " + b.to_string());
    o.require(b.factor_count() == 2 * a.p(), "factor count " + std::to_string(b.factor_count()));
    o.require(b.generator, "candidate not flagged as generator");
    auto c = build_witness(a, b);
    o.require(c.status == BernsteinCertificate::Status::Verified, "not verified");
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    worst = std::max(worst, dt);
    o.require(dt < limit, "n=" + std::to_string(a.n) + " took " + std::to_string(dt) + " s");
  }
  if (timing) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "slowest %.2f s", worst);
    *timing = buf;
  }
  return o;
}

Outcome many_forms() {
  Outcome o;
  auto a = four_lines();
  auto b = candidate_b(a);
  std::string expected = "(s1 + 1)(s2 + 1)(s3 + 1)(s4 + 1)";
  for (long c = 2; c <= 6; ++c) expected += sigma_text(4, c);
  o.require(b.to_string() == expected, "b = " + b.to_string());
  auto c = build_witness(a, b);
  o.require(c.status == BernsteinCertificate::Status::Verified, "not verified");
  o.detail = "provenance " + to_string(c.provenance);
  return o;
}

Outcome euler_products() {
  Outcome o;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto a = randoms(n, n == 1 ? 1 : n + 1, 1, 50 + n)[0];
    auto frame = make_frame(a);
    auto ctx = weyl_context(n, a.p());
    MultiPoly sigma(ctx);
    for (std::size_t j = 0; j < a.p(); ++j) sigma += MultiPoly::variable(ctx, n + j);
    MultiPoly prod = MultiPoly::constant(ctx, 1);
    for (std::size_t k = 1; k <= n + 1; ++k) {
      prod = prod * (sigma + MultiPoly::constant(ctx, Rational(static_cast<long>(n + k - 1))));
      auto table = ck_table(n, k);
      auto op = ck_operator(table, EulerOffset::PlusJPlusN, a.p());
      o.require(apply_op(op, LsElement::unit(frame)) == LsElement::unit(frame).times(prod),
                "action identity n=" + std::to_string(n) + " k=" + std::to_string(k));
      o.require(ck_operator(table, EulerOffset::PlusJPlusN) == euler_expand(n, k, EulerOffset::PlusJPlusN) &&
                    ck_operator(table, EulerOffset::MinusJ) == euler_expand(n, k, EulerOffset::MinusJ),
                "euler_expand mismatch n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return o;
}

Outcome annihilators(const std::vector<Arrangement>& arrs) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& a : arrs) {
    auto frame = make_frame(a);
    auto need = [&](const WeylOp& op, const std::string& what) {
      ++checked;
      o.require(annihilates(op, frame), what + " on n=" + std::to_string(a.n) + ", p=" + std::to_string(a.p()));
    };
    need(tilde_E(a), "E~");
    const std::size_t p = a.p();
    if (p == a.n + 1)
      for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
          if (i != j) need(tilde_U_pair(a, i, j), "U~" + idx({i, j}));
    for (std::size_t i = 0; i < p; ++i)
      for (const auto& J : subsets(p, p - a.n)) {
        if (std::count(J.begin(), J.end(), i)) continue;
        need(tilde_U(a, i, J), "U~[" + std::to_string(i + 1) + ";J]");
      }
  }
  o.detail = std::to_string(checked) + " operators";
  return o;
}

std::vector<Arrangement> annihilator_set() {
  std::vector<Arrangement> out;
  std::mt19937_64 rng(60);
  for (int k = 0; k < 5; ++k)
    for (auto [n, p] : {std::pair<std::size_t, std::size_t>{2, 3}, {2, 4}, {3, 4}, {3, 5}})
      out.push_back(random_generic_arrangement(n, p, rng));
  return out;
}

Outcome identities() {
  Outcome o;
  std::mt19937_64 rng(70);
  std::size_t checked = 0;
  auto eq = [&](const WeylOp& l, const WeylOp& r, const std::string& what) {
    ++checked;
    o.require(l == r, what);
  };
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = t < 5 ? 2 : 3, p = n + 1;
    auto a = random_generic_arrangement(n, p, rng);
    const WeylOp E = euler_field(n, p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        if (i == j) continue;
        eq(Ut(a, i, j), Uval(a, i, j, j) * Ut(a, j, i), "U~ symmetry " + idx({i, j}));
        eq(U(a, i, j), Uval(a, i, j, j) * U(a, j, i), "U symmetry " + idx({i, j}));
        o.require(Uval(a, i, j, j) * Uval(a, j, i, i) == 1, "U(l) product " + idx({i, j}));
        for (std::size_t k = 0; k < p; ++k) {
          if (k == i || k == j) continue;
          eq(L(a, k) * Ut(a, i, j) - L(a, j) * Ut(a, i, k), Uval(a, i, j, j) * (L(a, i) * Ut(a, j, k)),
             "l_k U~ij - l_j U~ik " + idx({i, j, k}));
          const WeylOp lhs = S(a, j) * Ut(a, i, k) - S(a, i) * Ut(a, j, k);
          eq(lhs,
             -(L(a, i) * U(a, i, k) * Ut(a, j, k)) + L(a, j) * U(a, j, k) * Ut(a, i, k) -
                 Uval(a, j, k, k) * ((S(a, k) + WeylOp::scalar(n, p, 1)) * Ut(a, i, j)),
             "s_j U~ik - s_i U~jk " + idx({i, j, k}));
          eq(lhs,
             -(L(a, i) * U(a, i, j) * Ut(a, j, k)) + L(a, k) * U(a, j, k) * Ut(a, i, j) -
                 Uval(a, j, k, k) * (S(a, k) * Ut(a, i, j)) - Ut(a, i, k),
             "s_j U~ik - s_i U~jk via U~ij " + idx({i, j, k}));
          auto A = [&](std::size_t u, std::size_t v) {
            return L(a, u) * L(a, v) * U(a, u, v) - Uval(a, u, v, v) * (L(a, u) * S(a, v));
          };
          const std::size_t m = k;
          eq(L(a, m) * S(a, j) * Ut(a, i, j) - L(a, j) * S(a, i) * Ut(a, j, m),
             -(A(i, j) * Ut(a, j, m)) + A(j, m) * Ut(a, i, j) - L(a, j) * Ut(a, i, m), "l_m s_j U~ij - l_j s_i U~jm " + idx({i, j, m}));
          for (std::size_t q = 0; q < p; ++q) {
            if (q == i || q == j || q == k) continue;
            eq(L(a, q) * S(a, k) * Ut(a, i, j) - L(a, j) * S(a, i) * Ut(a, k, q),
               -(A(i, j) * Ut(a, k, q)) + A(k, q) * Ut(a, i, j), "l_m s_k U~ij - l_j s_i U~km " + idx({i, j, k, q}));
          }
        }
      }
    for (std::size_t k = 0; k < p; ++k) {
      WeylOp sum_u(n, p), sum_e(n, p);
      MultiPoly sum_l(weyl_context(n, p));
      for (std::size_t i = 0; i < p; ++i) {
        if (i == k) continue;
        sum_u += Ut(a, i, k);
        sum_e += L(a, i) * U(a, i, k);
        sum_l += form_poly(a, i) * Uval(a, i, k, k);
      }
      eq(L(a, k) * tilde_E(a), sum_u, "l_k E~ " + idx({k}));
      eq(E, sum_e, "E decomposition " + idx({k}));
      ++checked;
      o.require(form_poly(a, k) == sum_l, "form relation " + idx({k}));
    }
    // U~_{1,k} and U~_{k,1} reduce to E~ and U~_{i,j}, 2 <= i < j.
    for (std::size_t k = 1; k < p; ++k)
      for (const auto& op : {Ut(a, 0, k), Ut(a, k, 0)}) {
        auto m = ann_membership(op, a);
        WeylOp back(n, p);
        for (std::size_t g = 0; g < m.cofactors.size(); ++g) back += m.cofactors[g] * m.generators[g].op;
        ++checked;
        o.require(m.member && back == op, "reduction cofactors for k=" + std::to_string(k + 1));
      }
  }
  if (o.ok) o.detail = std::to_string(checked) + " identities";
  return o;
}

Outcome groebner(const std::vector<Arrangement>& arrs) {
  Outcome o;
  for (const auto& a : arrs) {
    auto r = groebner_check(symbol_ideal(a));
    o.require(r.passed(), "n=" + std::to_string(a.n) + ": " + r.failure);
  }
  return o;
}

Outcome regularity() {
  Outcome o;
  for (std::size_t n : {2u, 3u}) {
    auto s = symbol_ideal(randoms(n, n + 1, 1, 90 + n)[0]);
    auto r = regularity_check(s, 100, 9);
    o.require(r.tested == 100 && r.failures == 0, "n=" + std::to_string(n) + ": " + std::to_string(r.failures) +
                                                      " failures of " + std::to_string(r.tested));
  }
  return o;
}

Outcome geometry(const std::vector<Arrangement>& arrs) {
  Outcome o;
  for (const auto& a : arrs) {
    const std::string tag = "n=" + std::to_string(a.n) + ": ";
    auto r = slopes_report(a);
    o.require(r.passed(), tag + r.failure);
    o.require(r.slopes.size() == a.n + 2, tag + std::to_string(r.slopes.size()) + " slopes");
    o.require(r.dichotomy_ok, tag + "dichotomy");
    auto c = conormal_check(a);
    o.require(c.passed(), tag + c.failure);
  }
  return o;
}

Outcome cross_oracle() {
  Outcome o;
  auto a = xy_sum();
  auto cert = build_witness(a, candidate_b(a));
  AnsatzStats st;
  auto sol = ansatz_solve(a, cert.b, cert.witness.order(), cert.witness.coefficient_degree(), &st);
  o.require(sol.has_value(), "no ansatz solution");
  if (sol) {
    BernsteinCertificate c{a, cert.b, *sol};
    c.provenance = BernsteinCertificate::Provenance::Ansatz;
    o.require(verify_certificate(c), "ansatz solution rejected");
  }
  o.detail = "order " + std::to_string(cert.witness.order()) + ", degree " +
             std::to_string(cert.witness.coefficient_degree()) + ", " + std::to_string(st.unknowns) + " unknowns";
  return o;
}

std::vector<Arrangement> generator_set() {
  auto arrs = randoms(2, 3, 5, 30);
  arrs.insert(arrs.begin(), xy_sum());
  return arrs;
}

std::vector<Arrangement> lbgw_set() { return {randoms(2, 3, 1, 80)[0], randoms(3, 4, 1, 81)[0]}; }
std::vector<Arrangement> geometry_set() { return {xy_sum(), randoms(3, 4, 1, 100)[0]}; }

Outcome invariance() {
  Outcome o;
  std::mt19937_64 rng(120);
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  auto rescale_all = [&](const std::vector<Arrangement>& arrs) {
    std::vector<Arrangement> out;
    for (const auto& a : arrs) {
      std::vector<Rational> f;
      for (std::size_t k = 0; k < a.p(); ++k) {
        int u;
        do u = num(rng); while (u == 0);
        Rational q(u, den(rng));
        q.canonicalize();
        f.push_back(q);
      }
      auto r = rescaled(a, f);
      o.require(candidate_b(r) == candidate_b(a), "candidate changed under rescaling");
      out.push_back(r);
    }
    return out;
  };
  auto gens = generator_set();
  gens.push_back(randoms(3, 4, 1, 31)[0]);
  o.require(generator_case(gens, 600, nullptr).ok == generator_case(rescale_all(gens), 600, nullptr).ok,
            "criterion 3 outcome changed");
  auto ann = annihilator_set();
  o.require(annihilators(ann).ok == annihilators(rescale_all(ann)).ok, "criterion 6 outcome changed");
  o.require(groebner(lbgw_set()).ok == groebner(rescale_all(lbgw_set())).ok, "criterion 8 outcome changed");
  o.require(geometry(geometry_set()).ok == geometry(rescale_all(geometry_set())).ok, "criterion 10 outcome changed");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit;
    std::function<Outcome()> body;
  };
  std::string c3_timing;
  const std::vector<Criterion> criteria{
      {1, "classic case n=1, p=1", 1, classic},
      {2, "p <= n: product of (s_i + 1)", 15,
       [] {
         Outcome o;
         std::mt19937_64 rng(20);
         for (auto [n, p] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {3, 3}}) {
           const auto t0 = std::chrono::steady_clock::now();
           auto r = few_forms(random_generic_arrangement(n, p, rng));
           const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
           o.require(r.ok, r.detail);
           o.require(dt < 5, "(n,p)=(" + std::to_string(n) + "," + std::to_string(p) + ") over 5 s");
         }
         return o;
       }},
      {3, "p = n+1 generator candidates verify", 5 * 60 + 600,
       [&] {
         Outcome o = generator_case(generator_set(), 60, &c3_timing);
         Outcome big = generator_case({randoms(3, 4, 1, 31)[0]}, 600, nullptr);
         o.require(big.ok, "n=3, p=4: " + big.detail);
         if (o.ok) o.detail = "6 arrangements with n=2 (" + c3_timing + "), n=3 with 8 factors";
         return o;
       }},
      {4, "p >= n+2: (x, y, x+y, x-y)", 900, many_forms},
      {5, "Euler product identities", 10, euler_products},
      {6, "annihilator suite, 20 arrangements", 60, [] { return annihilators(annihilator_set()); }},
      {7, "operator identity suite, 10 arrangements", 60, identities},
      {8, "Groebner basis of the symbol ideal, n = 2, 3", 120, [] { return groebner(lbgw_set()); }},
      {9, "regularity along l_2, 100 samples", 60, regularity},
      {10, "slopes, components and conormal strata", 120, [] { return geometry(geometry_set()); }},
      {11, "ansatz cross-check at the witness bounds", 600, cross_oracle},
      {12, "invariance under rescaling the forms", 1800, invariance},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && dt >= c.limit) {
      o.ok = false;
      o.detail = "time limit exceeded";
    }
    if (!o.ok) ++failed;
    char head[160];
    std::snprintf(head, sizeof head, "criterion %2d: %s  %-45s %8.2f s (limit %g s)", c.id, o.ok ? "PASS" : "FAIL",
                  c.name.c_str(), dt, c.limit);
    std::cout << head << (o.detail.empty() ? "" : "  " + o.detail) << std::endl;
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : "all criteria passed") << std::endl;
  return failed ? 1 : 0;
}
