#include "bsarr/arrangement.hpp"

#include <algorithm>
#include <numeric>

#include "bsarr/linsolve.hpp"

namespace bsarr {

namespace {

std::string label_index(std::size_t i) { return std::to_string(i + 1); }

Rational minor(const Arrangement& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix m;
  for (auto r : rows) {
    Vec row;
    for (auto c : cols) row.push_back(a.forms[r][c]);
    m.push_back(std::move(row));
  }
  return determinant(std::move(m));
}

bool proportional(const Vec& u, const Vec& v) {
  // u and v are nonzero; proportional iff all 2x2 minors vanish.
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      if (u[i] * v[j] - u[j] * v[i] != 0) return false;
  return true;
}

}  // namespace

Arrangement::Arrangement(std::size_t n_, std::vector<Vec> forms_) : n(n_), forms(std::move(forms_)) {
  if (n == 0) throw std::invalid_argument("arrangement dimension must be positive");
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (forms[k].size() != n)
      throw std::invalid_argument("form " + label_index(k) + " has " + std::to_string(forms[k].size()) +
                                  " coefficients, expected " + std::to_string(n));
    if (std::all_of(forms[k].begin(), forms[k].end(), [](const Rational& q) { return q == 0; }))
      throw std::invalid_argument("form " + label_index(k) + " is zero");
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t m, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > m) return out;
  std::vector<std::size_t> cur(k);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

GenericityCertificate check_generic(const Arrangement& a) {
  GenericityCertificate cert;
  const std::size_t n = a.n, p = a.p();
  if (p == 0) {
    cert.generic = true;
    return cert;
  }
  for (std::size_t i = 0; i < p && cert.pairwise_distinct; ++i)
    for (std::size_t j = i + 1; j < p; ++j)
      if (proportional(a.forms[i], a.forms[j])) {
        cert.pairwise_distinct = false;
        cert.witness = {i, j};
        break;
      }
  std::vector<std::size_t> all_cols(n);
  std::iota(all_cols.begin(), all_cols.end(), 0);
  if (p >= n) {
    for (const auto& rows : subsets(p, n)) {
      Rational d = minor(a, rows, all_cols);
      if (d == 0) {
        cert.generic = false;
        cert.witness = rows;
        cert.determinants.clear();
        return cert;
      }
      cert.determinants.emplace_back(rows, d);
    }
  } else {
    std::vector<std::size_t> rows(p);
    std::iota(rows.begin(), rows.end(), 0);
    bool found = false;
    for (const auto& cols : subsets(n, p)) {
      Rational d = minor(a, rows, cols);
      if (d != 0) {
        cert.determinants.emplace_back(cols, d);
        found = true;
        break;
      }
    }
    if (!found) {
      cert.generic = false;
      cert.witness = rows;
      return cert;
    }
  }
  cert.generic = cert.pairwise_distinct;
  if (!cert.generic) cert.determinants.clear();
  return cert;
}

void require_generic(const Arrangement& a) {
  auto cert = check_generic(a);
  if (!cert.generic) {
    std::string w;
    for (auto k : cert.witness) w += (w.empty() ? "" : ",") + label_index(k);
    throw NotGeneric("arrangement is not generic (witness {" + w + "})");
  }
}

Rational field_apply(const Vec& field, const Vec& form) {
  Rational r = 0;
  for (std::size_t i = 0; i < field.size(); ++i) r += field[i] * form.at(i);
  return r;
}

Vec dual_field(const Arrangement& a, std::size_t i, const std::vector<std::size_t>& others) {
  const std::size_t n = a.n;
  if (others.size() != n - 1) throw std::invalid_argument("dual_field: need n-1 other forms");
  if (std::find(others.begin(), others.end(), i) != others.end())
    throw std::invalid_argument("dual_field: i must not be among the other forms");
  Matrix m{a.forms.at(i)};
  Vec rhs{Rational(1)};
  for (auto k : others) {
    m.push_back(a.forms.at(k));
    rhs.push_back(0);
  }
  auto u = solve_square(m, rhs);
  if (!u) throw NotGeneric("dual_field: forms are linearly dependent");
  return *u;
}

Vec dual_field_pair(const Arrangement& a, std::size_t i, std::size_t j) {
  if (a.p() != a.n + 1) throw WrongP("U_{i,j} needs p = n+1");
  if (i == j) throw std::invalid_argument("U_{i,j} needs i != j");
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < a.p(); ++k)
    if (k != i && k != j) others.push_back(k);
  return dual_field(a, i, others);
}

MultiPoly form_poly(const Arrangement& a, std::size_t k) {
  auto ctx = weyl_context(a.n, a.p());
  MultiPoly r(ctx);
  for (std::size_t i = 0; i < a.n; ++i)
    if (a.forms.at(k)[i] != 0) r += MultiPoly::variable(ctx, i) * a.forms[k][i];
  return r;
}

MultiPoly forms_product(const Arrangement& a, const std::vector<std::size_t>& ks) {
  MultiPoly r = MultiPoly::constant(weyl_context(a.n, a.p()), 1);
  for (auto k : ks) r = r * form_poly(a, k);
  return r;
}

MultiPoly arrangement_product(const Arrangement& a) {
  std::vector<std::size_t> all(a.p());
  std::iota(all.begin(), all.end(), 0);
  return forms_product(a, all);
}

WeylOp tilde_E(const Arrangement& a) {
  WeylOp e = euler_field(a.n, a.p());
  for (std::size_t j = 0; j < a.p(); ++j) e -= WeylOp::s(a.n, a.p(), j);
  return e;
}

WeylOp tilde_U(const Arrangement& a, std::size_t i, const std::vector<std::size_t>& J) {
  const std::size_t n = a.n, p = a.p();
  if (p < n || J.size() != p - n) throw std::invalid_argument("tilde_U: |J| must be p - n");
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < p; ++k)
    if (k != i && std::find(J.begin(), J.end(), k) == J.end()) others.push_back(k);
  if (others.size() != n - 1) throw std::invalid_argument("tilde_U: i must not lie in J");
  Vec u = dual_field(a, i, others);
  auto ctx = weyl_context(n, p);
  MultiPoly lJ = forms_product(a, J);
  MultiPoly li = form_poly(a, i);
  WeylOp op = WeylOp::field(n, p, u).left_multiply(li * lJ);
  op -= WeylOp::multiplication(n, p, lJ * MultiPoly::variable(ctx, n + i));
  for (auto j : J) {
    std::vector<std::size_t> rest;
    for (auto k : J)
      if (k != j) rest.push_back(k);
    Rational c = field_apply(u, a.forms[j]);
    if (c == 0) continue;
    op -= WeylOp::multiplication(n, p, li * forms_product(a, rest) * MultiPoly::variable(ctx, n + j) * c);
  }
  return op;
}

WeylOp tilde_U_pair(const Arrangement& a, std::size_t i, std::size_t j) {
  if (a.p() != a.n + 1) throw WrongP("U~_{i,j} needs p = n+1");
  return tilde_U(a, i, {j});
}

std::vector<AnnGenerator> ann_generators(const Arrangement& a) {
  require_generic(a);
  const std::size_t n = a.n, p = a.p();
  if (p < n) throw WrongP("annihilator generators need p >= n");
  std::vector<AnnGenerator> out;
  out.push_back({"E~", tilde_E(a)});
  if (p == n + 1) {
    for (std::size_t i = 1; i < p; ++i)
      for (std::size_t j = i + 1; j < p; ++j)
        out.push_back({"U~[" + label_index(i) + "," + label_index(j) + "]", tilde_U_pair(a, i, j)});
    return out;
  }
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < p; ++k)
      if (k != i) rest.push_back(k);
    for (const auto& pick : subsets(rest.size(), p - n)) {
      std::vector<std::size_t> J;
      for (auto t : pick) J.push_back(rest[t]);
      std::string label = "U~[" + label_index(i) + ";J=";
      for (std::size_t t = 0; t < J.size(); ++t) label += (t ? "," : "") + label_index(J[t]);
      out.push_back({label + "]", tilde_U(a, i, J)});
    }
  }
  return out;
}

AdaptedFrame adapted_frame(const Arrangement& a) {
  require_generic(a);
  const std::size_t n = a.n, p = a.p();
  AdaptedFrame f;
  for (std::size_t k = 0; k < std::min(n, p); ++k) f.m.push_back(a.forms[k]);
  for (std::size_t e = 0; e < n && f.m.size() < n; ++e) {
    Vec unit(n, Rational(0));
    unit[e] = 1;
    Matrix trial = f.m;
    trial.push_back(unit);
    // Rank test on the partial basis: the trial rows are independent iff some
    // maximal minor is nonzero.
    bool independent = false;
    for (const auto& cols : subsets(n, trial.size())) {
      Matrix sq;
      for (const auto& row : trial) {
        Vec r;
        for (auto c : cols) r.push_back(row[c]);
        sq.push_back(std::move(r));
      }
      if (determinant(std::move(sq)) != 0) {
        independent = true;
        break;
      }
    }
    if (independent) f.m.push_back(std::move(unit));
  }
  auto inv = invert(f.m);
  if (!inv) throw NotGeneric("adapted_frame: first forms are dependent");
  f.m_inv = std::move(*inv);
  std::vector<Vec> forms_y;
  for (const auto& form : a.forms) {
    Vec row(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) row[j] += form[k] * f.m_inv[k][j];
    forms_y.push_back(std::move(row));
  }
  f.in_y = Arrangement(n, std::move(forms_y));
  return f;
}

Arrangement random_generic_arrangement(std::size_t n, std::size_t p, std::mt19937_64& rng, int range) {
  // On a line any two forms are proportional.
  if (n == 1 && p > 1) throw std::invalid_argument("random_generic_arrangement: no generic arrangement with n = 1, p > 1");
  std::uniform_int_distribution<int> coef(-range, range);
  while (true) {
    std::vector<Vec> forms;
    bool zero = false;
    for (std::size_t k = 0; k < p; ++k) {
      Vec f;
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        f.emplace_back(coef(rng));
        any = any || f.back() != 0;
      }
      zero = zero || !any;
      forms.push_back(std::move(f));
    }
    if (zero) continue;
    Arrangement a(n, std::move(forms));
    if (check_generic(a).generic) return a;
  }
}

Arrangement rescaled(const Arrangement& a, const std::vector<Rational>& factors) {
  std::vector<Vec> forms = a.forms;
  for (std::size_t k = 0; k < forms.size(); ++k) {
    if (factors.at(k) == 0) throw std::invalid_argument("rescaled: zero factor");
    for (auto& c : forms[k]) c *= factors[k];
  }
  return Arrangement(a.n, std::move(forms));
}

}  // namespace bsarr
