#include "bsarr/ls_module.hpp"

#include <functional>
#include <map>

namespace bsarr {

namespace {

void check_frame(const FramePtr& a, const FramePtr& b) {
  if (a != b && !(a->arrangement == b->arrangement))
    throw ContextMismatch("module elements belong to different arrangements");
}

/// Images of x_i (or y_i) under a linear map given by a matrix: var i -> sum_k m[i][k] var k.
std::vector<MultiPoly> linear_images(const Matrix& m, std::size_t n, std::size_t p) {
  auto ctx = weyl_context(n, p);
  std::vector<MultiPoly> images;
  for (std::size_t i = 0; i < n; ++i) {
    MultiPoly img(ctx);
    for (std::size_t k = 0; k < n; ++k)
      if (m[i][k] != 0) img += MultiPoly::variable(ctx, k) * m[i][k];
    images.push_back(std::move(img));
  }
  for (std::size_t j = 0; j < p; ++j) images.push_back(MultiPoly::variable(ctx, n + j));
  return images;
}

}  // namespace

FramePtr make_frame(const Arrangement& a) {
  auto f = std::make_shared<LsFrame>();
  f->arrangement = a;
  f->adapted = adapted_frame(a);
  const std::size_t n = a.n, p = a.p();
  f->coordinate_forms = std::min(n, p);
  for (std::size_t k = 0; k < p; ++k) f->l_y.push_back(form_poly(f->adapted.in_y, k));
  f->depends.resize(n);
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < p; ++k)
      if (f->adapted.in_y.forms[k][m] != 0) f->depends[m].emplace_back(k, f->adapted.in_y.forms[k][m]);
  return f;
}

LsElement LsElement::unit(FramePtr frame) {
  auto ctx = weyl_context(frame->arrangement.n, frame->arrangement.p());
  return from_y(std::move(frame), MultiPoly::constant(ctx, 1));
}

LsElement LsElement::from_y(FramePtr frame, MultiPoly numerator, std::vector<unsigned> denom) {
  LsElement e;
  const std::size_t p = frame->arrangement.p();
  if (denom.empty()) denom.assign(p, 0);
  if (denom.size() != p) throw DimensionMismatch("denominator length must be p");
  auto ctx = weyl_context(frame->arrangement.n, p);
  if (numerator.context() && !(*numerator.context() == *ctx))
    throw ContextMismatch("numerator must live in weyl_context(n, p)");
  if (!numerator.context()) numerator = MultiPoly(ctx);
  e.frame_ = std::move(frame);
  e.num_ = std::move(numerator);
  e.den_ = std::move(denom);
  return e;
}

LsElement LsElement::from_x(FramePtr frame, const MultiPoly& numerator, std::vector<unsigned> denom) {
  const std::size_t n = frame->arrangement.n, p = frame->arrangement.p();
  auto images = linear_images(frame->adapted.m_inv, n, p);
  MultiPoly y = numerator.is_zero() ? MultiPoly(weyl_context(n, p))
                                    : numerator.substitute(images, weyl_context(n, p));
  return from_y(std::move(frame), std::move(y), std::move(denom));
}

MultiPoly LsElement::numerator_x() const {
  const std::size_t n = frame_->arrangement.n, p = frame_->arrangement.p();
  if (num_.is_zero()) return num_;
  return num_.substitute(linear_images(frame_->adapted.m, n, p), weyl_context(n, p));
}

LsElement LsElement::canonical() const {
  LsElement r = *this;
  if (r.num_.is_zero()) {
    std::fill(r.den_.begin(), r.den_.end(), 0u);
    return r;
  }
  for (std::size_t k = 0; k < frame_->coordinate_forms; ++k) {
    if (r.den_[k] == 0) continue;
    unsigned low = r.den_[k];
    for (const auto& t : r.num_.terms()) low = std::min<unsigned>(low, t.mono[k]);
    if (low == 0) continue;
    Monomial shift = Monomial::unit(k, low);
    std::vector<MultiPoly::Term> terms;
    terms.reserve(r.num_.size());
    for (const auto& t : r.num_.terms()) terms.push_back({t.mono / shift, t.coef});
    r.num_ = MultiPoly::from_terms(r.num_.context(), std::move(terms));
    r.den_[k] -= low;
  }
  for (std::size_t k = frame_->coordinate_forms; k < r.den_.size(); ++k) {
    while (r.den_[k] > 0) {
      auto q = divide_exact(r.num_, frame_->l_y[k]);
      if (!q) break;
      r.num_ = std::move(*q);
      --r.den_[k];
    }
  }
  return r;
}

LsElement LsElement::with_denominator(const std::vector<unsigned>& target) const {
  LsElement r = *this;
  for (std::size_t k = 0; k < den_.size(); ++k) {
    if (target[k] < den_[k]) throw std::invalid_argument("with_denominator: target below current denominator");
    unsigned extra = target[k] - den_[k];
    if (extra == 0) continue;
    if (k < frame_->coordinate_forms)
      r.num_ = r.num_.mul_term(Monomial::unit(k, extra), 1);
    else
      r.num_ = r.num_ * frame_->l_y[k].pow(extra);
    r.den_[k] = target[k];
  }
  return r;
}

LsElement LsElement::derivative_y(std::size_t m) const {
  const std::size_t n = frame_->arrangement.n;
  const auto& dep = frame_->depends.at(m);
  auto ctx = num_.context();
  LsElement r = *this;
  if (num_.is_zero()) return r;
  // N' = dN * prod_K l_k + sum_k (s_k - d_k) c_k N prod_{K - k} l
  MultiPoly dn = num_.derivative(m);
  MultiPoly total = dn;
  for (const auto& [k, c] : dep) total = total * frame_->l_y[k];
  for (std::size_t t = 0; t < dep.size(); ++t) {
    auto [k, c] = dep[t];
    MultiPoly factor = (MultiPoly::variable(ctx, n + k) - MultiPoly::constant(ctx, Rational(den_[k]))) * c;
    MultiPoly term = num_ * factor;
    for (std::size_t u = 0; u < dep.size(); ++u)
      if (u != t) term = term * frame_->l_y[dep[u].first];
    total += term;
  }
  r.num_ = std::move(total);
  for (const auto& [k, c] : dep) ++r.den_[k];
  return r;
}

LsElement LsElement::times(const MultiPoly& c_y) const {
  LsElement r = *this;
  r.num_ = num_ * c_y;
  return r;
}

LsElement& LsElement::operator+=(const LsElement& o) {
  if (!frame_) return *this = o;
  if (!o.frame_) return *this;
  check_frame(frame_, o.frame_);
  std::vector<unsigned> target = den_;
  for (std::size_t k = 0; k < target.size(); ++k) target[k] = std::max(target[k], o.den_[k]);
  LsElement a = with_denominator(target);
  a.num_ += o.with_denominator(target).num_;
  return *this = a;
}

LsElement& LsElement::operator-=(const LsElement& o) {
  if (!o.frame_) return *this;
  LsElement neg = o;
  neg.num_ = -neg.num_;
  return *this += neg;
}

bool operator==(const LsElement& a, const LsElement& b) { return (a - b).is_zero(); }

LsElement apply_op_y(const WeylOp& p_y, const LsElement& e) {
  const auto& frame = e.frame();
  const std::size_t n = frame->arrangement.n;
  if (p_y.n() != n || p_y.p() != frame->arrangement.p())
    throw DimensionMismatch("apply_op: operator and element have different (n, p)");
  std::map<Monomial, LsElement> memo;
  memo.emplace(Monomial{}, e.canonical());
  std::function<const LsElement&(const Monomial&)> deriv = [&](const Monomial& g) -> const LsElement& {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::size_t m = 0;
    while (g[m] == 0) ++m;
    Monomial smaller = g / Monomial::unit(m);
    LsElement d = deriv(smaller).derivative_y(m).canonical();
    return memo.emplace(g, std::move(d)).first->second;
  };
  std::vector<unsigned> target(frame->arrangement.p(), 0);
  for (const auto& [g, c] : p_y.terms()) {
    const auto& d = deriv(g);
    if (d.is_zero()) continue;
    for (std::size_t k = 0; k < target.size(); ++k) target[k] = std::max(target[k], d.denom()[k]);
  }
  MultiPoly total(weyl_context(n, frame->arrangement.p()));
  for (const auto& [g, c] : p_y.terms()) {
    const auto& d = deriv(g);
    if (d.is_zero()) continue;
    total += c * d.with_denominator(target).numerator_y();
  }
  return LsElement::from_y(frame, std::move(total), target).canonical();
}

LsElement apply_op(const WeylOp& p, const LsElement& e) {
  return apply_op_y(p.change_coordinates(e.frame()->adapted.m), e);
}

bool annihilates(const WeylOp& p, const FramePtr& frame) { return apply_op(p, LsElement::unit(frame)).is_zero(); }

bool annihilates(const WeylOp& p, const Arrangement& a) { return annihilates(p, make_frame(a)); }

LsElement shifted_unit(const FramePtr& frame) {
  auto ctx = weyl_context(frame->arrangement.n, frame->arrangement.p());
  MultiPoly h = MultiPoly::constant(ctx, 1);
  for (const auto& l : frame->l_y) h = h * l;
  return LsElement::from_y(frame, std::move(h));
}

}  // namespace bsarr
