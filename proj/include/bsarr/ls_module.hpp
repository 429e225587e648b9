#pragma once

#include <memory>
#include <vector>

#include "bsarr/arrangement.hpp"

namespace bsarr {

/// Arrangement data shared by all elements of one module: the adapted
/// coordinates y = M x and the forms written in y.
struct LsFrame {
  Arrangement arrangement;
  AdaptedFrame adapted;
  /// l_k in y, living in weyl_context(n, p).
  std::vector<MultiPoly> l_y;
  /// Forms k whose y_m-derivative is nonzero, with that derivative.
  std::vector<std::vector<std::pair<std::size_t, Rational>>> depends;
  /// Number of forms that are coordinates (min(n, p)).
  std::size_t coordinate_forms = 0;
};

using FramePtr = std::shared_ptr<const LsFrame>;

/// Throws NotGeneric.
FramePtr make_frame(const Arrangement& a);

/// (numerator / prod l_k^{d_k}) * l^s. The numerator is kept in the adapted
/// coordinates, where dividing by a coordinate form is a monomial shift.
class LsElement {
 public:
  LsElement() = default;

  /// 1 * l^s.
  static LsElement unit(FramePtr frame);
  /// numerator given in x coordinates.
  static LsElement from_x(FramePtr frame, const MultiPoly& numerator, std::vector<unsigned> denom = {});
  /// numerator given in y coordinates.
  static LsElement from_y(FramePtr frame, MultiPoly numerator, std::vector<unsigned> denom = {});

  const FramePtr& frame() const { return frame_; }
  const MultiPoly& numerator_y() const { return num_; }
  /// Numerator rewritten in x.
  MultiPoly numerator_x() const;
  const std::vector<unsigned>& denom() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// Divides out every l_k with d_k > 0 that divides the numerator.
  LsElement canonical() const;

  /// d/dy_m applied to the element (numerator is not canonicalized).
  LsElement derivative_y(std::size_t m) const;
  /// Multiplication by a polynomial in (y, s).
  LsElement times(const MultiPoly& c_y) const;

  LsElement& operator+=(const LsElement& o);
  LsElement& operator-=(const LsElement& o);
  friend LsElement operator+(LsElement a, const LsElement& b) { return a += b; }
  friend LsElement operator-(LsElement a, const LsElement& b) { return a -= b; }
  /// Equality of module elements (difference is zero).
  friend bool operator==(const LsElement& a, const LsElement& b);

  /// Rewrites the element with denominator `target` (componentwise >= denom()).
  LsElement with_denominator(const std::vector<unsigned>& target) const;

 private:
  FramePtr frame_;
  MultiPoly num_;
  std::vector<unsigned> den_;
};

/// Action of an operator given in x coordinates.
LsElement apply_op(const WeylOp& p, const LsElement& e);
/// Action of an operator already written in the adapted coordinates.
LsElement apply_op_y(const WeylOp& p_y, const LsElement& e);

/// P(l^s) == 0.
bool annihilates(const WeylOp& p, const Arrangement& a);
bool annihilates(const WeylOp& p, const FramePtr& frame);

/// H * l^s with H = l_1 ... l_p, i.e. l^{s+1}.
LsElement shifted_unit(const FramePtr& frame);

}  // namespace bsarr
