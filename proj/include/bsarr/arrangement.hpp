#pragma once

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsarr/weyl.hpp"

namespace bsarr {

struct NotGeneric : std::domain_error {
  using std::domain_error::domain_error;
};
struct WrongP : std::domain_error {
  using std::domain_error::domain_error;
};

using Vec = std::vector<Rational>;
using Matrix = std::vector<Vec>;

/// Central arrangement of p rational linear forms on Q^n. Forms are kept as
/// given, no rescaling.
struct Arrangement {
  std::size_t n = 0;
  std::vector<Vec> forms;

  Arrangement() = default;
  /// Throws std::invalid_argument on a zero form or a wrong length.
  Arrangement(std::size_t n, std::vector<Vec> forms);

  std::size_t p() const { return forms.size(); }
  friend bool operator==(const Arrangement&, const Arrangement&) = default;
};

struct GenericityCertificate {
  bool generic = false;
  bool pairwise_distinct = true;
  /// On failure: a subset (0-based) whose determinant vanishes, or a
  /// proportional pair.
  std::vector<std::size_t> witness;
  /// On success: every min(n,p)-subset with its determinant (or, for p < n,
  /// the rank certificate minor).
  std::vector<std::pair<std::vector<std::size_t>, Rational>> determinants;
};

/// Genericity: every min(n,p) forms are linearly independent and the forms
/// are pairwise non-proportional.
GenericityCertificate check_generic(const Arrangement& a);
void require_generic(const Arrangement& a);

/// U(l) for a constant field U = sum a_i d_i.
Rational field_apply(const Vec& field, const Vec& form);

/// The constant field with U(l_i) = 1 and U(l_k) = 0 for k in `others`
/// (|others| = n - 1). Throws NotGeneric when the system is singular.
Vec dual_field(const Arrangement& a, std::size_t i, const std::vector<std::size_t>& others);

/// U_{i,j} for p = n+1: others = all indices except i and j.
Vec dual_field_pair(const Arrangement& a, std::size_t i, std::size_t j);

/// l_k as a polynomial in weyl_context(n, p).
MultiPoly form_poly(const Arrangement& a, std::size_t k);
/// Product of l_k over k in `ks`.
MultiPoly forms_product(const Arrangement& a, const std::vector<std::size_t>& ks);
/// H = l_1 ... l_p.
MultiPoly arrangement_product(const Arrangement& a);

/// E - s_1 - ... - s_p.
WeylOp tilde_E(const Arrangement& a);
/// l_i l_J U_{i,J} - l_J s_i - l_i sum_j l_{J-j} U_{i,J}(l_j) s_j, with I the
/// complement of {i} and J; requires |J| = p - n.
WeylOp tilde_U(const Arrangement& a, std::size_t i, const std::vector<std::size_t>& J);
/// p = n+1 case: l_i l_j U_{i,j} - l_j s_i - U_{i,j}(l_j) l_i s_j.
WeylOp tilde_U_pair(const Arrangement& a, std::size_t i, std::size_t j);

struct AnnGenerator {
  std::string label;  // e.g. "E~", "U~[2,3]", "U~[1;J=4,5]" with 1-based indices
  WeylOp op;
};

/// p = n+1: E~ and U~_{i,j} for 2 <= i < j <= n+1. Other p >= n: E~ and
/// U~_{i,J} for every admissible partition. Throws NotGeneric, WrongP (p < n).
std::vector<AnnGenerator> ann_generators(const Arrangement& a);

/// Adapted coordinates y = M x. The rows of M are forms 1..min(n,p) completed
/// by unit vectors (first admissible ones) when p < n.
struct AdaptedFrame {
  Matrix m;
  Matrix m_inv;
  /// The same arrangement written in y: forms 1..min(n,p) are unit vectors.
  Arrangement in_y;
};

AdaptedFrame adapted_frame(const Arrangement& a);

/// Coordinate rescaling: form k multiplied by factors[k].
Arrangement rescaled(const Arrangement& a, const std::vector<Rational>& factors);

/// Forms with integer coefficients in [-range, range], resampled until the
/// arrangement is generic. Throws std::invalid_argument for n = 1, p > 1.
Arrangement random_generic_arrangement(std::size_t n, std::size_t p, std::mt19937_64& rng, int range = 3);

/// Subsets of {0..m-1} of size k in lex order.
std::vector<std::vector<std::size_t>> subsets(std::size_t m, std::size_t k);

}  // namespace bsarr
