#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bsarr/ls_module.hpp"

namespace bsarr {

struct ConstructionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// (s_index + 1) or (s_1 + ... + s_p + c), raised to `multiplicity`.
struct BFactor {
  enum class Kind { SPlusOne, SigmaPlus };
  Kind kind = Kind::SPlusOne;
  std::size_t index = 0;  // 0-based, SPlusOne only
  long c = 0;             // SigmaPlus only
  unsigned multiplicity = 1;
  friend bool operator==(const BFactor&, const BFactor&) = default;
};

struct BFactored {
  std::size_t n = 0;
  std::size_t p = 0;
  std::vector<BFactor> factors;
  /// p <= n+1: the candidate generates the Bernstein-Sato ideal; for
  /// p >= n+2 it is only claimed to be a member.
  bool generator = false;

  /// Product of the factors in weyl_context(n, p).
  MultiPoly expand() const;
  std::size_t factor_count() const;
  /// e.g. "(s1 + 1)(s2 + 1)(s1 + s2 + 2)^2".
  std::string to_string() const;
  friend bool operator==(const BFactored&, const BFactored&) = default;
};

/// Throws NotGeneric.
BFactored candidate_b(const Arrangement& a);

/// Number of sigma factors in the candidate: 0 for p <= n, n+1 for p = n+1,
/// 2(p-n)+n-1 for p >= n+2.
std::size_t sigma_block_length(std::size_t n, std::size_t p);

/// One summand of an exchange identity.
struct ExchangeTerm {
  std::size_t j = 0;
  WeylOp op;
  std::vector<unsigned> exponents;
};

/// Exchange identity (s_i + 1) l^a l^s = sum_t op_t (l^{exponents_t} l^s),
/// exponents_t = a + e_i - e_{J_t}, with U the constant field U(l_i) = 1 and
/// U(l_k) = 0 outside {i} and J. Requires a_i = 0, a_j >= 1 on J and
/// |J| = p - n. Operators are written in the coordinates of `arr`.
std::vector<ExchangeTerm> exchange_terms(const Arrangement& arr, const std::vector<unsigned>& a, std::size_t i,
                                         const std::vector<std::size_t>& J);

struct ExchangeResult {
  WeylOp op;
  std::vector<unsigned> exponents;
  bool trivial = false;
};

/// p = n+1 exchange: with target m l_j, returns Q with
/// (s_i + 1) m l_j l^s = Q (m l_i l^s). When m l_j is already divisible by
/// every form the identity operator and the same exponents come back.
/// The identity is checked with apply_op before returning.
ExchangeResult exchange_step(const Arrangement& a, std::size_t i, std::size_t j, const std::vector<unsigned>& m);

/// Checks an exchange identity exactly in the module. With `adapted` the
/// operators are read in the frame's adapted coordinates.
bool check_exchange(const FramePtr& frame, const std::vector<unsigned>& a, std::size_t i,
                    const std::vector<ExchangeTerm>& terms, bool adapted = false);

struct BernsteinCertificate {
  enum class Status { Unverified, Verified };
  enum class Provenance { ClosedForm, Exchange, Recursion, Ansatz };

  Arrangement arrangement;
  BFactored b;
  WeylOp witness;
  Status status = Status::Unverified;
  Provenance provenance = Provenance::ClosedForm;
  /// Exchange identities used and checked during construction.
  std::size_t exchange_steps = 0;
  /// Coefficient rewrites l_k = sum c_b l_b used when squares run out.
  std::size_t rebalance_steps = 0;
};

std::string to_string(BernsteinCertificate::Provenance p);
std::string to_string(BernsteinCertificate::Status s);

struct WitnessOptions {
  /// Check every exchange identity with apply_op as it is produced.
  bool check_steps = true;
  /// Run verify_certificate on the assembled witness.
  bool verify = true;
};

/// Throws NotGeneric, ConstructionFailed, std::invalid_argument (b is not the
/// candidate of this arrangement).
BernsteinCertificate build_witness(const Arrangement& a, const BFactored& b, const WitnessOptions& opt = {});

/// apply_op(witness, l^{s+1}) - b l^s == 0; updates status.
bool verify_certificate(BernsteinCertificate& c);

struct AnsatzStats {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
};

/// Solves P(l^{s+1}) = b l^s for P with derivation order <= order_bound and
/// coefficient degree <= degree_bound. nullopt means no solution at these
/// bounds.
std::optional<WeylOp> ansatz_solve(const Arrangement& a, const BFactored& b, unsigned order_bound,
                                   unsigned degree_bound, AnsatzStats* stats = nullptr);

}  // namespace bsarr
