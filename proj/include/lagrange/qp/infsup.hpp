#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "lagrange/linalg/eigen.hpp"
#include "lagrange/linalg/sparse.hpp"
#include "lagrange/linalg/vector.hpp"

namespace lagrange::qp {

using linalg::SparseOperator;
using linalg::Vector;

/// dual_form:   inf_q ||C^T q||_{H*} / ||q||_M
/// primal_form: inf over v A-orthogonal to Ker C of ||C v||_{M*} / ||v||_H
/// with ||v||_H^2 = v^T A v and ||q||_M^2 = q^T Mq q. Both equal the same
/// constant; computing them through different pencils is a consistency check.
enum class InfSupForm { dual_form, primal_form };

std::string_view to_string(InfSupForm form);
std::optional<InfSupForm> parse_infsup_form(std::string_view name);

struct InfSupEstimate {
  double beta = 0.0;         // sqrt of the smallest admissible eigenvalue
  Vector attaining_q;        // q^T Mq q = 1, sign fixed by its largest entry
  InfSupForm form = InfSupForm::dual_form;
  double eigenvalue = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Discrete inf-sup constant of the constraint operator C (M x N) between
/// the H-norm induced by A and the M-norm induced by Mq.
///
/// dual_form solves (C A^-1 C^T) q = lambda Mq q on the complement of
/// Ker C^T; primal_form solves (C^T Mq^-1 C) v = lambda A v on the
/// A-orthogonal complement of Ker C. A rank-deficient C (an orthogonal
/// projector, say) is handled by deflating those kernels, which restricts q
/// to range(C) and v to (Ker C)^perp.
InfSupEstimate estimate_infsup(const SparseOperator& c, const SparseOperator& a,
                               const SparseOperator& mq, InfSupForm form,
                               const linalg::EigenOptions& options = {});

/// Fixes the sign of v so that its entry of largest magnitude is positive.
void normalize_sign(Vector& v);

}  // namespace lagrange::qp
