#pragma once

#include <optional>
#include <span>

#include "tenrank/poly.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

struct UnsupportedDimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularEvaluationError : std::domain_error {
  using std::domain_error::domain_error;
};

/// A covariant evaluated at a tensor: a polynomial in the auxiliary
/// indeterminates, with the homogeneity degrees it carries in the tensor
/// entries and in the indeterminates.
struct CovariantValue {
  int axis = 0;
  PolyQ poly;
  int deg_p = 0;
  int deg_x = 0;
};

/// P *_i x as a matrix of linear polynomials in n auxiliary variables.
PolyMatrix<Rational> slice_pencil(const Tensor3<Rational>& p, int axis);

/// h_i(P; x) = det(P *_i x), the slice-pencil determinant. The zero
/// polynomial exactly when P is i-slice-singular.
CovariantValue h_covariant(const Tensor3<Rational>& p, int axis);

/// f_i(P; x) = (-1)^(n-1) det(Hessian_x h_i(P; x)). Either the zero
/// polynomial or homogeneous of x-degree n(n-2).
CovariantValue f_covariant(const Tensor3<Rational>& p, int axis);

/// Pointwise evaluations for the float backend.
Complex h_eval(const Tensor3<Complex>& p, int axis, std::span<const Complex> x0);
Complex f_eval(const Tensor3<Complex>& p, int axis, std::span<const Complex> x0);

/// Exact pointwise f; used for dimensions where expanding f symbolically is
/// not worthwhile. Differentiates the exact slice-pencil determinant, never
/// finite differences.
Rational f_eval(const Tensor3<Rational>& p, int axis, std::span<const Rational> x0);
Rational h_eval(const Tensor3<Rational>& p, int axis, std::span<const Rational> x0);

/// r_i = f_i / ((n-1) h_i^(n-2)) evaluated at x0. Throws
/// SingularEvaluationError when h_i(P; x0) = 0; callers retry at another
/// point.
Rational r_eval(const Tensor3<Rational>& p, int axis, std::span<const Rational> x0);
Complex r_eval(const Tensor3<Complex>& p, int axis, std::span<const Complex> x0);

/// The 3-tangle: degree-6 invariant of weight (2,2,2) on 3x3x3 tensors,
/// normalized by its defining epsilon-contraction sum (value 6 at the unit
/// diagonal tensor). Requires n = 3.
Rational tangle3(const Tensor3<Rational>& p);
Complex tangle3(const Tensor3<Complex>& p);

/// The 4-tangle: degree-8 invariant of weight (2,2,2) on 4x4x4 tensors
/// (value 24 at the unit diagonal tensor). Requires n = 4. The enumeration
/// over six permutation factors may run multi-threaded; results are bitwise
/// independent of the partitioning.
Rational tangle4(const Tensor3<Rational>& p);
Complex tangle4(const Tensor3<Complex>& p);

/// G_i = h_i^(n-2) * tangle_n(P) for n in {3, 4}; transforms like f_i.
CovariantValue tangle_covariant(const Tensor3<Rational>& p, int axis);

/// Degree threshold up to which f is expanded symbolically; beyond it only
/// pointwise evaluation is offered.
inline constexpr int kMaxSymbolicFDim = 5;

}  // namespace tenrank
