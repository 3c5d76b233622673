#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tenrank/invariants.hpp"
#include "tenrank/tensor.hpp"

namespace tenrank {

enum class Verdict { InOrbit, Boundary, Outside, Indeterminate };

enum class TriState { Pass, Fail, Indeterminate };

std::string to_string(Verdict v);
std::string to_string(TriState t);

/// Maps a verdict to the documented process exit code:
/// 0 in orbit, 2 boundary, 3 outside the relaxation, 4 indeterminate.
int exit_code(Verdict v);

struct MembershipOptions {
  double commutation_tol = 1e-9;   // residual threshold, pass below
  double f_tol = 1e-9;             // nonzero threshold for sampled f values
  double h_tol = 1e-9;             // nonzero threshold for sampled h values
  double band = 10.0;              // [tol/band, tol*band] is indeterminate
  double slice_combo_tol = 1e-9;   // invertibility conditioning for slice combos
  double triangular_tol = 1e-8;    // accepted off-triangular residual
  double diagonal_tol = 1e-7;      // accepted off-diagonal residual
  double eigen_gap = 1e-8;         // relative eigenvalue separation
  double z_cond_nonzero = 1e-8;    // slice-diagonal conditioning: in-orbit above
  double z_cond_zero = 1e-12;      // ... identically-zero f below
  int v_samples = 5;
  int x_samples = 5;
  std::uint64_t seed = 1729;
};

/// Witness of a non-vanishing commutation entry: slice pair (j, k), matrix
/// entry (row, col), 1-based, and where it was seen.
struct CommutationWitness {
  int slice_j = 0, slice_k = 0;
  int row = 0, col = 0;
  std::string location;  // monomial in v (exact) or sample index (float)
  std::string value;     // exact coefficient or float magnitude
};

struct CommutationReport {
  int axis = 0;
  bool exact = false;
  TriState status = TriState::Indeterminate;
  /// Exact backend: true when every residual polynomial is identically zero.
  bool identically_zero = false;
  /// Float backend: max entry magnitude normalized by ||P||^(n+1).
  double max_residual = 0.0;
  std::optional<CommutationWitness> witness;
};

/// All the group relations of one tensor pair check, per axis.
CommutationReport commutation_residuals(const Tensor3<Rational>& p, int axis);
CommutationReport commutation_residuals(const Tensor3<Complex>& p, int axis,
                                        const MembershipOptions& opts = {});

bool slice_nonsingular(const Tensor3<Rational>& p, int axis);
bool slice_nonsingular(const Tensor3<Complex>& p, int axis,
                       const MembershipOptions& opts = {});

/// Orbit representative with upper-triangular i-slices and first slice the
/// identity. Z's columns are the slice diagonals.
template <typename S>
struct SemiCanonical {
  Tensor3<S> tensor;
  GroupElement<S> group;
  Mat<S> diagonals;  // Z
  double residual = 0.0;
  std::vector<std::string> notes;
};

struct SliceSingularError : std::domain_error {
  using std::domain_error::domain_error;
};

struct TriangularizationError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Exact backend raises this when it cannot stay exact (irrational
/// eigenvalues); callers degrade to the float path with a warning.
struct ExactnessLostError : std::domain_error {
  using std::domain_error::domain_error;
};

SemiCanonical<Complex> semi_canonical(const Tensor3<Complex>& p, int axis,
                                      const MembershipOptions& opts = {});
SemiCanonical<Rational> semi_canonical(const Tensor3<Rational>& p, int axis,
                                       const MembershipOptions& opts = {});

/// Explicit orbit decomposition P = D(g1, g2, g3). Rows of g1 and g2 are
/// normalized to leading entry 1; rank-1 components are ordered by the
/// lexicographic order of the g3 rows.
struct Decomposition {
  Mat<Complex> g1, g2, g3;
  std::string normalization = "leading-one-rows";
  double residual = 0.0;
  /// Present when the whole computation stayed in exact arithmetic; then the
  /// reconstruction is exact and residual is literally zero.
  std::optional<std::array<Mat<Rational>, 3>> exact_factors;
  std::vector<std::string> notes;

  Tensor3<Complex> reconstruct() const;
};

struct MembershipReport {
  Verdict verdict = Verdict::Indeterminate;
  std::string detail;
  bool exact_backend = false;
  int n = 0;
  std::vector<CommutationReport> commutation;   // per axis 1..3
  std::vector<TriState> f_nonzero;              // per axis
  std::vector<bool> slice_nonsingular_axis;     // per axis
  bool cross_axis_consistent = true;
  std::optional<Decomposition> decomposition;
  std::vector<std::string> notes;
};

struct NotInOrbitError : std::domain_error {
  explicit NotInOrbitError(MembershipReport r)
      : std::domain_error("tensor is not in the dense orbit: " + to_string(r.verdict)),
        report(std::move(r)) {}
  MembershipReport report;
};

struct IndeterminateError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Orbit membership decision. Exact overload proves its answers for n <= 5;
/// the float overload reports indeterminate inside the tolerance bands.
MembershipReport classify(const Tensor3<Rational>& p, const MembershipOptions& opts = {});
MembershipReport classify(const Tensor3<Complex>& p, const MembershipOptions& opts = {});

/// Full decomposition; requires classify(P) = in-orbit, else throws
/// NotInOrbitError carrying the report.
Decomposition decompose(const Tensor3<Rational>& p, const MembershipOptions& opts = {});
Decomposition decompose(const Tensor3<Complex>& p, const MembershipOptions& opts = {});

}  // namespace tenrank
