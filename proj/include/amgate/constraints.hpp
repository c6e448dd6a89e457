#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "amgate/linalg.hpp"
#include "amgate/pulse.hpp"

namespace amgate {

/// Linear conditions on the Fourier coefficients that make F and G vanish to high order at T.
///
/// a-rows (odd i = 1, 3, ..., 2l-1) act on columns (a0, a2, ..., aN):
///   delta_{1i}/2 * a0 + sum_n n^(i-1) a_n = 0.
/// With include_b, b-rows (even i = 2, ..., 2l-2) act on a separate block (b2, ..., bN).
/// The n = 1 column is absent because closure already forces a1 = b1 = 0.
struct ConstraintSystem {
  int lc_count = 0;
  int order = 0;
  bool include_b = false;
  Matrix matrix;
  std::vector<std::string> column_names;

  int a_columns() const { return order; }
};

/// Throws PreconditionError("over-constrained system") when N < l + 1.
ConstraintSystem build_constraint_matrix(int lc_count, int order, bool include_b = false);

/// Orthonormal basis (as columns) of ker C, from a Householder QR of C^T.
/// Throws NumericalError naming the first row that depends on earlier rows.
Matrix nullspace_basis(const Matrix& c);
inline Matrix nullspace_basis(const ConstraintSystem& system) { return nullspace_basis(system.matrix); }

struct OrderTerm {
  std::string name;  // e.g. "F^(3)(T)"
  double residual;   // |F(T)| xi0 for i = 0, |F^(i)(T)| / xi0^(i-1) otherwise
};

struct OrderReport {
  int k = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string worst;
  std::vector<OrderTerm> terms;
};

/// Checks F^(i)(T) = G^(i)(T) = 0 for i = 0..k with tolerance 1e-9 * eta.
/// Throws PreconditionError for pulses with a1 or b1 nonzero.
OrderReport verify_order(const FourierPulse& pulse, const PhysicalParams& params, int k);

struct RedundancyReport {
  bool precondition_met = false;
  double constraint_residual = 0.0;  // max of the two imposed conditions, relative to coefficient size
  double g4 = 0.0;                   // G^(4)(T)
  double tolerance = 0.0;            // 1e-10 * eta * xi0^3
  bool passed = false;
  std::string message;
};

/// Confirms that G^(4)(T) vanishes once sum a_n = -a0/2 and sum a_n n^2 = 0 hold.
RedundancyReport verify_redundancy(const FourierPulse& pulse, const PhysicalParams& params);

/// Row-major CSV with a header naming the columns (a0,a2,...,b2,...).
void write_constraint_csv(std::ostream& out, const ConstraintSystem& system);

}  // namespace amgate
