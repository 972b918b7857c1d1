#pragma once

#include <span>

#include "oml/cube.hpp"
#include "oml/measure.hpp"
#include "oml/young.hpp"

namespace oml {

inline constexpr double kLuxemburgTol = 1e-9;

// l(Q)^{-n} int_Q |f| d mu, n = ahlfors_n of f's measure.
double radial_average(const MuFunction& f, const Cube& Q);

// inf{lambda > 0 : l(Q)^{-n} int_Q B(|f|/lambda) d mu <= 1}.
//
// Bisection on the nonincreasing map G(lambda); the returned lambda always
// satisfies G(lambda) <= 1, so the result over-estimates the infimum by at
// most tol * lambda. Power families are solved in closed form. Zero when f
// vanishes on the atoms of Q.
double luxemburg_norm(const MuFunction& f, const YoungFunction& B, const Cube& Q, double tol = kLuxemburgTol);

// Same computation on a pre-gathered atom set: |f| values and masses of the
// atoms in the cube, and the normaliser l(Q)^n.
double luxemburg_norm(std::span<const double> abs_values, std::span<const double> masses, double normalizer,
                      const YoungFunction& B, double tol = kLuxemburgTol);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds(double slack = 1.0) const noexcept { return lhs <= rhs * slack; }
};

// lhs = l(Q)^{-n} int_Q |fg| d mu, rhs = 2 ||f||_{B,Q} ||g||_{B~,Q}.
InequalitySides holder_pair(const MuFunction& f, const MuFunction& g, const YoungFunction& B, const Cube& Q);
InequalitySides holder_pair(const MuFunction& f, const MuFunction& g, const YoungFunction& B,
                            const YoungFunction& B_conj, const Cube& Q);

// Grid constant of B^{-1}(t) C^{-1}(t) <= c A^{-1}(t) over grid points t >= t0.
struct InverseProductBound {
  double c = 0.0;
  double worst_t = 0.0;
};

InverseProductBound inverse_product_constant(const YoungFunction& A, const YoungFunction& B, const YoungFunction& C,
                                             double t0 = 1.0, const GeometricGrid& grid = {0x1p-30, 0x1p30, 241});

// lhs = ||fg||_{A,Q}, rhs = K ||f||_{B,Q} ||g||_{C,Q}.
//
// With B^{-1} C^{-1} <= c A^{-1} on [t0, inf) and mu(Q) <= l(Q)^n the
// inequality holds for every K >= (2 + t0) c. The inverse-product constant is
// measured on the grid first; a K below (2 + t0) c throws HypothesisError
// naming the worst t.
InequalitySides generalized_holder(const MuFunction& f, const MuFunction& g, const YoungFunction& A,
                                   const YoungFunction& B, const YoungFunction& C, const Cube& Q, double K,
                                   double t0 = 1.0);

// Hypothesis-free core used by the verification sweeps.
InequalitySides generalized_holder_sides(const MuFunction& f, const MuFunction& g, const YoungFunction& A,
                                         const YoungFunction& B, const YoungFunction& C, const Cube& Q, double K);

}  // namespace oml
