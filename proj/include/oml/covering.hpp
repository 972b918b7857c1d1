#pragma once

#include "oml/cube.hpp"
#include "oml/measure.hpp"
#include "oml/young.hpp"

namespace oml {

struct CoverResult {
  Cube P;                      // dyadic, Q subset of 3P
  double beta = 0.0;           // 2^{-(d+n)}
  double witness_value = 0.0;  // l(P)^alpha ||f||_{B,P}
};

// Dyadic majorant of a cube on which the fractional average exceeds t.
//
// Requires l(Q)^alpha ||f||_{B,Q} > t (PreconditionError otherwise) and
// mu(Q) > 0 (DegenerateInputError). With 2^{-(k+1)} < l(Q) <= 2^{-k}, P is
// the first of the dyadic cubes J of side 2^{-k} meeting Q that maximizes
// l(Q)^alpha ||chi_J f||_{B,Q}. Then Q is inside 3P and
// l(P)^alpha ||f||_{B,P} > 2^{-(d+n)} t.
CoverResult find_dyadic_majorant(const Cube& Q, const MuFunction& f, const YoungFunction& B, double alpha, double t);

}  // namespace oml
