#include "oml/covering.hpp"

#include <cmath>

#include "oml/error.hpp"
#include "oml/luxemburg.hpp"
#include "oml/text.hpp"

namespace oml {

CoverResult find_dyadic_majorant(const Cube& Q, const MuFunction& f, const YoungFunction& B, double alpha, double t) {
  const AtomicMeasure& mu = f.measure();
  if (Q.dim() != mu.dim()) throw DomainError("find_dyadic_majorant: dimension mismatch");
  if (mu_of(mu, Q) == 0.0) throw DegenerateInputError("find_dyadic_majorant: mu(Q) = 0 for Q = " + to_string(Q));

  const double lq_alpha = std::pow(Q.side(), alpha);
  const double start = lq_alpha * luxemburg_norm(f, B, Q);
  if (!(start > t))
    throw PreconditionError("find_dyadic_majorant: l(Q)^alpha ||f||_{B,Q} = " + format_sig12(start) +
                            " does not exceed t = " + format_sig12(t));

  const int k = dyadic_generation(Q.side());
  const auto candidates = dyadic_cubes_meeting(Q, k);
  size_t best = 0;
  double best_value = -1.0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    const double v = lq_alpha * luxemburg_norm(restrict_to(f, candidates[i]), B, Q);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }

  const Cube& P = candidates[best];
  CoverResult out{P, std::exp2(-(Q.dim() + mu.ahlfors_n())), 0.0};
  out.witness_value = std::pow(P.side(), alpha) * luxemburg_norm(f, B, P);

  if (!dilate(P, 3.0).contains(Q))
    throw Error("find_dyadic_majorant: Q = " + to_string(Q) + " not inside 3P for P = " + to_string(P));
  if (!(out.witness_value > out.beta * t))
    throw Error("find_dyadic_majorant: witness " + format_sig12(out.witness_value) + " <= beta t = " +
                format_sig12(out.beta * t));
  return out;
}

}  // namespace oml
