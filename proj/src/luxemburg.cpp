#include "oml/luxemburg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "oml/error.hpp"
#include "oml/text.hpp"

namespace oml {

namespace {

struct Gathered {
  std::vector<double> values;
  std::vector<double> masses;
};

Gathered gather(const MuFunction& f, const Cube& Q) {
  Gathered g;
  const auto& m = f.measure().masses();
  for (auto i : f.measure().atoms_in(Q)) {
    const double v = std::abs(f[i]);
    if (!std::isfinite(v)) throw DomainError("luxemburg_norm: non-finite function value");
    if (v == 0.0) continue;
    g.values.push_back(v);
    g.masses.push_back(m[i]);
  }
  return g;
}

}  // namespace

double radial_average(const MuFunction& f, const Cube& Q) {
  const auto& m = f.measure().masses();
  double sum = 0.0;
  for (auto i : f.measure().atoms_in(Q)) sum += std::abs(f[i]) * m[i];
  return sum / std::pow(Q.side(), f.measure().ahlfors_n());
}

double luxemburg_norm(std::span<const double> abs_values, std::span<const double> masses, double normalizer,
                      const YoungFunction& B, double tol) {
  if (!(tol > 0.0)) throw DomainError("luxemburg_norm: tol must be positive");
  if (abs_values.size() != masses.size()) throw DomainError("luxemburg_norm: size mismatch");
  double integral = 0.0;
  double mass = 0.0;
  double vmax = 0.0;
  for (size_t i = 0; i < abs_values.size(); ++i) {
    const double v = abs_values[i];
    if (!std::isfinite(v)) throw DomainError("luxemburg_norm: non-finite function value");
    if (v == 0.0) continue;
    integral += v * masses[i];
    mass += masses[i];
    vmax = std::max(vmax, v);
  }
  if (mass == 0.0) return 0.0;

  if (const auto* pw = std::get_if<PowerFamily>(&B.family())) {
    if (pw->p == 1.0) return pw->coef * integral / normalizer;
    double s = 0.0;
    for (size_t i = 0; i < abs_values.size(); ++i)
      if (abs_values[i] != 0.0) s += masses[i] * std::pow(abs_values[i], pw->p);
    return std::pow(pw->coef * s / normalizer, 1.0 / pw->p);
  }

  auto G = [&](double lambda) {
    double s = 0.0;
    for (size_t i = 0; i < abs_values.size(); ++i)
      if (abs_values[i] != 0.0) s += masses[i] * B(abs_values[i] / lambda);
    return s / normalizer;
  };

  const double lambda0 = integral / normalizer + vmax * mass / normalizer;
  double lo = lambda0;
  double hi = lambda0;
  double g_lo = G(lambda0);
  double g_hi = g_lo;
  int guard = 0;
  if (g_hi > 1.0) {
    while (g_hi > 1.0) {
      lo = hi;
      g_lo = g_hi;
      hi *= 2.0;
      g_hi = G(hi);
      if (++guard > 2100) throw DomainError("luxemburg_norm: no upper bracket (B does not vanish at 0?)");
    }
  } else {
    while (g_lo < 1.0) {
      hi = lo;
      g_hi = g_lo;
      lo *= 0.5;
      g_lo = G(lo);
      if (++guard > 2100) throw DomainError("luxemburg_norm: no lower bracket (B bounded?)");
    }
  }

  while (hi - lo > tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = G(mid);
    if (g_mid > g_lo * (1.0 + 1e-12) + 1e-300 || g_mid < g_hi * (1.0 - 1e-12) - 1e-300)
      throw DomainError("luxemburg_norm: G(lambda) is not nonincreasing near lambda = " + format_real(mid) +
                        "; " + B.describe() + " is not a valid Young function");
    if (g_mid > 1.0) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
      g_hi = g_mid;
    }
  }
  return hi;
}

double luxemburg_norm(const MuFunction& f, const YoungFunction& B, const Cube& Q, double tol) {
  auto g = gather(f, Q);
  return luxemburg_norm(g.values, g.masses, std::pow(Q.side(), f.measure().ahlfors_n()), B, tol);
}

InequalitySides holder_pair(const MuFunction& f, const MuFunction& g, const YoungFunction& B,
                            const YoungFunction& B_conj, const Cube& Q) {
  InequalitySides out;
  out.lhs = radial_average(abs(f) * abs(g), Q);
  if (out.lhs == 0.0) {
    const double nf = luxemburg_norm(f, B, Q);
    out.rhs = nf == 0.0 ? 0.0 : 2.0 * nf * luxemburg_norm(g, B_conj, Q);
    return out;
  }
  out.rhs = 2.0 * luxemburg_norm(f, B, Q) * luxemburg_norm(g, B_conj, Q);
  return out;
}

InequalitySides holder_pair(const MuFunction& f, const MuFunction& g, const YoungFunction& B, const Cube& Q) {
  return holder_pair(f, g, B, complementary(B), Q);
}

InverseProductBound inverse_product_constant(const YoungFunction& A, const YoungFunction& B, const YoungFunction& C,
                                             double t0, const GeometricGrid& grid) {
  InverseProductBound out;
  for (double t : grid.points()) {
    if (t < t0) continue;
    const double r = inverse(B, t) * inverse(C, t) / inverse(A, t);
    if (std::isfinite(r) && r > out.c) {
      out.c = r;
      out.worst_t = t;
    }
  }
  return out;
}

InequalitySides generalized_holder_sides(const MuFunction& f, const MuFunction& g, const YoungFunction& A,
                                         const YoungFunction& B, const YoungFunction& C, const Cube& Q, double K) {
  InequalitySides out;
  out.lhs = luxemburg_norm(f * g, A, Q);
  const double nf = luxemburg_norm(f, B, Q);
  out.rhs = nf == 0.0 ? 0.0 : K * nf * luxemburg_norm(g, C, Q);
  return out;
}

InequalitySides generalized_holder(const MuFunction& f, const MuFunction& g, const YoungFunction& A,
                                   const YoungFunction& B, const YoungFunction& C, const Cube& Q, double K,
                                   double t0) {
  if (!(t0 > 0.0)) throw DomainError("generalized_holder: t0 must be positive");
  const auto bound = inverse_product_constant(A, B, C, t0);
  if (K < (2.0 + t0) * bound.c)
    throw HypothesisError("inverse_product",
                          "B^-1 C^-1 <= c A^-1 needs c = " + format_sig12(bound.c) + " at t = " +
                              format_sig12(bound.worst_t) + ", which K = " + format_sig12(K) + " does not cover");
  return generalized_holder_sides(f, g, A, B, C, Q, K);
}

}  // namespace oml
