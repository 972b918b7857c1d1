#include "oml/young.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oml/error.hpp"
#include "oml/text.hpp"

namespace oml {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE = std::numbers::e;

std::string pair_text(double a, double b) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << a << ", " << b << ")";
  return os.str();
}

// Midpoint convexity over all grid pairs; throws on the first violation.
void require_convex(const YoungFunction& B, const std::string& what) {
  auto report = check_young_axioms(B);
  if (!report.convex)
    throw ConfigError(what + " is not convex: midpoint test fails at pair " +
                      pair_text(report.violating_a, report.violating_b));
  if (!report.monotone || !report.zero_at_origin)
    throw ConfigError(what + " is not a Young function (B(0) != 0 or not nondecreasing)");
}

double bisect_inverse(const YoungFunction& B, double y, double tol) {
  double hi = 1.0;
  double lo = 0.0;
  if (B(hi) < y) {
    while (B(hi) < y) {
      hi *= 2.0;
      if (!std::isfinite(hi)) throw DomainError("inverse: B stays below y = " + format_real(y));
    }
    lo = hi / 2.0;
  } else {
    while (hi > 0x1p-1000 && B(hi / 2.0) >= y) hi /= 2.0;
    lo = hi / 2.0;
    if (B(lo) >= y) return 0.0;
  }
  for (int it = 0; it < 2000; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (B(mid) >= y)
      hi = mid;
    else
      lo = mid;
    if (hi - lo <= tol * hi && B(hi) - y <= 0.5 * tol * (1.0 + y)) break;
  }
  return hi;
}

// Piecewise interpolant through (t_i, v_i): log-linear where both ends are
// positive, quadratic from a zero left node, last slope beyond the ends.
struct Interpolant {
  std::vector<double> t;
  std::vector<double> v;

  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    const size_t n = t.size();
    if (x <= t.front()) {
      if (v[0] <= 0.0) return 0.0;
      double slope = std::log(v[1] / v[0]) / std::log(t[1] / t[0]);
      return v[0] * std::pow(x / t[0], slope);
    }
    if (x >= t.back()) {
      if (!std::isfinite(v[n - 1])) return kInf;
      if (v[n - 2] <= 0.0) return v[n - 1] * (x / t[n - 1]);
      double slope = std::log(v[n - 1] / v[n - 2]) / std::log(t[n - 1] / t[n - 2]);
      return v[n - 1] * std::pow(x / t[n - 1], slope);
    }
    size_t i = static_cast<size_t>(std::upper_bound(t.begin(), t.end(), x) - t.begin()) - 1;
    double a = v[i];
    double b = v[i + 1];
    if (!std::isfinite(b)) return x == t[i] ? a : kInf;
    if (b <= 0.0) return 0.0;
    if (a <= 0.0) {
      double u = (x - t[i]) / (t[i + 1] - t[i]);
      return b * u * u;
    }
    double u = std::log(x / t[i]) / std::log(t[i + 1] / t[i]);
    return a * std::pow(b / a, u);
  }
};

bool is_power(const YoungFunction& B, double* p = nullptr) {
  if (auto* pw = std::get_if<PowerFamily>(&B.family())) {
    if (p) *p = pw->p;
    return true;
  }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> GeometricGrid::points() const {
  if (nodes < 2 || !(lo > 0.0) || !(hi > lo)) throw ConfigError("geometric grid needs 0 < lo < hi and >= 2 nodes");
  std::vector<double> out(static_cast<size_t>(nodes));
  const double step = std::log(hi / lo) / (nodes - 1);
  for (int i = 0; i < nodes; ++i) out[static_cast<size_t>(i)] = lo * std::exp(step * i);
  out.back() = hi;
  return out;
}

YoungFunction::YoungFunction(FamilyTag family, Map eval, std::optional<Map> inverse,
                             std::optional<Thunk> complementary, bool submultiplicative_claim)
    : state_(std::make_shared<const State>(State{std::move(family), std::move(eval), std::move(inverse),
                                                 std::move(complementary), submultiplicative_claim})) {}

std::string YoungFunction::spec() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, PowerFamily>) {
          std::string s = "power:p=" + format_real(f.p);
          if (f.coef != 1.0) s += ",c=" + format_real(f.coef);
          return s;
        } else if constexpr (std::is_same_v<F, LinearLogFamily>) {
          return "linlog:k=" + format_real(f.k);
        } else if constexpr (std::is_same_v<F, PowerLogFamily>) {
          return "powerlog:p=" + format_real(f.p) + ",k=" + format_real(f.k);
        } else if constexpr (std::is_same_v<F, PowerScaledFamily>) {
          return "scaled:base=" + f.base->spec() + ",r=" + format_real(f.r);
        } else if constexpr (std::is_same_v<F, PreComposedFamily>) {
          return "prec:base=" + f.base->spec() + ",r=" + format_real(f.r);
        } else if constexpr (std::is_same_v<F, ExpMinusOneFamily>) {
          return "expm1";
        } else if constexpr (std::is_same_v<F, ConjugateFamily>) {
          throw ConfigError("numerical conjugate of " + f.base->describe() + " has no text form");
        } else {
          throw ConfigError("custom Young function '" + f.name + "' has no text form");
        }
      },
      family());
}

std::string YoungFunction::describe() const {
  if (auto* c = std::get_if<ConjugateFamily>(&family())) return "conj(" + c->base->describe() + ")";
  if (auto* c = std::get_if<CustomFamily>(&family())) return c->name;
  return spec();
}

// ---------------------------------------------------------------------------
// Builders

double conjugate_exponent(double p) {
  if (!(p > 1.0)) throw ConfigError("conjugate exponent needs p > 1");
  return p / (p - 1.0);
}

YoungFunction power(double p, double coef) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw ConfigError("power: need p >= 1, got " + format_real(p));
  if (!(coef > 0.0)) throw ConfigError("power: need c > 0");
  std::optional<YoungFunction::Thunk> comp;
  if (p > 1.0) {
    comp = [p, coef] {
      const double q = p / (p - 1.0);
      return power(q, (p - 1.0) * coef * std::pow(coef * p, -q));
    };
  }
  return YoungFunction(
      PowerFamily{p, coef}, [p, coef](double t) { return coef * std::pow(t, p); },
      [p, coef](double y) { return std::pow(y / coef, 1.0 / p); }, comp, coef >= 1.0);
}

YoungFunction linear_log(double k) {
  if (!(k >= 0.0)) throw ConfigError("linlog: need k >= 0");
  return YoungFunction(
      LinearLogFamily{k}, [k](double t) { return t * std::pow(std::log(kE + t), k); }, std::nullopt,
      std::nullopt, true);
}

YoungFunction power_log(double p, double k) {
  if (!(p >= 1.0)) throw ConfigError("powerlog: need p >= 1, got " + format_real(p));
  if (!(k >= 0.0)) throw ConfigError("powerlog: need k >= 0");
  auto ll = linear_log(k);
  return YoungFunction(
      PowerLogFamily{p, k}, [p, k](double t) { return std::pow(t * std::pow(std::log(kE + t), k), p); },
      [ll, p](double y) { return inverse(ll, std::pow(y, 1.0 / p)); }, std::nullopt, true);
}

YoungFunction power_scaled(const YoungFunction& base, double r) {
  if (!(r > 0.0)) throw ConfigError("scaled: need r > 0");
  auto b = std::make_shared<const YoungFunction>(base);
  YoungFunction out(
      PowerScaledFamily{b, r}, [b, r](double t) { return std::pow((*b)(t), r); },
      [b, r](double y) { return inverse(*b, std::pow(y, 1.0 / r)); }, std::nullopt,
      base.submultiplicative_claim());
  require_convex(out, "scaled:" + base.describe() + "^" + format_real(r));
  return out;
}

YoungFunction pre_composed(const YoungFunction& base, double r) {
  if (!(r > 0.0)) throw ConfigError("prec: need r > 0");
  auto b = std::make_shared<const YoungFunction>(base);
  YoungFunction out(
      PreComposedFamily{b, r}, [b, r](double t) { return (*b)(std::pow(t, r)); },
      [b, r](double y) { return std::pow(inverse(*b, y), 1.0 / r); }, std::nullopt,
      base.submultiplicative_claim());
  require_convex(out, "prec:" + base.describe() + "(t^" + format_real(r) + ")");
  return out;
}

YoungFunction exp_minus_one() {
  return YoungFunction(
      ExpMinusOneFamily{}, [](double t) { return std::expm1(t); }, [](double y) { return std::log1p(y); },
      std::nullopt, false);
}

YoungFunction custom(std::string name, YoungFunction::Map eval, bool submultiplicative_claim) {
  return YoungFunction(CustomFamily{std::move(name)}, std::move(eval), std::nullopt, std::nullopt,
                       submultiplicative_claim);
}

YoungFunction two_weight_phi(double alpha_over_n, double k) {
  if (!(alpha_over_n >= 0.0 && alpha_over_n < 1.0)) throw ConfigError("two_weight_phi: need 0 <= alpha/n < 1");
  return power_log(1.0 / (1.0 - alpha_over_n), k);
}

YoungFunction psi_from(const YoungFunction& phi, double alpha_over_n) {
  if (!(alpha_over_n >= 0.0 && alpha_over_n < 1.0)) throw ConfigError("psi: need 0 <= alpha/n < 1");
  if (alpha_over_n == 0.0) return phi;
  return pre_composed(phi, 1.0 - alpha_over_n);
}

YoungFunction two_weight_A(double r, double p) { return power(r * conjugate_exponent(p)); }

YoungFunction two_weight_C(double r, double p, double k) {
  return power_log(conjugate_exponent(r * conjugate_exponent(p)), k);
}

// ---------------------------------------------------------------------------
// Calculus

double eval(const YoungFunction& B, double t) {
  if (!(t >= 0.0)) throw DomainError("Young function evaluated at negative or NaN t = " + format_real(t));
  if (t == 0.0) return 0.0;
  return B(t);
}

double inverse(const YoungFunction& B, double y, double tol) {
  if (!(y >= 0.0)) throw DomainError("inverse at negative or NaN y = " + format_real(y));
  if (!(tol > 0.0)) throw DomainError("inverse: tol must be positive");
  if (y == 0.0) return 0.0;
  if (std::isinf(y)) return std::numeric_limits<double>::infinity();
  if (const auto& inv = B.known_inverse()) return (*inv)(y);
  return bisect_inverse(B, y, tol);
}

double conjugate_value(const YoungFunction& B, double t) {
  if (!(t > 0.0)) return 0.0;
  auto g = [&](double s) { return s * t - B(s); };
  double S = 1.0;
  if (g(2.0 * S) >= g(S)) {
    while (g(2.0 * S) >= g(S)) {
      S *= 2.0;
      if (S > 0x1p1000) return kInf;
    }
  } else {
    while (S > 0x1p-1000 && g(S / 2.0) >= g(S)) S /= 2.0;
    if (S <= 0x1p-1000) return std::max(0.0, g(S));
  }
  constexpr double inv_phi = 0.6180339887498949;
  double a = S / 2.0;
  double b = 2.0 * S;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 300 && (b - a) > 1e-15 * b; ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  double best = std::max(gc, gd);
  if (std::isnan(best)) return kInf;
  return std::max(0.0, best);
}

YoungFunction complementary(const YoungFunction& B, const ConjugateGrid& grid) {
  if (grid.nodes < 8) throw ConfigError("complementary: grid needs at least 8 nodes");
  if (const auto& known = B.known_complementary()) return (*known)();
  if (is_power(B)) throw DomainError("complementary of a linear Young function is not finite-valued");

  Interpolant interp;
  interp.t = GeometricGrid{grid.lo, grid.hi, grid.nodes}.points();
  // Right derivative at 0: the conjugate vanishes on [0, B'(0+)].
  const double eps = 0x1p-40;
  const double kink = B(eps) / eps;
  if (kink > interp.t.front() && kink < interp.t.back()) {
    interp.t.insert(std::upper_bound(interp.t.begin(), interp.t.end(), kink), kink);
  }
  interp.v.reserve(interp.t.size());
  for (double t : interp.t) interp.v.push_back(t <= kink ? 0.0 : conjugate_value(B, t));

  auto base = std::make_shared<const YoungFunction>(B);
  auto shared = std::make_shared<const Interpolant>(std::move(interp));
  return YoungFunction(
      ConjugateFamily{base}, [shared](double t) { return (*shared)(t); }, std::nullopt,
      [base] { return *base; }, false);
}

HBound h_B(const YoungFunction& B, double s, int points_per_octave) {
  if (!(s >= 0.0)) throw DomainError("h_B at negative s");
  if (s == 1.0) return {1.0, 0.0, false};
  if (s == 0.0) return {0.0, 0.0, false};
  double p = 0.0;
  if (is_power(B, &p)) return {std::pow(s, p), 0.0, false};
  HBound out{0.0, 0.0, true};
  const int total = 80 * points_per_octave;
  for (int j = 0; j <= total; ++j) {
    const double t = std::exp2(-40.0 + static_cast<double>(j) / points_per_octave);
    const double bt = B(t);
    if (!(bt > 0.0) || !std::isfinite(bt)) continue;
    const double ratio = B(s * t) / bt;
    if (std::isfinite(ratio) && ratio > out.value) {
      out.value = ratio;
      out.argmax_t = t;
    }
  }
  return out;
}

double phi1(const YoungFunction& B, double alpha, double n, double s) {
  if (!(s >= 0.0)) throw DomainError("phi1 at negative s");
  if (!(alpha >= 0.0 && alpha < n)) throw DomainError("phi1 needs 0 <= alpha < n");
  if (s == 0.0) return 0.0;
  if (alpha == 0.0) return s;
  return s / h_B(B, std::pow(s, alpha / n)).value;
}

TailIntegral tail_integral(const std::function<double(double)>& f, double c, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  TailIntegral out;
  std::array<double, 5> ratios{};
  double prev = 0.0;
  for (int j = 0; j < 1000; ++j) {
    const double a = std::ldexp(c, j);
    const double piece = gauss_kronrod<double, 15>::integrate(f, a, 2.0 * a, 15, 1e-13);
    if (!std::isfinite(piece)) break;
    out.partial += piece;
    out.octaves = j + 1;
    if (j > 0) ratios[static_cast<size_t>(j % 5)] = prev > 0.0 ? piece / prev : (piece > 0.0 ? kInf : 0.0);
    prev = piece;
    if (j >= 5) {
      double rmax = *std::max_element(ratios.begin(), ratios.end());
      if (rmax <= 0.95 && piece <= rel_tol * out.partial) {
        out.converged = true;
        out.value = out.partial + piece * rmax / (1.0 - rmax);
        return out;
      }
    }
  }
  out.value = out.partial;
  return out;
}

BpVerdict check_bp(const YoungFunction& B, double p, double cutoff_c) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(p > 1.0)) throw DomainError("check_bp needs p > 1");
  if (!(cutoff_c >= 1.0)) throw DomainError("check_bp needs cutoff c >= 1");
  BpVerdict v;
  v.p = p;
  v.cutoff_c = cutoff_c;
  auto integrand = [&](double t) { return B(t) / std::pow(t, p) / t; };

  constexpr int kWindow = 5;
  constexpr int kDecideBy = 64;
  constexpr int kMaxOctaves = 400;
  std::vector<double> pieces;
  std::vector<double> ratios;
  double rmax = 0.0;
  for (int j = 0; j < kMaxOctaves; ++j) {
    const double a = std::ldexp(cutoff_c, j);
    const double piece = gauss_kronrod<double, 15>::integrate(integrand, a, 2.0 * a, 15, 1e-12);
    if (!std::isfinite(piece)) {
      if (v.state == BpState::Inconclusive)
        v.diagnostic = "non-finite octave contribution at t = " + format_real(a);
      break;
    }
    pieces.push_back(piece);
    v.partial_sum += piece;
    v.octaves = j + 1;
    if (j > 0) ratios.push_back(pieces[pieces.size() - 2] > 0.0 ? piece / pieces[pieces.size() - 2] : kInf);

    if (v.state == BpState::Inconclusive && static_cast<int>(ratios.size()) >= kWindow) {
      auto last = ratios.end() - kWindow;
      rmax = *std::max_element(last, ratios.end());
      const double rmin = *std::min_element(last, ratios.end());
      if (rmax <= 0.95) {
        v.state = BpState::Converges;
        std::ostringstream os;
        os << "octave ratios <= " << format_sig12(rmax) << " over the last " << kWindow << " octaves (decay fit "
           << format_sig12(std::log2(rmax)) << " per octave)";
        v.diagnostic = os.str();
      } else if (rmin >= 1.0 - 1e-9) {
        v.state = BpState::Diverges;
        v.diagnostic = "octave contributions non-decreasing (min ratio " + format_sig12(rmin) + ")";
        v.tail_estimate = kInf;
        return v;
      }
    }
    if (v.state == BpState::Converges) {
      rmax = std::max(rmax, ratios.back());
      if (piece <= 1e-13 * v.partial_sum) break;
    } else if (j + 1 >= kDecideBy) {
      v.diagnostic = "no geometric decay or growth pattern within " + std::to_string(kDecideBy) +
                     " octaves (last ratio " + format_sig12(ratios.back()) + ")";
      v.tail_estimate = v.partial_sum;
      return v;
    }
  }
  if (v.state == BpState::Converges) {
    v.tail_estimate = v.partial_sum + pieces.back() * rmax / (1.0 - rmax);
  } else {
    v.tail_estimate = v.partial_sum;
    if (v.diagnostic.empty()) v.diagnostic = "undecided";
  }
  return v;
}

SubmultiplicativeReport check_submultiplicative(const YoungFunction& B, const GeometricGrid& grid) {
  SubmultiplicativeReport out;
  const auto pts = grid.points();
  for (double s : pts) {
    const double bs = B(s);
    for (double t : pts) {
      const double denom = bs * B(t);
      if (!(denom > 0.0) || !std::isfinite(denom)) continue;
      const double ratio = B(s * t) / denom;
      if (std::isfinite(ratio) && ratio > out.worst_ratio) {
        out.worst_ratio = ratio;
        out.worst_s = s;
        out.worst_t = t;
      }
    }
  }
  return out;
}

YoungAxiomReport check_young_axioms(const YoungFunction& B, const GeometricGrid& grid, double rel_tol) {
  YoungAxiomReport out;
  out.zero_at_origin = (B(0.0) == 0.0);
  const auto pts = grid.points();
  std::vector<double> vals(pts.size());
  for (size_t i = 0; i < pts.size(); ++i) vals[i] = B(pts[i]);
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    if (vals[i + 1] < vals[i]) out.monotone = false;
  out.unbounded = B(0x1p40) > 0x1p20;
  for (size_t i = 0; i < pts.size(); ++i) {
    for (size_t j = i + 1; j < pts.size(); ++j) {
      const double rhs = 0.5 * (vals[i] + vals[j]);
      if (!std::isfinite(rhs)) continue;
      const double lhs = B(0.5 * (pts[i] + pts[j]));
      if (lhs > rhs * (1.0 + rel_tol) + 1e-300) {
        const double excess = lhs / rhs - 1.0;
        if (out.convex || excess > out.worst_convexity_excess) {
          out.worst_convexity_excess = excess;
          out.violating_a = pts[i];
          out.violating_b = pts[j];
        }
        out.convex = false;
      }
    }
  }
  return out;
}

InverseRatio inverse_ratio(const std::function<double(double)>& lhs, const std::function<double(double)>& rhs,
                           const GeometricGrid& grid) {
  InverseRatio out{kInf, 0.0, 0.0, 0.0};
  for (double t : grid.points()) {
    const double r = lhs(t) / rhs(t);
    if (!std::isfinite(r)) continue;
    if (r < out.min_ratio) {
      out.min_ratio = r;
      out.argmin_t = t;
    }
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.argmax_t = t;
    }
  }
  return out;
}

}  // namespace oml
