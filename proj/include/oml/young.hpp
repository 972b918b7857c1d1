#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace oml {

class YoungFunction;

// Geometric grid lo, lo*q, ..., hi with `nodes` points.
struct GeometricGrid {
  double lo = 0x1p-20;
  double hi = 0x1p20;
  int nodes = 256;

  std::vector<double> points() const;
};

struct PowerFamily {
  double p = 1.0;
  double coef = 1.0;  // B(t) = coef * t^p
};
struct LinearLogFamily {
  double k = 1.0;  // B(t) = t log(e+t)^k
};
struct PowerLogFamily {
  double p = 1.0;
  double k = 1.0;  // B(t) = (t log(e+t)^k)^p
};
struct PowerScaledFamily {
  std::shared_ptr<const YoungFunction> base;
  double r = 1.0;  // B(t) = base(t)^r
};
struct PreComposedFamily {
  std::shared_ptr<const YoungFunction> base;
  double r = 1.0;  // B(t) = base(t^r)
};
struct ExpMinusOneFamily {};  // B(t) = e^t - 1
struct ConjugateFamily {
  std::shared_ptr<const YoungFunction> base;  // numerical Legendre transform of base
};
struct CustomFamily {
  std::string name;
};

using FamilyTag = std::variant<PowerFamily, LinearLogFamily, PowerLogFamily, PowerScaledFamily,
                               PreComposedFamily, ExpMinusOneFamily, ConjugateFamily, CustomFamily>;

// Convex increasing B with B(0) = 0. Immutable value type; copies share state.
class YoungFunction {
 public:
  using Map = std::function<double(double)>;
  using Thunk = std::function<YoungFunction()>;

  YoungFunction(FamilyTag family, Map eval, std::optional<Map> inverse = std::nullopt,
                std::optional<Thunk> complementary = std::nullopt, bool submultiplicative_claim = false);

  // Unchecked evaluation; use oml::eval for the domain-checked form.
  double operator()(double t) const { return state_->eval(t); }

  const FamilyTag& family() const noexcept { return state_->family; }
  const std::optional<Map>& known_inverse() const noexcept { return state_->inverse; }
  const std::optional<Thunk>& known_complementary() const noexcept { return state_->complementary; }
  bool submultiplicative_claim() const noexcept { return state_->submultiplicative; }

  // Text form, e.g. "powerlog:p=1.5,k=2". Throws ConfigError for families
  // without a text form (numerical conjugates, custom maps).
  std::string spec() const;
  // Human-readable description; always available.
  std::string describe() const;

 private:
  struct State {
    FamilyTag family;
    Map eval;
    std::optional<Map> inverse;
    std::optional<Thunk> complementary;
    bool submultiplicative;
  };
  std::shared_ptr<const State> state_;
};

// ---------------------------------------------------------------------------
// Builders

YoungFunction power(double p, double coef = 1.0);
YoungFunction linear_log(double k);
YoungFunction power_log(double p, double k);
// base(t)^r and base(t^r); both validate convexity on a 256-point grid and
// throw ConfigError naming the violating pair.
YoungFunction power_scaled(const YoungFunction& base, double r);
YoungFunction pre_composed(const YoungFunction& base, double r);
YoungFunction exp_minus_one();
YoungFunction custom(std::string name, YoungFunction::Map eval, bool submultiplicative_claim = false);

// Families used by the two-weight experiment.
// phi(t) = (t log(e+t)^k)^{n/(n-alpha)}
YoungFunction two_weight_phi(double alpha_over_n, double k);
// psi(t) = phi(t^{1-alpha/n})
YoungFunction psi_from(const YoungFunction& phi, double alpha_over_n);
// A(t) = t^{r p'}
YoungFunction two_weight_A(double r, double p);
// C(t) = (t log(e+t)^k)^{(r p')'}
YoungFunction two_weight_C(double r, double p, double k);

double conjugate_exponent(double p);

// Parse "power:p=2", "linlog:k=1", "powerlog:p=1.5,k=2", "prec:base=<spec>,r=0.5",
// "scaled:base=<spec>,r=1.5", "expm1". Throws ConfigError.
YoungFunction parse_young(std::string_view spec);

// ---------------------------------------------------------------------------
// Calculus

// B(t), t >= 0. Throws DomainError for negative or NaN t.
double eval(const YoungFunction& B, double t);

// inf{t : B(t) >= y}. Closed form when known, otherwise bisection on [0, T]
// with T doubled until B(T) >= y.
double inverse(const YoungFunction& B, double y, double tol = 1e-12);

struct ConjugateGrid {
  double lo = 0x1p-30;
  double hi = 0x1p30;
  int nodes = 512;
};

// sup_{s>0} (s t - B(s)). Closed form when known; otherwise golden-section
// maximisation at each grid node and log-linear interpolation between nodes.
// Values beyond double range are +inf.
YoungFunction complementary(const YoungFunction& B, const ConjugateGrid& grid = {});

// sup_{s>0} (s t - B(s)) at a single t by golden section on the concave objective.
double conjugate_value(const YoungFunction& B, double t);

struct HBound {
  double value = 0.0;
  double argmax_t = 0.0;  // maximising t on the grid; 0 for closed forms
  bool truncated = false;  // true when the sup was taken over [2^-40, 2^40]
};

// h_B(s) = sup_{t>0} B(st)/B(t).
HBound h_B(const YoungFunction& B, double s, int points_per_octave = 16);

// phi_1(s) = s / h_B(s^{alpha/n}), phi_1(0) = 0.
double phi1(const YoungFunction& B, double alpha, double n, double s);

enum class BpState { Converges, Diverges, Inconclusive };

struct BpVerdict {
  double p = 0.0;
  double cutoff_c = 1.0;
  double tail_estimate = 0.0;  // partial sum plus geometric tail; +inf on divergence
  double partial_sum = 0.0;
  int octaves = 0;
  BpState state = BpState::Inconclusive;
  std::string diagnostic;

  bool converges() const noexcept { return state == BpState::Converges; }
};

// Classifies int_c^inf B(t) t^{-p} dt/t by octave contributions.
BpVerdict check_bp(const YoungFunction& B, double p, double cutoff_c = 1.0);

struct TailIntegral {
  double value = 0.0;  // partial sum + geometric tail estimate
  double partial = 0.0;
  int octaves = 0;
  bool converged = false;
};

// int_c^inf f(t) dt by adaptive Gauss-Kronrod on octaves [c 2^j, c 2^{j+1}],
// summed until the contributions are negligible.
TailIntegral tail_integral(const std::function<double(double)>& f, double c, double rel_tol = 1e-12);

struct SubmultiplicativeReport {
  double worst_ratio = 0.0;  // max B(st) / (B(s) B(t))
  double worst_s = 0.0;
  double worst_t = 0.0;
  bool certified(double tol = 1e-9) const noexcept { return worst_ratio <= 1.0 + tol; }
};

SubmultiplicativeReport check_submultiplicative(const YoungFunction& B,
                                                const GeometricGrid& grid = {0x1p-20, 0x1p20, 64});

struct YoungAxiomReport {
  bool zero_at_origin = true;
  bool monotone = true;
  bool convex = true;
  bool unbounded = true;
  double worst_convexity_excess = 0.0;  // max of B(mid) / ((B(a)+B(b))/2) - 1
  double violating_a = 0.0;
  double violating_b = 0.0;
  bool ok() const noexcept { return zero_at_origin && monotone && convex && unbounded; }
};

YoungAxiomReport check_young_axioms(const YoungFunction& B, const GeometricGrid& grid = {},
                                    double rel_tol = 1e-9);

// Grid comparison of two inverse maps: the ratio lhs(t) / rhs(t) on the grid.
struct InverseRatio {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double argmin_t = 0.0;
  double argmax_t = 0.0;
};

InverseRatio inverse_ratio(const std::function<double(double)>& lhs,
                           const std::function<double(double)>& rhs, const GeometricGrid& grid);

}  // namespace oml
