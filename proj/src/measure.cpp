#include "oml/measure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>

#include "oml/error.hpp"
#include "oml/text.hpp"

namespace oml {

namespace {

constexpr Eigen::Index kMaxAtoms = Eigen::Index{1} << 26;

Cube enclosing_box(const Eigen::MatrixXd& pts) {
  Eigen::VectorXd lo = pts.rowwise().minCoeff();
  Eigen::VectorXd hi = pts.rowwise().maxCoeff();
  double extent = (hi - lo).maxCoeff();
  double side = extent > 0.0 ? extent * (1.0 + 1e-9) + 1e-300 : 1.0;
  while (!(lo.array() + side > hi.array()).all()) side *= 1.0 + 1e-9;
  return Cube(lo, side);
}

double smallest_gap(const Eigen::MatrixXd& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index axis = 0; axis < pts.rows(); ++axis) {
    std::vector<double> v(static_cast<size_t>(pts.cols()));
    for (Eigen::Index i = 0; i < pts.cols(); ++i) v[static_cast<size_t>(i)] = pts(axis, i);
    std::sort(v.begin(), v.end());
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] > v[i - 1]) best = std::min(best, v[i] - v[i - 1]);
  }
  return std::isfinite(best) ? best : 1.0;
}

}  // namespace

AtomicMeasure::AtomicMeasure(const Eigen::MatrixXd& points, const Eigen::VectorXd& masses, double ahlfors_n,
                             std::optional<Cube> box, double resolution) {
  const Eigen::Index n_atoms = points.cols();
  if (points.rows() < 1) throw ConfigError("measure dimension must be >= 1");
  if (masses.size() != n_atoms) throw ConfigError("one mass per atom required");
  if (n_atoms == 0) throw ConfigError("measure needs at least one atom");
  if (!(ahlfors_n > 0.0 && ahlfors_n <= static_cast<double>(points.rows())))
    throw ConfigError("ahlfors_n must lie in (0, d]");
  if (!points.allFinite()) throw DomainError("atom coordinates must be finite");
  for (Eigen::Index i = 0; i < n_atoms; ++i)
    if (!(masses[i] > 0.0) || !std::isfinite(masses[i])) throw DomainError("atom masses must be positive and finite");

  std::vector<Eigen::Index> order(static_cast<size_t>(n_atoms));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
      if (points(r, a) < points(r, b)) return true;
      if (points(r, a) > points(r, b)) return false;
    }
    return false;
  });
  Eigen::MatrixXd sorted(points.rows(), n_atoms);
  Eigen::VectorXd sorted_mass(n_atoms);
  for (Eigen::Index i = 0; i < n_atoms; ++i) {
    sorted.col(i) = points.col(order[static_cast<size_t>(i)]);
    sorted_mass[i] = masses[order[static_cast<size_t>(i)]];
  }
  Cube bbox = box ? *box : enclosing_box(sorted);
  if (bbox.dim() != points.rows()) throw ConfigError("bounding box dimension mismatch");
  for (Eigen::Index i = 0; i < n_atoms; ++i)
    if (!bbox.contains(sorted.col(i))) throw ConfigError("atom outside the bounding box");
  const double res = resolution > 0.0 ? resolution : smallest_gap(sorted);
  const double total = sorted_mass.sum();
  state_ = std::make_shared<const State>(
      State{std::move(sorted), std::move(sorted_mass), ahlfors_n, std::move(bbox), res, total, std::move(order)});
}

std::vector<Eigen::Index> AtomicMeasure::atoms_in(const Cube& Q) const {
  if (Q.dim() != dim()) throw DomainError("cube dimension does not match the measure");
  const auto& pts = state_->points;
  const double lo = Q.corner()[0];
  const double hi = lo + Q.side();
  Eigen::Index first = 0;
  Eigen::Index last = size();
  {
    Eigen::Index count = last;
    while (count > 0) {  // lower_bound on row 0
      Eigen::Index step = count / 2;
      if (pts(0, first + step) < lo) {
        first += step + 1;
        count -= step + 1;
      } else {
        count = step;
      }
    }
  }
  std::vector<Eigen::Index> out;
  for (Eigen::Index i = first; i < last && pts(0, i) < hi; ++i)
    if (Q.contains(pts.col(i))) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

MuFunction::MuFunction(AtomicMeasure measure, Eigen::VectorXd values)
    : measure_(std::move(measure)), values_(std::move(values)) {
  if (values_.size() != measure_.size()) throw ConfigError("MuFunction needs one value per atom");
}

MuFunction MuFunction::constant(const AtomicMeasure& measure, double c) {
  return MuFunction(measure, Eigen::VectorXd::Constant(measure.size(), c));
}

MuFunction MuFunction::sample(const AtomicMeasure& measure,
                              const std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>& f) {
  Eigen::VectorXd v(measure.size());
  for (Eigen::Index i = 0; i < measure.size(); ++i) v[i] = f(measure.point(i));
  return MuFunction(measure, std::move(v));
}

MuFunction MuFunction::indicator(const AtomicMeasure& measure, const Cube& Q) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(measure.size());
  for (auto i : measure.atoms_in(Q)) v[i] = 1.0;
  return MuFunction(measure, std::move(v));
}

namespace {
void require_same(const MuFunction& f, const MuFunction& g) {
  if (!f.measure().same_as(g.measure())) throw DomainError("functions live on different measures");
}
}  // namespace

MuFunction abs(const MuFunction& f) { return MuFunction(f.measure(), f.values().cwiseAbs()); }

MuFunction pow(const MuFunction& f, double r) {
  return MuFunction(f.measure(), f.values().cwiseAbs().array().pow(r).matrix());
}

MuFunction operator+(const MuFunction& f, const MuFunction& g) {
  require_same(f, g);
  return MuFunction(f.measure(), f.values() + g.values());
}

MuFunction operator*(const MuFunction& f, const MuFunction& g) {
  require_same(f, g);
  return MuFunction(f.measure(), f.values().cwiseProduct(g.values()));
}

MuFunction operator*(double c, const MuFunction& f) { return MuFunction(f.measure(), c * f.values()); }

MuFunction restrict_to(const MuFunction& f, const Cube& Q) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(f.size());
  for (auto i : f.measure().atoms_in(Q)) v[i] = f[i];
  return MuFunction(f.measure(), std::move(v));
}

double mu_of(const AtomicMeasure& measure, const Cube& Q) {
  double sum = 0.0;
  for (auto i : measure.atoms_in(Q)) sum += measure.masses()[i];
  return sum;
}

double integrate(const MuFunction& f, const Cube& Q) {
  double sum = 0.0;
  const auto& m = f.measure().masses();
  for (auto i : f.measure().atoms_in(Q)) sum += f[i] * m[i];
  return sum;
}

double integrate(const MuFunction& f) { return f.values().dot(f.measure().masses()); }

double lp_norm(const MuFunction& f, double p, const MuFunction* weight) {
  if (!(p > 0.0)) throw DomainError("lp_norm needs p > 0");
  Eigen::ArrayXd a = f.values().cwiseAbs().array().pow(p) * f.measure().masses().array();
  if (weight) {
    require_same(f, *weight);
    a *= weight->values().array();
  }
  return std::pow(a.sum(), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Builders

namespace {

void check_resolution(double h) {
  if (!(h > 0.0)) throw ConfigError("resolution must be positive");
  if (h < 0x1p-30) throw ConfigError("resolution finer than 2^-30");
}

}  // namespace

AtomicMeasure build_lebesgue(int d, const Cube& box, double resolution) {
  check_resolution(resolution);
  if (d < 1 || box.dim() != d) throw ConfigError("build_lebesgue: dimension mismatch");
  const auto per_axis = static_cast<Eigen::Index>(std::floor(box.side() / resolution + 1e-9));
  if (per_axis < 1) throw ConfigError("build_lebesgue: resolution coarser than the box");
  double total = 1.0;
  for (int i = 0; i < d; ++i) total *= static_cast<double>(per_axis);
  if (total > static_cast<double>(kMaxAtoms)) throw ConfigError("build_lebesgue: too many atoms");
  const auto n = static_cast<Eigen::Index>(total);
  Eigen::MatrixXd pts(d, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    Eigen::Index rem = a;
    for (int i = d - 1; i >= 0; --i) {
      pts(i, a) = box.corner()[i] + (static_cast<double>(rem % per_axis) + 0.5) * resolution;
      rem /= per_axis;
    }
  }
  Eigen::VectorXd masses = Eigen::VectorXd::Constant(n, std::pow(resolution, d));
  return AtomicMeasure(pts, masses, static_cast<double>(d), box, resolution);
}

AtomicMeasure build_gaussian_1d(const Cube& box, double resolution) {
  check_resolution(resolution);
  if (box.dim() != 1) throw ConfigError("build_gaussian_1d needs a 1-D box");
  const auto n = static_cast<Eigen::Index>(std::floor(box.side() / resolution + 1e-9));
  if (n < 1) throw ConfigError("build_gaussian_1d: resolution coarser than the box");
  if (n > kMaxAtoms) throw ConfigError("build_gaussian_1d: too many atoms");
  Eigen::MatrixXd pts(1, n);
  Eigen::VectorXd masses(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = box.corner()[0] + (static_cast<double>(i) + 0.5) * resolution;
    pts(0, i) = t;
    masses[i] = std::exp(-t * t) * resolution;
  }
  return AtomicMeasure(pts, masses, 1.0, box, resolution);
}

AtomicMeasure build_cantor(int levels) {
  if (levels < 1) throw ConfigError("build_cantor needs levels >= 1");
  if (levels > 24) throw ConfigError("build_cantor: at most 24 levels");
  const Eigen::Index n = Eigen::Index{1} << levels;
  const double unit = std::pow(3.0, -levels);
  Eigen::MatrixXd pts(1, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // bit j (from the top) selects the right third at level j+1
    long long left = 0;
    for (int j = 0; j < levels; ++j) {
      left *= 3;
      if ((i >> (levels - 1 - j)) & 1) left += 2;
    }
    pts(0, i) = (static_cast<double>(left) + 0.5) * unit;
  }
  Eigen::VectorXd masses = Eigen::VectorXd::Constant(n, std::ldexp(1.0, -levels));
  const double dim = std::numbers::ln2 / std::log(3.0);
  return AtomicMeasure(pts, masses, dim, Cube(Eigen::VectorXd::Zero(1), 1.0), unit);
}

// ---------------------------------------------------------------------------
// Growth checks

AhlforsReport check_upper_ahlfors(const AtomicMeasure& measure, std::span<const Cube> family) {
  if (family.empty()) throw PreconditionError("check_upper_ahlfors needs a nonempty cube family");
  AhlforsReport out;
  for (const auto& Q : family) {
    const double ratio = mu_of(measure, Q) / std::pow(Q.side(), measure.ahlfors_n());
    ++out.cubes_checked;
    if (!out.worst_cube || ratio > out.worst_ratio) {
      out.worst_ratio = ratio;
      out.worst_cube = Q;
    }
  }
  return out;
}

AhlforsReport certify_upper_ahlfors(const AtomicMeasure& measure, int k_min, int k_max) {
  if (k_min > k_max) throw ConfigError("certify_upper_ahlfors: k_min > k_max");
  AhlforsReport out;
  const int d = measure.dim();
  for (int k = k_min; k <= k_max; ++k) {
    std::map<std::vector<long long>, double> cells;
    std::vector<long long> key(static_cast<size_t>(d));
    for (Eigen::Index a = 0; a < measure.size(); ++a) {
      for (int i = 0; i < d; ++i)
        key[static_cast<size_t>(i)] = static_cast<long long>(std::floor(std::ldexp(measure.point(a)[i], k)));
      cells[key] += measure.masses()[a];
    }
    const double denom = std::pow(dyadic_side(k), measure.ahlfors_n());
    for (const auto& [idx, mass] : cells) {
      ++out.cubes_checked;
      const double ratio = mass / denom;
      if (!out.worst_cube || ratio > out.worst_ratio) {
        Eigen::VectorXd corner(d);
        for (int i = 0; i < d; ++i) corner[i] = std::ldexp(static_cast<double>(idx[static_cast<size_t>(i)]), -k);
        out.worst_ratio = ratio;
        out.worst_cube = Cube(corner, dyadic_side(k));
      }
    }
  }
  return out;
}

GapReport ahlfors_gap(const AtomicMeasure& measure, std::span<const Cube> family, std::optional<double> n) {
  if (family.empty()) throw PreconditionError("ahlfors_gap needs a nonempty cube family");
  const double exponent = n.value_or(measure.ahlfors_n());
  GapReport out;
  for (const auto& Q : family) {
    const double mass = mu_of(measure, Q);
    if (!(mass > 0.0)) continue;
    const double gap = std::pow(Q.side(), exponent) / mass;
    if (!out.worst_cube || gap > out.sup) {
      out.sup = gap;
      out.worst_cube = Q;
    }
  }
  if (!out.worst_cube) throw DegenerateInputError("ahlfors_gap: every cube in the family has zero measure");
  return out;
}

}  // namespace oml
