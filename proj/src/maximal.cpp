#include "oml/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "oml/error.hpp"
#include "oml/luxemburg.hpp"
#include "oml/text.hpp"

namespace oml {

void CubeFamilySpec::validate() const {
  if (k_min > k_max) throw ConfigError("family: k_min > k_max");
  if (k_min < kMinGeneration || k_max > kMaxGeneration)
    throw ConfigError("family: generations must lie in [" + std::to_string(kMinGeneration) + ", " +
                      std::to_string(kMaxGeneration) + "]");
  if (shifts_per_axis < 1) throw ConfigError("family: shifts_per_axis must be >= 1");
}

CubeFamilySpec default_family(const AtomicMeasure& mu, int shifts_per_axis) {
  const Cube& box = mu.bounding_box();
  int k_min = std::clamp(dyadic_generation(box.side()), kMinGeneration, kMaxGeneration);
  int k_max = std::clamp(dyadic_generation(mu.resolution()), kMinGeneration, kMaxGeneration);
  if (k_max < k_min) k_max = k_min;
  return {k_min, k_max, shifts_per_axis, box};
}

// One translated dyadic lattice of the measure's atoms.
class LatticeWalker {
 public:
  LatticeWalker(const AtomicMeasure& mu, int k, Eigen::VectorXd offset)
      : mu_(mu), k_(k), d_(mu.dim()), side_(dyadic_side(k)), offset_(std::move(offset)) {
    const auto n = static_cast<size_t>(mu.size());
    keys_.resize(n * static_cast<size_t>(d_));
    for (size_t a = 0; a < n; ++a) {
      const auto x = mu.point(static_cast<Eigen::Index>(a));
      for (int i = 0; i < d_; ++i) {
        auto j = static_cast<long long>(std::floor((x[i] - offset_[i]) / side_));
        const double corner = offset_[i] + static_cast<double>(j) * side_;
        if (x[i] < corner)
          --j;
        else if (x[i] >= corner + side_)
          ++j;
        keys_[a * static_cast<size_t>(d_) + static_cast<size_t>(i)] = j;
      }
    }
    sorted_.resize(n);
    for (size_t a = 0; a < n; ++a) sorted_[a] = static_cast<Eigen::Index>(a);
    std::stable_sort(sorted_.begin(), sorted_.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return less(key(a), key(b)); });
    const auto& m = mu.masses();
    for (size_t i = 0; i < n;) {
      size_t j = i;
      double mass = 0.0;
      while (j < n && equal(key(sorted_[i]), key(sorted_[j]))) mass += m[sorted_[j++]];
      cells_.push_back({i, j, mass});
      i = j;
    }
  }

  void visit(const Cube& clip, const std::function<void(const FamilyCell&)>& fn) const {
    for (const auto& c : cells_) {
      const long long* kk = key(sorted_[c.begin]);
      Eigen::VectorXd corner(d_);
      for (int i = 0; i < d_; ++i) corner[i] = offset_[i] + static_cast<double>(kk[i]) * side_;
      Cube cube(std::move(corner), side_);
      if (!cube.intersects(clip)) continue;
      FamilyCell cell(*this, std::move(cube), k_,
                      std::span<const Eigen::Index>(sorted_.data() + c.begin, c.end - c.begin), c.mass,
                      std::span<const long long>(kk, static_cast<size_t>(d_)));
      fn(cell);
    }
  }

  template <class PerCell>
  double sum_neighbours(std::span<const long long> center, int r, PerCell per_cell) const {
    std::vector<long long> probe(center.begin(), center.end());
    std::vector<int> step(static_cast<size_t>(d_), -r);
    double total = 0.0;
    while (true) {
      for (int i = 0; i < d_; ++i) probe[static_cast<size_t>(i)] = center[static_cast<size_t>(i)] + step[static_cast<size_t>(i)];
      if (auto c = find(probe.data())) total += per_cell(*c);
      int i = d_ - 1;
      while (i >= 0 && step[static_cast<size_t>(i)] == r) step[static_cast<size_t>(i--)] = -r;
      if (i < 0) break;
      ++step[static_cast<size_t>(i)];
    }
    return total;
  }

  double dilated_mass(std::span<const long long> center, int r) const {
    return sum_neighbours(center, r, [](const CellRec& c) { return c.mass; });
  }

  double dilated_integral(std::span<const long long> center, const Eigen::VectorXd& values, int r) const {
    const auto& m = mu_.masses();
    return sum_neighbours(center, r, [&](const CellRec& c) {
      double s = 0.0;
      for (size_t i = c.begin; i < c.end; ++i) s += values[sorted_[i]] * m[sorted_[i]];
      return s;
    });
  }

 private:
  struct CellRec {
    size_t begin;
    size_t end;
    double mass;
  };

  const long long* key(Eigen::Index a) const { return keys_.data() + static_cast<size_t>(a) * static_cast<size_t>(d_); }
  bool less(const long long* a, const long long* b) const {
    return std::lexicographical_compare(a, a + d_, b, b + d_);
  }
  bool equal(const long long* a, const long long* b) const { return std::equal(a, a + d_, b); }

  const CellRec* find(const long long* probe) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), probe,
                               [&](const CellRec& c, const long long* p) { return less(key(sorted_[c.begin]), p); });
    if (it == cells_.end() || !equal(key(sorted_[it->begin]), probe)) return nullptr;
    return &*it;
  }

  const AtomicMeasure& mu_;
  int k_;
  int d_;
  double side_;
  Eigen::VectorXd offset_;
  std::vector<long long> keys_;
  std::vector<Eigen::Index> sorted_;
  std::vector<CellRec> cells_;
};

double FamilyCell::dilated_mass(int r) const {
  if (r < 0) throw DomainError("dilated_mass: negative radius");
  return lattice_->dilated_mass(key_, r);
}

double FamilyCell::dilated_integral(const Eigen::VectorXd& values, int r) const {
  if (r < 0) throw DomainError("dilated_integral: negative radius");
  return lattice_->dilated_integral(key_, values, r);
}

void for_each_cell(const AtomicMeasure& mu, const CubeFamilySpec& family,
                   const std::function<void(const FamilyCell&)>& visit) {
  family.validate();
  const int d = mu.dim();
  if (family.clip_box.dim() != d) throw ConfigError("family: clip_box dimension does not match the measure");
  const int S = family.shifts_per_axis;
  for (int k = family.k_min; k <= family.k_max; ++k) {
    const double side = dyadic_side(k);
    std::vector<int> s(static_cast<size_t>(d), 0);
    while (true) {
      Eigen::VectorXd offset(d);
      for (int i = 0; i < d; ++i) offset[i] = side * s[static_cast<size_t>(i)] / S;
      LatticeWalker(mu, k, std::move(offset)).visit(family.clip_box, visit);
      int i = d - 1;
      while (i >= 0 && s[static_cast<size_t>(i)] == S - 1) s[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      ++s[static_cast<size_t>(i)];
    }
  }
}

std::vector<Cube> family_cubes(const AtomicMeasure& mu, const CubeFamilySpec& family) {
  std::vector<Cube> out;
  for_each_cell(mu, family, [&](const FamilyCell& c) { out.push_back(c.cube()); });
  return out;
}

std::string_view to_string(OperatorTag tag) {
  switch (tag) {
    case OperatorTag::MB: return "MB";
    case OperatorTag::MalphaB: return "MalphaB";
    case OperatorTag::MalphaRadial: return "MalphaRadial";
    case OperatorTag::Mmu: return "Mmu";
    case OperatorTag::MalphaWTL: return "MalphaWTL";
  }
  return "?";
}

namespace {

template <class CellValue>
MaximalField sweep(const MuFunction& f, OperatorTag tag, double alpha, std::optional<YoungFunction> B,
                   const CubeFamilySpec& family, CellValue value_of) {
  const AtomicMeasure& mu = f.measure();
  const auto n = static_cast<size_t>(mu.size());
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (!std::isfinite(f[i])) throw DomainError("maximal operator: non-finite function value at atom " + std::to_string(i));

  std::vector<double> best(n, -std::numeric_limits<double>::infinity());
  std::vector<std::optional<Cube>> arg(n);
  for_each_cell(mu, family, [&](const FamilyCell& c) {
    const double v = value_of(c);
    for (auto a : c.atoms()) {
      const auto i = static_cast<size_t>(a);
      if (v > best[i]) {
        best[i] = v;
        arg[i] = c.cube();
      }
    }
  });

  Eigen::VectorXd values(mu.size());
  std::vector<Cube> argmax;
  argmax.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (!arg[i]) {
      std::string where;
      for (int j = 0; j < mu.dim(); ++j) where += (j ? " " : "") + format_real(mu.point(static_cast<Eigen::Index>(i))[j]);
      throw CoverageError("atom " + std::to_string(i) + " at (" + where + ") lies in no cube of the family");
    }
    values[static_cast<Eigen::Index>(i)] = best[i];
    argmax.push_back(*arg[i]);
  }
  return MaximalField{tag, alpha, std::move(B), MuFunction(mu, std::move(values)), family, std::move(argmax)};
}

double abs_integral(const MuFunction& f, std::span<const Eigen::Index> atoms) {
  const auto& m = f.measure().masses();
  double s = 0.0;
  for (auto a : atoms) s += std::abs(f[a]) * m[a];
  return s;
}

void check_alpha(double alpha, double upper, const char* op) {
  if (!(alpha >= 0.0 && alpha < upper))
    throw DomainError(std::string(op) + ": alpha must lie in [0, " + format_real(upper) + "), got " + format_real(alpha));
}

}  // namespace

MaximalField m_alpha_B(const MuFunction& f, double alpha, const YoungFunction& B, const CubeFamilySpec& family) {
  const double n = f.measure().ahlfors_n();
  check_alpha(alpha, n, "m_alpha_B");
  const auto& m = f.measure().masses();
  std::vector<double> vals;
  std::vector<double> masses;
  return sweep(f, alpha == 0.0 ? OperatorTag::MB : OperatorTag::MalphaB, alpha, B, family, [&](const FamilyCell& c) {
    vals.clear();
    masses.clear();
    for (auto a : c.atoms()) {
      vals.push_back(std::abs(f[a]));
      masses.push_back(m[a]);
    }
    const double l = c.cube().side();
    return std::pow(l, alpha) * luxemburg_norm(vals, masses, std::pow(l, n), B);
  });
}

MaximalField m_radial_alpha(const MuFunction& f, double alpha, const CubeFamilySpec& family) {
  const double n = f.measure().ahlfors_n();
  check_alpha(alpha, n, "m_radial_alpha");
  return sweep(f, OperatorTag::MalphaRadial, alpha, std::nullopt, family, [&](const FamilyCell& c) {
    const double l = c.cube().side();
    return std::pow(l, alpha) * (abs_integral(f, c.atoms()) / std::pow(l, n));
  });
}

MaximalField m_mu(const MuFunction& f, const CubeFamilySpec& family) {
  return sweep(f, OperatorTag::Mmu, 0.0, std::nullopt, family,
               [&](const FamilyCell& c) { return abs_integral(f, c.atoms()) / c.mass(); });
}

MaximalField m_wtl_alpha(const MuFunction& f, double alpha, const CubeFamilySpec& family) {
  check_alpha(alpha, 1.0, "m_wtl_alpha");
  return sweep(f, OperatorTag::MalphaWTL, alpha, std::nullopt, family, [&](const FamilyCell& c) {
    return std::pow(c.dilated_mass(2), alpha - 1.0) * abs_integral(f, c.atoms());
  });
}

double level_set_measure(const MuFunction& field, double t) {
  const auto& m = field.measure().masses();
  double s = 0.0;
  for (Eigen::Index i = 0; i < field.size(); ++i)
    if (field[i] > t) s += m[i];
  return s;
}

void write_argmax_csv(std::ostream& os, const MaximalField& field) {
  os << "atom,value,cube\n";
  for (Eigen::Index i = 0; i < field.values.size(); ++i)
    os << i << ',' << format_sig12(field.values[i]) << ',' << to_string(field.argmax[static_cast<size_t>(i)]) << '\n';
}

}  // namespace oml
