#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "oml/cube.hpp"

namespace oml {

// Finite list of weighted points in R^d standing in for an upper Ahlfors
// n-dimensional measure. Atoms are stored sorted lexicographically by
// coordinates; `order()` maps sorted positions back to input positions.
// Copies share the (immutable) atom storage.
class AtomicMeasure {
 public:
  // points: d x N, one column per atom. resolution <= 0 selects the smallest
  // positive coordinate gap. box defaults to a cube enclosing every atom.
  AtomicMeasure(const Eigen::MatrixXd& points, const Eigen::VectorXd& masses, double ahlfors_n,
                std::optional<Cube> box = std::nullopt, double resolution = 0.0);

  int dim() const noexcept { return static_cast<int>(state_->points.rows()); }
  Eigen::Index size() const noexcept { return state_->points.cols(); }
  double ahlfors_n() const noexcept { return state_->ahlfors_n; }
  double resolution() const noexcept { return state_->resolution; }
  const Eigen::MatrixXd& points() const noexcept { return state_->points; }
  const Eigen::VectorXd& masses() const noexcept { return state_->masses; }
  const Cube& bounding_box() const noexcept { return state_->box; }
  const std::vector<Eigen::Index>& order() const noexcept { return state_->order; }
  auto point(Eigen::Index i) const { return state_->points.col(i); }
  double total_mass() const noexcept { return state_->total; }

  // Sorted indices of the atoms inside Q (half-open convention).
  std::vector<Eigen::Index> atoms_in(const Cube& Q) const;

  bool same_as(const AtomicMeasure& other) const noexcept { return state_ == other.state_; }

 private:
  struct State {
    Eigen::MatrixXd points;
    Eigen::VectorXd masses;
    double ahlfors_n;
    Cube box;
    double resolution;
    double total;
    std::vector<Eigen::Index> order;
  };
  std::shared_ptr<const State> state_;
};

// Real values attached to the atoms of a measure (functions and weights).
class MuFunction {
 public:
  MuFunction(AtomicMeasure measure, Eigen::VectorXd values);

  static MuFunction constant(const AtomicMeasure& measure, double c);
  static MuFunction sample(const AtomicMeasure& measure,
                           const std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>& f);
  static MuFunction indicator(const AtomicMeasure& measure, const Cube& Q);

  const AtomicMeasure& measure() const noexcept { return measure_; }
  const Eigen::VectorXd& values() const noexcept { return values_; }
  double operator[](Eigen::Index i) const { return values_[i]; }
  Eigen::Index size() const noexcept { return values_.size(); }

 private:
  AtomicMeasure measure_;
  Eigen::VectorXd values_;
};

MuFunction abs(const MuFunction& f);
MuFunction pow(const MuFunction& f, double r);  // |f|^r
MuFunction operator+(const MuFunction& f, const MuFunction& g);
MuFunction operator*(const MuFunction& f, const MuFunction& g);
MuFunction operator*(double c, const MuFunction& f);
MuFunction restrict_to(const MuFunction& f, const Cube& Q);  // f chi_Q

// Sum of masses of atoms in Q.
double mu_of(const AtomicMeasure& measure, const Cube& Q);
// Sum f(x_i) m_i over atoms in Q.
double integrate(const MuFunction& f, const Cube& Q);
double integrate(const MuFunction& f);
// (sum |f|^p w m)^{1/p}; weight defaults to 1.
double lp_norm(const MuFunction& f, double p, const MuFunction* weight = nullptr);

// Atoms at the centres of the h-grid cells of box, mass h^d, ahlfors_n = d.
AtomicMeasure build_lebesgue(int d, const Cube& box, double resolution);
// d mu = e^{-t^2} dt on a 1-D box, atoms at cell centres with mass e^{-t^2} h.
AtomicMeasure build_gaussian_1d(const Cube& box, double resolution);
// Mass 2^{-L} at the midpoints of the 2^L level-L triadic Cantor intervals.
AtomicMeasure build_cantor(int levels);

struct AhlforsReport {
  double worst_ratio = 0.0;  // max mu(Q) / l(Q)^n
  std::optional<Cube> worst_cube;
  std::size_t cubes_checked = 0;
};

AhlforsReport check_upper_ahlfors(const AtomicMeasure& measure, std::span<const Cube> family);
// Growth certificate on the dyadic cubes of the bounding box, generations
// k_min..k_max.
AhlforsReport certify_upper_ahlfors(const AtomicMeasure& measure, int k_min, int k_max);

struct GapReport {
  double sup = 0.0;  // sup l(Q)^n / mu(Q) over cubes with mu(Q) > 0
  std::optional<Cube> worst_cube;
};

// Throws DegenerateInputError when every cube has zero measure.
GapReport ahlfors_gap(const AtomicMeasure& measure, std::span<const Cube> family, std::optional<double> n = std::nullopt);

// Plain-text atom files: header "d n_atoms ahlfors_n", then one line per atom
// "x1 ... xd mass [value]".
struct AtomFile {
  AtomicMeasure measure;
  std::optional<Eigen::VectorXd> values;  // in the measure's sorted order
};

void write_atoms(std::ostream& os, const AtomicMeasure& measure, const Eigen::VectorXd* values = nullptr);
void write_atoms(std::ostream& os, const MuFunction& f);
AtomFile read_atoms(std::istream& is);

}  // namespace oml
