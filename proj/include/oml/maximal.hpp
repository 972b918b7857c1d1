#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oml/cube.hpp"
#include "oml/measure.hpp"
#include "oml/young.hpp"

namespace oml {

// Finite stand-in for "all cubes containing x": for every generation
// k in [k_min, k_max] the dyadic lattice of side 2^{-k} and its translates by
// (s_1, ..., s_d) / shifts_per_axis * 2^{-k}, s_i = 0..shifts_per_axis-1,
// restricted to cells meeting clip_box.
struct CubeFamilySpec {
  int k_min = 0;
  int k_max = 0;
  int shifts_per_axis = 3;
  Cube clip_box;

  void validate() const;
};

// Box scale down to atom spacing, three shifts per axis.
CubeFamilySpec default_family(const AtomicMeasure& mu, int shifts_per_axis = 3);

class LatticeWalker;

// Nonempty cell of one translated lattice.
class FamilyCell {
 public:
  const Cube& cube() const noexcept { return cube_; }
  int generation() const noexcept { return k_; }
  std::span<const Eigen::Index> atoms() const noexcept { return atoms_; }
  double mass() const noexcept { return mass_; }

  // Mass and value integral of the concentric (2r+1)-dilate, assembled from
  // the neighbouring cells of the same lattice; atoms outside clip_box count.
  double dilated_mass(int r) const;
  double dilated_integral(const Eigen::VectorXd& values, int r) const;

 private:
  friend class LatticeWalker;
  FamilyCell(const LatticeWalker& lattice, Cube cube, int k, std::span<const Eigen::Index> atoms, double mass,
             std::span<const long long> key)
      : lattice_(&lattice), cube_(std::move(cube)), k_(k), atoms_(atoms), mass_(mass), key_(key) {}

  const LatticeWalker* lattice_;
  Cube cube_;
  int k_;
  std::span<const Eigen::Index> atoms_;
  double mass_;
  std::span<const long long> key_;
};

// Visits every nonempty family cell: generations ascending, then shift
// vectors and cell keys in lexicographic order.
void for_each_cell(const AtomicMeasure& mu, const CubeFamilySpec& family,
                   const std::function<void(const FamilyCell&)>& visit);

// Cubes of the nonempty family cells, in visiting order.
std::vector<Cube> family_cubes(const AtomicMeasure& mu, const CubeFamilySpec& family);

enum class OperatorTag { MB, MalphaB, MalphaRadial, Mmu, MalphaWTL };
std::string_view to_string(OperatorTag tag);

struct MaximalField {
  OperatorTag tag;
  double alpha;
  std::optional<YoungFunction> B;
  MuFunction values;
  CubeFamilySpec family;
  std::vector<Cube> argmax;  // maximizing cube per atom, first in visiting order
};

// sup over family cubes Q containing x of l(Q)^alpha ||f||_{B,Q}; 0 <= alpha < n.
// Every atom must lie in some family cell (CoverageError).
MaximalField m_alpha_B(const MuFunction& f, double alpha, const YoungFunction& B, const CubeFamilySpec& family);
// l(Q)^alpha (l(Q)^{-n} int_Q |f|)
MaximalField m_radial_alpha(const MuFunction& f, double alpha, const CubeFamilySpec& family);
// mu(Q)^{-1} int_Q |f|
MaximalField m_mu(const MuFunction& f, const CubeFamilySpec& family);
// mu(5Q)^{alpha-1} int_Q |f|, 0 <= alpha < 1.
MaximalField m_wtl_alpha(const MuFunction& f, double alpha, const CubeFamilySpec& family);

// mu({x : field(x) > t})
double level_set_measure(const MuFunction& field, double t);

// Sidecar listing "atom,value,cube" per atom.
void write_argmax_csv(std::ostream& os, const MaximalField& field);

}  // namespace oml
