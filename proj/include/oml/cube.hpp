#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace oml {

// Axis-parallel half-open cube [a, a + side)^d.
class Cube {
 public:
  Cube(Eigen::VectorXd corner, double side);

  int dim() const noexcept { return static_cast<int>(corner_.size()); }
  const Eigen::VectorXd& corner() const noexcept { return corner_; }
  double side() const noexcept { return side_; }
  Eigen::VectorXd center() const { return corner_.array() + 0.5 * side_; }

  bool contains(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  // other is a subset of *this (exact comparison of the corner coordinates)
  bool contains(const Cube& other) const;
  bool intersects(const Cube& other) const;

  friend bool operator==(const Cube& a, const Cube& b) { return a.side_ == b.side_ && a.corner_ == b.corner_; }

 private:
  Eigen::VectorXd corner_;
  double side_;
};

// Same centre, side r * l(Q).
Cube dilate(const Cube& Q, double r);

// "corner_1 ... corner_d @ side"
std::string to_string(const Cube& Q);
Cube parse_cube(std::string_view text);

// Dyadic lattice anchored at the origin; generations limited to [-30, 30].
inline constexpr int kMinGeneration = -30;
inline constexpr int kMaxGeneration = 30;

// The unique k with 2^{-(k+1)} < side <= 2^{-k}.
int dyadic_generation(double side);
double dyadic_side(int k);
bool is_dyadic(const Cube& Q);
Cube dyadic_cube_containing(const Eigen::Ref<const Eigen::VectorXd>& x, int k);
// The 2^d children in lexicographic corner order.
std::vector<Cube> dyadic_children(const Cube& Q);
// Dyadic cubes of side 2^{-k} whose interiors meet Q, lexicographic corner
// order. Requires 2^{-(k+1)} < l(Q) <= 2^{-k}.
std::vector<Cube> dyadic_cubes_meeting(const Cube& Q, int k);
// All dyadic cubes of generations k_min..k_max that meet `box`.
std::vector<Cube> dyadic_family(const Cube& box, int k_min, int k_max);
// Triadic intervals [j 3^{-g}, (j+1) 3^{-g}) of [0, 1) for g = 0..g_max.
std::vector<Cube> triadic_family(int g_max);

}  // namespace oml
