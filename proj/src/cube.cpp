#include "oml/cube.hpp"

#include <cmath>
#include <sstream>

#include "oml/error.hpp"
#include "oml/text.hpp"

namespace oml {

Cube::Cube(Eigen::VectorXd corner, double side) : corner_(std::move(corner)), side_(side) {
  if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("cube side must be positive and finite");
  if (corner_.size() == 0) throw DomainError("cube needs dimension >= 1");
}

bool Cube::contains(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  for (Eigen::Index i = 0; i < corner_.size(); ++i)
    if (!(x[i] >= corner_[i] && x[i] < corner_[i] + side_)) return false;
  return true;
}

bool Cube::contains(const Cube& other) const {
  for (Eigen::Index i = 0; i < corner_.size(); ++i) {
    if (other.corner_[i] < corner_[i]) return false;
    if (other.corner_[i] + other.side_ > corner_[i] + side_) return false;
  }
  return true;
}

bool Cube::intersects(const Cube& other) const {
  for (Eigen::Index i = 0; i < corner_.size(); ++i) {
    if (other.corner_[i] >= corner_[i] + side_) return false;
    if (corner_[i] >= other.corner_[i] + other.side_) return false;
  }
  return true;
}

Cube dilate(const Cube& Q, double r) {
  if (!(r > 0.0)) throw DomainError("dilation factor must be positive");
  if (r == 1.0) return Q;
  const double side = r * Q.side();
  Eigen::VectorXd corner = Q.corner().array() + 0.5 * Q.side() - 0.5 * side;
  return Cube(std::move(corner), side);
}

std::string to_string(const Cube& Q) {
  std::string out;
  for (Eigen::Index i = 0; i < Q.corner().size(); ++i) {
    out += format_real(Q.corner()[i]);
    out += ' ';
  }
  out += "@ ";
  out += format_real(Q.side());
  return out;
}

Cube parse_cube(std::string_view text) {
  auto at = text.find('@');
  if (at == std::string_view::npos) throw ConfigError("cube '" + std::string(text) + "' lacks '@ side'");
  std::istringstream corners{std::string(text.substr(0, at))};
  std::vector<double> c;
  std::string tok;
  while (corners >> tok) c.push_back(parse_real(tok, "cube corner"));
  if (c.empty()) throw ConfigError("cube '" + std::string(text) + "' has no corner coordinates");
  const double side = parse_real(text.substr(at + 1), "cube side");
  if (!(side > 0.0)) throw ConfigError("cube side must be positive");
  return Cube(Eigen::Map<Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())), side);
}

int dyadic_generation(double side) {
  if (!(side > 0.0) || !std::isfinite(side)) throw DomainError("dyadic_generation needs a positive side");
  int e = 0;
  const double m = std::frexp(side, &e);  // side = m 2^e, m in [0.5, 1)
  return m == 0.5 ? 1 - e : -e;
}

double dyadic_side(int k) { return std::ldexp(1.0, -k); }

bool is_dyadic(const Cube& Q) {
  const int k = dyadic_generation(Q.side());
  if (Q.side() != dyadic_side(k)) return false;
  for (Eigen::Index i = 0; i < Q.corner().size(); ++i) {
    const double scaled = std::ldexp(Q.corner()[i], k);
    if (scaled != std::floor(scaled)) return false;
  }
  return true;
}

Cube dyadic_cube_containing(const Eigen::Ref<const Eigen::VectorXd>& x, int k) {
  Eigen::VectorXd corner(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) corner[i] = std::ldexp(std::floor(std::ldexp(x[i], k)), -k);
  return Cube(std::move(corner), dyadic_side(k));
}

namespace {

// Cartesian product of per-axis index ranges, lexicographic (axis 0 slowest).
template <class Emit>
void for_each_multi_index(const std::vector<long long>& lo, const std::vector<long long>& hi, Emit&& emit) {
  const size_t d = lo.size();
  for (size_t i = 0; i < d; ++i)
    if (hi[i] < lo[i]) return;
  std::vector<long long> idx = lo;
  while (true) {
    emit(idx);
    size_t axis = d;
    while (axis > 0) {
      --axis;
      if (++idx[axis] <= hi[axis]) break;
      idx[axis] = lo[axis];
      if (axis == 0) return;
    }
    if (d == 0) return;
  }
}

Cube lattice_cube(const std::vector<long long>& idx, int k) {
  Eigen::VectorXd corner(static_cast<Eigen::Index>(idx.size()));
  for (size_t i = 0; i < idx.size(); ++i) corner[static_cast<Eigen::Index>(i)] = std::ldexp(static_cast<double>(idx[i]), -k);
  return Cube(std::move(corner), dyadic_side(k));
}

}  // namespace

std::vector<Cube> dyadic_children(const Cube& Q) {
  const int d = Q.dim();
  const double half = 0.5 * Q.side();
  std::vector<Cube> out;
  out.reserve(size_t{1} << d);
  for (int mask = 0; mask < (1 << d); ++mask) {
    Eigen::VectorXd corner = Q.corner();
    for (int i = 0; i < d; ++i)
      if (mask & (1 << (d - 1 - i))) corner[i] += half;
    out.emplace_back(std::move(corner), half);
  }
  return out;
}

std::vector<Cube> dyadic_cubes_meeting(const Cube& Q, int k) {
  if (k < kMinGeneration || k > kMaxGeneration) throw PreconditionError("dyadic generation outside [-30, 30]");
  const double h = dyadic_side(k);
  if (!(Q.side() > 0.5 * h && Q.side() <= h))
    throw PreconditionError("dyadic_cubes_meeting: side " + format_real(Q.side()) + " is not in (2^-(k+1), 2^-k] for k = " +
                            std::to_string(k));
  const int d = Q.dim();
  std::vector<long long> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    // open interval (j h, (j+1) h) meets [a, a + l)  <=>  j h < a + l  and  (j+1) h > a
    const double a = std::ldexp(Q.corner()[i], k);
    const double b = std::ldexp(Q.corner()[i] + Q.side(), k);
    lo[static_cast<size_t>(i)] = static_cast<long long>(std::floor(a));
    hi[static_cast<size_t>(i)] = static_cast<long long>(std::ceil(b)) - 1;
  }
  std::vector<Cube> out;
  for_each_multi_index(lo, hi, [&](const std::vector<long long>& idx) { out.push_back(lattice_cube(idx, k)); });
  return out;
}

std::vector<Cube> dyadic_family(const Cube& box, int k_min, int k_max) {
  if (k_min > k_max) throw ConfigError("dyadic_family: k_min > k_max");
  if (k_min < kMinGeneration || k_max > kMaxGeneration) throw ConfigError("dyadic generation outside [-30, 30]");
  std::vector<Cube> out;
  const int d = box.dim();
  for (int k = k_min; k <= k_max; ++k) {
    std::vector<long long> lo(static_cast<size_t>(d)), hi(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
      lo[static_cast<size_t>(i)] = static_cast<long long>(std::floor(std::ldexp(box.corner()[i], k)));
      hi[static_cast<size_t>(i)] = static_cast<long long>(std::ceil(std::ldexp(box.corner()[i] + box.side(), k))) - 1;
    }
    for_each_multi_index(lo, hi, [&](const std::vector<long long>& idx) { out.push_back(lattice_cube(idx, k)); });
  }
  return out;
}

std::vector<Cube> triadic_family(int g_max) {
  if (g_max < 0 || g_max > 18) throw ConfigError("triadic_family: generation must be in [0, 18]");
  std::vector<Cube> out;
  for (int g = 0; g <= g_max; ++g) {
    const long long count = static_cast<long long>(std::llround(std::pow(3.0, g)));
    const double side = 1.0 / static_cast<double>(count);
    for (long long j = 0; j < count; ++j)
      out.emplace_back(Eigen::VectorXd::Constant(1, static_cast<double>(j) / static_cast<double>(count)), side);
  }
  return out;
}

}  // namespace oml
