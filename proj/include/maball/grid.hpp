#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

namespace maball {

inline constexpr int kBoundary = -1;

// One axis direction seen from an interior node: either another interior
// node at distance h, or the sphere |x| = 1 at fractional distance theta*h,
// theta in (0, 1].
struct AxisLink {
  int neighbor = kBoundary;
  double theta = 1.0;
  bool is_boundary() const { return neighbor == kBoundary; }
};

struct StencilEntry {
  int node;
  double weight;
};

// Sphere sample point entering a stencil. The Dirichlet value there is 0
// for the solver, but the weight and location are reported so exactness
// checks can substitute exact boundary data.
struct BoundaryEntry {
  std::array<double, 3> point;
  double weight;
};

// Weighted sum approximating a second derivative d2/dxi dxj.
struct StencilWeights {
  std::vector<StencilEntry> interior;
  std::vector<BoundaryEntry> boundary;
};

// Uniform Cartesian grid restricted to the open unit ball, with
// Shortley-Weller data where a full step leaves the domain.
// Immutable after construction; all queries are read-only.
class Grid {
 public:
  Grid(int dim, double h);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  int size() const { return static_cast<int>(coords_.size()); }

  const std::array<double, 3>& coord(int node) const { return coords_[node]; }
  const std::array<int, 3>& lattice(int node) const { return lattice_[node]; }

  // dir: 0 = -e_axis, 1 = +e_axis.
  const AxisLink& link(int node, int axis, int dir) const {
    return links_[node][axis][dir];
  }

  // Interior node index at lattice point k, or kBoundary.
  int node_at(const std::array<int, 3>& k) const;

  // Stencil for d2u/dxi dxj at an interior node. i == j is the 3-point
  // central stencil with Shortley-Weller correction; i != j is the 4-point
  // cross stencil, one-sided when a corner leaves the ball. All stencils
  // are exact on polynomials of total degree <= 2.
  const StencilWeights& second_derivative_stencil(int node, int i, int j) const;

  double radius_sq(int node) const;

 private:
  void build_nodes();
  void build_links();
  void build_stencils();
  StencilWeights make_pure_stencil(int node, int axis) const;
  StencilWeights make_mixed_stencil(int node, int i, int j) const;

  std::int64_t key(const std::array<int, 3>& k) const;
  int pair_index(int i, int j) const;

  int dim_;
  double h_;
  int kmax_;
  std::vector<std::array<double, 3>> coords_;
  std::vector<std::array<int, 3>> lattice_;
  std::vector<std::array<std::array<AxisLink, 2>, 3>> links_;
  std::vector<std::vector<StencilWeights>> stencils_;  // size() x d(d+1)/2
  std::unordered_map<std::int64_t, int> index_;
};

Grid build_ball_grid(int dim, double h);

}  // namespace maball
