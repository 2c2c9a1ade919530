#include "maball/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "maball/errors.hpp"

namespace maball {

Grid::Grid(int dim, double h) : dim_(dim), h_(h) {
  if (dim != 2 && dim != 3) throw ConfigError("grid: dim must be 2 or 3");
  if (!(h > 0.0) || h > 0.5) throw ConfigError("grid: need 0 < h <= 1/2");
  kmax_ = static_cast<int>(std::floor(1.0 / h)) + 1;
  build_nodes();
  build_links();
  build_stencils();
}

std::int64_t Grid::key(const std::array<int, 3>& k) const {
  const std::int64_t base = 2 * kmax_ + 3;
  std::int64_t v = 0;
  for (int a = 0; a < 3; ++a) v = v * base + (k[a] + kmax_ + 1);
  return v;
}

int Grid::pair_index(int i, int j) const {
  // i <= j, packed upper triangle.
  return i * dim_ - i * (i - 1) / 2 + (j - i);
}

void Grid::build_nodes() {
  // Lexicographic loop over lattice points; ordering is reproducible.
  std::array<int, 3> k{0, 0, 0};
  const int lo = -kmax_, hi = kmax_;
  const int z_lo = dim_ == 3 ? lo : 0, z_hi = dim_ == 3 ? hi : 0;
  for (k[0] = lo; k[0] <= hi; ++k[0]) {
    for (k[1] = lo; k[1] <= hi; ++k[1]) {
      for (k[2] = z_lo; k[2] <= z_hi; ++k[2]) {
        const double r2 =
            (static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
             static_cast<double>(k[2]) * k[2]) *
            h_ * h_;
        if (r2 < 1.0) {
          index_.emplace(key(k), static_cast<int>(coords_.size()));
          lattice_.push_back(k);
          coords_.push_back({k[0] * h_, k[1] * h_, k[2] * h_});
        }
      }
    }
  }
}

int Grid::node_at(const std::array<int, 3>& k) const {
  auto it = index_.find(key(k));
  return it == index_.end() ? kBoundary : it->second;
}

double Grid::radius_sq(int node) const {
  const auto& k = lattice_[node];
  return (static_cast<double>(k[0]) * k[0] + static_cast<double>(k[1]) * k[1] +
          static_cast<double>(k[2]) * k[2]) *
         h_ * h_;
}

void Grid::build_links() {
  links_.resize(coords_.size());
  for (int n = 0; n < size(); ++n) {
    const double r2 = radius_sq(n);
    for (int axis = 0; axis < dim_; ++axis) {
      for (int dir = 0; dir < 2; ++dir) {
        const int s = dir == 0 ? -1 : 1;
        std::array<int, 3> kn = lattice_[n];
        kn[axis] += s;
        AxisLink link;
        link.neighbor = node_at(kn);
        if (link.neighbor == kBoundary) {
          // Exact sphere intersection: |x + theta h s e| = 1, quadratic in
          // theta. p = s * x_axis, theta = (-p + sqrt(1 - |x|^2 + p^2)) / h.
          const double p = s * coords_[n][axis];
          double theta = (-p + std::sqrt(1.0 - r2 + p * p)) / h_;
          if (theta > 1.0) theta = 1.0;  // roundoff when the neighbor sits on the sphere
          if (!(theta > 0.0))
            throw std::logic_error("grid: degenerate boundary hit");
          link.theta = theta;
        } else {
          link.theta = 1.0;
        }
        links_[n][axis][dir] = link;
      }
    }
  }
}

StencilWeights Grid::make_pure_stencil(int node, int axis) const {
  const AxisLink& lo = links_[node][axis][0];
  const AxisLink& hi = links_[node][axis][1];
  const double tm = lo.theta, tp = hi.theta;
  const double h2 = h_ * h_;
  const double wm = 2.0 / (h2 * tm * (tm + tp));
  const double wc = -2.0 / (h2 * tm * tp);
  const double wp = 2.0 / (h2 * tp * (tm + tp));

  StencilWeights st;
  st.interior.push_back({node, wc});
  auto add = [&](const AxisLink& l, int s, double w) {
    if (!l.is_boundary()) {
      st.interior.push_back({l.neighbor, w});
    } else {
      std::array<double, 3> p = coords_[node];
      p[axis] += s * l.theta * h_;
      st.boundary.push_back({p, w});
    }
  };
  add(lo, -1, wm);
  add(hi, +1, wp);
  return st;
}

StencilWeights Grid::make_mixed_stencil(int node, int i, int j) const {
  const auto& k = lattice_[node];
  auto shifted = [&](int si, int sj) {
    std::array<int, 3> kk = k;
    kk[i] += si;
    kk[j] += sj;
    return node_at(kk);
  };

  const double h2 = h_ * h_;
  StencilWeights st;

  // Centered 4-point cross if every corner stays in the ball.
  const int pp = shifted(1, 1), pm = shifted(1, -1), mp = shifted(-1, 1),
            mm = shifted(-1, -1);
  if (pp != kBoundary && pm != kBoundary && mp != kBoundary && mm != kBoundary) {
    const double w = 1.0 / (4.0 * h2);
    st.interior = {{pp, w}, {mm, w}, {pm, -w}, {mp, -w}};
    return st;
  }

  // One-sided fallback, first-order but still exact on quadratics.
  // Prefer shifting toward the origin, then the remaining sign pairs in a
  // fixed order so the choice is deterministic.
  const int si0 = coords_[node][i] > 0.0 ? -1 : 1;
  const int sj0 = coords_[node][j] > 0.0 ? -1 : 1;
  const std::array<std::array<int, 2>, 4> combos{
      {{si0, sj0}, {si0, -sj0}, {-si0, sj0}, {-si0, -sj0}}};
  for (const auto& c : combos) {
    const int si = c[0], sj = c[1];
    const int corner = shifted(si, sj), ei = shifted(si, 0), ej = shifted(0, sj);
    if (corner == kBoundary || ei == kBoundary || ej == kBoundary) continue;
    const double w = static_cast<double>(si * sj) / h2;
    st.interior = {{corner, w}, {node, w}, {ei, -w}, {ej, -w}};
    return st;
  }
  // Cannot happen for h <= 1/2 with h = 2^-k; guard against exotic spacings.
  throw std::logic_error("grid: no admissible mixed-derivative stencil");
}

void Grid::build_stencils() {
  const int npairs = dim_ * (dim_ + 1) / 2;
  stencils_.resize(coords_.size());
  for (int n = 0; n < size(); ++n) {
    stencils_[n].resize(npairs);
    for (int i = 0; i < dim_; ++i) {
      for (int j = i; j < dim_; ++j) {
        stencils_[n][pair_index(i, j)] =
            i == j ? make_pure_stencil(n, i) : make_mixed_stencil(n, i, j);
      }
    }
  }
}

const StencilWeights& Grid::second_derivative_stencil(int node, int i, int j) const {
  if (i > j) std::swap(i, j);
  return stencils_[node][pair_index(i, j)];
}

Grid build_ball_grid(int dim, double h) { return Grid(dim, h); }

}  // namespace maball
