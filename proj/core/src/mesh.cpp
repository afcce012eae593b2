#include "vsdg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace vsdg {

CartesianMesh2D::CartesianMesh2D(Rectangle domain, std::array<int, 2> cells,
                                 std::array<bool, 2> periodic)
    : domain_(domain), cells_(cells), periodic_(periodic) {
  for (int d = 0; d < 2; ++d) {
    if (cells_[d] < 1) {
      std::ostringstream msg;
      msg << "mesh: cell count on axis " << d << " must be >= 1, got " << cells_[d];
      throw std::invalid_argument(msg.str());
    }
    const double len = domain_.upper[d] - domain_.lower[d];
    if (!(len > 0.0) || !std::isfinite(len)) {
      std::ostringstream msg;
      msg << "mesh: degenerate domain on axis " << d << " [" << domain_.lower[d] << ", "
          << domain_.upper[d] << "]";
      throw std::invalid_argument(msg.str());
    }
    width_[d] = len / cells_[d];
  }
  build_edges();
}

Vec2 CartesianMesh2D::cell_lower(int cell) const {
  const auto [i0, i1] = cell_position(cell);
  return {domain_.lower[0] + i0 * width_[0], domain_.lower[1] + i1 * width_[1]};
}

Vec2 CartesianMesh2D::map_to_physical(int cell, const Vec2& xi) const {
  const Vec2 lo = cell_lower(cell);
  return {lo[0] + 0.5 * (xi[0] + 1.0) * width_[0], lo[1] + 0.5 * (xi[1] + 1.0) * width_[1]};
}

int CartesianMesh2D::neighbor(int cell, int axis, int side) const {
  auto pos = cell_position(cell);
  int j = pos[axis] + side;
  if (j < 0 || j >= cells_[axis]) {
    if (!periodic_[axis]) return -1;
    j = (j + cells_[axis]) % cells_[axis];
  }
  pos[axis] = j;
  return cell_index(pos[0], pos[1]);
}

int CartesianMesh2D::num_boundary_edges() const {
  int n = 0;
  for (const auto& e : edges_) n += e.is_boundary ? 1 : 0;
  return n;
}

void CartesianMesh2D::build_edges() {
  edges_.clear();
  for (int axis = 0; axis < 2; ++axis) {
    const int other = 1 - axis;
    const int n_along = cells_[axis];
    const int lines = periodic_[axis] ? n_along : n_along + 1;
    for (int k = 0; k < cells_[other]; ++k) {
      for (int j = 0; j < lines; ++j) {
        Edge e;
        e.axis = axis;
        std::array<int, 2> lo{}, hi{};
        lo[other] = hi[other] = k;
        if (periodic_[axis]) {
          lo[axis] = (j - 1 + n_along) % n_along;
          hi[axis] = j;
          e.minus_cell = cell_index(lo[0], lo[1]);
          e.plus_cell = cell_index(hi[0], hi[1]);
          e.normal[axis] = 1.0;
          e.position = domain_.lower[axis] + j * width_[axis];
        } else if (j == 0) {
          hi[axis] = 0;
          e.minus_cell = cell_index(hi[0], hi[1]);
          e.normal[axis] = -1.0;
          e.is_boundary = true;
          e.position = domain_.lower[axis];
        } else if (j == n_along) {
          lo[axis] = n_along - 1;
          e.minus_cell = cell_index(lo[0], lo[1]);
          e.normal[axis] = 1.0;
          e.is_boundary = true;
          e.position = domain_.upper[axis];
        } else {
          lo[axis] = j - 1;
          hi[axis] = j;
          e.minus_cell = cell_index(lo[0], lo[1]);
          e.plus_cell = cell_index(hi[0], hi[1]);
          e.normal[axis] = 1.0;
          e.position = domain_.lower[axis] + j * width_[axis];
        }
        edges_.push_back(e);
      }
    }
  }
  // Axis-0 edges were generated with j fastest inside k; that is the
  // documented (j0 fastest, i1) order. For axis 1 the loop above yields
  // (j1 fastest, i0); reorder to (i0 fastest, j1).
  const int n0 = periodic_[0] ? cells_[0] * cells_[1] : (cells_[0] + 1) * cells_[1];
  const int lines1 = periodic_[1] ? cells_[1] : cells_[1] + 1;
  std::vector<Edge> axis1(edges_.begin() + n0, edges_.end());
  for (int i0 = 0; i0 < cells_[0]; ++i0)
    for (int j1 = 0; j1 < lines1; ++j1) edges_[n0 + i0 + cells_[0] * j1] = axis1[j1 + lines1 * i0];
}

CartesianMesh2D build_mesh(const Rectangle& domain, std::array<int, 2> cells,
                           std::array<bool, 2> periodic) {
  return CartesianMesh2D(domain, cells, periodic);
}

PhaseMesh build_phase_mesh(CartesianMesh2D xmesh, CartesianMesh2D vmesh) {
  if (!xmesh.periodic()[0] || !xmesh.periodic()[1])
    throw std::invalid_argument("phase mesh: x-mesh must be periodic on both axes");
  if (vmesh.periodic()[0] || vmesh.periodic()[1])
    throw std::invalid_argument("phase mesh: v-mesh must not be periodic");
  for (int d = 0; d < 2; ++d) {
    const int n = vmesh.cells_per_axis()[d];
    if (n % 2 != 0) {
      std::ostringstream msg;
      msg << "phase mesh: v-mesh needs an even cell count per axis (axis " << d << " has " << n
          << ") so that v_" << d << " = 0 lies on a mesh line";
      throw std::invalid_argument(msg.str());
    }
    const double lo = vmesh.domain().lower[d];
    const double hi = vmesh.domain().upper[d];
    if (lo < 0.0 && hi > 0.0) {
      const double s = -lo / vmesh.cell_width()[d];
      if (std::abs(s - std::round(s)) > 1e-10 * std::max(1.0, s))
        throw std::invalid_argument("phase mesh: v = 0 does not lie on a v-mesh line");
    }
  }
  return PhaseMesh{std::move(xmesh), std::move(vmesh)};
}

}  // namespace vsdg
