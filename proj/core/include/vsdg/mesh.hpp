#pragma once

#include <array>
#include <vector>

namespace vsdg {

using Vec2 = std::array<double, 2>;

/// Axis-aligned rectangle [lower[0], upper[0]] x [lower[1], upper[1]].
struct Rectangle {
  Vec2 lower;
  Vec2 upper;
};

/// An edge of a Cartesian mesh. Axes are 0-based: axis 0 edges have normal
/// +-e_0. For an interior (or periodic) edge the minus cell sits on the low
/// side, so `normal` is the outward normal of the minus cell (n-) and points
/// into the plus cell. For a boundary edge only `minus_cell` is set and
/// `normal` is outward.
struct Edge {
  int axis = 0;
  int minus_cell = -1;
  int plus_cell = -1;
  Vec2 normal{0.0, 0.0};
  bool is_boundary = false;
  /// Coordinate of the edge line along `axis`, measured on the minus side.
  double position = 0.0;
};

/// Uniform tensor-product mesh of a rectangle.
///
/// Cells are numbered lexicographically with axis 0 fastest:
/// cell = i0 + N0 * i1. Edges normal to axis 0 come first, numbered
/// (j0 fastest, i1), followed by the edges normal to axis 1, numbered
/// (i0 fastest, j1). On a periodic axis edge j = 0 is the wrap edge whose
/// minus cell is the last cell and whose plus cell is the first one.
class CartesianMesh2D {
 public:
  CartesianMesh2D(Rectangle domain, std::array<int, 2> cells,
                  std::array<bool, 2> periodic);

  const Rectangle& domain() const { return domain_; }
  const std::array<int, 2>& cells_per_axis() const { return cells_; }
  const std::array<bool, 2>& periodic() const { return periodic_; }
  const Vec2& cell_width() const { return width_; }
  double max_width() const { return width_[0] > width_[1] ? width_[0] : width_[1]; }
  double cell_area() const { return width_[0] * width_[1]; }

  int num_cells() const { return cells_[0] * cells_[1]; }
  int cell_index(int i0, int i1) const { return i0 + cells_[0] * i1; }
  std::array<int, 2> cell_position(int cell) const {
    return {cell % cells_[0], cell / cells_[0]};
  }
  /// Lower-left corner of a cell.
  Vec2 cell_lower(int cell) const;
  /// Maps reference coordinates in [-1,1]^2 to physical coordinates.
  Vec2 map_to_physical(int cell, const Vec2& xi) const;

  /// Cell across the face of `cell` normal to `axis`; `side` is -1 (low) or
  /// +1 (high). Returns -1 when the face lies on a non-periodic boundary.
  int neighbor(int cell, int axis, int side) const;

  const std::vector<Edge>& edges() const { return edges_; }
  int num_boundary_edges() const;

 private:
  void build_edges();

  Rectangle domain_;
  std::array<int, 2> cells_;
  std::array<bool, 2> periodic_;
  Vec2 width_;
  std::vector<Edge> edges_;
};

/// Validates the arguments and builds a CartesianMesh2D. Throws
/// std::invalid_argument on a non-positive cell count or a degenerate domain.
CartesianMesh2D build_mesh(const Rectangle& domain, std::array<int, 2> cells,
                           std::array<bool, 2> periodic);

/// Product mesh T_x x T_v. Phase elements are numbered ix * Nv + iv.
struct PhaseMesh {
  CartesianMesh2D xmesh;
  CartesianMesh2D vmesh;

  int num_elements() const { return xmesh.num_cells() * vmesh.num_cells(); }
  int element_index(int ix, int iv) const { return ix * vmesh.num_cells() + iv; }
  double h_x() const { return xmesh.max_width(); }
  double h_v() const { return vmesh.max_width(); }
  double h() const { return h_x() > h_v() ? h_x() : h_v(); }
};

/// Requires a fully periodic x-mesh and a non-periodic v-mesh with an even
/// number of cells per axis whose lines contain v_i = 0, so that no velocity
/// component changes sign inside a velocity cell.
PhaseMesh build_phase_mesh(CartesianMesh2D xmesh, CartesianMesh2D vmesh);

}  // namespace vsdg
