#ifndef HELESHAW_GRID_HPP
#define HELESHAW_GRID_HPP

#include <algorithm>
#include <array>
#include <memory>
#include <span>
#include <vector>

#include "heleshaw/errors.hpp"

namespace heleshaw {

enum class BoundaryTag { Dirichlet, Neumann };

enum class BoundarySelector { FullBoundary, DirichletOnly, NeumannOnly };

/// One axis-aligned boundary face of the rectangle: a point in 1D, a
/// cell-sized segment in 2D.
struct BoundaryFace {
    int axis;    // normal axis: 0 = x, 1 = y
    int side;    // 0 = low coordinate end, 1 = high end
    int index;   // cell index along the tangential axis (0 in 1D)
    BoundaryTag tag;
};

class StructuredGrid;
using GridPtr = std::shared_ptr<const StructuredGrid>;

/// Cell-centered structured grid on an axis-aligned interval (1D) or
/// rectangle (2D). The boundary splits into Dirichlet and Neumann faces;
/// at least one face must be Dirichlet. Immutable after construction.
class StructuredGrid {
public:
    static GridPtr make_1d(double extent, int n_cells,
                           BoundaryTag left, BoundaryTag right);

    static GridPtr make_2d(double extent_x, double extent_y,
                           int nx, int ny,
                           BoundaryTag left, BoundaryTag right,
                           BoundaryTag bottom, BoundaryTag top);

    int dimension() const { return dim_; }
    double extent(int axis) const { return extent_[axis]; }
    int cells(int axis) const { return n_[axis]; }
    double spacing(int axis) const { return h_[axis]; }
    int cell_count() const { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }
    double cell_volume() const { return dim_ == 1 ? h_[0] : h_[0] * h_[1]; }
    /// Smallest spacing over the axes (the "h" of refinement studies).
    double min_spacing() const { return dim_ == 1 ? h_[0] : std::min(h_[0], h_[1]); }

    int cell_index(int i, int j = 0) const { return j * n_[0] + i; }
    std::array<double, 2> cell_center(int idx) const;

    const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }
    bool has_dirichlet() const { return n_dirichlet_ > 0; }
    bool has_neumann() const { return n_neumann_ > 0; }

    /// Midpoint of a boundary face.
    std::array<double, 2> face_center(const BoundaryFace& f) const;
    /// Measure of one boundary face: 1 in 1D, the tangential spacing in 2D.
    double face_area(const BoundaryFace& f) const { return dim_ == 1 ? 1.0 : h_[1 - f.axis]; }

    /// Exact Euclidean distance from a point to the selected boundary subset.
    /// Throws InvalidGeometryError when the selection is empty.
    double boundary_distance(std::array<double, 2> point, BoundarySelector sel) const;

    /// Distance together with its gradient (unit vector pointing away from
    /// the nearest selected face). On the face itself the gradient is the
    /// inward normal.
    struct DistanceGradient {
        double distance;
        std::array<double, 2> gradient;
    };
    DistanceGradient boundary_distance_gradient(std::array<double, 2> point,
                                                BoundarySelector sel) const;

private:
    StructuredGrid() = default;

    int dim_ = 1;
    std::array<double, 2> extent_{1.0, 1.0};
    std::array<int, 2> n_{2, 1};
    std::array<double, 2> h_{0.5, 1.0};
    std::vector<BoundaryFace> faces_;
    int n_dirichlet_ = 0;
    int n_neumann_ = 0;
};

/// Per-cell scalar values attached to a grid. Values must be finite when
/// constructed from a vector; shareable across threads once built.
class ScalarField {
public:
    explicit ScalarField(GridPtr grid, double fill = 0.0);
    ScalarField(GridPtr grid, std::vector<double> values);

    const StructuredGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    int size() const { return static_cast<int>(values_.size()); }
    double operator[](int idx) const { return values_[idx]; }
    double& operator[](int idx) { return values_[idx]; }
    std::span<const double> values() const { return values_; }
    std::vector<double>& raw() { return values_; }

    /// Volume-weighted discrete L1 norm.
    double l1_norm() const;
    double max_norm() const;
    double min_value() const;
    double max_value() const;
    /// Volume-weighted sum (the discrete integral over the domain).
    double integral() const;

private:
    GridPtr grid_;
    std::vector<double> values_;
};

ScalarField operator-(const ScalarField& a, const ScalarField& b);

/// Per-cell Euclidean distance to the selected boundary subset; exact for
/// rectangular domains.
ScalarField distance_to_boundary(const GridPtr& grid, BoundarySelector sel);

/// Boundary cutoff: (1/h) * min(h, d(x, boundary)); ramps linearly from 0
/// on the boundary to 1 at distance h.
ScalarField cutoff_xi_h(const GridPtr& grid, double h);

} // namespace heleshaw

#endif
