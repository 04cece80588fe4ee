#ifndef HELESHAW_VELOCITY_HPP
#define HELESHAW_VELOCITY_HPP

#include <functional>
#include <vector>

#include "heleshaw/grid.hpp"

namespace heleshaw {

/// Outcome of the outward-pointing admissibility check: the drift must not
/// enter through the Dirichlet part and must be tangential on the Neumann
/// part.
struct AdmissibilityReport {
    double dirichlet_min_outflux;   // min of V.nu over Dirichlet faces
    double neumann_max_abs_flux;    // max of |V.nu| over Neumann faces
    double tolerance;
    bool passed;
};

/// Autonomous drift field stored as normal components on cell faces
/// (staggered layout), with its conservative discrete divergence cached at
/// construction. Immutable and shareable once built.
class VelocityField {
public:
    using PointFunction = std::function<std::array<double, 2>(std::array<double, 2>)>;

    static VelocityField zero(GridPtr grid);
    static VelocityField constant(GridPtr grid, double vx, double vy = 0.0);
    /// Samples the normal component of `f` at every face center.
    static VelocityField from_function(GridPtr grid, const PointFunction& f);
    static VelocityField from_face_values(GridPtr grid,
                                          std::vector<double> face_x,
                                          std::vector<double> face_y = {});

    const StructuredGrid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }

    int face_count(int axis) const;
    double face_value(int axis, int flat_index) const;
    double face_value_x(int i, int j = 0) const;
    double face_value_y(int i, int j) const;
    const std::vector<double>& face_values(int axis) const;
    std::array<double, 2> face_center(int axis, int flat_index) const;

    /// Normal component V.nu at a boundary face (positive = outward).
    double boundary_normal_velocity(const BoundaryFace& f) const;

    const ScalarField& divergence() const { return divergence_; }
    double div_bound() const { return div_bound_; }
    double max_norm() const;

private:
    VelocityField(GridPtr grid, std::vector<double> fx, std::vector<double> fy);
    GridPtr grid_;
    std::vector<double> face_x_;
    std::vector<double> face_y_;
    ScalarField divergence_;
    double div_bound_ = 0.0;
};

AdmissibilityReport check_admissibility(const VelocityField& v, double tol);

/// Crowd-motion drift: unit speed along the geodesic toward the Dirichlet
/// part, ramped down to zero within `blend_width` of the Neumann part so
/// the admissibility condition holds.
VelocityField crowd_motion_field(const GridPtr& grid, double blend_width);

/// Difference of boundary-flux sum and divergence integral; zero up to
/// roundoff by construction of the conservative divergence.
double divergence_theorem_residual(const VelocityField& v);

} // namespace heleshaw

#endif
