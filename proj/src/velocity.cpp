#include "heleshaw/velocity.hpp"

#include <cmath>
#include <limits>

namespace heleshaw {

namespace {

int face_count_for(const StructuredGrid& g, int axis) {
    if (g.dimension() == 1) return axis == 0 ? g.cells(0) + 1 : 0;
    if (axis == 0) return (g.cells(0) + 1) * g.cells(1);
    return g.cells(0) * (g.cells(1) + 1);
}

ScalarField conservative_divergence(const GridPtr& grid,
                                    const std::vector<double>& fx,
                                    const std::vector<double>& fy) {
    ScalarField div(grid);
    const int nx = grid->cells(0);
    const double hx = grid->spacing(0);
    if (grid->dimension() == 1) {
        for (int i = 0; i < nx; ++i)
            div[i] = (fx[i + 1] - fx[i]) / hx;
        return div;
    }
    const int ny = grid->cells(1);
    const double hy = grid->spacing(1);
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double dfx = fx[j * (nx + 1) + i + 1] - fx[j * (nx + 1) + i];
            const double dfy = fy[(j + 1) * nx + i] - fy[j * nx + i];
            div[grid->cell_index(i, j)] = dfx / hx + dfy / hy;
        }
    return div;
}

} // namespace

VelocityField::VelocityField(GridPtr grid, std::vector<double> fx, std::vector<double> fy)
    : grid_(std::move(grid)),
      face_x_(std::move(fx)),
      face_y_(std::move(fy)),
      divergence_(conservative_divergence(grid_, face_x_, face_y_)) {
    for (double v : face_x_)
        if (!std::isfinite(v)) throw InvalidParameterError("velocity face values must be finite");
    for (double v : face_y_)
        if (!std::isfinite(v)) throw InvalidParameterError("velocity face values must be finite");
    div_bound_ = divergence_.max_norm();
}

VelocityField VelocityField::zero(GridPtr grid) {
    std::vector<double> fx(face_count_for(*grid, 0), 0.0);
    std::vector<double> fy(face_count_for(*grid, 1), 0.0);
    return VelocityField(std::move(grid), std::move(fx), std::move(fy));
}

VelocityField VelocityField::constant(GridPtr grid, double vx, double vy) {
    std::vector<double> fx(face_count_for(*grid, 0), vx);
    std::vector<double> fy(face_count_for(*grid, 1), vy);
    return VelocityField(std::move(grid), std::move(fx), std::move(fy));
}

VelocityField VelocityField::from_function(GridPtr grid, const PointFunction& f) {
    const StructuredGrid& g = *grid;
    std::vector<double> fx(face_count_for(g, 0));
    std::vector<double> fy(face_count_for(g, 1));
    const int nx = g.cells(0);
    const double hx = g.spacing(0);
    if (g.dimension() == 1) {
        for (int i = 0; i <= nx; ++i)
            fx[i] = f({i * hx, 0.0})[0];
    } else {
        const int ny = g.cells(1);
        const double hy = g.spacing(1);
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i <= nx; ++i)
                fx[j * (nx + 1) + i] = f({i * hx, (j + 0.5) * hy})[0];
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i < nx; ++i)
                fy[j * nx + i] = f({(i + 0.5) * hx, j * hy})[1];
    }
    return VelocityField(std::move(grid), std::move(fx), std::move(fy));
}

VelocityField VelocityField::from_face_values(GridPtr grid,
                                              std::vector<double> face_x,
                                              std::vector<double> face_y) {
    if (static_cast<int>(face_x.size()) != face_count_for(*grid, 0))
        throw InvalidParameterError("x-face value count does not match the grid");
    if (static_cast<int>(face_y.size()) != face_count_for(*grid, 1))
        throw InvalidParameterError("y-face value count does not match the grid");
    return VelocityField(std::move(grid), std::move(face_x), std::move(face_y));
}

int VelocityField::face_count(int axis) const { return face_count_for(*grid_, axis); }

double VelocityField::face_value(int axis, int flat_index) const {
    return axis == 0 ? face_x_[flat_index] : face_y_[flat_index];
}

double VelocityField::face_value_x(int i, int j) const {
    return face_x_[j * (grid_->cells(0) + 1) + i];
}

double VelocityField::face_value_y(int i, int j) const {
    return face_y_[j * grid_->cells(0) + i];
}

const std::vector<double>& VelocityField::face_values(int axis) const {
    return axis == 0 ? face_x_ : face_y_;
}

std::array<double, 2> VelocityField::face_center(int axis, int flat_index) const {
    const StructuredGrid& g = *grid_;
    const double hx = g.spacing(0);
    if (g.dimension() == 1) return {flat_index * hx, 0.0};
    const int nx = g.cells(0);
    const double hy = g.spacing(1);
    if (axis == 0) {
        const int i = flat_index % (nx + 1);
        const int j = flat_index / (nx + 1);
        return {i * hx, (j + 0.5) * hy};
    }
    const int i = flat_index % nx;
    const int j = flat_index / nx;
    return {(i + 0.5) * hx, j * hy};
}

double VelocityField::boundary_normal_velocity(const BoundaryFace& f) const {
    const StructuredGrid& g = *grid_;
    const double sign = f.side == 0 ? -1.0 : 1.0;
    if (g.dimension() == 1)
        return sign * face_x_[f.side == 0 ? 0 : g.cells(0)];
    const int nx = g.cells(0);
    if (f.axis == 0) {
        const int i = f.side == 0 ? 0 : nx;
        return sign * face_x_[f.index * (nx + 1) + i];
    }
    const int j = f.side == 0 ? 0 : g.cells(1);
    return sign * face_y_[j * nx + f.index];
}

double VelocityField::max_norm() const {
    double s = 0.0;
    for (double v : face_x_) s = std::max(s, std::abs(v));
    for (double v : face_y_) s = std::max(s, std::abs(v));
    return s;
}

AdmissibilityReport check_admissibility(const VelocityField& v, double tol) {
    double dir_min = std::numeric_limits<double>::infinity();
    double neu_max = 0.0;
    bool any_dirichlet = false;
    for (const auto& f : v.grid().boundary_faces()) {
        const double vn = v.boundary_normal_velocity(f);
        if (f.tag == BoundaryTag::Dirichlet) {
            dir_min = std::min(dir_min, vn);
            any_dirichlet = true;
        } else {
            neu_max = std::max(neu_max, std::abs(vn));
        }
    }
    if (!any_dirichlet) dir_min = 0.0;
    AdmissibilityReport report;
    report.dirichlet_min_outflux = dir_min;
    report.neumann_max_abs_flux = neu_max;
    report.tolerance = tol;
    report.passed = dir_min >= -tol && neu_max <= tol;
    return report;
}

VelocityField crowd_motion_field(const GridPtr& grid, double blend_width) {
    if (!grid->has_dirichlet())
        throw InvalidGeometryError("crowd motion field needs a Dirichlet escape boundary");
    if (!(blend_width > 0.0))
        throw InvalidParameterError("blend width must be positive");
    const bool has_neumann = grid->has_neumann();
    auto field = [&](std::array<double, 2> x) -> std::array<double, 2> {
        const auto dg = grid->boundary_distance_gradient(x, BoundarySelector::DirichletOnly);
        double ramp = 1.0;
        if (has_neumann) {
            const double dn = grid->boundary_distance(x, BoundarySelector::NeumannOnly);
            ramp = std::min(dn / blend_width, 1.0);
        }
        return {-dg.gradient[0] * ramp, -dg.gradient[1] * ramp};
    };
    return VelocityField::from_function(grid, field);
}

double divergence_theorem_residual(const VelocityField& v) {
    double boundary = 0.0;
    for (const auto& f : v.grid().boundary_faces())
        boundary += v.boundary_normal_velocity(f) * v.grid().face_area(f);
    return v.divergence().integral() - boundary;
}

} // namespace heleshaw
