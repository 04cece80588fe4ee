#include "heleshaw/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace heleshaw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidGeometryError(msg);
}

} // namespace

GridPtr StructuredGrid::make_1d(double extent, int n_cells,
                                BoundaryTag left, BoundaryTag right) {
    require(extent > 0.0, "grid extent must be positive");
    require(n_cells >= 2, "grid needs at least 2 cells per axis");
    auto g = std::shared_ptr<StructuredGrid>(new StructuredGrid());
    g->dim_ = 1;
    g->extent_ = {extent, 1.0};
    g->n_ = {n_cells, 1};
    g->h_ = {extent / n_cells, 1.0};
    g->faces_.push_back({0, 0, 0, left});
    g->faces_.push_back({0, 1, 0, right});
    for (const auto& f : g->faces_)
        (f.tag == BoundaryTag::Dirichlet ? g->n_dirichlet_ : g->n_neumann_)++;
    require(g->n_dirichlet_ > 0, "boundary must contain at least one Dirichlet face");
    return g;
}

GridPtr StructuredGrid::make_2d(double extent_x, double extent_y,
                                int nx, int ny,
                                BoundaryTag left, BoundaryTag right,
                                BoundaryTag bottom, BoundaryTag top) {
    require(extent_x > 0.0 && extent_y > 0.0, "grid extents must be positive");
    require(nx >= 2 && ny >= 2, "grid needs at least 2 cells per axis");
    auto g = std::shared_ptr<StructuredGrid>(new StructuredGrid());
    g->dim_ = 2;
    g->extent_ = {extent_x, extent_y};
    g->n_ = {nx, ny};
    g->h_ = {extent_x / nx, extent_y / ny};
    for (int j = 0; j < ny; ++j) g->faces_.push_back({0, 0, j, left});
    for (int j = 0; j < ny; ++j) g->faces_.push_back({0, 1, j, right});
    for (int i = 0; i < nx; ++i) g->faces_.push_back({1, 0, i, bottom});
    for (int i = 0; i < nx; ++i) g->faces_.push_back({1, 1, i, top});
    for (const auto& f : g->faces_)
        (f.tag == BoundaryTag::Dirichlet ? g->n_dirichlet_ : g->n_neumann_)++;
    require(g->n_dirichlet_ > 0, "boundary must contain at least one Dirichlet face");
    return g;
}

std::array<double, 2> StructuredGrid::cell_center(int idx) const {
    const int i = idx % n_[0];
    const int j = idx / n_[0];
    return {(i + 0.5) * h_[0], dim_ == 1 ? 0.0 : (j + 0.5) * h_[1]};
}

std::array<double, 2> StructuredGrid::face_center(const BoundaryFace& f) const {
    const double coord = f.side == 0 ? 0.0 : extent_[f.axis];
    if (dim_ == 1) return {coord, 0.0};
    const int t = 1 - f.axis;
    const double tangential = (f.index + 0.5) * h_[t];
    return f.axis == 0 ? std::array<double, 2>{coord, tangential}
                       : std::array<double, 2>{tangential, coord};
}

namespace {

// Distance from a point to one boundary face (a point in 1D, an
// axis-aligned segment in 2D), plus the corresponding nearest point.
struct NearestPoint {
    double distance;
    std::array<double, 2> point;
};

NearestPoint nearest_on_face(const StructuredGrid& g, const BoundaryFace& f,
                             std::array<double, 2> p) {
    const double coord = f.side == 0 ? 0.0 : g.extent(f.axis);
    if (g.dimension() == 1) {
        return {std::abs(p[0] - coord), {coord, 0.0}};
    }
    const int t = 1 - f.axis;
    const double lo = f.index * g.spacing(t);
    const double hi = (f.index + 1) * g.spacing(t);
    const double tang = std::clamp(p[t], lo, hi);
    std::array<double, 2> q{};
    q[f.axis] = coord;
    q[t] = tang;
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    return {std::hypot(dx, dy), q};
}

} // namespace

double StructuredGrid::boundary_distance(std::array<double, 2> point,
                                         BoundarySelector sel) const {
    return boundary_distance_gradient(point, sel).distance;
}

StructuredGrid::DistanceGradient
StructuredGrid::boundary_distance_gradient(std::array<double, 2> point,
                                           BoundarySelector sel) const {
    if (sel == BoundarySelector::DirichletOnly && n_dirichlet_ == 0)
        throw InvalidGeometryError("distance to Dirichlet boundary requested but no face is tagged Dirichlet");
    if (sel == BoundarySelector::NeumannOnly && n_neumann_ == 0)
        throw InvalidGeometryError("distance to Neumann boundary requested but no face is tagged Neumann");

    double best = std::numeric_limits<double>::infinity();
    const BoundaryFace* best_face = nullptr;
    std::array<double, 2> best_point{};
    for (const auto& f : faces_) {
        if (sel == BoundarySelector::DirichletOnly && f.tag != BoundaryTag::Dirichlet)
            continue;
        if (sel == BoundarySelector::NeumannOnly && f.tag != BoundaryTag::Neumann)
            continue;
        const auto np = nearest_on_face(*this, f, point);
        if (np.distance < best) {
            best = np.distance;
            best_face = &f;
            best_point = np.point;
        }
    }

    std::array<double, 2> grad{0.0, 0.0};
    if (best > 0.0) {
        grad[0] = (point[0] - best_point[0]) / best;
        grad[1] = (point[1] - best_point[1]) / best;
    } else if (best_face != nullptr) {
        // On the face: d grows inward, so the gradient is the inward normal.
        grad[best_face->axis] = best_face->side == 0 ? 1.0 : -1.0;
    }
    return {best, grad};
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->cell_count(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_->cell_count())
        throw InvalidParameterError("field value count does not match the grid cell count");
    for (double v : values_)
        if (!std::isfinite(v))
            throw InvalidParameterError("field values must be finite");
}

double ScalarField::l1_norm() const {
    double s = 0.0;
    for (double v : values_) s += std::abs(v);
    return s * grid_->cell_volume();
}

double ScalarField::max_norm() const {
    double s = 0.0;
    for (double v : values_) s = std::max(s, std::abs(v));
    return s;
}

double ScalarField::min_value() const {
    return *std::min_element(values_.begin(), values_.end());
}

double ScalarField::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

double ScalarField::integral() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s * grid_->cell_volume();
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    ScalarField out(a.grid_ptr());
    for (int c = 0; c < a.size(); ++c) out[c] = a[c] - b[c];
    return out;
}

ScalarField distance_to_boundary(const GridPtr& grid, BoundarySelector sel) {
    ScalarField d(grid);
    for (int c = 0; c < d.size(); ++c)
        d[c] = grid->boundary_distance(grid->cell_center(c), sel);
    return d;
}

ScalarField cutoff_xi_h(const GridPtr& grid, double h) {
    if (!(h > 0.0)) throw InvalidParameterError("cutoff width h must be positive");
    ScalarField xi(grid);
    for (int c = 0; c < xi.size(); ++c) {
        const double d = grid->boundary_distance(grid->cell_center(c),
                                                 BoundarySelector::FullBoundary);
        xi[c] = std::min(h, d) / h;
    }
    return xi;
}

} // namespace heleshaw
