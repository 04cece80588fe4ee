#include "heleshaw/linalg.hpp"

#include <stdexcept>

namespace heleshaw {

TridiagonalSolver::TridiagonalSolver(std::vector<double> sub, std::vector<double> diag,
                                     std::vector<double> sup)
    : sub_(std::move(sub)), diag_(std::move(diag)), sup_(std::move(sup)),
      n_(static_cast<int>(diag_.size())) {
    // LU factorization: sub_[i] becomes the multiplier for row i.
    for (int i = 1; i < n_; ++i) {
        const double w = sub_[i] / diag_[i - 1];
        sub_[i] = w;
        diag_[i] -= w * sup_[i - 1];
    }
}

std::vector<double> TridiagonalSolver::solve(std::span<const double> rhs) const {
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 1; i < n_; ++i) x[i] -= sub_[i] * x[i - 1];
    x[n_ - 1] /= diag_[n_ - 1];
    for (int i = n_ - 2; i >= 0; --i) x[i] = (x[i] - sup_[i] * x[i + 1]) / diag_[i];
    return x;
}

struct SparseDirectSolver::Impl {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

SparseDirectSolver::SparseDirectSolver(const Eigen::SparseMatrix<double>& matrix)
    : impl_(std::make_unique<Impl>()) {
    Eigen::SparseMatrix<double> m = matrix;
    m.makeCompressed();
    impl_->lu.compute(m);
    if (impl_->lu.info() != Eigen::Success)
        throw std::runtime_error("sparse LU factorization failed");
}

SparseDirectSolver::~SparseDirectSolver() = default;
SparseDirectSolver::SparseDirectSolver(SparseDirectSolver&&) noexcept = default;
SparseDirectSolver& SparseDirectSolver::operator=(SparseDirectSolver&&) noexcept = default;

std::vector<double> SparseDirectSolver::solve(std::span<const double> rhs) const {
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::VectorXd x = impl_->lu.solve(b);
    return std::vector<double>(x.data(), x.data() + x.size());
}

} // namespace heleshaw
