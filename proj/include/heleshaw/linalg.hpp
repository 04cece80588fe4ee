#ifndef HELESHAW_LINALG_HPP
#define HELESHAW_LINALG_HPP

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Sparse>

namespace heleshaw {

/// Thomas algorithm for tridiagonal systems. No pivoting: callers pass
/// diagonally dominant M-matrices.
class TridiagonalSolver {
public:
    TridiagonalSolver(std::vector<double> sub, std::vector<double> diag,
                      std::vector<double> sup);

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    std::vector<double> sub_, diag_, sup_;   // factored in-place
    int n_;
};

/// Direct sparse solve (LU with column pivoting). Factorized once,
/// reusable for repeated right-hand sides.
class SparseDirectSolver {
public:
    explicit SparseDirectSolver(const Eigen::SparseMatrix<double>& matrix);
    ~SparseDirectSolver();
    SparseDirectSolver(SparseDirectSolver&&) noexcept;
    SparseDirectSolver& operator=(SparseDirectSolver&&) noexcept;

    std::vector<double> solve(std::span<const double> rhs) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace heleshaw

#endif
