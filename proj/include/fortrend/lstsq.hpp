#ifndef FORTREND_LSTSQ_HPP
#define FORTREND_LSTSQ_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fortrend {

struct LstsqResult {
    Eigen::VectorXd coef;
    double sse = 0.0;
    Eigen::Index rank = 0;
};

/// Minimizes ||A x - b||^2 with a column-equilibrated rank-revealing QR.
/// Columns whose norm falls below 1e-10 times the largest column norm, or
/// that the pivoting finds linearly dependent, raise DegenerateFitError
/// naming the offending columns.
LstsqResult solve_least_squares(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b,
                                const std::vector<std::string>& col_names);

} // namespace fortrend

#endif
