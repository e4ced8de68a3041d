#include "fortrend/lstsq.hpp"

#include "fortrend/errors.hpp"

namespace fortrend {

LstsqResult solve_least_squares(const Eigen::MatrixXd& A,
                                const Eigen::VectorXd& b,
                                const std::vector<std::string>& col_names) {
    const Eigen::Index n = A.rows(), p = A.cols();

    Eigen::VectorXd norms = A.colwise().norm();
    double max_norm = norms.maxCoeff();
    if (max_norm == 0.0)
        throw DegenerateFitError("design matrix is identically zero");

    std::string dead;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (norms[j] <= 1e-10 * max_norm) {
            if (!dead.empty()) dead += ", ";
            dead += col_names[static_cast<std::size_t>(j)];
        }
    }
    if (!dead.empty())
        throw DegenerateFitError("degenerate fit: column(s) " + dead +
                                 " are (numerically) zero");

    // Equilibrate columns to unit norm before the rank-revealing QR.
    Eigen::MatrixXd As = A;
    for (Eigen::Index j = 0; j < p; ++j) As.col(j) /= norms[j];

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(As);
    qr.setThreshold(1e-10);
    if (qr.rank() < p) {
        // Pivot columns beyond the numerical rank are the dependent ones.
        const auto& perm = qr.colsPermutation().indices();
        std::string names;
        for (Eigen::Index j = qr.rank(); j < p; ++j) {
            if (!names.empty()) names += ", ";
            names += col_names[static_cast<std::size_t>(perm[j])];
        }
        throw DegenerateFitError("degenerate fit: column(s) " + names +
                                 " are collinear with the others");
    }

    Eigen::VectorXd xs = qr.solve(b);
    LstsqResult out;
    out.coef = xs.cwiseQuotient(norms);
    out.rank = qr.rank();
    out.sse = (A * out.coef - b).squaredNorm();
    (void)n;
    return out;
}

} // namespace fortrend
