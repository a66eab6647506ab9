#include "fgv/numerics.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace fgv {

std::vector<double> fit_linear_model(const std::vector<std::vector<double>>& regressors, const std::vector<double>& y) {
    const auto rows = static_cast<Eigen::Index>(y.size());
    const auto cols = static_cast<Eigen::Index>(regressors.size() + 1);
    if (rows < cols) throw std::invalid_argument("fit_linear_model: fewer points than parameters");
    Eigen::MatrixXd X(rows, cols);
    Eigen::VectorXd Y(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        X(i, 0) = 1.0;
        for (Eigen::Index j = 1; j < cols; ++j) {
            const auto& col = regressors[static_cast<std::size_t>(j - 1)];
            if (col.size() != y.size()) throw std::invalid_argument("fit_linear_model: length mismatch");
            X(i, j) = col[static_cast<std::size_t>(i)];
        }
        Y(i) = y[static_cast<std::size_t>(i)];
    }
    auto qr = X.colPivHouseholderQr();
    if (qr.rank() < cols) throw std::invalid_argument("fit_linear_model: regressors are degenerate");
    Eigen::VectorXd beta = qr.solve(Y);
    return {beta.data(), beta.data() + beta.size()};
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    auto b = fit_linear_model({x}, y);
    return {b[1], b[0]};
}

}  // namespace fgv
