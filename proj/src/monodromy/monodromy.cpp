#include "rentwist/monodromy.hpp"

#include <cmath>
#include <numbers>

namespace rentwist {

ConnectionFit fit_connection(const std::vector<FrobeniusSeries>& basis0, const std::vector<FrobeniusSeries>& basis1,
                             double lo, double hi, int samples) {
    const int n = static_cast<int>(basis0.size());
    if (n == 0 || static_cast<int>(basis1.size()) != n) throw std::invalid_argument("fit_connection: basis sizes differ");
    if (!(0.0 < lo && lo < hi && hi < 1.0)) throw std::invalid_argument("fit_connection: sample interval must lie in (0,1)");
    for (const auto& s : basis0)
        if (s.center != Center::Zero) throw std::invalid_argument("fit_connection: first basis must be centred at 0");
    for (const auto& s : basis1)
        if (s.center != Center::One) throw std::invalid_argument("fit_connection: second basis must be centred at 1");
    if (samples <= 0) samples = 2 * n;
    ConnectionFit fit;
    Eigen::MatrixXd J(samples, n), I(samples, n);
    for (int k = 0; k < samples; ++k) {
        const double x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(std::numbers::pi * (k + 0.5) / samples);
        fit.samples.push_back(x);
        for (int j = 0; j < n; ++j) J(k, j) = evaluate(basis1[static_cast<std::size_t>(j)], x).value.real();
        for (int i = 0; i < n; ++i) I(k, i) = evaluate(basis0[static_cast<std::size_t>(i)], x).value.real();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    fit.condition = sv(0) / sv(sv.size() - 1);
    fit.ill_conditioned = fit.condition > 1e8;
    fit.A = svd.solve(I).transpose();
    Eigen::MatrixXd R = I - J * fit.A.transpose();
    for (int i = 0; i < n; ++i) {
        const double scale = I.col(i).cwiseAbs().maxCoeff();
        fit.residual = std::max(fit.residual, R.col(i).cwiseAbs().maxCoeff() / scale);
    }
    return fit;
}

DiagonalInvariants diagonal_invariants(const Eigen::MatrixXd& A, int norm, double gap) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || n < 2) throw std::invalid_argument("diagonal_invariants: need a square matrix of size >= 2");
    if (norm < 0 || norm >= n) throw std::invalid_argument("diagonal_invariants: bad normalisation index");
    const int rows = n * (n - 1) / 2;
    // Pad to a square system so the SVD exposes all n singular values.
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(std::max(rows, n), n);
    int r = 0;
    for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q, ++r)
            for (int i = 0; i < n; ++i) C(r, i) = A(i, p) * A(i, q);
    const double scale = C.cwiseAbs().maxCoeff();
    DiagonalInvariants out;
    if (scale == 0.0) {
        // Every X is admissible; take the one maximising the normalising entry.
        const Eigen::VectorXd X = A.col(norm).cwiseAbs2();
        const Eigen::VectorXd Y = (A.transpose() * X.asDiagonal() * A).diagonal();
        if (std::abs(Y(norm)) < 1e-300) throw DegeneracyError("diagonal invariants: normalising entry vanishes");
        out.X = X / Y(norm);
        out.Y = Y / Y(norm);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C / scale, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    out.sigma_min = sv(n - 1);
    out.sigma_next = sv(n - 2);
    if (!(out.sigma_min <= gap * out.sigma_next))
        throw DegeneracyError("diagonal invariance has no isolated one-dimensional solution (sigma_min = " +
                              std::to_string(out.sigma_min) + ", next = " + std::to_string(out.sigma_next) + ")");
    Eigen::VectorXd X = svd.matrixV().col(n - 1);
    Eigen::VectorXd Y = (A.transpose() * X.asDiagonal() * A).diagonal();
    if (std::abs(Y(norm)) < 1e-300) throw DegeneracyError("diagonal invariants: normalising entry vanishes");
    out.X = X / Y(norm);
    out.Y = Y / Y(norm);
    return out;
}

Correlator::Correlator(StandardOdeD block_ode, std::vector<FrobeniusSeries> basis0, std::vector<FrobeniusSeries> basis1,
                       Eigen::VectorXd X, Eigen::VectorXd Y, double p0, double p1)
    : ode_(std::move(block_ode)), b0_(std::move(basis0)), b1_(std::move(basis1)), X_(std::move(X)), Y_(std::move(Y)),
      p0_(p0), p1_(p1) {}

double Correlator::prefactor(cdouble x) const {
    return std::pow(std::abs(x), 2 * p0_) * std::pow(std::abs(1.0 - x), 2 * p1_);
}

double Correlator::eval_channel0(cdouble x) const {
    double s = 0.0;
    for (std::size_t i = 0; i < b0_.size(); ++i) s += X_(static_cast<long>(i)) * std::norm(continue_series(ode_, b0_[i], x));
    return prefactor(x) * s;
}

double Correlator::eval_channel1(cdouble x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < b1_.size(); ++j) s += Y_(static_cast<long>(j)) * std::norm(continue_series(ode_, b1_[j], x));
    return prefactor(x) * s;
}

}  // namespace rentwist
