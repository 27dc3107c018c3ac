#pragma once

#include "rentwist/frobenius.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace rentwist {

class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConnectionFit {
    Eigen::MatrixXd A;          // I_i = sum_j A_ij J_j
    double residual = 0.0;      // max relative residual over the samples
    double condition = 0.0;     // condition number of the sample matrix
    bool ill_conditioned = false;
    std::vector<double> samples;
};

// Least-squares fit on Chebyshev points of [lo, hi] (2n points by default).
ConnectionFit fit_connection(const std::vector<FrobeniusSeries>& basis0, const std::vector<FrobeniusSeries>& basis1,
                             double lo = 0.38, double hi = 0.62, int samples = 0);

struct DiagonalInvariants {
    Eigen::VectorXd X, Y;
    double sigma_min = 0.0, sigma_next = 0.0;
};

// Solve offdiag(A^T diag(X) A) = 0 for X, normalised so that Y[norm] = 1.
DiagonalInvariants diagonal_invariants(const Eigen::MatrixXd& A, int norm = 0, double gap = 1e-6);

// G(x) = |x|^{2 p0} |1-x|^{2 p1} sum_i X_i |I_i(x)|^2, continued analytically off the convergence disks.
class Correlator {
public:
    Correlator(StandardOdeD block_ode, std::vector<FrobeniusSeries> basis0, std::vector<FrobeniusSeries> basis1,
               Eigen::VectorXd X, Eigen::VectorXd Y, double p0, double p1);
    double operator()(cdouble x) const { return eval_channel0(x); }
    double eval_channel0(cdouble x) const;
    double eval_channel1(cdouble x) const;
    const Eigen::VectorXd& X() const { return X_; }
    const Eigen::VectorXd& Y() const { return Y_; }

private:
    double prefactor(cdouble x) const;
    StandardOdeD ode_;
    std::vector<FrobeniusSeries> b0_, b1_;
    Eigen::VectorXd X_, Y_;
    double p0_, p1_;
};

}  // namespace rentwist
