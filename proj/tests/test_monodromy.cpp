#include <doctest.h>

#include "rentwist/catalog.hpp"
#include "rentwist/monodromy.hpp"

#include <cmath>

using namespace rentwist;

namespace {

bool sig5(double got, double want) { return std::abs(got - want) <= 5e-5 * std::abs(want); }

}  // namespace

TEST_CASE("2x2 fit reproduces the gamma-function connection matrix") {
    const auto m = get_model("yl2int_vac");
    const auto s = solve_model(m);
    CHECK(s.fit.residual < 1e-10);
    // Basis exponents {0, -2/5} of the block operator correspond to hypergeometric (a, b, c) = (7/10, 11/10, 7/5).
    const auto c = connection_2x2({0.7, 1.1, 1.4});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(s.fit.A(i, j) == doctest::Approx(c.A[i][j]).epsilon(1e-10));
    CHECK(s.inv.X[0] == doctest::Approx(1.0));
    CHECK(s.inv.X[1] / s.inv.X[0] == doctest::Approx(std::pow(2.0, 16.0 / 5)).epsilon(1e-10));
    CHECK(s.inv.Y[1] / s.inv.Y[0] == doctest::Approx(std::pow(2.0, 16.0 / 5)).epsilon(1e-10));
}

TEST_CASE("diagonal invariants make A^T diag(X) A diagonal") {
    const auto s = solve_model(get_model("yl1int_gs"));
    const Eigen::MatrixXd& A = s.fit.A;
    const Eigen::MatrixXd M = A.transpose() * s.inv.X.asDiagonal() * A;
    for (int i = 0; i < 3; ++i) {
        CHECK(M(i, i) == doctest::Approx(s.inv.Y[i]).epsilon(1e-9));
        for (int j = 0; j < 3; ++j)
            if (i != j) CHECK(std::abs(M(i, j)) < 1e-9 * M.norm());
    }
}

TEST_CASE("ground-state connection matrix and coefficients") {
    const auto s = solve_model(get_model("yl1int_gs"));
    const double reference[3][3] = {{0.46872, 2.98127, -2.61803}, {0.292217, 2.43298, -1.82483}, {3.52145, 6.92136, -9.83452}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK_MESSAGE(sig5(s.fit.A(i, j), reference[i][j]), "A(" << i << "," << j << ")");
    CHECK(s.fit.residual < 1e-9);
    // Rows ordered by exponents (1/2, 2/5, 9/10); the first two X entries appear in the other order in print.
    CHECK(sig5(s.inv.X[0], -19.2813));
    CHECK(sig5(s.inv.X[1], 30.6594));
    CHECK(sig5(s.inv.X[2], 0.211121));
    CHECK(sig5(s.inv.Y[0], 1.0));
    CHECK(sig5(s.inv.Y[1], 20.2276));
    CHECK(sig5(s.inv.Y[2], -9.64063));
}

TEST_CASE("a rotated block leaves the invariants underdetermined") {
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(3, 3);
    const double c = std::cos(0.7), s = std::sin(0.7);
    A(1, 1) = c;
    A(1, 2) = -s;
    A(2, 1) = s;
    A(2, 2) = c;
    CHECK_THROWS_AS(diagonal_invariants(A), DegeneracyError);
}

TEST_CASE("identity connection gives X = Y") {
    const auto r = diagonal_invariants(Eigen::MatrixXd::Identity(3, 3), 0, 1e-12);
    CHECK((r.X - r.Y).norm() < 1e-12);
}

TEST_CASE("assembled correlator is single valued and real symmetric") {
    const auto m = get_model("yl1int_gs");
    const auto C = assemble(m, solve_model(m));
    for (double x : {0.3, 0.5, 0.7}) CHECK(C.eval_channel0(x) == doctest::Approx(C.eval_channel1(x)).epsilon(1e-9));
    for (cdouble x : {cdouble(0.4, 0.3), cdouble(1.3, 0.6), cdouble(-0.5, 0.2)}) {
        CHECK(C(x) == doctest::Approx(C(std::conj(x))).epsilon(1e-8));
        CHECK(C.eval_channel0(x) == doctest::Approx(C.eval_channel1(x)).epsilon(1e-8));
    }
}

TEST_CASE("default connection fit is well conditioned") {
    const auto m = get_model("yl1int_gs");
    const auto s = solve_model(m);
    const auto good = fit_connection(s.basis0, s.basis1);
    CHECK_FALSE(good.ill_conditioned);
    CHECK(good.samples.size() == 6);
}
