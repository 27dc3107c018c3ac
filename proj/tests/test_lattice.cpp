#include <doctest.h>

#include "rentwist/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace rentwist::lattice;
using rentwist::kernels::Csr;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::MatrixXd dense(const Csr& A) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(A.rows), static_cast<Eigen::Index>(A.cols));
    for (std::size_t r = 0; r < A.rows; ++r)
        for (auto p = A.ptr[r]; p < A.ptr[r + 1]; ++p) M(static_cast<Eigen::Index>(r), A.idx[p]) += A.val[p];
    return M;
}

Eigen::MatrixXd translation(const LatticeOperator& H) {
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(H.dim), static_cast<Eigen::Index>(H.dim));
    for (std::size_t s = 0; s < H.dim; ++s) T(H.shift[s], static_cast<Eigen::Index>(s)) = 1.0;
    return T;
}

std::vector<cdouble> sorted_eigenvalues(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    std::vector<cdouble> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end(), [](cdouble a, cdouble b) {
        return std::abs(a.real() - b.real()) > 1e-9 ? a.real() < b.real() : a.imag() < b.imag();
    });
    return v;
}

}  // namespace

TEST_CASE("height bases count closed walks on the path graph") {
    for (int m = 2; m <= 6; ++m)
        for (int L = 2; L <= 16; L += 2) {
            const auto b = enumerate_heights(m, L);
            // Independent count: trace of the adjacency matrix power.
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
            for (int a = 0; a + 1 < m; ++a) A(a, a + 1) = A(a + 1, a) = 1.0;
            Eigen::MatrixXd P = Eigen::MatrixXd::Identity(m, m);
            for (int i = 0; i < L; ++i) P = P * A;
            CHECK_MESSAGE(static_cast<double>(b.size()) == std::round(P.trace()), "m=" << m << " L=" << L);
            CHECK(adjacency_trace(m, L) == static_cast<long long>(b.size()));
        }
    CHECK(enumerate_heights(4, 4).size() == 14);
    CHECK(enumerate_heights(4, 16).size() == 4414);
    CHECK_THROWS_AS(enumerate_heights(4, 7), LatticeError);
    CHECK_THROWS_AS(enumerate_heights(1, 4), LatticeError);
    CHECK_THROWS_AS(enumerate_heights(4, 18), LatticeError);
}

TEST_CASE("height basis indexing") {
    const auto b = enumerate_heights(5, 8);
    for (std::size_t s = 0; s < b.size(); ++s) {
        CHECK(b.index(b.states[s]) == static_cast<std::ptrdiff_t>(s));
        for (int i = 0; i < 8; ++i) CHECK(std::abs(b.height(s, i) - b.height(s, (i + 1) % 8)) == 1);
    }
    CHECK(std::is_sorted(b.states.begin(), b.states.end(), [&](auto x, auto y) {
        return b.digits(b.index(x)) < b.digits(b.index(y));
    }));
    CHECK(b.index(HeightBasis::encode({1, 3, 1, 2, 1, 2, 1, 2})) == -1);
}

TEST_CASE("Temperley-Lieb relations") {
    const int L = 6;
    CHECK_THROWS_AS(build_rsos_hamiltonian(5, 2, L), LatticeError);
    for (auto [m, k] : {std::pair{4, 3}, {4, 1}, {5, 1}, {6, 5}, {6, 1}}) {
        const auto basis = enumerate_heights(m, L);
        const double beta = 2 * std::cos(crossing_parameter(m, k));
        CHECK(crossing_parameter(m, k) == doctest::Approx(k * pi / (m + 1)));
        std::vector<Eigen::MatrixXd> e;
        for (int i = 0; i < L; ++i) e.push_back(dense(tl_generator(basis, k, i)));
        double worst = 0.0;
        for (int i = 0; i < L; ++i) {
            const int j = (i + 1) % L, jm = (i + L - 1) % L;
            worst = std::max(worst, (e[i] * e[i] - beta * e[i]).cwiseAbs().maxCoeff());
            worst = std::max(worst, (e[i] * e[j] * e[i] - e[i]).cwiseAbs().maxCoeff());
            worst = std::max(worst, (e[i] * e[jm] * e[i] - e[i]).cwiseAbs().maxCoeff());
            for (int d = 2; d <= L - 2; ++d) {
                const int l = (i + d) % L;
                worst = std::max(worst, (e[i] * e[l] - e[l] * e[i]).cwiseAbs().maxCoeff());
            }
        }
        CHECK_MESSAGE(worst < 1e-12, "m=" << m << " k=" << k);
    }
}

TEST_CASE("Hamiltonian symmetry and translation invariance") {
    const auto u = build_rsos_hamiltonian(4, 1, 8);
    const Eigen::MatrixXcd Hu = u.H.dense();
    CHECK((Hu - Hu.transpose()).norm() < 1e-12);
    CHECK(Hu.imag().norm() == 0.0);
    const auto nu = build_rsos_hamiltonian(4, 3, 8);
    const Eigen::MatrixXcd Hn = nu.H.dense();
    CHECK((Hn - Hn.transpose()).norm() > 1e-3);
    for (const auto* c : {&u, &nu}) {
        const Eigen::MatrixXd T = translation(c->H);
        const Eigen::MatrixXd H = c->H.dense().real();
        CHECK((H * T - T * H).norm() < 1e-12);
    }
    CHECK_THROWS_AS(build_rsos_hamiltonian(4, 5, 8), LatticeError);
    CHECK_THROWS_AS(build_rsos_hamiltonian(5, 3, 8), LatticeError);
}

TEST_CASE("non-unitary spectrum: conjugation closed with a real low-lying zero-momentum sector") {
    const auto c = build_rsos_hamiltonian(4, 3, 8);
    const auto ev = sorted_eigenvalues(c.H.dense());
    for (const auto& z : ev) {
        double best = 1e9;
        for (const auto& w : ev) best = std::min(best, std::abs(w - std::conj(z)));
        CHECK(best < 1e-8);
    }
    const auto pairs = eigensystem(c.H, 3, 0, Solver::Sector);
    for (const auto& p : pairs) CHECK(std::abs(p.energy.imag()) < 1e-9);
}

TEST_CASE("dense, sector and Arnoldi solvers agree") {
    const auto c = build_rsos_hamiltonian(4, 3, 10);
    const auto d = eigensystem(c.H, 4, std::nullopt, Solver::Dense);
    const auto s = eigensystem(c.H, 4, std::nullopt, Solver::Sector);
    const auto a = eigensystem(c.H, 4, std::nullopt, Solver::Arnoldi);
    REQUIRE(d.size() == 4);
    REQUIRE(s.size() == 4);
    REQUIRE(a.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(d[i].energy - s[i].energy) < 1e-9);
        CHECK(std::abs(d[i].energy - a[i].energy) < 1e-9);
    }
    CHECK(d[0].energy.real() == doctest::Approx(-4.2786875305).epsilon(1e-9));
    const auto r = arnoldi_lowest(c.H, 2, 0);
    CHECK(r.max_residual < 1e-9);
    CHECK(std::abs(r.values[0] - eigensystem(c.H, 1, 0, Solver::Dense)[0].energy) < 1e-9);
}

TEST_CASE("eigenpairs carry bi-orthonormal left covectors") {
    const auto c = build_rsos_hamiltonian(4, 3, 8);
    const Eigen::MatrixXcd H = c.H.dense();
    for (auto solver : {Solver::Dense, Solver::Sector, Solver::Arnoldi}) {
        const auto pairs = eigensystem(c.H, 4, std::nullopt, solver);
        for (const auto& p : pairs) {
            CHECK((H * p.right - p.energy * p.right).norm() < 1e-9);
            CHECK((p.left.transpose() * H - p.energy * p.left.transpose()).norm() < 1e-9);
            CHECK(std::abs((p.left.transpose() * p.right)(0, 0) - 1.0) < 1e-9);
            CHECK_FALSE(p.defective);
        }
    }
}

TEST_CASE("momentum sectors partition the spectrum") {
    const auto c = build_rsos_hamiltonian(4, 3, 6);
    std::vector<cdouble> all;
    Eigen::Index total = 0;
    for (int k = 0; k < 6; ++k) {
        const auto s = momentum_sector(c.H, k);
        total += s.block.rows();
        for (auto z : sorted_eigenvalues(s.block)) all.push_back(z);
    }
    CHECK(total == static_cast<Eigen::Index>(c.H.dim));
    std::sort(all.begin(), all.end(), [](cdouble a, cdouble b) {
        return std::abs(a.real() - b.real()) > 1e-9 ? a.real() < b.real() : a.imag() < b.imag();
    });
    const auto full = sorted_eigenvalues(c.H.dense());
    for (std::size_t i = 0; i < full.size(); ++i) CHECK(std::abs(all[i] - full[i]) < 1e-8);
}

TEST_CASE("reduced density matrices") {
    for (int k : {1, 3}) {
        const auto st = prepare_state(4, k, 8, StateSel::Ground);
        for (int ell : {1, 2, 3, 5}) {
            const auto rd = reduced_density(st.chain.basis, st.pair, 0, ell);
            CHECK(std::abs(rd.trace() - 1.0) < 1e-12);
            const Eigen::MatrixXcd rho = rd.dense();
            CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
            if (ell == 1) CHECK((rho - Eigen::MatrixXcd(rho.diagonal().asDiagonal())).norm() < 1e-14);
            if (k == 1) {
                CHECK((rho - rho.transpose()).norm() < 1e-12);
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho.real());
                CHECK(es.eigenvalues().minCoeff() > -1e-12);
            }
            // Power sums from the eigenvalues of the dense matrix.
            const std::vector<double> ones(5, 1.0);
            for (int N : {2, 3}) {
                Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(rho, false);
                cdouble ps = 0.0;
                for (auto z : es.eigenvalues()) ps += std::pow(z, N);
                CHECK(std::abs(rd.twisted_trace(N, ones) - ps) < 1e-10);
            }
        }
    }
}

TEST_CASE("twisted traces do not depend on the interval position") {
    const auto st = prepare_state(4, 3, 8, StateSel::Ground);
    const auto w = twist_weights(4, 3, 1, 2);
    const auto ref = reduced_density(st.chain.basis, st.pair, 0, 3).twisted_trace(2, w);
    for (int i = 1; i < 8; ++i) CHECK(std::abs(reduced_density(st.chain.basis, st.pair, i, 3).twisted_trace(2, w) - ref) < 1e-9);
}

TEST_CASE("twist weights") {
    const int m = 4;
    // Loop weight relation for q = k: sum_b A_ab (sin(lam b)/sin(lam a))^n phi(b) = beta phi(a).
    for (int k : {1, 3})
        for (int n : {2, 3}) {
            const double lam = crossing_parameter(m, k);
            const auto phi = twist_weights(m, k, k, n);
            for (int a = 1; a <= m; ++a) {
                double s = 0.0;
                for (int b : {a - 1, a + 1})
                    if (b >= 1 && b <= m) s += std::pow(std::sin(lam * b) / std::sin(lam * a), n) * phi[b];
                CHECK(s == doctest::Approx(2 * std::cos(lam) * phi[a]).epsilon(1e-12));
            }
        }
    CHECK(2 * std::cos(pi / 5) == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-15));
    for (int n : {2, 3}) {
        const auto w = bare_weights(4, 3, n);
        for (int a = 2; a <= 4; ++a) CHECK(w[a] == doctest::Approx(w[1]).epsilon(1e-12));
    }
}

TEST_CASE("twist dimensions") {
    CHECK(twist_dimension(4, 3, 3, 2) == doctest::Approx(-11.0 / 40));
    CHECK(twist_dimension(4, 3, 1, 2) == doctest::Approx(-3.0 / 8));
    CHECK(twist_dimension(4, 3, 3, 3) == doctest::Approx(-22.0 / 45));
    CHECK(twist_dimension(4, 3, 1, 3) == doctest::Approx(-5.0 / 9));
    CHECK(twist_dimension(4, 1, 1, 2) == doctest::Approx(0.7 / 24 * 1.5));
}

TEST_CASE("entropy curves are reflection symmetric and collapse under rescaling") {
    std::vector<double> mid;
    for (int L : {10, 12, 14}) {
        const auto c = entropy_curve(4, 3, L, 2, StateSel::Ground, Insertion::twist(3));
        REQUIRE(c.rows.size() == static_cast<std::size_t>(L - 1));
        for (int l = 1; l < L; ++l) CHECK(std::abs(c.rows[l - 1].trace - c.rows[L - l - 1].trace) < 1e-9 * std::abs(c.rows[l - 1].trace));
        mid.push_back(c.rows[L / 2 - 1].rescaled);
    }
    for (double v : mid) CHECK(std::abs(v / mid.back() - 1.0) < 0.05);
}

TEST_CASE("unitary chain reproduces the standard entropy scaling") {
    const auto c = entropy_curve(4, 1, 16, 2, StateSel::Vacuum, Insertion::none());
    const auto f = fit_twist_dimension(c);
    // Tr rho^N ~ X^{-(c/6)(N - 1/N)} with c = 7/10.
    const double slope = 4 * f.h_osc / (2 - 1), want = 2 * 1.5 * 0.7 / 6 / 2;
    CHECK(std::abs(slope / want - 1.0) < 0.05);
}

TEST_CASE("entropy CSV output") {
    const auto c = entropy_curve(4, 3, 6, 2, StateSel::Ground, Insertion::bare(), 2);
    const auto text = c.csv();
    CHECK(text.rfind("L,ell,N,q_or_bare,trace_re,trace_im,entropy_re,entropy_im,rescaled\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 6);
    CHECK(c.csv(false).find("L,ell") == std::string::npos);
    CHECK_THROWS(parse_state("excited"));
    CHECK(parse_state("vacuum") == StateSel::Vacuum);
}

TEST_CASE("overlay fit with one multiplicative constant") {
    const std::vector<int> ell{1, 2, 3};
    const auto o = fit_overlay(ell, {2.0, 4.0, 6.0}, {1.0, 2.0, 3.0});
    CHECK(o.constant == doctest::Approx(2.0));
    CHECK(o.rms < 1e-14);
    const auto p = catalog_prediction("yl1int_gs", 12, {1, 6, 11});
    CHECK(p[0] == doctest::Approx(p[2]).epsilon(1e-9));
}

TEST_CASE("imaginary-field Ising chain") {
    const auto H = ising_imaginary_chain(0.8, 0.05, 8);
    CHECK(parity_defect(H) < 1e-12);
    const Eigen::MatrixXcd M = H.dense();
    CHECK((M - M.adjoint()).norm() > 1e-3);
    const auto Hs = ising_imaginary_chain(0.8, 0.2, 6);
    const auto ev = sorted_eigenvalues(Hs.dense());
    for (const auto& z : ev) {
        double best = 1e9;
        for (const auto& w : ev) best = std::min(best, std::abs(w - std::conj(z)));
        CHECK(best < 1e-8);
    }
    const double hc = ising_critical_field(0.8, 8);
    CHECK(hc == doctest::Approx(0.0458749389).epsilon(1e-6));
    const auto below = ising_lowest_pair(0.8, 0.95 * hc, 8), above = ising_lowest_pair(0.8, 1.05 * hc, 8);
    CHECK(std::abs(below.first.imag()) < 1e-9);
    CHECK(std::abs(below.second.imag()) < 1e-9);
    CHECK(std::abs(above.first.imag()) > 1e-6);
    CHECK(std::abs(above.first - std::conj(above.second)) < 1e-8);
    CHECK_THROWS_AS(ising_critical_field(1.2, 8), LatticeError);
}

TEST_CASE("Ising crossover at small size") {
    const auto st = crossover_study(0.8, 8, {0.1, 0.99});
    REQUIRE(st.curves.size() == 2);
    CHECK(st.curves[0].left_right_overlap < 1 - 1e-6);
    CHECK(st.curves[1].left_right_overlap < st.curves[0].left_right_overlap);
    for (const auto& c : st.curves) CHECK(c.s2.size() == 7);
}
