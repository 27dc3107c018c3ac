#include "rentwist/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>

namespace rentwist::lattice {

// H = -1/2 sum_j (lambda sx_j sx_{j+1} + sz_j + i h sx_j); bit j = 1 means sz_j = -1.
LatticeOperator ising_imaginary_chain(double lambda, double h, int L) {
    if (L < 2 || L > 20) throw LatticeError("Ising chain length must lie in [2, 20]");
    const std::uint32_t n = 1u << L, mask = n - 1;
    std::vector<Triplet> re, im;
    for (std::uint32_t s = 0; s < n; ++s) {
        const auto col = static_cast<std::int32_t>(s);
        double diag = 0.0;
        for (int j = 0; j < L; ++j) {
            const int jn = (j + 1) % L;
            diag += ((s >> j) & 1u) ? 0.5 : -0.5;
            re.push_back({static_cast<std::int32_t>(s ^ (1u << j) ^ (1u << jn)), col, -0.5 * lambda});
            if (h != 0.0) im.push_back({static_cast<std::int32_t>(s ^ (1u << j)), col, -0.5 * h});
        }
        re.push_back({col, col, diag});
    }
    LatticeOperator H;
    H.dim = n;
    H.L = L;
    H.re = make_csr(n, n, std::move(re));
    H.im = make_csr(n, n, std::move(im));
    H.complex_valued = true;
    H.shift.resize(n);
    for (std::uint32_t s = 0; s < n; ++s) H.shift[s] = static_cast<std::int32_t>(((s << 1) | (s >> (L - 1))) & mask);
    return H;
}

namespace {

cdouble entry(const LatticeOperator& H, std::int32_t r, std::int32_t c) {
    auto look = [&](const kernels::Csr& A) {
        auto b = A.idx.begin() + A.ptr[r], e = A.idx.begin() + A.ptr[r + 1];
        auto it = std::lower_bound(b, e, c);
        return (it != e && *it == c) ? A.val[it - A.idx.begin()] : 0.0;
    };
    return {look(H.re), H.complex_valued ? look(H.im) : 0.0};
}

}  // namespace

double parity_defect(const LatticeOperator& H) {
    double worst = 0.0;
    auto sign = [](std::int32_t s) { return (std::popcount(static_cast<std::uint32_t>(s)) & 1) ? -1.0 : 1.0; };
    for (std::size_t r = 0; r < H.dim; ++r) {
        std::vector<std::int32_t> cols;
        for (auto p = H.re.ptr[r]; p < H.re.ptr[r + 1]; ++p) cols.push_back(H.re.idx[p]);
        if (H.complex_valued)
            for (auto p = H.im.ptr[r]; p < H.im.ptr[r + 1]; ++p) cols.push_back(H.im.idx[p]);
        for (auto c : cols) {
            const auto ri = static_cast<std::int32_t>(r);
            const cdouble php = sign(ri) * sign(c) * entry(H, ri, c);
            worst = std::max(worst, std::abs(php - std::conj(entry(H, c, ri))));
        }
    }
    return worst;
}

std::pair<cdouble, cdouble> ising_lowest_pair(double lambda, double h, int L) {
    const auto H = ising_imaginary_chain(lambda, h, L);
    const auto S = momentum_sector(H, 0);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(S.block, false);
    std::vector<cdouble> ev(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](cdouble a, cdouble b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return {ev[0], ev[1]};
}

namespace {

bool merged(double lambda, double h, int L) {
    const auto [e0, e1] = ising_lowest_pair(lambda, h, L);
    return std::abs(e0.imag()) > 1e-7 * (1.0 + std::abs(e0));
}

}  // namespace

double ising_critical_field(double lambda, int L, double tol) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw LatticeError("coupling must lie in (0, 1)");
    double lo = 0.0, hi = 0.01;
    while (!merged(lambda, hi, L)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 100.0) throw LatticeError("no merging of the two lowest levels below h = 100");
    }
    while (hi - lo > tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (merged(lambda, mid, L) ? hi : lo) = mid;
    }
    return lo;
}

CrossoverStudy crossover_study(double lambda, int L, const std::vector<double>& fractions) {
    CrossoverStudy st;
    st.lambda = lambda;
    st.L = L;
    st.h_c = ising_critical_field(lambda, L);
    for (double f : fractions) {
        CrossoverCurve cc;
        cc.fraction = f;
        cc.h = f * st.h_c;
        const auto H = ising_imaginary_chain(lambda, cc.h, L);
        const auto pairs = eigensystem(H, 1, 0, Solver::Sector);
        const auto& p = pairs.at(0);
        cc.energy = p.energy;
        if (std::abs(p.energy.imag()) > 1e-8 * (1.0 + std::abs(p.energy)))
            throw LatticeError("ground energy is complex: field beyond the merging threshold");
        if (p.defective) throw LatticeError("defective ground state");
        const Eigen::VectorXcd& r = p.right;
        const Eigen::VectorXcd& w = p.left;
        cc.left_right_overlap = std::abs((w.transpose() * r)(0, 0)) / (w.norm() * r.norm());
        for (int ell = 1; ell < L; ++ell) {
            // low bits = sites 0..ell-1
            const Eigen::Index da = Eigen::Index{1} << ell, db = Eigen::Index{1} << (L - ell);
            Eigen::Map<const Eigen::MatrixXcd> R(r.data(), da, db), W(w.data(), da, db);
            const Eigen::MatrixXcd K = da <= db ? Eigen::MatrixXcd(R * W.transpose()) : Eigen::MatrixXcd(W.transpose() * R);
            const cdouble t = (K.cwiseProduct(K.transpose())).sum();
            cc.s2.push_back(-std::log(t));
        }
        const int mid = L / 2;
        cc.midpoint_second_difference = cc.s2[mid - 2].real() - 2.0 * cc.s2[mid - 1].real() + cc.s2[mid].real();
        st.curves.push_back(std::move(cc));
    }
    return st;
}

}  // namespace rentwist::lattice
