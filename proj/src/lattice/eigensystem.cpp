#include "rentwist/lattice.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

namespace rentwist::lattice {

namespace {

cdouble omega_pow(int L, long long e) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(e % L) / L;
    return {std::cos(t), std::sin(t)};
}

int wrap(int k, int L) { return ((k % L) + L) % L; }

}  // namespace

MomentumSector momentum_sector(const LatticeOperator& H, int k) {
    const int L = H.L;
    k = wrap(k, L);
    MomentumSector S;
    S.k = k;
    S.op = &H;
    const std::size_t n = H.dim;
    S.orbit_of.assign(n, -1);
    S.steps_to_rep.assign(n, 0);
    std::vector<std::int32_t> orbit_index;   // orbit id -> allowed sector index or -1
    int norb = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (S.orbit_of[s] >= 0) continue;
        // walk T^j s; state T^j s needs L - j more steps (mod period) to come back to s
        std::vector<std::int32_t> members{static_cast<std::int32_t>(s)};
        std::int32_t t = H.shift[s];
        while (t != static_cast<std::int32_t>(s)) {
            members.push_back(t);
            t = H.shift[t];
        }
        const int p = static_cast<int>(members.size());
        for (int j = 0; j < p; ++j) {
            S.orbit_of[members[j]] = norb;
            S.steps_to_rep[members[j]] = j;   // members[j] = T^j rep
        }
        const bool allowed = (static_cast<long long>(k) * p) % L == 0;
        orbit_index.push_back(allowed ? static_cast<std::int32_t>(S.reps.size()) : -1);
        if (allowed) {
            S.reps.push_back(static_cast<std::int32_t>(s));
            S.period.push_back(p);
        }
        ++norb;
    }
    const std::size_t d = S.reps.size();
    S.block = Eigen::MatrixXcd::Zero(d, d);
    // C_{sr} = sum_{g in orbit r} w^{-j(g) k} H[rep_s, g]
    for (std::size_t si = 0; si < d; ++si) {
        const std::int32_t row = S.reps[si];
        auto add = [&](const kernels::Csr& A, cdouble scale) {
            for (auto p = A.ptr[row]; p < A.ptr[row + 1]; ++p) {
                const std::int32_t g = A.idx[p];
                const std::int32_t ri = orbit_index[S.orbit_of[g]];
                if (ri < 0) continue;
                S.block(si, ri) += scale * A.val[p] * omega_pow(L, -static_cast<long long>(S.steps_to_rep[g]) * k);
            }
        };
        add(H.re, 1.0);
        if (H.complex_valued) add(H.im, cdouble(0.0, 1.0));
    }
    return S;
}

Eigen::VectorXcd MomentumSector::embed(const Eigen::VectorXcd& c, int sign) const {
    const int L = op->L;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(op->dim);
    for (std::size_t r = 0; r < reps.size(); ++r) {
        std::int32_t g = reps[r];
        for (int j = 0; j < period[r]; ++j) {
            v[g] += c[r] * omega_pow(L, -sign * static_cast<long long>(j) * k);
            g = op->shift[g];
        }
    }
    return v;
}

namespace {

struct Candidate {
    cdouble energy;
    Eigen::VectorXcd right;
    int momentum;
};

bool by_real(const cdouble& a, const cdouble& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

int momentum_of(const LatticeOperator& H, const Eigen::VectorXcd& v) {
    Eigen::VectorXcd Tv(v.size());
    for (Eigen::Index s = 0; s < v.size(); ++s) Tv[H.shift[s]] = v[s];
    const cdouble ev = v.dot(Tv) / v.squaredNorm();
    const double ang = std::arg(ev);
    return wrap(static_cast<int>(std::lround(ang * H.L / (2.0 * std::numbers::pi))), H.L);
}

// Eigenpairs of H on the range of the dense projector (1/L) sum_j w^{-jk} T^j.
std::pair<std::vector<cdouble>, std::vector<Eigen::VectorXcd>> dense_sector_pairs(const LatticeOperator& H, int k) {
    const auto n = static_cast<Eigen::Index>(H.dim);
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index s = 0; s < n; ++s) {
        Eigen::Index t = s;
        for (int j = 0; j < H.L; ++j) {
            P(t, s) += omega_pow(H.L, -static_cast<long long>(j) * k) / static_cast<double>(H.L);
            t = H.shift[static_cast<std::size_t>(t)];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(P);
    qr.setThreshold(1e-10);
    std::pair<std::vector<cdouble>, std::vector<Eigen::VectorXcd>> out;
    const Eigen::Index r = qr.rank();
    if (r == 0) return out;
    const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, r);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Q.adjoint() * H.dense() * Q);
    for (Eigen::Index j = 0; j < r; ++j) {
        out.first.push_back(es.eigenvalues()[j]);
        out.second.push_back(Q * es.eigenvectors().col(j));
    }
    return out;
}

// Left partner for each right vector: eigenvector of H^T in the opposite momentum with the same energy.
void attach_left(const LatticeOperator& H, std::vector<EigenPair>& pairs, Solver solver, const ArnoldiOptions& opt, bool by_sector) {
    const LatticeOperator Ht = H.transposed();
    std::vector<int> ks;
    if (!by_sector)
        ks.push_back(-1);
    else
        for (auto& p : pairs)
            if (std::find(ks.begin(), ks.end(), p.momentum) == ks.end()) ks.push_back(p.momentum);
    for (int k : ks) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (k < 0 || pairs[i].momentum == k) members.push_back(i);
        std::vector<cdouble> lvals;
        std::vector<Eigen::VectorXcd> lvecs;
        const int want = static_cast<int>(members.size());
        if (solver == Solver::Dense && by_sector) {
            std::tie(lvals, lvecs) = dense_sector_pairs(Ht, wrap(-k, H.L));
        } else if (solver == Solver::Dense) {
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Ht.dense());
            for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
                lvals.push_back(es.eigenvalues()[j]);
                lvecs.push_back(es.eigenvectors().col(j));
            }
        } else if (solver == Solver::Arnoldi) {
            auto res = arnoldi_lowest(Ht, want + 2, -k, opt);
            lvals = res.values;
            lvecs = res.vectors;
        } else {
            auto S = momentum_sector(Ht, -k);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(S.block);
            for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
                lvals.push_back(es.eigenvalues()[j]);
                lvecs.push_back(S.embed(es.eigenvectors().col(j)));
            }
        }
        std::vector<bool> used(lvals.size(), false);
        for (std::size_t i : members) {
            std::size_t best = lvals.size();
            double bd = 1e300;
            for (std::size_t j = 0; j < lvals.size(); ++j) {
                if (used[j]) continue;
                const double d = std::abs(lvals[j] - pairs[i].energy);
                if (d < bd) {
                    bd = d;
                    best = j;
                }
            }
            if (best == lvals.size()) throw LatticeError("no left eigenvector matches a right eigenvalue");
            used[best] = true;
            pairs[i].left = lvecs[best];
        }
        // bi-orthonormalise inside groups of (near-)equal energies
        std::vector<bool> done(members.size(), false);
        for (std::size_t a = 0; a < members.size(); ++a) {
            if (done[a]) continue;
            std::vector<std::size_t> grp;
            for (std::size_t b = a; b < members.size(); ++b)
                if (!done[b] && std::abs(pairs[members[b]].energy - pairs[members[a]].energy) <
                                    1e-8 * (1.0 + std::abs(pairs[members[a]].energy))) {
                    grp.push_back(members[b]);
                    done[b] = true;
                }
            const Eigen::Index g = static_cast<Eigen::Index>(grp.size());
            Eigen::MatrixXcd M(g, g);
            for (Eigen::Index x = 0; x < g; ++x)
                for (Eigen::Index y = 0; y < g; ++y)
                    M(x, y) = (pairs[grp[x]].left.transpose() * pairs[grp[y]].right)(0, 0);
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
            double scale = 0.0;
            for (auto i : grp) scale = std::max(scale, pairs[i].left.norm() * pairs[i].right.norm());
            const double smin = svd.singularValues()[g - 1];
            if (smin < 1e-8 * scale) {
                for (auto i : grp) pairs[i].defective = true;
                continue;
            }
            const Eigen::MatrixXcd Minv = M.inverse();
            std::vector<Eigen::VectorXcd> nl(g);
            for (Eigen::Index x = 0; x < g; ++x) {
                nl[x] = Eigen::VectorXcd::Zero(H.dim);
                for (Eigen::Index y = 0; y < g; ++y) nl[x] += Minv(x, y) * pairs[grp[y]].left;
            }
            for (Eigen::Index x = 0; x < g; ++x) pairs[grp[x]].left = nl[x];
        }
    }
}

}  // namespace

std::vector<EigenPair> eigensystem(const LatticeOperator& H, int n_states, std::optional<int> momentum, Solver solver,
                                   const ArnoldiOptions& opt) {
    if (n_states < 1) throw LatticeError("n_states must be positive");
    std::vector<Candidate> cand;
    if (solver == Solver::Dense) {
        if (H.dim > 6000) throw LatticeError("dense fallback limited to dimension 6000");
        if (momentum) {
            const int k = wrap(*momentum, H.L);
            auto [vals, vecs] = dense_sector_pairs(H, k);
            for (std::size_t j = 0; j < vals.size(); ++j) cand.push_back({vals[j], vecs[j], k});
        } else {
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(H.dense());
            for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
                Eigen::VectorXcd v = es.eigenvectors().col(j);
                cand.push_back({es.eigenvalues()[j], v, momentum_of(H, v)});
            }
        }
    } else {
        if (H.dim > 200000) throw LatticeError("iterative solver limited to dimension 2e5");
        std::vector<int> ks;
        if (momentum)
            ks.push_back(wrap(*momentum, H.L));
        else
            for (int k = 0; k < H.L; ++k) ks.push_back(k);
        for (int k : ks) {
            if (solver == Solver::Arnoldi) {
                auto res = arnoldi_lowest(H, n_states, k, opt);
                for (std::size_t j = 0; j < res.values.size(); ++j) cand.push_back({res.values[j], res.vectors[j], k});
            } else {
                auto S = momentum_sector(H, k);
                if (S.reps.empty()) continue;
                Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(S.block);
                for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
                    cand.push_back({es.eigenvalues()[j], S.embed(es.eigenvectors().col(j)), k});
            }
        }
    }
    std::stable_sort(cand.begin(), cand.end(), [](const Candidate& a, const Candidate& b) { return by_real(a.energy, b.energy); });
    if (static_cast<int>(cand.size()) > n_states) cand.resize(n_states);
    std::vector<EigenPair> out;
    for (auto& c : cand) {
        EigenPair p;
        p.energy = c.energy;
        p.right = c.right / c.right.norm();
        p.momentum = c.momentum;
        out.push_back(std::move(p));
    }
    attach_left(H, out, solver, opt, solver != Solver::Dense || momentum.has_value());
    return out;
}

namespace {

void project(const LatticeOperator& H, int k, Eigen::VectorXcd& v) {
    // (1/L) sum_j w^{-jk} T^j v
    const int L = H.L;
    Eigen::VectorXcd acc = v, cur = v, nxt(v.size());
    for (int j = 1; j < L; ++j) {
        for (Eigen::Index s = 0; s < v.size(); ++s) nxt[H.shift[s]] = cur[s];
        cur.swap(nxt);
        acc += omega_pow(L, -static_cast<long long>(j) * k) * cur;
    }
    v = acc / static_cast<double>(L);
}

// Two passes of classical Gram-Schmidt against the first j columns of V.
double orthogonalize(const Eigen::MatrixXcd& V, int j, Eigen::VectorXcd& w, Eigen::VectorXcd& h) {
    const std::size_t n = static_cast<std::size_t>(w.size());
    h = Eigen::VectorXcd::Zero(j);
    for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i < j; ++i) {
            const cdouble c = kernels::cdot(V.col(i).data(), w.data(), n);
            h[i] += c;
            kernels::caxpy(-c, V.col(i).data(), w.data(), n);
        }
    }
    return w.norm();
}

}  // namespace

ArnoldiResult arnoldi_lowest(const LatticeOperator& H, int nev, int k, const ArnoldiOptions& opt) {
    const int L = H.L;
    k = wrap(k, L);
    const std::size_t n = H.dim;
    ArnoldiResult res;
    std::mt19937_64 rng(opt.seed + static_cast<unsigned>(k));
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v0(n);
    for (std::size_t i = 0; i < n; ++i) v0[i] = cdouble(nd(rng), nd(rng));
    project(H, k, v0);
    if (v0.norm() < 1e-12) return res;   // empty sector
    int m = opt.ncv > 0 ? opt.ncv : std::max(2 * nev + 10, 30);
    m = static_cast<int>(std::min<std::size_t>(m, n));
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, m + 1);
    Eigen::MatrixXcd Hm = Eigen::MatrixXcd::Zero(m + 1, m);
    V.col(0) = v0 / v0.norm();
    int kstart = 0;
    int dim_eff = m;    // Krylov dimension actually built
    Eigen::VectorXcd w(n), h;
    auto extend = [&](int from) {
        dim_eff = m;
        for (int j = from; j < m; ++j) {
            H.apply(V.col(j).data(), w.data());
            ++res.matvecs;
            project(H, k, w);
            const double beta = orthogonalize(V, j + 1, w, h);
            Hm.block(0, j, j + 1, 1) = h;
            const double scale = Hm.block(0, 0, j + 1, j + 1).norm();
            if (beta <= 1e-12 * std::max(scale, 1.0)) {
                Hm(j + 1, j) = 0.0;
                dim_eff = j + 1;
                return;
            }
            Hm(j + 1, j) = beta;
            V.col(j + 1) = w / beta;
        }
    };
    extend(kstart);
    for (int iter = 0; iter <= opt.max_restarts; ++iter) {
        const int md = dim_eff;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Hm.topLeftCorner(md, md));
        std::vector<int> order(md);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return by_real(es.eigenvalues()[a], es.eigenvalues()[b]); });
        const int want = std::min(nev, md);
        const double beta = md < m + 1 && md <= m ? std::abs(Hm(md, md - 1)) : 0.0;
        int nconv = 0;
        const double eps23 = std::pow(std::numeric_limits<double>::epsilon(), 2.0 / 3.0);
        for (int t = 0; t < want; ++t) {
            const int i = order[t];
            const double est = beta * std::abs(es.eigenvectors()(md - 1, i)) / es.eigenvectors().col(i).norm();
            if (est <= opt.tol * std::max(std::abs(es.eigenvalues()[i]), eps23)) ++nconv;
        }
        const bool invariant = md < m || beta == 0.0;
        if (nconv == want || invariant || iter == opt.max_restarts) {
            res.restarts = iter;
            for (int t = 0; t < want; ++t) {
                const int i = order[t];
                Eigen::VectorXcd x = V.leftCols(md) * es.eigenvectors().col(i);
                x /= x.norm();
                Eigen::VectorXcd Ax(n);
                H.apply(x.data(), Ax.data());
                res.max_residual = std::max(res.max_residual, (Ax - es.eigenvalues()[i] * x).norm());
                res.values.push_back(es.eigenvalues()[i]);
                res.vectors.push_back(std::move(x));
            }
            if (nconv < want && !invariant)
                throw LatticeError("Arnoldi did not converge: " + std::to_string(nconv) + "/" + std::to_string(want) +
                                   " Ritz pairs after " + std::to_string(iter) + " restarts");
            return res;
        }
        // exact shifts: unwanted Ritz values
        const int keep = std::min(md - 1, want + std::min(nconv, (md - want) / 2));
        Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(md, md);
        Eigen::MatrixXcd Hs = Hm.topLeftCorner(md, md);
        for (int t = keep; t < md; ++t) {
            const cdouble mu = es.eigenvalues()[order[t]];
            Eigen::MatrixXcd S = Hs - mu * Eigen::MatrixXcd::Identity(md, md);
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(S);
            const Eigen::MatrixXcd Qi = qr.householderQ();
            Hs = Qi.adjoint() * Hs * Qi;
            for (int r = 2; r < md; ++r)
                for (int c = 0; c < r - 1; ++c) Hs(r, c) = 0.0;
            Q = Q * Qi;
        }
        const Eigen::VectorXcd f = V.col(md) * Hm(md, md - 1);
        Eigen::VectorXcd fk = V.leftCols(md) * Q.col(keep) * Hs(keep, keep - 1) + f * Q(md - 1, keep - 1);
        const Eigen::MatrixXcd Vk = V.leftCols(md) * Q.leftCols(keep);
        V.leftCols(keep) = Vk;
        Hm.setZero();
        Hm.topLeftCorner(keep, keep) = Hs.topLeftCorner(keep, keep);
        Eigen::VectorXcd hh;
        orthogonalize(V, keep, fk, hh);
        const double nb = fk.norm();
        if (nb <= 1e-14) {
            dim_eff = keep;
            Hm(keep, keep - 1) = 0.0;
            continue;
        }
        Hm(keep, keep - 1) = nb;
        V.col(keep) = fk / nb;
        extend(keep);
    }
    return res;
}

}  // namespace rentwist::lattice
