#include "rentwist/lattice.hpp"

#include "rentwist/catalog.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <thread>
#include <unordered_map>

namespace rentwist::lattice {

cdouble ReducedDensity::trace() const {
    cdouble t = 0.0;
    for (const auto& b : blocks) t += (b.psi.cwiseProduct(b.psiw)).sum();
    return t;
}

namespace {

cdouble trace_power(const Eigen::MatrixXcd& K, int N) {
    if (N == 1) return K.trace();
    Eigen::MatrixXcd P = K;
    for (int i = 2; i < N; ++i) P = P * K;
    return (P.cwiseProduct(K.transpose())).sum();
}

}  // namespace

cdouble ReducedDensity::twisted_trace(int N, const std::vector<double>& weight) const {
    cdouble total = 0.0;
    for (const auto& b : blocks) {
        const double d = weight.empty() ? 1.0 : weight[b.a] * weight[b.b];
        if (d == 0.0) continue;
        // Tr (psi psiw^T)^N = Tr (psiw^T psi)^N; use the smaller side
        const Eigen::MatrixXcd K =
            b.psi.rows() <= b.psi.cols() ? Eigen::MatrixXcd(b.psi * b.psiw.transpose()) : Eigen::MatrixXcd(b.psiw.transpose() * b.psi);
        total += d * trace_power(K, N);
    }
    return total;
}

Eigen::MatrixXcd ReducedDensity::dense() const {
    Eigen::Index n = 0;
    for (const auto& b : blocks) n += b.psi.rows();
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(n, n);
    Eigen::Index off = 0;
    for (const auto& b : blocks) {
        R.block(off, off, b.psi.rows(), b.psi.rows()) = b.rho();
        off += b.psi.rows();
    }
    return R;
}

ReducedDensity reduced_density(const HeightBasis& basis, const EigenPair& pair, int i, int ell) {
    const int L = basis.L;
    if (ell < 1 || ell > L - 1) throw LatticeError("interval length must satisfy 1 <= ell <= L-1");
    if (pair.defective) throw LatticeError("defective eigenpair: left and right vectors are orthogonal");
    ReducedDensity rd;
    rd.i = ((i % L) + L) % L;
    rd.ell = ell;
    rd.L = L;
    struct Acc {
        std::map<std::uint64_t, int> rows, cols;
        std::vector<std::tuple<int, int, std::size_t>> entries;
    };
    std::map<std::pair<int, int>, Acc> acc;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const int a = basis.height(s, rd.i);
        const int b = basis.height(s, (rd.i + ell) % L);
        std::uint64_t inA = 0, inB = 0;
        for (int t = 1; t < ell; ++t) inA = (inA << 4) | static_cast<std::uint64_t>(basis.height(s, (rd.i + t) % L));
        for (int t = ell + 1; t < L; ++t) inB = (inB << 4) | static_cast<std::uint64_t>(basis.height(s, (rd.i + t) % L));
        auto& A = acc[{a, b}];
        auto ir = A.rows.emplace(inA, static_cast<int>(A.rows.size())).first->second;
        auto ic = A.cols.emplace(inB, static_cast<int>(A.cols.size())).first->second;
        A.entries.emplace_back(ir, ic, s);
    }
    for (auto& [key, A] : acc) {
        ReducedDensity::Block blk;
        blk.a = key.first;
        blk.b = key.second;
        blk.psi = Eigen::MatrixXcd::Zero(A.rows.size(), A.cols.size());
        blk.psiw = blk.psi;
        for (auto& [r, c, s] : A.entries) {
            blk.psi(r, c) = pair.right[s];
            blk.psiw(r, c) = pair.left[s];
        }
        blk.interior.resize(A.rows.size());
        for (auto& [code, r] : A.rows) blk.interior[r] = code;
        rd.blocks.push_back(std::move(blk));
    }
    return rd;
}

std::vector<double> twist_weights(int m, int k, int q, int n) {
    if (q < 1 || q > m) throw LatticeError("twist label q must lie in [1, m]");
    const double lam = crossing_parameter(m, k);
    std::vector<double> w(m + 1, 0.0);
    for (int b = 1; b <= m; ++b) w[b] = std::sin(std::numbers::pi * q * b / (m + 1)) / std::pow(std::sin(lam * b), n);
    return w;
}

std::vector<double> bare_coefficients(int m, int k, int n) {
    const double lam = crossing_parameter(m, k);
    std::vector<double> x(m + 1, 0.0);
    for (int q = 1; q <= m; ++q) {
        double s = 0.0;
        for (int a = 1; a <= m; ++a) s += std::pow(std::sin(lam * a), n) * std::sin(std::numbers::pi * q * a / (m + 1));
        x[q] = 2.0 / m * s;
    }
    return x;
}

std::vector<double> bare_weights(int m, int k, int n) {
    const auto x = bare_coefficients(m, k, n);
    std::vector<double> w(m + 1, 0.0);
    for (int q = 1; q <= m; ++q) {
        const auto phi = twist_weights(m, k, q, n);
        for (int b = 1; b <= m; ++b) w[b] += x[q] * phi[b];
    }
    return w;
}

std::string Insertion::label() const {
    switch (kind) {
        case Twist: return "q" + std::to_string(q);
        case Bare: return "bare";
        default: return "none";
    }
}

RenyiValue renyi_twisted(const ReducedDensity& rd, int m, int k, int N, const Insertion& ins) {
    if (N < 2) throw LatticeError("Renyi index N must be at least 2");
    std::vector<double> w;
    if (ins.kind == Insertion::Twist)
        w = twist_weights(m, k, ins.q, N);
    else if (ins.kind == Insertion::Bare)
        w = bare_weights(m, k, N);
    RenyiValue r;
    r.value = rd.twisted_trace(N, w);
    r.nonpositive = !(r.value.real() > 0.0) || std::abs(r.value.imag()) > 1e-10 * std::abs(r.value);
    r.entropy = std::log(r.value) / static_cast<double>(1 - N);
    return r;
}

double twist_dimension(int m, int k, int q, int N) {
    const double p = m + 1, pp = m + 1 - k;
    const double c = 1.0 - 6.0 * (p - pp) * (p - pp) / (p * pp);
    const double h = (q * q - (p - pp) * (p - pp)) / (4.0 * p * pp);
    return c / 24.0 * (N - 1.0 / N) + h / N;
}

StateSel parse_state(const std::string& s) {
    if (s == "ground") return StateSel::Ground;
    if (s == "vacuum") return StateSel::Vacuum;
    throw LatticeError("state must be 'ground' or 'vacuum'");
}

std::string EntropyCurve::csv(bool header) const {
    std::string out;
    if (header) out += "L,ell,N,q_or_bare,trace_re,trace_im,entropy_re,entropy_im,rescaled\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%d,%d,%s,%.15g,%.15g,%.15g,%.15g,%.15g\n", L, r.ell, N,
                      insertion.label().c_str(), r.trace.real(), r.trace.imag(), r.entropy.real(), r.entropy.imag(),
                      r.rescaled);
        out += buf;
    }
    return out;
}

PreparedState prepare_state(int m, int k, int L, StateSel sel, Solver solver) {
    PreparedState st;
    st.chain = build_rsos_hamiltonian(m, k, L);
    // unitary chains: the ground state is the vacuum; otherwise the vacuum is the next zero-momentum level
    const bool unitary = k == 1;
    const int want = unitary ? 1 : 2;
    auto pairs = eigensystem(st.chain.H, want, 0, solver);
    if (static_cast<int>(pairs.size()) < want) throw LatticeError("zero-momentum sector too small");
    st.pair = pairs[(sel == StateSel::Vacuum && !unitary) ? 1 : 0];
    return st;
}

EntropyCurve entropy_curve(const PreparedState& st, int N, const Insertion& ins, int threads) {
    const int L = st.chain.basis.L, m = st.chain.m, k = st.chain.k;
    EntropyCurve c;
    c.m = m;
    c.k = k;
    c.L = L;
    c.N = N;
    c.insertion = ins;
    c.energy = st.pair.energy;
    c.rows.resize(L - 1);
    const double hh = twist_dimension(m, k, ins.kind == Insertion::Twist ? ins.q : 1, N);
    std::atomic<int> next{1};
    auto work = [&] {
        for (int ell = next++; ell < L; ell = next++) {
            const auto rd = reduced_density(st.chain.basis, st.pair, 0, ell);
            const auto r = renyi_twisted(rd, m, k, N, ins);
            c.rows[ell - 1] = {ell, r.value, r.entropy, std::pow(static_cast<double>(L), 4.0 * hh) * r.value.real()};
        }
    };
    const int nt = std::max(1, std::min(threads, L - 1));
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    return c;
}

EntropyCurve entropy_curve(int m, int k, int L, int N, StateSel sel, const Insertion& ins, int threads) {
    return entropy_curve(prepare_state(m, k, L, sel), N, ins, threads);
}

namespace {

double chord(int L, int ell) { return L / std::numbers::pi * std::sin(std::numbers::pi * ell / L); }

}  // namespace

DimensionFit fit_twist_dimension(const EntropyCurve& curve) {
    const Eigen::Index n = static_cast<Eigen::Index>(curve.rows.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double X = chord(curve.L, curve.rows[i].ell);
        A(i, 0) = 1.0;
        A(i, 1) = std::log(X);
        A(i, 2) = 1.0 / (X * X);
        y[i] = std::log(std::abs(curve.rows[i].trace));
    }
    DimensionFit f;
    const Eigen::VectorXd full = A.colPivHouseholderQr().solve(y);
    f.slope = full[1];
    f.h = -full[1] / 4.0;
    const Eigen::VectorXd plain = A.leftCols(2).colPivHouseholderQr().solve(y);
    f.h_plain = -plain[1] / 4.0;
    if (n < 5) {
        f.h_osc = f.h;
        return f;
    }
    Eigen::MatrixXd B(n, 4);
    B.leftCols(3) = A;
    double best = std::numeric_limits<double>::infinity();
    for (int j = 2; j <= 60; ++j) {
        const double p = 0.05 * j;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double X = chord(curve.L, curve.rows[i].ell);
            B(i, 3) = (curve.rows[i].ell % 2 ? -1.0 : 1.0) * std::pow(X, -p);
        }
        const Eigen::VectorXd c = B.colPivHouseholderQr().solve(y);
        const double r = (B * c - y).squaredNorm();
        if (r < best) {
            best = r;
            f.h_osc = -c[1] / 4.0;
            f.osc_exponent = p;
        }
    }
    return f;
}

Overlay fit_overlay(const std::vector<int>& ell, const std::vector<double>& lattice, const std::vector<double>& model) {
    Overlay o;
    o.ell = ell;
    o.lattice = lattice;
    double su = 0.0, suu = 0.0;
    for (std::size_t i = 0; i < ell.size(); ++i) {
        const double u = model[i] / lattice[i];
        su += u;
        suu += u * u;
    }
    o.constant = su / suu;
    double ss = 0.0;
    for (std::size_t i = 0; i < ell.size(); ++i) {
        o.prediction.push_back(o.constant * model[i]);
        const double d = (o.prediction.back() - lattice[i]) / lattice[i];
        ss += d * d;
    }
    o.rms = std::sqrt(ss / static_cast<double>(ell.size()));
    return o;
}

std::vector<double> catalog_prediction(const std::string& model_id, int L, const std::vector<int>& ell) {
    static std::map<std::string, std::pair<double, std::shared_ptr<Correlator>>> cache;
    auto it = cache.find(model_id);
    if (it == cache.end()) {
        const auto model = get_model(model_id);
        const auto sol = solve_model(model);
        it = cache.emplace(model_id, std::make_pair(model_to_twist_correlator_exponent(model),
                                                    std::make_shared<Correlator>(assemble(model, sol))))
                 .first;
    }
    const double e = it->second.first;
    std::vector<double> out;
    for (int l : ell) {
        const cdouble x = std::polar(1.0, 2.0 * std::numbers::pi * l / L);
        out.push_back(std::pow(std::abs(1.0 - x), e) * (*it->second.second)(x));
    }
    return out;
}

std::vector<double> ceff_prediction(int L, int N, const std::vector<int>& ell, double c_eff) {
    std::vector<double> out;
    for (int l : ell) {
        const double S = c_eff / 6.0 * (N + 1.0) / N * std::log(chord(L, l));
        out.push_back(std::exp((1.0 - N) * S));
    }
    return out;
}

}  // namespace rentwist::lattice
