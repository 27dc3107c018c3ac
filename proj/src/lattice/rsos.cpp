#include "rentwist/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rentwist::lattice {

std::uint64_t HeightBasis::encode(const std::vector<int>& heights) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < heights.size(); ++i) code |= static_cast<std::uint64_t>(heights[i]) << (4 * i);
    return code;
}

namespace {

// Lexicographic order in a_0, a_1, ... is the order of the bit-reversed-by-site key.
std::uint64_t lex_key(std::uint64_t code, int L) {
    std::uint64_t key = 0;
    for (int i = 0; i < L; ++i) key = (key << 4) | ((code >> (4 * i)) & 0xF);
    return key;
}

}  // namespace

std::ptrdiff_t HeightBasis::index(std::uint64_t code) const {
    const std::uint64_t key = lex_key(code, L);
    auto it = std::lower_bound(states.begin(), states.end(), key,
                               [&](std::uint64_t s, std::uint64_t k) { return lex_key(s, L) < k; });
    if (it == states.end() || *it != code) return -1;
    return it - states.begin();
}

std::string HeightBasis::digits(std::size_t s) const {
    std::string out;
    for (int i = 0; i < L; ++i) out += static_cast<char>('0' + height(s, i));
    return out;
}

HeightBasis enumerate_heights(int m, int L) {
    if (m < 2 || m > 15) throw LatticeError("height range m must lie in [2, 15]");
    if (L < 2 || L > 16) throw LatticeError("chain length L must lie in [2, 16]");
    if (L % 2 != 0)
        throw LatticeError("odd L gives an empty basis: neighbouring heights differ by one, so the periodic chain is bipartite");
    HeightBasis b;
    b.m = m;
    b.L = L;
    std::vector<int> h(L);
    auto rec = [&](auto&& self, int site) -> void {
        if (site == L) {
            if (std::abs(h[L - 1] - h[0]) == 1) b.states.push_back(HeightBasis::encode(h));
            return;
        }
        for (int a : {h[site - 1] - 1, h[site - 1] + 1}) {
            if (a < 1 || a > m) continue;
            h[site] = a;
            self(self, site + 1);
        }
    };
    for (int a = 1; a <= m; ++a) {
        h[0] = a;
        rec(rec, 1);
    }
    return b;
}

long long adjacency_trace(int m, int L) {
    std::vector<std::vector<long long>> P(m, std::vector<long long>(m, 0)), A = P;
    for (int i = 0; i < m; ++i) {
        P[i][i] = 1;
        if (i + 1 < m) A[i][i + 1] = A[i + 1][i] = 1;
    }
    for (int step = 0; step < L; ++step) {
        std::vector<std::vector<long long>> Q(m, std::vector<long long>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                for (int l = 0; l < m; ++l) Q[i][j] += P[i][l] * A[l][j];
        P.swap(Q);
    }
    long long t = 0;
    for (int i = 0; i < m; ++i) t += P[i][i];
    return t;
}

kernels::Csr make_csr(std::size_t rows, std::size_t cols, std::vector<Triplet> t) {
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    kernels::Csr A;
    A.rows = rows;
    A.cols = cols;
    A.ptr.assign(rows + 1, 0);
    for (std::size_t p = 0; p < t.size();) {
        std::size_t q = p;
        double v = 0.0;
        while (q < t.size() && t[q].row == t[p].row && t[q].col == t[p].col) v += t[q++].value;
        if (v != 0.0) {
            A.idx.push_back(t[p].col);
            A.val.push_back(v);
            A.ptr[t[p].row + 1]++;
        }
        p = q;
    }
    for (std::size_t r = 0; r < rows; ++r) A.ptr[r + 1] += A.ptr[r];
    return A;
}

void LatticeOperator::apply(const cdouble* x, cdouble* y) const {
    kernels::spmv(re, x, y);
    if (!complex_valued) return;
    std::vector<cdouble> t(dim);
    kernels::spmv(im, x, t.data());
    kernels::caxpy(cdouble(0.0, 1.0), t.data(), y, dim);
}

Eigen::MatrixXcd LatticeOperator::dense() const {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (auto p = re.ptr[r]; p < re.ptr[r + 1]; ++p) M(r, re.idx[p]) += re.val[p];
        if (complex_valued)
            for (auto p = im.ptr[r]; p < im.ptr[r + 1]; ++p) M(r, im.idx[p]) += cdouble(0.0, im.val[p]);
    }
    return M;
}

namespace {

kernels::Csr transpose(const kernels::Csr& A) {
    std::vector<Triplet> t;
    t.reserve(A.val.size());
    for (std::size_t r = 0; r < A.rows; ++r)
        for (auto p = A.ptr[r]; p < A.ptr[r + 1]; ++p)
            t.push_back({A.idx[p], static_cast<std::int32_t>(r), A.val[p]});
    return make_csr(A.cols, A.rows, std::move(t));
}

}  // namespace

LatticeOperator LatticeOperator::transposed() const {
    LatticeOperator T = *this;
    T.re = transpose(re);
    if (complex_valued) T.im = transpose(im);
    return T;
}

double crossing_parameter(int m, int k) { return std::numbers::pi * k / (m + 1); }

namespace {

std::uint64_t set_height(std::uint64_t code, int site, int a) {
    code &= ~(std::uint64_t{0xF} << (4 * site));
    return code | (static_cast<std::uint64_t>(a) << (4 * site));
}

// Local generator in the gauge where k = 1 is symmetric:
// <a'|e|a> = sgn(s_a') sqrt|s_a' s_a| / s_c, s_b = sin(lambda b), c the common neighbour height.
void tl_triplets(const HeightBasis& basis, int k, int i, double scale, std::vector<Triplet>& out) {
    const int L = basis.L, m = basis.m;
    const double lam = crossing_parameter(m, k);
    std::vector<double> s(m + 1);
    for (int a = 1; a <= m; ++a) {
        s[a] = std::sin(lam * a);
        if (std::abs(s[a]) < 1e-12) throw LatticeError("singular height weight sin(lambda a) = 0");
    }
    const int il = (i + L - 1) % L, ir = (i + 1) % L;
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const int left = basis.height(c, il), right = basis.height(c, ir);
        if (left != right) continue;
        const int a = basis.height(c, i);
        for (int ap : {left - 1, left + 1}) {
            if (ap < 1 || ap > m) continue;
            const auto r = basis.index(set_height(basis.states[c], i, ap));
            const double w = std::copysign(std::sqrt(std::abs(s[ap] * s[a])), s[ap]) / s[left];
            out.push_back({static_cast<std::int32_t>(r), static_cast<std::int32_t>(c), scale * w});
        }
    }
}

}  // namespace

kernels::Csr tl_generator(const HeightBasis& basis, int k, int i) {
    std::vector<Triplet> t;
    tl_triplets(basis, k, i, 1.0, t);
    return make_csr(basis.size(), basis.size(), std::move(t));
}

RsosChain build_rsos_hamiltonian(int m, int k, int L) {
    if (k < 1 || k > m) throw LatticeError("require 1 <= k <= m");
    RsosChain ch;
    ch.m = m;
    ch.k = k;
    ch.basis = enumerate_heights(m, L);
    const std::size_t n = ch.basis.size();
    std::vector<Triplet> t;
    for (int i = 0; i < L; ++i) tl_triplets(ch.basis, k, i, -1.0, t);
    ch.H.dim = n;
    ch.H.L = L;
    ch.H.re = make_csr(n, n, std::move(t));
    ch.H.im = make_csr(n, n, {});
    ch.H.shift.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        // (T a)_i = a_{i-1}
        const std::uint64_t c = ch.basis.states[s];
        const std::uint64_t rot = ((c << 4) | (c >> (4 * (L - 1)))) & ((L == 16) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (4 * L)) - 1));
        ch.H.shift[s] = static_cast<std::int32_t>(ch.basis.index(rot));
    }
    return ch;
}

}  // namespace rentwist::lattice
