#pragma once

#include "rentwist/kernels.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rentwist::lattice {

using cdouble = std::complex<double>;

class LatticeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Height strings a_0..a_{L-1}, four bits per site, lexicographic order.
struct HeightBasis {
    int m = 0, L = 0;
    std::vector<std::uint64_t> states;

    std::size_t size() const { return states.size(); }
    int height(std::size_t s, int site) const { return static_cast<int>((states[s] >> (4 * site)) & 0xF); }
    // -1 if absent.
    std::ptrdiff_t index(std::uint64_t code) const;
    std::string digits(std::size_t s) const;
    static std::uint64_t encode(const std::vector<int>& heights);
};

HeightBasis enumerate_heights(int m, int L);
// Tr A^L for the adjacency matrix of the path graph with m nodes.
long long adjacency_trace(int m, int L);

// Sparse operator on a finite basis, H = re + i im, commuting with a one-site translation.
struct LatticeOperator {
    std::size_t dim = 0;
    int L = 0;
    kernels::Csr re, im;
    bool complex_valued = false;
    std::vector<std::int32_t> shift;    // basis index of the state translated by one site

    void apply(const cdouble* x, cdouble* y) const;
    Eigen::MatrixXcd dense() const;
    LatticeOperator transposed() const;
};

// Builds a CSR matrix from (row, col, value) triplets, summing duplicates.
struct Triplet {
    std::int32_t row, col;
    double value;
};
kernels::Csr make_csr(std::size_t rows, std::size_t cols, std::vector<Triplet> t);

struct RsosChain {
    int m = 0, k = 0;
    HeightBasis basis;
    LatticeOperator H;
};

double crossing_parameter(int m, int k);
RsosChain build_rsos_hamiltonian(int m, int k, int L);
// Temperley-Lieb generator acting on heights (a_{i-1}, a_i, a_{i+1}).
kernels::Csr tl_generator(const HeightBasis& basis, int k, int i);

struct EigenPair {
    cdouble energy;
    Eigen::VectorXcd right;
    Eigen::VectorXcd left;      // covector: left^T H = energy left^T, left^T right = 1
    int momentum = 0;
    bool defective = false;
};

enum class Solver { Dense, Sector, Arnoldi };

struct ArnoldiOptions {
    int ncv = 0;
    int max_restarts = 500;
    double tol = 1e-13;
    unsigned seed = 12345;
};

// Lowest n_states by real part. With a momentum, only that translation sector is searched.
std::vector<EigenPair> eigensystem(const LatticeOperator& H, int n_states, std::optional<int> momentum = std::nullopt,
                                   Solver solver = Solver::Sector, const ArnoldiOptions& opt = {});

// Sector restriction of H with respect to the basis v_r = sum_j w^{-jk} T^j |rep_r>.
struct MomentumSector {
    int k = 0;
    std::vector<std::int32_t> reps;      // representative basis index per allowed orbit
    std::vector<std::int32_t> period;
    Eigen::MatrixXcd block;
    Eigen::VectorXcd embed(const Eigen::VectorXcd& c, int sign = 1) const;
    const LatticeOperator* op = nullptr;
    std::vector<std::int32_t> orbit_of, steps_to_rep;   // per basis state
};
MomentumSector momentum_sector(const LatticeOperator& H, int k);

// Ritz pairs of the lowest real part by implicitly restarted Arnoldi, restricted to momentum k.
struct ArnoldiResult {
    std::vector<cdouble> values;
    std::vector<Eigen::VectorXcd> vectors;
    int restarts = 0;
    int matvecs = 0;
    double max_residual = 0.0;
};
ArnoldiResult arnoldi_lowest(const LatticeOperator& H, int nev, int k, const ArnoldiOptions& opt = {});

// ---- reduced density matrices and twisted traces ----

// Subsystem sites i..i+ell; blocks labelled by the boundary heights, each stored as
// rho_block = psi * psiw^T with psi(A, B) = right, psiw(A, B) = left.
struct ReducedDensity {
    int i = 0, ell = 0, L = 0;
    struct Block {
        int a = 0, b = 0;
        std::vector<std::uint64_t> interior;     // interior subsystem strings, rows of psi
        Eigen::MatrixXcd psi, psiw;
        Eigen::MatrixXcd rho() const { return psi * psiw.transpose(); }
    };
    std::vector<Block> blocks;
    cdouble trace() const;
    // Tr(D rho^N) with D(a, b) = wa[a] * wb[b]; heights index from 1.
    cdouble twisted_trace(int N, const std::vector<double>& weight) const;
    Eigen::MatrixXcd dense() const;
};

ReducedDensity reduced_density(const HeightBasis& basis, const EigenPair& pair, int i, int ell);

// phi_hat_q(b) for b = 1..m (index 0 unused).
std::vector<double> twist_weights(int m, int k, int q, int n);
// x_q for q = 1..m (index 0 unused).
std::vector<double> bare_coefficients(int m, int k, int n);
// sum_q x_q phi_hat_q(b), the bare twist per branch point.
std::vector<double> bare_weights(int m, int k, int n);

struct Insertion {
    enum Kind { None, Twist, Bare } kind = None;
    int q = 0;
    static Insertion none() { return {None, 0}; }
    static Insertion twist(int q) { return {Twist, q}; }
    static Insertion bare() { return {Bare, 0}; }
    std::string label() const;
};

struct RenyiValue {
    cdouble value;
    cdouble entropy;
    bool nonpositive = false;
};
RenyiValue renyi_twisted(const ReducedDensity& rd, int m, int k, int N, const Insertion& ins);

double twist_dimension(int m, int k, int q, int N);   // hat h of tau_{phi_q}

enum class StateSel { Ground, Vacuum };
StateSel parse_state(const std::string& s);

struct CurveRow {
    int ell;
    cdouble trace;
    cdouble entropy;
    double rescaled;
};
struct EntropyCurve {
    int m = 0, k = 0, L = 0, N = 0;
    Insertion insertion;
    cdouble energy;
    std::vector<CurveRow> rows;
    std::string csv(bool header = true) const;
};

// The chain and its selected eigenpair, reusable across insertions.
struct PreparedState {
    RsosChain chain;
    EigenPair pair;
};
PreparedState prepare_state(int m, int k, int L, StateSel sel, Solver solver = Solver::Sector);
EntropyCurve entropy_curve(const PreparedState& st, int N, const Insertion& ins, int threads = 1);
EntropyCurve entropy_curve(int m, int k, int L, int N, StateSel sel, const Insertion& ins, int threads = 1);

struct DimensionFit {
    double h = 0.0;          // log-sine regression with an X^{-2} correction
    double h_plain = 0.0;    // pure two-parameter log-sine regression
    double slope = 0.0;      // d log|Tr| / d log X of the corrected fit
    double h_osc = 0.0;      // corrected fit plus a parity term (-1)^ell X^{-p}
    double osc_exponent = 0.0;
};
// X = (L/pi) sin(pi ell / L), log|Tr| = a - 4 h log X + b / X^2; p for h_osc is scanned on a grid.
DimensionFit fit_twist_dimension(const EntropyCurve& curve);

struct Overlay {
    std::vector<int> ell;
    std::vector<double> lattice, prediction;   // prediction already multiplied by the fitted constant
    double constant = 0.0;
    double rms = 0.0;
};
// One multiplicative constant minimising the relative deviations.
Overlay fit_overlay(const std::vector<int>& ell, const std::vector<double>& lattice, const std::vector<double>& model);
// Curve of the twist-field correlator |1-x|^e F(x) at x = exp(2 pi i ell / L).
std::vector<double> catalog_prediction(const std::string& model_id, int L, const std::vector<int>& ell);
std::vector<double> ceff_prediction(int L, int N, const std::vector<int>& ell, double c_eff = 0.4);

// ---- imaginary-field Ising chain ----

LatticeOperator ising_imaginary_chain(double lambda, double h, int L);
// max |P H P - H^dagger| with P = prod sigma^z.
double parity_defect(const LatticeOperator& H);
// Two lowest eigenvalues of the zero-momentum sector by real part.
std::pair<cdouble, cdouble> ising_lowest_pair(double lambda, double h, int L);
// Field where the two lowest levels merge into a complex-conjugate pair.
double ising_critical_field(double lambda, int L, double tol = 1e-12);

struct CrossoverCurve {
    double fraction = 0.0, h = 0.0;
    cdouble energy;
    std::vector<cdouble> s2;       // ell = 1..L-1
    double midpoint_second_difference = 0.0;
    double left_right_overlap = 0.0;   // |l^dag r| / (|l||r|)
};
struct CrossoverStudy {
    double lambda = 0.0, h_c = 0.0;
    int L = 0;
    std::vector<CrossoverCurve> curves;
};
CrossoverStudy crossover_study(double lambda, int L, const std::vector<double>& fractions);

}  // namespace rentwist::lattice
