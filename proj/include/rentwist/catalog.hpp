#pragma once

#include "rentwist/monodromy.hpp"
#include "rentwist/specfun.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rentwist {

// Rational function of the model parameter g.
struct RatFun {
    RPoly num, den;
    Rational operator()(const Rational& g) const { return num(g) / den(g); }
};

struct CorrelatorModel {
    std::string id;
    std::string description;
    std::optional<Rational> g;
    StandardOde ode;                 // defining operator in standard form (empty when only a theta form exists)
    ThetaOde theta;                  // theta form of the defining operator, centred at 0
    Rational p0 = 0, p1 = 0;         // unknown = x^p0 (1-x)^p1 * block
    ThetaOde block_theta;            // operator satisfied by the blocks
    StandardOde block_ode;
    std::vector<Rational> scheme0, scheme1, schemeinf;   // expected Riemann scheme of the defining operator
    std::vector<Rational> basis0, basis1;                // block exponents, in basis order
    double central_charge = 0.0;     // of the mother theory
    int replicas = 0;
    double h_twist = 0.0;            // dimension of the twist insertion probed by the model
    bool has_closed_form = false;
};

std::vector<std::string> model_ids();
// Accepts plain ids and parameterised ids such as "mm_n2_phi21(0.8)" or "mm_n3_phi21(4/3)".
CorrelatorModel get_model(const std::string& id);

struct ModelSolution {
    std::vector<FrobeniusSeries> basis0, basis1;
    ConnectionFit fit;
    DiagonalInvariants inv;
};
// Frobenius bases, connection fit and diagonal invariants for a model.
ModelSolution solve_model(const CorrelatorModel& m);
Correlator assemble(const CorrelatorModel& m, const ModelSolution& s);

// Symbolic-parameter data for the parameterised families.
BasicThetaOde<RPoly> symbolic_theta(const std::string& family);
struct SymbolicScheme {
    std::vector<RatFun> at0, at1, atinf;
};
SymbolicScheme symbolic_expected_scheme(const std::string& family);
// True iff the claimed roots are exactly the roots (with multiplicity) of P as polynomials in g.
bool verify_symbolic_roots(const RPoly2& P, const std::vector<RatFun>& roots);
RPoly2 symbolic_indicial(const std::string& family, Center where);   // where = Zero or One
RPoly2 symbolic_indicial_infinity(const std::string& family);

// Closed-form evaluation (hypergeometric representation) for the models that have one.
double closed_form_eval(const CorrelatorModel& m, cdouble x);
// One-interval vacuum function through the unfolded four-point representation.
double unfolded_vacuum_eval(double x);
// mm_n2 closed-form coefficient in gamma-product form.
double mm_n2_gamma_product_coefficient(double g);
// General 2x2 gamma-product coefficients.
struct GammaCoefficients {
    double X1, X2, Y2, ratio;
};
GammaCoefficients gamma_coefficients(const HypParams& p);
// Relative power of |1-x| converting the model function to <Phi tau tau Phi>.
double model_to_twist_correlator_exponent(const CorrelatorModel& m);

struct OpeEntry {
    std::string name;
    cdouble value;
    std::string provenance;
};
std::vector<OpeEntry> ope_table();
const OpeEntry& ope_lookup(const std::string& name);
std::string ope_csv();

struct TorusPoint {
    double q, x;
    double chi11_res, chi12_res, z_res;
};
struct TorusReport {
    std::vector<TorusPoint> points;
    std::vector<double> chi11_series, chi12_series;     // coefficients in q after stripping the leading power
    std::vector<long long> chi11_expected, chi12_expected;
};
TorusReport torus_check(const std::vector<double>& qs, int order = 4);

enum class WardFamily { A, B, C, D };
std::vector<cdouble> ward_taylor(WardFamily f, double m2, double m3, double m4, double x, int order);
// N = 3 Ward polynomials Q_m, m = -2..2.
std::vector<RPoly> ward_q_polynomials();

// (c_eff/6) (N+1)/N log((L/pi) sin(pi l / L)) for l = 1..L-1.
std::vector<double> ceff_comparison_curve(int L, int N, double c_eff = 0.4);

}  // namespace rentwist
