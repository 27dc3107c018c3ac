#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace rentwist {

using cdouble = std::complex<double>;

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class DegenerateParametersError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

cdouble lgamma(cdouble z);
cdouble gamma(cdouble z);
double gamma(double x);
// 1/Gamma, entire; exactly 0 at non-positive integers.
double rgamma(double x);
// Gamma(x)/Gamma(1-x); throws PoleError at poles of the numerator, returns 0 at poles of the denominator.
double gamma_ratio(double x);

struct HypParams {
    double a, b, c;
    double d() const { return c - a - b; }
};

// Gauss 2F1 on |x| < 1 or |1-x| < 1.
cdouble hyp2f1(const HypParams& p, cdouble x);
cdouble hyp2f1_series(const HypParams& p, cdouble x, int max_terms = 20000);

// Connection between I = (F(a,b;c|x), x^{1-c}F(b-c+1,a-c+1;2-c|x))
// and J = (F(a,b;1-d|1-x), (1-x)^d F(c-a,c-b;1+d|1-x)): I_i = sum_j A_ij J_j.
struct Connection2x2 {
    std::array<std::array<double, 2>, 2> A, Ainv;
};
Connection2x2 connection_2x2(const HypParams& p);

struct CharacterSpec {
    int p, pp, r, s;
};
struct Character {
    double h = 0.0, c = 0.0;
    double leading = 0.0;               // h - c/24
    std::vector<long long> coeffs;      // chi = q^leading * sum_n coeffs[n] q^n
};
double central_charge(int p, int pp);
double conformal_weight(const CharacterSpec& s);
Character kac_character(const CharacterSpec& spec, int M);
// Direct numerical evaluation by theta-type sums, 0 < q < 1.
double kac_character_value(const CharacterSpec& spec, double q);

cdouble dedekind_eta(cdouble q);
// Lambda function in terms of the nome q = exp(2 pi i tau), real 0 < q < 1.
double x_from_nome(double q);
double nome_from_x(double x);

// Truncated real power series in one variable.
struct PowerSeries {
    std::vector<double> c;
    explicit PowerSeries(std::size_t n = 0) : c(n, 0.0) {}
    std::size_t size() const { return c.size(); }
    double& operator[](std::size_t i) { return c[i]; }
    double operator[](std::size_t i) const { return c[i]; }
};
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries scale(const PowerSeries& a, double s);
// (1 + a_1 t + ...)^e for a series with constant term 1.
PowerSeries pow1(const PowerSeries& a, double e);
// f(a(t)) for f given by coefficients and a with zero constant term.
PowerSeries compose(const std::vector<double>& f, const PowerSeries& a);

}  // namespace rentwist
