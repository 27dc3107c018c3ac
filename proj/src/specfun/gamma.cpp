#include "rentwist/specfun.hpp"

#include <cmath>
#include <numbers>

namespace rentwist {

namespace {
constexpr double kG = 607.0 / 128.0;
constexpr double kLanczos[] = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }
}  // namespace

cdouble lgamma(cdouble z) {
    using std::numbers::pi;
    if (z.real() < 0.5) return std::log(pi / std::sin(pi * z)) - lgamma(1.0 - z);
    z -= 1.0;
    cdouble x = kLanczos[0];
    for (int i = 1; i < 15; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    cdouble t = z + kG + 0.5;
    return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cdouble gamma(cdouble z) {
    using std::numbers::pi;
    if (z.imag() == 0.0 && nonpositive_integer(z.real())) throw PoleError("Gamma pole at non-positive integer");
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma(1.0 - z));
    return std::exp(lgamma(z));
}

double gamma(double x) {
    if (nonpositive_integer(x)) throw PoleError("Gamma pole at non-positive integer");
    return gamma(cdouble(x, 0.0)).real();
}

double rgamma(double x) {
    if (nonpositive_integer(x)) return 0.0;
    return 1.0 / gamma(x);
}

double gamma_ratio(double x) {
    if (nonpositive_integer(x)) throw PoleError("gamma_ratio: pole of Gamma(x)");
    return gamma(x) * rgamma(1.0 - x);
}

}  // namespace rentwist
