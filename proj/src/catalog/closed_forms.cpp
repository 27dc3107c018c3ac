#include "rentwist/catalog.hpp"

#include <cmath>

namespace rentwist {

GammaCoefficients gamma_coefficients(const HypParams& p) {
    const double a = p.a, b = p.b, c = p.c, d = p.d();
    auto g = gamma_ratio;
    GammaCoefficients r;
    r.X1 = g(1 - c) * g(1 - d) * g(c - a) * g(c - b);
    r.X2 = -g(c) / ((1 - c) * (1 - c)) * g(1 - d) * g(1 - a) * g(1 - b);
    const double t = gamma(1 - d) / gamma(1 + d);
    r.Y2 = -t * t * g(1 - a) * g(1 - b) * g(c - a) * g(c - b);
    const double s = gamma(c) / gamma(2 - c);
    r.ratio = -s * s * g(1 - a) * g(1 - b) * g(1 - c + a) * g(1 - c + b);
    return r;
}

double mm_n2_gamma_product_coefficient(double g) {
    const double num = 32.0 * (1 - 2 * g) * (1 - 2 * g) * std::pow(gamma_ratio(2 * g - 0.5), 3) * std::pow(gamma_ratio(2 - 4 * g), 2);
    // 1/gamma(2-3g) = Gamma(3g-1)/Gamma(2-3g) is entire in the numerator sense.
    const double inv = gamma(3 * g - 1) * rgamma(2 - 3 * g);
    return num * inv / std::pow(1 - 4 * g, 3);
}

namespace {

double two_block(const HypParams& p, double X1, double X2, cdouble x) {
    const cdouble I1 = hyp2f1(p, x);
    const cdouble I2 = std::pow(x, 1 - p.c) * hyp2f1({p.b - p.c + 1, p.a - p.c + 1, 2 - p.c}, x);
    return X1 * std::norm(I1) + X2 * std::norm(I2);
}

double ising_closed(cdouble x) {
    if (x.imag() != 0.0 || !(x.real() > 0.0 && x.real() < 1.0))
        throw std::domain_error("Ising closed form is available for real 0 < x < 1");
    const double xr = x.real();
    const double q = nome_from_x(xr);
    double Z = 0.0;
    for (int s = 1; s <= 3; ++s) {
        const double ch = kac_character_value({4, 3, 1, s}, q);
        Z += ch * ch;
    }
    const double c = 0.5;
    return std::pow(4.0, -c / 3) * std::pow(xr * (1 - xr), -c / 12) * Z;
}

}  // namespace

double closed_form_eval(const CorrelatorModel& m, cdouble x) {
    if (!m.has_closed_form) throw std::invalid_argument("model '" + m.id + "' has no closed form");
    const double pref = std::pow(std::abs(x), 2 * to_double(m.p0)) * std::pow(std::abs(1.0 - x), 2 * to_double(m.p1));
    if (m.id == "yl2int_vac") return pref * two_block({0.7, 1.1, 1.4}, 1.0, std::pow(2.0, 16.0 / 5), x);
    if (m.id == "yl1int_vac") {
        const HypParams p{0.8, 0.7, 1.1};
        const auto gc = gamma_coefficients(p);
        return pref * two_block(p, gc.X1, gc.X2, x);
    }
    if (m.id == "ising2int_vac") return ising_closed(x);
    if (m.g) {
        const double g = to_double(*m.g);
        const HypParams p{2 - 3 * g, 1.5 - 2 * g, 1.5 - g};
        const double d = p.d();
        const cdouble y = 1.0 - x;
        const cdouble J1 = hyp2f1({p.a, p.b, 1 - d}, y);
        const cdouble J2 = std::pow(y, d) * hyp2f1({p.c - p.a, p.c - p.b, 1 + d}, y);
        return pref * (std::norm(J1) + gamma_coefficients(p).Y2 * std::norm(J2));
    }
    throw std::invalid_argument("model '" + m.id + "' has no closed form");
}

double unfolded_vacuum_eval(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("unfolded_vacuum_eval: need 0 < x < 1");
    const double s = std::sqrt(x);
    const double u = 4 * s / ((1 + s) * (1 + s));
    const HypParams p{0.6, 0.8, 1.2};
    const auto gc = gamma_coefficients(p);
    const double pref = std::pow(16 * x, 0.8) * std::pow((1 - s) / (1 + s), 1.6);
    return pref * two_block(p, gc.X1, gc.X2, u);
}

std::vector<double> ceff_comparison_curve(int L, int N, double c_eff) {
    if (L < 2 || N < 2) throw std::invalid_argument("ceff_comparison_curve: need L >= 2 and N >= 2");
    std::vector<double> out;
    for (int l = 1; l < L; ++l)
        out.push_back(c_eff / 6.0 * (N + 1.0) / N * std::log(L / M_PI * std::sin(M_PI * l / L)));
    return out;
}

}  // namespace rentwist
