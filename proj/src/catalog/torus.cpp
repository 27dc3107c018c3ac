#include "rentwist/catalog.hpp"

#include <cmath>

namespace rentwist {

namespace {

std::vector<double> hyp_coeffs(const HypParams& p, std::size_t n) {
    std::vector<double> f(n, 0.0);
    f[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        const double j = static_cast<double>(k - 1);
        f[k] = f[k - 1] * (p.a + j) * (p.b + j) / ((p.c + j) * (j + 1));
    }
    return f;
}

// x(s)/(16 s) with s = q^{1/2}, as a series in s.
PowerSeries lambda_ratio(std::size_t n) {
    PowerSeries u(n);
    u[0] = 1.0;
    for (std::size_t k = 1; 2 * k - 1 < n; ++k) {
        PowerSeries num(n), den(n);
        num[0] = den[0] = 1.0;
        if (2 * k < n) num[2 * k] = 1.0;
        den[2 * k - 1] = 1.0;
        u = u * pow1(num, 8.0) * pow1(den, -8.0);
    }
    return u;
}

}  // namespace

TorusReport torus_check(const std::vector<double>& qs, int order) {
    TorusReport rep;
    const auto yl = get_model("yl2int_vac");
    const double e = 11.0 / 30;
    for (double q : qs) {
        const double x = x_from_nome(q);
        const double base = std::pow(x * (1 - x), e);
        const double rhs11 = std::pow(2.0, -22.0 / 15) * base * hyp2f1({0.7, 1.1, 1.4}, x).real();
        const double rhs12 = std::pow(2.0, 2.0 / 15) * base * std::pow(x, -0.4) * hyp2f1({0.7, 0.3, 0.6}, x).real();
        const double c11 = kac_character_value({5, 2, 1, 1}, q);
        const double c12 = kac_character_value({5, 2, 1, 2}, q);
        const double Z = c11 * c11 + c12 * c12;
        const double Zg = std::pow(2.0, -44.0 / 15) * std::pow(x * (1 - x), -e) * closed_form_eval(yl, x);
        rep.points.push_back({q, x, std::fabs(c11 - rhs11) / std::fabs(c11), std::fabs(c12 - rhs12) / std::fabs(c12),
                              std::fabs(Z - Zg) / std::fabs(Z)});
    }
    const std::size_t n = static_cast<std::size_t>(2 * order + 1);
    const PowerSeries u = lambda_ratio(n);
    PowerSeries x(n);
    for (std::size_t k = 1; k < n; ++k) x[k] = 16.0 * u[k - 1];
    PowerSeries omx = scale(x, -1.0);
    omx[0] = 1.0;
    const PowerSeries s11 = pow1(u, e) * pow1(omx, e) * compose(hyp_coeffs({0.7, 1.1, 1.4}, n), x);
    const PowerSeries s12 = pow1(u, e - 0.4) * pow1(omx, e) * compose(hyp_coeffs({0.7, 0.3, 0.6}, n), x);
    for (int k = 0; k <= order; ++k) {
        rep.chi11_series.push_back(s11[static_cast<std::size_t>(2 * k)]);
        rep.chi12_series.push_back(s12[static_cast<std::size_t>(2 * k)]);
    }
    rep.chi11_expected = kac_character({5, 2, 1, 1}, order).coeffs;
    rep.chi12_expected = kac_character({5, 2, 1, 2}, order).coeffs;
    return rep;
}

}  // namespace rentwist
