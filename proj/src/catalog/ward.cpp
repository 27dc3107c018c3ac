#include "rentwist/catalog.hpp"

#include <cmath>

namespace rentwist {

namespace {

// Coefficients of (1 + k w)^e up to w^order.
std::vector<cdouble> binomial_series(cdouble k, double e, int order) {
    std::vector<cdouble> c(static_cast<std::size_t>(order + 1));
    cdouble term = 1.0;
    for (int n = 0; n <= order; ++n) {
        c[static_cast<std::size_t>(n)] = term;
        term *= (e - n) / (n + 1.0) * k;
    }
    return c;
}

std::vector<cdouble> times(const std::vector<cdouble>& a, const std::vector<cdouble>& b) {
    std::vector<cdouble> r(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

cdouble cpow(double base, double e) { return std::pow(cdouble(base, 0.0), e); }

}  // namespace

std::vector<cdouble> ward_taylor(WardFamily f, double m2, double m3, double m4, double x, int order) {
    if (order < 0) throw std::invalid_argument("ward_taylor: negative order");
    if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("ward_taylor: need 0 < x < 1");
    const double al = m2 + 1, be = m3 + 1, ga = m4 + 1;
    std::vector<cdouble> s;
    cdouble pre = 1.0;
    switch (f) {
        case WardFamily::A:  // (1-z)^al (1-xz)^be about z = 0
            s = times(binomial_series(-1.0, al, order), binomial_series(-x, be, order));
            break;
        case WardFamily::B:  // (z-x)^be z^ga about z = 1
            pre = cpow(1 - x, be);
            s = times(binomial_series(1.0 / (1 - x), be, order), binomial_series(1.0, ga, order));
            break;
        case WardFamily::C:  // (z-1)^al z^ga about z = x
            pre = cpow(x - 1, al) * cpow(x, ga);
            s = times(binomial_series(1.0 / (x - 1), al, order), binomial_series(1.0 / x, ga, order));
            break;
        case WardFamily::D:  // (z-1)^al (z-x)^be about z = 0
            pre = cpow(-1.0, al) * cpow(-x, be);
            s = times(binomial_series(-1.0, al, order), binomial_series(-1.0 / x, be, order));
            break;
    }
    for (auto& v : s) v *= pre;
    return s;
}

std::vector<RPoly> ward_q_polynomials() {
    auto r = [](std::initializer_list<long> c) {
        std::vector<Rational> v;
        for (long x : c) v.emplace_back(x);
        return RPoly(v);
    };
    const RPoly x = RPoly::identity();
    const RPoly xm1 = r({-1, 1});
    return {
        Rational(243) * pow(x, 4),
        Rational(162) * pow(x, 3) * r({2, 1}),
        Rational(27) * pow(x, 2) * r({-2, -8, 1}),
        Rational(12) * x * pow(xm1, 3),
        pow(xm1, 3) * r({5, 7}),
    };
}

}  // namespace rentwist
