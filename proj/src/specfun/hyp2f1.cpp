#include "rentwist/specfun.hpp"

#include <cmath>

namespace rentwist {

cdouble hyp2f1_series(const HypParams& p, cdouble x, int max_terms) {
    if (std::abs(x) >= 1.0) throw std::domain_error("hyp2f1_series: |x| >= 1");
    cdouble sum = 1.0, term = 1.0;
    int quiet = 0;
    for (int n = 0; n < max_terms; ++n) {
        const double cn = p.c + n;
        if (cn == 0.0) throw PoleError("hyp2f1: c is a non-positive integer");
        term *= (p.a + n) * (p.b + n) / (cn * (n + 1.0)) * x;
        sum += term;
        if (term == 0.0) break;
        quiet = std::abs(term) < 1e-17 * std::abs(sum) ? quiet + 1 : 0;
        if (quiet >= 3) break;
    }
    return sum;
}

namespace {
cdouble via_one(const HypParams& p, cdouble x) {
    const double d = p.d();
    if (d == std::round(d)) throw DegenerateParametersError("hyp2f1: c - a - b is an integer, connection formula is degenerate");
    const double g1 = gamma(p.c) * gamma(d) * rgamma(p.c - p.a) * rgamma(p.c - p.b);
    const double g2 = gamma(p.c) * gamma(-d) * rgamma(p.a) * rgamma(p.b);
    const cdouble y = 1.0 - x;
    cdouble r = 0.0;
    if (g1 != 0.0) r += g1 * hyp2f1_series({p.a, p.b, 1.0 - d}, y);
    if (g2 != 0.0) r += g2 * std::pow(y, d) * hyp2f1_series({p.c - p.a, p.c - p.b, 1.0 + d}, y);
    return r;
}
}  // namespace

cdouble hyp2f1(const HypParams& p, cdouble x) {
    if (std::abs(x) <= 0.6) return hyp2f1_series(p, x);
    if (std::abs(1.0 - x) <= 0.6) return via_one(p, x);
    if (std::abs(x) < 1.0) return hyp2f1_series(p, x, 200000);
    if (std::abs(1.0 - x) < 1.0) return via_one(p, x);
    throw std::domain_error("hyp2f1: point outside both unit disks");
}

Connection2x2 connection_2x2(const HypParams& p) {
    const double a = p.a, b = p.b, c = p.c, d = p.d();
    if (d == std::round(d) || c == std::round(c))
        throw DegenerateParametersError("connection_2x2: c or c - a - b is an integer");
    Connection2x2 r;
    r.A[0][0] = gamma(c) * gamma(d) * rgamma(c - a) * rgamma(c - b);
    r.A[0][1] = gamma(c) * gamma(-d) * rgamma(a) * rgamma(b);
    r.A[1][0] = gamma(2 - c) * gamma(d) * rgamma(1 - a) * rgamma(1 - b);
    r.A[1][1] = gamma(2 - c) * gamma(-d) * rgamma(1 - c + a) * rgamma(1 - c + b);
    r.Ainv[0][0] = gamma(1 - d) * gamma(1 - c) * rgamma(1 - c + b) * rgamma(1 - c + a);
    r.Ainv[0][1] = gamma(1 - d) * gamma(c - 1) * rgamma(a) * rgamma(b);
    r.Ainv[1][0] = gamma(1 + d) * gamma(1 - c) * rgamma(1 - a) * rgamma(1 - b);
    r.Ainv[1][1] = gamma(1 + d) * gamma(c - 1) * rgamma(c - a) * rgamma(c - b);
    return r;
}

}  // namespace rentwist
