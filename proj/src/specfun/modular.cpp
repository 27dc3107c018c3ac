#include "rentwist/specfun.hpp"

#include <cmath>
#include <numeric>

namespace rentwist {

double central_charge(int p, int pp) {
    return 1.0 - 6.0 * (p - pp) * (p - pp) / static_cast<double>(p * pp);
}

double conformal_weight(const CharacterSpec& s) {
    const double l = s.p * s.r - s.pp * s.s;
    return (l * l - static_cast<double>((s.p - s.pp) * (s.p - s.pp))) / (4.0 * s.p * s.pp);
}

namespace {
void validate(const CharacterSpec& s) {
    if (s.p < 2 || s.pp < 2 || std::gcd(s.p, s.pp) != 1) throw std::invalid_argument("kac_character: need coprime p, p' >= 2");
    if (s.r < 1 || s.r > s.pp - 1 || s.s < 1 || s.s > s.p - 1)
        throw std::invalid_argument("kac_character: Kac labels out of range");
}
}  // namespace

Character kac_character(const CharacterSpec& spec, int M) {
    validate(spec);
    if (M < 0 || M > 50) throw std::invalid_argument("kac_character: order must lie in [0, 50]");
    const long long P = 2LL * spec.p * spec.pp, N = 2 * P;
    const long long l1 = static_cast<long long>(spec.p) * spec.r - static_cast<long long>(spec.pp) * spec.s;
    const long long l2 = static_cast<long long>(spec.p) * spec.r + static_cast<long long>(spec.pp) * spec.s;
    std::vector<long long> num(static_cast<std::size_t>(M + 1), 0);
    for (long long n = -60; n <= 60; ++n) {
        const long long e1 = ((P * n + l1) * (P * n + l1) - l1 * l1) / N;
        const long long e2 = ((P * n + l2) * (P * n + l2) - l1 * l1) / N;
        if (e1 >= 0 && e1 <= M) num[static_cast<std::size_t>(e1)] += 1;
        if (e2 >= 0 && e2 <= M) num[static_cast<std::size_t>(e2)] -= 1;
    }
    // Multiply by 1/prod(1-q^k) = sum of partition numbers.
    std::vector<long long> part(static_cast<std::size_t>(M + 1), 0);
    part[0] = 1;
    for (int k = 1; k <= M; ++k)
        for (int n = k; n <= M; ++n) part[static_cast<std::size_t>(n)] += part[static_cast<std::size_t>(n - k)];
    Character ch;
    ch.h = conformal_weight(spec);
    ch.c = central_charge(spec.p, spec.pp);
    ch.leading = static_cast<double>(l1 * l1) / static_cast<double>(N) - 1.0 / 24.0;
    ch.coeffs.assign(static_cast<std::size_t>(M + 1), 0);
    for (int i = 0; i <= M; ++i)
        for (int j = 0; i + j <= M; ++j)
            ch.coeffs[static_cast<std::size_t>(i + j)] += num[static_cast<std::size_t>(i)] * part[static_cast<std::size_t>(j)];
    return ch;
}

double kac_character_value(const CharacterSpec& spec, double q) {
    validate(spec);
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("kac_character_value: need 0 < q < 1");
    const double P = 2.0 * spec.p * spec.pp, N = 2.0 * P;
    const double l1 = spec.p * spec.r - spec.pp * spec.s, l2 = spec.p * spec.r + spec.pp * spec.s;
    const double lq = std::log(q);
    double sum = 0.0;
    for (int n = -40; n <= 40; ++n) {
        sum += std::exp(lq * (P * n + l1) * (P * n + l1) / N);
        sum -= std::exp(lq * (P * n + l2) * (P * n + l2) / N);
    }
    return sum / dedekind_eta(q).real();
}

cdouble dedekind_eta(cdouble q) {
    if (std::abs(q) >= 1.0) throw std::domain_error("dedekind_eta: |q| >= 1");
    cdouble prod = 1.0, qn = q;
    for (int n = 1; n < 100000; ++n) {
        prod *= 1.0 - qn;
        if (std::abs(qn) < 1e-18) break;
        qn *= q;
    }
    return std::pow(q, 1.0 / 24.0) * prod;
}

double x_from_nome(double q) {
    if (!(q > 0.0 && q < 1.0)) throw std::domain_error("x_from_nome: need 0 < q < 1");
    const double s = std::sqrt(q);
    double prod = 1.0, qn = q, qh = s;
    for (int n = 1; n < 100000; ++n) {
        prod *= std::pow((1.0 + qn) / (1.0 + qh), 8);
        if (qh < 1e-18) break;
        qn *= q;
        qh *= q;
    }
    return 16.0 * s * prod;
}

double nome_from_x(double x) {
    if (!(x > 0.0 && x < 1.0)) throw std::domain_error("nome_from_x: need 0 < x < 1");
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= 0.0 || mid >= 1.0) break;
        (x_from_nome(mid) < x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
    return r;
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    const std::size_t n = std::min(a.size(), b.size());
    PowerSeries r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = a[i] + b[i];
    return r;
}

PowerSeries scale(const PowerSeries& a, double s) {
    PowerSeries r = a;
    for (auto& v : r.c) v *= s;
    return r;
}

PowerSeries pow1(const PowerSeries& a, double e) {
    if (a.size() == 0 || a[0] != 1.0) throw std::invalid_argument("pow1: constant term must be 1");
    // r' a = e a' r, solved order by order.
    const std::size_t n = a.size();
    PowerSeries r(n);
    r[0] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) acc += (e * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * r[k - j];
        r[k] = acc / static_cast<double>(k);
    }
    return r;
}

PowerSeries compose(const std::vector<double>& f, const PowerSeries& a) {
    if (a.size() && a[0] != 0.0) throw std::invalid_argument("compose: inner series must vanish at 0");
    PowerSeries r(a.size()), p(a.size());
    if (a.size() == 0) return r;
    p[0] = 1.0;
    for (std::size_t k = 0; k < f.size() && k < a.size(); ++k) {
        r = r + scale(p, f[k]);
        p = p * a;
    }
    return r;
}

}  // namespace rentwist
