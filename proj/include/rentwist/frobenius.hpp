#pragma once

#include "rentwist/polynomial.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rentwist {

using cdouble = std::complex<double>;

enum class Center { Zero, One };

class NonFuchsianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class LogarithmicCaseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// sum_k c[k](x) d^k/dx^k
template <class T>
struct BasicStandardOde {
    std::vector<Polynomial<T>> c;
    int order() const { return static_cast<int>(c.size()) - 1; }
};

// sum_j x^j P[j](theta), theta = x d/dx, expanded about `center` (x is replaced by 1-x for Center::One).
template <class T>
struct BasicThetaOde {
    int order = 0;
    std::vector<Polynomial<T>> P;
    Center center = Center::Zero;
    int K() const { return static_cast<int>(P.size()) - 1; }
};

using StandardOde = BasicStandardOde<Rational>;
using ThetaOde = BasicThetaOde<Rational>;
using StandardOdeD = BasicStandardOde<double>;
using ThetaOdeD = BasicThetaOde<double>;

namespace detail {

template <class T>
Polynomial<T> falling(int k) {
    Polynomial<T> r = Polynomial<T>::constant(T(1));
    for (int i = 0; i < k; ++i)
        r = r * Polynomial<T>(std::vector<T>{T(-static_cast<long>(i)), T(1)});
    return r;
}

template <class T>
Polynomial<T> one_minus_x() { return Polynomial<T>(std::vector<T>{T(1), T(-1)}); }

// Strip factors of x and (x-1) shared by every coefficient.
template <class T>
void strip_common(std::vector<Polynomial<T>>& c) {
    int common = -1;
    for (const auto& p : c) {
        if (p.zero()) continue;
        int v = p.valuation();
        common = common < 0 ? v : std::min(common, v);
    }
    if (common > 0)
        for (auto& p : c) p = p.shift_down(static_cast<std::size_t>(common));
    for (;;) {
        bool all = true;
        std::vector<Polynomial<T>> q(c.size());
        for (std::size_t k = 0; k < c.size(); ++k) {
            if (c[k].zero()) continue;
            auto [quot, rem] = c[k].divide_linear(T(1));
            if (!is_zero(rem)) { all = false; break; }
            q[k] = quot;
        }
        bool any = false;
        for (const auto& p : c) any = any || !p.zero();
        if (!all || !any) break;
        c = q;
    }
}

}  // namespace detail

// Convert to theta form. The result is rescaled by a power of x so that P[0] != 0.
// Throws NonFuchsianError if a singular point other than 0, 1, infinity exists,
// or if any of 0, 1, infinity is an irregular singular point.
template <class T>
BasicThetaOde<T> theta_form_raw(const BasicStandardOde<T>& in) {
    BasicStandardOde<T> ode = in;
    while (!ode.c.empty() && ode.c.back().zero()) ode.c.pop_back();
    if (ode.c.size() < 2) throw NonFuchsianError("operator has order 0");
    detail::strip_common(ode.c);
    const int n = ode.order();
    int s = std::numeric_limits<int>::min();
    for (int k = 0; k <= n; ++k)
        if (!ode.c[static_cast<std::size_t>(k)].zero()) s = std::max(s, k - ode.c[static_cast<std::size_t>(k)].valuation());
    std::vector<Polynomial<T>> P;
    auto add = [&](std::size_t j, const Polynomial<T>& p) {
        if (P.size() <= j) P.resize(j + 1);
        P[j] = P[j] + p;
    };
    for (int k = 0; k <= n; ++k) {
        const auto& ck = ode.c[static_cast<std::size_t>(k)];
        auto ff = detail::falling<T>(k);
        for (int i = 0; i <= ck.degree(); ++i) {
            if (is_zero(ck.coeff(static_cast<std::size_t>(i)))) continue;
            add(static_cast<std::size_t>(i + s - k), ck.coeff(static_cast<std::size_t>(i)) * ff);
        }
    }
    while (!P.empty() && P.back().zero()) P.pop_back();
    BasicThetaOde<T> out;
    out.order = n;
    out.P = P;
    return out;
}

// Leading coefficient with all factors x and (x-1) removed; a nonconstant result means an extra singular point.
template <class T>
Polynomial<T> extra_singular_factor(const BasicStandardOde<T>& ode) {
    auto lead = ode.c.back();
    lead = lead.shift_down(static_cast<std::size_t>(lead.valuation()));
    for (;;) {
        auto [q, r] = lead.divide_linear(T(1));
        if (!is_zero(r) || lead.degree() == 0) break;
        lead = q;
    }
    return lead;
}

template <class T>
BasicStandardOde<T> to_standard(const BasicThetaOde<T>& th) {
    // theta^m = sum_k S(m,k) x^k d^k
    int maxdeg = 0;
    for (const auto& p : th.P) maxdeg = std::max(maxdeg, p.degree());
    std::vector<std::vector<long>> S(static_cast<std::size_t>(maxdeg + 1), std::vector<long>(static_cast<std::size_t>(maxdeg + 1), 0));
    S[0][0] = 1;
    for (int m = 1; m <= maxdeg; ++m)
        for (int k = 1; k <= m; ++k)
            S[m][k] = S[m - 1][k - 1] + k * S[m - 1][k];
    BasicStandardOde<T> out;
    out.c.resize(static_cast<std::size_t>(th.order + 1));
    for (std::size_t j = 0; j < th.P.size(); ++j)
        for (int m = 0; m <= th.P[j].degree(); ++m) {
            T pm = th.P[j].coeff(static_cast<std::size_t>(m));
            if (is_zero(pm)) continue;
            for (int k = 0; k <= m; ++k)
                if (S[m][k] != 0) {
                    if (k > th.order) throw NonFuchsianError("theta polynomial degree exceeds the order");
                    out.c[static_cast<std::size_t>(k)] += Polynomial<T>::monomial(pm * T(S[m][k]), j + static_cast<std::size_t>(k));
                }
        }
    return out;
}

// x -> 1 - x in a standard-form operator.
template <class T>
BasicStandardOde<T> reflect(const BasicStandardOde<T>& ode) {
    BasicStandardOde<T> out;
    auto sub = detail::one_minus_x<T>();
    for (std::size_t k = 0; k < ode.c.size(); ++k) {
        auto p = ode.c[k].compose(sub);
        out.c.push_back(k % 2 ? -p : p);
    }
    return out;
}

// Operator for f where the original unknown is G = x^p0 (1-x)^p1 f.
template <class T>
BasicStandardOde<T> conjugate_prefactor(const BasicStandardOde<T>& ode, const T& p0, const T& p1) {
    const int n = ode.order();
    using P = Polynomial<T>;
    const P x = P::identity();
    const P omx = detail::one_minus_x<T>();
    const P xomx = x * omx;
    const P one_minus_2x(std::vector<T>{T(1), T(-2)});
    std::vector<P> r{P::constant(T(1))};
    for (int j = 0; j < n; ++j) {
        const P& rj = r.back();
        P next = (p0 * omx - p1 * x) * rj + xomx * rj.derivative() - (T(static_cast<long>(j)) * one_minus_2x) * rj;
        r.push_back(next);
    }
    std::vector<std::vector<long>> C(static_cast<std::size_t>(n + 1), std::vector<long>(static_cast<std::size_t>(n + 1), 0));
    for (int a = 0; a <= n; ++a) {
        C[a][0] = 1;
        for (int b = 1; b <= a; ++b) C[a][b] = C[a - 1][b - 1] + (b <= a - 1 ? C[a - 1][b] : 0);
    }
    BasicStandardOde<T> out;
    out.c.resize(static_cast<std::size_t>(n + 1));
    for (int k = 0; k <= n; ++k)
        for (int j = 0; j <= k; ++j) {
            int m = k - j;
            out.c[static_cast<std::size_t>(m)] +=
                (T(C[k][j]) * ode.c[static_cast<std::size_t>(k)]) * r[static_cast<std::size_t>(j)] * pow(xomx, static_cast<unsigned>(n - j));
        }
    detail::strip_common(out.c);
    return out;
}

// Full theta-form conversion with the Fuchsian checks at 0, 1 and infinity.
template <class T>
BasicThetaOde<T> theta_form(const BasicStandardOde<T>& ode) {
    BasicStandardOde<T> trimmed = ode;
    while (!trimmed.c.empty() && trimmed.c.back().zero()) trimmed.c.pop_back();
    if (trimmed.c.size() < 2) throw NonFuchsianError("operator has order 0");
    auto extra = extra_singular_factor(trimmed);
    if (extra.degree() > 0)
        throw NonFuchsianError("leading coefficient vanishes away from 0 and 1 (residual factor of degree " +
                               std::to_string(extra.degree()) + ")");
    auto th = theta_form_raw(trimmed);
    auto check = [&](const BasicThetaOde<T>& t, const char* where) {
        if (t.P.empty() || t.P.front().degree() != t.order)
            throw NonFuchsianError(std::string("irregular singular point at ") + where);
        for (const auto& p : t.P)
            if (p.degree() > t.order) throw NonFuchsianError(std::string("irregular singular point at ") + where);
        if (t.P.back().degree() != t.order) throw NonFuchsianError("irregular singular point at infinity");
    };
    check(th, "0");
    check(theta_form_raw(reflect(trimmed)), "1");
    return th;
}

template <class T>
BasicThetaOde<T> recenter_to_one(const BasicThetaOde<T>& th) {
    if (th.center != Center::Zero) throw std::invalid_argument("recenter_to_one expects an operator centred at 0");
    auto out = theta_form_raw(reflect(to_standard(th)));
    out.center = Center::One;
    return out;
}

// Polynomial whose roots are the exponents at infinity (behaviour x^{-rho}).
template <class T>
Polynomial<T> indicial_at_infinity(const BasicThetaOde<T>& th) {
    Polynomial<T> minus_theta(std::vector<T>{T(0), T(-1)});
    return th.P.back().compose(minus_theta);
}

// Rescale so that the leading theta coefficient of P[0] is 1 (Rational only).
ThetaOde normalized(const ThetaOde& th);
ThetaOdeD to_double(const ThetaOde& th);
StandardOdeD to_double(const StandardOde& ode);

struct Exponent {
    cdouble value;
    std::optional<Rational> exact;
};

// Exact rational roots (denominator <= 100) are found first; remaining roots numerically.
std::vector<Exponent> polynomial_roots(const RPoly& p);
std::vector<cdouble> polynomial_roots_numeric(const Polynomial<double>& p);
std::vector<Exponent> indicial_exponents(const ThetaOde& th);

struct RiemannScheme {
    std::vector<Exponent> at0, at1, atinf;
};
RiemannScheme riemann_scheme(const ThetaOde& th);

struct FrobeniusSeries {
    Center center = Center::Zero;
    Rational alpha;
    std::vector<double> coeffs;                 // a_0 = 1
    std::vector<Rational> exact_prefix;         // coefficients computed exactly (through the last resonance)
    std::vector<int> resonances;                // n where P_0(alpha+n) = 0 and a_n was set to 0
};

std::vector<Rational> frobenius_coefficients_exact(const ThetaOde& th, const Rational& alpha, int M);
FrobeniusSeries frobenius_series(const ThetaOde& th, const Rational& alpha, int M = 200);

struct SeriesValue {
    cdouble value;
    double tail_estimate = 0.0;
    bool truncated = false;
};

// x is always the original variable; the local variable is x or 1-x depending on the centre.
SeriesValue evaluate(const FrobeniusSeries& s, cdouble x);
// d^k/dx^k for k = 0..count-1.
std::vector<cdouble> evaluate_derivatives(const FrobeniusSeries& s, cdouble x, int count);

// Taylor-stepping analytic continuation along the straight segment x0 -> x1.
// `derivs` holds y, y', ..., y^(n-1) at x0 and is replaced by the values at x1.
void continue_along(const StandardOdeD& ode, cdouble x0, cdouble x1, std::vector<cdouble>& derivs);

// Value of the analytic continuation of s at any x off the real cuts; paths run through the upper half plane.
cdouble continue_series(const StandardOdeD& ode, const FrobeniusSeries& s, cdouble x);

// Plain-text format: one line per P_k with coefficients low to high; '#' comments; optional "# center: one".
ThetaOde parse_theta_ode(const std::string& text);
std::string format_theta_ode(const ThetaOde& th);

}  // namespace rentwist
