#include "rentwist/frobenius.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <sstream>

namespace rentwist {

ThetaOde normalized(const ThetaOde& th) {
    ThetaOde out = th;
    Rational lead = th.P.at(0).leading();
    for (auto& p : out.P) p = Rational(1 / lead) * p;
    return out;
}

namespace {
Polynomial<double> poly_to_double(const RPoly& p) {
    return map_coeffs<double>(p, [](const Rational& r) { return to_double(r); });
}
}  // namespace

ThetaOdeD to_double(const ThetaOde& th) {
    ThetaOdeD out;
    out.order = th.order;
    out.center = th.center;
    for (const auto& p : th.P) out.P.push_back(poly_to_double(p));
    return out;
}

StandardOdeD to_double(const StandardOde& ode) {
    StandardOdeD out;
    for (const auto& p : ode.c) out.c.push_back(poly_to_double(p));
    return out;
}

std::vector<cdouble> polynomial_roots_numeric(const Polynomial<double>& p) {
    const int n = p.degree();
    if (n < 1) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(static_cast<std::size_t>(i)) / p.leading();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    std::vector<cdouble> roots;
    for (int i = 0; i < n; ++i) roots.push_back(es.eigenvalues()(i));
    // One Newton polish per root.
    auto dp = p.derivative();
    for (auto& r : roots) {
        for (int it = 0; it < 3; ++it) {
            cdouble f = p.eval<cdouble>(r), d = dp.eval<cdouble>(r);
            if (std::abs(d) == 0.0) break;
            r -= f / d;
        }
    }
    return roots;
}

namespace {

// Rational roots have denominators dividing the leading coefficient of the integer-cleared polynomial.
std::vector<long> candidate_denominators(const RPoly& p) {
    BigInt l = 1;
    for (const auto& c : p.coeffs()) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c));
    const BigInt lead = boost::multiprecision::abs(boost::multiprecision::numerator(p.leading() * Rational(l)));
    std::vector<long> out{100};
    if (lead > 100 && lead < BigInt(1000000000L)) out.push_back(static_cast<long>(lead));
    return out;
}

}  // namespace

std::vector<Exponent> polynomial_roots(const RPoly& input) {
    std::vector<Exponent> out;
    RPoly p = input;
    bool found = true;
    while (p.degree() >= 1 && found) {
        found = false;
        for (cdouble r : polynomial_roots_numeric(poly_to_double(p))) {
            if (std::fabs(r.imag()) > 1e-6 * (1.0 + std::abs(r))) continue;
            for (long den : candidate_denominators(p)) {
                const Rational q = rationalize(r.real(), den);
                auto [quot, rem] = p.divide_linear(q);
                if (rem == 0) {
                    out.push_back({cdouble(to_double(q), 0.0), q});
                    p = quot;
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }
    if (p.degree() >= 1)
        for (cdouble r : polynomial_roots_numeric(poly_to_double(p))) out.push_back({r, std::nullopt});
    std::sort(out.begin(), out.end(), [](const Exponent& a, const Exponent& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

std::vector<Exponent> indicial_exponents(const ThetaOde& th) { return polynomial_roots(th.P.at(0)); }

RiemannScheme riemann_scheme(const ThetaOde& th) {
    RiemannScheme s;
    s.at0 = indicial_exponents(th);
    s.at1 = indicial_exponents(recenter_to_one(th));
    s.atinf = polynomial_roots(indicial_at_infinity(th));
    return s;
}

std::vector<Rational> frobenius_coefficients_exact(const ThetaOde& th, const Rational& alpha, int M) {
    std::vector<Rational> a{Rational(1)};
    for (int n = 1; n <= M; ++n) {
        Rational num = 0;
        for (int j = 1; j <= std::min(n, th.K()); ++j)
            num -= th.P[static_cast<std::size_t>(j)](alpha + n - j) * a[static_cast<std::size_t>(n - j)];
        Rational den = th.P[0](alpha + n);
        if (den == 0) {
            if (num != 0)
                throw LogarithmicCaseError("resonance at n = " + std::to_string(n) + " for exponent " + to_string(alpha) +
                                           " has a nonvanishing numerator");
            a.push_back(0);
        } else {
            a.push_back(num / den);
        }
    }
    return a;
}

FrobeniusSeries frobenius_series(const ThetaOde& th, const Rational& alpha, int M) {
    if (th.P.at(0)(alpha) != 0) throw std::invalid_argument("alpha " + to_string(alpha) + " is not an indicial root");
    FrobeniusSeries s;
    s.center = th.center;
    s.alpha = alpha;
    // Last integer offset at which alpha + n is again a root of P_0.
    int last_res = 0;
    for (const auto& e : indicial_exponents(th)) {
        if (!e.exact) continue;
        Rational d = *e.exact - alpha;
        if (denominator(d) == 1 && d > 0) {
            int n = numerator(d).convert_to<int>();
            if (n <= M) {
                last_res = std::max(last_res, n);
                s.resonances.push_back(n);
            }
        }
    }
    std::sort(s.resonances.begin(), s.resonances.end());
    s.resonances.erase(std::unique(s.resonances.begin(), s.resonances.end()), s.resonances.end());
    s.exact_prefix = frobenius_coefficients_exact(th, alpha, last_res);
    for (const auto& q : s.exact_prefix) s.coeffs.push_back(to_double(q));

    auto thd = to_double(th);
    const double a0 = to_double(alpha);
    double amax = 1.0;
    int small_run = 0;
    for (int n = last_res + 1; n <= M; ++n) {
        double num = 0.0;
        for (int j = 1; j <= std::min(n, thd.K()); ++j)
            num -= thd.P[static_cast<std::size_t>(j)].eval<double>(a0 + n - j) * s.coeffs[static_cast<std::size_t>(n - j)];
        double an = num / thd.P[0].eval<double>(a0 + n);
        s.coeffs.push_back(an);
        amax = std::max(amax, std::fabs(an));
        small_run = std::fabs(an) < 1e-16 * amax ? small_run + 1 : 0;
        if (small_run >= 10) break;
    }
    return s;
}

namespace {
cdouble local_var(const FrobeniusSeries& s, cdouble x) { return s.center == Center::Zero ? x : 1.0 - x; }
}  // namespace

SeriesValue evaluate(const FrobeniusSeries& s, cdouble x) {
    const cdouble t = local_var(s, x);
    if (std::abs(t) >= 1.0) throw std::domain_error("evaluate: point outside the disk of convergence");
    cdouble sum = 0.0, comp = 0.0, tp = 1.0, last = 0.0;
    for (double a : s.coeffs) {
        cdouble term = a * tp;
        cdouble y = sum + term;
        // Neumaier compensation, componentwise.
        auto fix = [](double big, double small, double res) { return std::fabs(big) >= std::fabs(small) ? (big - res) + small : (small - res) + big; };
        comp += cdouble(fix(sum.real(), term.real(), y.real()), fix(sum.imag(), term.imag(), y.imag()));
        sum = y;
        last = term;
        tp *= t;
    }
    sum += comp;
    SeriesValue v;
    const double r = std::abs(t);
    v.tail_estimate = std::abs(last) * r / (1.0 - r);
    v.truncated = v.tail_estimate > 1e-13 * std::max(std::abs(sum), 1e-300) && s.coeffs.size() > 1 &&
                  std::abs(last) != 0.0;
    v.value = std::pow(t, to_double(s.alpha)) * sum;
    return v;
}

std::vector<cdouble> evaluate_derivatives(const FrobeniusSeries& s, cdouble x, int count) {
    const cdouble t = local_var(s, x);
    if (std::abs(t) >= 1.0) throw std::domain_error("evaluate_derivatives: point outside the disk of convergence");
    const double al = to_double(s.alpha);
    std::vector<cdouble> out(static_cast<std::size_t>(count), 0.0);
    cdouble tp = 1.0;
    for (std::size_t n = 0; n < s.coeffs.size(); ++n) {
        for (int k = 0; k < count; ++k) {
            double ff = 1.0;
            for (int i = 0; i < k; ++i) ff *= al + static_cast<double>(n) - i;
            out[static_cast<std::size_t>(k)] += s.coeffs[n] * ff * tp * std::pow(t, -static_cast<double>(k));
        }
        tp *= t;
    }
    const cdouble ta = std::pow(t, al);
    const double sign = s.center == Center::One ? -1.0 : 1.0;
    double sg = 1.0;
    for (auto& v : out) {
        v *= ta * sg;
        sg *= sign;
    }
    return out;
}

void continue_along(const StandardOdeD& ode, cdouble x0, cdouble x1, std::vector<cdouble>& derivs) {
    const int n = ode.order();
    if (static_cast<int>(derivs.size()) != n) throw std::invalid_argument("continue_along: wrong number of initial values");
    cdouble p = x0;
    for (int guard = 0; guard < 10000 && std::abs(x1 - p) > 0.0; ++guard) {
        const double R = std::min(std::abs(p), std::abs(p - 1.0));
        if (R < 1e-3) throw std::domain_error("continuation path runs into a singular point");
        cdouble dir = x1 - p;
        double len = std::abs(dir);
        cdouble h = len <= 0.5 * R ? dir : dir * (0.5 * R / len);
        // Coefficients c_k(p + t) as polynomials in t.
        Polynomial<cdouble> shift(std::vector<cdouble>{p, 1.0});
        std::vector<Polynomial<cdouble>> c;
        for (const auto& ck : ode.c)
            c.push_back(map_coeffs<cdouble>(ck, [](double v) { return cdouble(v); }).compose(shift));
        // Work with b_m h^m to keep magnitudes tame.
        std::vector<cdouble> b;
        double fact = 1.0;
        cdouble hp = 1.0;
        for (int m = 0; m < n; ++m) {
            if (m > 0) fact *= m;
            b.push_back(derivs[static_cast<std::size_t>(m)] / fact * hp);
            hp *= h;
        }
        auto ffh = [](int m, int k) {
            double r = 1.0;
            for (int i = 0; i < k; ++i) r *= m - i;
            return r;
        };
        const cdouble cn0 = c[static_cast<std::size_t>(n)].coeff(0);
        double bmax = 0.0;
        for (auto& v : b) bmax = std::max(bmax, std::abs(v));
        int quiet = 0;
        for (int s = 0; s < 600; ++s) {
            // Scaled recursion: sum_k sum_i c_{k,i} h^{i-k} B_{s-i+k} ff(s-i+k,k) = 0 with B_m = b_m h^m.
            cdouble acc = 0.0;
            for (int k = 0; k <= n; ++k) {
                const auto& ck = c[static_cast<std::size_t>(k)];
                for (int i = 0; i <= ck.degree(); ++i) {
                    int m = s - i + k;
                    if (m < 0 || (k == n && i == 0)) continue;
                    acc += ck.coeff(static_cast<std::size_t>(i)) * std::pow(h, i - k) * b[static_cast<std::size_t>(m)] * ffh(m, k);
                }
            }
            cdouble next = -acc / (cn0 * std::pow(h, -n) * ffh(s + n, n));
            b.push_back(next);
            bmax = std::max(bmax, std::abs(next));
            quiet = std::abs(next) < 1e-18 * bmax ? quiet + 1 : 0;
            if (quiet >= 4) break;
        }
        std::vector<cdouble> nd(static_cast<std::size_t>(n), 0.0);
        for (int k = 0; k < n; ++k) {
            cdouble acc = 0.0;
            for (std::size_t m = static_cast<std::size_t>(k); m < b.size(); ++m) acc += b[m] * ffh(static_cast<int>(m), k);
            nd[static_cast<std::size_t>(k)] = acc * std::pow(h, -k);
        }
        derivs = nd;
        p += h;
    }
}

cdouble continue_series(const StandardOdeD& ode, const FrobeniusSeries& s, cdouble x) {
    const cdouble t = s.center == Center::Zero ? x : 1.0 - x;
    if (std::abs(t) <= 0.7) return evaluate(s, x).value;
    const bool lower = x.imag() < 0.0;
    const cdouble target = lower ? std::conj(x) : x;
    const cdouble start(0.5, 0.0), waypoint(0.5, 0.9);
    auto d = evaluate_derivatives(s, start, ode.order());
    continue_along(ode, start, waypoint, d);
    continue_along(ode, waypoint, target, d);
    return lower ? std::conj(d[0]) : d[0];
}

ThetaOde parse_theta_ode(const std::string& text) {
    ThetaOde th;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            if (comment.find("center") != std::string::npos && comment.find("one") != std::string::npos)
                th.center = Center::One;
            line = line.substr(0, hash);
        }
        std::istringstream ls(line);
        std::vector<Rational> coeffs;
        std::string tok;
        while (ls >> tok) coeffs.push_back(parse_rational(tok));
        if (!coeffs.empty()) th.P.emplace_back(coeffs);
    }
    if (th.P.empty()) throw std::invalid_argument("ODE text contains no polynomial lines");
    th.order = th.P[0].degree();
    if (th.order < 1) throw NonFuchsianError("P_0 must have positive degree");
    for (const auto& p : th.P)
        if (p.degree() > th.order) throw NonFuchsianError("a polynomial P_k exceeds the degree of P_0");
    if (th.P.back().degree() != th.order) throw NonFuchsianError("irregular singular point at infinity");
    return th;
}

std::string format_theta_ode(const ThetaOde& th) {
    std::ostringstream out;
    out << "# center: " << (th.center == Center::Zero ? "zero" : "one") << "\n";
    for (std::size_t k = 0; k < th.P.size(); ++k) {
        out << "# P_" << k << "\n";
        const auto& c = th.P[k].coeffs();
        if (c.empty()) out << "0";
        for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << to_string(c[i]);
        out << "\n";
    }
    return out.str();
}

}  // namespace rentwist
