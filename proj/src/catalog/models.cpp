#include "rentwist/catalog.hpp"

#include <regex>

namespace rentwist {

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }
RPoly rp(std::initializer_list<Rational> c) { return RPoly(std::vector<Rational>(c)); }
RPoly gpoly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return RPoly(v);
}
RPoly2 cx(const RPoly& c) { return RPoly2::constant(c); }
RPoly2 cx(long v) { return RPoly2::constant(RPoly::constant(Rational(v))); }
const RPoly2 X = RPoly2::identity();
RatFun rf(std::initializer_list<long> num, std::initializer_list<long> den) { return {gpoly(num), gpoly(den)}; }

RPoly concretize(const RPoly2& p, const Rational& g) {
    return map_coeffs<Rational>(p, [&](const RPoly& c) { return c(g); });
}

BasicStandardOde<RPoly> mm_n2_standard() {
    const RPoly g = gpoly({0, 1});
    BasicStandardOde<RPoly> o;
    const RPoly2 xm1 = X - cx(1);
    o.c.resize(3);
    o.c[2] = cx(gpoly({0, 0, 64})) * xm1 * xm1 * X * X;
    o.c[1] = cx(gpoly({0, 16})) * xm1 * X * (X * cx(gpoly({-6, 23, -14})) + cx(gpoly({0, 2, -8})));
    // (3g-2)(16(g-1)g^2 + 12(1-2g)g x + 3(5g-6)(1-2g)^2 x^2)
    const RPoly c00 = gpoly({0, 0, -16, 16});
    const RPoly c01 = gpoly({0, 12, -24});
    const RPoly c02 = gpoly({-6, 5}) * gpoly({1, -2}) * gpoly({1, -2}) * gpoly({3});
    o.c[0] = cx(gpoly({-2, 3})) * (cx(c00) + X * cx(c01) + X * X * cx(c02));
    (void)g;
    return o;
}

BasicThetaOde<RPoly> mm_n3_theta() {
    // Polynomials in theta with coefficients in g, entered factor by factor.
    auto lin = [](std::initializer_list<long> c0, std::initializer_list<long> c1) { return cx(gpoly(c0)) + X * cx(gpoly(c1)); };
    BasicThetaOde<RPoly> t;
    t.order = 4;
    t.P.resize(5);
    t.P[0] = cx(16) * lin({1, -2}, {0, 1}) * lin({1, -1}, {0, 1}) * lin({6, -5}, {0, 3}) * lin({6, -4}, {0, 3});
    {
        RPoly2 inner = cx(gpoly({486, -963, 666, -160})) + X * cx(gpoly({0, 567, -810, 296})) +
                       X * X * cx(gpoly({0, 0, 234, -180})) + X * X * X * cx(gpoly({0, 0, 0, 36}));
        t.P[1] = cx(-16) * lin({1, -1}, {0, 1}) * inner;
    }
    t.P[2] = cx(gpoly({28980, -68076, 60344, -24320, 3840})) + X * cx(gpoly({0, 46008, -84456, 52272, -10944})) +
             X * X * cx(gpoly({0, 0, 27720, -35280, 11424})) + X * X * X * cx(gpoly({0, 0, 0, 7776, -5184})) +
             X * X * X * X * cx(gpoly({0, 0, 0, 0, 864}));
    {
        RPoly2 inner = cx(gpoly({1215, -1962, 1008, -160})) + X * cx(gpoly({0, 1296, -1404, 376})) +
                       X * X * cx(gpoly({0, 0, 504, -288})) + X * X * X * cx(gpoly({0, 0, 0, 72}));
        t.P[3] = cx(-4) * lin({7, -4}, {0, 2}) * inner;
    }
    t.P[4] = lin({7, -4}, {0, 2}) * lin({7, -2}, {0, 2}) * lin({15, -10}, {0, 6}) * lin({15, -8}, {0, 6});
    return t;
}

StandardOde standard_from(std::initializer_list<RPoly> coeffs) {
    StandardOde o;
    o.c = coeffs;
    return o;
}

RPoly xpow(long n) { return RPoly::monomial(Rational(1), static_cast<std::size_t>(n)); }
const RPoly xm1 = rp({-1, 1});
const RPoly omx = rp({1, -1});

std::vector<Rational> eval_all(const std::vector<RatFun>& v, const Rational& g) {
    std::vector<Rational> out;
    for (const auto& f : v) out.push_back(f(g));
    return out;
}

void finish(CorrelatorModel& m) {
    if (!m.ode.c.empty()) m.theta = theta_form(m.ode);
    else m.ode = to_standard(m.theta);
    m.block_ode = (m.p0 == 0 && m.p1 == 0) ? m.ode : conjugate_prefactor(m.ode, m.p0, m.p1);
    m.block_theta = theta_form_raw(m.block_ode);
}

}  // namespace

std::vector<std::string> model_ids() {
    return {"yl2int_vac", "yl1int_vac", "yl1int_gs", "ising2int_vac", "mm_n2_phi21(g)", "mm_n3_phi21(g)"};
}

BasicThetaOde<RPoly> symbolic_theta(const std::string& family) {
    if (family == "mm_n2_phi21") return theta_form_raw(mm_n2_standard());
    if (family == "mm_n3_phi21") return mm_n3_theta();
    throw std::invalid_argument("no symbolic form for '" + family + "'");
}

SymbolicScheme symbolic_expected_scheme(const std::string& family) {
    SymbolicScheme s;
    if (family == "mm_n2_phi21") {
        s.at0 = {rf({2, -3}, {2}), rf({1, -1}, {2})};
        s.at1 = {rf({6, -13, 6}, {0, 8}), rf({6, -29, 38}, {0, 8})};
        s.atinf = {rf({-6, 17, -10}, {0, 8}), rf({-6, 21, -18}, {0, 8})};
    } else if (family == "mm_n3_phi21") {
        s.at0 = {rf({-1, 1}, {0, 1}), rf({-6, 4}, {0, 3}), rf({-1, 2}, {0, 1}), rf({-6, 5}, {0, 3})};
        s.at1 = {rf({3}, {0, 2}), rf({-9, 6}, {0, 2}), rf({-1, 2}, {0, 2}), rf({-5, 4}, {0, 2})};
        s.atinf = {rf({15, -8}, {0, 6}), rf({7, -4}, {0, 2}), rf({7, -2}, {0, 2}), rf({15, -10}, {0, 6})};
    } else {
        throw std::invalid_argument("no symbolic scheme for '" + family + "'");
    }
    return s;
}

RPoly2 symbolic_indicial(const std::string& family, Center where) {
    auto t = symbolic_theta(family);
    return where == Center::Zero ? t.P.front() : recenter_to_one(t).P.front();
}

RPoly2 symbolic_indicial_infinity(const std::string& family) { return indicial_at_infinity(symbolic_theta(family)); }

bool verify_symbolic_roots(const RPoly2& P, const std::vector<RatFun>& roots) {
    if (static_cast<int>(roots.size()) != P.degree()) return false;
    RPoly2 prod = RPoly2::constant(RPoly::constant(Rational(1)));
    for (const auto& r : roots) prod = prod * (X * cx(r.den) - cx(r.num));
    return cx(prod.leading()) * P == cx(P.leading()) * prod;
}

CorrelatorModel get_model(const std::string& raw) {
    std::string id = raw;
    std::optional<Rational> g;
    static const std::regex param(R"(^\s*([a-z0-9_]+)\s*\(\s*([-+0-9./eE]+)\s*\)\s*$)");
    std::smatch mt;
    if (std::regex_match(raw, mt, param)) {
        id = mt[1];
        g = parse_rational(mt[2]);
    }
    CorrelatorModel m;
    m.id = raw;
    m.g = g;
    if (g && id != "mm_n2_phi21" && id != "mm_n3_phi21") throw std::invalid_argument("model '" + id + "' takes no parameter");
    if (id == "yl2int_vac") {
        m.description = "Yang-Lee N=2 two-interval vacuum correlator";
        m.ode = standard_from({rp({33}), Rational(40) * xm1 * xpow(1) * rp({-3, 6}), Rational(400) * xm1 * xm1 * xpow(2)});
        m.p0 = q(11, 20);
        m.p1 = q(11, 20);
        m.scheme0 = {q(3, 20), q(11, 20)};
        m.scheme1 = {q(3, 20), q(11, 20)};
        m.schemeinf = {q(-2, 5), q(0)};
        m.basis0 = {q(0), q(-2, 5)};
        m.basis1 = {q(0), q(-2, 5)};
        m.central_charge = -22.0 / 5;
        m.replicas = 2;
        m.h_twist = -11.0 / 40;
        m.has_closed_form = true;
    } else if (id == "yl1int_vac") {
        m.description = "Yang-Lee N=2 one-interval function <tau Phi Phi tau> for the identity twist";
        m.ode = standard_from({Rational(2, 5) * rp({3, 0, 5}), xpow(1) * omx * rp({3, -1}), Rational(10) * xpow(2) * omx * omx});
        m.p0 = q(2, 5);
        m.p1 = q(4, 5);
        m.scheme0 = {q(3, 10), q(2, 5)};
        m.scheme1 = {q(2, 5), q(4, 5)};
        m.schemeinf = {q(-1, 2), q(-2, 5)};
        m.basis0 = {q(0), q(-1, 10)};
        m.basis1 = {q(0), q(-2, 5)};
        m.central_charge = -22.0 / 5;
        m.replicas = 2;
        m.h_twist = -11.0 / 40;
        m.has_closed_form = true;
    } else if (id == "yl1int_gs") {
        m.description = "Yang-Lee N=2 one-interval function <tau_phi Phi Phi tau_phi> in the ground state";
        m.ode = standard_from({Rational(-1, 50) * rp({15, -29, -3, 1}), Rational(1, 20) * xpow(1) * omx * rp({7, -14, 15}),
                               Rational(2) * xpow(2) * omx * omx * rp({1, -2}), Rational(5, 3) * xpow(3) * omx * omx * omx});
        m.scheme0 = {q(2, 5), q(1, 2), q(9, 10)};
        m.scheme1 = {q(2, 5), q(3, 5), q(4, 5)};
        m.schemeinf = {q(-2, 5), q(-3, 10), q(1, 10)};
        m.basis0 = {q(1, 2), q(2, 5), q(9, 10)};
        m.basis1 = {q(4, 5), q(2, 5), q(3, 5)};
        m.central_charge = -22.0 / 5;
        m.replicas = 2;
        m.h_twist = -3.0 / 8;
    } else if (id == "ising2int_vac") {
        m.description = "Ising N=2 two-interval vacuum correlator";
        m.ode = standard_from({Rational(15) * rp({-1, 2}), Rational(48) * xpow(1) * xm1 * rp({5, -192, 192}),
                               Rational(8448) * xm1 * xm1 * xpow(2) * rp({-1, 2}), Rational(4096) * xm1 * xm1 * xm1 * xpow(3)});
        m.scheme0 = {q(-1, 16), q(1, 16), q(15, 16)};
        m.scheme1 = {q(-1, 16), q(1, 16), q(15, 16)};
        m.schemeinf = {q(0), q(1, 8), q(1)};
        m.basis0 = {q(-1, 16), q(1, 16), q(15, 16)};
        m.basis1 = {q(-1, 16), q(1, 16), q(15, 16)};
        m.central_charge = 0.5;
        m.replicas = 2;
        m.h_twist = 1.0 / 32;
        m.has_closed_form = true;
    } else if (id == "mm_n2_phi21" || id == "mm_n3_phi21") {
        if (!g) throw std::invalid_argument("model '" + id + "' needs a parameter, e.g. " + id + "(4/3)");
        const Rational gv = *g;
        if (gv <= 0) throw std::invalid_argument("parameter g must be positive");
        auto sch = symbolic_expected_scheme(id);
        m.scheme0 = eval_all(sch.at0, gv);
        m.scheme1 = eval_all(sch.at1, gv);
        m.schemeinf = eval_all(sch.atinf, gv);
        for (auto* v : {&m.scheme0, &m.scheme1, &m.schemeinf}) std::sort(v->begin(), v->end());
        const double gd = to_double(gv);
        m.central_charge = 1.0 - 6.0 * (1.0 - gd) * (1.0 - gd) / gd;
        if (id == "mm_n2_phi21") {
            m.description = "minimal model N=2 correlator with phi_21 insertions";
            auto sym = mm_n2_standard();
            for (const auto& c : sym.c) m.ode.c.push_back(concretize(c, gv));
            m.p0 = (2 - 3 * gv) / 2;
            m.p1 = (6 * gv * gv - 13 * gv + 6) / (8 * gv);
            m.basis0 = {q(0), gv - q(1, 2)};
            m.basis1 = {q(0), 4 * gv - 2};
            m.replicas = 2;
            m.h_twist = m.central_charge / 16;
            m.has_closed_form = true;
        } else {
            m.description = "minimal model N=3 correlator with phi_21 insertions";
            auto sym = mm_n3_theta();
            m.theta.order = 4;
            for (const auto& p : sym.P) m.theta.P.push_back(concretize(p, gv));
            m.basis0 = m.scheme0;
            m.basis1 = m.scheme1;
            m.replicas = 3;
            m.h_twist = m.central_charge / 24 * (3.0 - 1.0 / 3.0);
        }
    } else {
        throw std::invalid_argument("unknown model '" + raw + "'");
    }
    std::sort(m.scheme0.begin(), m.scheme0.end());
    std::sort(m.scheme1.begin(), m.scheme1.end());
    std::sort(m.schemeinf.begin(), m.schemeinf.end());
    finish(m);
    return m;
}

ModelSolution solve_model(const CorrelatorModel& m) {
    ModelSolution s;
    const ThetaOde at1 = recenter_to_one(m.block_theta);
    for (const auto& a : m.basis0) s.basis0.push_back(frobenius_series(m.block_theta, a));
    for (const auto& a : m.basis1) s.basis1.push_back(frobenius_series(at1, a));
    s.fit = fit_connection(s.basis0, s.basis1);
    s.inv = diagonal_invariants(s.fit.A);
    return s;
}

Correlator assemble(const CorrelatorModel& m, const ModelSolution& s) {
    return Correlator(to_double(m.block_ode), s.basis0, s.basis1, s.inv.X, s.inv.Y, to_double(m.p0), to_double(m.p1));
}

double model_to_twist_correlator_exponent(const CorrelatorModel& m) {
    // 4 (h_Phi - h_twist) with h_Phi = 2 h_phi = -2/5.
    if (m.id == "yl1int_vac") return 4.0 * (-0.4 + 11.0 / 40);
    if (m.id == "yl1int_gs") return 4.0 * (-0.4 + 3.0 / 8);
    return 0.0;
}

}  // namespace rentwist
