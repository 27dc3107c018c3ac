#include <doctest.h>

#include "rentwist/catalog.hpp"

#include <cmath>
#include <functional>
#include <numbers>

using namespace rentwist;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

std::vector<Rational> sorted(std::vector<Rational> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<Rational> exact_values(const std::vector<Exponent>& e) {
    std::vector<Rational> v;
    for (const auto& x : e) {
        REQUIRE(x.exact.has_value());
        v.push_back(*x.exact);
    }
    return sorted(v);
}

struct Table {
    std::vector<Rational> at0, at1, atinf;
};

void check_scheme(const std::string& id, const Table& want) {
    const auto s = riemann_scheme(get_model(id).theta);
    CHECK_MESSAGE(exact_values(s.at0) == sorted(want.at0), id << " at 0");
    CHECK_MESSAGE(exact_values(s.at1) == sorted(want.at1), id << " at 1");
    CHECK_MESSAGE(exact_values(s.atinf) == sorted(want.atinf), id << " at infinity");
}

using Fn = std::function<Rational(const Rational&)>;

}  // namespace

TEST_CASE("Riemann schemes of the fixed models") {
    check_scheme("yl2int_vac", {{R(3, 20), R(11, 20)}, {R(3, 20), R(11, 20)}, {R(0), R(-2, 5)}});
    check_scheme("yl1int_vac", {{R(2, 5), R(3, 10)}, {R(4, 5), R(2, 5)}, {R(-2, 5), R(-1, 2)}});
    check_scheme("yl1int_gs", {{R(1, 2), R(2, 5), R(9, 10)}, {R(4, 5), R(2, 5), R(3, 5)}, {R(1, 10), R(-3, 10), R(-2, 5)}});
    // Reference rows read as columns; the infinity entries are the negatives of the tabulated ones.
    check_scheme("ising2int_vac", {{R(-1, 16), R(1, 16), R(15, 16)}, {R(-1, 16), R(1, 16), R(15, 16)}, {R(0), R(1, 8), R(1)}});
}

TEST_CASE("Riemann schemes of the parametric families") {
    const std::vector<Fn> n2_0{[](auto g) { return (2 - 3 * g) / 2; }, [](auto g) { return (1 - g) / 2; }};
    const std::vector<Fn> n2_1{[](auto g) { return (6 * g * g - 13 * g + 6) / (8 * g); },
                               [](auto g) { return (38 * g * g - 29 * g + 6) / (8 * g); }};
    const std::vector<Fn> n2_inf{[](auto g) { return (-6 + 17 * g - 10 * g * g) / (8 * g); },
                                 [](auto g) { return (-18 * g * g + 21 * g - 6) / (8 * g); }};
    const std::vector<Fn> n3_0{[](auto g) { return (g - 1) / g; }, [](auto g) { return (4 * g - 6) / (3 * g); },
                               [](auto g) { return (2 * g - 1) / g; }, [](auto g) { return (5 * g - 6) / (3 * g); }};
    const std::vector<Fn> n3_1{[](auto g) { return Rational(3) / (2 * g); }, [](auto g) { return (6 * g - 9) / (2 * g); },
                               [](auto g) { return (2 * g - 1) / (2 * g); }, [](auto g) { return (4 * g - 5) / (2 * g); }};
    const std::vector<Fn> n3_inf{[](auto g) { return (15 - 8 * g) / (6 * g); }, [](auto g) { return (7 - 4 * g) / (2 * g); },
                                 [](auto g) { return (7 - 2 * g) / (2 * g); }, [](auto g) { return (15 - 10 * g) / (6 * g); }};
    auto eval = [](const std::vector<Fn>& f, const Rational& g) {
        std::vector<Rational> v;
        for (const auto& h : f) v.push_back(h(g));
        return v;
    };
    for (const Rational g : {R(4, 5), R(6, 5), R(4, 3), R(7, 5), R(17, 10), R(9, 4)}) {
        check_scheme("mm_n2_phi21(" + to_string(g) + ")", {eval(n2_0, g), eval(n2_1, g), eval(n2_inf, g)});
        check_scheme("mm_n3_phi21(" + to_string(g) + ")", {eval(n3_0, g), eval(n3_1, g), eval(n3_inf, g)});
    }
    for (const char* f : {"mm_n2_phi21", "mm_n3_phi21"}) {
        const auto s = symbolic_expected_scheme(f);
        CHECK(verify_symbolic_roots(symbolic_indicial(f, Center::Zero), s.at0));
        CHECK(verify_symbolic_roots(symbolic_indicial(f, Center::One), s.at1));
        CHECK(verify_symbolic_roots(symbolic_indicial_infinity(f), s.atinf));
        CHECK_FALSE(verify_symbolic_roots(symbolic_indicial(f, Center::Zero), s.at1));
    }
    CHECK(get_model("mm_n3_phi21(4/3)").scheme0 == sorted({R(1, 4), R(-1, 6), R(5, 4), R(1, 6)}));
}

TEST_CASE("model lookup") {
    CHECK(model_ids().size() == 6);
    CHECK_THROWS_AS(get_model("nope"), std::invalid_argument);
    CHECK_THROWS_AS(get_model("mm_n2_phi21"), std::invalid_argument);
    CHECK_THROWS_AS(get_model("yl1int_gs(2)"), std::invalid_argument);
    CHECK_THROWS_AS(get_model("mm_n2_phi21(-1)"), std::invalid_argument);
    const auto m = get_model("mm_n2_phi21(4/3)");
    CHECK(*m.g == R(4, 3));
    CHECK(m.central_charge == doctest::Approx(0.5));
    CHECK(get_model("mm_n2_phi21(0.8)").g == R(4, 5));
    const auto yl = get_model("yl1int_gs");
    CHECK(yl.central_charge == doctest::Approx(-22.0 / 5));
    CHECK(yl.h_twist == doctest::Approx(-3.0 / 8));
}

TEST_CASE("closed forms agree with the monodromy assembly") {
    for (const char* id : {"yl2int_vac", "yl1int_vac", "ising2int_vac", "mm_n2_phi21(4/5)", "mm_n2_phi21(7/5)", "mm_n2_phi21(17/10)"}) {
        const auto m = get_model(id);
        REQUIRE(m.has_closed_form);
        const auto C = assemble(m, solve_model(m));
        for (double x : {0.3, 0.5, 0.7}) CHECK_MESSAGE(C(x) == doctest::Approx(closed_form_eval(m, x)).epsilon(1e-9), id << " x=" << x);
    }
    CHECK_THROWS_AS(closed_form_eval(get_model("yl1int_gs"), 0.5), std::invalid_argument);
}

TEST_CASE("two-interval closed form near the origin") {
    const auto m = get_model("yl2int_vac");
    // Leading power |x|^{2 p0 - 4/5} from the second channel.
    const double e = 2 * 11.0 / 20 - 0.8;
    const double r = closed_form_eval(m, 1e-6) / closed_form_eval(m, 1e-7);
    CHECK(std::log(r) / std::log(10.0) == doctest::Approx(e).epsilon(1e-3));
}

TEST_CASE("unfolded four-point route matches the one-interval closed form") {
    const auto m = get_model("yl1int_vac");
    for (double x : {0.2, 0.5, 0.8}) CHECK(unfolded_vacuum_eval(x) == doctest::Approx(closed_form_eval(m, x)).epsilon(1e-9));
}

TEST_CASE("gamma-product coefficients agree with the invariance solve") {
    for (const char* g : {"4/5", "6/5", "7/5"}) {
        const auto m = get_model(std::string("mm_n2_phi21(") + g + ")");
        const auto s = solve_model(m);
        const double gd = to_double(*m.g);
        const auto gc = gamma_coefficients({2 - 3 * gd, 1.5 - 2 * gd, 1.5 - gd});
        CHECK(s.inv.Y[1] / s.inv.Y[0] == doctest::Approx(gc.Y2).epsilon(1e-9));
        CHECK(s.inv.X[1] / s.inv.X[0] == doctest::Approx(gc.X2 / gc.X1).epsilon(1e-9));
    }
    // Both vanish at the Ising point.
    CHECK(std::abs(mm_n2_gamma_product_coefficient(4.0 / 3)) < 1e-12);
    const auto p = HypParams{2 - 4.0, 1.5 - 8.0 / 3, 1.5 - 4.0 / 3};
    CHECK(p.a == doctest::Approx(-2.0));
    CHECK(p.b == doctest::Approx(-7.0 / 6));
    CHECK(p.c == doctest::Approx(1.0 / 6));
}

TEST_CASE("structure constants") {
    auto v = [](const char* n) { return ope_lookup(n).value; };
    const double hphi = -0.2;
    CHECK(v("C(Phi,tau_1,tau_1)").real() == doctest::Approx(std::pow(2.0, 8.0 / 5)).epsilon(1e-15));
    CHECK(v("C(tau_phi,Phi,LLbar_tau_phi)").real() == doctest::Approx(std::pow(2.0, 4 * hphi + 2) / 5).epsilon(1e-15));
    CHECK(v("C(tau_phi,Phi,LLbar_tau_phi)").real() == doctest::Approx(0.459479).epsilon(1e-6));
    CHECK(v("C((1xphi)0,tau_phi,tau_phi)").imag() == doctest::Approx(3.56664).epsilon(1e-6));
    CHECK(v("C(Phi,tau_phi,tau_phi)").real() == doctest::Approx(-5.53709).epsilon(1e-6));
    CHECK(v("C(tau_phi,Phi,tau_1)").imag() == doctest::Approx(4.39104).epsilon(1e-6));
    const cdouble c = v("C(phi,phi,phi)");
    CHECK(c.real() == 0.0);
    CHECK(v("C(Phi,Phi,Phi)") == c * c);
    CHECK_THROWS(ope_lookup("C(none)"));
    CHECK(ope_csv().rfind("name,re,im,provenance\n", 0) == 0);
}

TEST_CASE("structure constants reproduce the bootstrap coefficients") {
    const auto s = solve_model(get_model("yl1int_gs"));
    auto v = [](const char* n) { return ope_lookup(n).value; };
    const cdouble lhs_x3 = std::pow(v("C(tau_phi,Phi,LLbar_tau_phi)"), 2);
    CHECK(s.inv.X[2] == doctest::Approx(lhs_x3.real()).epsilon(1e-4));
    const cdouble y2 = std::pow(v("C(phi,phi,phi)"), 2) * v("C(Phi,tau_phi,tau_phi)");
    CHECK(s.inv.Y[1] == doctest::Approx(y2.real()).epsilon(1e-4));
    CHECK(s.inv.X[1] == doctest::Approx(std::pow(v("C(Phi,tau_phi,tau_phi)"), 2).real()).epsilon(1e-4));
    CHECK(s.inv.X[0] == doctest::Approx(std::pow(v("C(tau_phi,Phi,tau_1)"), 2).real()).epsilon(1e-4));
    const auto two = solve_model(get_model("yl2int_vac"));
    CHECK(std::sqrt(two.inv.X[1] / two.inv.X[0]) == doctest::Approx(v("C(Phi,tau_1,tau_1)").real()).epsilon(1e-10));
}

TEST_CASE("torus identities") {
    const auto r = torus_check({0.005, 0.01, 0.02});
    REQUIRE(r.points.size() == 3);
    for (const auto& p : r.points) {
        CHECK(p.chi11_res < 1e-9);
        CHECK(p.chi12_res < 1e-9);
        CHECK(p.z_res < 1e-8);
    }
    CHECK(r.chi11_expected == std::vector<long long>{1, 0, 1, 1, 1});
    CHECK(r.chi12_expected == std::vector<long long>{1, 1, 1, 1, 2});
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(r.chi11_series[i] == doctest::Approx(static_cast<double>(r.chi11_expected[i])).epsilon(1e-5));
        CHECK(r.chi12_series[i] == doctest::Approx(static_cast<double>(r.chi12_expected[i])).epsilon(1e-5));
    }
}

TEST_CASE("Ward expansion coefficients") {
    for (double x : {0.3, 0.6}) {
        const auto d = ward_taylor(WardFamily::D, 0, 0, -2.5, x, 4);
        CHECK(d[0].real() == doctest::Approx(x));
        CHECK(d[1].real() == doctest::Approx(-(1 + x)));
        CHECK(d[2].real() == doctest::Approx(1.0));
        CHECK(std::abs(d[3]) < 1e-15);
        CHECK(std::abs(d[4]) < 1e-15);
    }
    const double x = 0.3;
    const auto h = ward_taylor(WardFamily::D, -0.5, -0.5, 0, x, 3);
    CHECK(std::abs(h[0]) == doctest::Approx(std::sqrt(x)));
    CHECK((h[1] / h[0]).real() == doctest::Approx(-(1 + x) / (2 * x)));
    const auto g = ward_taylor(WardFamily::D, -2, -2, 0, x, 3);
    CHECK(g[0].real() == doctest::Approx(1 / x));
    CHECK((g[1] / g[0]).real() == doctest::Approx(1 + 1 / x));
    CHECK_THROWS_AS(ward_taylor(WardFamily::A, 0, 0, 0, 1.5, 3), std::invalid_argument);
}

TEST_CASE("N=3 Ward polynomials are consistent with the Taylor data") {
    const auto Q = ward_q_polynomials();
    REQUIRE(Q.size() == 5);
    CHECK(Q[0] == RPoly::monomial(R(243), 4));
    for (double x : {0.2, 0.45, 0.7}) {
        const auto d = ward_taylor(WardFamily::D, -1.0 / 3, 1.0 / 3, 0, x, 4);
        const double q0 = Q[0].eval<double>(x);
        for (int m = 1; m < 5; ++m)
            CHECK_MESSAGE(Q[static_cast<std::size_t>(m)].eval<double>(x) / q0 ==
                              doctest::Approx(-(d[static_cast<std::size_t>(m)] / d[0]).real()).epsilon(1e-12),
                          "m=" << m - 2);
    }
}

TEST_CASE("effective central charge baseline") {
    const int L = 16;
    const auto c2 = ceff_comparison_curve(L, 2);
    REQUIRE(c2.size() == static_cast<std::size_t>(L - 1));
    const double coeff = c2[L / 2 - 1] / std::log(L / std::numbers::pi);
    CHECK(coeff == doctest::Approx(0.1));
    CHECK(*std::max_element(c2.begin(), c2.end()) == c2[L / 2 - 1]);
}
