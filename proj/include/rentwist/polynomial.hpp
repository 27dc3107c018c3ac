#pragma once

#include "rentwist/rational.hpp"

#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace rentwist {

inline bool is_zero(const std::complex<double>& v) { return v == std::complex<double>(0.0); }

// Univariate polynomial over a commutative ring T, coefficients stored low to high.
// T may itself be a Polynomial, which is how parameter-dependent operators are handled.
template <class T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Polynomial(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }
    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    static Polynomial monomial(const T& v, std::size_t power) {
        std::vector<T> c(power + 1, T(0));
        c[power] = v;
        return Polynomial(std::move(c));
    }
    // The variable itself: 0 + 1*t.
    static Polynomial identity() { return Polynomial(std::vector<T>{T(0), T(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    template <class U>
    U eval(const U& t) const {
        U acc = U(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + U(*it);
        return acc;
    }
    T operator()(const T& t) const { return eval<T>(t); }

    Polynomial derivative() const {
        std::vector<T> d;
        for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * T(static_cast<long>(k)));
        return Polynomial(std::move(d));
    }

    // p(q(t)) by Horner.
    Polynomial compose(const Polynomial& q) const {
        Polynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
        return acc;
    }

    // Multiply by t^k.
    Polynomial shift_up(std::size_t k) const {
        if (zero()) return *this;
        std::vector<T> c(k, T(0));
        c.insert(c.end(), c_.begin(), c_.end());
        return Polynomial(std::move(c));
    }
    // Lowest power carrying a nonzero coefficient (-1 for the zero polynomial).
    int valuation() const {
        for (std::size_t k = 0; k < c_.size(); ++k)
            if (!is_zero(c_[k])) return static_cast<int>(k);
        return -1;
    }
    // Divide by t^k; requires valuation() >= k.
    Polynomial shift_down(std::size_t k) const {
        if (zero()) return *this;
        if (static_cast<int>(k) > valuation()) throw std::logic_error("shift_down: not divisible");
        return Polynomial(std::vector<T>(c_.begin() + static_cast<long>(k), c_.end()));
    }

    // Synthetic division by (t - r); returns quotient and remainder.
    std::pair<Polynomial, T> divide_linear(const T& r) const {
        if (zero()) return {Polynomial(), T(0)};
        std::vector<T> q(c_.size() - 1, T(0));
        T carry = c_.back();
        for (int k = degree() - 1; k >= 0; --k) {
            q[static_cast<std::size_t>(k)] = carry;
            carry = c_[static_cast<std::size_t>(k)] + carry * r;
        }
        return {Polynomial(std::move(q)), carry};
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] = c[k] + a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] = c[k] + b.c_[k];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a) {
        std::vector<T> c;
        for (const auto& v : a.c_) c.push_back(T(0) - v);
        return Polynomial(std::move(c));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.zero() || b.zero()) return Polynomial();
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Polynomial(std::move(c));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) {
        std::vector<T> c;
        for (const auto& v : p.c_) c.push_back(s * v);
        return Polynomial(std::move(c));
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    // Integer constants promote through T, so Polynomial can serve as a ring element.
    explicit Polynomial(long v) { if (v != 0) c_.push_back(T(v)); }
    explicit Polynomial(int v) : Polynomial(static_cast<long>(v)) {}

private:
    void trim() {
        while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

template <class T>
bool is_zero(const Polynomial<T>& p) { return p.zero(); }

template <class T>
Polynomial<T> pow(const Polynomial<T>& p, unsigned n) {
    Polynomial<T> r = Polynomial<T>::constant(T(1));
    for (unsigned i = 0; i < n; ++i) r = r * p;
    return r;
}

using RPoly = Polynomial<Rational>;
// Polynomial in the derivative variable whose coefficients are polynomials in a model parameter.
using RPoly2 = Polynomial<RPoly>;

// Map each coefficient through f, producing a polynomial over another ring.
template <class U, class T, class F>
Polynomial<U> map_coeffs(const Polynomial<T>& p, F f) {
    std::vector<U> c;
    for (const auto& v : p.coeffs()) c.push_back(f(v));
    return Polynomial<U>(std::move(c));
}

}  // namespace rentwist
