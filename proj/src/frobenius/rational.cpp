#include "rentwist/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rentwist {

namespace {

// Leading zeros would select octal parsing.
BigInt parse_integer(const std::string& text, const std::string& raw) {
    std::size_t sign = (!text.empty() && (text[0] == '+' || text[0] == '-')) ? 1 : 0;
    std::string digits = text.substr(sign);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad number '" + raw + "'");
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    BigInt v(digits);
    return (sign && text[0] == '-') ? BigInt(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char c : raw)
        if (c != ' ' && c != '\t') text += c;
    if (text.empty()) throw std::invalid_argument("empty rational");
    if (auto slash = text.find('/'); slash != std::string::npos) {
        const BigInt num = parse_integer(text.substr(0, slash), raw);
        const BigInt den = parse_integer(text.substr(slash + 1), raw);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + raw + "'");
        return Rational(num, den);
    }
    bool neg = false;
    std::size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        neg = text[0] == '-';
        pos = 1;
    }
    long exp10 = 0;
    std::string mant = text.substr(pos);
    if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
        exp10 = std::stol(mant.substr(e + 1));
        mant = mant.substr(0, e);
    }
    std::string digits;
    bool seen_dot = false;
    for (char c : mant) {
        if (c == '.') {
            if (seen_dot) throw std::invalid_argument("bad number '" + raw + "'");
            seen_dot = true;
        } else if (c >= '0' && c <= '9') {
            digits += c;
            if (seen_dot) --exp10;
        } else {
            throw std::invalid_argument("bad number '" + raw + "'");
        }
    }
    if (digits.empty()) throw std::invalid_argument("bad number '" + raw + "'");
    Rational r{parse_integer(digits, raw)};
    BigInt scale = 1;
    for (long i = 0; i < std::labs(exp10); ++i) scale *= 10;
    r = exp10 >= 0 ? r * scale : r / scale;
    return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rationalize(double value, long max_den) {
    if (!std::isfinite(value)) throw std::invalid_argument("rationalize: non-finite value");
    long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = value;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(x);
        if (std::fabs(a) > 1e15) break;
        long ai = static_cast<long>(a);
        long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = x - a;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    if (q1 == 0) return Rational(static_cast<long>(std::llround(value)));
    return Rational(BigInt(p1), BigInt(q1));
}

}  // namespace rentwist
