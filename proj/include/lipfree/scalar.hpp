#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace lipfree {

/// Exact rational scalar (GMP backed, expression templates off so `auto` is safe).
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* mode_name = "exact";

    static Rational default_tolerance() { return Rational(0); }

    static Rational from_fraction(std::int64_t num, std::int64_t den) { return Rational(num, den); }

    static double to_double(const Rational& x) { return x.convert_to<double>(); }

    static std::string format(const Rational& x) {
        if (denominator(x) == 1) return numerator(x).str();
        return numerator(x).str() + "/" + denominator(x).str();
    }

    /// Accepts integers, "p/q", and finite decimals with optional exponent.
    /// Decimals are converted exactly ("0.1" is 1/10).
    static Rational parse(std::string_view text);
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* mode_name = "float";

    /// Process-wide default, 1e-9 unless changed by set_float_tolerance().
    static inline double configured_tolerance = 1e-9;

    static double default_tolerance() { return configured_tolerance; }

    static double from_fraction(std::int64_t num, std::int64_t den) {
        return static_cast<double>(num) / static_cast<double>(den);
    }

    static double to_double(double x) { return x; }

    static std::string format(double x) {
        if (x == 0.0) return "0";  // folds -0
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof buf, x);
        return std::string(buf, res.ptr);
    }

    static double parse(std::string_view text);
};

/// Sets the tolerance used by float-mode objects created afterwards.
inline void set_float_tolerance(double tol) {
    if (!(tol >= 0.0) || !std::isfinite(tol)) throw ArgumentError("tolerance must be finite and nonnegative");
    ScalarTraits<double>::configured_tolerance = tol;
}

template <class S>
concept Scalar = requires { ScalarTraits<S>::exact; };

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Exact decimal parse: [+-]digits[.digits][(e|E)[+-]digits]
inline bool parse_decimal(std::string_view s, Rational& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') {
        neg = s[i] == '-';
        ++i;
    }
    std::string digits;
    long long frac_digits = 0;
    bool seen_dot = false;
    bool any_digit = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any_digit) return false;
    long long exponent = 0;
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') return false;
        ++i;
        auto rest = s.substr(i);
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        if (rest.empty()) return false;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
        if (ec != std::errc() || ptr != rest.data() + rest.size()) return false;
        if (exponent > 4096 || exponent < -4096) return false;
    }
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Integer mantissa(digits);
    long long shift = exponent - frac_digits;
    Integer ten_pow = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    out = shift >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
    if (neg) out = -out;
    return true;
}

inline bool parse_integer(std::string_view s, Integer& out) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (std::size_t k = i; k < s.size(); ++k)
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    std::string body(s.substr(i));
    body.erase(0, std::min(body.find_first_not_of('0'), body.size() - 1));
    out = Integer(body);
    if (s[0] == '-') out = -out;
    return true;
}

}  // namespace detail

inline Rational ScalarTraits<Rational>::parse(std::string_view text) {
    auto s = detail::trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer p, q;
        if (!detail::parse_integer(detail::trim(s.substr(0, slash)), p) ||
            !detail::parse_integer(detail::trim(s.substr(slash + 1)), q))
            throw ParseError("malformed rational '" + std::string(s) + "'", "scalar");
        if (q == 0) throw ParseError("zero denominator in '" + std::string(s) + "'", "scalar");
        return Rational(p, q);
    }
    Rational out;
    if (!detail::parse_decimal(s, out))
        throw ParseError("not a rational number: '" + std::string(s) + "'", "scalar");
    return out;
}

inline double ScalarTraits<double>::parse(std::string_view text) {
    auto s = detail::trim(text);
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Rational r = ScalarTraits<Rational>::parse(s);
        return r.convert_to<double>();
    }
    double out = 0;
    auto body = s;
    if (!body.empty() && body.front() == '+') body.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), out);
    if (ec != std::errc() || ptr != body.data() + body.size() || !std::isfinite(out))
        throw ParseError("not a finite number: '" + std::string(s) + "'", "scalar");
    return out;
}

template <Scalar S>
S parse_scalar(std::string_view text) {
    return ScalarTraits<S>::parse(text);
}

template <Scalar S>
std::string format_scalar(const S& x) {
    return ScalarTraits<S>::format(x);
}

template <Scalar S>
S frac(std::int64_t num, std::int64_t den = 1) {
    return ScalarTraits<S>::from_fraction(num, den);
}

template <Scalar S>
S abs_value(const S& x) {
    return x < S(0) ? S(-x) : x;
}

/// 2^-k, exact in rational mode.
template <Scalar S>
S inv_pow2(unsigned k) {
    if constexpr (ScalarTraits<S>::exact) {
        return Rational(Integer(1), Integer(1) << k);
    } else {
        return std::ldexp(1.0, -static_cast<int>(k));
    }
}

/// Comparison with an absolute tolerance; tolerance 0 gives exact comparison.
template <Scalar S>
struct Tolerance {
    S eps{};

    bool lt(const S& a, const S& b) const { return a < b - eps; }
    bool le(const S& a, const S& b) const { return a <= b + eps; }
    bool gt(const S& a, const S& b) const { return a > b + eps; }
    bool ge(const S& a, const S& b) const { return a + eps >= b; }
    bool eq(const S& a, const S& b) const { return abs_value(S(a - b)) <= eps; }
    bool is_zero(const S& a) const { return abs_value(a) <= eps; }
    bool positive(const S& a) const { return a > eps; }
    bool negative(const S& a) const { return a < -eps; }
};

}  // namespace lipfree
