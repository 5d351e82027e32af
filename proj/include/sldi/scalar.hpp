#pragma once

// Extended-real scalars for max-plus / min-plus arithmetic.
//
// The two infinities are explicit states rather than IEEE infinities: the
// max-plus product and the dual (min-plus) product disagree exactly when one
// operand is -inf and the other +inf, and both answers must be representable.

#include <boost/rational.hpp>

#include <charconv>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "sldi/errors.hpp"

namespace sldi {

using Rational = boost::rational<std::int64_t>;

/// Per-carrier hooks: conversion from integers and decimal text, and rendering.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
    static double from_int(std::int64_t v) { return static_cast<double>(v); }
    static double from_text(std::string_view text);
    static std::string to_text(double v);
    static double to_double(double v) { return v; }
};

template <>
struct ScalarTraits<Rational> {
    static Rational from_int(std::int64_t v) { return Rational(v); }
    static Rational from_text(std::string_view text);
    static std::string to_text(const Rational& v);
    static double to_double(const Rational& v) {
        return static_cast<double>(v.numerator()) / static_cast<double>(v.denominator());
    }
};

template <class T>
class Tropical {
public:
    enum class Kind : std::uint8_t { neg_inf, finite, pos_inf };

    /// Default is epsilon (-inf), the neutral element of oplus.
    Tropical() = default;
    Tropical(T value) : kind_(Kind::finite), value_(std::move(value)) {}  // NOLINT implicit

    static Tropical epsilon() { return Tropical(Kind::neg_inf); }
    static Tropical unit() { return Tropical(T(0)); }
    static Tropical top() { return Tropical(Kind::pos_inf); }
    static Tropical integer(std::int64_t v) { return Tropical(ScalarTraits<T>::from_int(v)); }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] bool is_finite() const noexcept { return kind_ == Kind::finite; }
    [[nodiscard]] bool is_neg_inf() const noexcept { return kind_ == Kind::neg_inf; }
    [[nodiscard]] bool is_pos_inf() const noexcept { return kind_ == Kind::pos_inf; }

    /// Finite payload. Calling this on an infinity is a logic error.
    [[nodiscard]] const T& value() const {
        if (kind_ != Kind::finite) {
            throw Error(Errc::invalid_argument, "value() on an infinite scalar");
        }
        return value_;
    }

    friend bool operator==(const Tropical& a, const Tropical& b) {
        if (a.kind_ != b.kind_) return false;
        return a.kind_ != Kind::finite || a.value_ == b.value_;
    }

    // Numeric order on the extended reals: -inf < finite < +inf.
    friend std::strong_ordering operator<=>(const Tropical& a, const Tropical& b) {
        if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
        if (a.kind_ != Kind::finite) return std::strong_ordering::equal;
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (b.value_ < a.value_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    explicit Tropical(Kind k) : kind_(k), value_(0) {}

    Kind kind_ = Kind::neg_inf;
    T value_ = T(0);
};

using Real = Tropical<double>;
using Exact = Tropical<Rational>;

/// a ⊕ b = max(a, b).
template <class T>
Tropical<T> oplus(const Tropical<T>& a, const Tropical<T>& b) {
    return a < b ? b : a;
}

/// a ⊞ b = min(a, b).
template <class T>
Tropical<T> dual_oplus(const Tropical<T>& a, const Tropical<T>& b) {
    return b < a ? b : a;
}

/// a ⊗ b = a + b, with -inf absorbing (even against +inf).
template <class T>
Tropical<T> otimes(const Tropical<T>& a, const Tropical<T>& b) {
    if (a.is_neg_inf() || b.is_neg_inf()) return Tropical<T>::epsilon();
    if (a.is_pos_inf() || b.is_pos_inf()) return Tropical<T>::top();
    return Tropical<T>(a.value() + b.value());
}

/// a ⊠ b = a + b, with +inf absorbing (even against -inf).
template <class T>
Tropical<T> dual_otimes(const Tropical<T>& a, const Tropical<T>& b) {
    if (a.is_pos_inf() || b.is_pos_inf()) return Tropical<T>::top();
    if (a.is_neg_inf() || b.is_neg_inf()) return Tropical<T>::epsilon();
    return Tropical<T>(a.value() + b.value());
}

/// Multiplicative inverse a⁻¹ = -a. Only finite scalars are invertible.
template <class T>
Tropical<T> inverse(const Tropical<T>& a) {
    if (!a.is_finite()) {
        throw Error(Errc::invalid_argument, "inverse of an infinite scalar");
    }
    return Tropical<T>(-a.value());
}

/// Order-reversing negation on the extended reals (-inf <-> +inf).
template <class T>
Tropical<T> negate(const Tropical<T>& a) {
    if (a.is_neg_inf()) return Tropical<T>::top();
    if (a.is_pos_inf()) return Tropical<T>::epsilon();
    return Tropical<T>(-a.value());
}

/// k-th max-plus root, i.e. a / k for k >= 1.
template <class T>
Tropical<T> root(const Tropical<T>& a, std::int64_t k) {
    if (k <= 0) throw Error(Errc::invalid_argument, "root order must be positive");
    if (!a.is_finite()) return a;
    return Tropical<T>(a.value() / ScalarTraits<T>::from_int(k));
}

/// "-inf", "+inf", or the finite value (9 decimals max for floats, p/q for rationals).
template <class T>
std::string to_string(const Tropical<T>& a) {
    if (a.is_neg_inf()) return "-inf";
    if (a.is_pos_inf()) return "+inf";
    return ScalarTraits<T>::to_text(a.value());
}

/// Accepts everything to_string produces, plus "e" (0), "eps" (-inf) and "inf".
template <class T>
Tropical<T> parse_scalar(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text == "-inf" || text == "eps") return Tropical<T>::epsilon();
    if (text == "+inf" || text == "inf") return Tropical<T>::top();
    if (text == "e") return Tropical<T>::unit();
    return Tropical<T>(ScalarTraits<T>::from_text(text));
}

// ---------------------------------------------------------------------------

namespace detail {

[[noreturn]] inline void bad_scalar(std::string_view text) {
    throw Error(Errc::parse_error, "not a scalar: '" + std::string(text) + "'");
}

// Splits "[-]digits[.digits][e[+-]digits]" into an exact numerator and a power of ten.
inline Rational decimal_to_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    std::int64_t mantissa = 0;
    int scale = 0;
    bool any_digit = false;
    bool in_fraction = false;
    std::size_t i = 0;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c == '.' && !in_fraction) {
            in_fraction = true;
            continue;
        }
        if (c < '0' || c > '9') break;
        any_digit = true;
        if (mantissa > (INT64_MAX - 9) / 10) bad_scalar(text);
        mantissa = mantissa * 10 + (c - '0');
        if (in_fraction) --scale;
    }
    if (!any_digit) bad_scalar(text);
    if (i < s.size()) {
        if (s[i] != 'e' && s[i] != 'E') bad_scalar(text);
        int exponent = 0;
        auto rest = s.substr(i + 1);
        if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
        if (ec != std::errc() || ptr != rest.data() + rest.size()) bad_scalar(text);
        scale += exponent;
    }
    if (scale > 18 || scale < -18) bad_scalar(text);
    std::int64_t pow10 = 1;
    for (int k = 0; k < (scale < 0 ? -scale : scale); ++k) pow10 *= 10;
    Rational r = scale >= 0 ? Rational(mantissa * pow10) : Rational(mantissa, pow10);
    return negative ? -r : r;
}

}  // namespace detail

inline double ScalarTraits<double>::from_text(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        Rational r = ScalarTraits<Rational>::from_text(text);
        return ScalarTraits<Rational>::to_double(r);
    }
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        // from_chars rejects a leading '+'.
        if (!text.empty() && text.front() == '+') return from_text(text.substr(1));
        detail::bad_scalar(text);
    }
    return v;
}

inline std::string ScalarTraits<double>::to_text(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 9);
    std::string s(buf, ptr);
    if (auto dot = s.find('.'); dot != std::string::npos) {
        while (s.back() == '0') s.pop_back();
        if (s.back() == '.') s.pop_back();
    }
    if (s == "-0") s = "0";
    return s;
}

inline Rational ScalarTraits<Rational>::from_text(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::int64_t num = 0;
        std::int64_t den = 0;
        auto a = text.substr(0, slash);
        auto b = text.substr(slash + 1);
        if (!a.empty() && a.front() == '+') a.remove_prefix(1);
        auto r1 = std::from_chars(a.data(), a.data() + a.size(), num);
        auto r2 = std::from_chars(b.data(), b.data() + b.size(), den);
        if (a.empty() || b.empty() || r1.ec != std::errc() || r2.ec != std::errc() ||
            r1.ptr != a.data() + a.size() || r2.ptr != b.data() + b.size() || den == 0) {
            detail::bad_scalar(text);
        }
        return Rational(num, den);
    }
    return detail::decimal_to_rational(text);
}

inline std::string ScalarTraits<Rational>::to_text(const Rational& v) {
    if (v.denominator() == 1) return std::to_string(v.numerator());
    return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

}  // namespace sldi
