#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace algact {

// Exact integer arithmetic on 64 bits that refuses to wrap. All group-ring
// identities are verified with these; an overflow aborts the computation
// instead of producing a wrong "exact" value.

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in add");
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in sub");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("integer overflow in mul");
    return r;
}

/// Rational number over checked 64-bit integers, always normalized
/// (denominator > 0, gcd(num, den) = 1).
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(std::int64_t n) : num_(n), den_(1) {}
    Rational(std::int64_t n, std::int64_t d) : num_(n), den_(d) { normalize(); }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator-() const { return Rational(-num_, den_, tag{}); }

    friend Rational operator+(const Rational& a, const Rational& b) {
        std::int64_t g = std::gcd(a.den_, b.den_);
        std::int64_t bs = b.den_ / g;
        std::int64_t n = checked_add(checked_mul(a.num_, bs), checked_mul(b.num_, a.den_ / g));
        return Rational(n, checked_mul(a.den_, bs));
    }
    friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
    friend Rational operator*(const Rational& a, const Rational& b) {
        std::int64_t g1 = std::gcd(std::abs(a.num_), b.den_);
        std::int64_t g2 = std::gcd(std::abs(b.num_), a.den_);
        return Rational(checked_mul(a.num_ / g1, b.num_ / g2),
                        checked_mul(a.den_ / g2, b.den_ / g1), tag{});
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("rational division by zero");
        return a * Rational(b.den_, b.num_);
    }

    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) {
        return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
    }

    /// Fractional part in [0, 1): x - floor(x), computed exactly.
    Rational mod_one() const {
        std::int64_t r = num_ % den_;
        if (r < 0) r += den_;
        return Rational(r, den_, tag{});
    }

    /// Nearest integer (ties away from zero).
    std::int64_t round_nearest() const {
        std::int64_t q = num_ / den_, r = num_ % den_;
        if (2 * std::abs(r) >= den_) q += (num_ >= 0 ? 1 : -1);
        return q;
    }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

private:
    struct tag {};
    Rational(std::int64_t n, std::int64_t d, tag) : num_(n), den_(d) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) { num_ = checked_sub(0, num_); den_ = checked_sub(0, den_); }
        std::int64_t g = std::gcd(std::abs(num_), den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }

    std::int64_t num_;
    std::int64_t den_;
};

}  // namespace algact
