#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>

#include "algact/group.hpp"
#include "algact/rational.hpp"

namespace algact {

// Scalar domains a group-ring coefficient can live in: integer, rational,
// real, complex. The traits below are the small amount of glue convolution
// and adjoints need.
template <class T>
struct scalar_traits;

template <>
struct scalar_traits<std::int64_t> {
    static bool is_zero(std::int64_t v) { return v == 0; }
    static std::int64_t conj(std::int64_t v) { return v; }
    static std::int64_t add(std::int64_t a, std::int64_t b) { return checked_add(a, b); }
    static std::int64_t mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
    static double abs2(std::int64_t v) { return double(v) * double(v); }
};

template <>
struct scalar_traits<Rational> {
    static bool is_zero(const Rational& v) { return v.is_zero(); }
    static Rational conj(const Rational& v) { return v; }
    static Rational add(const Rational& a, const Rational& b) { return a + b; }
    static Rational mul(const Rational& a, const Rational& b) { return a * b; }
    static double abs2(const Rational& v) { double d = v.to_double(); return d * d; }
};

template <>
struct scalar_traits<double> {
    static bool is_zero(double v) { return v == 0.0; }
    static double conj(double v) { return v; }
    static double add(double a, double b) { return a + b; }
    static double mul(double a, double b) { return a * b; }
    static double abs2(double v) { return v * v; }
};

template <>
struct scalar_traits<std::complex<double>> {
    static bool is_zero(const std::complex<double>& v) { return v == std::complex<double>(0.0); }
    static std::complex<double> conj(const std::complex<double>& v) { return std::conj(v); }
    static std::complex<double> add(const std::complex<double>& a, const std::complex<double>& b) { return a + b; }
    static std::complex<double> mul(const std::complex<double>& a, const std::complex<double>& b) { return a * b; }
    static double abs2(const std::complex<double>& v) { return std::norm(v); }
};

/// Finitely supported function G -> T. No zero coefficients are ever
/// stored; iteration follows the canonical element order.
template <class T>
class FinSupp {
public:
    using map_type = std::map<GroupElement, T, CanonicalLess>;

    explicit FinSupp(const GroupDescriptor& G) : G_(G), c_(CanonicalLess{G}) {}

    const GroupDescriptor& group() const { return G_; }
    const map_type& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    std::size_t support_size() const { return c_.size(); }

    T at(const GroupElement& g) const {
        auto it = c_.find(g);
        return it == c_.end() ? T{} : it->second;
    }

    void set(const GroupElement& g, const T& v) {
        if (scalar_traits<T>::is_zero(v)) c_.erase(g);
        else c_[g] = v;
    }

    void add_to(const GroupElement& g, const T& v) {
        auto it = c_.find(g);
        if (it == c_.end()) {
            if (!scalar_traits<T>::is_zero(v)) c_.emplace(g, v);
        } else {
            it->second = scalar_traits<T>::add(it->second, v);
            if (scalar_traits<T>::is_zero(it->second)) c_.erase(it);
        }
    }

    FinSupp& operator+=(const FinSupp& o) {
        check_same_group(G_, o.G_);
        for (const auto& [g, v] : o.c_) add_to(g, v);
        return *this;
    }
    friend FinSupp operator+(FinSupp a, const FinSupp& b) { return a += b; }

    FinSupp operator-() const {
        FinSupp out(G_);
        for (const auto& [g, v] : c_) out.c_.emplace(g, scalar_traits<T>::mul(T{-1}, v));
        return out;
    }
    friend FinSupp operator-(const FinSupp& a, const FinSupp& b) { return a + (-b); }

    friend FinSupp operator*(const T& s, const FinSupp& a) {
        FinSupp out(a.G_);
        for (const auto& [g, v] : a.c_) out.set(g, scalar_traits<T>::mul(s, v));
        return out;
    }

    friend bool operator==(const FinSupp& a, const FinSupp& b) {
        return a.G_ == b.G_ && a.c_ == b.c_;
    }
    friend bool operator!=(const FinSupp& a, const FinSupp& b) { return !(a == b); }

    /// Convolution (a*b)(g) = sum_h a(h) b(h^-1 g) — the group-ring product
    /// of coefficient functions.
    friend FinSupp convolve(const FinSupp& a, const FinSupp& b) {
        check_same_group(a.G_, b.G_);
        FinSupp out(a.G_);
        for (const auto& [h, va] : a.c_)
            for (const auto& [y, vb] : b.c_)
                out.add_to(mul(a.G_, h, y), scalar_traits<T>::mul(va, vb));
        return out;
    }

    /// Adjoint on one coefficient function: g -> conj(a(g^-1)).
    FinSupp star() const {
        FinSupp out(G_);
        for (const auto& [g, v] : c_) out.c_.emplace(inverse(G_, g), scalar_traits<T>::conj(v));
        return out;
    }

    /// Left translation by s: g -> a(s^-1 g), i.e. delta_s * a.
    FinSupp translate(const GroupElement& s) const {
        FinSupp out(G_);
        for (const auto& [g, v] : c_) out.c_.emplace(mul(G_, s, g), v);
        return out;
    }

    std::int64_t support_radius() const {
        std::int64_t r = 0;
        for (const auto& [g, v] : c_) r = std::max(r, word_length(G_, g));
        return r;
    }

    double l2_norm_sq() const {
        double s = 0;
        for (const auto& [g, v] : c_) s += scalar_traits<T>::abs2(v);
        return s;
    }
    double l2_norm() const { return std::sqrt(l2_norm_sq()); }

    double l1_norm() const {
        double s = 0;
        for (const auto& [g, v] : c_) s += std::sqrt(scalar_traits<T>::abs2(v));
        return s;
    }

    template <class U, class Fn>
    FinSupp<U> map_values(Fn fn) const {
        FinSupp<U> out(G_);
        for (const auto& [g, v] : c_) out.set(g, fn(v));
        return out;
    }

private:
    template <class U>
    friend class FinSupp;

    GroupDescriptor G_;
    map_type c_;
};

inline FinSupp<double> to_real(const FinSupp<std::int64_t>& a) {
    return a.map_values<double>([](std::int64_t v) { return double(v); });
}
inline FinSupp<double> to_real(const FinSupp<Rational>& a) {
    return a.map_values<double>([](const Rational& v) { return v.to_double(); });
}
inline FinSupp<Rational> to_rational(const FinSupp<std::int64_t>& a) {
    return a.map_values<Rational>([](std::int64_t v) { return Rational(v); });
}

/// delta_g with coefficient 1.
template <class T>
FinSupp<T> delta(const GroupDescriptor& G, const GroupElement& g, const T& v = T{1}) {
    FinSupp<T> out(G);
    out.set(g, v);
    return out;
}

}  // namespace algact
