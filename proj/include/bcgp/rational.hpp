#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace bcgp {

// Exact rational on 64-bit components. Density classification must not go
// through floating point: the balancedness checks compare with strict
// inequalities.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw std::invalid_argument("Rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    Rational operator+(const Rational& o) const {
        return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator-(const Rational& o) const {
        return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_);
    }
    Rational operator*(const Rational& o) const {
        return make(i128(num_) * o.num_, i128(den_) * o.den_);
    }
    Rational operator/(const Rational& o) const {
        if (o.num_ == 0) throw std::invalid_argument("Rational: division by zero");
        return make(i128(num_) * o.den_, i128(den_) * o.num_);
    }

    bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return i128(num_) * o.den_ < i128(o.num_) * den_; }
    bool operator<=(const Rational& o) const { return i128(num_) * o.den_ <= i128(o.num_) * den_; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using i128 = __int128;

    static Rational make(i128 n, i128 d) {
        if (d < 0) { n = -n; d = -d; }
        i128 g = gcd128(n < 0 ? -n : n, d);
        if (g > 1) { n /= g; d /= g; }
        Rational r;
        if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
            throw std::overflow_error("Rational: overflow");
        r.num_ = static_cast<long long>(n);
        r.den_ = static_cast<long long>(d);
        return r;
    }
    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a == 0 ? 1 : a;
    }
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    long long num_;
    long long den_;
};

}  // namespace bcgp
