#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>

#include "symred/errors.hpp"

namespace symred {

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator. Zero is canonically 0/1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(std::int64_t n) : v_(static_cast<long>(n)) {}
    Rational(std::int64_t num, std::int64_t den) {
        if (den == 0) throw ValidationError("rational with zero denominator");
        v_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Accepts "n" or "n/d", optional leading sign; always base 10.
    static Rational from_string(const std::string& text) {
        if (text.empty()) throw ValidationError("empty rational literal");
        try {
            mpq_class v(text, 10);
            if (v.get_den() == 0) throw ValidationError("rational with zero denominator");
            v.canonicalize();
            return Rational(v);
        } catch (const std::invalid_argument&) {
            throw ValidationError("malformed rational literal: '" + text + "'");
        }
    }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw ValidationError("division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    Rational inverse() const {
        if (is_zero()) throw ValidationError("inverse of zero rational");
        return Rational(mpq_class(1) / v_);
    }

    std::string numerator_str() const { return v_.get_num().get_str(); }
    std::string denominator_str() const { return v_.get_den().get_str(); }

    std::string str() const {
        if (is_integer()) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    Rational pow(unsigned e) const {
        mpq_class acc(1);
        mpq_class base = v_;
        for (unsigned k = e; k > 0; k >>= 1) {
            if (k & 1u) acc *= base;
            if (k > 1) base *= base;
        }
        return Rational(acc);
    }

private:
    mpq_class v_;
};

} // namespace symred
