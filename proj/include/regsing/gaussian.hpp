#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace regsing {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Element of Q(i).  Components are kept reduced by cpp_rational itself,
// so every value has exactly one representation.
struct GaussianRational {
    BigRat re;
    BigRat im;

    GaussianRational() = default;
    GaussianRational(long v) : re(v) {}
    GaussianRational(BigRat r) : re(std::move(r)) {}
    GaussianRational(BigRat r, BigRat i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return GaussianRational(BigRat(0), BigRat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    GaussianRational conj() const { return GaussianRational(re, -im); }
    BigRat norm() const { return re * re + im * im; }  // |.|^2

    GaussianRational operator-() const { return GaussianRational(-re, -im); }
    GaussianRational operator+(const GaussianRational& o) const {
        return GaussianRational(re + o.re, im + o.im);
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return GaussianRational(re - o.re, im - o.im);
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return GaussianRational(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GaussianRational operator/(const GaussianRational& o) const {
        if (o.is_zero()) throw std::runtime_error("division by zero in Q(i)");
        BigRat n = o.norm();
        GaussianRational num = *this * o.conj();
        return GaussianRational(num.re / n, num.im / n);
    }
    GaussianRational& operator+=(const GaussianRational& o) { *this = *this + o; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { *this = *this - o; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }
    GaussianRational& operator/=(const GaussianRational& o) { *this = *this / o; return *this; }

    bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }
    // total order for deterministic containers, no analytic meaning
    bool operator<(const GaussianRational& o) const {
        if (re != o.re) return re < o.re;
        return im < o.im;
    }

    GaussianRational pow(int k) const {
        if (k < 0) throw std::runtime_error("negative power in Q(i)::pow");
        GaussianRational acc(1), base = *this;
        while (k) {
            if (k & 1) acc *= base;
            base *= base;
            k >>= 1;
        }
        return acc;
    }
};

std::string to_string(const BigRat& r);
// Canonical text form: "0", "-3/2", "i", "-2*i", "1/2+1/3*i", "1-i".
std::string to_string(const GaussianRational& g);

}  // namespace regsing
