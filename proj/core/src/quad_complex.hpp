#pragma once

// Internal quadruple-precision complex scalar (arithmetic only). Used where
// double-precision cancellation is the accuracy bottleneck: endpoint
// polishing of polynomial-system solutions and the Schwarzian sums.

#include <complex>

namespace coaxial::detail {

struct QuadComplex {
    __float128 re = 0, im = 0;
    QuadComplex() = default;
    QuadComplex(__float128 r, __float128 i) : re(r), im(i) {}
    explicit QuadComplex(const std::complex<double>& z) : re(z.real()), im(z.imag()) {}
    std::complex<double> value() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
    friend QuadComplex operator+(const QuadComplex& a, const QuadComplex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend QuadComplex operator-(const QuadComplex& a, const QuadComplex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend QuadComplex operator*(const QuadComplex& a, const QuadComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend QuadComplex operator/(const QuadComplex& a, const QuadComplex& b) {
        __float128 n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    QuadComplex& operator+=(const QuadComplex& o) { return *this = *this + o; }
    QuadComplex& operator-=(const QuadComplex& o) { return *this = *this - o; }
    __float128 norm1() const {
        __float128 r = re < 0 ? -re : re;
        __float128 i = im < 0 ? -im : im;
        return r + i;
    }
};

}  // namespace coaxial::detail
