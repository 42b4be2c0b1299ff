#pragma once

#include <string>

#include "cptk/rational.hpp"

namespace cptk {

/// Complex number with exact rational real and imaginary parts.
/// Closed under +, -, *, conjugation and (for nonzero values) inversion;
/// equality is decidable componentwise.
struct QComplex {
    Rat re{0};
    Rat im{0};

    QComplex() = default;
    QComplex(Rat r) : re(std::move(r)) {}
    QComplex(long r) : re(r) {}
    QComplex(int r) : re(r) {}
    QComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static QComplex i_unit() { return QComplex{Rat(0), Rat(1)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_imaginary() const { return re == 0; }

    QComplex conj() const { return {re, -im}; }

    QComplex operator-() const { return {-re, -im}; }

    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    QComplex& operator*=(const QComplex& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend bool operator==(const QComplex& a, const QComplex& b) = default;

    // (a+bi)^{-1} = (a-bi)/(a^2+b^2); exact, throws on zero.
    QComplex inverse() const;

    friend QComplex operator/(const QComplex& a, const QComplex& b) {
        return a * b.inverse();
    }

    // Order used only for canonical container keys, not arithmetic meaning.
    friend bool operator<(const QComplex& a, const QComplex& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }
};

/// Renders in the spec-file literal style: "0", "-1/2", "i", "-3i/4", "1/2+3i/4".
std::string to_string(const QComplex& z);

} // namespace cptk
