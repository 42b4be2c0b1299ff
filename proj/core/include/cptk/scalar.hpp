#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "cptk/qcomplex.hpp"
#include "cptk/rational.hpp"

namespace cptk {

/// Exact scalar in a one-level real radical extension of the complex
/// rationals: a finite sum  sum_d c_d * sqrt(d)  with c_d a QComplex and d a
/// square-free positive integer (d = 1 carries the rational part).
///
/// Spin-ladder matrix entries like sqrt(3)/2 live here; products of radicals
/// reduce by gcd (sqrt(a)*sqrt(b) = g*sqrt(ab/g^2)) so arithmetic is closed
/// and equality stays decidable. Inversion rationalizes one radical prime at
/// a time and is exact.
class Scalar {
  public:
    Scalar() = default;
    Scalar(QComplex c) { set(1, std::move(c)); }
    Scalar(Rat r) : Scalar(QComplex(std::move(r))) {}
    Scalar(int n) : Scalar(QComplex(n)) {}

    static Scalar i_unit() { return Scalar(QComplex::i_unit()); }

    /// Exact sqrt of a non-negative rational: sqrt(p/q) = sqrt(p*q)/q with the
    /// square part of p*q extracted. Throws on negative input.
    static Scalar sqrt_of(const Rat& r);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational_complex() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }
    /// The d = 1 coefficient (zero if absent).
    QComplex rational_part() const;

    bool is_real() const;
    bool is_imaginary() const;

    Scalar conj() const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    /// Exact inverse; throws std::domain_error on zero.
    Scalar inverse() const;
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        return a * b.inverse();
    }

    friend bool operator==(const Scalar&, const Scalar&) = default;

    std::string str() const;

    const std::map<std::uint64_t, QComplex>& terms() const { return terms_; }

  private:
    void set(std::uint64_t radicand, QComplex c);
    void add(std::uint64_t radicand, const QComplex& c);

    // radicand (square-free, >= 1) -> coefficient; no zero coefficients kept.
    std::map<std::uint64_t, QComplex> terms_;
};

inline Scalar operator*(const QComplex& c, const Scalar& s) { return Scalar(c) * s; }

} // namespace cptk
