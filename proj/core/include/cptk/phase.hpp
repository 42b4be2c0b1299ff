#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cptk/qcomplex.hpp"
#include "cptk/rational.hpp"

namespace cptk {

/// Unit-modulus c-number e^{2*pi*i*turns} with turns a rational in [0,1).
/// Multiplication adds turns mod 1. Conversion to a QComplex is defined
/// exactly only for the fourth roots of unity (turns in {0, 1/4, 1/2, 3/4});
/// other phases stay symbolic.
class Phase {
  public:
    Phase() = default;
    explicit Phase(Rat turns) : turns_(normalize(std::move(turns))) {}

    static Phase one() { return Phase{}; }
    static Phase i() { return Phase{Rat(1, 4)}; }
    static Phase minus_one() { return Phase{Rat(1, 2)}; }
    static Phase minus_i() { return Phase{Rat(3, 4)}; }

    const Rat& turns() const { return turns_; }

    friend Phase operator*(const Phase& a, const Phase& b) {
        return Phase{a.turns_ + b.turns_};
    }
    Phase inverse() const { return Phase{-turns_}; }
    Phase conj() const { return inverse(); }
    Phase squared() const { return *this * *this; }

    friend bool operator==(const Phase&, const Phase&) = default;

    bool is_fourth_root() const {
        return denominator(turns_) == 1 || denominator(turns_) == 2 ||
               denominator(turns_) == 4;
    }

    /// Exact value for fourth roots of unity; throws otherwise.
    QComplex to_qcomplex() const;

    std::string str() const;

    /// Accepts "1", "-1", "i", "-i" and rational turn counts like "1/4".
    static std::optional<Phase> parse(const std::string& text);

  private:
    static Rat normalize(Rat t) {
        Int num = numerator(t), den = denominator(t);
        Int m = num % den;
        if (m < 0) m += den;
        return Rat(m, den);
    }

    Rat turns_{0};
};

} // namespace cptk
