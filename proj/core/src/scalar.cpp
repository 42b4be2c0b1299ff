#include "cptk/scalar.hpp"

#include <numeric>
#include <stdexcept>

#include "cptk/halfint.hpp"
#include "cptk/phase.hpp"
#include "cptk/verdict.hpp"

namespace cptk {

// ---------------------------------------------------------------------------
// QComplex

QComplex QComplex::inverse() const {
    if (is_zero()) throw std::domain_error("QComplex: division by zero");
    Rat n = re * re + im * im;
    return {re / n, -im / n};
}

namespace {

// Renders b*i with b != 0 in the "3i/4" spec-file style.
std::string imag_to_string(const Rat& b) {
    std::string out;
    Int num = numerator(b), den = denominator(b);
    if (num == -1)
        out = "-";
    else if (num != 1)
        out = num.str();
    out += "i";
    if (den != 1) out += "/" + den.str();
    return out;
}

} // namespace

std::string to_string(const QComplex& z) {
    if (z.is_zero()) return "0";
    if (z.im == 0) return to_string(z.re);
    if (z.re == 0) return imag_to_string(z.im);
    std::string out = to_string(z.re);
    if (z.im > 0) out += "+";
    return out + imag_to_string(z.im);
}

// ---------------------------------------------------------------------------
// Phase

QComplex Phase::to_qcomplex() const {
    const Rat& t = turns();
    if (t == 0) return QComplex(1);
    if (t == Rat(1, 4)) return QComplex::i_unit();
    if (t == Rat(1, 2)) return QComplex(-1);
    if (t == Rat(3, 4)) return -QComplex::i_unit();
    throw std::domain_error("Phase: only fourth roots of unity convert exactly");
}

std::string Phase::str() const {
    if (turns_ == 0) return "1";
    if (turns_ == Rat(1, 4)) return "i";
    if (turns_ == Rat(1, 2)) return "-1";
    if (turns_ == Rat(3, 4)) return "-i";
    return "exp(2*pi*i*" + turns_.str() + ")";
}

std::optional<Phase> Phase::parse(const std::string& text) {
    if (text == "1" || text == "+1") return Phase::one();
    if (text == "-1") return Phase::minus_one();
    if (text == "i" || text == "+i") return Phase::i();
    if (text == "-i") return Phase::minus_i();
    // Fall back to a rational turn count.
    try {
        Rat t(text);
        return Phase{t};
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// HalfInt

HalfInt parse_half_int(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        return HalfInt{2 * std::stoi(text)};
    }
    int num = std::stoi(text.substr(0, slash));
    int den = std::stoi(text.substr(slash + 1));
    if (den != 2) throw std::invalid_argument("half-integer must have denominator 2: " + text);
    return HalfInt{num};
}

// ---------------------------------------------------------------------------
// Verdict

void Verdict::absorb(const Verdict& other) {
    witnesses.insert(witnesses.end(), other.witnesses.begin(),
                     other.witnesses.end());
    if (other.status == VerdictStatus::Fail)
        status = VerdictStatus::Fail;
    else if (other.status == VerdictStatus::Indeterminate &&
             status == VerdictStatus::Pass)
        status = VerdictStatus::Indeterminate;
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Pass: return "pass";
        case VerdictStatus::Fail: return "fail";
        case VerdictStatus::Indeterminate: return "indeterminate";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Scalar

namespace {

// Splits n = s^2 * f with f square-free; returns {s, f}. Trial division is
// enough: radicands come from small spin-ladder products.
std::pair<Int, Int> extract_square(Int n) {
    Int square_root(1), free_part(1);
    for (Int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int count = 0;
        while (n % p == 0) {
            n /= p;
            ++count;
        }
        for (int k = 0; k < count / 2; ++k) square_root *= p;
        if (count % 2 != 0) free_part *= p;
    }
    free_part *= n;
    return {square_root, free_part};
}

} // namespace

Scalar Scalar::sqrt_of(const Rat& r) {
    if (r < 0) throw std::domain_error("Scalar::sqrt_of: negative radicand");
    if (r == 0) return Scalar{};
    // sqrt(p/q) = sqrt(p*q)/q
    Int pq = numerator(r) * denominator(r);
    auto [s, f] = extract_square(pq);
    Scalar out;
    out.set(static_cast<std::uint64_t>(f), QComplex(Rat(s, denominator(r))));
    return out;
}

QComplex Scalar::rational_part() const {
    auto it = terms_.find(1);
    return it == terms_.end() ? QComplex{} : it->second;
}

bool Scalar::is_real() const {
    for (const auto& [d, c] : terms_)
        if (!c.is_real()) return false;
    return true;
}

bool Scalar::is_imaginary() const {
    for (const auto& [d, c] : terms_)
        if (!c.is_imaginary()) return false;
    return true;
}

Scalar Scalar::conj() const {
    Scalar out;
    for (const auto& [d, c] : terms_) out.set(d, c.conj());
    return out;
}

Scalar Scalar::operator-() const {
    Scalar out;
    for (const auto& [d, c] : terms_) out.set(d, -c);
    return out;
}

void Scalar::set(std::uint64_t radicand, QComplex c) {
    if (c.is_zero())
        terms_.erase(radicand);
    else
        terms_[radicand] = std::move(c);
}

void Scalar::add(std::uint64_t radicand, const QComplex& c) {
    auto it = terms_.find(radicand);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(radicand, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

Scalar& Scalar::operator+=(const Scalar& o) {
    for (const auto& [d, c] : o.terms_) add(d, c);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    for (const auto& [d, c] : o.terms_) add(d, -c);
    return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [d1, c1] : a.terms_) {
        for (const auto& [d2, c2] : b.terms_) {
            // sqrt(d1)*sqrt(d2) = g*sqrt((d1/g)*(d2/g)); square-free inputs
            // keep the product square-free because d1/g and d2/g are coprime.
            std::uint64_t g = std::gcd(d1, d2);
            std::uint64_t m = (d1 / g) * (d2 / g);
            out.add(m, c1 * c2 * QComplex(Rat(g)));
        }
    }
    return out;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    if (is_rational_complex()) return Scalar(rational_part().inverse());

    // Pick a prime p dividing some radicand and rationalize it away:
    // x = a + b*sqrt(p)  ->  x^{-1} = (a - b*sqrt(p)) / (a^2 - b^2 p),
    // recursing on the p-free denominator.
    std::uint64_t p = 0;
    for (const auto& [d, c] : terms_) {
        if (d == 1) continue;
        std::uint64_t n = d;
        for (std::uint64_t q = 2; q * q <= n; ++q) {
            if (n % q == 0) {
                p = q;
                break;
            }
        }
        if (p == 0) p = n; // d itself prime
        break;
    }

    Scalar a, b;
    for (const auto& [d, c] : terms_) {
        if (d % p == 0)
            b.add(d / p, c);
        else
            a.add(d, c);
    }
    Scalar sqrt_p = Scalar::sqrt_of(Rat(Int(p)));
    Scalar denom = a * a - b * b * Scalar(QComplex(Rat(Int(p))));
    if (denom.is_zero())
        throw std::logic_error("Scalar::inverse: degenerate radical conjugate");
    return (a - b * sqrt_p) * denom.inverse();
}

std::string Scalar::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, c] : terms_) {
        std::string piece = to_string(c);
        if (d != 1) {
            bool simple = (c == QComplex(1));
            if (simple)
                piece = "sqrt(" + std::to_string(d) + ")";
            else if (c == QComplex(-1))
                piece = "-sqrt(" + std::to_string(d) + ")";
            else if (c.is_real() || c.is_imaginary())
                piece = piece + "*sqrt(" + std::to_string(d) + ")";
            else
                piece = "(" + piece + ")*sqrt(" + std::to_string(d) + ")";
        }
        if (!first && piece.front() != '-') out += "+";
        out += piece;
        first = false;
    }
    return out;
}

} // namespace cptk
