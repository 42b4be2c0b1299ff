#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cptk/field_model.hpp"
#include "cptk/lagrangian.hpp"
#include "cptk/phase.hpp"
#include "cptk/umatrix.hpp"

namespace cptk {

struct Diagnostic {
    int line{0};
    int col{1};
    std::string message;

    std::string str() const {
        return std::to_string(line) + ":" + std::to_string(col) + ": " + message;
    }
};

struct FieldDecl {
    std::string name;
    HalfInt A, B;
    bool parity_doubled{false};
    bool charge_doubled{false};
    HalfInt spin;
    Rat charge{0};
    Statistics declared{Statistics::Unknown};
    int line{0};

    friend bool operator==(const FieldDecl& a, const FieldDecl& b) {
        return a.name == b.name && a.A == b.A && a.B == b.B &&
               a.parity_doubled == b.parity_doubled &&
               a.charge_doubled == b.charge_doubled && a.spin == b.spin &&
               a.charge == b.charge && a.declared == b.declared;
    }
};

struct TemplateUse {
    std::string name;
    std::vector<std::string> fields;
    int line{0};

    friend bool operator==(const TemplateUse& a, const TemplateUse& b) {
        return a.name == b.name && a.fields == b.fields;
    }
};

struct MatrixLiteral {
    std::vector<std::vector<QComplex>> rows;
    int line{0};

    friend bool operator==(const MatrixLiteral& a, const MatrixLiteral& b) {
        return a.rows == b.rows;
    }
};

struct TermDecl {
    QComplex coeff;
    std::vector<std::string> factor_fields;
    std::vector<int> k_powers;
    int line{0};

    friend bool operator==(const TermDecl& a, const TermDecl& b) {
        return a.coeff == b.coeff && a.factor_fields == b.factor_fields &&
               a.k_powers == b.k_powers;
    }
};

/// Parsed form of one spec file: fields, couplings (templates or four
/// explicit matrices), polynomial terms, and options. Line numbers are
/// diagnostic metadata and do not take part in document equality.
struct SpecDocument {
    std::vector<FieldDecl> fields;
    std::vector<TemplateUse> templates;
    std::optional<std::array<MatrixLiteral, 4>> explicit_u;
    std::vector<TermDecl> terms;
    Phase phase_s = Phase::one();
    Phase phase_c = Phase::one();
    char normal = 't';

    friend bool operator==(const SpecDocument& a, const SpecDocument& b) {
        return a.fields == b.fields && a.templates == b.templates &&
               a.explicit_u == b.explicit_u && a.terms == b.terms &&
               a.phase_s == b.phase_s && a.phase_c == b.phase_c &&
               a.normal == b.normal;
    }
};

struct ParseResult {
    std::optional<SpecDocument> document; // set iff diagnostics is empty
    std::vector<Diagnostic> diagnostics;  // at most 20
};

ParseResult parse_spec(const std::string& text);

/// Canonical rendering; parse(format_spec(d)) reproduces d exactly.
std::string format_spec(const SpecDocument& doc);

/// Exact complex rational literal ("1/2+3i/4", "-i", "2"); nullopt on error.
std::optional<QComplex> parse_qcomplex(const std::string& text);

/// The instantiated system a document describes.
struct Instantiated {
    FSystem system;
    UMatrixSet u;
    Lagrangian lagrangian;
    Phase phase_s;
    Phase phase_c;
    char normal;
};

/// Builds the field system, coupling matrices (expanding templates) and the
/// Lagrangian. The document must have parsed cleanly; binding errors throw
/// std::invalid_argument. Terms with an odd coupling-power sum are kept so
/// the well-formedness check can report them.
Instantiated instantiate(const SpecDocument& doc);

} // namespace cptk
