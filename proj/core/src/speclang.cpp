#include "cptk/speclang.hpp"

#include <cctype>
#include <sstream>

#include "cptk/templates.hpp"

namespace cptk {

namespace {

constexpr std::size_t kMaxDiagnostics = 20;

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    bool neg = false;
    if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
    std::string num, den;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        num += s[pos++];
    if (num.empty()) return std::nullopt;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            den += s[pos++];
        if (den.empty()) return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    Rat r = den.empty() ? Rat(Int(num)) : Rat(Int(num), Int(den));
    return neg ? -r : r;
}

// One signed piece of a complex literal: "3", "3/4", "i", "3i", "3i/4", "i/4".
struct ComplexPiece {
    Rat value;
    bool imaginary;
};

std::optional<ComplexPiece> parse_piece(const std::string& s, bool neg) {
    if (s.empty()) return std::nullopt;
    std::size_t pos = 0;
    std::string num;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        num += s[pos++];
    bool imag = false;
    if (pos < s.size() && s[pos] == 'i') {
        imag = true;
        ++pos;
    }
    if (!imag && num.empty()) return std::nullopt;
    std::string den;
    if (pos < s.size() && s[pos] == '/') {
        ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            den += s[pos++];
        if (den.empty()) return std::nullopt;
    }
    if (pos != s.size()) return std::nullopt;
    Rat v = Rat(num.empty() ? Int(1) : Int(num), den.empty() ? Int(1) : Int(den));
    return ComplexPiece{neg ? -v : v, imag};
}

} // namespace

std::optional<QComplex> parse_qcomplex(const std::string& text) {
    std::string s = trim(text);
    if (s.empty()) return std::nullopt;
    // Split into at most two signed pieces.
    std::vector<std::pair<bool, std::string>> pieces;
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool neg = false;
        if (s[pos] == '+' || s[pos] == '-') neg = s[pos++] == '-';
        std::string body;
        while (pos < s.size() && s[pos] != '+' && s[pos] != '-') body += s[pos++];
        pieces.emplace_back(neg, body);
    }
    if (pieces.empty() || pieces.size() > 2) return std::nullopt;
    QComplex out;
    bool saw_real = false, saw_imag = false;
    for (const auto& [neg, body] : pieces) {
        auto piece = parse_piece(body, neg);
        if (!piece) return std::nullopt;
        if (piece->imaginary) {
            if (saw_imag) return std::nullopt;
            saw_imag = true;
            out.im = piece->value;
        } else {
            if (saw_real) return std::nullopt;
            saw_real = true;
            out.re = piece->value;
        }
    }
    return out;
}

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) lines_.push_back(line);
    }

    ParseResult run() {
        std::string section;
        for (int ln = 0; ln < static_cast<int>(lines_.size()); ++ln) {
            line_no_ = ln + 1;
            std::string raw = lines_[ln];
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            std::string s = trim(raw);
            if (s.empty()) continue;
            if (s.front() == '[') {
                if (s.back() != ']') {
                    error("unterminated section header");
                    continue;
                }
                section = s.substr(1, s.size() - 2);
                if (section != "fields" && section != "umatrix" &&
                    section != "lagrangian" && section != "options")
                    error("unknown section [" + section + "]");
                continue;
            }
            if (section == "fields")
                parse_field_line(s);
            else if (section == "umatrix")
                parse_umatrix_line(s);
            else if (section == "lagrangian")
                parse_term_line(s);
            else if (section == "options")
                parse_option_line(s);
            else
                error("content before the first section header");
            if (diagnostics_.size() >= kMaxDiagnostics) break;
        }
        finish();
        ParseResult out;
        out.diagnostics = std::move(diagnostics_);
        if (out.diagnostics.empty()) out.document = std::move(doc_);
        return out;
    }

  private:
    void error(const std::string& msg, int col = 1) {
        if (diagnostics_.size() < kMaxDiagnostics)
            diagnostics_.push_back(Diagnostic{line_no_, col, msg});
    }

    // "(A,B)" or "(A,B)+(B,A)".
    bool parse_block(const std::string& tok, FieldDecl& f) {
        auto parse_pair = [&](const std::string& p, HalfInt& a,
                              HalfInt& b) -> bool {
            if (p.size() < 2 || p.front() != '(' || p.back() != ')') return false;
            std::string inner = p.substr(1, p.size() - 2);
            auto comma = inner.find(',');
            if (comma == std::string::npos) return false;
            try {
                a = parse_half_int(trim(inner.substr(0, comma)));
                b = parse_half_int(trim(inner.substr(comma + 1)));
            } catch (const std::exception&) {
                return false;
            }
            return a.twice >= 0 && b.twice >= 0;
        };
        auto plus = tok.find(")+(");
        if (plus == std::string::npos) {
            f.parity_doubled = false;
            return parse_pair(tok, f.A, f.B);
        }
        HalfInt a1, b1, a2, b2;
        if (!parse_pair(tok.substr(0, plus + 1), a1, b1)) return false;
        if (!parse_pair(tok.substr(plus + 2), a2, b2)) return false;
        if (!(a1 == b2) || !(b1 == a2) || a1 == b1) {
            error("a doubled block must be (A,B)+(B,A) with A != B");
            return false;
        }
        f.A = a1;
        f.B = b1;
        f.parity_doubled = true;
        return true;
    }

    void parse_field_line(const std::string& s) {
        auto colon = s.find(':');
        if (colon == std::string::npos) {
            error("expected 'name : (A,B) attributes...'");
            return;
        }
        FieldDecl f;
        f.line = line_no_;
        f.name = trim(s.substr(0, colon));
        if (!is_identifier(f.name)) {
            error("'" + f.name + "' is not a valid field name");
            return;
        }
        auto toks = split_ws(trim(s.substr(colon + 1)));
        if (toks.empty() || !parse_block(toks[0], f)) {
            error("field '" + f.name + "': expected a block like (0,1/2) or "
                  "(0,1/2)+(1/2,0)");
            return;
        }
        bool saw_spin = false;
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const std::string& t = toks[i];
            if (t == "charge-doubled") {
                f.charge_doubled = true;
            } else if (t.rfind("spin=", 0) == 0) {
                try {
                    f.spin = parse_half_int(t.substr(5));
                    saw_spin = true;
                } catch (const std::exception&) {
                    error("field '" + f.name + "': bad spin '" + t + "'");
                    return;
                }
            } else if (t.rfind("charge=", 0) == 0) {
                auto q = parse_rat(t.substr(7));
                if (!q) {
                    error("field '" + f.name + "': bad charge '" + t + "'");
                    return;
                }
                f.charge = *q;
            } else if (t.rfind("statistics=", 0) == 0) {
                std::string v = t.substr(11);
                if (v == "bose")
                    f.declared = Statistics::Bose;
                else if (v == "fermi")
                    f.declared = Statistics::Fermi;
                else {
                    error("field '" + f.name + "': statistics must be bose or fermi");
                    return;
                }
            } else {
                error("field '" + f.name + "': unknown attribute '" + t + "'");
                return;
            }
        }
        if (!saw_spin) {
            error("field '" + f.name + "': missing spin=");
            return;
        }
        // Spin bound and parity against the block.
        HalfInt lo = (f.A - f.B).abs(), hi = f.A + f.B;
        if (f.spin < lo || hi < f.spin) {
            error("field '" + f.name + "': spin " + to_string(f.spin) +
                  " outside |A-B| <= j <= A+B");
            return;
        }
        if (f.spin.is_integer() != hi.is_integer()) {
            error("field '" + f.name + "': spin " + to_string(f.spin) +
                  " has the wrong parity for the block");
            return;
        }
        for (const auto& g : doc_.fields)
            if (g.name == f.name) {
                error("duplicate field name '" + f.name + "'");
                return;
            }
        doc_.fields.push_back(std::move(f));
    }

    void parse_umatrix_line(const std::string& s) {
        if (s.rfind("template", 0) == 0) {
            auto colon = s.find(':');
            if (colon == std::string::npos) {
                error("expected 'template <name> : field...'");
                return;
            }
            TemplateUse use;
            use.line = line_no_;
            auto head = split_ws(s.substr(0, colon));
            if (head.size() != 2) {
                error("expected 'template <name> : field...'");
                return;
            }
            use.name = head[1];
            if (!find_template(use.name)) {
                error("unknown template '" + use.name + "'");
                return;
            }
            use.fields = split_ws(s.substr(colon + 1));
            if (use.fields.empty()) {
                error("template '" + use.name + "' binds no fields");
                return;
            }
            doc_.templates.push_back(std::move(use));
            return;
        }
        auto eq = s.find('=');
        if (eq != std::string::npos) {
            std::string lhs = trim(s.substr(0, eq));
            if (lhs.size() == 2 && lhs[0] == 'u' && lhs[1] >= '0' && lhs[1] <= '3') {
                int mu = lhs[1] - '0';
                auto m = parse_matrix(trim(s.substr(eq + 1)));
                if (!m) return;
                if (!doc_.explicit_u) doc_.explicit_u.emplace();
                (*doc_.explicit_u)[mu] = std::move(*m);
                (*doc_.explicit_u)[mu].line = line_no_;
                return;
            }
        }
        error("expected 'template ... : ...' or 'u<mu> = [...]'");
    }

    std::optional<MatrixLiteral> parse_matrix(const std::string& s) {
        if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
            error("matrix literal must be bracketed: [ a, b ; c, d ]");
            return std::nullopt;
        }
        MatrixLiteral lit;
        std::string inner = s.substr(1, s.size() - 2);
        std::istringstream rows(inner);
        std::string row;
        while (std::getline(rows, row, ';')) {
            std::vector<QComplex> entries;
            std::istringstream cells(row);
            std::string cell;
            while (std::getline(cells, cell, ',')) {
                auto v = parse_qcomplex(cell);
                if (!v) {
                    error("bad matrix entry '" + trim(cell) + "'");
                    return std::nullopt;
                }
                entries.push_back(*v);
            }
            if (entries.empty()) {
                error("empty matrix row");
                return std::nullopt;
            }
            if (!lit.rows.empty() && entries.size() != lit.rows[0].size()) {
                error("ragged matrix rows");
                return std::nullopt;
            }
            lit.rows.push_back(std::move(entries));
        }
        if (lit.rows.empty()) {
            error("empty matrix literal");
            return std::nullopt;
        }
        return lit;
    }

    void parse_term_line(const std::string& s) {
        if (s.rfind("term", 0) != 0) {
            error("expected 'term <coeff> : field (k) field ...'");
            return;
        }
        auto colon = s.find(':');
        if (colon == std::string::npos) {
            error("expected ':' after the term coefficient");
            return;
        }
        TermDecl term;
        term.line = line_no_;
        std::string coeff_text = trim(s.substr(4, colon - 4));
        auto coeff = parse_qcomplex(coeff_text);
        if (!coeff) {
            error("bad term coefficient '" + coeff_text + "'");
            return;
        }
        term.coeff = *coeff;
        auto toks = split_ws(s.substr(colon + 1));
        bool expect_field = true;
        for (const auto& t : toks) {
            if (expect_field) {
                if (!is_identifier(t)) {
                    error("expected a field name, got '" + t + "'");
                    return;
                }
                term.factor_fields.push_back(t);
                expect_field = false;
            } else if (t.size() >= 3 && t.front() == '(' && t.back() == ')') {
                try {
                    int k = std::stoi(t.substr(1, t.size() - 2));
                    if (k < 0) throw std::invalid_argument("negative");
                    term.k_powers.push_back(k);
                } catch (const std::exception&) {
                    error("bad coupling power '" + t + "'");
                    return;
                }
                expect_field = true;
            } else {
                // Adjacent fields with no coupling between them.
                if (!is_identifier(t)) {
                    error("expected '(k)' or a field name, got '" + t + "'");
                    return;
                }
                term.k_powers.push_back(0);
                term.factor_fields.push_back(t);
            }
        }
        if (term.factor_fields.empty() || expect_field) {
            error("term needs fields separated by coupling powers");
            return;
        }
        doc_.terms.push_back(std::move(term));
    }

    void parse_option_line(const std::string& s) {
        auto eq = s.find('=');
        if (eq == std::string::npos) {
            error("expected 'key = value'");
            return;
        }
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key == "phase_s" || key == "phase_c") {
            auto p = Phase::parse(value);
            if (!p || !p->is_fourth_root()) {
                error(key + " must be a fourth root of unity (1, i, -1, -i)");
                return;
            }
            (key == "phase_s" ? doc_.phase_s : doc_.phase_c) = *p;
        } else if (key == "normal") {
            if (value.size() != 1 || std::string("txyz").find(value) == std::string::npos) {
                error("normal must be one of t, x, y, z");
                return;
            }
            doc_.normal = value[0];
        } else {
            error("unknown option '" + key + "'");
        }
    }

    void finish() {
        if (doc_.fields.empty()) {
            error_at(1, "no fields declared");
            return;
        }
        // Couplings: templates and explicit matrices are mutually exclusive.
        if (!doc_.templates.empty() && doc_.explicit_u) {
            error_at(1, "use either templates or explicit u matrices, not both");
            return;
        }
        if (doc_.explicit_u) {
            for (int m = 0; m < 4; ++m)
                if ((*doc_.explicit_u)[m].rows.empty())
                    error_at(1, "explicit couplings need all of u0..u3");
        }
        for (const auto& use : doc_.templates) {
            for (const auto& fname : use.fields) {
                bool found = false;
                for (const auto& f : doc_.fields) found |= f.name == fname;
                if (!found)
                    error_at(use.line, "template '" + use.name +
                                           "' binds unknown field '" + fname + "'");
            }
            const TemplateInfo* info = find_template(use.name);
            if (info && use.fields.size() != info->arity)
                error_at(use.line, "template '" + use.name + "' expects " +
                                       std::to_string(info->arity) + " fields");
        }
        // Every field must be covered exactly once when templates are used.
        if (!doc_.templates.empty()) {
            std::vector<int> covered(doc_.fields.size(), 0);
            for (const auto& use : doc_.templates)
                for (const auto& fname : use.fields)
                    for (std::size_t i = 0; i < doc_.fields.size(); ++i)
                        if (doc_.fields[i].name == fname) ++covered[i];
            for (std::size_t i = 0; i < doc_.fields.size(); ++i)
                if (covered[i] != 1)
                    error_at(doc_.fields[i].line,
                             "field '" + doc_.fields[i].name +
                                 "' must be bound by exactly one template");
        }
        for (const auto& t : doc_.terms)
            for (const auto& fname : t.factor_fields) {
                bool found = false;
                for (const auto& f : doc_.fields) found |= f.name == fname;
                if (!found)
                    error_at(t.line, "term references unknown field '" + fname + "'");
            }
    }

    void error_at(int line, const std::string& msg) {
        if (diagnostics_.size() < kMaxDiagnostics)
            diagnostics_.push_back(Diagnostic{line, 1, msg});
    }

    std::vector<std::string> lines_;
    int line_no_{0};
    SpecDocument doc_;
    std::vector<Diagnostic> diagnostics_;
};

std::string block_to_string(const FieldDecl& f) {
    std::string one = "(" + to_string(f.A) + "," + to_string(f.B) + ")";
    if (!f.parity_doubled) return one;
    return one + "+(" + to_string(f.B) + "," + to_string(f.A) + ")";
}

} // namespace

ParseResult parse_spec(const std::string& text) { return Parser(text).run(); }

std::string format_spec(const SpecDocument& doc) {
    std::ostringstream os;
    os << "[fields]\n";
    for (const auto& f : doc.fields) {
        os << f.name << " : " << block_to_string(f);
        if (f.charge_doubled) os << " charge-doubled";
        os << " spin=" << to_string(f.spin) << " charge=" << to_string(f.charge);
        if (f.declared != Statistics::Unknown)
            os << " statistics=" << to_string(f.declared);
        os << "\n";
    }
    os << "\n[umatrix]\n";
    for (const auto& use : doc.templates) {
        os << "template " << use.name << " :";
        for (const auto& f : use.fields) os << " " << f;
        os << "\n";
    }
    if (doc.explicit_u) {
        for (int m = 0; m < 4; ++m) {
            os << "u" << m << " = [ ";
            const auto& rows = (*doc.explicit_u)[m].rows;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (r) os << " ; ";
                for (std::size_t c = 0; c < rows[r].size(); ++c) {
                    if (c) os << ", ";
                    os << to_string(rows[r][c]);
                }
            }
            os << " ]\n";
        }
    }
    if (!doc.terms.empty()) {
        os << "\n[lagrangian]\n";
        for (const auto& t : doc.terms) {
            os << "term " << to_string(t.coeff) << " :";
            for (std::size_t i = 0; i < t.factor_fields.size(); ++i) {
                os << " " << t.factor_fields[i];
                if (i < t.k_powers.size()) os << " (" << t.k_powers[i] << ")";
            }
            os << "\n";
        }
    }
    os << "\n[options]\n";
    os << "phase_s = " << doc.phase_s.str() << "\n";
    os << "phase_c = " << doc.phase_c.str() << "\n";
    os << "normal = " << doc.normal << "\n";
    return os.str();
}

Instantiated instantiate(const SpecDocument& doc) {
    std::vector<FieldSpec> fields;
    fields.reserve(doc.fields.size());
    for (const auto& fd : doc.fields) {
        FieldSpec f;
        f.name = fd.name;
        f.block = RepBlock(fd.A, fd.B, fd.parity_doubled, fd.charge_doubled);
        f.spin = fd.spin;
        f.charge = fd.charge;
        f.statistics = fd.declared;
        fields.push_back(std::move(f));
    }
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    for (const auto& f : fields) {
        offsets.push_back(total);
        total += f.dimension();
    }

    UMatrixSet u;
    for (auto& m : u.mu) m = CMatrix::zero(total, total);
    if (doc.explicit_u) {
        for (int m = 0; m < 4; ++m) {
            const auto& rows = (*doc.explicit_u)[m].rows;
            if (rows.size() != total || rows[0].size() != total)
                throw std::invalid_argument(
                    "u" + std::to_string(m) + " must be " + std::to_string(total) +
                    "x" + std::to_string(total) + " for this field system");
            for (std::size_t r = 0; r < total; ++r)
                for (std::size_t c = 0; c < total; ++c)
                    u.mu[m].at(r, c) = Scalar(rows[r][c]);
        }
    }
    for (const auto& use : doc.templates) {
        const TemplateInfo* info = find_template(use.name);
        if (!info)
            throw std::invalid_argument("unknown template '" + use.name + "'");
        std::vector<std::size_t> bound;
        for (const auto& fname : use.fields) {
            bool found = false;
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i].name == fname) {
                    bound.push_back(i);
                    found = true;
                    break;
                }
            if (!found)
                throw std::invalid_argument("template binds unknown field '" +
                                            fname + "'");
        }
        apply_template(info->kind, fields, bound, offsets, u);
    }

    Instantiated out{assemble_general_field(std::move(fields)), std::move(u),
                     Lagrangian{}, doc.phase_s, doc.phase_c, doc.normal};
    out.lagrangian = build_kinematic(out.system, out.u);
    for (const auto& td : doc.terms) {
        std::vector<OperatorFactor> factors;
        for (const auto& fname : td.factor_fields) {
            auto idx = out.system.field_index(fname);
            if (!idx)
                throw std::invalid_argument("term references unknown field '" +
                                            fname + "'");
            factors.push_back(OperatorFactor{*idx, false, PointLabel::X,
                                             Statistics::Unknown});
        }
        out.lagrangian.terms.push_back(
            DynTerm::make_unchecked(td.coeff, std::move(factors), td.k_powers));
    }
    return out;
}

} // namespace cptk
