// Command-line front end: parses field-system spec files, runs the
// verification pipeline and prints structured reports.
//
// Exit codes: 0 all executed checks pass, 1 some check failed, 2 parse or
// usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cptk/pipeline.hpp"
#include "cptk/templates.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    std::string format = "text";
    std::string normal;
    std::string phase_s;
    std::string phase_c;
};

bool color_enabled() {
    const char* v = std::getenv("CPT_KERNEL_COLOR");
    return v != nullptr && std::string(v) == "1";
}

int read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read '" << path << "'\n";
        return kExitUsage;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return kExitPass;
}

int load_document(const std::string& path, const CommonOpts& opts,
                  cptk::SpecDocument& doc) {
    std::string text;
    if (int rc = read_file(path, text); rc != kExitPass) return rc;
    cptk::ParseResult parsed = cptk::parse_spec(text);
    if (!parsed.document) {
        for (const auto& d : parsed.diagnostics)
            std::cerr << path << ":" << d.str() << "\n";
        return kExitUsage;
    }
    doc = std::move(*parsed.document);
    // Command-line flags override document options.
    if (!opts.normal.empty()) {
        if (opts.normal.size() != 1 ||
            std::string("txyz").find(opts.normal) == std::string::npos) {
            std::cerr << "error: --normal must be one of t, x, y, z\n";
            return kExitUsage;
        }
        doc.normal = opts.normal[0];
    }
    for (auto [text_opt, target] : {std::pair{&opts.phase_s, &doc.phase_s},
                                    std::pair{&opts.phase_c, &doc.phase_c}}) {
        if (text_opt->empty()) continue;
        auto p = cptk::Phase::parse(*text_opt);
        if (!p || !p->is_fourth_root()) {
            std::cerr << "error: phases must be fourth roots of unity "
                         "(1, i, -1, -i)\n";
            return kExitUsage;
        }
        *target = *p;
    }
    return kExitPass;
}

cptk::ReportFormat format_of(const CommonOpts& opts) {
    return opts.format == "json" ? cptk::ReportFormat::Json
                                 : cptk::ReportFormat::Text;
}

int emit_and_exit(const cptk::Report& report, const CommonOpts& opts) {
    std::cout << cptk::emit_report(report, format_of(opts), color_enabled());
    return report.all_executed_passed() ? kExitPass : kExitCheckFailed;
}

int run_check(const std::string& path, const CommonOpts& opts) {
    cptk::SpecDocument doc;
    if (int rc = load_document(path, opts, doc); rc != kExitPass) return rc;
    return emit_and_exit(cptk::run_pipeline(doc), opts);
}

int axis_of(char normal) {
    switch (normal) {
        case 't': return 0;
        case 'x': return 1;
        case 'y': return 2;
        case 'z': return 3;
    }
    return 0;
}

int run_derive(const std::string& path, const CommonOpts& opts,
               bool generators) {
    cptk::SpecDocument doc;
    if (int rc = load_document(path, opts, doc); rc != kExitPass) return rc;

    cptk::Instantiated inst;
    try {
        inst = cptk::instantiate(doc);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    const bool json = format_of(opts) == cptk::ReportFormat::Json;
    try {
        if (generators) {
            auto n = cptk::SurfaceNormal::axis(axis_of(inst.normal));
            auto set = cptk::derive_generator(inst.system, inst.u, n);
            auto part = cptk::classify_fundamental(inst.system, inst.u, n);
            std::string text = cptk::render_generator(set.field_variation,
                                                      inst.system) +
                               cptk::render_generator(set.momentum_variation,
                                                      inst.system) +
                               cptk::render_generator(set.symmetric, inst.system) +
                               cptk::render_partition(part, inst.system);
            if (json) {
                // Reuse the line-oriented rendering inside a stable envelope.
                std::cout << "{\n  \"generator\": [\n";
                std::istringstream is(text);
                std::string line;
                bool first = true;
                while (std::getline(is, line)) {
                    if (!first) std::cout << ",\n";
                    first = false;
                    std::string escaped;
                    for (char c : line) {
                        if (c == '"' || c == '\\') escaped += '\\';
                        escaped += c;
                    }
                    std::cout << "    \"" << escaped << "\"";
                }
                std::cout << "\n  ]\n}\n";
            } else {
                std::cout << text;
            }
        } else {
            auto stats = cptk::infer_statistics(inst.system, inst.u);
            auto rels =
                cptk::derive_commutators(inst.system, inst.u, stats.assignment);
            for (const auto& r : rels)
                std::cout << cptk::render_bracket(r, inst.system);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitPass;
}

int run_reps_show(const std::string& a_text, const std::string& b_text,
                  bool parity, bool charge, const CommonOpts& opts) {
    cptk::HalfInt A, B;
    try {
        A = cptk::parse_half_int(a_text);
        B = cptk::parse_half_int(b_text);
        if (A.twice < 0 || B.twice < 0)
            throw std::invalid_argument("labels must be >= 0");
    } catch (const std::exception& e) {
        std::cerr << "error: bad representation label: " << e.what() << "\n";
        return kExitUsage;
    }
    cptk::Phase ps = cptk::Phase::one(), pc = cptk::Phase::one();
    if (!opts.phase_s.empty()) ps = *cptk::Phase::parse(opts.phase_s);
    if (!opts.phase_c.empty()) pc = *cptk::Phase::parse(opts.phase_c);

    cptk::RepBlock block(A, B, parity, charge);
    std::size_t dim = cptk::rep_dimension(block);
    auto gens = cptk::ab_generators(A, B);
    auto algebra = cptk::verify_lorentz_algebra(gens);
    cptk::CMatrix dt = cptk::discrete_matrix(cptk::DiscreteKind::T, block);
    // The block's extreme spin labels share the parity of A+B.
    cptk::RealityClass cls = cptk::reality_class(A + B);

    if (format_of(opts) == cptk::ReportFormat::Json) {
        std::cout << "{\n"
                  << "  \"block\": \"(" << cptk::to_string(A) << ","
                  << cptk::to_string(B) << ")\",\n"
                  << "  \"parity_doubled\": " << (block.parity_doubled ? "true" : "false")
                  << ",\n"
                  << "  \"charge_doubled\": " << (block.charge_doubled ? "true" : "false")
                  << ",\n"
                  << "  \"components\": " << dim << ",\n"
                  << "  \"algebra\": \"" << cptk::to_string(algebra.status)
                  << "\",\n"
                  << "  \"time_reversal_reality\": \"" << cptk::to_string(cls)
                  << "\"\n}\n";
    } else {
        std::cout << "block (" << cptk::to_string(A) << "," << cptk::to_string(B)
                  << ")";
        if (block.parity_doubled)
            std::cout << "+(" << cptk::to_string(B) << "," << cptk::to_string(A)
                      << ")";
        if (block.charge_doubled) std::cout << " charge-doubled";
        std::cout << "\ncomponents: " << dim << "\n";
        std::cout << "algebra relations: " << cptk::to_string(algebra.status)
                  << "\n";
        std::cout << "time-reversal reality: " << cptk::to_string(cls) << "\n";
        std::cout << "space inversion: "
                  << cptk::discrete_matrix(cptk::DiscreteKind::P, block, ps).str()
                  << "\n";
        std::cout << "charge conjugation: "
                  << cptk::discrete_matrix(cptk::DiscreteKind::C, block, pc).str()
                  << "\n";
        std::cout << "time reversal: " << dt.str() << "\n";
    }
    return algebra.passed() ? kExitPass : kExitCheckFailed;
}

int run_example(bool emit, const CommonOpts& opts) {
    const std::string& text = cptk::example_interacting_1_half();
    if (emit) {
        std::cout << text;
        return kExitPass;
    }
    cptk::ParseResult parsed = cptk::parse_spec(text);
    if (!parsed.document) {
        std::cerr << "internal error: bundled example does not parse\n";
        return kExitUsage;
    }
    return emit_and_exit(cptk::run_pipeline(*parsed.document), opts);
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_normal = true) {
    cmd->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
    if (with_normal)
        cmd->add_option("--normal", opts.normal,
                        "Surface normal axis for generators (t|x|y|z)");
    cmd->add_option("--phase-s", opts.phase_s,
                    "Space-inversion phase (1, i, -1, -i)");
    cmd->add_option("--phase-c", opts.phase_c,
                    "Charge-conjugation phase (1, i, -1, -i)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact structural verifier for declared field systems"};
    app.require_subcommand(1);

    CommonOpts check_opts, gen_opts, com_opts, reps_opts, ex_opts;
    std::string check_file, gen_file, com_file, rep_a, rep_b;
    bool reps_parity = false, reps_charge = false, example_emit = false;

    CLI::App* check = app.add_subcommand("check", "Run every check on a spec file");
    check->add_option("file", check_file, "Spec file")->required();
    add_common(check, check_opts);

    CLI::App* derive = app.add_subcommand("derive", "Derive one artifact");
    derive->require_subcommand(1);
    CLI::App* gens = derive->add_subcommand("generators",
                                            "Surface-integral generators");
    gens->add_option("file", gen_file, "Spec file")->required();
    add_common(gens, gen_opts);
    CLI::App* coms = derive->add_subcommand("commutators",
                                            "Equal-time bracket relations");
    coms->add_option("file", com_file, "Spec file")->required();
    add_common(coms, com_opts);

    CLI::App* reps = app.add_subcommand("reps", "Representation utilities");
    reps->require_subcommand(1);
    CLI::App* show = reps->add_subcommand("show", "Describe an (A,B) block");
    show->add_option("A", rep_a, "First label, e.g. 1/2")->required();
    show->add_option("B", rep_b, "Second label")->required();
    show->add_flag("--parity-doubled", reps_parity, "(A,B)+(B,A) doubling");
    show->add_flag("--charge-doubled", reps_charge, "Opposite-charge partner");
    add_common(show, reps_opts, false);

    CLI::App* example = app.add_subcommand("example", "Bundled example systems");
    CLI::App* ex1 = example->add_subcommand(
        "interacting-1-half", "Interacting spin-1 / spin-1/2 system");
    ex1->add_flag("--emit", example_emit, "Print the spec file instead of checking");
    add_common(ex1, ex_opts);
    example->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (check->parsed()) return run_check(check_file, check_opts);
        if (derive->parsed()) {
            if (gens->parsed()) return run_derive(gen_file, gen_opts, true);
            return run_derive(com_file, com_opts, false);
        }
        if (reps->parsed())
            return run_reps_show(rep_a, rep_b, reps_parity, reps_charge, reps_opts);
        if (example->parsed()) return run_example(example_emit, ex_opts);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
