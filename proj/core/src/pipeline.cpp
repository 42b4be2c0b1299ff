#include "cptk/pipeline.hpp"

#include <sstream>

#include <json.hpp>

#include "cptk/lagrangian.hpp"
#include "cptk/lorentz.hpp"

namespace cptk {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Indeterminate: return "indeterminate";
        case CheckStatus::Skipped: return "skipped";
        case CheckStatus::Error: return "error";
    }
    return "?";
}

bool Report::all_executed_passed() const {
    for (const auto& c : checks) {
        if (c.status == CheckStatus::Skipped) continue;
        if (c.status != CheckStatus::Pass) return false;
    }
    return artifact_errors.empty();
}

const CheckResult* Report::find(const std::string& id) const {
    for (const auto& c : checks)
        if (c.id == id) return &c;
    return nullptr;
}

namespace {

CheckStatus status_of(const Verdict& v) {
    switch (v.status) {
        case VerdictStatus::Pass: return CheckStatus::Pass;
        case VerdictStatus::Fail: return CheckStatus::Fail;
        case VerdictStatus::Indeterminate: return CheckStatus::Indeterminate;
    }
    return CheckStatus::Error;
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

class PipelineRun {
  public:
    explicit PipelineRun(const SpecDocument& doc) : doc_(doc) {}

    Report run() {
        try {
            inst_ = instantiate(doc_);
        } catch (const std::exception& e) {
            for (const char* id :
                 {"antihermiticity", "part-decomposition", "t-reality",
                  "statistics", "u-transform-p", "u-transform-c",
                  "u-transform-t", "u-transform-pt", "spin-statistics",
                  "lagrangian-form", "hermiticity", "gauge", "cpt"})
                skip(id, std::string("instantiation failed: ") + e.what());
            report_.artifact_errors.push_back(e.what());
            return std::move(report_);
        }
        run_u_checks();
        run_statistics();
        run_u_transforms();
        run_spin_statistics();
        run_lagrangian_checks();
        derive_artifacts();
        return std::move(report_);
    }

  private:
    void add(const std::string& id, const Verdict& v) {
        report_.checks.push_back({id, status_of(v), v.witnesses, ""});
    }
    void skip(const std::string& id, const std::string& reason) {
        report_.checks.push_back({id, CheckStatus::Skipped, {}, reason});
    }
    void error(const std::string& id, const std::string& what) {
        report_.checks.push_back({id, CheckStatus::Error, {}, what});
    }

    void run_u_checks() {
        const auto& sys = inst_->system;
        const auto& u = inst_->u;
        // Antihermiticity and the reality classes of the split parts are
        // reported separately.
        Verdict anti = Verdict::pass();
        Verdict parts = Verdict::pass();
        try {
            for (int m = 0; m < 4; ++m) {
                const CMatrix& um = u.mu[m];
                if (um.rows() != sys.total_components())
                    throw std::invalid_argument("U dimension mismatch");
                std::string label = "U^" + std::to_string(m);
                if (!um.is_antihermitian())
                    anti.absorb(Verdict::fail(label, "dagger(U) == -U",
                                              um.str()));
                auto [us, ua] = decompose_u(um);
                if (!(us + ua == um))
                    parts.absorb(Verdict::fail(label, "U_S + U_A == U",
                                               "decomposition broke"));
                if (!us.is_imaginary())
                    parts.absorb(Verdict::fail(label + "_S", "imaginary entries",
                                               us.str()));
                if (!ua.is_real())
                    parts.absorb(Verdict::fail(label + "_A", "real entries",
                                               ua.str()));
            }
            u_valid_ = !anti.failed() && !parts.failed();
            add("antihermiticity", anti);
            add("part-decomposition", parts);
        } catch (const std::exception& e) {
            u_valid_ = false;
            error("antihermiticity", e.what());
            error("part-decomposition", e.what());
        }

        Verdict reality = Verdict::pass();
        for (const auto& f : inst_->system.fields()) {
            CMatrix d = field_transform(f, DiscreteKind::T);
            reality.absorb(verify_t_reality(d, f.spin));
        }
        add("t-reality", reality);
    }

    void run_statistics() {
        stats_result_ = infer_statistics(inst_->system, inst_->u);
        add("statistics", stats_result_->verdict);
    }

    void run_u_transforms() {
        if (!u_valid_) {
            for (const char* id : {"u-transform-p", "u-transform-c",
                                   "u-transform-t", "u-transform-pt"})
                skip(id, "coupling matrices failed validation");
            return;
        }
        const auto& sys = inst_->system;
        const auto& stats = stats_result_->assignment;
        try {
            CMatrix dp = system_transform(sys, DiscreteKind::P, inst_->phase_s,
                                          inst_->phase_c);
            CMatrix dc = system_transform(sys, DiscreteKind::C, inst_->phase_s,
                                          inst_->phase_c);
            CMatrix dt = system_transform(sys, DiscreteKind::T, inst_->phase_s,
                                          inst_->phase_c);
            add("u-transform-p",
                check_u_transform(TransformKind::P, dp, inst_->u, sys, stats));
            add("u-transform-c",
                check_u_transform(TransformKind::C, dc, inst_->u, sys, stats));
            add("u-transform-t",
                check_u_transform(TransformKind::T, dt, inst_->u, sys, stats));
            add("u-transform-pt", check_u_transform(TransformKind::PT, dp * dt,
                                                    inst_->u, sys, stats));
        } catch (const std::exception& e) {
            for (const char* id : {"u-transform-p", "u-transform-c",
                                   "u-transform-t", "u-transform-pt"})
                if (!report_.find(id)) error(id, e.what());
        }
    }

    void run_spin_statistics() {
        add("spin-statistics",
            spin_statistics_verdict(inst_->system, stats_result_->assignment));
    }

    void run_lagrangian_checks() {
        const auto& sys = inst_->system;
        const auto& stats = stats_result_->assignment;
        const Lagrangian& lag = inst_->lagrangian;

        Verdict form = check_term_form(lag, sys);
        add("lagrangian-form", form);

        bool gradings_known = stats.all_resolved() || sys_declared_everywhere();
        if (!gradings_known) {
            skip("hermiticity", "statistics unresolved; gradings unknown");
        } else {
            add("hermiticity", check_hermiticity(lag, sys, stats));
        }
        add("gauge", check_gauge(lag, sys));

        if (form.failed()) {
            skip("cpt", "ill-formed polynomial term rejected at construction");
        } else if (!gradings_known) {
            skip("cpt", "statistics unresolved; gradings unknown");
        } else if (!u_valid_) {
            skip("cpt", "coupling matrices failed validation");
        } else {
            try {
                add("cpt", cpt_verdict(lag, sys, inst_->u, stats, inst_->phase_s,
                                       inst_->phase_c));
            } catch (const std::exception& e) {
                error("cpt", e.what());
            }
        }
    }

    bool sys_declared_everywhere() const {
        for (const auto& f : inst_->system.fields())
            if (f.statistics == Statistics::Unknown) return false;
        return true;
    }

    void derive_artifacts() {
        const auto& sys = inst_->system;
        SurfaceNormal n = SurfaceNormal::axis(axis_of(inst_->normal));
        try {
            report_.generators = derive_generator(sys, inst_->u, n);
            report_.partition = classify_fundamental(sys, inst_->u, n);
            std::istringstream gs(
                render_generator(report_.generators->field_variation, sys) +
                render_generator(report_.generators->momentum_variation, sys) +
                render_generator(report_.generators->symmetric, sys));
            for (std::string line; std::getline(gs, line);)
                report_.generator_lines.push_back(line);
            std::istringstream ps(render_partition(*report_.partition, sys));
            for (std::string line; std::getline(ps, line);)
                report_.partition_lines.push_back(line);
        } catch (const std::exception& e) {
            report_.artifact_errors.push_back(std::string("generator: ") +
                                              e.what());
        }
        try {
            report_.brackets =
                derive_commutators(sys, inst_->u, stats_result_->assignment);
            for (const auto& b : report_.brackets) {
                std::istringstream bs(render_bracket(b, sys));
                for (std::string line; std::getline(bs, line);)
                    report_.bracket_lines.push_back(line);
            }
        } catch (const std::exception& e) {
            report_.artifact_errors.push_back(
                std::string("commutation relations: ") + e.what());
        }
    }

    const SpecDocument& doc_;
    std::optional<Instantiated> inst_;
    std::optional<StatisticsResult> stats_result_;
    bool u_valid_{false};
    Report report_;
};

} // namespace

Report run_pipeline(const SpecDocument& doc) { return PipelineRun(doc).run(); }

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json witnesses_json(const std::vector<Witness>& ws) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : ws) {
        ordered_json o;
        o["location"] = w.location;
        o["expected"] = w.expected;
        o["found"] = w.found;
        arr.push_back(std::move(o));
    }
    return arr;
}

} // namespace

std::string emit_report(const Report& r, ReportFormat format, bool color) {
    if (format == ReportFormat::Json) {
        ordered_json root;
        root["tool"] = "cpt-kernel";
        root["checks"] = ordered_json::array();
        for (const auto& c : r.checks) {
            ordered_json o;
            o["id"] = c.id;
            o["status"] = to_string(c.status);
            o["witnesses"] = witnesses_json(c.witnesses);
            if (!c.note.empty()) o["note"] = c.note;
            root["checks"].push_back(std::move(o));
        }
        ordered_json artifacts;
        artifacts["generator"] = r.generator_lines;
        artifacts["fundamental-partition"] = r.partition_lines;
        artifacts["commutation-relations"] = r.bracket_lines;
        artifacts["errors"] = r.artifact_errors;
        root["artifacts"] = std::move(artifacts);
        root["all-passed"] = r.all_executed_passed();
        return root.dump(2) + "\n";
    }

    const char* kReset = color ? "\033[0m" : "";
    auto paint = [&](CheckStatus s) -> const char* {
        if (!color) return "";
        switch (s) {
            case CheckStatus::Pass: return "\033[32m";
            case CheckStatus::Fail: return "\033[31m";
            case CheckStatus::Error: return "\033[31m";
            case CheckStatus::Indeterminate: return "\033[33m";
            case CheckStatus::Skipped: return "\033[90m";
        }
        return "";
    };

    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << paint(c.status) << "[" << to_string(c.status) << "]" << kReset
           << " " << c.id;
        if (!c.note.empty()) os << " (" << c.note << ")";
        os << "\n";
        for (const auto& w : c.witnesses) {
            os << "    at " << w.location << "\n";
            os << "      expected: " << w.expected << "\n";
            os << "      found:    " << w.found << "\n";
        }
    }
    if (!r.generator_lines.empty()) {
        os << "\n-- generators --\n";
        for (const auto& l : r.generator_lines) os << l << "\n";
    }
    if (!r.partition_lines.empty()) {
        os << "\n-- fundamental partition --\n";
        for (const auto& l : r.partition_lines) os << l << "\n";
    }
    if (!r.bracket_lines.empty()) {
        os << "\n-- commutation relations --\n";
        for (const auto& l : r.bracket_lines) os << l << "\n";
    }
    for (const auto& e : r.artifact_errors) os << "error: " << e << "\n";
    os << (r.all_executed_passed() ? "RESULT: all executed checks pass"
                                   : "RESULT: failures present")
       << "\n";
    return os.str();
}

} // namespace cptk
