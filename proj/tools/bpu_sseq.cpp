// bpu-sseq: compute the U, T, K spectral sequences and run the verifications.
//
// exit status: 0 success, 1 a FAIL or an unresolved differential, 2 invalid input.

#include "bpu/bpu.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

using namespace bpu;

struct RunConfig {
    long p = 0;
    int n = 0;
    std::optional<int> t_max;
    std::string format = "text";
    bool no_vistoli = false;
    std::string sequence = "U";
    std::vector<int> t;
};

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Sequence parse_sequence(const std::string& s) {
    if (s == "U") return Sequence::U;
    if (s == "T") return Sequence::T;
    if (s == "K") return Sequence::K;
    throw InvalidInput("sequence must be U, T or K");
}

EngineOptions engine_options(const RunConfig& cfg) {
    EngineOptions o;
    o.use_vistoli = !cfg.no_vistoli;
    return o;
}

int emit(const RunConfig& cfg, const Document& doc, const std::string& text, bool ok) {
    if (cfg.format == "json")
        std::cout << to_json(doc).dump() << "\n";
    else
        std::cout << text;
    return ok ? 0 : 1;
}

bool all_pass(const std::vector<Check>& checks) {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

Document bare_document(const RunConfig& cfg, int window, std::vector<Check> checks) {
    Document doc;
    doc.p = cfg.p;
    doc.n = cfg.n;
    doc.window = window;
    doc.verifications = std::move(checks);
    return doc;
}

int run_compute(const RunConfig& cfg, bool chart) {
    Context ctx(parse_sequence(cfg.sequence), cfg.p, cfg.n, cfg.t_max);
    auto ss = compute(ctx, engine_options(cfg));
    auto rep = assemble_report(ss);
    auto checks = self_checks(ss);
    bool ok = all_pass(checks) && std::none_of(rep.degrees.begin(), rep.degrees.end(),
                                               [](const DegreeReport& d) { return d.status == DegreeStatus::Unresolved; });
    std::string text;
    text += std::string("sequence ") + sequence_name(ctx.sequence) + ", p = " + std::to_string(cfg.p) + ", n = " +
            std::to_string(cfg.n) + ", t_max = " + std::to_string(ctx.t_max) + "\n\n";
    if (chart) {
        for (const auto& pg : ss.pages) {
            text += render_grid(pg, ctx);
            if (pg.r != kInfinitePage) text += render_arrows(ss, pg.r);
            text += "\n";
        }
    } else {
        text += render_grid(ss.einf(), ctx) + "\nnonzero E_inf entries\n" + render_entries(ss.einf(), ctx);
        text += "\ndifferentials\n" + render_arrows(ss) + "\n" + render_cohomology(rep) + "\nself-checks\n" + render_checks(checks);
    }
    return emit(cfg, make_document(ss, &rep, checks, true), text, ok);
}

int run_cbar(const RunConfig& cfg) {
    Prime p(cfg.p);
    std::vector<int> ts = cfg.t;
    if (ts.empty()) ts = {static_cast<int>(cfg.p + 1), static_cast<int>(cfg.p + 2)};
    std::vector<Check> checks;
    for (int t : ts) {
        if (t < 1) throw InvalidInput("t must be positive");
        auto rep = verify_lemma_cbar(t, p, cfg.n);
        for (auto c : rep.checks) {
            c.name = "cbar_t" + std::to_string(t) + "_" + c.name;
            checks.push_back(std::move(c));
        }
    }
    std::string text = "bar basis, p = " + std::to_string(cfg.p) + ", n = " + std::to_string(cfg.n) + "\n" + render_checks(checks);
    return emit(cfg, bare_document(cfg, static_cast<int>(2 * cfg.p + 8), checks), text, all_pass(checks));
}

int run_report(const RunConfig& cfg, const VerificationReport& rep) {
    std::string text = rep.name + ", p = " + std::to_string(cfg.p) + ", n = " + std::to_string(cfg.n) + "\n" + render_checks(rep.checks);
    return emit(cfg, bare_document(cfg, static_cast<int>(2 * cfg.p + 8), rep.checks), text, rep.pass());
}

int run_witnesses(const RunConfig& cfg) {
    Prime p(cfg.p);
    try {
        return run_report(cfg, verify_lemma_witnesses(p, cfg.n));
    } catch (const NonUnitDenominator& e) {
        VerificationReport rep;
        rep.name = "lemma_witnesses";
        rep.add("denominators_are_units", false, e.what());
        return run_report(cfg, rep);
    }
}

int run_theorem(const RunConfig& cfg) {
    Prime p(cfg.p);
    Context(Sequence::U, cfg.p, cfg.n, cfg.t_max); // validates the window
    auto rep = verify_theorem(p, cfg.n, engine_options(cfg));
    std::string text = render_cohomology(rep.cohomology) + "\n" + render_checks(rep.checks);
    Document doc = bare_document(cfg, rep.cohomology.window, rep.checks);
    doc.cohomology = &rep.cohomology;
    return emit(cfg, doc, text, rep.pass());
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-local Serre spectral sequences over K(Z,3)"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "odd prime")->required();
        sub->add_option("--n", cfg.n, "rank n >= 1")->required();
        sub->add_option("--t-max", cfg.t_max, "even fiber-degree bound, at most 2p+8");
        sub->add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--no-vistoli", cfg.no_vistoli, "do not use the declared axiom at degree 2p+5");
    };

    auto* c_compute = app.add_subcommand("compute", "run a sequence to E_inf and report cohomology");
    auto* c_chart = app.add_subcommand("chart", "ASCII chart of every page");
    auto* c_cbar = app.add_subcommand("verify-lemma-cbar", "bar basis triangularity");
    auto* c_wit = app.add_subcommand("verify-witnesses", "d3 of the witness elements X1, X2, X3");
    auto* c_props = app.add_subcommand("verify-props", "E_inf vanishing and transport identities");
    auto* c_thm = app.add_subcommand("verify-theorem", "p-primary table against the expected one");
    for (auto* sub : {c_compute, c_chart, c_cbar, c_wit, c_props, c_thm}) add_common(sub);
    for (auto* sub : {c_compute, c_chart}) sub->add_option("--sequence", cfg.sequence, "U, T or K")->check(CLI::IsMember({"U", "T", "K"}));
    c_cbar->add_option("--t", cfg.t, "half-degrees (default p+1 and p+2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        Prime check(cfg.p);
        if (cfg.n < 1) throw InvalidInput("n must be a positive integer");
        if (c_compute->parsed()) return run_compute(cfg, false);
        if (c_chart->parsed()) return run_compute(cfg, true);
        if (c_cbar->parsed()) return run_cbar(cfg);
        if (c_wit->parsed()) return run_witnesses(cfg);
        if (c_props->parsed()) return run_report(cfg, verify_prop_vanishing(Prime(cfg.p), cfg.n));
        if (c_thm->parsed()) return run_theorem(cfg);
    } catch (const InvalidPrime& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidWindow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedPage& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnresolvedDifferential& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
