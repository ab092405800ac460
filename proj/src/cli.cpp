#include "poisenv/cli.hpp"

#include "poisenv/criteria.hpp"
#include "poisenv/errors.hpp"
#include "poisenv/presentation_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

namespace poisenv {

namespace {

struct Options {
    std::string file;
    std::vector<std::string> exprs;
    std::string criterion;
    bool json = false;
    bool assume_prime = false;
    bool assume_cm = false;
    std::optional<int> assume_serre;
    bool lazy = false;
    std::optional<std::uint32_t> max_degree;
};

struct ValidationFailed {
    std::string message;
};

std::shared_ptr<const PoissonAlgebra> load(const Options& opt) {
    PoissonPresentation p = load_presentation(opt.file);
    if (opt.assume_prime) p.flags().prime_ideal = true;
    if (opt.assume_cm) p.flags().cohen_macaulay = true;
    if (opt.assume_serre) p.flags().serre_s_m = *opt.assume_serre;
    GroebnerLimits limits;
    if (opt.max_degree) limits.max_degree = *opt.max_degree;
    return std::make_shared<const PoissonAlgebra>(std::move(p), limits);
}

std::string describe(const PoissonAlgebra& alg, const ValidationReport& rep) {
    std::ostringstream os;
    const auto& names = alg.presentation().vars();
    for (const auto& f : rep.jacobi_failures)
        os << "Jacobi identity fails for (" << names[f.i] << ", " << names[f.j] << ", " << names[f.k]
           << "): residue " << f.residue << "\n";
    for (const auto& f : rep.closure_failures)
        os << "relation " << alg.presentation().relations()[f.relation] << " is not a Poisson relation: {"
           << names[f.var] << ", f} = " << f.residue << " is not in the ideal\n";
    return os.str();
}

void require_valid(const PoissonAlgebra& alg) {
    ValidationReport rep = alg.validate();
    if (!rep.ok()) throw ValidationFailed{describe(alg, rep)};
}

void need_exprs(const Options& opt, std::size_t count, const char* what) {
    if (opt.exprs.size() != count)
        throw CLI::ValidationError(std::string(what) + " takes exactly " + std::to_string(count) +
                                   " -e expressions");
}

int cmd_validate(const Options& opt, std::ostream& out) {
    auto alg = load(opt);
    ValidationReport rep = alg->validate();
    if (!rep.ok()) throw ValidationFailed{describe(*alg, rep)};
    out << "ok\n";
    return exit_ok;
}

int cmd_analyze(const Options& opt, std::ostream& out) {
    auto alg = load(opt);
    require_valid(*alg);
    Analyzer an(alg, opt.lazy ? RewriteMode::lazy : RewriteMode::eager);
    AnalysisReport rep = an.report();
    out << (opt.json ? report_to_json(rep) + "\n" : report_to_text(rep));
    return exit_ok;
}

int cmd_check(const Options& opt, std::ostream& out) {
    auto alg = load(opt);
    require_valid(*alg);
    Analyzer an(alg, opt.lazy ? RewriteMode::lazy : RewriteMode::eager);
    Verdict v = an.criterion(opt.criterion);
    if (opt.json) {
        nlohmann::ordered_json j;
        j["criterion"] = opt.criterion;
        j["value"] = to_string(v.value);
        j["reason"] = v.reason;
        j["assumptions"] = v.assumptions;
        out << j.dump(2) << "\n";
    } else {
        out << to_string(v.value) << "\n";
    }
    return exit_ok;
}

int cmd_gk(const Options& opt, std::ostream& out) {
    auto alg = load(opt);
    require_valid(*alg);
    Analyzer an(alg);
    GkReport gk = an.gk();
    auto value = [](const std::optional<int>& v) -> nlohmann::ordered_json {
        if (v) return *v;
        return "unknown";
    };
    if (opt.json) {
        nlohmann::ordered_json j;
        j["gk_A"] = value(gk.gk_A);
        j["gk_U"] = value(gk.gk_U);
        j["gk_PD"] = value(gk.gk_PD);
        out << j.dump(2) << "\n";
    } else {
        auto text = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("unknown"); };
        out << "gk_A = " << text(gk.gk_A) << "\n"
            << "gk_U = " << text(gk.gk_U) << "\n"
            << "gk_PD = " << text(gk.gk_PD) << "\n";
    }
    return exit_ok;
}

int cmd_bracket(const Options& opt, std::ostream& out) {
    need_exprs(opt, 2, "bracket");
    auto alg = load(opt);
    require_valid(*alg);
    const auto& p = alg->presentation();
    out << alg->bracket(p.parse(opt.exprs[0]), p.parse(opt.exprs[1])) << "\n";
    return exit_ok;
}

int cmd_pea_mul(const Options& opt, std::ostream& out) {
    if (opt.exprs.empty()) throw CLI::ValidationError("pea-mul needs at least one -e expression");
    auto alg = load(opt);
    require_valid(*alg);
    EnvelopingAlgebra u(alg, opt.lazy ? RewriteMode::lazy : RewriteMode::eager);
    PEAElement acc = u.one();
    for (const auto& e : opt.exprs) acc = u.multiply(acc, u.parse(e));
    out << acc << "\n";
    return exit_ok;
}

int cmd_pea_act(const Options& opt, std::ostream& out) {
    need_exprs(opt, 2, "pea-act");
    auto alg = load(opt);
    require_valid(*alg);
    EnvelopingAlgebra u(alg, opt.lazy ? RewriteMode::lazy : RewriteMode::eager);
    out << u.act_on(u.parse(opt.exprs[0]), alg->presentation().parse(opt.exprs[1])) << "\n";
    return exit_ok;
}

int cmd_pea_zero(const Options& opt, std::ostream& out) {
    need_exprs(opt, 1, "pea-zero");
    auto alg = load(opt);
    require_valid(*alg);
    EnvelopingAlgebra u(alg, opt.lazy ? RewriteMode::lazy : RewriteMode::eager);
    out << (u.is_zero(u.parse(opt.exprs[0])) ? "true" : "false") << "\n";
    return exit_ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Poisson enveloping algebra toolkit", "poisenv"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "presentation file (JSON)")->required();
        sub->add_flag("--json", opt.json, "print JSON");
        sub->add_flag("--assume-prime", opt.assume_prime, "treat the relation ideal as prime");
        sub->add_flag("--assume-cohen-macaulay", opt.assume_cm, "treat A as Cohen-Macaulay");
        sub->add_option("--assume-serre", opt.assume_serre, "treat A as satisfying Serre's condition S_m")
            ->check(CLI::NonNegativeNumber);
        sub->add_flag("--lazy-rewrite", opt.lazy, "reduce PEA coefficients once per product");
        sub->add_option("--max-degree", opt.max_degree, "degree cap for Groebner basis computations")
            ->check(CLI::PositiveNumber);
    };
    auto add_exprs = [&](CLI::App* sub) { sub->add_option("-e,--expr", opt.exprs, "expression")->required(); };

    CLI::App* validate = app.add_subcommand("validate", "check the Jacobi identity and Poisson closure");
    CLI::App* analyze = app.add_subcommand("analyze", "print the full analysis report");
    CLI::App* bracket = app.add_subcommand("bracket", "Poisson bracket of two polynomials");
    CLI::App* pea_mul = app.add_subcommand("pea-mul", "normal-ordered product in U(P)");
    CLI::App* pea_act = app.add_subcommand("pea-act", "apply an element of U(P) to a polynomial");
    CLI::App* pea_zero = app.add_subcommand("pea-zero", "decide whether an element of U(P) is zero");
    CLI::App* check = app.add_subcommand("check", "evaluate one criterion");
    CLI::App* gk = app.add_subcommand("gk", "Gelfand-Kirillov dimensions");
    for (CLI::App* sub : {validate, analyze, bracket, pea_mul, pea_act, pea_zero, check, gk}) add_common(sub);
    for (CLI::App* sub : {bracket, pea_mul, pea_act, pea_zero}) add_exprs(sub);
    check->add_option("--criterion", opt.criterion, "criterion name")
        ->required()
        ->check(CLI::IsMember(Analyzer::criterion_names()));

    std::vector<const char*> argv{"poisenv"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (validate->parsed()) return cmd_validate(opt, out);
        if (analyze->parsed()) return cmd_analyze(opt, out);
        if (bracket->parsed()) return cmd_bracket(opt, out);
        if (pea_mul->parsed()) return cmd_pea_mul(opt, out);
        if (pea_act->parsed()) return cmd_pea_act(opt, out);
        if (pea_zero->parsed()) return cmd_pea_zero(opt, out);
        if (check->parsed()) return cmd_check(opt, out);
        if (gk->parsed()) return cmd_gk(opt, out);
    } catch (const ValidationFailed& v) {
        err << v.message;
        return exit_validation;
    } catch (const CapacityError& e) {
        err << "capacity exceeded: " << e.what() << "\n";
        return exit_capacity;
    } catch (const DescentError& e) {
        err << "internal invariant violated: " << e.what() << "\n";
        return exit_validation;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}

}  // namespace poisenv
