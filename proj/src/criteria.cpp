#include "poisenv/criteria.hpp"

#include "poisenv/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <future>
#include <sstream>

namespace poisenv {

std::string to_string(Truth t) {
    switch (t) {
        case Truth::yes: return "true";
        case Truth::no: return "false";
        case Truth::unknown: return "unknown";
    }
    return "unknown";
}

namespace {

Verdict make(Truth value, std::string reason, std::vector<std::string> assumptions = {}) {
    return Verdict{value, std::move(reason), std::move(assumptions)};
}

Truth truth(bool b) { return b ? Truth::yes : Truth::no; }

Verdict missing_prime(const std::string& what) {
    return make(Truth::unknown, what + " needs the prime_ideal flag (A must be a domain)");
}

}  // namespace

Analyzer::Analyzer(std::shared_ptr<const PoissonAlgebra> algebra, RewriteMode mode)
    : algebra_(std::move(algebra)), structure_(algebra_), enveloping_(algebra_, mode) {}

Analyzer::Analyzer(const PoissonPresentation& p, RewriteMode mode)
    : Analyzer(std::make_shared<const PoissonAlgebra>(p), mode) {}

bool Analyzer::regular_computed() const {
    std::call_once(regular_once_, [&] { regular_ = structure_.is_regular(); });
    return regular_;
}

// ---------------------------------------------------------------- verdicts

Verdict Analyzer::regular() const {
    if (!prime()) return missing_prime("Jacobian criterion of regularity");
    bool reg = regular_computed();
    return make(truth(reg),
                reg ? "Jacobian criterion: the maximal Jacobian minors generate A"
                    : "Jacobian criterion: the maximal Jacobian minors generate a proper ideal of A",
                {"prime_ideal"});
}

SymplecticPaths Analyzer::symplectic_paths() const {
    std::size_t n = algebra_->num_vars();
    std::size_t r = structure_.jacobian_rank().r;
    std::size_t d = structure_.structure_rank().d;
    SymplecticPaths out;
    out.minor_ideal = d == n - r && contains_one(structure_.minor_ideal(d), algebra_->limits());
    Ideal top = structure_.minor_ideal(n - r);
    out.radical = true;
    for (const auto& m : structure_.jacobian_rank().minors)
        if (!radical_membership(m.value, top, algebra_->limits())) {
            out.radical = false;
            break;
        }
    return out;
}

Verdict Analyzer::symplectic() const {
    if (!prime()) return missing_prime("symplecticity criterion");
    if (!regular_computed())
        return make(Truth::unknown, "symplecticity criterion needs a regular domain; the Jacobian ideal is proper",
                    {"prime_ideal"});
    std::size_t n = algebra_->num_vars();
    std::size_t r = structure_.jacobian_rank().r;
    std::size_t d = structure_.structure_rank().d;
    SymplecticPaths paths = symplectic_paths();
    std::ostringstream why;
    if (d != n - r)
        why << "structure rank d = " << d << " differs from n - r = " << n - r;
    else if (paths.minor_ideal)
        why << "d = n - r = " << d << " and the " << d << " x " << d << " structure minors generate A";
    else
        why << "d = n - r = " << d << " but the " << d << " x " << d << " structure minors generate a proper ideal";
    why << (paths.agree() ? "; radical test agrees" : "; radical test DISAGREES");
    return make(truth(paths.minor_ideal), why.str(), {"prime_ideal"});
}

Verdict Analyzer::u_domain() const {
    if (!prime()) return missing_prime("domain criterion for U(A)");
    if (regular_computed()) return make(Truth::yes, "A is a regular domain, so U(A) is a Noetherian domain", {"prime_ideal"});

    const auto& pres = algebra_->presentation();
    const auto& flags = pres.flags();
    std::size_t m = pres.num_relations();
    bool serre = flags.cohen_macaulay || (flags.serre_s_m && *flags.serre_s_m >= static_cast<int>(m));
    if (!serre)
        return make(Truth::unknown,
                    "A is not regular; the height test needs the cohen_macaulay flag or serre_s_m >= m",
                    {"prime_ideal"});

    std::vector<std::string> assumptions{"prime_ideal", flags.cohen_macaulay ? "cohen_macaulay" : "serre_s_m"};
    std::size_t n = algebra_->num_vars();
    Ideal ambient = pres.relation_ideal();
    std::ostringstream why;
    bool ok = true;
    for (std::size_t t = 1; t <= m; ++t) {
        std::vector<Polynomial> gens;
        if (t <= n)
            for (const auto& rows : combinations(m, t))
                for (const auto& cols : combinations(n, t)) gens.push_back(structure_.jacobian_minor(rows, cols));
        HeightResult h = ideal_height(Ideal(algebra_->ring(), std::move(gens)), ambient, algebra_->limits());
        int need = static_cast<int>(m) + 2 - static_cast<int>(t);
        if (t > 1) why << ", ";
        if (h.unit_ideal) {
            why << "a_" << t << " = A";
            continue;
        }
        why << "height(a_" << t << ") = " << h.height << " (need " << need << ")";
        if (h.height < need) ok = false;
    }
    return make(truth(ok), "height test with grade = height under the Cohen-Macaulay flag: " + why.str(),
                std::move(assumptions));
}

std::vector<FailingPairing> Analyzer::failing_pairings() const {
    std::size_t n = algebra_->num_vars();
    const auto& srank = structure_.structure_rank();
    std::vector<FailingPairing> out;
    auto gens = structure_.derivation_generators();
    for (const auto& rows : srank.tuples)
        for (const auto& cols : srank.tuples)
            for (std::size_t extra = 0; extra < n; ++extra) {
                if (std::find(cols.begin(), cols.end(), extra) != cols.end()) continue;
                OmegaElement dual = structure_.dual_kappa_element(rows, cols, extra);
                for (const auto& g : gens) {
                    Polynomial v = structure_.pairing(g.derivation, dual);
                    if (!v.is_zero()) out.push_back(FailingPairing{g.rows, g.cols, rows, cols, extra, v});
                }
            }
    return out;
}

bool Analyzer::kappa_in_relation_module() const {
    const GroebnerBasis& basis = enveloping_.graded_basis();
    for (const auto& k : structure_.kappa_generators()) {
        GradedElement s = enveloping_.symbol(enveloping_.from_omega(k.omega), 1);
        if (!basis.contains(s.poly)) return false;
    }
    return true;
}

Verdict Analyzer::kernel_zero() const {
    if (!prime()) return missing_prime("kernel criterion for U(A) -> PD(A)");
    std::size_t n = algebra_->num_vars();
    std::size_t r = structure_.jacobian_rank().r;
    std::size_t d = structure_.structure_rank().d;

    auto kappa_vanishes = [&] {
        for (const auto& k : structure_.kappa_generators())
            if (!enveloping_.is_zero(enveloping_.from_omega(k.omega))) return false;
        return true;
    };

    if (regular_computed()) {
        std::vector<std::string> assumptions{"prime_ideal"};
        if (d != n - r)
            return make(Truth::no,
                        "structure rank d = " + std::to_string(d) + " differs from n - r = " + std::to_string(n - r),
                        assumptions);
        std::size_t failing = failing_pairings().size();
        bool pairings_ok = failing == 0;
        bool cross = kappa_vanishes() == pairings_ok;
        std::string why = pairings_ok ? "d = n - r and every derivation generator pairs to zero with every dual kappa element"
                                      : std::to_string(failing) + " derivation/kappa pairings are nonzero in A";
        why += cross ? "; kappa-vanishing test agrees" : "; kappa-vanishing test DISAGREES";
        return make(truth(pairings_ok), why, assumptions);
    }

    Verdict dom = u_domain();
    std::vector<std::string> assumptions = dom.assumptions;
    if (dom.is_unknown()) return make(Truth::unknown, "A is not regular and U(A) being a domain is undecided: " + dom.reason, assumptions);
    if (dom.is_false()) return make(Truth::no, "U(A) is not a domain, so its kernel to PD(A) is nonzero", assumptions);
    bool vanish = kappa_vanishes();
    return make(truth(vanish),
                vanish ? "A is not regular; U(A) is a domain and every kappa generator is zero in U(A)"
                       : "A is not regular; some kappa generator is nonzero in U(A)",
                assumptions);
}

Verdict Analyzer::u_equals_d() const {
    if (!prime()) return missing_prime("criterion U(A) = D(A)");
    if (!regular_computed())
        return make(Truth::unknown, "criterion U(A) = D(A) needs a regular domain; the Jacobian ideal is proper",
                    {"prime_ideal"});
    std::size_t d = structure_.structure_rank().d;
    bool kappa = kappa_in_relation_module();
    bool unit = contains_one(structure_.minor_ideal(d), algebra_->limits());
    std::string why;
    if (!kappa) why = "some kappa generator is outside the submodule generated by the relation gradients";
    else if (!unit) why = "the " + std::to_string(d) + " x " + std::to_string(d) + " structure minors generate a proper ideal";
    else why = "kappa generators lie in the relation-gradient submodule and the structure minors generate A";
    return make(truth(kappa && unit), why, {"prime_ideal"});
}

Verdict Analyzer::pea_commutative() const {
    bool trivial = algebra_->bracket_trivial();
    std::size_t n = algebra_->num_vars();
    bool all_commute = true;
    for (std::size_t i = 0; i < n && all_commute; ++i)
        for (std::size_t j = 0; j < n && all_commute; ++j) {
            if (!enveloping_.is_zero(enveloping_.commutator(enveloping_.delta(i), enveloping_.x(j))))
                all_commute = false;
            else if (j > i && !enveloping_.is_zero(enveloping_.commutator(enveloping_.delta(i), enveloping_.delta(j))))
                all_commute = false;
        }
    std::string why = trivial ? "every structure constant lies in I" : "some structure constant is nonzero in A";
    why += all_commute == trivial ? "; generator commutators agree" : "; generator commutators DISAGREE";
    return make(truth(trivial), why);
}

Verdict Analyzer::poisson_simple_necessary() const {
    const auto& limits = algebra_->limits();
    if (algebra_->bracket_trivial()) {
        if (algebra_->relation_basis().is_unit()) return make(Truth::no, "A is the zero ring");
        int dim = dimension_from_basis(algebra_->relation_basis());
        if (dim >= 1)
            return make(Truth::no, "the bracket is trivial and A is not a field, so every ideal is a Poisson ideal");
        return make(Truth::unknown, "the bracket is trivial and A has dimension 0; Poisson simplicity means A is a field");
    }
    if (!contains_one(structure_.minor_ideal(1), limits))
        return make(Truth::no, "the structure constants generate a proper nonzero Poisson ideal");
    return make(Truth::unknown, "screen passed; Poisson simplicity is not decided");
}

Verdict Analyzer::u_simple() const {
    Verdict screen = poisson_simple_necessary();
    if (screen.is_false()) return make(Truth::no, "A is not Poisson simple: " + screen.reason);
    Verdict kernel = kernel_zero();
    std::vector<std::string> assumptions = kernel.assumptions;
    if (kernel.is_false()) return make(Truth::no, "kernel to PD(A) is nonzero", assumptions);
    if (kernel.is_unknown()) return make(Truth::unknown, "kernel criterion undecided: " + kernel.reason, assumptions);
    if (!algebra_->presentation().flags().poisson_simple)
        return make(Truth::unknown, "kernel is zero; simplicity of U(A) needs the poisson_simple assertion", assumptions);
    assumptions.push_back("poisson_simple");
    return make(Truth::yes, "A asserted Poisson simple and the kernel to PD(A) is zero", assumptions);
}

GkReport Analyzer::gk() const {
    if (!prime()) return {};
    int n = static_cast<int>(algebra_->num_vars());
    int r = static_cast<int>(structure_.jacobian_rank().r);
    int d = static_cast<int>(structure_.structure_rank().d);
    return GkReport{n - r, 2 * (n - r), n - r + d};
}

const std::vector<std::string>& Analyzer::criterion_names() {
    static const std::vector<std::string> names{"regular",         "symplectic",      "u_domain",
                                                "kernel_zero",     "u_equals_d",      "pea_commutative",
                                                "poisson_simple_necessary", "u_simple"};
    return names;
}

Verdict Analyzer::criterion(const std::string& name) const {
    if (name == "regular") return regular();
    if (name == "symplectic") return symplectic();
    if (name == "u_domain") return u_domain();
    if (name == "kernel_zero") return kernel_zero();
    if (name == "u_equals_d") return u_equals_d();
    if (name == "pea_commutative") return pea_commutative();
    if (name == "poisson_simple_necessary") return poisson_simple_necessary();
    if (name == "u_simple") return u_simple();
    throw DomainError("unknown criterion '" + name + "'");
}

AnalysisReport Analyzer::report() const {
    AnalysisReport rep;
    rep.vars = algebra_->presentation().vars();
    rep.n = algebra_->num_vars();
    rep.m = algebra_->presentation().num_relations();
    // Fill the shared caches first so the concurrent tasks only read them.
    rep.r = structure_.jacobian_rank().r;
    rep.d = structure_.structure_rank().d;
    if (prime()) regular_computed();

    auto launch = [&](auto fn) { return std::async(std::launch::async, fn); };
    auto regular_f = launch([&] { return regular(); });
    auto symplectic_f = launch([&] { return symplectic(); });
    auto paths_f = launch([&] { return symplectic_paths(); });
    auto domain_f = launch([&] { return u_domain(); });
    auto kernel_f = launch([&] { return kernel_zero(); });
    auto equals_f = launch([&] { return u_equals_d(); });
    auto comm_f = launch([&] { return pea_commutative(); });
    auto screen_f = launch([&] { return poisson_simple_necessary(); });
    auto simple_f = launch([&] { return u_simple(); });
    auto pairings_f = launch([&] {
        if (!prime() || !regular_) return std::vector<FailingPairing>{};
        return failing_pairings();
    });

    rep.gk = gk();
    rep.jacobian_minors = structure_.jacobian_rank().minors;
    rep.structure_minors = structure_.structure_rank().minors;
    rep.kappa_generator_count = structure_.kappa_generators().size();

    rep.regular = regular_f.get();
    rep.symplectic = symplectic_f.get();
    rep.symplectic_paths = paths_f.get();
    rep.u_domain = domain_f.get();
    rep.kernel_zero = kernel_f.get();
    rep.u_equals_d = equals_f.get();
    rep.pea_commutative = comm_f.get();
    rep.poisson_simple_necessary = screen_f.get();
    rep.u_simple = simple_f.get();
    rep.failing_pairings = pairings_f.get();
    return rep;
}

// ---------------------------------------------------------------- serialization

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json one_based(const IndexTuple& t) {
    ordered_json a = ordered_json::array();
    for (auto i : t) a.push_back(i + 1);
    return a;
}

ordered_json verdict_json(const Verdict& v) {
    ordered_json j;
    j["value"] = to_string(v.value);
    j["reason"] = v.reason;
    j["assumptions"] = v.assumptions;
    return j;
}

ordered_json minors_json(const std::vector<Minor>& minors) {
    ordered_json a = ordered_json::array();
    for (const auto& m : minors) {
        ordered_json e;
        e["rows"] = one_based(m.rows);
        e["cols"] = one_based(m.cols);
        e["value"] = m.value.to_string();
        a.push_back(std::move(e));
    }
    return a;
}

ordered_json gk_json(const std::optional<int>& v) {
    if (v) return *v;
    return "unknown";
}

}  // namespace

std::string report_to_json(const AnalysisReport& rep, int indent) {
    ordered_json j;
    j["vars"] = rep.vars;
    j["n"] = rep.n;
    j["m"] = rep.m;
    j["r"] = rep.r;
    j["d"] = rep.d;
    j["gk_A"] = gk_json(rep.gk.gk_A);
    j["gk_U"] = gk_json(rep.gk.gk_U);
    j["gk_PD"] = gk_json(rep.gk.gk_PD);
    ordered_json v;
    v["regular"] = verdict_json(rep.regular);
    v["symplectic"] = verdict_json(rep.symplectic);
    v["u_domain"] = verdict_json(rep.u_domain);
    v["kernel_zero"] = verdict_json(rep.kernel_zero);
    v["u_equals_d"] = verdict_json(rep.u_equals_d);
    v["pea_commutative"] = verdict_json(rep.pea_commutative);
    v["poisson_simple_necessary"] = verdict_json(rep.poisson_simple_necessary);
    v["u_simple"] = verdict_json(rep.u_simple);
    j["verdicts"] = std::move(v);
    ordered_json e;
    e["jacobian_minors"] = minors_json(rep.jacobian_minors);
    e["structure_minors"] = minors_json(rep.structure_minors);
    e["kappa_generator_count"] = rep.kappa_generator_count;
    ordered_json fails = ordered_json::array();
    for (const auto& f : rep.failing_pairings) {
        ordered_json x;
        x["derivation_rows"] = one_based(f.derivation_rows);
        x["derivation_cols"] = one_based(f.derivation_cols);
        x["kappa_rows"] = one_based(f.kappa_rows);
        x["kappa_cols"] = one_based(f.kappa_cols);
        x["kappa_extra_col"] = f.kappa_extra_col + 1;
        x["value"] = f.value.to_string();
        fails.push_back(std::move(x));
    }
    e["failing_pairings"] = std::move(fails);
    ordered_json paths;
    paths["minor_ideal"] = rep.symplectic_paths.minor_ideal;
    paths["radical"] = rep.symplectic_paths.radical;
    e["symplectic_paths"] = std::move(paths);
    j["evidence"] = std::move(e);
    return j.dump(indent);
}

std::string report_to_text(const AnalysisReport& rep) {
    std::ostringstream os;
    auto gk = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("unknown"); };
    os << "n = " << rep.n << ", m = " << rep.m << ", r = " << rep.r << ", d = " << rep.d << "\n";
    os << "GK: A = " << gk(rep.gk.gk_A) << ", U = " << gk(rep.gk.gk_U) << ", PD = " << gk(rep.gk.gk_PD) << "\n";
    auto line = [&](const char* name, const Verdict& v) {
        os << name << ": " << to_string(v.value) << " (" << v.reason << ")\n";
    };
    line("regular", rep.regular);
    line("symplectic", rep.symplectic);
    line("u_domain", rep.u_domain);
    line("kernel_zero", rep.kernel_zero);
    line("u_equals_d", rep.u_equals_d);
    line("pea_commutative", rep.pea_commutative);
    line("poisson_simple_necessary", rep.poisson_simple_necessary);
    line("u_simple", rep.u_simple);
    os << "kappa generators: " << rep.kappa_generator_count << ", failing pairings: " << rep.failing_pairings.size()
       << "\n";
    return os.str();
}

}  // namespace poisenv
