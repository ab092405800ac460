#pragma once

#include "poisenv/pea.hpp"
#include "poisenv/structure.hpp"

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace poisenv {

enum class Truth { yes, no, unknown };

std::string to_string(Truth t);  // "true", "false", "unknown"

struct Verdict {
    Truth value = Truth::unknown;
    std::string reason;
    // Hypotheses taken from flags rather than computed: prime_ideal,
    // cohen_macaulay, serre_s_m, regularity, poisson_simple.
    std::vector<std::string> assumptions;

    bool is_true() const { return value == Truth::yes; }
    bool is_false() const { return value == Truth::no; }
    bool is_unknown() const { return value == Truth::unknown; }
};

// The two symplecticity tests evaluated independently.
struct SymplecticPaths {
    // d = n - r and the d x d minors of the structure matrix generate A.
    bool minor_ideal = false;
    // d = n - r and every nonzero maximal Jacobian minor lies in the radical
    // of the (n - r) x (n - r) structure minor ideal.
    bool radical = false;
    bool agree() const { return minor_ideal == radical; }
};

struct FailingPairing {
    IndexTuple derivation_rows, derivation_cols;
    IndexTuple kappa_rows, kappa_cols;
    std::size_t kappa_extra_col;
    Polynomial value;
};

struct GkReport {
    std::optional<int> gk_A, gk_U, gk_PD;
};

struct AnalysisReport {
    std::size_t n = 0, m = 0, r = 0, d = 0;
    GkReport gk;
    Verdict regular, symplectic, u_domain, kernel_zero, u_equals_d, pea_commutative, poisson_simple_necessary,
        u_simple;
    SymplecticPaths symplectic_paths;
    std::vector<Minor> jacobian_minors;
    std::vector<Minor> structure_minors;
    std::size_t kappa_generator_count = 0;
    std::vector<FailingPairing> failing_pairings;
    std::vector<std::string> vars;
};

// Serialized with a fixed key order (schema/analysis_report.schema.json).
std::string report_to_json(const AnalysisReport& report, int indent = 2);
std::string report_to_text(const AnalysisReport& report);

// Evaluates the criteria for one presentation. Sub-results are cached
// internally; every method is safe to call from several threads.
class Analyzer {
public:
    explicit Analyzer(std::shared_ptr<const PoissonAlgebra> algebra, RewriteMode mode = RewriteMode::eager);
    explicit Analyzer(const PoissonPresentation& p, RewriteMode mode = RewriteMode::eager);

    const PoissonAlgebra& algebra() const { return *algebra_; }
    const StructureAnalysis& structure() const { return structure_; }
    const EnvelopingAlgebra& enveloping() const { return enveloping_; }

    Verdict regular() const;
    Verdict symplectic() const;
    SymplecticPaths symplectic_paths() const;
    Verdict u_domain() const;
    Verdict kernel_zero() const;
    Verdict u_equals_d() const;
    Verdict pea_commutative() const;
    Verdict poisson_simple_necessary() const;
    // Simplicity of U(A): screen passed, kernel zero and the poisson_simple flag.
    Verdict u_simple() const;
    GkReport gk() const;

    // Pairings of derivation generators with dual κ elements that are nonzero in A.
    // Requires the regular path (prime flag and regular A).
    std::vector<FailingPairing> failing_pairings() const;
    // Whether every κ generator lies in the submodule spanned by the df_s.
    bool kappa_in_relation_module() const;

    Verdict criterion(const std::string& name) const;
    static const std::vector<std::string>& criterion_names();

    // Runs the independent criteria concurrently and joins the results.
    AnalysisReport report() const;

private:
    bool regular_computed() const;
    bool prime() const { return algebra_->presentation().flags().prime_ideal; }

    std::shared_ptr<const PoissonAlgebra> algebra_;
    StructureAnalysis structure_;
    EnvelopingAlgebra enveloping_;
    mutable std::once_flag regular_once_;
    mutable bool regular_ = false;
};

}  // namespace poisenv
