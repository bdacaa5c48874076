#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "aqf/fuzzy.hpp"
#include "aqf/subgroup_check.hpp"

namespace aqf {

/// {0, 0.09, 0.1, 0.2, 0.3, 0.4, 0.5, 1}: every grade constant used by the
/// bundled worked examples.
std::vector<Grade> default_grade_pool();

struct AuditConfig {
    std::vector<std::string> catalog = default_catalog();
    std::size_t q_size = 2;
    std::size_t trials = 200;
    std::uint64_t seed = 7;
    std::vector<Grade> grade_pool = default_grade_pool();
    /// Witness searches skip a group when |pool|^|G| exceeds this.
    std::uint64_t search_bound = std::uint64_t{1} << 20;
    /// Random draws per evaluated trial before a claim gives up on inputs
    /// that satisfy its hypothesis.
    std::size_t attempt_factor = 20;
    std::size_t max_recorded_failures = 3;
    unsigned threads = 0;  // 0: hardware concurrency

    void validate() const;
};

enum class AuditStatus { verified_exhaustive, verified_sampled, refuted, recorded };

std::string_view to_string(AuditStatus status);
std::optional<AuditStatus> parse_audit_status(std::string_view text);

struct SubsetRecord {
    std::string role;
    std::string group;
    std::vector<std::string> q_labels;
    std::vector<Grade> grades;  // row-major in (element, label)

    friend bool operator==(const SubsetRecord&, const SubsetRecord&) = default;
};

struct MapRecord {
    std::string source;
    std::string target;
    MapKind kind = MapKind::homomorphism;
    std::vector<std::string> images;  // target label per source element

    friend bool operator==(const MapRecord&, const MapRecord&) = default;
};

/// Fully materialized inputs plus the conclusion that failed on them.
struct Counterexample {
    std::string claim;
    std::vector<SubsetRecord> subsets;
    Grade alpha;
    std::optional<MapRecord> map;
    std::string condition;
    std::string detail;
    std::optional<Grade> lhs;
    std::optional<Grade> rhs;

    friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct AuditReport {
    std::string claim;
    std::string alias;
    std::string group;
    std::size_t trials = 0;  // trials whose inputs met the hypothesis
    std::size_t passes = 0;
    std::size_t filtered = 0;  // draws rejected by the hypothesis
    std::vector<Counterexample> failures;  // first few, in trial order
    std::vector<Counterexample> witnesses;  // from bounded exhaustive search
    AuditStatus status = AuditStatus::recorded;
    std::string note;

    friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

enum class Expectation {
    verified,   // a failure is a refutation
    recorded,   // outcome is an empirical finding
    existence,  // a search must produce a witness
};

struct ClaimInfo {
    std::string id;
    std::string alias;
    std::string summary;
    Expectation expectation = Expectation::verified;
};

/// Every auditable claim, in canonical report order.
const std::vector<ClaimInfo>& claim_catalog();

/// Lookup by id or alias.
std::optional<ClaimInfo> find_claim(std::string_view id_or_alias);

/// Expands an id or alias to claim ids; "P4.11" names both complement
/// claims. Throws std::invalid_argument for unknown names.
std::vector<std::string> resolve_claim_ids(std::string_view id_or_alias);

/// Claims whose status decides the exit code of a full audit.
bool expects_verification(const ClaimInfo& claim);

/// Concrete inputs to one claim evaluation.
struct Instance {
    std::vector<QFuzzySubset> subsets;
    Grade alpha;
    std::optional<GroupMap> map;
    GroupPtr product_group;  // product claims only; rebuilt when null
};

enum class Verdict { holds, fails, hypothesis_unmet };

struct Evaluation {
    Verdict verdict = Verdict::holds;
    std::string condition;
    std::string detail;
    std::optional<Grade> lhs;
    std::optional<Grade> rhs;
};

/// Evaluates a claim's hypothesis and conclusion exactly on one instance.
Evaluation evaluate_claim(std::string_view claim_id, const Instance& instance);

Counterexample materialize(std::string_view claim_id, const Instance& instance, const Evaluation& evaluation);

struct ReplayResult {
    bool reproduced = false;
    std::string message;
};

/// Rebuilds the inputs from a counterexample and re-evaluates its claim;
/// reproduced when the conclusion fails again with the identical detail.
ReplayResult replay(const Counterexample& counterexample);

/// Deterministic 64-bit engine with an unbiased bounded draw.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n);

private:
    std::mt19937_64 engine_;
};

/// Trial seed derived from (seed, claim, group, trial index).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view claim, std::string_view group, std::uint64_t trial);

/// Each grade drawn uniformly and independently from the pool.
QFuzzySubset random_qfuzzy(const GroupPtr& group, const QLabels& q, Rng& rng, const std::vector<Grade>& pool);

/// Grades from a descending chain of subgroups H0 = G, H1, ..., Hk with
/// weakly increasing grades; x gets the grade of the deepest Hi containing
/// it. The same chain is used for every label.
QFuzzySubset chain_subset(const GroupPtr& group, const QLabels& q, const std::vector<ElementSet>& chain,
                          const std::vector<Grade>& grades);

/// Random chain per label drawn from the subgroup lattice; the result is
/// checked against check_qfuzzy_subgroup before it is returned.
QFuzzySubset random_qfuzzy_subgroup(const GroupPtr& group, const QLabels& q, Rng& rng, const std::vector<Grade>& pool);
QFuzzySubset random_qfuzzy_subgroup(const GroupPtr& group, const std::vector<ElementSet>& subgroups,
                                    const QLabels& q, Rng& rng, const std::vector<Grade>& pool);

/// Runs the named claims (ids or aliases) over the configured catalog.
/// Reports come back in claim-catalog order, then catalog order.
std::vector<AuditReport> audit(const std::vector<std::string>& claims, const AuditConfig& config);

/// All claim ids.
std::vector<std::string> all_claim_ids();

struct SearchResult {
    std::optional<Counterexample> witness;
    std::vector<std::string> searched;  // groups examined, in catalog order
    std::vector<std::string> skipped;   // groups over the search bound
    std::uint64_t instances = 0;
};

/// Lexicographically first instance on which the claim fails, over catalog
/// order, then alpha ascending through the pool, then single-label grade
/// assignments with element 0 most significant. Two-subset claims pair
/// distinct restricted tables, each represented by its first assignment.
SearchResult search_counterexample(std::string_view claim_id, const AuditConfig& config);

/// Whether search_counterexample supports the claim.
bool searchable(std::string_view claim_id);

/// Reproduces a bundled worked example ("klein4-alpha" / "4.5",
/// "cyclic12-union" / "4.10"). Throws ExampleDivergence on any mismatch.
AuditReport reproduce_example(std::string_view id);

class ExampleDivergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Worked-example inputs, shared with the bundled data files.
struct KleinExample {
    GroupPtr group;
    QFuzzySubset theta;
    Grade alpha;
};
KleinExample klein4_example();

struct CyclicUnionExample {
    GroupPtr group;
    QFuzzySubset theta;
    QFuzzySubset sigma;
    QFuzzySubset pi;
};
CyclicUnionExample cyclic12_example();

}  // namespace aqf
