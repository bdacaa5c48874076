#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aqf/fuzzy.hpp"

namespace aqf {

enum class Relation { at_least, at_most };

/// One instance of a defining inequality, "lhs REL rhs", evaluated exactly.
struct Inequality {
    std::string condition;
    std::vector<Elem> at;  // (x, y) or (x)
    std::size_t q = 0;
    Grade lhs;
    Grade rhs;
    Relation relation = Relation::at_least;

    bool holds() const { return relation == Relation::at_least ? lhs >= rhs : lhs <= rhs; }

    friend bool operator==(const Inequality&, const Inequality&) = default;
};

/// "lhs = p/q < rhs = r/s at (x, y, q-label)"; the comparison sign reflects
/// the actual values.
std::string render(const Inequality& ineq, const FiniteGroup& g, const QLabels& q);

// Single-instance evaluators. Grades are read from the table as given, so
// pass restricted() to evaluate an alpha-restricted subset.

/// t(xy) >= min(t(x), t(y))
Inequality closure_inequality(const QFuzzySubset& t, Elem x, Elem y, std::size_t q);
/// t(x^-1) >= t(x)
Inequality inverse_inequality(const QFuzzySubset& t, Elem x, std::size_t q);
/// t(x y^-1) >= min(t(x), t(y))
Inequality difference_inequality(const QFuzzySubset& t, Elem x, Elem y, std::size_t q);
/// t(xy) <= max(t(x), t(y))
Inequality anti_closure_inequality(const QFuzzySubset& t, Elem x, Elem y, std::size_t q);

struct ConditionResult {
    std::string name;
    bool holds = true;
    std::optional<Inequality> witness;  // first violation in (x, y, q) order
};

struct CheckReport {
    bool verdict = true;
    std::vector<ConditionResult> conditions;
    std::optional<Inequality> witness;
    std::string detail;  // rendered witness, empty when verdict holds
    /// Only meaningful for check_alpha_subgroup: the two-condition and
    /// single-condition forms reached the same verdict.
    bool forms_agree = true;

    const ConditionResult* condition(std::string_view name) const;
};

/// Closure and inverse conditions over every (x, y, q).
CheckReport check_qfuzzy_subgroup(const QFuzzySubset& theta);

/// Closure and inverse conditions on the restricted grades; the verdict is
/// their conjunction. Also evaluates the single difference condition and
/// records whether both forms agree.
CheckReport check_alpha_subgroup(const AlphaQFuzzySubset& phi);

/// t(xy) <= max(t(x), t(y)) and t(x^-1) >= t(x) over every (x, y, q).
CheckReport check_anti_subgroup(const AlphaQFuzzySubset& phi);
CheckReport check_anti_subgroup(const QFuzzySubset& table);

struct KernelSet {
    std::vector<ElementSet> per_label;  // indexed like the subset's QLabels
};

/// Per label q, { x : phi(x, q) = phi(e, q) }.
KernelSet kernel_set(const AlphaQFuzzySubset& phi);
ElementSet kernel_slice(const QFuzzySubset& table, std::size_t q);

struct AbelianSlice {
    std::size_t q = 0;
    ElementSet kernel;
    bool is_subgroup = false;
    bool is_abelian = false;
    std::optional<std::pair<Elem, Elem>> non_commuting;
    bool verdict = false;
};

struct AbelianReport {
    bool verdict = true;
    std::vector<AbelianSlice> slices;
};

/// Fuzzy-abelian iff every label's kernel set is an abelian subgroup.
AbelianReport classify_abelian(const AlphaQFuzzySubset& phi);

struct LevelEntry {
    Grade c;
    ElementSet level;
    bool is_subgroup = false;
    bool is_cyclic = false;
    bool verdict = false;
};

struct CyclicSlice {
    std::size_t q = 0;
    std::vector<LevelEntry> levels;  // ascending c: 0 and each achieved grade
    bool verdict = true;
};

struct CyclicReport {
    bool verdict = true;
    std::vector<CyclicSlice> slices;
};

/// Cyclic iff, for every label, every nonempty level set at 0 or at an
/// achieved grade is a cyclic subgroup.
CyclicReport classify_cyclic(const AlphaQFuzzySubset& phi);

/// Distinct grades of label q, ascending, with 0 prepended when absent.
std::vector<Grade> achieved_grades(const QFuzzySubset& table, std::size_t q);

}  // namespace aqf
