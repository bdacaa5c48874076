#include "aqf/subgroup_check.hpp"

#include <algorithm>

namespace aqf {

std::string render(const Inequality& ineq, const FiniteGroup& g, const QLabels& q)
{
    const char* sign = ineq.lhs < ineq.rhs ? "<" : (ineq.lhs > ineq.rhs ? ">" : "=");
    std::string at = "(";
    for (Elem x : ineq.at) {
        at += g.label(x) + ", ";
    }
    at += q[ineq.q] + ")";
    return ineq.condition + ": lhs = " + ineq.lhs.str() + " " + sign + " rhs = " + ineq.rhs.str() + " at " + at;
}

Inequality closure_inequality(const QFuzzySubset& t, Elem x, Elem y, std::size_t q)
{
    const FiniteGroup& g = *t.group();
    return {"closure", {x, y}, q, t(g.mul(x, y), q), min(t(x, q), t(y, q)), Relation::at_least};
}

Inequality inverse_inequality(const QFuzzySubset& t, Elem x, std::size_t q)
{
    return {"inverse", {x}, q, t(t.group()->inverse(x), q), t(x, q), Relation::at_least};
}

Inequality difference_inequality(const QFuzzySubset& t, Elem x, Elem y, std::size_t q)
{
    const FiniteGroup& g = *t.group();
    return {"difference", {x, y}, q, t(g.mul(x, g.inverse(y)), q), min(t(x, q), t(y, q)), Relation::at_least};
}

Inequality anti_closure_inequality(const QFuzzySubset& t, Elem x, Elem y, std::size_t q)
{
    const FiniteGroup& g = *t.group();
    return {"anti-closure", {x, y}, q, t(g.mul(x, y), q), max(t(x, q), t(y, q)), Relation::at_most};
}

const ConditionResult* CheckReport::condition(std::string_view name) const
{
    for (const auto& c : conditions) {
        if (c.name == name) {
            return &c;
        }
    }
    return nullptr;
}

namespace {

using PairEval = Inequality (*)(const QFuzzySubset&, Elem, Elem, std::size_t);

// `holds(t, x, y, q)` is the allocation-free test; `eval` materializes the
// witness once a violation is found.
template <class Holds>
ConditionResult scan_pairs(const QFuzzySubset& t, std::string name, Holds holds, PairEval eval)
{
    const std::size_t n = t.group()->order();
    const std::size_t nq = t.q().size();
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < n; ++y) {
            for (std::size_t q = 0; q < nq; ++q) {
                if (!holds(t, x, y, q)) {
                    return {std::move(name), false, eval(t, x, y, q)};
                }
            }
        }
    }
    return {std::move(name), true, std::nullopt};
}

bool closure_holds(const QFuzzySubset& t, Elem x, Elem y, std::size_t q)
{
    return t(t.group()->mul(x, y), q) >= min(t(x, q), t(y, q));
}

bool difference_holds(const QFuzzySubset& t, Elem x, Elem y, std::size_t q)
{
    const FiniteGroup& g = *t.group();
    return t(g.mul(x, g.inverse(y)), q) >= min(t(x, q), t(y, q));
}

bool anti_closure_holds(const QFuzzySubset& t, Elem x, Elem y, std::size_t q)
{
    return t(t.group()->mul(x, y), q) <= max(t(x, q), t(y, q));
}

ConditionResult scan_inverse(const QFuzzySubset& t)
{
    for (Elem x = 0; x < t.group()->order(); ++x) {
        for (std::size_t q = 0; q < t.q().size(); ++q) {
            if (t(t.group()->inverse(x), q) < t(x, q)) {
                return {"inverse", false, inverse_inequality(t, x, q)};
            }
        }
    }
    return {"inverse", true, std::nullopt};
}

// Verdict over the listed conditions; the witness is the first failing one.
CheckReport summarize(const QFuzzySubset& t, std::vector<ConditionResult> conditions, std::size_t verdict_count)
{
    CheckReport report;
    report.conditions = std::move(conditions);
    for (std::size_t i = 0; i < verdict_count; ++i) {
        const auto& c = report.conditions[i];
        if (!c.holds) {
            report.verdict = false;
            if (!report.witness) {
                report.witness = c.witness;
                report.detail = render(*c.witness, *t.group(), t.q());
            }
        }
    }
    return report;
}

CheckReport check_subgroup_table(const QFuzzySubset& t)
{
    return summarize(t, {scan_pairs(t, "closure", closure_holds, closure_inequality), scan_inverse(t)}, 2);
}

}  // namespace

CheckReport check_qfuzzy_subgroup(const QFuzzySubset& theta)
{
    return check_subgroup_table(theta);
}

CheckReport check_alpha_subgroup(const AlphaQFuzzySubset& phi)
{
    const QFuzzySubset& t = phi.restricted();
    CheckReport report = summarize(
        t, {scan_pairs(t, "closure", closure_holds, closure_inequality), scan_inverse(t), scan_pairs(t, "difference", difference_holds, difference_inequality)},
        2);
    report.forms_agree = report.verdict == report.conditions[2].holds;
    return report;
}

CheckReport check_anti_subgroup(const QFuzzySubset& table)
{
    return summarize(table, {scan_pairs(table, "anti-closure", anti_closure_holds, anti_closure_inequality), scan_inverse(table)}, 2);
}

CheckReport check_anti_subgroup(const AlphaQFuzzySubset& phi)
{
    return check_anti_subgroup(phi.restricted());
}

ElementSet kernel_slice(const QFuzzySubset& table, std::size_t q)
{
    const Grade& at_identity = table(table.group()->identity(), q);
    ElementSet out;
    for (Elem x = 0; x < table.group()->order(); ++x) {
        if (table(x, q) == at_identity) {
            out.push_back(x);
        }
    }
    return out;
}

KernelSet kernel_set(const AlphaQFuzzySubset& phi)
{
    KernelSet k;
    for (std::size_t q = 0; q < phi.q().size(); ++q) {
        k.per_label.push_back(kernel_slice(phi.restricted(), q));
    }
    return k;
}

AbelianReport classify_abelian(const AlphaQFuzzySubset& phi)
{
    const FiniteGroup& g = *phi.group();
    AbelianReport report;
    const KernelSet k = kernel_set(phi);
    for (std::size_t q = 0; q < k.per_label.size(); ++q) {
        AbelianSlice slice;
        slice.q = q;
        slice.kernel = k.per_label[q];
        const CrispSubsetAnalysis analysis = analyze_subset(g, slice.kernel);
        slice.is_subgroup = analysis.is_subgroup;
        slice.is_abelian = true;
        for (Elem a : slice.kernel) {
            for (Elem b : slice.kernel) {
                if (slice.is_abelian && g.mul(a, b) != g.mul(b, a)) {
                    slice.is_abelian = false;
                    slice.non_commuting = std::pair{a, b};
                }
            }
        }
        slice.verdict = slice.is_subgroup && slice.is_abelian;
        report.verdict = report.verdict && slice.verdict;
        report.slices.push_back(std::move(slice));
    }
    return report;
}

std::vector<Grade> achieved_grades(const QFuzzySubset& table, std::size_t q)
{
    std::vector<Grade> grades{Grade::zero()};
    for (Elem x = 0; x < table.group()->order(); ++x) {
        grades.push_back(table(x, q));
    }
    std::sort(grades.begin(), grades.end());
    grades.erase(std::unique(grades.begin(), grades.end()), grades.end());
    return grades;
}

CyclicReport classify_cyclic(const AlphaQFuzzySubset& phi)
{
    const FiniteGroup& g = *phi.group();
    CyclicReport report;
    for (std::size_t q = 0; q < phi.q().size(); ++q) {
        CyclicSlice slice;
        slice.q = q;
        for (const Grade& c : achieved_grades(phi.restricted(), q)) {
            LevelEntry entry;
            entry.c = c;
            entry.level = level_set(phi.restricted(), c, q);
            if (entry.level.empty()) {
                continue;
            }
            const CrispSubsetAnalysis analysis = analyze_subset(g, entry.level);
            entry.is_subgroup = analysis.is_subgroup;
            entry.is_cyclic = analysis.is_cyclic;
            entry.verdict = entry.is_subgroup && entry.is_cyclic;
            slice.verdict = slice.verdict && entry.verdict;
            slice.levels.push_back(std::move(entry));
        }
        report.verdict = report.verdict && slice.verdict;
        report.slices.push_back(std::move(slice));
    }
    return report;
}

}  // namespace aqf
