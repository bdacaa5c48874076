#include <algorithm>

#include "lab_internal.hpp"

namespace aqf {

namespace {

using detail::ClaimSpec;
using detail::InputShape;

// Pair claims whose outcome depends only on the restricted tables, so
// deduplicating by restricted table loses no witness.
bool restricted_only_pair(std::string_view id)
{
    return id == "intersection-closure" || id == "union-not-closed";
}

bool single_searchable(const ClaimSpec& s)
{
    return s.subset_count == 1 &&
           (s.shape == InputShape::subgroups || s.shape == InputShape::mixed || s.shape == InputShape::search_only);
}

// |pool|^n, saturating at bound + 1.
std::uint64_t space_size(std::size_t pool, std::size_t n, std::uint64_t bound)
{
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (size > bound / pool + 1) {
            return bound + 1;
        }
        size *= pool;
    }
    return size;
}

// Odometer over assignments with element 0 as the most significant digit.
bool advance(std::vector<std::size_t>& digits, std::size_t base)
{
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i] < base) {
            return true;
        }
        digits[i] = 0;
    }
    return false;
}

QFuzzySubset assignment(const GroupPtr& g, const QLabels& q, const std::vector<std::size_t>& digits,
                        const std::vector<Grade>& pool)
{
    std::vector<Grade> flat;
    flat.reserve(digits.size());
    for (std::size_t d : digits) {
        flat.push_back(pool[d]);
    }
    return QFuzzySubset(g, q, std::move(flat));
}

}  // namespace

bool searchable(std::string_view claim_id)
{
    const ClaimSpec& s = detail::spec_for(claim_id);
    return single_searchable(s) || restricted_only_pair(s.info.id);
}

SearchResult search_counterexample(std::string_view claim_id, const AuditConfig& config)
{
    const ClaimSpec& spec = detail::spec_for(claim_id);
    if (!searchable(spec.info.id)) {
        throw std::invalid_argument("claim '" + spec.info.id + "' does not support exhaustive search");
    }
    std::vector<Grade> pool = config.grade_pool;
    if (pool.empty()) {
        throw std::invalid_argument("grade pool is empty");
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    const QLabels q = QLabels::numbered(1);

    SearchResult result;
    for (const auto& name : config.catalog) {
        const GroupPtr g = standard_group(name);
        const std::size_t n = g->order();
        if (space_size(pool.size(), n, config.search_bound) > config.search_bound) {
            result.skipped.push_back(g->name());
            continue;
        }
        result.searched.push_back(g->name());
        for (const Grade& alpha : pool) {
            if (single_searchable(spec)) {
                std::vector<std::size_t> digits(n, 0);
                do {
                    Instance in{{assignment(g, q, digits, pool)}, alpha, std::nullopt, nullptr};
                    ++result.instances;
                    const Evaluation e = detail::evaluate(spec, in, true);
                    if (e.verdict == Verdict::fails) {
                        result.witness = materialize(spec.info.id, in, e);
                        return result;
                    }
                } while (advance(digits, pool.size()));
                continue;
            }
            // Restricted tables take values in the pool at or below alpha, and
            // each is its own lexicographically first base assignment.
            const std::vector<Grade> low(pool.begin(), std::upper_bound(pool.begin(), pool.end(), alpha));
            std::vector<QFuzzySubset> tables;
            std::vector<std::size_t> digits(n, 0);
            do {
                QFuzzySubset t = assignment(g, q, digits, low);
                if (check_alpha_subgroup(alpha_restrict(t, alpha)).verdict) {
                    tables.push_back(std::move(t));
                }
            } while (advance(digits, low.size()));
            for (const auto& a : tables) {
                for (const auto& b : tables) {
                    Instance in{{a, b}, alpha, std::nullopt, nullptr};
                    ++result.instances;
                    const Evaluation e = detail::evaluate(spec, in, true);
                    if (e.verdict == Verdict::fails) {
                        result.witness = materialize(spec.info.id, in, e);
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

}  // namespace aqf
