#pragma once

#include <string>

#include "aqf/theorem_lab.hpp"

namespace aqf::detail {

/// How a claim's inputs are drawn during an audit.
enum class InputShape {
    subsets,         // arbitrary subsets on G
    subgroups,       // Q-fuzzy subgroups on G
    mixed,           // alternate subgroups and arbitrary subsets
    product,         // subsets on G and its partner, paired over G * G
    map_source,      // one subgroup on G, pushed forward along maps
    map_target,      // one subgroup per target, pulled back along maps
    map_both,        // arbitrary subsets on source and target, both map kinds
    search_only,
};

struct ClaimSpec {
    ClaimInfo info;
    InputShape shape = InputShape::subgroups;
    std::size_t subset_count = 1;
    std::vector<std::string> roles;
    bool needs_surjective = false;
    bool all_map_kinds = false;  // homomorphisms too, not just anti
    bool product_mixed = false;  // product factors: subgroup or arbitrary
};

const std::vector<ClaimSpec>& claim_specs();
const ClaimSpec& spec_for(std::string_view claim_id);

/// Evaluation with the subset-only hypothesis either checked or assumed.
Evaluation evaluate(const ClaimSpec& spec, const Instance& instance, bool check_subset_hypothesis);

/// Hypothesis on the subsets alone (no map). Evaluated once per trial so
/// map loops can be skipped.
bool subset_hypothesis(const ClaimSpec& spec, const Instance& instance);

std::string render_set(const FiniteGroup& g, const ElementSet& s);

}  // namespace aqf::detail
