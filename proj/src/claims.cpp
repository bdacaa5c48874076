#include <functional>
#include <map>

#include "lab_internal.hpp"

namespace aqf {

namespace detail {

namespace {

using Shape = InputShape;

std::vector<ClaimSpec> build_specs()
{
    const auto spec = [](std::string id, std::string alias, std::string summary, Expectation e, Shape shape,
                         std::size_t count, std::vector<std::string> roles) {
        ClaimSpec s;
        s.info = {std::move(id), std::move(alias), std::move(summary), e};
        s.shape = shape;
        s.subset_count = count;
        s.roles = std::move(roles);
        return s;
    };
    using E = Expectation;
    std::vector<ClaimSpec> specs{
        spec("alpha-intersection", "P3.3", "alpha-restriction of an intersection is the intersection of restrictions",
             E::verified, Shape::subsets, 2, {"theta", "sigma"}),
        spec("alpha-image-preimage", "P3.4", "image and preimage commute with alpha-restriction", E::verified,
             Shape::map_both, 2, {"theta", "sigma"}),
        spec("alpha-subgroup-inherit", "P4.2", "every Q-fuzzy subgroup restricts to an alpha-Q-fuzzy subgroup",
             E::verified, Shape::subgroups, 1, {"theta"}),
        spec("identity-kernel", "P4.6",
             "identity carries the top grade and the kernel set is a subgroup", E::verified, Shape::subgroups, 1,
             {"theta"}),
        spec("translation", "P4.7", "phi(xy^-1) = phi(e) forces phi(x) = phi(y^-1) = phi(y)", E::verified,
             Shape::subgroups, 1, {"theta"}),
        spec("intersection-closure", "P4.8", "intersection of alpha-Q-fuzzy subgroups is one", E::verified,
             Shape::subgroups, 2, {"theta", "sigma"}),
        spec("complement-anti", "P4.11", "complement of an alpha-Q-fuzzy subgroup satisfies the anti-fuzzy inequalities",
             E::verified, Shape::subgroups, 1, {"theta"}),
        spec("complement-literal", "P4.11-literal",
             "complement of an alpha-Q-fuzzy subgroup satisfies the subgroup inequalities", E::recorded,
             Shape::subgroups, 1, {"theta"}),
        spec("single-condition", "P4.12", "two-condition and difference-condition forms agree", E::verified,
             Shape::mixed, 1, {"theta"}),
        spec("product-subgroup", "P4.14", "product of alpha-Q-fuzzy subgroups is one on the direct product",
             E::verified, Shape::product, 2, {"theta", "sigma"}),
        spec("product-factor", "P4.15",
             "a subgroup product whose identity grade dominates one factor makes the other factor a subgroup",
             E::verified, Shape::product, 2, {"theta", "sigma"}),
        spec("product-either-factor", "R4.16", "a subgroup product has at least one subgroup factor", E::recorded,
             Shape::product, 2, {"theta", "sigma"}),
        spec("anti-image", "P5.2", "anti-homomorphic image of an alpha-Q-fuzzy subgroup is one", E::verified,
             Shape::map_source, 1, {"theta"}),
        spec("anti-preimage", "P5.4", "anti-homomorphic preimage of an alpha-Q-fuzzy subgroup is one", E::verified,
             Shape::map_target, 1, {"sigma"}),
        spec("abelian-image", "P5.7", "anti-homomorphic image onto the target preserves fuzzy-abelian", E::verified,
             Shape::map_source, 1, {"theta"}),
        spec("abelian-preimage", "P5.8", "anti-homomorphic preimage along a surjection preserves fuzzy-abelian",
             E::verified, Shape::map_target, 1, {"sigma"}),
        spec("cyclic-image", "P5.10", "anti-homomorphic image onto the target preserves fuzzy-cyclic", E::recorded,
             Shape::map_source, 1, {"theta"}),
        spec("cyclic-preimage", "P5.11", "anti-homomorphic preimage along a surjection preserves fuzzy-cyclic",
             E::recorded, Shape::map_target, 1, {"sigma"}),
        spec("restricted-not-base", "R4.3", "an alpha-Q-fuzzy subgroup whose base is not a Q-fuzzy subgroup exists",
             E::existence, Shape::search_only, 1, {"theta"}),
        spec("union-not-closed", "R4.9", "a union of alpha-Q-fuzzy subgroups that is not one exists", E::existence,
             Shape::search_only, 2, {"theta", "sigma"}),
    };
    for (auto& s : specs) {
        const std::string& id = s.info.id;
        s.needs_surjective = id == "abelian-image" || id == "abelian-preimage" || id == "cyclic-image" ||
                             id == "cyclic-preimage";
        s.all_map_kinds = id == "alpha-image-preimage";
        s.product_mixed = id == "product-factor" || id == "product-either-factor";
    }
    return specs;
}

}  // namespace

const std::vector<ClaimSpec>& claim_specs()
{
    static const std::vector<ClaimSpec> specs = build_specs();
    return specs;
}

const ClaimSpec& spec_for(std::string_view claim_id)
{
    for (const auto& s : claim_specs()) {
        if (s.info.id == claim_id) {
            return s;
        }
    }
    throw std::invalid_argument("unknown claim '" + std::string(claim_id) + "'");
}

std::string render_set(const FiniteGroup& g, const ElementSet& s)
{
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        out += (i ? ", " : "") + g.label(s[i]);
    }
    return out + "}";
}

namespace {

Evaluation failed(std::string condition, std::string detail, std::optional<Grade> lhs = std::nullopt,
                  std::optional<Grade> rhs = std::nullopt)
{
    return {Verdict::fails, std::move(condition), std::move(detail), lhs, rhs};
}

Evaluation failed(const std::string& condition, const CheckReport& report)
{
    return failed(condition, condition + ": " + report.detail, report.witness->lhs, report.witness->rhs);
}

Evaluation unmet()
{
    return {Verdict::hypothesis_unmet, {}, {}, {}, {}};
}

const Evaluation holds{};

const QFuzzySubset& subset(const Instance& in, std::size_t i)
{
    if (in.subsets.size() <= i) {
        throw std::invalid_argument("claim instance is missing subset " + std::to_string(i));
    }
    return in.subsets[i];
}

const GroupMap& map_of(const Instance& in)
{
    if (!in.map) {
        throw std::invalid_argument("claim instance requires a map");
    }
    return *in.map;
}

bool alpha_subgroup(const QFuzzySubset& t, const Grade& alpha)
{
    return check_alpha_subgroup(alpha_restrict(t, alpha)).verdict;
}

AlphaQFuzzySubset product_of(const Instance& in)
{
    const AlphaQFuzzySubset phi = alpha_restrict(subset(in, 0), in.alpha);
    const AlphaQFuzzySubset psi = alpha_restrict(subset(in, 1), in.alpha);
    if (in.product_group) {
        return product(phi, psi, in.product_group);
    }
    return product(phi, psi);
}

// Case (i): phi(e, q) >= psi(x, q) for all x, q. Case (ii): symmetric.
bool dominates(const AlphaQFuzzySubset& top, const AlphaQFuzzySubset& other)
{
    const Elem e = top.group()->identity();
    for (Elem x = 0; x < other.group()->order(); ++x) {
        for (std::size_t q = 0; q < other.q().size(); ++q) {
            if (top(e, q) < other(x, q)) {
                return false;
            }
        }
    }
    return true;
}

std::string abelian_failure(const AlphaQFuzzySubset& phi, const AbelianReport& r, std::string_view what)
{
    const FiniteGroup& g = *phi.group();
    for (const auto& slice : r.slices) {
        if (slice.verdict) {
            continue;
        }
        std::string out = std::string(what) + " kernel set " + render_set(g, slice.kernel) + " at " +
                          phi.q()[slice.q] + " is ";
        if (!slice.is_subgroup) {
            return out + "not a subgroup";
        }
        return out + "not abelian: " + g.label(slice.non_commuting->first) + "*" +
               g.label(slice.non_commuting->second) + " != " + g.label(slice.non_commuting->second) + "*" +
               g.label(slice.non_commuting->first);
    }
    return {};
}

std::string cyclic_failure(const AlphaQFuzzySubset& phi, const CyclicReport& r, std::string_view what)
{
    const FiniteGroup& g = *phi.group();
    for (const auto& slice : r.slices) {
        for (const auto& level : slice.levels) {
            if (!level.verdict) {
                return std::string(what) + " level set at c = " + level.c.str() + ", " + phi.q()[slice.q] + " is " +
                       render_set(g, level.level) + (level.is_subgroup ? ", not cyclic" : ", not a subgroup");
            }
        }
    }
    return {};
}

bool subset_of(const ElementSet& a, const ElementSet& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

using Evaluator = std::function<Evaluation(const Instance&)>;

std::map<std::string, Evaluator, std::less<>> build_conclusions()
{
    std::map<std::string, Evaluator, std::less<>> c;

    c["alpha-intersection"] = [](const Instance& in) {
        const QFuzzySubset& a = subset(in, 0);
        const QFuzzySubset& b = subset(in, 1);
        const QFuzzySubset lhs = alpha_restrict(combine(Combine::intersection, a, b), in.alpha).restricted();
        const QFuzzySubset rhs = combine(Combine::intersection, alpha_restrict(a, in.alpha).restricted(),
                                         alpha_restrict(b, in.alpha).restricted());
        const CompareResult r = compare(Compare::equal, lhs, rhs);
        if (r.holds) {
            return holds;
        }
        const auto [x, q] = *r.witness;
        return failed("restricted-intersection",
                      "restricted-intersection: lhs = " + lhs(x, q).str() + " != rhs = " + rhs(x, q).str() + " at (" +
                          a.group()->label(x) + ", " + a.q()[q] + ")",
                      lhs(x, q), rhs(x, q));
    };

    c["alpha-image-preimage"] = [](const Instance& in) {
        const GroupMap& f = map_of(in);
        const QFuzzySubset& theta = subset(in, 0);
        const QFuzzySubset& sigma = subset(in, 1);
        const QFuzzySubset img_of_cut = image(f, alpha_restrict(theta, in.alpha).restricted());
        const QFuzzySubset cut_of_img = alpha_restrict(image(f, theta), in.alpha).restricted();
        if (auto r = compare(Compare::equal, img_of_cut, cut_of_img); !r.holds) {
            const auto [y, q] = *r.witness;
            return failed("image-restriction",
                          "image-restriction: lhs = " + img_of_cut(y, q).str() + " != rhs = " +
                              cut_of_img(y, q).str() + " at (" + f.target()->label(y) + ", " + theta.q()[q] + ")",
                          img_of_cut(y, q), cut_of_img(y, q));
        }
        const QFuzzySubset pre_of_cut = preimage(f, alpha_restrict(sigma, in.alpha).restricted());
        const QFuzzySubset cut_of_pre = alpha_restrict(preimage(f, sigma), in.alpha).restricted();
        if (auto r = compare(Compare::equal, pre_of_cut, cut_of_pre); !r.holds) {
            const auto [x, q] = *r.witness;
            return failed("preimage-restriction",
                          "preimage-restriction: lhs = " + pre_of_cut(x, q).str() + " != rhs = " +
                              cut_of_pre(x, q).str() + " at (" + f.source()->label(x) + ", " + sigma.q()[q] + ")",
                          pre_of_cut(x, q), cut_of_pre(x, q));
        }
        return holds;
    };

    c["alpha-subgroup-inherit"] = [](const Instance& in) {
        const CheckReport r = check_alpha_subgroup(alpha_restrict(subset(in, 0), in.alpha));
        return r.verdict ? holds : failed("alpha-subgroup", r);
    };

    c["identity-kernel"] = [](const Instance& in) {
        const AlphaQFuzzySubset phi = alpha_restrict(subset(in, 0), in.alpha);
        const FiniteGroup& g = *phi.group();
        const Elem e = g.identity();
        for (Elem x = 0; x < g.order(); ++x) {
            for (std::size_t q = 0; q < phi.q().size(); ++q) {
                if (phi(e, q) < phi(x, q)) {
                    return failed("identity-dominance",
                                  "identity-dominance: lhs = " + phi(e, q).str() + " < rhs = " + phi(x, q).str() +
                                      " at (" + g.label(x) + ", " + phi.q()[q] + ")",
                                  phi(e, q), phi(x, q));
                }
            }
        }
        const KernelSet k = kernel_set(phi);
        for (std::size_t q = 0; q < k.per_label.size(); ++q) {
            if (!analyze_subset(g, k.per_label[q]).is_subgroup) {
                return failed("kernel-subgroup", "kernel-subgroup: kernel set " + render_set(g, k.per_label[q]) +
                                                     " at " + phi.q()[q] + " is not a subgroup");
            }
        }
        return holds;
    };

    c["translation"] = [](const Instance& in) {
        const AlphaQFuzzySubset phi = alpha_restrict(subset(in, 0), in.alpha);
        const FiniteGroup& g = *phi.group();
        const Elem e = g.identity();
        for (Elem x = 0; x < g.order(); ++x) {
            for (Elem y = 0; y < g.order(); ++y) {
                for (std::size_t q = 0; q < phi.q().size(); ++q) {
                    if (phi(g.mul(x, g.inverse(y)), q) != phi(e, q)) {
                        continue;
                    }
                    for (Elem other : {g.inverse(y), y}) {
                        if (phi(x, q) != phi(other, q)) {
                            return failed("translation", "translation: phi(x) = " + phi(x, q).str() + " != phi(" +
                                                             g.label(other) + ") = " + phi(other, q).str() +
                                                             " at (" + g.label(x) + ", " + g.label(y) + ", " +
                                                             phi.q()[q] + ")",
                                          phi(x, q), phi(other, q));
                        }
                    }
                }
            }
        }
        return holds;
    };

    c["intersection-closure"] = [](const Instance& in) {
        const CheckReport r = check_alpha_subgroup(
            alpha_restrict(combine(Combine::intersection, subset(in, 0), subset(in, 1)), in.alpha));
        return r.verdict ? holds : failed("intersection-subgroup", r);
    };

    c["complement-anti"] = [](const Instance& in) {
        const CheckReport r =
            check_anti_subgroup(complement(alpha_restrict(subset(in, 0), in.alpha).restricted()));
        return r.verdict ? holds : failed("complement-anti", r);
    };

    c["complement-literal"] = [](const Instance& in) {
        const QFuzzySubset comp = complement(alpha_restrict(subset(in, 0), in.alpha).restricted());
        const CheckReport r = check_alpha_subgroup(alpha_restrict(comp, Grade::one()));
        return r.verdict ? holds : failed("complement-subgroup", r);
    };

    c["single-condition"] = [](const Instance& in) {
        const CheckReport r = check_alpha_subgroup(alpha_restrict(subset(in, 0), in.alpha));
        if (r.forms_agree) {
            return holds;
        }
        const auto* diff = r.condition("difference");
        return failed("forms-agree", std::string("forms-agree: two-condition verdict ") +
                                         (r.verdict ? "true" : "false") + ", difference verdict " +
                                         (diff->holds ? "true" : "false"));
    };

    c["product-subgroup"] = [](const Instance& in) {
        const CheckReport r = check_alpha_subgroup(product_of(in));
        return r.verdict ? holds : failed("product-subgroup", r);
    };

    c["product-factor"] = [](const Instance& in) {
        const AlphaQFuzzySubset phi = alpha_restrict(subset(in, 0), in.alpha);
        const AlphaQFuzzySubset psi = alpha_restrict(subset(in, 1), in.alpha);
        if (dominates(phi, psi)) {
            const CheckReport r = check_alpha_subgroup(psi);
            if (!r.verdict) {
                return failed("case-i-sigma-subgroup", r);
            }
        }
        if (dominates(psi, phi)) {
            const CheckReport r = check_alpha_subgroup(phi);
            if (!r.verdict) {
                return failed("case-ii-theta-subgroup", r);
            }
        }
        return holds;
    };

    c["product-either-factor"] = [](const Instance& in) {
        const CheckReport a = check_alpha_subgroup(alpha_restrict(subset(in, 0), in.alpha));
        if (a.verdict) {
            return holds;
        }
        const CheckReport b = check_alpha_subgroup(alpha_restrict(subset(in, 1), in.alpha));
        if (b.verdict) {
            return holds;
        }
        return failed("either-factor", "either-factor: theta " + a.detail + "; sigma " + b.detail);
    };

    c["anti-image"] = [](const Instance& in) {
        const CheckReport r = check_alpha_subgroup(image(map_of(in), alpha_restrict(subset(in, 0), in.alpha)));
        return r.verdict ? holds : failed("image-subgroup", r);
    };

    c["anti-preimage"] = [](const Instance& in) {
        const CheckReport r = check_alpha_subgroup(preimage(map_of(in), alpha_restrict(subset(in, 0), in.alpha)));
        return r.verdict ? holds : failed("preimage-subgroup", r);
    };

    c["abelian-image"] = [](const Instance& in) {
        const AlphaQFuzzySubset img = image(map_of(in), alpha_restrict(subset(in, 0), in.alpha));
        const AbelianReport r = classify_abelian(img);
        return r.verdict ? holds : failed("image-abelian", "image-abelian: " + abelian_failure(img, r, "image"));
    };

    c["abelian-preimage"] = [](const Instance& in) {
        const AlphaQFuzzySubset pre = preimage(map_of(in), alpha_restrict(subset(in, 0), in.alpha));
        const AbelianReport r = classify_abelian(pre);
        return r.verdict ? holds
                         : failed("preimage-abelian", "preimage-abelian: " + abelian_failure(pre, r, "preimage"));
    };

    c["cyclic-image"] = [](const Instance& in) {
        const GroupMap& f = map_of(in);
        const AlphaQFuzzySubset phi = alpha_restrict(subset(in, 0), in.alpha);
        const AlphaQFuzzySubset img = image(f, phi);
        for (std::size_t q = 0; q < phi.q().size(); ++q) {
            for (const Grade& c : achieved_grades(phi.restricted(), q)) {
                ElementSet pushed;
                for (Elem x : level_set(phi.restricted(), c, q)) {
                    pushed.push_back(f(x));
                }
                std::sort(pushed.begin(), pushed.end());
                pushed.erase(std::unique(pushed.begin(), pushed.end()), pushed.end());
                const ElementSet target_level = level_set(img.restricted(), c, q);
                if (!subset_of(pushed, target_level)) {
                    return failed("level-inclusion", "level-inclusion: f(level) = " +
                                                         render_set(*f.target(), pushed) + " not inside " +
                                                         render_set(*f.target(), target_level) + " at c = " +
                                                         c.str() + ", " + phi.q()[q]);
                }
            }
        }
        const CyclicReport r = classify_cyclic(img);
        return r.verdict ? holds : failed("image-cyclic", "image-cyclic: " + cyclic_failure(img, r, "image"));
    };

    c["cyclic-preimage"] = [](const Instance& in) {
        const GroupMap& f = map_of(in);
        const AlphaQFuzzySubset psi = alpha_restrict(subset(in, 0), in.alpha);
        const AlphaQFuzzySubset pre = preimage(f, psi);
        for (std::size_t q = 0; q < psi.q().size(); ++q) {
            for (const Grade& c : achieved_grades(psi.restricted(), q)) {
                const ElementSet target_level = level_set(psi.restricted(), c, q);
                ElementSet pulled;
                for (Elem x = 0; x < f.source()->order(); ++x) {
                    if (std::binary_search(target_level.begin(), target_level.end(), f(x))) {
                        pulled.push_back(x);
                    }
                }
                const ElementSet source_level = level_set(pre.restricted(), c, q);
                if (!subset_of(pulled, source_level)) {
                    return failed("level-inclusion", "level-inclusion: f^-1(level) = " +
                                                         render_set(*f.source(), pulled) + " not inside " +
                                                         render_set(*f.source(), source_level) + " at c = " +
                                                         c.str() + ", " + psi.q()[q]);
                }
            }
        }
        const CyclicReport r = classify_cyclic(pre);
        return r.verdict ? holds
                         : failed("preimage-cyclic", "preimage-cyclic: " + cyclic_failure(pre, r, "preimage"));
    };

    // Existence claims are evaluated through the universal statement they
    // deny, so a witness is an instance on which that statement fails.
    c["restricted-not-base"] = [](const Instance& in) {
        const CheckReport r = check_qfuzzy_subgroup(subset(in, 0));
        return r.verdict ? holds : failed("base-subgroup", r);
    };

    c["union-not-closed"] = [](const Instance& in) {
        const CheckReport r =
            check_alpha_subgroup(alpha_restrict(combine(Combine::union_, subset(in, 0), subset(in, 1)), in.alpha));
        return r.verdict ? holds : failed("union-subgroup", r);
    };

    return c;
}

const std::map<std::string, Evaluator, std::less<>>& conclusions()
{
    static const auto c = build_conclusions();
    return c;
}

}  // namespace

bool subset_hypothesis(const ClaimSpec& spec, const Instance& in)
{
    const std::string& id = spec.info.id;
    if (id == "alpha-intersection" || id == "alpha-image-preimage" || id == "single-condition") {
        return true;
    }
    if (id == "alpha-subgroup-inherit") {
        return check_qfuzzy_subgroup(subset(in, 0)).verdict;
    }
    if (id == "product-subgroup") {
        return alpha_subgroup(subset(in, 0), in.alpha) && alpha_subgroup(subset(in, 1), in.alpha);
    }
    if (id == "product-factor" || id == "product-either-factor") {
        if (!check_alpha_subgroup(product_of(in)).verdict) {
            return false;
        }
        if (id == "product-either-factor") {
            return true;
        }
        const AlphaQFuzzySubset phi = alpha_restrict(subset(in, 0), in.alpha);
        const AlphaQFuzzySubset psi = alpha_restrict(subset(in, 1), in.alpha);
        return dominates(phi, psi) || dominates(psi, phi);
    }
    for (std::size_t i = 0; i < spec.subset_count; ++i) {
        if (!alpha_subgroup(subset(in, i), in.alpha)) {
            return false;
        }
    }
    if (id == "abelian-image" || id == "abelian-preimage") {
        return classify_abelian(alpha_restrict(subset(in, 0), in.alpha)).verdict;
    }
    if (id == "cyclic-image" || id == "cyclic-preimage") {
        return classify_cyclic(alpha_restrict(subset(in, 0), in.alpha)).verdict;
    }
    return true;
}

Evaluation evaluate(const ClaimSpec& spec, const Instance& instance, bool check_subset_hypothesis)
{
    if (spec.needs_surjective && !map_of(instance).is_surjective()) {
        return unmet();
    }
    if (check_subset_hypothesis && !subset_hypothesis(spec, instance)) {
        return unmet();
    }
    return conclusions().find(spec.info.id)->second(instance);
}

}  // namespace detail

const std::vector<ClaimInfo>& claim_catalog()
{
    static const std::vector<ClaimInfo> infos = [] {
        std::vector<ClaimInfo> out;
        for (const auto& s : detail::claim_specs()) {
            out.push_back(s.info);
        }
        return out;
    }();
    return infos;
}

std::optional<ClaimInfo> find_claim(std::string_view id_or_alias)
{
    for (const auto& c : claim_catalog()) {
        if (c.id == id_or_alias || c.alias == id_or_alias) {
            return c;
        }
    }
    return std::nullopt;
}

std::vector<std::string> resolve_claim_ids(std::string_view id_or_alias)
{
    if (id_or_alias == "P4.11") {
        return {"complement-anti", "complement-literal"};
    }
    if (auto c = find_claim(id_or_alias)) {
        return {c->id};
    }
    throw std::invalid_argument("unknown claim '" + std::string(id_or_alias) + "'");
}

std::vector<std::string> all_claim_ids()
{
    std::vector<std::string> ids;
    for (const auto& c : claim_catalog()) {
        ids.push_back(c.id);
    }
    return ids;
}

bool expects_verification(const ClaimInfo& claim)
{
    return claim.expectation != Expectation::recorded;
}

Evaluation evaluate_claim(std::string_view claim_id, const Instance& instance)
{
    return detail::evaluate(detail::spec_for(claim_id), instance, true);
}

Counterexample materialize(std::string_view claim_id, const Instance& instance, const Evaluation& evaluation)
{
    const detail::ClaimSpec& spec = detail::spec_for(claim_id);
    Counterexample out;
    out.claim = spec.info.id;
    for (std::size_t i = 0; i < instance.subsets.size(); ++i) {
        const QFuzzySubset& s = instance.subsets[i];
        out.subsets.push_back({i < spec.roles.size() ? spec.roles[i] : "subset" + std::to_string(i), s.group()->name(),
                               s.q().labels(), s.flat()});
    }
    out.alpha = instance.alpha;
    if (instance.map) {
        MapRecord m;
        m.source = instance.map->source()->name();
        m.target = instance.map->target()->name();
        m.kind = instance.map->kind();
        for (Elem y : instance.map->images()) {
            m.images.push_back(instance.map->target()->label(y));
        }
        out.map = std::move(m);
    }
    out.condition = evaluation.condition;
    out.detail = evaluation.detail;
    out.lhs = evaluation.lhs;
    out.rhs = evaluation.rhs;
    return out;
}

ReplayResult replay(const Counterexample& cx)
{
    try {
        Instance in;
        in.alpha = cx.alpha;
        for (const auto& rec : cx.subsets) {
            in.subsets.emplace_back(standard_group(rec.group), QLabels(rec.q_labels), rec.grades);
        }
        if (cx.map) {
            const GroupPtr source = standard_group(cx.map->source);
            const GroupPtr target = standard_group(cx.map->target);
            std::vector<Elem> images;
            for (const auto& label : cx.map->images) {
                const auto y = target->find(label);
                if (!y) {
                    return {false, "map image '" + label + "' is not an element of " + target->name()};
                }
                images.push_back(*y);
            }
            in.map = make_map(source, target, std::move(images), cx.map->kind);
            // Re-anchor subsets on the rebuilt map groups so carriers match.
            for (auto& s : in.subsets) {
                if (*s.group() == *source) {
                    s = QFuzzySubset(source, s.q(), s.flat());
                } else if (*s.group() == *target) {
                    s = QFuzzySubset(target, s.q(), s.flat());
                }
            }
        }
        const Evaluation e = evaluate_claim(cx.claim, in);
        if (e.verdict != Verdict::fails) {
            return {false, e.verdict == Verdict::holds ? "conclusion holds on replay" : "hypothesis unmet on replay"};
        }
        if (e.detail != cx.detail) {
            return {false, "replay detail differs: " + e.detail};
        }
        return {true, e.detail};
    } catch (const std::exception& ex) {
        return {false, std::string("replay failed: ") + ex.what()};
    }
}

}  // namespace aqf
