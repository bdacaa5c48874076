#include "aqf/theorem_lab.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "lab_internal.hpp"

namespace aqf {

std::vector<Grade> default_grade_pool()
{
    return {Grade(0, 1), Grade(9, 100), Grade(1, 10), Grade(1, 5), Grade(3, 10), Grade(2, 5), Grade(1, 2), Grade(1, 1)};
}

void AuditConfig::validate() const
{
    if (catalog.empty()) {
        throw std::invalid_argument("audit catalog is empty");
    }
    if (q_size == 0) {
        throw std::invalid_argument("q_size must be positive");
    }
    if (trials == 0) {
        throw std::invalid_argument("trials must be at least 1");
    }
    if (grade_pool.empty()) {
        throw std::invalid_argument("grade pool is empty");
    }
    if (attempt_factor == 0) {
        throw std::invalid_argument("attempt_factor must be positive");
    }
}

std::string_view to_string(AuditStatus status)
{
    switch (status) {
    case AuditStatus::verified_exhaustive:
        return "verified-exhaustive";
    case AuditStatus::verified_sampled:
        return "verified-sampled";
    case AuditStatus::refuted:
        return "refuted";
    case AuditStatus::recorded:
        return "recorded";
    }
    return "recorded";
}

std::optional<AuditStatus> parse_audit_status(std::string_view text)
{
    for (auto s : {AuditStatus::verified_exhaustive, AuditStatus::verified_sampled, AuditStatus::refuted,
                   AuditStatus::recorded}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    return std::nullopt;
}

std::size_t Rng::below(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("Rng::below(0)");
    }
    const std::uint64_t bound = n;
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x >= threshold) {
            return static_cast<std::size_t>(x % bound);
        }
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view s)
{
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    // Separator so ("ab", "c") and ("a", "bc") differ.
    h ^= 0xff;
    h *= 0x100000001b3ULL;
    return h;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::string_view claim, std::string_view group, std::uint64_t trial)
{
    std::uint64_t h = fnv1a(fnv1a(0xcbf29ce484222325ULL, claim), group);
    return splitmix64(splitmix64(splitmix64(seed) ^ h) ^ trial);
}

QFuzzySubset random_qfuzzy(const GroupPtr& group, const QLabels& q, Rng& rng, const std::vector<Grade>& pool)
{
    if (pool.empty()) {
        throw std::invalid_argument("grade pool is empty");
    }
    std::vector<Grade> flat(group->order() * q.size());
    for (auto& g : flat) {
        g = pool[rng.below(pool.size())];
    }
    return QFuzzySubset(group, q, std::move(flat));
}

namespace {

// Grade of x is the grade of the deepest chain member containing it.
std::vector<Grade> chain_grades(std::size_t order, const std::vector<ElementSet>& chain,
                                const std::vector<Grade>& grades)
{
    if (chain.empty() || chain.size() != grades.size()) {
        throw std::invalid_argument("chain and grade sequence must be nonempty and of equal length");
    }
    if (chain.front().size() != order) {
        throw std::invalid_argument("chain must start at the whole group");
    }
    for (std::size_t i = 1; i < chain.size(); ++i) {
        if (!std::includes(chain[i - 1].begin(), chain[i - 1].end(), chain[i].begin(), chain[i].end())) {
            throw std::invalid_argument("chain is not descending");
        }
        if (grades[i] < grades[i - 1]) {
            throw std::invalid_argument("chain grades must be weakly increasing");
        }
    }
    std::vector<Grade> out(order, grades.front());
    for (std::size_t i = 1; i < chain.size(); ++i) {
        for (Elem x : chain[i]) {
            out[x] = grades[i];
        }
    }
    return out;
}

std::vector<Grade> random_chain_grades(const FiniteGroup& g, const std::vector<ElementSet>& subgroups, Rng& rng,
                                       const std::vector<Grade>& pool)
{
    std::vector<ElementSet> chain{subgroups.back()};
    for (;;) {
        const ElementSet& current = chain.back();
        std::vector<const ElementSet*> below;
        for (const auto& h : subgroups) {
            if (h.size() < current.size() && std::includes(current.begin(), current.end(), h.begin(), h.end())) {
                below.push_back(&h);
            }
        }
        if (below.empty() || rng.below(3) == 0) {
            break;
        }
        chain.push_back(*below[rng.below(below.size())]);
    }
    std::vector<Grade> grades;
    for (std::size_t i = 0; i < chain.size(); ++i) {
        grades.push_back(pool[rng.below(pool.size())]);
    }
    std::sort(grades.begin(), grades.end());
    return chain_grades(g.order(), chain, grades);
}

}  // namespace

QFuzzySubset chain_subset(const GroupPtr& group, const QLabels& q, const std::vector<ElementSet>& chain,
                          const std::vector<Grade>& grades)
{
    const std::vector<Grade> column = chain_grades(group->order(), chain, grades);
    std::vector<Grade> flat;
    flat.reserve(column.size() * q.size());
    for (const Grade& g : column) {
        flat.insert(flat.end(), q.size(), g);
    }
    return QFuzzySubset(group, q, std::move(flat));
}

QFuzzySubset random_qfuzzy_subgroup(const GroupPtr& group, const std::vector<ElementSet>& subgroups,
                                    const QLabels& q, Rng& rng, const std::vector<Grade>& pool)
{
    if (pool.empty()) {
        throw std::invalid_argument("grade pool is empty");
    }
    const std::size_t n = group->order();
    std::vector<Grade> flat(n * q.size());
    for (std::size_t label = 0; label < q.size(); ++label) {
        const std::vector<Grade> column = random_chain_grades(*group, subgroups, rng, pool);
        for (Elem x = 0; x < n; ++x) {
            flat[x * q.size() + label] = column[x];
        }
    }
    QFuzzySubset out(group, q, std::move(flat));
    if (!check_qfuzzy_subgroup(out).verdict) {
        throw std::logic_error("generated subset on " + group->name() + " is not a Q-fuzzy subgroup");
    }
    return out;
}

QFuzzySubset random_qfuzzy_subgroup(const GroupPtr& group, const QLabels& q, Rng& rng, const std::vector<Grade>& pool)
{
    return random_qfuzzy_subgroup(group, all_subgroups(*group), q, rng, pool);
}

namespace {

using detail::ClaimSpec;
using detail::InputShape;

struct GroupEntry {
    GroupPtr group;
    std::vector<ElementSet> subgroups;
    GroupPtr square;  // G * G, built on demand
};

struct Context {
    const AuditConfig& config;
    QLabels q;
    std::vector<GroupEntry> groups;
    // maps[kind][source][target]
    std::vector<std::vector<std::vector<std::vector<GroupMap>>>> maps;
};

bool uses_maps(InputShape s)
{
    return s == InputShape::map_source || s == InputShape::map_target || s == InputShape::map_both;
}

Context build_context(const AuditConfig& config, const std::vector<const ClaimSpec*>& specs)
{
    Context ctx{config, QLabels::numbered(config.q_size), {}, {}};
    bool need_maps = false;
    bool need_homs = false;
    bool need_products = false;
    for (const ClaimSpec* s : specs) {
        need_maps = need_maps || uses_maps(s->shape);
        need_homs = need_homs || s->all_map_kinds;
        need_products = need_products || s->shape == InputShape::product;
    }
    std::size_t max_order = 0;
    for (const auto& name : config.catalog) {
        GroupEntry e;
        e.group = standard_group(name);
        e.subgroups = all_subgroups(*e.group);
        if (need_products) {
            e.square = direct_product(*e.group, *e.group);
        }
        max_order = std::max(max_order, e.group->order());
        ctx.groups.push_back(std::move(e));
    }
    if (need_maps) {
        const std::size_t n = ctx.groups.size();
        ctx.maps.resize(2);
        MapEnumerationOptions options;
        options.max_source_order = std::max(options.max_source_order, max_order);
        for (MapKind kind : {MapKind::homomorphism, MapKind::anti_homomorphism}) {
            if (kind == MapKind::homomorphism && !need_homs) {
                continue;
            }
            auto& table = ctx.maps[static_cast<std::size_t>(kind)];
            table.assign(n, std::vector<std::vector<GroupMap>>(n));
            for (std::size_t s = 0; s < n; ++s) {
                for (std::size_t t = 0; t < n; ++t) {
                    table[s][t] = enumerate_maps(ctx.groups[s].group, ctx.groups[t].group, kind, options);
                }
            }
        }
    }
    return ctx;
}

QFuzzySubset draw_subgroup(const Context& ctx, std::size_t gi, Rng& rng)
{
    const GroupEntry& e = ctx.groups[gi];
    return random_qfuzzy_subgroup(e.group, e.subgroups, ctx.q, rng, ctx.config.grade_pool);
}

QFuzzySubset draw_any(const Context& ctx, std::size_t gi, Rng& rng)
{
    return random_qfuzzy(ctx.groups[gi].group, ctx.q, rng, ctx.config.grade_pool);
}

Instance draw_instance(const ClaimSpec& spec, const Context& ctx, std::size_t gi, std::size_t attempt, Rng& rng)
{
    Instance in;
    for (std::size_t i = 0; i < spec.subset_count; ++i) {
        bool subgroup = true;
        switch (spec.shape) {
        case InputShape::subsets:
        case InputShape::map_both:
            subgroup = false;
            break;
        case InputShape::mixed:
            subgroup = attempt % 2 == 0;
            break;
        case InputShape::product:
            subgroup = !spec.product_mixed || rng.below(2) == 0;
            break;
        default:
            break;
        }
        in.subsets.push_back(subgroup ? draw_subgroup(ctx, gi, rng) : draw_any(ctx, gi, rng));
    }
    in.alpha = ctx.config.grade_pool[rng.below(ctx.config.grade_pool.size())];
    if (spec.shape == InputShape::product) {
        in.product_group = ctx.groups[gi].square;
    }
    return in;
}

struct TrialOutcome {
    bool evaluated = false;
    std::optional<Counterexample> failure;
};

TrialOutcome run_map_trial(const ClaimSpec& spec, const Context& ctx, std::size_t gi, Instance& in, Rng& rng)
{
    TrialOutcome out;
    const std::size_t n = ctx.groups.size();
    std::vector<MapKind> kinds{MapKind::anti_homomorphism};
    if (spec.all_map_kinds) {
        kinds.insert(kinds.begin(), MapKind::homomorphism);
    }
    for (std::size_t other = 0; other < n; ++other) {
        if (spec.shape == InputShape::map_both) {
            in.subsets.erase(in.subsets.begin() + 1, in.subsets.end());
            in.subsets.push_back(draw_any(ctx, other, rng));
        }
        for (MapKind kind : kinds) {
            const auto& table = ctx.maps[static_cast<std::size_t>(kind)];
            const auto& maps = spec.shape == InputShape::map_target ? table[other][gi] : table[gi][other];
            for (const GroupMap& f : maps) {
                in.map = f;
                const Evaluation e = detail::evaluate(spec, in, false);
                if (e.verdict == Verdict::hypothesis_unmet) {
                    continue;
                }
                out.evaluated = true;
                if (e.verdict == Verdict::fails) {
                    out.failure = materialize(spec.info.id, in, e);
                    return out;
                }
            }
        }
    }
    return out;
}

AuditStatus sampled_status(const ClaimSpec& spec, const AuditReport& r)
{
    if (spec.info.expectation == Expectation::recorded) {
        return AuditStatus::recorded;
    }
    return r.passes == r.trials ? AuditStatus::verified_sampled : AuditStatus::refuted;
}

std::string search_note(const SearchResult& s)
{
    if (s.witness) {
        return "bounded search: witness found on " + s.witness->subsets.front().group + " after " +
               std::to_string(s.instances) + " instances";
    }
    if (!s.skipped.empty() && s.searched.empty()) {
        return "bounded search: skipped, assignment space exceeds the search bound";
    }
    std::string note = "bounded search: no witness in " + std::to_string(s.instances) + " instances";
    if (!s.skipped.empty()) {
        note += " (" + std::to_string(s.skipped.size()) + " groups over the bound)";
    }
    return note;
}

AuditReport run_sampled(const ClaimSpec& spec, const Context& ctx, std::size_t gi)
{
    const AuditConfig& cfg = ctx.config;
    const std::string& gname = ctx.groups[gi].group->name();
    AuditReport r;
    r.claim = spec.info.id;
    r.alias = spec.info.alias;
    r.group = gname;
    const std::size_t max_attempts = cfg.trials * cfg.attempt_factor;
    for (std::size_t attempt = 0; r.trials < cfg.trials && attempt < max_attempts; ++attempt) {
        Rng rng(derive_seed(cfg.seed, spec.info.id, gname, attempt));
        Instance in = draw_instance(spec, ctx, gi, attempt, rng);
        TrialOutcome outcome;
        if (uses_maps(spec.shape)) {
            if (detail::subset_hypothesis(spec, in)) {
                outcome = run_map_trial(spec, ctx, gi, in, rng);
            }
        } else {
            const Evaluation e = detail::evaluate(spec, in, true);
            outcome.evaluated = e.verdict != Verdict::hypothesis_unmet;
            if (e.verdict == Verdict::fails) {
                outcome.failure = materialize(spec.info.id, in, e);
            }
        }
        if (!outcome.evaluated) {
            ++r.filtered;
            continue;
        }
        ++r.trials;
        if (outcome.failure) {
            if (r.failures.size() < cfg.max_recorded_failures) {
                r.failures.push_back(std::move(*outcome.failure));
            }
        } else {
            ++r.passes;
        }
    }
    r.status = sampled_status(spec, r);
    if (r.trials == 0) {
        r.note = "no draw met the hypothesis in " + std::to_string(max_attempts) + " attempts";
    } else if (r.trials < cfg.trials) {
        r.note = "hypothesis met in " + std::to_string(r.trials) + " of " + std::to_string(max_attempts) +
                 " attempts";
    }
    if (spec.info.id == "complement-literal") {
        AuditConfig local = cfg;
        local.catalog = {gname};
        SearchResult s = search_counterexample(spec.info.id, local);
        if (s.witness) {
            r.witnesses.push_back(std::move(*s.witness));
            s.witness = r.witnesses.back();
        }
        r.note += (r.note.empty() ? "" : "; ") + search_note(s);
    }
    if (spec.info.id == "product-either-factor") {
        r.note += std::string(r.note.empty() ? "" : "; ") + "weak disjunctive reading; interpretation-dependent";
    }
    return r;
}

AuditReport run_existence(const ClaimSpec& spec, const AuditConfig& cfg)
{
    AuditReport r;
    r.claim = spec.info.id;
    r.alias = spec.info.alias;
    r.group = "catalog";
    SearchResult s = search_counterexample(spec.info.id, cfg);
    r.note = search_note(s);
    if (s.witness) {
        r.witnesses.push_back(std::move(*s.witness));
        r.status = AuditStatus::verified_exhaustive;
    } else {
        r.status = AuditStatus::refuted;
    }
    return r;
}

}  // namespace

std::vector<AuditReport> audit(const std::vector<std::string>& claims, const AuditConfig& config)
{
    config.validate();
    if (claims.empty()) {
        throw std::invalid_argument("no claims requested");
    }
    std::set<std::string> wanted;
    for (const auto& c : claims) {
        for (auto& id : resolve_claim_ids(c)) {
            wanted.insert(std::move(id));
        }
    }
    std::vector<const ClaimSpec*> specs;
    for (const auto& s : detail::claim_specs()) {
        if (wanted.count(s.info.id)) {
            specs.push_back(&s);
        }
    }
    const Context ctx = build_context(config, specs);

    struct Task {
        const ClaimSpec* spec;
        std::size_t group;  // ignored for existence claims
    };
    std::vector<Task> tasks;
    for (const ClaimSpec* s : specs) {
        if (s->shape == InputShape::search_only) {
            tasks.push_back({s, 0});
        } else {
            for (std::size_t g = 0; g < ctx.groups.size(); ++g) {
                tasks.push_back({s, g});
            }
        }
    }

    std::vector<AuditReport> reports(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) {
            try {
                const Task& t = tasks[i];
                reports[i] = t.spec->shape == InputShape::search_only ? run_existence(*t.spec, config)
                                                                       : run_sampled(*t.spec, ctx, t.group);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(tasks.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return reports;
}

KleinExample klein4_example()
{
    const GroupPtr g = standard_group("klein4");
    const Grade two(1, 5), four(2, 5), three(3, 10);
    return {g, QFuzzySubset(g, QLabels({"q"}), std::vector<Grade>{two, four, four, three}), Grade(9, 100)};
}

CyclicUnionExample cyclic12_example()
{
    const GroupPtr g = standard_group("cyclic-12");
    const QLabels q({"q"});
    std::vector<Grade> theta, sigma, pi;
    for (Elem x = 0; x < 12; ++x) {
        theta.push_back(x % 3 == 0 ? Grade(2, 5) : Grade::zero());
        sigma.push_back(x % 2 == 0 ? Grade(1, 5) : Grade(1, 10));
        pi.push_back(x % 2 == 0 ? Grade::one() : Grade::zero());
    }
    return {g, QFuzzySubset(g, q, theta), QFuzzySubset(g, q, sigma), QFuzzySubset(g, q, pi)};
}

namespace {

void expect(bool ok, const std::string& what)
{
    if (!ok) {
        throw ExampleDivergence(what);
    }
}

void expect_inequality(const Inequality& ineq, const Grade& lhs, const Grade& rhs, const std::string& what)
{
    expect(ineq.lhs == lhs && ineq.rhs == rhs && !ineq.holds(),
           what + ": expected lhs = " + lhs.str() + " < rhs = " + rhs.str() + ", got lhs = " + ineq.lhs.str() +
               ", rhs = " + ineq.rhs.str());
}

Counterexample witness_for(std::string_view claim, Instance in)
{
    const Evaluation e = evaluate_claim(claim, in);
    expect(e.verdict == Verdict::fails, std::string(claim) + " does not fail on the example inputs");
    return materialize(claim, in, e);
}

AuditReport reproduce_klein()
{
    const KleinExample ex = klein4_example();
    const FiniteGroup& g = *ex.group;
    AuditReport r{"klein4-alpha", "4.5", g.name(), 0, 0, 0, {}, {}, AuditStatus::verified_exhaustive, {}};

    const CheckReport base = check_qfuzzy_subgroup(ex.theta);
    expect(!base.verdict, "theta on klein4 unexpectedly passes the Q-fuzzy subgroup check");
    const Elem a = *g.find("a");
    const Elem b = *g.find("b");
    const Inequality pair = closure_inequality(ex.theta, a, b, 0);
    expect_inequality(pair, Grade(3, 10), Grade(2, 5), "closure at (a, b, q)");
    r.trials += 2;

    const AlphaQFuzzySubset cut = alpha_restrict(ex.theta, ex.alpha);
    expect(cut.restricted() == QFuzzySubset::constant(ex.group, ex.theta.q(), ex.alpha),
           "restriction at 9/100 is not constant");
    const CheckReport restricted = check_alpha_subgroup(cut);
    expect(restricted.verdict && restricted.forms_agree, "restriction at 9/100 fails the alpha-subgroup check");
    r.trials += 2;
    r.passes = r.trials;

    r.witnesses.push_back(witness_for("restricted-not-base", {{ex.theta}, ex.alpha, std::nullopt, nullptr}));
    r.note = "base " + render(pair, g, ex.theta.q()) + "; first base violation " + base.detail +
             "; restriction at alpha = " + ex.alpha.text() + " passes both subgroup forms";
    return r;
}

AuditReport reproduce_cyclic()
{
    const CyclicUnionExample ex = cyclic12_example();
    const FiniteGroup& g = *ex.group;
    const Grade one = Grade::one();
    AuditReport r{"cyclic12-union", "4.10", g.name(), 0, 0, 0, {}, {}, AuditStatus::verified_exhaustive, {}};

    for (const auto& [name, t] : {std::pair{"theta", &ex.theta}, {"sigma", &ex.sigma}, {"pi", &ex.pi}}) {
        expect(check_alpha_subgroup(alpha_restrict(*t, one)).verdict, std::string(name) + " fails the subgroup check");
        ++r.trials;
    }
    const QFuzzySubset ts = combine(Combine::union_, ex.theta, ex.sigma);
    const CheckReport ts_check = check_alpha_subgroup(alpha_restrict(ts, one));
    expect(!ts_check.verdict, "union of theta and sigma unexpectedly passes");
    expect(ts(3, 0) == Grade(2, 5) && ts(2, 0) == Grade(1, 5) && ts(1, 0) == Grade(1, 10),
           "union grades at 3, 2, 1 differ from 2/5, 1/5, 1/10");
    const Inequality pair = difference_inequality(ts, 3, 2, 0);
    expect_inequality(pair, Grade(1, 10), Grade(1, 5), "difference at (3, 2, q)");
    r.trials += 2;

    const QFuzzySubset sp = combine(Combine::union_, ex.sigma, ex.pi);
    expect(check_alpha_subgroup(alpha_restrict(sp, one)).verdict, "union of sigma and pi fails the subgroup check");
    ++r.trials;
    r.passes = r.trials;

    r.witnesses.push_back(witness_for("union-not-closed", {{ex.theta, ex.sigma}, one, std::nullopt, nullptr}));
    r.note = "union(theta, sigma) " + render(pair, g, ts.q()) + "; first violation " + ts_check.detail +
             "; theta, sigma, pi and union(sigma, pi) pass";
    return r;
}

}  // namespace

AuditReport reproduce_example(std::string_view id)
{
    if (id == "klein4-alpha" || id == "4.5" || id == "example-4.5") {
        return reproduce_klein();
    }
    if (id == "cyclic12-union" || id == "4.10" || id == "example-4.10") {
        return reproduce_cyclic();
    }
    throw std::invalid_argument("unknown example '" + std::string(id) + "'");
}

}  // namespace aqf
