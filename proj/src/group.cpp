#include "aqf/group.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <set>

namespace aqf {

std::string_view to_string(Axiom axiom)
{
    switch (axiom) {
    case Axiom::closure:
        return "closure";
    case Axiom::identity:
        return "identity";
    case Axiom::inverse:
        return "inverse";
    case Axiom::associativity:
        return "associativity";
    }
    return "?";
}

FiniteGroup FiniteGroup::build(std::string name, std::vector<std::string> element_names,
                               const std::vector<std::vector<Elem>>& table)
{
    const std::size_t n = element_names.size();
    if (n == 0) {
        throw std::invalid_argument("group '" + name + "' has no elements");
    }
    {
        std::set<std::string> seen;
        for (const auto& label : element_names) {
            if (!seen.insert(label).second) {
                throw std::invalid_argument("group '" + name + "' repeats element label '" + label + "'");
            }
        }
    }
    if (table.size() != n) {
        throw std::invalid_argument("group '" + name + "' table has " + std::to_string(table.size()) +
                                    " rows, expected " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (table[i].size() != n) {
            throw std::invalid_argument("group '" + name + "' table row " + std::to_string(i) + " has " +
                                        std::to_string(table[i].size()) + " entries, expected " +
                                        std::to_string(n));
        }
    }

    FiniteGroup g;
    g.name_ = std::move(name);
    g.names_ = std::move(element_names);
    g.table_.reserve(n * n);
    const auto lbl = [&](Elem x) { return g.names_[x]; };

    for (Elem i = 0; i < n; ++i) {
        for (Elem j = 0; j < n; ++j) {
            if (table[i][j] >= n) {
                throw GroupAxiomError(Axiom::closure, {i, j},
                                      "closure fails: " + lbl(i) + "*" + lbl(j) + " is not an element");
            }
            g.table_.push_back(table[i][j]);
        }
    }

    std::optional<Elem> identity;
    for (Elem e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (Elem i = 0; i < n && ok; ++i) {
            ok = g.mul(e, i) == i && g.mul(i, e) == i;
        }
        if (ok) {
            identity = e;
        }
    }
    if (!identity) {
        // Witness: the first element that breaks the first candidate's identity law.
        Elem i = 0;
        while (g.mul(0, i) == i && g.mul(i, 0) == i) {
            ++i;
        }
        throw GroupAxiomError(Axiom::identity, {0, i},
                              "identity fails: no two-sided identity (e.g. " + lbl(0) + " does not fix " + lbl(i) +
                                  ")");
    }
    g.identity_ = *identity;

    g.inverses_.assign(n, 0);
    for (Elem i = 0; i < n; ++i) {
        bool found = false;
        for (Elem j = 0; j < n && !found; ++j) {
            if (g.mul(i, j) == g.identity_ && g.mul(j, i) == g.identity_) {
                g.inverses_[i] = j;
                found = true;
            }
        }
        if (!found) {
            throw GroupAxiomError(Axiom::inverse, {i}, "inverse fails: " + lbl(i) + " has no two-sided inverse");
        }
    }

    for (Elem i = 0; i < n; ++i) {
        for (Elem j = 0; j < n; ++j) {
            const Elem ij = g.mul(i, j);
            for (Elem k = 0; k < n; ++k) {
                if (g.mul(ij, k) != g.mul(i, g.mul(j, k))) {
                    throw GroupAxiomError(Axiom::associativity, {i, j, k},
                                          "associativity fails at (" + lbl(i) + ", " + lbl(j) + ", " + lbl(k) +
                                              "): (xy)z = " + lbl(g.mul(ij, k)) +
                                              " but x(yz) = " + lbl(g.mul(i, g.mul(j, k))));
                }
            }
        }
    }
    return g;
}

FiniteGroup FiniteGroup::build(std::string name, std::vector<std::string> element_names,
                               const std::vector<std::vector<std::string>>& table)
{
    std::map<std::string, Elem> index;
    for (Elem i = 0; i < element_names.size(); ++i) {
        index.emplace(element_names[i], i);
    }
    std::vector<std::vector<Elem>> numeric(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        for (std::size_t j = 0; j < table[i].size(); ++j) {
            auto it = index.find(table[i][j]);
            if (it == index.end()) {
                throw GroupAxiomError(Axiom::closure, {i, j},
                                      "closure fails: table entry '" + table[i][j] + "' at row " +
                                          std::to_string(i) + ", column " + std::to_string(j) +
                                          " is not an element");
            }
            numeric[i].push_back(it->second);
        }
    }
    return build(std::move(name), std::move(element_names), numeric);
}

std::optional<Elem> FiniteGroup::find(std::string_view label) const
{
    for (Elem i = 0; i < names_.size(); ++i) {
        if (names_[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

bool FiniteGroup::is_abelian() const
{
    for (Elem i = 0; i < order(); ++i) {
        for (Elem j = i + 1; j < order(); ++j) {
            if (mul(i, j) != mul(j, i)) {
                return false;
            }
        }
    }
    return true;
}

namespace {

using Table = std::vector<std::vector<Elem>>;

FiniteGroup make_cyclic(std::size_t n)
{
    std::vector<std::string> names;
    Table table(n, std::vector<Elem>(n));
    for (Elem i = 0; i < n; ++i) {
        names.push_back(std::to_string(i));
        for (Elem j = 0; j < n; ++j) {
            table[i][j] = (i + j) % n;
        }
    }
    return FiniteGroup::build("cyclic-" + std::to_string(n), names, table);
}

// Elements r^k s^f at index f*n + k; s r = r^-1 s.
FiniteGroup make_dihedral(std::size_t n, std::string name)
{
    std::vector<std::string> names;
    for (std::size_t f = 0; f < 2; ++f) {
        for (std::size_t k = 0; k < n; ++k) {
            std::string label = k == 0 ? "" : (k == 1 ? "r" : "r" + std::to_string(k));
            if (f == 1) {
                label += "s";
            }
            names.push_back(label.empty() ? "e" : label);
        }
    }
    Table table(2 * n, std::vector<Elem>(2 * n));
    for (std::size_t a = 0; a < 2 * n; ++a) {
        for (std::size_t b = 0; b < 2 * n; ++b) {
            const std::size_t ka = a % n, fa = a / n, kb = b % n, fb = b / n;
            const std::size_t k = fa == 0 ? (ka + kb) % n : (ka + n - kb) % n;
            table[a][b] = ((fa + fb) % 2) * n + k;
        }
    }
    return FiniteGroup::build(std::move(name), names, table);
}

FiniteGroup make_klein4()
{
    // e, a, b, c is Z2 x Z2 under xor with a = 01, b = 10, c = 11.
    Table table(4, std::vector<Elem>(4));
    for (Elem i = 0; i < 4; ++i) {
        for (Elem j = 0; j < 4; ++j) {
            table[i][j] = i ^ j;
        }
    }
    return FiniteGroup::build("klein4", {"e", "a", "b", "c"}, table);
}

FiniteGroup make_quaternion8()
{
    // Index 2*unit + sign with units 1, i, j, k.
    // unit_mul[u][v] = (unit, sign) of u*v.
    constexpr int unit_mul[4][4][2] = {
        {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
        {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
        {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
        {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
    };
    Table table(8, std::vector<Elem>(8));
    for (Elem a = 0; a < 8; ++a) {
        for (Elem b = 0; b < 8; ++b) {
            const auto& [u, s] = unit_mul[a / 2][b / 2];
            table[a][b] = static_cast<Elem>(2 * u + (s + a % 2 + b % 2) % 2);
        }
    }
    return FiniteGroup::build("quaternion-8", {"1", "-1", "i", "-i", "j", "-j", "k", "-k"}, table);
}

GroupPtr atomic_group(std::string_view spec)
{
    if (spec == "trivial") {
        return std::make_shared<const FiniteGroup>(make_cyclic(1));
    }
    if (spec == "klein4") {
        return std::make_shared<const FiniteGroup>(make_klein4());
    }
    if (spec == "symmetric-3") {
        return std::make_shared<const FiniteGroup>(make_dihedral(3, "symmetric-3"));
    }
    if (spec == "dihedral-4") {
        return std::make_shared<const FiniteGroup>(make_dihedral(4, "dihedral-4"));
    }
    if (spec == "quaternion-8") {
        return std::make_shared<const FiniteGroup>(make_quaternion8());
    }
    constexpr std::string_view cyclic = "cyclic-";
    if (spec.substr(0, cyclic.size()) == cyclic) {
        const std::string_view digits = spec.substr(cyclic.size());
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
            throw std::invalid_argument("unknown group spec '" + std::string(spec) + "'");
        }
        if (n < 1) {
            throw std::invalid_argument("cyclic group order must be at least 1");
        }
        if (n > 4096) {
            throw std::invalid_argument("cyclic group order " + std::to_string(n) + " is too large");
        }
        return std::make_shared<const FiniteGroup>(make_cyclic(n));
    }
    throw std::invalid_argument("unknown group spec '" + std::string(spec) + "'");
}

}  // namespace

GroupPtr standard_group(std::string_view spec)
{
    if (auto star = spec.find('*'); star != std::string_view::npos) {
        const GroupPtr left = atomic_group(spec.substr(0, star));
        const GroupPtr right = standard_group(spec.substr(star + 1));
        return direct_product(*left, *right);
    }
    return atomic_group(spec);
}

GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h)
{
    const std::size_t n = g.order();
    const std::size_t m = h.order();
    std::vector<std::string> names;
    names.reserve(n * m);
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = 0; b < m; ++b) {
            names.push_back("(" + g.label(a) + "," + h.label(b) + ")");
        }
    }
    Table table(n * m, std::vector<Elem>(n * m));
    for (Elem x = 0; x < n * m; ++x) {
        for (Elem y = 0; y < n * m; ++y) {
            table[x][y] = g.mul(x / m, y / m) * m + h.mul(x % m, y % m);
        }
    }
    return std::make_shared<const FiniteGroup>(FiniteGroup::build(g.name() + "*" + h.name(), names, table));
}

std::vector<std::string> default_catalog()
{
    std::vector<std::string> names;
    for (int n = 2; n <= 12; ++n) {
        names.push_back("cyclic-" + std::to_string(n));
    }
    names.insert(names.end(), {"klein4", "symmetric-3", "dihedral-4", "quaternion-8", "cyclic-2*cyclic-2"});
    return names;
}

std::string_view to_string(MapKind kind)
{
    return kind == MapKind::homomorphism ? "homomorphism" : "anti-homomorphism";
}

std::optional<MapKind> parse_map_kind(std::string_view text)
{
    if (text == "homomorphism") {
        return MapKind::homomorphism;
    }
    if (text == "anti-homomorphism") {
        return MapKind::anti_homomorphism;
    }
    return std::nullopt;
}

bool GroupMap::is_surjective() const
{
    std::vector<bool> hit(target_->order(), false);
    for (Elem y : images_) {
        hit[y] = true;
    }
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

namespace {

Elem kind_product(const FiniteGroup& target, MapKind kind, Elem fx, Elem fy)
{
    return kind == MapKind::homomorphism ? target.mul(fx, fy) : target.mul(fy, fx);
}

}  // namespace

GroupMap make_map(GroupPtr source, GroupPtr target, std::vector<Elem> images, MapKind kind)
{
    if (!source || !target) {
        throw std::invalid_argument("map requires both groups");
    }
    if (images.size() != source->order()) {
        throw std::invalid_argument("map has " + std::to_string(images.size()) + " images, source '" +
                                    source->name() + "' has order " + std::to_string(source->order()));
    }
    for (Elem x = 0; x < images.size(); ++x) {
        if (images[x] >= target->order()) {
            throw std::invalid_argument("image of " + source->label(x) + " is not an element of '" +
                                        target->name() + "'");
        }
    }
    for (Elem x = 0; x < source->order(); ++x) {
        for (Elem y = 0; y < source->order(); ++y) {
            const Elem lhs = images[source->mul(x, y)];
            const Elem rhs = kind_product(*target, kind, images[x], images[y]);
            if (lhs != rhs) {
                throw MapEquationError(x, y,
                                       std::string(to_string(kind)) + " equation fails at (" + source->label(x) +
                                           ", " + source->label(y) + "): f(xy) = " + target->label(lhs) +
                                           " but expected " + target->label(rhs));
            }
        }
    }
    // Follows from the equation; kept as an explicit postcondition.
    if (images[source->identity()] != target->identity()) {
        throw MapEquationError(source->identity(), source->identity(), "map does not send identity to identity");
    }
    GroupMap f;
    f.source_ = std::move(source);
    f.target_ = std::move(target);
    f.images_ = std::move(images);
    f.kind_ = kind;
    return f;
}

ElementSet subgroup_closure(const FiniteGroup& g, const ElementSet& subset)
{
    std::vector<bool> member(g.order(), false);
    ElementSet members;
    const auto add = [&](Elem x) {
        if (!member[x]) {
            member[x] = true;
            members.push_back(x);
        }
    };
    add(g.identity());
    for (Elem x : subset) {
        add(x);
    }
    // Saturate under products; inverses come for free in a finite group.
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            add(g.mul(members[i], members[j]));
            add(g.mul(members[j], members[i]));
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

std::vector<Elem> generating_set(const FiniteGroup& g)
{
    std::vector<Elem> gens;
    ElementSet span = subgroup_closure(g, {});
    for (Elem x = 0; x < g.order(); ++x) {
        if (!std::binary_search(span.begin(), span.end(), x)) {
            gens.push_back(x);
            span = subgroup_closure(g, gens);
        }
    }
    return gens;
}

std::vector<GroupMap> enumerate_maps(const GroupPtr& source, const GroupPtr& target, MapKind kind,
                                     const MapEnumerationOptions& options)
{
    if (source->order() > options.max_source_order) {
        throw InfeasibleEnumeration("map enumeration from '" + source->name() + "' (order " +
                                    std::to_string(source->order()) + ") exceeds the source-order guard " +
                                    std::to_string(options.max_source_order));
    }
    const FiniteGroup& s = *source;
    const FiniteGroup& t = *target;
    const std::vector<Elem> gens = generating_set(s);
    constexpr Elem unset = static_cast<Elem>(-1);

    std::vector<GroupMap> result;
    std::vector<Elem> choice(gens.size(), 0);
    std::vector<Elem> images(s.order());
    while (true) {
        std::fill(images.begin(), images.end(), unset);
        images[s.identity()] = t.identity();
        std::deque<Elem> queue{s.identity()};
        bool consistent = true;
        while (!queue.empty() && consistent) {
            const Elem x = queue.front();
            queue.pop_front();
            for (std::size_t gi = 0; gi < gens.size() && consistent; ++gi) {
                const Elem y = s.mul(x, gens[gi]);
                const Elem fy = kind_product(t, kind, images[x], choice[gi]);
                if (images[y] == unset) {
                    images[y] = fy;
                    queue.push_back(y);
                } else if (images[y] != fy) {
                    consistent = false;
                }
            }
        }
        if (consistent) {
            try {
                result.push_back(make_map(source, target, images, kind));
            } catch (const MapEquationError&) {
            }
        }
        std::size_t pos = 0;
        while (pos < choice.size() && ++choice[pos] == t.order()) {
            choice[pos] = 0;
            ++pos;
        }
        if (pos == choice.size()) {
            break;
        }
    }
    std::sort(result.begin(), result.end(),
              [](const GroupMap& a, const GroupMap& b) { return a.images() < b.images(); });
    return result;
}

ElementSet fiber(const GroupMap& f, Elem y)
{
    ElementSet xs;
    for (Elem x = 0; x < f.images().size(); ++x) {
        if (f(x) == y) {
            xs.push_back(x);
        }
    }
    return xs;
}

CrispSubsetAnalysis analyze_subset(const FiniteGroup& g, const ElementSet& subset)
{
    ElementSet input = subset;
    std::sort(input.begin(), input.end());
    input.erase(std::unique(input.begin(), input.end()), input.end());
    for (Elem x : input) {
        if (x >= g.order()) {
            throw std::invalid_argument("element index " + std::to_string(x) + " is not in '" + g.name() + "'");
        }
    }

    CrispSubsetAnalysis out;
    out.closure = subgroup_closure(g, input);
    out.is_subgroup = !input.empty() && input == out.closure;

    out.is_abelian = true;
    for (Elem a : out.closure) {
        for (Elem b : out.closure) {
            if (g.mul(a, b) != g.mul(b, a)) {
                out.is_abelian = false;
            }
        }
    }
    for (Elem candidate : out.closure) {
        if (subgroup_closure(g, {candidate}).size() == out.closure.size()) {
            out.is_cyclic = true;
            out.generator = candidate;
            break;
        }
    }
    return out;
}

std::vector<ElementSet> all_subgroups(const FiniteGroup& g)
{
    std::set<ElementSet> found;
    std::vector<ElementSet> frontier;
    for (Elem x = 0; x < g.order(); ++x) {
        ElementSet cyclic = subgroup_closure(g, {x});
        if (found.insert(cyclic).second) {
            frontier.push_back(std::move(cyclic));
        }
    }
    const std::vector<ElementSet> cyclics(found.begin(), found.end());
    // Every subgroup is a join of cyclic subgroups.
    while (!frontier.empty()) {
        std::vector<ElementSet> next;
        for (const auto& h : frontier) {
            for (const auto& c : cyclics) {
                if (std::includes(h.begin(), h.end(), c.begin(), c.end())) {
                    continue;
                }
                ElementSet joined = h;
                joined.insert(joined.end(), c.begin(), c.end());
                joined = subgroup_closure(g, joined);
                if (found.insert(joined).second) {
                    next.push_back(std::move(joined));
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<ElementSet> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const ElementSet& a, const ElementSet& b) { return a.size() < b.size(); });
    return out;
}

}  // namespace aqf
