#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "aqf/group.hpp"
#include "oracles.hpp"

using namespace aqf;

namespace {

std::vector<std::vector<std::string>> klein_table()
{
    return {{"e", "a", "b", "c"}, {"a", "e", "c", "b"}, {"b", "c", "e", "a"}, {"c", "b", "a", "e"}};
}

// Searches every bijection h -> g for one carrying h's table onto g's.
bool isomorphic(const FiniteGroup& g, const FiniteGroup& h)
{
    if (g.order() != h.order()) {
        return false;
    }
    std::vector<Elem> perm(g.order());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (Elem x = 0; x < h.order() && ok; ++x) {
            for (Elem y = 0; y < h.order() && ok; ++y) {
                ok = perm[h.mul(x, y)] == g.mul(perm[x], perm[y]);
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<Elem> inversion(const FiniteGroup& g)
{
    std::vector<Elem> out;
    for (Elem x = 0; x < g.order(); ++x) {
        out.push_back(g.inverse(x));
    }
    return out;
}

}  // namespace

TEST_CASE("klein four table builds a valid group")
{
    const FiniteGroup g = FiniteGroup::build("k", {"e", "a", "b", "c"}, klein_table());
    CHECK(g.order() == 4);
    CHECK(g.label(g.identity()) == "e");
    CHECK(g.is_abelian());
    for (Elem x = 0; x < 4; ++x) {
        CHECK(g.inverse(x) == x);
    }
}

TEST_CASE("trivial table builds the trivial group")
{
    const FiniteGroup g = FiniteGroup::build("t", {"e"}, std::vector<std::vector<Elem>>{{0}});
    CHECK(g.order() == 1);
    CHECK(g.identity() == 0);
}

TEST_CASE("corrupted klein table is rejected with a genuine witness")
{
    // ab = a instead of c; closure, identity and inverses survive.
    std::vector<std::vector<Elem>> t{{0, 1, 2, 3}, {1, 0, 1, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    try {
        FiniteGroup::build("k", {"e", "a", "b", "c"}, t);
        FAIL("corrupted table accepted");
    } catch (const GroupAxiomError& e) {
        REQUIRE(e.axiom() == Axiom::associativity);
        REQUIRE(e.witness().size() == 3);
        const Elem i = e.witness()[0], j = e.witness()[1], k = e.witness()[2];
        CHECK(t[t[i][j]][k] != t[i][t[j][k]]);
    }
}

TEST_CASE("associativity failure reports a triple that really fails")
{
    // Latin square with identity 0 that is not associative (order 5 loop).
    const std::vector<std::vector<Elem>> t{
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
        FiniteGroup::build("loop", {"0", "1", "2", "3", "4"}, t);
        FAIL("non-associative table accepted");
    } catch (const GroupAxiomError& e) {
        REQUIRE(e.axiom() == Axiom::associativity);
        REQUIRE(e.witness().size() == 3);
        const Elem i = e.witness()[0], j = e.witness()[1], k = e.witness()[2];
        CHECK(t[t[i][j]][k] != t[i][t[j][k]]);
    }
}

TEST_CASE("out-of-range entries violate closure")
{
    CHECK_THROWS_AS(FiniteGroup::build("bad", {"0", "1"}, std::vector<std::vector<Elem>>{{0, 1}, {1, 2}}),
                    GroupAxiomError);
    CHECK_THROWS_AS(FiniteGroup::build("dup", {"x", "x"}, std::vector<std::vector<Elem>>{{0, 1}, {1, 0}}),
                    std::invalid_argument);
}

TEST_CASE("standard catalog groups have the documented shape")
{
    const GroupPtr c12 = standard_group("cyclic-12");
    CHECK(c12->order() == 12);
    CHECK(c12->identity() == 0);
    CHECK(c12->label(5) == "5");

    const GroupPtr k = standard_group("klein4");
    CHECK(k->labels() == std::vector<std::string>{"e", "a", "b", "c"});
    for (Elem x = 0; x < 4; ++x) {
        CHECK(k->inverse(x) == x);
    }
    CHECK(k->label(k->mul(*k->find("a"), *k->find("b"))) == "c");

    const GroupPtr s3 = standard_group("symmetric-3");
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    CHECK_FALSE(oracle::commutative(*s3));
    CHECK(s3->label(s3->mul(*s3->find("s"), *s3->find("r"))) == "r2s");

    CHECK(standard_group("dihedral-4")->order() == 8);
    CHECK_FALSE(standard_group("quaternion-8")->is_abelian());
    CHECK(standard_group("trivial")->order() == 1);
    CHECK_THROWS_AS(standard_group("cyclic-0"), std::invalid_argument);
    CHECK_THROWS_AS(standard_group("mystery"), std::invalid_argument);

    for (const auto& name : default_catalog()) {
        const GroupPtr g = standard_group(name);
        CHECK(g->name() == name);
        CHECK(g->is_abelian() == oracle::commutative(*g));
        CHECK(g->identity() == oracle::identity(*g));
        for (Elem x = 0; x < g->order(); ++x) {
            CHECK(g->inverse(x) == oracle::inverse(*g, x));
        }
    }
}

TEST_CASE("quaternion relations hold")
{
    const GroupPtr q = standard_group("quaternion-8");
    const auto el = [&](const char* l) { return *q->find(l); };
    CHECK(q->mul(el("i"), el("j")) == el("k"));
    CHECK(q->mul(el("j"), el("i")) == el("-k"));
    CHECK(q->mul(el("i"), el("i")) == el("-1"));
}

TEST_CASE("direct products")
{
    const GroupPtr k = standard_group("klein4");
    const GroupPtr kt = direct_product(*k, *standard_group("trivial"));
    CHECK(kt->order() == 4);
    CHECK(kt->label(0) == "(e,0)");
    // Relabel (x,0) -> x and compare tables entry-wise.
    for (Elem x = 0; x < 4; ++x) {
        for (Elem y = 0; y < 4; ++y) {
            CHECK(kt->mul(x, y) == k->mul(x, y));
        }
    }

    const GroupPtr c2c2 = standard_group("cyclic-2*cyclic-2");
    CHECK(c2c2->order() == 4);
    for (Elem x = 0; x < 4; ++x) {
        CHECK(c2c2->mul(x, x) == c2c2->identity());
    }
    CHECK(isomorphic(*k, *c2c2));
    CHECK_FALSE(isomorphic(*k, *standard_group("cyclic-4")));

    const GroupPtr c2c3 = direct_product(*standard_group("cyclic-2"), *standard_group("cyclic-3"));
    CHECK(c2c3->order() == 6);
    CHECK(oracle::commutative(*c2c3));
    CHECK(c2c3->label(4) == "(1,1)");  // row-major in (G, G2)
}

TEST_CASE("make_map validates the kind equation")
{
    const GroupPtr k = standard_group("klein4");
    CHECK_NOTHROW(make_map(k, k, {0, 1, 2, 3}, MapKind::homomorphism));

    const GroupPtr s3 = standard_group("symmetric-3");
    const auto inv = inversion(*s3);
    CHECK(oracle::equation_holds(*s3, *s3, inv, MapKind::anti_homomorphism));
    CHECK_NOTHROW(make_map(s3, s3, inv, MapKind::anti_homomorphism));
    try {
        make_map(s3, s3, inv, MapKind::homomorphism);
        FAIL("inversion accepted as a homomorphism of a non-abelian group");
    } catch (const MapEquationError& e) {
        CHECK(inv[s3->mul(e.x(), e.y())] != s3->mul(inv[e.x()], inv[e.y()]));
        CHECK(s3->mul(e.x(), e.y()) != s3->mul(e.y(), e.x()));
    }
    CHECK_THROWS_AS(make_map(k, k, {0, 1, 2}, MapKind::homomorphism), std::invalid_argument);
}

TEST_CASE("map enumeration small counts")
{
    const GroupPtr c2 = standard_group("cyclic-2");
    const GroupPtr c3 = standard_group("cyclic-3");
    CHECK(enumerate_maps(c2, c2, MapKind::homomorphism).size() == 2);
    CHECK(enumerate_maps(c2, c3, MapKind::homomorphism).size() == 1);
    const GroupPtr k = standard_group("klein4");
    const auto homs = enumerate_maps(k, k, MapKind::homomorphism);
    const auto antis = enumerate_maps(k, k, MapKind::anti_homomorphism);
    REQUIRE(homs.size() == antis.size());
    for (std::size_t i = 0; i < homs.size(); ++i) {
        CHECK(homs[i].images() == antis[i].images());
    }
    CHECK(homs.size() == 16);  // 2x2 matrices over GF(2)
}

TEST_CASE("map enumeration matches exhaustive assignment and composition with inversion")
{
    for (const auto& sname : default_catalog()) {
        const GroupPtr s = standard_group(sname);
        if (s->order() > 6) {
            continue;
        }
        const auto inv = inversion(*s);
        for (const auto& tname : default_catalog()) {
            const GroupPtr t = standard_group(tname);
            CAPTURE(sname);
            CAPTURE(tname);
            for (MapKind kind : {MapKind::homomorphism, MapKind::anti_homomorphism}) {
                std::vector<std::vector<Elem>> got;
                for (const auto& f : enumerate_maps(s, t, kind)) {
                    CHECK(oracle::equation_holds(*s, *t, f.images(), kind));
                    CHECK(f(s->identity()) == t->identity());
                    got.push_back(f.images());
                }
                CHECK(got == oracle::all_maps(*s, *t, kind));
            }
            std::vector<std::vector<Elem>> composed;
            for (const auto& h : enumerate_maps(s, t, MapKind::homomorphism)) {
                std::vector<Elem> a;
                for (Elem x = 0; x < s->order(); ++x) {
                    a.push_back(h(inv[x]));
                }
                composed.push_back(a);
            }
            std::sort(composed.begin(), composed.end());
            std::vector<std::vector<Elem>> antis;
            for (const auto& f : enumerate_maps(s, t, MapKind::anti_homomorphism)) {
                antis.push_back(f.images());
            }
            CHECK(antis == composed);
        }
    }
}

TEST_CASE("enumeration guard")
{
    const GroupPtr c12 = standard_group("cyclic-12");
    CHECK_THROWS_AS(enumerate_maps(c12, c12, MapKind::homomorphism), InfeasibleEnumeration);
    MapEnumerationOptions wide;
    wide.max_source_order = 12;
    CHECK(enumerate_maps(c12, c12, MapKind::homomorphism, wide).size() == 12);
}

TEST_CASE("fibers")
{
    const GroupPtr k = standard_group("klein4");
    const GroupPtr c2 = standard_group("cyclic-2");
    const GroupMap id = make_map(k, k, {0, 1, 2, 3}, MapKind::homomorphism);
    for (Elem y = 0; y < 4; ++y) {
        CHECK(fiber(id, y) == ElementSet{y});
    }
    const GroupMap trivial = make_map(k, c2, {0, 0, 0, 0}, MapKind::homomorphism);
    CHECK(fiber(trivial, 0) == ElementSet{0, 1, 2, 3});
    CHECK(fiber(trivial, 1).empty());
}

TEST_CASE("crisp subset analysis")
{
    const GroupPtr k = standard_group("klein4");
    const Elem a = *k->find("a"), b = *k->find("b");
    const auto e = analyze_subset(*k, {k->identity()});
    CHECK(e.is_subgroup);
    CHECK(e.is_cyclic);
    CHECK(e.is_abelian);

    const auto ea = analyze_subset(*k, {0, a});
    CHECK(ea.is_subgroup);
    CHECK(ea.is_cyclic);
    CHECK(ea.generator == a);

    const auto ab = analyze_subset(*k, {a, b});
    CHECK_FALSE(ab.is_subgroup);
    CHECK(ab.closure == ElementSet{0, 1, 2, 3});
    CHECK_FALSE(ab.is_cyclic);
    CHECK_FALSE(analyze_subset(*k, {}).is_subgroup);
}

TEST_CASE("closure and subgroup lattice agree with saturation on every subset")
{
    for (const auto& name : default_catalog()) {
        const GroupPtr g = standard_group(name);
        const std::size_t n = g->order();
        std::vector<ElementSet> expected;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            ElementSet s;
            for (Elem x = 0; x < n; ++x) {
                if (mask & (1u << x)) {
                    s.push_back(x);
                }
            }
            const bool sub = oracle::is_subgroup(*g, s);
            if (sub) {
                expected.push_back(s);
            }
            if (n > 8 && mask % 7 != 0) {
                continue;  // full closure check on the larger groups is sampled
            }
            const auto analysis = analyze_subset(*g, s);
            CAPTURE(name);
            CHECK(analysis.is_subgroup == sub);
            CHECK(analysis.closure == oracle::closure(*g, s));
            CHECK(analyze_subset(*g, analysis.closure).is_subgroup);
            CHECK(subgroup_closure(*g, analysis.closure) == analysis.closure);
            CHECK(analysis.is_cyclic == oracle::is_cyclic_subgroup(*g, analysis.closure));
            if (analysis.is_cyclic) {
                REQUIRE(analysis.generator);
                CHECK(subgroup_closure(*g, {*analysis.generator}) == analysis.closure);
            }
        }
        std::vector<ElementSet> got = all_subgroups(*g);
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        CHECK(got == expected);
    }
}
