#include "doctest.h"

#include "aqf/fuzzy.hpp"
#include "aqf/theorem_lab.hpp"
#include "oracles.hpp"

using namespace aqf;

namespace {

const QLabels one_label({"q"});

QFuzzySubset klein_theta()
{
    return klein4_example().theta;
}

QFuzzySubset from(const GroupPtr& g, std::vector<Grade> grades)
{
    return QFuzzySubset(g, one_label, std::move(grades));
}

std::vector<GroupMap> every_map(const GroupPtr& s, const GroupPtr& t)
{
    MapEnumerationOptions wide;
    wide.max_source_order = 16;
    std::vector<GroupMap> out = enumerate_maps(s, t, MapKind::homomorphism, wide);
    for (auto& f : enumerate_maps(s, t, MapKind::anti_homomorphism, wide)) {
        out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

TEST_CASE("make_qfuzzy stores grades exactly and validates shape")
{
    const GroupPtr k = standard_group("klein4");
    const QFuzzySubset t = make_qfuzzy(k, one_label,
                                       {{Grade::parse("0.2")}, {Grade::parse("0.4")}, {Grade::parse("0.4")},
                                        {Grade::parse("0.3")}});
    CHECK(t(1, 0) == Grade(2, 5));
    CHECK(t == klein_theta());
    CHECK_NOTHROW(QFuzzySubset::constant(k, one_label, Grade::zero()));
    CHECK_THROWS_AS(make_qfuzzy(k, one_label, {{Grade::zero()}}), std::invalid_argument);
    CHECK_THROWS_AS(make_qfuzzy(k, one_label, {{Grade::zero(), Grade::zero()}, {}, {}, {}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(QLabels({}), std::invalid_argument);
    CHECK_THROWS_AS(QLabels({"q", "q"}), std::invalid_argument);
    CHECK(QLabels::numbered(1).labels() == std::vector<std::string>{"q"});
    CHECK(QLabels::numbered(2).labels() == std::vector<std::string>{"q0", "q1"});
}

TEST_CASE("alpha restriction")
{
    const QFuzzySubset t = klein_theta();
    CHECK(alpha_restrict(t, Grade::one()).restricted() == t);
    CHECK(alpha_restrict(t, Grade::zero()).restricted() ==
          QFuzzySubset::constant(t.group(), t.q(), Grade::zero()));
    const AlphaQFuzzySubset cut = alpha_restrict(t, Grade(9, 100));
    CHECK(cut.restricted() == QFuzzySubset::constant(t.group(), t.q(), Grade(9, 100)));
    CHECK(cut.base() == t);
    CHECK(cut.alpha() == Grade(9, 100));
}

TEST_CASE("union and intersection")
{
    const CyclicUnionExample ex = cyclic12_example();
    const QFuzzySubset u = combine(Combine::union_, ex.theta, ex.sigma);
    CHECK(u(3, 0) == Grade(2, 5));
    CHECK(combine(Combine::intersection, ex.theta, ex.theta) == ex.theta);
    CHECK(combine(Combine::union_, ex.theta, QFuzzySubset::constant(ex.group, one_label, Grade::zero())) ==
          ex.theta);
    const QFuzzySubset other = QFuzzySubset::constant(standard_group("cyclic-6"), one_label, Grade::zero());
    CHECK_THROWS_AS(combine(Combine::union_, ex.theta, other), CarrierMismatch);
    const QFuzzySubset relabeled = QFuzzySubset::constant(ex.group, QLabels({"p"}), Grade::zero());
    CHECK_THROWS_AS(combine(Combine::union_, ex.theta, relabeled), CarrierMismatch);
}

TEST_CASE("compare reports the first failing pair")
{
    const CyclicUnionExample ex = cyclic12_example();
    CHECK(compare(Compare::subset, combine(Combine::intersection, ex.theta, ex.sigma), ex.theta).holds);
    CHECK(compare(Compare::subset, ex.sigma, combine(Combine::union_, ex.sigma, ex.pi)).holds);
    CHECK(compare(Compare::equal, klein_theta(), klein_theta()).holds);
    const CompareResult r = compare(Compare::subset, ex.sigma, ex.theta);
    CHECK_FALSE(r.holds);
    REQUIRE(r.witness);
    CHECK(r.witness->first == 1);  // sigma(1) = 1/10 > theta(1) = 0; element 0 is fine
}

TEST_CASE("complement")
{
    const QFuzzySubset t = klein_theta();
    CHECK(complement(complement(t)) == t);
    const GroupPtr k = t.group();
    CHECK(complement(QFuzzySubset::constant(k, one_label, Grade::zero())) ==
          QFuzzySubset::constant(k, one_label, Grade::one()));
    CHECK(complement(t) == from(k, {Grade(4, 5), Grade(3, 5), Grade(3, 5), Grade(7, 10)}));
}

TEST_CASE("product of restricted subsets")
{
    const GroupPtr c2 = standard_group("cyclic-2");
    const GroupPtr t1 = standard_group("trivial");
    const AlphaQFuzzySubset phi = alpha_restrict(from(c2, {Grade(1, 2), Grade(1, 5)}), Grade::one());
    const AlphaQFuzzySubset top = alpha_restrict(from(t1, {Grade::one()}), Grade::one());
    const AlphaQFuzzySubset p = product(phi, top);
    CHECK(p.group()->order() == 2);
    CHECK(p(0, 0) == Grade(1, 2));
    CHECK(p(1, 0) == Grade(1, 5));

    const AlphaQFuzzySubset zero_at_1 = alpha_restrict(from(c2, {Grade(1, 2), Grade::zero()}), Grade::one());
    const AlphaQFuzzySubset psi = alpha_restrict(from(c2, {Grade(3, 10), Grade(1, 10)}), Grade::one());
    const AlphaQFuzzySubset pz = product(zero_at_1, psi);
    CHECK(pz(2, 0) == Grade::zero());  // (1, 0)
    CHECK(pz(3, 0) == Grade::zero());  // (1, 1)
    CHECK(pz(0, 0) == Grade(3, 10));

    const AlphaQFuzzySubset half = alpha_restrict(from(c2, {Grade(1, 2), Grade(1, 2)}), Grade(1, 2));
    CHECK_THROWS_AS(product(phi, half), std::invalid_argument);
    const AlphaQFuzzySubset two_labels =
        alpha_restrict(QFuzzySubset::constant(c2, QLabels::numbered(2), Grade::one()), Grade::one());
    CHECK_THROWS_AS(product(phi, two_labels), std::invalid_argument);
}

TEST_CASE("images and preimages")
{
    const GroupPtr k = standard_group("klein4");
    const GroupPtr t1 = standard_group("trivial");
    const AlphaQFuzzySubset phi = alpha_restrict(klein_theta(), Grade::one());
    const GroupMap id = make_map(k, k, {0, 1, 2, 3}, MapKind::homomorphism);
    CHECK(image(id, phi) == phi);
    CHECK(preimage(id, phi) == phi);

    const GroupMap collapse = make_map(k, t1, {0, 0, 0, 0}, MapKind::homomorphism);
    CHECK(image(collapse, phi)(0, 0) == Grade(2, 5));

    const GroupPtr c2 = standard_group("cyclic-2");
    const GroupPtr c4 = standard_group("cyclic-4");
    const GroupMap embed = make_map(c2, c4, {0, 2}, MapKind::homomorphism);
    const AlphaQFuzzySubset small = alpha_restrict(from(c2, {Grade(1, 2), Grade(3, 10)}), Grade::one());
    const AlphaQFuzzySubset pushed = image(embed, small);
    for (Elem y = 0; y < 4; ++y) {
        Grade expected = Grade::zero();
        for (Elem x = 0; x < 2; ++x) {
            if (embed(x) == y) {
                expected = max(expected, small(x, 0));
            }
        }
        CHECK(pushed(y, 0) == expected);
    }
    CHECK(pushed(1, 0) == Grade::zero());
    CHECK(pushed(3, 0) == Grade::zero());

    const GroupMap to_trivial_back = make_map(c4, c2, {0, 0, 0, 0}, MapKind::homomorphism);
    const AlphaQFuzzySubset pulled = preimage(to_trivial_back, small);
    for (Elem x = 0; x < 4; ++x) {
        CHECK(pulled(x, 0) == Grade(1, 2));
    }
    CHECK_THROWS_AS(image(embed, phi), CarrierMismatch);
    CHECK_THROWS_AS(preimage(embed, small), CarrierMismatch);
}

TEST_CASE("preimage of image contains the original for every map of cyclic-2 into itself")
{
    const GroupPtr c2 = standard_group("cyclic-2");
    const auto pool = default_grade_pool();
    for (const GroupMap& f : every_map(c2, c2)) {
        for (const Grade& a : pool) {
            for (const Grade& b : pool) {
                const AlphaQFuzzySubset phi = alpha_restrict(from(c2, {a, b}), Grade::one());
                CHECK(compare(Compare::subset, phi.restricted(), preimage(f, image(f, phi)).restricted()).holds);
            }
        }
    }
}

TEST_CASE("level sets")
{
    const AlphaQFuzzySubset cut = alpha_restrict(klein_theta(), Grade(9, 100));
    CHECK(level_set(cut, Grade::zero(), "q") == ElementSet{0, 1, 2, 3});
    CHECK(level_set(cut, Grade::one(), "q").empty());
    CHECK(level_set(cut, Grade(9, 100), "q") == ElementSet{0, 1, 2, 3});
    CHECK_THROWS_AS(level_set(cut, Grade::zero(), "nope"), std::invalid_argument);
}

TEST_CASE("lattice laws, restriction laws and level-set antitonicity on random subsets")
{
    const auto pool = default_grade_pool();
    for (const auto& name : default_catalog()) {
        const GroupPtr g = standard_group(name);
        const QLabels q = QLabels::numbered(2);
        for (std::uint64_t trial = 0; trial < 25; ++trial) {
            Rng rng(derive_seed(11, "lattice", name, trial));
            const QFuzzySubset a = random_qfuzzy(g, q, rng, pool);
            const QFuzzySubset b = random_qfuzzy(g, q, rng, pool);
            const QFuzzySubset c = random_qfuzzy(g, q, rng, pool);
            const auto U = [](const QFuzzySubset& x, const QFuzzySubset& y) { return combine(Combine::union_, x, y); };
            const auto I = [](const QFuzzySubset& x, const QFuzzySubset& y) {
                return combine(Combine::intersection, x, y);
            };
            CHECK(U(a, b) == U(b, a));
            CHECK(I(a, b) == I(b, a));
            CHECK(U(U(a, b), c) == U(a, U(b, c)));
            CHECK(I(I(a, b), c) == I(a, I(b, c)));
            CHECK(U(a, a) == a);
            CHECK(I(a, a) == a);
            CHECK(U(a, I(a, b)) == a);
            CHECK(I(a, U(a, b)) == a);
            CHECK(I(a, U(b, c)) == U(I(a, b), I(a, c)));
            CHECK(U(a, I(b, c)) == I(U(a, b), U(a, c)));
            CHECK(complement(complement(a)) == a);
            CHECK(complement(U(a, b)) == I(complement(a), complement(b)));

            const Grade alpha = pool[rng.below(pool.size())];
            const Grade beta = pool[rng.below(pool.size())];
            const QFuzzySubset ra = alpha_restrict(a, alpha).restricted();
            CHECK(ra == oracle::restrict(a, alpha));
            CHECK(alpha_restrict(ra, alpha).restricted() == ra);
            const QFuzzySubset rb = alpha_restrict(a, beta).restricted();
            CHECK(compare(Compare::subset, alpha <= beta ? ra : rb, alpha <= beta ? rb : ra).holds);
            CHECK(alpha_restrict(I(a, b), alpha).restricted() ==
                  I(alpha_restrict(a, alpha).restricted(), alpha_restrict(b, alpha).restricted()));

            for (const Grade& c1 : pool) {
                for (const Grade& c2 : pool) {
                    if (c2 < c1) {
                        continue;
                    }
                    for (std::size_t k = 0; k < q.size(); ++k) {
                        const ElementSet hi = level_set(a, c2, k);
                        const ElementSet lo = level_set(a, c1, k);
                        CHECK(std::includes(lo.begin(), lo.end(), hi.begin(), hi.end()));
                    }
                }
            }
        }
    }
}

TEST_CASE("restriction commutes with image and preimage along every enumerated map")
{
    const auto pool = default_grade_pool();
    const std::vector<std::string> groups{"cyclic-2", "cyclic-4", "cyclic-6", "klein4", "symmetric-3"};
    for (const auto& sname : groups) {
        for (const auto& tname : groups) {
            const GroupPtr s = standard_group(sname);
            const GroupPtr t = standard_group(tname);
            for (const GroupMap& f : every_map(s, t)) {
                Rng rng(derive_seed(5, sname, tname, f.images().front() * 31 + f.images().back()));
                const QFuzzySubset theta = random_qfuzzy(s, one_label, rng, pool);
                const QFuzzySubset sigma = random_qfuzzy(t, one_label, rng, pool);
                const Grade alpha = pool[rng.below(pool.size())];
                CHECK(image(f, alpha_restrict(theta, alpha).restricted()) ==
                      alpha_restrict(image(f, theta), alpha).restricted());
                CHECK(preimage(f, alpha_restrict(sigma, alpha).restricted()) ==
                      alpha_restrict(preimage(f, sigma), alpha).restricted());
            }
        }
    }
}
