#include "doctest.h"

#include "aqf/subgroup_check.hpp"
#include "aqf/theorem_lab.hpp"
#include "oracles.hpp"

using namespace aqf;

namespace {

const QLabels one_label({"q"});

QFuzzySubset from(const GroupPtr& g, std::vector<Grade> grades)
{
    return QFuzzySubset(g, one_label, std::move(grades));
}

QFuzzySubset indicator(const GroupPtr& g, const ElementSet& h)
{
    std::vector<Grade> grades(g->order(), Grade::zero());
    for (Elem x : h) {
        grades[x] = Grade::one();
    }
    return from(g, grades);
}

// Re-evaluates a reported inequality straight from the table.
bool witness_really_fails(const QFuzzySubset& t, const Inequality& w)
{
    const FiniteGroup& g = *t.group();
    const auto v = [&](Elem x) { return t(x, w.q); };
    if (w.condition == "closure") {
        return v(g.mul(w.at[0], w.at[1])) < std::min(v(w.at[0]), v(w.at[1]));
    }
    if (w.condition == "inverse") {
        return v(oracle::inverse(g, w.at[0])) < v(w.at[0]);
    }
    if (w.condition == "difference") {
        return v(g.mul(w.at[0], oracle::inverse(g, w.at[1]))) < std::min(v(w.at[0]), v(w.at[1]));
    }
    if (w.condition == "anti-closure") {
        return v(g.mul(w.at[0], w.at[1])) > std::max(v(w.at[0]), v(w.at[1]));
    }
    return false;
}

}  // namespace

TEST_CASE("klein4 worked example: base fails, restriction at 9/100 passes")
{
    const KleinExample ex = klein4_example();
    const CheckReport base = check_qfuzzy_subgroup(ex.theta);
    CHECK_FALSE(base.verdict);
    REQUIRE(base.witness);
    CHECK(witness_really_fails(ex.theta, *base.witness));
    const Inequality ab = closure_inequality(ex.theta, 1, 2, 0);
    CHECK(ab.lhs == Grade(3, 10));
    CHECK(ab.rhs == Grade(2, 5));
    CHECK_FALSE(ab.holds());
    CHECK(render(ab, *ex.group, ex.theta.q()) == "closure: lhs = 3/10 < rhs = 2/5 at (a, b, q)");

    const CheckReport cut = check_alpha_subgroup(alpha_restrict(ex.theta, ex.alpha));
    CHECK(cut.verdict);
    CHECK(cut.forms_agree);
    CHECK(cut.condition("difference")->holds);
}

TEST_CASE("constant subsets and crisp subgroup indicators are subgroups")
{
    for (const char* name : {"klein4", "cyclic-6"}) {
        const GroupPtr g = standard_group(name);
        CHECK(check_qfuzzy_subgroup(QFuzzySubset::constant(g, one_label, Grade(3, 10))).verdict);
        for (const ElementSet& h : all_subgroups(*g)) {
            CHECK(check_qfuzzy_subgroup(indicator(g, h)).verdict);
        }
    }
}

TEST_CASE("identity graded below the rest fails with a difference-style witness")
{
    const GroupPtr c3 = standard_group("cyclic-3");
    const QFuzzySubset t = from(c3, {Grade(1, 10), Grade(9, 10), Grade(9, 10)});
    const CheckReport r = check_alpha_subgroup(alpha_restrict(t, Grade::one()));
    CHECK_FALSE(r.verdict);
    REQUIRE(r.witness);
    CHECK(r.witness->at == std::vector<Elem>{1, 2});
    CHECK(r.witness->lhs == Grade(1, 10));
    CHECK(r.witness->rhs == Grade(9, 10));
    CHECK(r.detail == "closure: lhs = 1/10 < rhs = 9/10 at (1, 2, q)");
    CHECK(witness_really_fails(t, *r.witness));
    CHECK(r.forms_agree);
    CHECK_FALSE(oracle::subgroup_by_levels(t));
}

TEST_CASE("verdicts agree with the level-set characterization on every small assignment")
{
    const auto pool = default_grade_pool();
    for (const char* name : {"cyclic-2", "cyclic-3", "klein4", "cyclic-4"}) {
        const GroupPtr g = standard_group(name);
        const std::size_t n = g->order();
        std::vector<std::size_t> digits(n, 0);
        for (;;) {
            std::vector<Grade> grades;
            for (std::size_t d : digits) {
                grades.push_back(pool[d]);
            }
            const QFuzzySubset t = from(g, grades);
            const CheckReport plain = check_qfuzzy_subgroup(t);
            const CheckReport restricted = check_alpha_subgroup(alpha_restrict(t, Grade::one()));
            const bool expected = oracle::subgroup_by_levels(t);
            CHECK(plain.verdict == expected);
            CHECK(restricted.verdict == expected);
            CHECK(restricted.forms_agree);
            if (!plain.verdict) {
                CHECK(witness_really_fails(t, *plain.witness));
            }
            std::size_t i = n;
            while (i > 0 && ++digits[i - 1] == pool.size()) {
                digits[--i] = 0;
            }
            if (i == 0) {
                break;
            }
        }
    }
}

TEST_CASE("random subsets: every reported witness re-validates")
{
    const auto pool = default_grade_pool();
    for (const auto& name : default_catalog()) {
        const GroupPtr g = standard_group(name);
        for (std::uint64_t trial = 0; trial < 40; ++trial) {
            Rng rng(derive_seed(3, "witness", name, trial));
            const QFuzzySubset t = random_qfuzzy(g, QLabels::numbered(2), rng, pool);
            const Grade alpha = pool[rng.below(pool.size())];
            const CheckReport r = check_alpha_subgroup(alpha_restrict(t, alpha));
            const QFuzzySubset rt = oracle::restrict(t, alpha);
            CHECK(r.verdict == oracle::subgroup_by_levels(rt));
            CHECK(r.forms_agree);
            for (const auto& c : r.conditions) {
                CHECK(c.holds == !c.witness.has_value());
                if (c.witness) {
                    CHECK(witness_really_fails(rt, *c.witness));
                }
            }
        }
    }
}

TEST_CASE("anti-fuzzy inequalities")
{
    const GroupPtr k = standard_group("klein4");
    CHECK(check_anti_subgroup(QFuzzySubset::constant(k, one_label, Grade(1, 2))).verdict);
    const KleinExample ex = klein4_example();
    const QFuzzySubset comp = complement(alpha_restrict(ex.theta, ex.alpha).restricted());
    CHECK(comp == QFuzzySubset::constant(k, one_label, Grade(91, 100)));
    CHECK(check_anti_subgroup(comp).verdict);

    const GroupPtr c3 = standard_group("cyclic-3");
    const QFuzzySubset bad = from(c3, {Grade(9, 10), Grade(1, 10), Grade(1, 10)});
    const CheckReport r = check_anti_subgroup(bad);
    CHECK_FALSE(r.verdict);
    CHECK(witness_really_fails(bad, *r.witness));
}

TEST_CASE("kernel sets")
{
    const GroupPtr c6 = standard_group("cyclic-6");
    CHECK(kernel_set(alpha_restrict(QFuzzySubset::constant(c6, one_label, Grade(1, 5)), Grade::one())).per_label[0] ==
          ElementSet{0, 1, 2, 3, 4, 5});
    const KleinExample ex = klein4_example();
    CHECK(kernel_set(alpha_restrict(ex.theta, ex.alpha)).per_label[0] == ElementSet{0, 1, 2, 3});
    for (const ElementSet& h : all_subgroups(*c6)) {
        CHECK(kernel_set(alpha_restrict(indicator(c6, h), Grade::one())).per_label[0] == h);
    }
}

TEST_CASE("abelian classification")
{
    const GroupPtr c6 = standard_group("cyclic-6");
    CHECK(classify_abelian(alpha_restrict(indicator(c6, {0, 3}), Grade::one())).verdict);

    const GroupPtr s3 = standard_group("symmetric-3");
    const AbelianReport whole = classify_abelian(alpha_restrict(QFuzzySubset::constant(s3, one_label, Grade(1, 2)),
                                                                Grade::one()));
    CHECK_FALSE(whole.verdict);
    REQUIRE(whole.slices[0].non_commuting);
    const auto [a, b] = *whole.slices[0].non_commuting;
    CHECK(s3->mul(a, b) != s3->mul(b, a));

    const ElementSet rotations{0, 1, 2};
    CHECK(classify_abelian(alpha_restrict(indicator(s3, rotations), Grade::one())).verdict);

    const GroupPtr k = standard_group("klein4");
    const AbelianReport not_sub = classify_abelian(alpha_restrict(from(k, {Grade::one(), Grade::one(), Grade::one(),
                                                                         Grade::zero()}),
                                                                  Grade::one()));
    CHECK_FALSE(not_sub.verdict);
    CHECK_FALSE(not_sub.slices[0].is_subgroup);
}

TEST_CASE("cyclic classification")
{
    const GroupPtr c6 = standard_group("cyclic-6");
    const CyclicReport sub = classify_cyclic(alpha_restrict(indicator(c6, {0, 2, 4}), Grade::one()));
    CHECK(sub.verdict);
    REQUIRE(sub.slices[0].levels.size() == 2);
    CHECK(sub.slices[0].levels[0].level == ElementSet{0, 1, 2, 3, 4, 5});
    CHECK(sub.slices[0].levels[1].level == ElementSet{0, 2, 4});

    const GroupPtr k = standard_group("klein4");
    CHECK_FALSE(classify_cyclic(alpha_restrict(QFuzzySubset::constant(k, one_label, Grade(1, 2)), Grade::one())).verdict);
    const CyclicReport zero_k = classify_cyclic(alpha_restrict(QFuzzySubset::constant(k, one_label, Grade::zero()),
                                                               Grade::one()));
    CHECK_FALSE(zero_k.verdict);
    CHECK(zero_k.slices[0].levels.size() == 1);
    CHECK(classify_cyclic(alpha_restrict(QFuzzySubset::constant(standard_group("cyclic-5"), one_label, Grade::zero()),
                                         Grade::one()))
              .verdict);
}

TEST_CASE("properties of verified alpha-subgroups across the catalog")
{
    const auto pool = default_grade_pool();
    for (const auto& name : default_catalog()) {
        const GroupPtr g = standard_group(name);
        const auto subgroups = all_subgroups(*g);
        const QLabels q = QLabels::numbered(2);
        for (std::uint64_t trial = 0; trial < 60; ++trial) {
            Rng rng(derive_seed(9, "properties", name, trial));
            const QFuzzySubset t = trial % 3 == 2 ? random_qfuzzy(g, q, rng, pool)
                                                  : random_qfuzzy_subgroup(g, subgroups, q, rng, pool);
            const Grade alpha = pool[rng.below(pool.size())];
            const AlphaQFuzzySubset phi = alpha_restrict(t, alpha);
            const CheckReport r = check_alpha_subgroup(phi);
            CHECK(r.forms_agree);
            if (!r.verdict) {
                continue;
            }
            const Elem e = g->identity();
            for (std::size_t k = 0; k < q.size(); ++k) {
                for (Elem x = 0; x < g->order(); ++x) {
                    CHECK(phi(e, k) >= phi(x, k));
                    CHECK(phi(g->inverse(x), k) == phi(x, k));
                    for (Elem y = 0; y < g->order(); ++y) {
                        if (phi(g->mul(x, g->inverse(y)), k) == phi(e, k)) {
                            CHECK(phi(x, k) == phi(y, k));
                        }
                    }
                }
                CHECK(oracle::is_subgroup(*g, kernel_set(phi).per_label[k]));
                for (const Grade& c : achieved_grades(phi.restricted(), k)) {
                    const ElementSet level = level_set(phi, c, q[k]);
                    if (!level.empty()) {
                        CHECK(oracle::is_subgroup(*g, level));
                    }
                }
            }
        }
    }
}
