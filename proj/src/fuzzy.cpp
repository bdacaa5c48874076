#include "aqf/fuzzy.hpp"

#include <set>

namespace aqf {

QLabels::QLabels(std::vector<std::string> labels) : labels_(std::move(labels))
{
    if (labels_.empty()) {
        throw std::invalid_argument("Q label set must be nonempty");
    }
    std::set<std::string> seen;
    for (const auto& l : labels_) {
        if (!seen.insert(l).second) {
            throw std::invalid_argument("Q label '" + l + "' repeated");
        }
    }
}

QLabels QLabels::numbered(std::size_t n)
{
    if (n == 1) {
        return QLabels({"q"});
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("q" + std::to_string(i));
    }
    return QLabels(std::move(labels));
}

std::optional<std::size_t> QLabels::find(std::string_view label) const
{
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) {
            return i;
        }
    }
    return std::nullopt;
}

QFuzzySubset::QFuzzySubset(GroupPtr group, QLabels q, const std::vector<std::vector<Grade>>& grades)
    : group_(std::move(group)), q_(std::move(q))
{
    if (!group_) {
        throw std::invalid_argument("fuzzy subset requires a group");
    }
    if (grades.size() != group_->order()) {
        throw std::invalid_argument("grade table has " + std::to_string(grades.size()) + " rows, group '" +
                                    group_->name() + "' has order " + std::to_string(group_->order()));
    }
    grades_.reserve(group_->order() * q_.size());
    for (Elem x = 0; x < grades.size(); ++x) {
        if (grades[x].size() != q_.size()) {
            throw std::invalid_argument("grade row for " + group_->label(x) + " has " +
                                        std::to_string(grades[x].size()) + " entries, expected " +
                                        std::to_string(q_.size()));
        }
        grades_.insert(grades_.end(), grades[x].begin(), grades[x].end());
    }
}

QFuzzySubset::QFuzzySubset(GroupPtr group, QLabels q, std::vector<Grade> flat)
    : group_(std::move(group)), q_(std::move(q)), grades_(std::move(flat))
{
    if (!group_) {
        throw std::invalid_argument("fuzzy subset requires a group");
    }
    if (grades_.size() != group_->order() * q_.size()) {
        throw std::invalid_argument("grade table has " + std::to_string(grades_.size()) + " entries, expected " +
                                    std::to_string(group_->order() * q_.size()));
    }
}

QFuzzySubset QFuzzySubset::constant(GroupPtr group, QLabels q, Grade value)
{
    const std::size_t n = group->order() * q.size();
    return QFuzzySubset(std::move(group), std::move(q), std::vector<Grade>(n, value));
}

bool QFuzzySubset::same_carrier(const QFuzzySubset& other) const
{
    return q_ == other.q_ && (group_ == other.group_ || *group_ == *other.group_);
}

namespace {

void require_same_carrier(const QFuzzySubset& a, const QFuzzySubset& b, std::string_view op)
{
    if (!a.same_carrier(b)) {
        throw CarrierMismatch(std::string(op) + ": operands live on different carriers ('" + a.group()->name() +
                              "' vs '" + b.group()->name() + "')");
    }
}

void require_group(const GroupPtr& expected, const GroupPtr& actual, std::string_view op)
{
    if (expected != actual && !(*expected == *actual)) {
        throw CarrierMismatch(std::string(op) + ": subset lives on '" + actual->name() + "', map expects '" +
                              expected->name() + "'");
    }
}

}  // namespace

AlphaQFuzzySubset::AlphaQFuzzySubset(QFuzzySubset base, Grade alpha)
    : base_(std::move(base)), alpha_(alpha), restricted_(base_)
{
    std::vector<Grade> cut;
    cut.reserve(base_.flat().size());
    for (const Grade& g : base_.flat()) {
        cut.push_back(min(g, alpha_));
    }
    restricted_ = QFuzzySubset(base_.group(), base_.q(), std::move(cut));
}

QFuzzySubset make_qfuzzy(GroupPtr group, QLabels q, const std::vector<std::vector<Grade>>& grades)
{
    return QFuzzySubset(std::move(group), std::move(q), grades);
}

AlphaQFuzzySubset alpha_restrict(const QFuzzySubset& theta, Grade alpha)
{
    return AlphaQFuzzySubset(theta, alpha);
}

QFuzzySubset combine(Combine kind, const QFuzzySubset& a, const QFuzzySubset& b)
{
    require_same_carrier(a, b, kind == Combine::union_ ? "union" : "intersection");
    std::vector<Grade> out;
    out.reserve(a.flat().size());
    for (std::size_t i = 0; i < a.flat().size(); ++i) {
        out.push_back(kind == Combine::union_ ? max(a.flat()[i], b.flat()[i]) : min(a.flat()[i], b.flat()[i]));
    }
    return QFuzzySubset(a.group(), a.q(), std::move(out));
}

CompareResult compare(Compare kind, const QFuzzySubset& a, const QFuzzySubset& b)
{
    require_same_carrier(a, b, kind == Compare::subset ? "subset" : "equal");
    const std::size_t nq = a.q().size();
    for (std::size_t i = 0; i < a.flat().size(); ++i) {
        const bool ok = kind == Compare::subset ? a.flat()[i] <= b.flat()[i] : a.flat()[i] == b.flat()[i];
        if (!ok) {
            return {false, std::pair{i / nq, i % nq}};
        }
    }
    return {};
}

QFuzzySubset complement(const QFuzzySubset& theta)
{
    std::vector<Grade> out;
    out.reserve(theta.flat().size());
    for (const Grade& g : theta.flat()) {
        out.push_back(g.complement());
    }
    return QFuzzySubset(theta.group(), theta.q(), std::move(out));
}

AlphaQFuzzySubset product(const AlphaQFuzzySubset& phi, const AlphaQFuzzySubset& psi)
{
    return product(phi, psi, direct_product(*phi.group(), *psi.group()));
}

AlphaQFuzzySubset product(const AlphaQFuzzySubset& phi, const AlphaQFuzzySubset& psi, const GroupPtr& product_group)
{
    if (!(phi.q() == psi.q())) {
        throw CarrierMismatch("product: factors use different Q labels");
    }
    if (phi.alpha() != psi.alpha()) {
        throw CarrierMismatch("product: factors use different alpha (" + phi.alpha().str() + " vs " +
                              psi.alpha().str() + ")");
    }
    const std::size_t n = phi.group()->order();
    const std::size_t m = psi.group()->order();
    if (product_group->order() != n * m) {
        throw CarrierMismatch("product: group '" + product_group->name() + "' is not " + phi.group()->name() +
                              "*" + psi.group()->name());
    }
    const std::size_t nq = phi.q().size();
    std::vector<Grade> base;
    base.reserve(n * m * nq);
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < m; ++y) {
            for (std::size_t q = 0; q < nq; ++q) {
                base.push_back(min(phi.base()(x, q), psi.base()(y, q)));
            }
        }
    }
    AlphaQFuzzySubset out(QFuzzySubset(product_group, phi.q(), std::move(base)), phi.alpha());
    // min(min(a, b), alpha) = min(min(a, alpha), min(b, alpha)).
    for (Elem x = 0; x < n; ++x) {
        for (Elem y = 0; y < m; ++y) {
            for (std::size_t q = 0; q < nq; ++q) {
                if (out(x * m + y, q) != min(phi(x, q), psi(y, q))) {
                    throw std::logic_error("product: restricted table disagrees with factor-wise minimum");
                }
            }
        }
    }
    return out;
}

Grade sup_over_fiber(const QFuzzySubset& theta, const ElementSet& fiber, std::size_t q)
{
    Grade best = Grade::zero();
    for (Elem x : fiber) {
        best = max(best, theta(x, q));
    }
    return best;
}

QFuzzySubset image(const GroupMap& f, const QFuzzySubset& theta)
{
    require_group(f.source(), theta.group(), "image");
    const std::size_t nq = theta.q().size();
    std::vector<ElementSet> fibers(f.target()->order());
    for (Elem x = 0; x < f.images().size(); ++x) {
        fibers[f(x)].push_back(x);
    }
    std::vector<Grade> out;
    out.reserve(f.target()->order() * nq);
    for (Elem y = 0; y < f.target()->order(); ++y) {
        for (std::size_t q = 0; q < nq; ++q) {
            out.push_back(sup_over_fiber(theta, fibers[y], q));
        }
    }
    return QFuzzySubset(f.target(), theta.q(), std::move(out));
}

AlphaQFuzzySubset image(const GroupMap& f, const AlphaQFuzzySubset& phi)
{
    AlphaQFuzzySubset out(image(f, phi.base()), phi.alpha());
    if (!(image(f, phi.restricted()) == out.restricted())) {
        throw std::logic_error("image: pushforward does not commute with alpha restriction");
    }
    return out;
}

QFuzzySubset preimage(const GroupMap& f, const QFuzzySubset& sigma)
{
    require_group(f.target(), sigma.group(), "preimage");
    const std::size_t nq = sigma.q().size();
    std::vector<Grade> out;
    out.reserve(f.source()->order() * nq);
    for (Elem x = 0; x < f.source()->order(); ++x) {
        for (std::size_t q = 0; q < nq; ++q) {
            out.push_back(sigma(f(x), q));
        }
    }
    return QFuzzySubset(f.source(), sigma.q(), std::move(out));
}

AlphaQFuzzySubset preimage(const GroupMap& f, const AlphaQFuzzySubset& psi)
{
    AlphaQFuzzySubset out(preimage(f, psi.base()), psi.alpha());
    if (!(preimage(f, psi.restricted()) == out.restricted())) {
        throw std::logic_error("preimage: pullback does not commute with alpha restriction");
    }
    return out;
}

ElementSet level_set(const QFuzzySubset& theta, const Grade& c, std::size_t q)
{
    ElementSet out;
    for (Elem x = 0; x < theta.group()->order(); ++x) {
        if (theta(x, q) >= c) {
            out.push_back(x);
        }
    }
    return out;
}

ElementSet level_set(const AlphaQFuzzySubset& phi, const Grade& c, std::string_view q_label)
{
    const auto q = phi.q().find(q_label);
    if (!q) {
        throw std::invalid_argument("unknown Q label '" + std::string(q_label) + "'");
    }
    return level_set(phi.restricted(), c, *q);
}

}  // namespace aqf
