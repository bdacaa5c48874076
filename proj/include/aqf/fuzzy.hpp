#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqf/grade.hpp"
#include "aqf/group.hpp"

namespace aqf {

class CarrierMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Nonempty ordered list of distinct parameter labels.
class QLabels {
public:
    explicit QLabels(std::vector<std::string> labels);

    /// q0, q1, ..., q{n-1}; "q" alone when n = 1.
    static QLabels numbered(std::size_t n);

    std::size_t size() const { return labels_.size(); }
    const std::string& operator[](std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> find(std::string_view label) const;

    friend bool operator==(const QLabels&, const QLabels&) = default;

private:
    std::vector<std::string> labels_;
};

/// Exact grade table over G x Q, row-major in (element, label).
class QFuzzySubset {
public:
    /// grades[x][q]; throws on dimension mismatch.
    QFuzzySubset(GroupPtr group, QLabels q, const std::vector<std::vector<Grade>>& grades);
    QFuzzySubset(GroupPtr group, QLabels q, std::vector<Grade> flat);

    static QFuzzySubset constant(GroupPtr group, QLabels q, Grade value);

    const GroupPtr& group() const { return group_; }
    const QLabels& q() const { return q_; }
    const Grade& operator()(Elem x, std::size_t q) const { return grades_[x * q_.size() + q]; }
    const std::vector<Grade>& flat() const { return grades_; }

    /// Same group (structurally) and same labels.
    bool same_carrier(const QFuzzySubset& other) const;

    friend bool operator==(const QFuzzySubset& a, const QFuzzySubset& b)
    {
        return a.same_carrier(b) && a.grades_ == b.grades_;
    }

private:
    GroupPtr group_;
    QLabels q_;
    std::vector<Grade> grades_;
};

/// A base subset together with its restriction min(base, alpha).
class AlphaQFuzzySubset {
public:
    AlphaQFuzzySubset(QFuzzySubset base, Grade alpha);

    const QFuzzySubset& base() const { return base_; }
    const Grade& alpha() const { return alpha_; }
    const QFuzzySubset& restricted() const { return restricted_; }
    const GroupPtr& group() const { return base_.group(); }
    const QLabels& q() const { return base_.q(); }
    const Grade& operator()(Elem x, std::size_t q) const { return restricted_(x, q); }

    friend bool operator==(const AlphaQFuzzySubset&, const AlphaQFuzzySubset&) = default;

private:
    QFuzzySubset base_;
    Grade alpha_;
    QFuzzySubset restricted_;
};

QFuzzySubset make_qfuzzy(GroupPtr group, QLabels q, const std::vector<std::vector<Grade>>& grades);

AlphaQFuzzySubset alpha_restrict(const QFuzzySubset& theta, Grade alpha);

enum class Combine { union_, intersection };

/// Pointwise max (union) or min (intersection).
QFuzzySubset combine(Combine kind, const QFuzzySubset& a, const QFuzzySubset& b);

enum class Compare { subset, equal };

struct CompareResult {
    bool holds = true;
    std::optional<std::pair<Elem, std::size_t>> witness;  // first failing (x, q)
};

CompareResult compare(Compare kind, const QFuzzySubset& a, const QFuzzySubset& b);

QFuzzySubset complement(const QFuzzySubset& theta);

/// Product over g x h. Both factors must share labels and alpha. The
/// overload taking product_group reuses a prebuilt direct_product(g, h).
AlphaQFuzzySubset product(const AlphaQFuzzySubset& phi, const AlphaQFuzzySubset& psi);
AlphaQFuzzySubset product(const AlphaQFuzzySubset& phi, const AlphaQFuzzySubset& psi, const GroupPtr& product_group);

/// Supremum of the given grades; the empty supremum is 0.
Grade sup_over_fiber(const QFuzzySubset& theta, const ElementSet& fiber, std::size_t q);

/// Pushforward along f with sup over fibers. Base and restricted tables are
/// pushed forward separately and the result is checked against
/// min(image(base), alpha).
AlphaQFuzzySubset image(const GroupMap& f, const AlphaQFuzzySubset& phi);
QFuzzySubset image(const GroupMap& f, const QFuzzySubset& theta);

/// Pullback psi(f(x), q); checked against min(preimage(base), alpha).
AlphaQFuzzySubset preimage(const GroupMap& f, const AlphaQFuzzySubset& psi);
QFuzzySubset preimage(const GroupMap& f, const QFuzzySubset& sigma);

/// { x : phi(x, q) >= c }.
ElementSet level_set(const AlphaQFuzzySubset& phi, const Grade& c, std::string_view q_label);
ElementSet level_set(const QFuzzySubset& theta, const Grade& c, std::size_t q);

}  // namespace aqf
