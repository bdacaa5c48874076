#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aqf {

/// Index of a group element in its group's documented ordering.
using Elem = std::size_t;

/// Sorted list of distinct element indices.
using ElementSet = std::vector<Elem>;

enum class Axiom { closure, identity, inverse, associativity };

std::string_view to_string(Axiom axiom);

/// Thrown by FiniteGroup::build; carries the first violated axiom and its witness.
class GroupAxiomError : public std::invalid_argument {
public:
    GroupAxiomError(Axiom axiom, std::vector<Elem> witness, const std::string& message)
        : std::invalid_argument(message), axiom_(axiom), witness_(std::move(witness)) {}

    Axiom axiom() const { return axiom_; }
    const std::vector<Elem>& witness() const { return witness_; }

private:
    Axiom axiom_;
    std::vector<Elem> witness_;
};

/// A finite group given by its Cayley table. Immutable once built.
class FiniteGroup {
public:
    /// Validates the table (closure, identity, inverses, associativity, in
    /// that order) and throws GroupAxiomError on the first failure.
    static FiniteGroup build(std::string name, std::vector<std::string> element_names,
                             const std::vector<std::vector<Elem>>& table);

    /// Same, with table entries given by label.
    static FiniteGroup build(std::string name, std::vector<std::string> element_names,
                             const std::vector<std::vector<std::string>>& table);

    const std::string& name() const { return name_; }
    std::size_t order() const { return names_.size(); }
    Elem identity() const { return identity_; }

    Elem mul(Elem a, Elem b) const { return table_[a * order() + b]; }
    Elem inverse(Elem a) const { return inverses_[a]; }

    const std::string& label(Elem a) const { return names_.at(a); }
    const std::vector<std::string>& labels() const { return names_; }
    std::optional<Elem> find(std::string_view label) const;

    bool is_abelian() const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b)
    {
        return a.names_ == b.names_ && a.table_ == b.table_;
    }

private:
    FiniteGroup() = default;

    std::string name_;
    std::vector<std::string> names_;
    std::vector<Elem> table_;
    Elem identity_ = 0;
    std::vector<Elem> inverses_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Standard catalog. Accepted specs and their element orderings:
///   cyclic-N       0, 1, ..., N-1 (addition mod N); "trivial" is cyclic-1
///   klein4         e, a, b, c with ab = c
///   symmetric-3    e, r, r2, s, rs, r2s  (r^3 = s^2 = e, sr = r2s)
///   dihedral-4     e, r, r2, r3, s, rs, r2s, r3s  (r^4 = s^2 = e, sr = r3s)
///   quaternion-8   1, -1, i, -i, j, -j, k, -k
///   A*B            direct product of two specs, pairs row-major in (A, B)
/// The returned group's name() is the canonical spelling of the spec.
GroupPtr standard_group(std::string_view spec);

/// Product with elements "(x,y)" ordered row-major in (g, h).
GroupPtr direct_product(const FiniteGroup& g, const FiniteGroup& h);

/// Default audit catalog: cyclic-2..cyclic-12, klein4, symmetric-3,
/// dihedral-4, quaternion-8, cyclic-2*cyclic-2.
std::vector<std::string> default_catalog();

enum class MapKind { homomorphism, anti_homomorphism };

std::string_view to_string(MapKind kind);
std::optional<MapKind> parse_map_kind(std::string_view text);

class MapEquationError : public std::invalid_argument {
public:
    MapEquationError(Elem x, Elem y, const std::string& message)
        : std::invalid_argument(message), x_(x), y_(y) {}

    Elem x() const { return x_; }
    Elem y() const { return y_; }

private:
    Elem x_;
    Elem y_;
};

/// A validated total map between groups satisfying its kind equation.
class GroupMap {
public:
    const GroupPtr& source() const { return source_; }
    const GroupPtr& target() const { return target_; }
    MapKind kind() const { return kind_; }
    const std::vector<Elem>& images() const { return images_; }
    Elem operator()(Elem x) const { return images_[x]; }

    bool is_surjective() const;

    friend bool operator==(const GroupMap& a, const GroupMap& b)
    {
        return a.kind_ == b.kind_ && a.images_ == b.images_ && *a.source_ == *b.source_ && *a.target_ == *b.target_;
    }

private:
    friend GroupMap make_map(GroupPtr, GroupPtr, std::vector<Elem>, MapKind);

    GroupPtr source_;
    GroupPtr target_;
    std::vector<Elem> images_;
    MapKind kind_ = MapKind::homomorphism;
};

/// Checks f(xy) = f(x)f(y) (homomorphism) or f(xy) = f(y)f(x) (anti) over all
/// pairs; throws MapEquationError with the first failing pair.
GroupMap make_map(GroupPtr source, GroupPtr target, std::vector<Elem> images, MapKind kind);

class InfeasibleEnumeration : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MapEnumerationOptions {
    std::size_t max_source_order = 8;
};

/// All maps of the given kind, sorted by image vector. Candidates are produced
/// by assigning images to a greedy generating set and extending along the
/// Cayley graph, so the work is |target|^(#generators) rather than
/// |target|^|source|.
std::vector<GroupMap> enumerate_maps(const GroupPtr& source, const GroupPtr& target, MapKind kind,
                                     const MapEnumerationOptions& options = {});

/// Greedy generating set: walks elements in order, keeping each one not
/// already in the subgroup generated by those kept so far.
std::vector<Elem> generating_set(const FiniteGroup& g);

/// { x : f(x) = y }; possibly empty.
ElementSet fiber(const GroupMap& f, Elem y);

struct CrispSubsetAnalysis {
    bool is_subgroup = false;
    ElementSet closure;  // smallest subgroup containing the input
    bool is_abelian = false;  // of the closure
    bool is_cyclic = false;   // of the closure
    std::optional<Elem> generator;
};

CrispSubsetAnalysis analyze_subset(const FiniteGroup& g, const ElementSet& subset);

/// Smallest subgroup containing the given elements.
ElementSet subgroup_closure(const FiniteGroup& g, const ElementSet& subset);

/// Every subgroup of g, ordered by size and then lexicographically.
std::vector<ElementSet> all_subgroups(const FiniteGroup& g);

}  // namespace aqf
