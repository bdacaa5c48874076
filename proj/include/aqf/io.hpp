#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aqf/fuzzy.hpp"
#include "aqf/subgroup_check.hpp"
#include "aqf/theorem_lab.hpp"

namespace aqf {

/// Malformed input. The message names the source, the line, and the field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, std::string field, const std::string& problem);

    const std::string& source() const { return source_; }
    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    std::string source_;
    std::size_t line_;
    std::string field_;
};

/// Missing or unreadable file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// Group file:
//   { "name": "klein4", "elements": ["e", "a", "b", "c"],
//     "table": [["e", "a", "b", "c"], ...] }
GroupPtr parse_group(std::string_view text, const std::string& source);
GroupPtr load_group(const std::string& path);
std::string write_group(const FiniteGroup& g);

/// Resolves a fuzzy file's "group" field to a group.
using GroupResolver = std::function<GroupPtr(const std::string& name)>;

/// standard_group, for catalog names.
GroupPtr resolve_standard(const std::string& name);

// Fuzzy-set file:
//   { "group": "klein4", "q_labels": ["q"],
//     "grades": { "e": { "q": "0.2" }, "a": { "q": "2/5" }, ... } }
// Every (element, label) pair must be present. Grades are decimal or "p/q"
// strings; bare JSON numbers are rejected so no binary float is involved.
QFuzzySubset parse_fuzzy(std::string_view text, const std::string& source,
                         const GroupResolver& resolve = resolve_standard);
QFuzzySubset load_fuzzy(const std::string& path, const GroupResolver& resolve = resolve_standard);
/// Grades written as "p/q"; parse_fuzzy(write_fuzzy(t)) == t.
std::string write_fuzzy(const QFuzzySubset& t);

/// Fixed-width table (claim, alias, group, trials, passes, filtered, status)
/// followed by one block per recorded counterexample, witness, or note.
std::string render_text(const std::vector<AuditReport>& reports);

/// Machine-readable report; grades rendered as "p/q".
std::string render_structured(const std::vector<AuditReport>& reports);
std::vector<AuditReport> parse_structured(std::string_view text, const std::string& source = "<report>");

std::string render_check_text(const CheckReport& report, const QFuzzySubset& t, std::string_view title);
std::string render_check_structured(const CheckReport& report, const QFuzzySubset& t, std::string_view title);

}  // namespace aqf
