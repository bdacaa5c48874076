#include "aqf/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace aqf {

using Json = nlohmann::ordered_json;

ParseError::ParseError(std::string source, std::size_t line, std::string field, const std::string& problem)
    : std::runtime_error(source + ":" + std::to_string(line) + ": field '" + field + "': " + problem),
      source_(std::move(source)),
      line_(line),
      field_(std::move(field))
{
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << content;
}

namespace {

std::size_t line_at(std::string_view text, std::size_t pos)
{
    pos = std::min(pos, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

// Line of the innermost key along a path of object keys. JSON parsers do not
// report positions of values, so keys are located textually in order.
std::size_t locate(std::string_view text, const std::vector<std::string>& keys)
{
    std::size_t pos = 0;
    for (const auto& key : keys) {
        const std::string needle = "\"" + key + "\"";
        for (std::size_t p = text.find(needle, pos); p != std::string_view::npos; p = text.find(needle, p + 1)) {
            std::size_t after = p + needle.size();
            while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) {
                ++after;
            }
            if (after < text.size() && text[after] == ':') {
                pos = p;
                break;
            }
        }
    }
    return line_at(text, pos);
}

class Reader {
public:
    Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source))
    {
        try {
            root_ = Json::parse(text_);
        } catch (const Json::parse_error& e) {
            const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
            std::string what = e.what();
            if (auto p = what.find("syntax error"); p != std::string::npos) {
                what = what.substr(p);
            }
            throw ParseError(source_, line_at(text_, byte), "<document>", what);
        }
        if (!root_.is_object()) {
            fail({}, "<document>", "expected an object");
        }
    }

    const Json& root() const { return root_; }

    [[noreturn]] void fail(const std::vector<std::string>& keys, const std::string& field,
                           const std::string& problem) const
    {
        throw ParseError(source_, locate(text_, keys), field, problem);
    }

    const Json& member(const Json& obj, const std::string& key, const std::vector<std::string>& path,
                       const std::string& field) const
    {
        auto it = obj.find(key);
        if (it == obj.end()) {
            fail(path, field, "missing");
        }
        return *it;
    }

    std::string string(const Json& v, const std::vector<std::string>& path, const std::string& field) const
    {
        if (!v.is_string()) {
            fail(path, field, "expected a string");
        }
        return v.get<std::string>();
    }

    std::vector<std::string> labels(const Json& v, const std::vector<std::string>& path,
                                    const std::string& field) const
    {
        if (!v.is_array() || v.empty()) {
            fail(path, field, "expected a nonempty array of labels");
        }
        std::vector<std::string> out;
        std::set<std::string> seen;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string f = field + "[" + std::to_string(i) + "]";
            std::string label = string(v[i], path, f);
            if (label.empty() || std::any_of(label.begin(), label.end(),
                                             [](unsigned char c) { return std::isspace(c) != 0; })) {
                fail(path, f, "label '" + label + "' is empty or contains whitespace");
            }
            if (!seen.insert(label).second) {
                fail(path, f, "duplicate label '" + label + "'");
            }
            out.push_back(std::move(label));
        }
        return out;
    }

    Grade grade(const Json& v, const std::vector<std::string>& path, const std::string& field) const
    {
        const std::string literal = string(v, path, field);
        try {
            return Grade::parse(literal);
        } catch (const std::invalid_argument& e) {
            fail(path, field, e.what());
        }
    }

    void only(const Json& obj, std::initializer_list<const char*> allowed, const std::vector<std::string>& path,
              const std::string& prefix) const
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; })) {
                std::vector<std::string> p = path;
                p.push_back(it.key());
                fail(p, prefix + it.key(), "unknown field");
            }
        }
    }

private:
    std::string_view text_;
    std::string source_;
    Json root_;
};

}  // namespace

GroupPtr parse_group(std::string_view text, const std::string& source)
{
    const Reader r(text, source);
    const Json& root = r.root();
    r.only(root, {"name", "elements", "table"}, {}, "");
    const std::string name = r.string(r.member(root, "name", {}, "name"), {"name"}, "name");
    const std::vector<std::string> elements =
        r.labels(r.member(root, "elements", {}, "elements"), {"elements"}, "elements");
    const Json& table = r.member(root, "table", {}, "table");
    const std::size_t n = elements.size();
    if (!table.is_array() || table.size() != n) {
        r.fail({"table"}, "table", "expected " + std::to_string(n) + " rows");
    }
    std::vector<std::vector<std::string>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string f = "table[" + std::to_string(i) + "]";
        if (!table[i].is_array() || table[i].size() != n) {
            r.fail({"table"}, f, "expected " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::string fj = f + "[" + std::to_string(j) + "]";
            std::string label = r.string(table[i][j], {"table"}, fj);
            if (std::find(elements.begin(), elements.end(), label) == elements.end()) {
                r.fail({"table"}, fj, "'" + label + "' is not a listed element");
            }
            rows[i].push_back(std::move(label));
        }
    }
    try {
        return std::make_shared<const FiniteGroup>(FiniteGroup::build(name, elements, rows));
    } catch (const std::invalid_argument& e) {
        r.fail({"table"}, "table", e.what());
    }
}

GroupPtr load_group(const std::string& path)
{
    return parse_group(read_file(path), path);
}

std::string write_group(const FiniteGroup& g)
{
    Json out;
    out["name"] = g.name();
    out["elements"] = g.labels();
    Json table = Json::array();
    for (Elem x = 0; x < g.order(); ++x) {
        Json row = Json::array();
        for (Elem y = 0; y < g.order(); ++y) {
            row.push_back(g.label(g.mul(x, y)));
        }
        table.push_back(std::move(row));
    }
    out["table"] = std::move(table);
    return out.dump(2) + "\n";
}

GroupPtr resolve_standard(const std::string& name)
{
    return standard_group(name);
}

QFuzzySubset parse_fuzzy(std::string_view text, const std::string& source, const GroupResolver& resolve)
{
    const Reader r(text, source);
    const Json& root = r.root();
    r.only(root, {"group", "q_labels", "grades"}, {}, "");
    const std::string group_name = r.string(r.member(root, "group", {}, "group"), {"group"}, "group");
    GroupPtr group;
    try {
        group = resolve(group_name);
    } catch (const std::invalid_argument& e) {
        r.fail({"group"}, "group", e.what());
    }
    const QLabels q(r.labels(r.member(root, "q_labels", {}, "q_labels"), {"q_labels"}, "q_labels"));
    const Json& grades = r.member(root, "grades", {}, "grades");
    if (!grades.is_object()) {
        r.fail({"grades"}, "grades", "expected an object keyed by element label");
    }
    for (auto it = grades.begin(); it != grades.end(); ++it) {
        if (!group->find(it.key())) {
            r.fail({"grades", it.key()}, "grades." + it.key(), "not an element of " + group->name());
        }
        if (!it.value().is_object()) {
            r.fail({"grades", it.key()}, "grades." + it.key(), "expected an object keyed by q label");
        }
        for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) {
            if (!q.find(jt.key())) {
                r.fail({"grades", it.key(), jt.key()}, "grades." + it.key() + "." + jt.key(), "unknown q label");
            }
        }
    }
    std::vector<Grade> flat;
    for (Elem x = 0; x < group->order(); ++x) {
        const std::string& label = group->label(x);
        const std::string f = "grades." + label;
        auto row = grades.find(label);
        if (row == grades.end()) {
            r.fail({"grades"}, f, "missing element");
        }
        for (std::size_t k = 0; k < q.size(); ++k) {
            const std::string fk = f + "." + q[k];
            auto cell = row->find(q[k]);
            if (cell == row->end()) {
                r.fail({"grades", label}, fk, "missing grade");
            }
            flat.push_back(r.grade(*cell, {"grades", label, q[k]}, fk));
        }
    }
    return QFuzzySubset(group, q, std::move(flat));
}

QFuzzySubset load_fuzzy(const std::string& path, const GroupResolver& resolve)
{
    return parse_fuzzy(read_file(path), path, resolve);
}

std::string write_fuzzy(const QFuzzySubset& t)
{
    Json out;
    out["group"] = t.group()->name();
    out["q_labels"] = t.q().labels();
    Json grades = Json::object();
    for (Elem x = 0; x < t.group()->order(); ++x) {
        Json row = Json::object();
        for (std::size_t k = 0; k < t.q().size(); ++k) {
            row[t.q()[k]] = t(x, k).str();
        }
        grades[t.group()->label(x)] = std::move(row);
    }
    out["grades"] = std::move(grades);
    return out.dump(2) + "\n";
}

namespace {

std::string pad(std::string s, std::size_t width)
{
    if (s.size() < width) {
        s.append(width - s.size(), ' ');
    }
    return s;
}

std::string rpad(const std::string& s, std::size_t width)
{
    return s.size() < width ? std::string(width - s.size(), ' ') + s : s;
}

std::vector<std::string> labels_of(const std::string& group, std::size_t n)
{
    try {
        const GroupPtr g = standard_group(group);
        if (g->order() == n) {
            return g->labels();
        }
    } catch (const std::invalid_argument&) {
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::to_string(i));
    }
    return out;
}

void render_counterexample(std::ostringstream& out, const Counterexample& cx, const std::string& heading)
{
    out << "  " << heading << " [" << cx.condition << "]\n";
    out << "    " << cx.detail << "\n";
    if (cx.lhs && cx.rhs) {
        out << "    lhs = " << cx.lhs->text() << ", rhs = " << cx.rhs->text() << "\n";
    }
    out << "    alpha = " << cx.alpha.text() << "\n";
    if (cx.map) {
        out << "    map: " << to_string(cx.map->kind) << " " << cx.map->source << " -> " << cx.map->target << " [";
        for (std::size_t i = 0; i < cx.map->images.size(); ++i) {
            out << (i ? ", " : "") << cx.map->images[i];
        }
        out << "]\n";
    }
    for (const auto& s : cx.subsets) {
        const std::size_t nq = s.q_labels.size();
        const std::size_t n = nq ? s.grades.size() / nq : 0;
        const auto labels = labels_of(s.group, n);
        out << "    " << s.role << " on " << s.group << ":";
        for (std::size_t x = 0; x < n; ++x) {
            out << (x ? "," : "") << " " << labels[x] << "(";
            for (std::size_t k = 0; k < nq; ++k) {
                out << (k ? " " : "") << s.q_labels[k] << "=" << s.grades[x * nq + k].text();
            }
            out << ")";
        }
        out << "\n";
    }
}

}  // namespace

std::string render_text(const std::vector<AuditReport>& reports)
{
    std::ostringstream out;
    out << pad("claim", 24) << pad("alias", 15) << pad("group", 20) << rpad("trials", 7) << rpad("passes", 8)
        << rpad("filtered", 10) << "  status\n";
    for (const auto& r : reports) {
        out << pad(r.claim, 24) << pad(r.alias, 15) << pad(r.group, 20) << rpad(std::to_string(r.trials), 7)
            << rpad(std::to_string(r.passes), 8) << rpad(std::to_string(r.filtered), 10) << "  " << to_string(r.status)
            << "\n";
    }
    for (const auto& r : reports) {
        if (r.failures.empty() && r.witnesses.empty() && r.note.empty()) {
            continue;
        }
        out << "\n" << r.claim << " (" << r.alias << ") on " << r.group << ": " << to_string(r.status) << "\n";
        if (!r.note.empty()) {
            out << "  note: " << r.note << "\n";
        }
        for (std::size_t i = 0; i < r.failures.size(); ++i) {
            render_counterexample(out, r.failures[i], "counterexample " + std::to_string(i + 1));
        }
        for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
            render_counterexample(out, r.witnesses[i], "witness " + std::to_string(i + 1));
        }
    }
    return out.str();
}

namespace {

Json grade_json(const std::optional<Grade>& g)
{
    return g ? Json(g->str()) : Json(nullptr);
}

Json counterexample_json(const Counterexample& cx)
{
    Json out;
    out["claim"] = cx.claim;
    out["condition"] = cx.condition;
    out["detail"] = cx.detail;
    out["lhs"] = grade_json(cx.lhs);
    out["rhs"] = grade_json(cx.rhs);
    out["alpha"] = cx.alpha.str();
    Json subsets = Json::array();
    for (const auto& s : cx.subsets) {
        Json j;
        j["role"] = s.role;
        j["group"] = s.group;
        j["q_labels"] = s.q_labels;
        Json grades = Json::array();
        for (const auto& g : s.grades) {
            grades.push_back(g.str());
        }
        j["grades"] = std::move(grades);
        subsets.push_back(std::move(j));
    }
    out["subsets"] = std::move(subsets);
    if (cx.map) {
        Json m;
        m["source"] = cx.map->source;
        m["target"] = cx.map->target;
        m["kind"] = std::string(to_string(cx.map->kind));
        m["images"] = cx.map->images;
        out["map"] = std::move(m);
    } else {
        out["map"] = nullptr;
    }
    return out;
}

// Structured reports are machine-written; errors carry the JSON path.
class ReportReader {
public:
    ReportReader(std::string_view text, std::string source) : reader_(text, std::move(source)) {}

    std::vector<AuditReport> reports() const
    {
        const Json& root = reader_.root();
        const Json& list = reader_.member(root, "reports", {}, "reports");
        if (!list.is_array()) {
            reader_.fail({"reports"}, "reports", "expected an array");
        }
        std::vector<AuditReport> out;
        for (std::size_t i = 0; i < list.size(); ++i) {
            out.push_back(report(list[i], "reports[" + std::to_string(i) + "]"));
        }
        return out;
    }

private:
    const Json& field(const Json& obj, const char* key, const std::string& path) const
    {
        if (!obj.is_object()) {
            reader_.fail({}, path, "expected an object");
        }
        return reader_.member(obj, key, {}, path + "." + key);
    }

    std::string str(const Json& obj, const char* key, const std::string& path) const
    {
        return reader_.string(field(obj, key, path), {}, path + "." + key);
    }

    std::size_t count(const Json& obj, const char* key, const std::string& path) const
    {
        const Json& v = field(obj, key, path);
        if (!v.is_number_unsigned()) {
            reader_.fail({}, path + "." + key, "expected a nonnegative integer");
        }
        return v.get<std::size_t>();
    }

    std::optional<Grade> maybe_grade(const Json& obj, const char* key, const std::string& path) const
    {
        const Json& v = field(obj, key, path);
        if (v.is_null()) {
            return std::nullopt;
        }
        return reader_.grade(v, {}, path + "." + key);
    }

    std::vector<std::string> strings(const Json& v, const std::string& path) const
    {
        if (!v.is_array()) {
            reader_.fail({}, path, "expected an array");
        }
        std::vector<std::string> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(reader_.string(v[i], {}, path + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    Counterexample counterexample(const Json& j, const std::string& path) const
    {
        Counterexample cx;
        cx.claim = str(j, "claim", path);
        cx.condition = str(j, "condition", path);
        cx.detail = str(j, "detail", path);
        cx.lhs = maybe_grade(j, "lhs", path);
        cx.rhs = maybe_grade(j, "rhs", path);
        cx.alpha = reader_.grade(field(j, "alpha", path), {}, path + ".alpha");
        const Json& subsets = field(j, "subsets", path);
        if (!subsets.is_array()) {
            reader_.fail({}, path + ".subsets", "expected an array");
        }
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            const std::string p = path + ".subsets[" + std::to_string(i) + "]";
            SubsetRecord s;
            s.role = str(subsets[i], "role", p);
            s.group = str(subsets[i], "group", p);
            s.q_labels = strings(field(subsets[i], "q_labels", p), p + ".q_labels");
            const Json& grades = field(subsets[i], "grades", p);
            if (!grades.is_array()) {
                reader_.fail({}, p + ".grades", "expected an array");
            }
            for (std::size_t k = 0; k < grades.size(); ++k) {
                s.grades.push_back(reader_.grade(grades[k], {}, p + ".grades[" + std::to_string(k) + "]"));
            }
            cx.subsets.push_back(std::move(s));
        }
        const Json& map = field(j, "map", path);
        if (!map.is_null()) {
            const std::string p = path + ".map";
            MapRecord m;
            m.source = str(map, "source", p);
            m.target = str(map, "target", p);
            const auto kind = parse_map_kind(str(map, "kind", p));
            if (!kind) {
                reader_.fail({}, p + ".kind", "unknown map kind");
            }
            m.kind = *kind;
            m.images = strings(field(map, "images", p), p + ".images");
            cx.map = std::move(m);
        }
        return cx;
    }

    std::vector<Counterexample> counterexamples(const Json& obj, const char* key, const std::string& path) const
    {
        const Json& v = field(obj, key, path);
        if (!v.is_array()) {
            reader_.fail({}, path + "." + key, "expected an array");
        }
        std::vector<Counterexample> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            out.push_back(counterexample(v[i], path + "." + key + "[" + std::to_string(i) + "]"));
        }
        return out;
    }

    AuditReport report(const Json& j, const std::string& path) const
    {
        AuditReport r;
        r.claim = str(j, "claim", path);
        r.alias = str(j, "alias", path);
        r.group = str(j, "group", path);
        r.trials = count(j, "trials", path);
        r.passes = count(j, "passes", path);
        r.filtered = count(j, "filtered", path);
        const auto status = parse_audit_status(str(j, "status", path));
        if (!status) {
            reader_.fail({}, path + ".status", "unknown status");
        }
        r.status = *status;
        r.note = str(j, "note", path);
        r.failures = counterexamples(j, "failures", path);
        r.witnesses = counterexamples(j, "witnesses", path);
        return r;
    }

    Reader reader_;
};

}  // namespace

std::string render_structured(const std::vector<AuditReport>& reports)
{
    Json list = Json::array();
    for (const auto& r : reports) {
        Json j;
        j["claim"] = r.claim;
        j["alias"] = r.alias;
        j["group"] = r.group;
        j["trials"] = r.trials;
        j["passes"] = r.passes;
        j["filtered"] = r.filtered;
        j["status"] = std::string(to_string(r.status));
        j["note"] = r.note;
        Json failures = Json::array();
        for (const auto& cx : r.failures) {
            failures.push_back(counterexample_json(cx));
        }
        j["failures"] = std::move(failures);
        Json witnesses = Json::array();
        for (const auto& cx : r.witnesses) {
            witnesses.push_back(counterexample_json(cx));
        }
        j["witnesses"] = std::move(witnesses);
        list.push_back(std::move(j));
    }
    Json out;
    out["format"] = "aqf-audit";
    out["version"] = 1;
    out["reports"] = std::move(list);
    return out.dump(2) + "\n";
}

std::vector<AuditReport> parse_structured(std::string_view text, const std::string& source)
{
    return ReportReader(text, source).reports();
}

std::string render_check_text(const CheckReport& report, const QFuzzySubset& t, std::string_view title)
{
    std::ostringstream out;
    out << title << ": " << (report.verdict ? "passes" : "fails") << "\n";
    for (const auto& c : report.conditions) {
        out << "  " << pad(c.name, 14) << (c.holds ? "holds" : "fails");
        if (c.witness) {
            out << "  " << render(*c.witness, *t.group(), t.q());
        }
        out << "\n";
    }
    if (report.condition("difference")) {
        out << "  forms agree:  " << (report.forms_agree ? "yes" : "no") << "\n";
    }
    if (report.witness) {
        out << "witness: " << report.detail << "\n";
        out << "  lhs = " << report.witness->lhs.text() << ", rhs = " << report.witness->rhs.text() << "\n";
    }
    return out.str();
}

std::string render_check_structured(const CheckReport& report, const QFuzzySubset& t, std::string_view title)
{
    const auto inequality = [&](const Inequality& w) {
        Json j;
        j["condition"] = w.condition;
        Json at = Json::array();
        for (Elem x : w.at) {
            at.push_back(t.group()->label(x));
        }
        j["at"] = std::move(at);
        j["q"] = t.q()[w.q];
        j["lhs"] = w.lhs.str();
        j["rhs"] = w.rhs.str();
        return j;
    };
    Json out;
    out["title"] = std::string(title);
    out["verdict"] = report.verdict;
    Json conditions = Json::array();
    for (const auto& c : report.conditions) {
        Json j;
        j["name"] = c.name;
        j["holds"] = c.holds;
        j["witness"] = c.witness ? inequality(*c.witness) : Json(nullptr);
        conditions.push_back(std::move(j));
    }
    out["conditions"] = std::move(conditions);
    if (report.condition("difference")) {
        out["forms_agree"] = report.forms_agree;
    }
    out["detail"] = report.detail;
    return out.dump(2) + "\n";
}

}  // namespace aqf
