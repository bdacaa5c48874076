#include "aqf/cli.hpp"

#include <filesystem>
#include <sstream>

#include "CLI11.hpp"
#include "aqf/io.hpp"

namespace aqf {

namespace {

struct AuditFlags {
    std::size_t trials = 200;
    std::uint64_t seed = 7;
    std::vector<std::string> catalog;
    std::vector<std::string> pool;
    std::size_t q_size = 2;
    unsigned threads = 0;
    std::uint64_t search_bound = std::uint64_t{1} << 20;
    std::string format = "text";
    std::string out;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void add_audit_flags(CLI::App* cmd, AuditFlags& f)
{
    cmd->add_option("--trials", f.trials, "Evaluated trials per claim and group")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Base seed");
    cmd->add_option("--catalog", f.catalog, "Comma-separated group specs")->delimiter(',');
    cmd->add_option("--pool", f.pool, "Comma-separated grade literals")->delimiter(',');
    cmd->add_option("--q-size", f.q_size, "Number of q labels")->check(CLI::PositiveNumber);
    cmd->add_option("--threads", f.threads, "Worker threads (0: one per core)");
    cmd->add_option("--search-bound", f.search_bound, "Largest assignment space searched per group");
    cmd->add_option("--format", f.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    cmd->add_option("--out", f.out, "Write the report to this path");
}

AuditConfig config_from(const AuditFlags& f)
{
    AuditConfig c;
    c.trials = f.trials;
    c.seed = f.seed;
    c.q_size = f.q_size;
    c.threads = f.threads;
    c.search_bound = f.search_bound;
    if (!f.catalog.empty()) {
        c.catalog.clear();
        for (const auto& name : f.catalog) {
            try {
                c.catalog.push_back(standard_group(name)->name());
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("--catalog: ") + e.what());
            }
        }
    }
    if (!f.pool.empty()) {
        c.grade_pool.clear();
        for (const auto& literal : f.pool) {
            try {
                c.grade_pool.push_back(Grade::parse(literal));
            } catch (const GradeError& e) {
                throw UsageError(std::string("--pool: ") + e.what());
            }
        }
    }
    return c;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
    } else {
        write_file(path, text);
    }
}

int audit_exit(const std::vector<AuditReport>& reports)
{
    for (const auto& r : reports) {
        const auto info = find_claim(r.claim);
        if (info && expects_verification(*info) && r.status == AuditStatus::refuted) {
            return exit_code::audit_failure;
        }
    }
    return exit_code::ok;
}

int run_audit(const std::vector<std::string>& claims, const AuditFlags& f, std::ostream& out)
{
    const AuditConfig config = config_from(f);
    const std::vector<AuditReport> reports = audit(claims, config);
    emit(f.format == "structured" ? render_structured(reports) : render_text(reports), f.out, out);
    return audit_exit(reports);
}

GroupPtr group_from_arg(const std::string& arg)
{
    if (std::filesystem::is_regular_file(arg)) {
        return load_group(arg);
    }
    try {
        return standard_group(arg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string(e.what()) + " (and no such file)");
    }
}

std::string render_group(const FiniteGroup& g)
{
    std::size_t width = 1;
    for (const auto& l : g.labels()) {
        width = std::max(width, l.size());
    }
    const auto cell = [&](const std::string& s) { return s + std::string(width + 1 - s.size(), ' '); };
    std::ostringstream out;
    out << g.name() << ": order " << g.order() << ", identity " << g.label(g.identity()) << ", "
        << (g.is_abelian() ? "abelian" : "non-abelian") << "\n";
    out << cell("*") << "| ";
    for (Elem y = 0; y < g.order(); ++y) {
        out << cell(g.label(y));
    }
    out << "\n" << std::string(width + 1, '-') << "+" << std::string((width + 1) * g.order() + 1, '-') << "\n";
    for (Elem x = 0; x < g.order(); ++x) {
        out << cell(g.label(x)) << "| ";
        for (Elem y = 0; y < g.order(); ++y) {
            out << cell(g.label(g.mul(x, y)));
        }
        out << "\n";
    }
    return out.str();
}

GroupResolver resolver_for(const std::string& group_file)
{
    if (group_file.empty()) {
        return resolve_standard;
    }
    GroupPtr g = load_group(group_file);
    return [g](const std::string& name) {
        if (name != g->name()) {
            throw std::invalid_argument("group '" + name + "' does not match the group file's '" + g->name() + "'");
        }
        return g;
    };
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Alpha-Q-fuzzy subgroups over finite groups: checks, audits, and worked examples", "aqf"};
    app.require_subcommand(1);

    std::function<int()> action;

    auto* group = app.add_subcommand("group", "Finite groups");
    group->require_subcommand(1);
    auto* group_show = group->add_subcommand("show", "Print a Cayley table");
    std::string group_arg;
    std::string group_format = "text";
    group_show->add_option("group", group_arg, "Standard spec (cyclic-N, klein4, ...) or group file")->required();
    group_show->add_option("--format", group_format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    group_show->callback([&] {
        action = [&] {
            const GroupPtr g = group_from_arg(group_arg);
            out << (group_format == "structured" ? write_group(*g) : render_group(*g));
            return exit_code::ok;
        };
    });

    auto* fuzzy = app.add_subcommand("fuzzy", "Q-fuzzy subsets");
    fuzzy->require_subcommand(1);
    auto* fuzzy_check = fuzzy->add_subcommand("check", "Check the subgroup conditions of a fuzzy-set file");
    std::string fuzzy_file;
    std::string alpha_text;
    std::string group_file;
    std::string check_format = "text";
    fuzzy_check->add_option("file", fuzzy_file, "Fuzzy-set file")->required();
    fuzzy_check->add_option("--alpha", alpha_text, "Check the alpha-restriction instead of the base");
    fuzzy_check->add_option("--group-file", group_file, "Group file the fuzzy set refers to");
    fuzzy_check->add_option("--format", check_format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    fuzzy_check->callback([&] {
        action = [&] {
            std::optional<Grade> alpha;
            if (!alpha_text.empty()) {
                try {
                    alpha = Grade::parse(alpha_text);
                } catch (const GradeError& e) {
                    throw UsageError(std::string("--alpha: ") + e.what());
                }
            }
            const QFuzzySubset t = load_fuzzy(fuzzy_file, resolver_for(group_file));
            CheckReport report;
            std::string title;
            if (alpha) {
                report = check_alpha_subgroup(alpha_restrict(t, *alpha));
                title = "alpha-Q-fuzzy subgroup at alpha = " + alpha->text();
            } else {
                report = check_qfuzzy_subgroup(t);
                title = "Q-fuzzy subgroup";
            }
            out << (check_format == "structured" ? render_check_structured(report, t, title)
                                                 : render_check_text(report, t, title));
            return report.verdict ? exit_code::ok : exit_code::verdict_false;
        };
    });

    auto* fuzzy_combine = fuzzy->add_subcommand("combine", "Union or intersection of two fuzzy-set files");
    std::string combine_kind;
    std::string combine_a;
    std::string combine_b;
    std::string combine_out;
    fuzzy_combine->add_option("kind", combine_kind, "union or intersection")
        ->required()
        ->check(CLI::IsMember({"union", "intersection"}));
    fuzzy_combine->add_option("a", combine_a, "First fuzzy-set file")->required();
    fuzzy_combine->add_option("b", combine_b, "Second fuzzy-set file")->required();
    fuzzy_combine->add_option("--group-file", group_file, "Group file the fuzzy sets refer to");
    fuzzy_combine->add_option("--out", combine_out, "Write the result to this path");
    fuzzy_combine->callback([&] {
        action = [&] {
            const GroupResolver resolve = resolver_for(group_file);
            const QFuzzySubset a = load_fuzzy(combine_a, resolve);
            const QFuzzySubset b = load_fuzzy(combine_b, resolve);
            const Combine kind = combine_kind == "union" ? Combine::union_ : Combine::intersection;
            emit(write_fuzzy(combine(kind, a, b)), combine_out, out);
            return exit_code::ok;
        };
    });

    auto* check = app.add_subcommand("check", "Audit a single claim");
    std::string prop;
    AuditFlags check_flags;
    check->add_option("--prop", prop, "Claim id or alias")->required();
    add_audit_flags(check, check_flags);
    check->callback([&] {
        action = [&] {
            try {
                return run_audit(resolve_claim_ids(prop), check_flags, out);
            } catch (const std::invalid_argument& e) {
                if (!find_claim(prop) && prop != "P4.11") {
                    throw UsageError(e.what());
                }
                throw;
            }
        };
    });

    auto* audit_cmd = app.add_subcommand("audit", "Audit every claim, or the listed ones");
    bool all = false;
    std::vector<std::string> props;
    AuditFlags audit_flags;
    auto* all_flag = audit_cmd->add_flag("--all", all, "Every claim");
    auto* prop_opt = audit_cmd->add_option("--prop", props, "Claim ids or aliases")->delimiter(',');
    all_flag->excludes(prop_opt);
    add_audit_flags(audit_cmd, audit_flags);
    audit_cmd->callback([&] {
        action = [&] {
            if (!all && props.empty()) {
                throw UsageError("audit needs --all or --prop");
            }
            std::vector<std::string> claims = all ? all_claim_ids() : props;
            for (const auto& c : claims) {
                try {
                    resolve_claim_ids(c);
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
            }
            return run_audit(claims, audit_flags, out);
        };
    });

    auto* examples = app.add_subcommand("examples", "Bundled worked examples");
    examples->require_subcommand(1);
    auto* reproduce = examples->add_subcommand("reproduce", "Reproduce a worked example");
    std::string example_id;
    std::string example_format = "text";
    std::string example_out;
    reproduce->add_option("example", example_id, "4.5 (klein4-alpha) or 4.10 (cyclic12-union)")
        ->required()
        ->check(CLI::IsMember({"4.5", "4.10", "klein4-alpha", "cyclic12-union", "example-4.5", "example-4.10"}));
    reproduce->add_option("--format", example_format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));
    reproduce->add_option("--out", example_out, "Write the report to this path");
    reproduce->callback([&] {
        action = [&] {
            try {
                const std::vector<AuditReport> reports{reproduce_example(example_id)};
                emit(example_format == "structured" ? render_structured(reports) : render_text(reports), example_out,
                     out);
                return exit_code::ok;
            } catch (const ExampleDivergence& e) {
                err << "aqf: example diverged: " << e.what() << "\n";
                return exit_code::audit_failure;
            }
        };
    });

    std::vector<const char*> argv{"aqf"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::usage;
    }

    try {
        return action ? action() : exit_code::usage;
    } catch (const UsageError& e) {
        err << "aqf: " << e.what() << "\n";
        return exit_code::usage;
    } catch (const InputError& e) {
        err << "aqf: " << e.what() << "\n";
        return exit_code::no_input;
    } catch (const ParseError& e) {
        err << "aqf: " << e.what() << "\n";
        return exit_code::data;
    } catch (const std::exception& e) {
        err << "aqf: " << e.what() << "\n";
        return exit_code::data;
    }
}

}  // namespace aqf
