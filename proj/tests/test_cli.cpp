#include "doctest.h"

#include "aqf/cli.hpp"
#include "aqf/io.hpp"

#include <filesystem>
#include <sstream>

using namespace aqf;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data_path(const std::string& name)
{
    return std::string(AQF_DATA_DIR) + "/" + name;
}

std::string temp_path(const std::string& name)
{
    return (std::filesystem::temp_directory_path() / ("aqf-test-" + name)).string();
}

}  // namespace

TEST_CASE("usage errors")
{
    CHECK(run({}).code == exit_code::usage);
    CHECK(run({"frobnicate"}).code == exit_code::usage);
    CHECK(run({"audit", "--all", "--bogus"}).code == exit_code::usage);
    CHECK(run({"audit"}).code == exit_code::usage);
    CHECK(run({"audit", "--prop", "P9.9"}).code == exit_code::usage);
    CHECK(run({"check", "--prop", "nope"}).code == exit_code::usage);
    CHECK(run({"audit", "--all", "--trials", "0"}).code == exit_code::usage);
    CHECK(run({"audit", "--all", "--pool", "2"}).code == exit_code::usage);
    CHECK(run({"audit", "--all", "--catalog", "cyclic-0"}).code == exit_code::usage);
    CHECK(run({"group", "show", "nothing-here"}).code == exit_code::usage);
    CHECK(run({"fuzzy", "check", data_path("klein4-theta.json"), "--alpha", "x"}).code == exit_code::usage);
    CHECK(run({"examples", "reproduce", "9.9"}).code == exit_code::usage);
    CHECK(run({"--help"}).code == exit_code::ok);
}

TEST_CASE("group show")
{
    const Run r = run({"group", "show", "klein4"});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.find("klein4: order 4") == 0);
    const Run s = run({"group", "show", "symmetric-3", "--format", "structured"});
    CHECK(s.code == exit_code::ok);
    CHECK(parse_group(s.out, "out")->order() == 6);
}

TEST_CASE("fuzzy check verdicts and input errors")
{
    const std::string theta = data_path("klein4-theta.json");
    CHECK(run({"fuzzy", "check", theta}).code == exit_code::verdict_false);
    CHECK(run({"fuzzy", "check", theta, "--alpha", "0.09"}).code == exit_code::ok);
    CHECK(run({"fuzzy", "check", data_path("cyclic2-zero.json")}).code == exit_code::ok);
    CHECK(run({"fuzzy", "check", "/nonexistent.json"}).code == exit_code::no_input);

    const std::string bad = temp_path("bad.json");
    write_file(bad, "{ \"group\": \"klein4\" }");
    const Run r = run({"fuzzy", "check", bad});
    CHECK(r.code == exit_code::data);
    CHECK(r.err.find("q_labels") != std::string::npos);
    std::filesystem::remove(bad);
}

TEST_CASE("fuzzy combine writes a fuzzy file")
{
    const std::string out = temp_path("union.json");
    const Run r = run({"fuzzy", "combine", "union", data_path("cyclic12-theta.json"), data_path("cyclic12-sigma.json"),
                       "--out", out});
    CHECK(r.code == exit_code::ok);
    CHECK(r.out.empty());
    const CyclicUnionExample ex = cyclic12_example();
    CHECK(load_fuzzy(out) == combine(Combine::union_, ex.theta, ex.sigma));
    std::filesystem::remove(out);
}

TEST_CASE("examples reproduce")
{
    CHECK(run({"examples", "reproduce", "4.5"}).code == exit_code::ok);
    const Run r = run({"examples", "reproduce", "cyclic12-union", "--format", "structured"});
    CHECK(r.code == exit_code::ok);
    CHECK(parse_structured(r.out).size() == 1);
}

TEST_CASE("audits: exit codes, --out, determinism")
{
    const std::vector<std::string> base{"--catalog", "cyclic-2,klein4", "--trials", "25", "--format", "structured"};
    auto args = [&](std::vector<std::string> head, std::vector<std::string> tail = {}) {
        head.insert(head.end(), base.begin(), base.end());
        head.insert(head.end(), tail.begin(), tail.end());
        return head;
    };
    const Run ok = run(args({"check", "--prop", "P4.2"}));
    CHECK(ok.code == exit_code::ok);
    CHECK(parse_structured(ok.out).size() == 2);

    const Run refuted = run({"audit", "--prop", "abelian-preimage", "--catalog", "cyclic-2,symmetric-3", "--trials", "50"});
    CHECK(refuted.code == exit_code::audit_failure);

    const Run recorded = run(args({"audit", "--prop", "complement-literal,cyclic-preimage"}));
    CHECK(recorded.code == exit_code::ok);

    const std::string path = temp_path("audit.json");
    const Run to_file = run(args({"audit", "--prop", "P4.11,R4.9"}, {"--out", path, "--threads", "2"}));
    CHECK(to_file.code == exit_code::ok);
    CHECK(to_file.out.empty());
    const Run to_stdout = run(args({"audit", "--prop", "P4.11,R4.9"}, {"--threads", "1"}));
    CHECK(read_file(path) == to_stdout.out);
    std::filesystem::remove(path);

    const Run other_seed = run(args({"audit", "--prop", "P4.11"}, {"--seed", "8"}));
    const Run same_seed = run(args({"audit", "--prop", "P4.11"}, {"--seed", "8"}));
    CHECK(other_seed.out == same_seed.out);
}
