#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <doctest.h>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = esc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("esc_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("solve") {
    const auto r = run({"solve", "7"});
    CHECK(r.code == 0);
    CHECK(r.out == "4/7 = 1/4 + 1/4 + 1/14\n");

    const auto bad = run({"solve", "9"});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "9 is not prime"));

    const auto csv = run({"solve", "5", "--all", "--format", "csv"});
    CHECK(csv.code == 0);
    CHECK(lines_of(csv.out) == std::vector<std::string>{"p,x,y,z,type,eq5", "5,2,4,20,I,true", "5,2,5,10,II,true"});

    const auto en = run({"enumerate", "5", "--format", "csv"});
    CHECK(en.out == csv.out);
}

TEST_CASE("solve formats and strategies") {
    const auto jsonl = run({"solve", "7", "--strategy", "oracle", "--all", "--format", "jsonl"});
    CHECK(jsonl.code == 0);
    CHECK(lines_of(jsonl.out).size() == 7);
    CHECK(lines_of(jsonl.out).front() == R"({"p":7,"x":2,"y":15,"z":210,"type":"I","eq5":true})");

    const auto json = run({"solve", "3", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(contains(json.out, R"("version":")"));
    CHECK(contains(json.out, R"("solutions":[{"p":3,)"));

    CHECK(run({"solve", "7", "--strategy", "greedy"}).code == 2);
    CHECK(run({"solve", "7", "--format", "yaml"}).code == 2);
    CHECK(run({"solve", "abc"}).code == 2);
    CHECK(run({"solve", "1073741827"}).code == 2);
    CHECK(run({"solve", "50021", "--strategy", "oracle"}).code == 2);
    CHECK(run({"solve", "50021", "--strategy", "one-var"}).code == 0);
}

TEST_CASE("verify") {
    const auto ok = run({"verify", "5", "2", "4", "20"});
    CHECK(ok.code == 0);
    CHECK(contains(ok.out, "PASS  eq3_identity"));
    CHECK_FALSE(contains(ok.out, "FAIL"));

    const auto bad = run({"verify", "5", "2", "4", "19"});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "equation-violation"));

    const auto json = run({"verify", "7", "4", "4", "14", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(contains(json.out, R"({"check":"eq3_identity","pass":true)"));

    CHECK(run({"verify", "5", "4", "2", "20"}).code == 2);
    CHECK(run({"verify", "5", "2", "4"}).code == 2);
}

TEST_CASE("scan") {
    const auto r = run({"scan", "--from", "2", "--to", "100", "--strategy", "hybrid"});
    CHECK(r.code == 0);
    CHECK(lines_of(r.out).size() == 25);
    CHECK(contains(r.err, "failures:         0"));

    CHECK(run({"scan", "--from", "10", "--to", "2"}).code == 2);
    CHECK(run({"scan", "--from", "2", "--to", "1073741824"}).code == 2);
    CHECK(run({"scan", "--from", "2", "--to", "60000", "--strategy", "oracle"}).code == 2);
    CHECK(run({"scan", "--from", "2", "--to", "10", "--jobs", "0"}).code == 2);

    const auto a = run({"scan", "--from", "2", "--to", "3000", "--jobs", "1", "--no-timing"});
    const auto b = run({"scan", "--from", "2", "--to", "3000", "--jobs", "8", "--chunk-size", "13", "--no-timing"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("scan then stats") {
    TempDir dir;
    const std::string path = dir.file("r.jsonl");
    const auto scan = run({"scan", "--from", "5", "--to", "5", "--strategy", "oracle", "--all", "--out", path});
    CHECK(scan.code == 0);
    CHECK(contains(scan.out, "primes scanned:   1"));

    const auto stats = run({"stats", "--in", path});
    CHECK(stats.code == 0);
    CHECK(contains(stats.out, "eq5_rate:         2/2 = 1.0000"));
    CHECK(contains(stats.out, "solutions:        2"));

    const auto json = run({"stats", "--in", path, "--format", "json"});
    CHECK(json.code == 0);
    CHECK(contains(json.out, R"("eq5_rate":{"num":2,"den":2,"decimal":"1.0000"})"));

    const std::string empty = dir.file("empty.jsonl");
    std::ofstream(empty).close();
    const auto none = run({"stats", "--in", empty});
    CHECK(none.code == 0);
    CHECK(contains(none.out, "primes scanned:   0"));
    CHECK(contains(none.out, "eq5_rate:         n/a"));

    const std::string broken = dir.file("broken.jsonl");
    {
        std::ofstream f(broken);
        f << slurp(path) << "\n{\"p\":4}\n";
    }
    const auto bad = run({"stats", "--in", broken});
    CHECK(bad.code == 2);
    CHECK(contains(bad.err, "broken.jsonl:3: malformed record"));

    CHECK(run({"stats", "--in", dir.file("missing.jsonl")}).code == 2);
}

TEST_CASE("figure2") {
    const auto r = run({"figure2", "--from", "2", "--to", "7"});
    CHECK(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE_FALSE(rows.empty());
    CHECK(rows.front() == "p,y,mod4");
    CHECK(std::find(rows.begin(), rows.end(), "5,4,1") != rows.end());
    CHECK(std::find(rows.begin(), rows.end(), "7,4,3") != rows.end());

    CHECK(run({"figure2", "--from", "14", "--to", "16"}).out == "p,y,mod4\n");
    CHECK(run({"figure2", "--from", "2", "--to", "60000"}).code == 2);

    TempDir dir;
    const std::string path = dir.file("fig.csv");
    CHECK(run({"figure2", "--from", "2", "--to", "1000", "--out", path}).code == 0);
    const auto all = lines_of(slurp(path));
    REQUIRE(all.size() > 1);
    std::vector<std::pair<long, long>> keys;
    for (std::size_t i = 1; i < all.size(); ++i) {
        const auto comma = all[i].find(',');
        keys.emplace_back(std::stol(all[i].substr(0, comma)), std::stol(all[i].substr(comma + 1)));
    }
    CHECK(std::is_sorted(keys.begin(), keys.end()));
}

TEST_CASE("usage") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "scan"));
}
