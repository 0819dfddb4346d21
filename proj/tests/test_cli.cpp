#include "cli.hpp"

#include "arithdyn/cache.hpp"
#include "arithdyn/report.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace arithdyn;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    const Run r = run(std::move(args));
    REQUIRE_MESSAGE(r.code == 0, r.err);
    return Json::parse(r.out);
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("arithdyn-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> read_lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    for (std::string s; std::getline(in, s);) lines.push_back(s);
    return lines;
}

void write_lines(const fs::path& p, const std::vector<std::string>& lines) {
    std::ofstream out(p, std::ios::trunc);
    for (const auto& s : lines) out << s << '\n';
}

}  // namespace

TEST_CASE("cli examples") {
    auto j = run_json({"zsigmondy", "--map", "x^2+1", "--alpha", "1", "--max-n", "10", "--no-cache"});
    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "zsigmondy");
    CHECK(j["result"]["zsigmondy_set"].empty());
    CHECK(j["result"]["records"].size() == 10);

    j = run_json({"galois-tower", "--a", "1", "--max-n", "4"});
    const auto& recs = j["result"]["records"];
    REQUIRE(recs.size() == 5);
    CHECK(recs[2]["certificate"] == "5");
    for (int n = 2; n <= 4; ++n) CHECK(recs[n]["status"] == "Certified");

    j = run_json({"mason", "--a", "t^2+2t", "--b", "1"});
    CHECK(j["result"]["tight"] == true);
    CHECK(j["result"]["holds"] == true);

    j = run_json({"abc", "--a", "1", "--b", "8"});
    CHECK(j["result"]["height_arg"] == "9");
    CHECK(j["result"]["rad_arg"] == "6");
}

TEST_CASE("cli formats") {
    auto r = run({"orbit", "--map", "x^2+1", "--alpha", "1", "--max-n", "3", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,value\n1,2\n2,5\n3,26\n");
    r = run({"roth-scan", "--F", "x^3-t", "--field", "qt", "--max-degree", "0", "--coeff-bound", "1", "--format",
             "csv", "--epsilon", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("z,radsum,height,margin,exact\n", 0) == 0);
    r = run({"galois-tower", "--a", "2", "--max-n", "2", "--format", "table"});
    CHECK(r.code == 0);
    CHECK(r.out.find("Certified") != std::string::npos);
    r = run({"height", "--value", "3/4", "--format", "csv"});
    CHECK(r.out == "key,value\nfield,Q\nvalue,1.3862943611198906\nargument,4\n");
}

TEST_CASE("cli exit codes") {
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"nonsense"}).code == cli::kUsage);
    CHECK(run({"orbit", "--map", "x^2+", "--alpha", "1"}).code == cli::kUsage);
    CHECK(run({"orbit", "--map", "x^2+1"}).code == cli::kUsage);
    CHECK(run({"orbit", "--map", "x*(x+1)/x", "--alpha", "1"}).code == cli::kUsage);
    CHECK(run({"galois-tower", "--a", "-2"}).code == cli::kUsage);
    CHECK(run({"orbit", "--map", "x^2", "--alpha", "1", "--format", "xml"}).code == cli::kUsage);
    // P_13 has degree 8192, beyond the iterate cap.
    CHECK(run({"prop-old", "--map", "x^2+1", "--alpha", "1", "--F", "x^2+1", "--level", "13"}).code ==
          cli::kResourceCap);
    const auto help = run({"--help"});
    CHECK(help.code == cli::kOk);
    CHECK(help.out.find("zsigmondy") != std::string::npos);
}

TEST_CASE("cli output does not depend on --jobs") {
    const std::vector<std::string> base{"zsigmondy", "--map", "x^2-2", "--alpha", "3", "--max-n", "9", "--no-cache"};
    auto a = base, b = base;
    a.insert(a.end(), {"--jobs", "1"});
    b.insert(b.end(), {"--jobs", "4"});
    auto ja = run_json(a), jb = run_json(b);
    ja["config"].erase("budget");
    jb["config"].erase("budget");
    CHECK(ja.dump() == jb.dump());
}

TEST_CASE("cache round trip") {
    TempDir dir;
    const auto path = dir.path / "orbit.jsonl";
    const auto map = RationalMap::parse("x^2+1");
    ZsigmondyOptions opts;
    opts.max_n = 5;
    const auto fresh = zsigmondy_report(map, Rat(1), opts);
    append_cache(path, map_hash(map, Rat(1)), fresh.records);
    const auto loaded = load_cache(path, map, Rat(1));
    REQUIRE(loaded.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(to_json(loaded[i]).dump() == to_json(fresh.records[i]).dump());
}

TEST_CASE("cache resume is byte-identical to a fresh run") {
    TempDir dir;
    const auto path = (dir.path / "c.jsonl").string();
    const std::vector<std::string> base{"zsigmondy", "--map", "x^2+1", "--alpha", "1", "--cache", path};
    auto first = base;
    first.insert(first.end(), {"--max-n", "5"});
    CHECK(run(first).code == 0);
    CHECK(read_lines(path).size() == 5);

    auto second = base;
    second.insert(second.end(), {"--max-n", "10"});
    const Run resumed = run(second);
    CHECK(resumed.code == 0);
    CHECK(read_lines(path).size() == 10);

    const Run fresh = run({"zsigmondy", "--map", "x^2+1", "--alpha", "1", "--max-n", "10", "--no-cache"});
    Json a = Json::parse(resumed.out), b = Json::parse(fresh.out);
    CHECK(a["result"].dump() == b["result"].dump());

    // A third run reads everything and appends nothing.
    const Run again = run(second);
    CHECK(again.out == resumed.out);
    CHECK(read_lines(path).size() == 10);
}

TEST_CASE("cache resume across a preperiodic orbit") {
    TempDir dir;
    const auto path = dir.path / "p.jsonl";
    const auto map = RationalMap::parse("x^2-1");
    ZsigmondyOptions small, big;
    small.max_n = 3;
    big.max_n = 8;
    zsigmondy_report_cached(map, Rat(0), small, path);
    const auto resumed = zsigmondy_report_cached(map, Rat(0), big, path);
    const auto fresh = zsigmondy_report(map, Rat(0), big);
    CHECK(to_json(resumed).dump() == to_json(fresh).dump());
}

TEST_CASE("cache rejects tampering and mismatches") {
    TempDir dir;
    const auto path = dir.path / "t.jsonl";
    const auto map = RationalMap::parse("x^2+1");
    ZsigmondyOptions opts;
    opts.max_n = 5;
    zsigmondy_report_cached(map, Rat(1), opts, path);
    const auto good = read_lines(path);

    auto check_error = [&](const std::vector<std::string>& lines, const std::string& needle) {
        write_lines(path, lines);
        try {
            load_cache(path, map, Rat(1));
            FAIL("expected a cache error");
        } catch (const CacheError& e) {
            CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
        }
    };

    auto lines = good;
    Json j = Json::parse(lines[3]);
    j["numer"] = "678";
    lines[3] = j.dump();
    check_error(lines, ":4:");

    lines = good;
    lines[2] = "{not json";
    check_error(lines, ":3: not valid JSON");

    lines = good;
    j = Json::parse(lines[1]);
    j["factor_data"]["primitive_part"] = "7";
    lines[1] = j.dump();
    check_error(lines, ":2:");

    lines = good;
    j = Json::parse(lines[4]);
    j["factor_data"]["factored"]["prime_powers"][0][1] = 2;
    lines[4] = j.dump();
    check_error(lines, ":5:");

    lines = good;
    lines.erase(lines.begin() + 1);
    check_error(lines, "expected n = 2");

    // A different map refuses to resume from this file.
    write_lines(path, good);
    CHECK_THROWS_WITH_AS(load_cache(path, RationalMap::parse("x^2+2"), Rat(1)), doctest::Contains("refusing"),
                         CacheError);
    CHECK(run({"zsigmondy", "--map", "x^2+2", "--alpha", "1", "--cache", path.string()}).code == cli::kUsage);
}

TEST_CASE("cache directory from the environment") {
    TempDir dir;
    setenv("ARITHDYN_CACHE_DIR", dir.path.c_str(), 1);
    const auto map = RationalMap::parse("x^2+1");
    const auto p = default_cache_path(map, Rat(1));
    REQUIRE(p);
    CHECK(p->parent_path() == dir.path);
    CHECK(run({"zsigmondy", "--map", "x^2+1", "--alpha", "1", "--max-n", "4"}).code == 0);
    CHECK(fs::exists(*p));
    CHECK(read_lines(*p).size() == 4);
    unsetenv("ARITHDYN_CACHE_DIR");
    CHECK(!default_cache_path(map, Rat(1)));
}
