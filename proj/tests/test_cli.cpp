#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <unistd.h>

#include "symsplit/cache.hpp"
#include "symsplit/cli.hpp"
#include "symsplit/config.hpp"
#include "symsplit/errors.hpp"
#include "symsplit/json_io.hpp"

using namespace symsplit;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    Json doc;
    std::string err;
};

RunResult invoke(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    RunResult r{code, Json(), err.str()};
    r.doc = Json::parse(out.str());
    return r;
}

Json without_timings(Json j)
{
    j.erase("timings");
    return j;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
    {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("symsplit-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::vector<std::string> with_cache(const TempDir& d, std::vector<std::string> args)
{
    args.insert(args.begin(), {"--cache-dir", d.path.string()});
    return args;
}

} // namespace

TEST_CASE("malformed invocations exit 1 with a machine-readable code")
{
    std::vector<std::vector<std::string>> cases{
        {},
        {"bogus"},
        {"analyze"},
        {"analyze", "--m", "43"},
        {"analyze", "--m", "abc", "--p", "23"},
        {"analyze", "--m", "0", "--p", "23"},
        {"analyze", "--m", "27", "--p", "23"},
        {"analyze", "--m", "43", "--p", "21"},
        {"analyze", "--m", "43", "--p", "3"},
        {"analyze", "--m", "43", "--p", "43"},
        {"analyze", "--m", "43", "--p", "23", "--rule", "nonsense"},
        {"analyze", "--m", "43", "--p", "23", "--pi", "3+w"},
        {"analyze", "--m", "43", "--p", "23", "--allow-unit"},
        {"analyze", "--m", "43", "--p", "23", "--exponent", "-1"},
        {"normeq", "--m", "43"},
        {"normeq", "--m", "43", "--target", "2+*w"},
        {"normeq", "--m", "43", "--target", "0"},
        {"character", "--alpha", "2"},
        {"character", "--alpha", "2", "--pi", "4"},
        {"shape", "--l", "3", "--p", "3"},
        {"shape", "--l", "3", "--p", "x"},
        {"classnum", "--m", "5", "--unknown-flag"},
        {"classnum", "--m", "5", "--digits", "5"},
        {"classnum", "--m", "5", "--node-cap", "-3"},
        {"principal", "--m", "5", "--ideal", "{not json"},
        {"principal", "--m", "5", "--ideal", "{\"nothing\": 1}"},
        {"classorder", "--m", "43", "--p", "9"},
    };
    for (auto& args : cases) {
        std::string joined;
        for (auto& a : args) joined += a + " ";
        CAPTURE(joined);
        auto full = args;
        full.insert(full.begin(), "--no-cache");
        auto r = invoke(full);
        CHECK(r.code == kExitError);
        CHECK(r.doc["schema"] == 1);
        CHECK(r.doc["status"] == "error");
        CHECK(r.doc["error"]["code"].is_string());
        CHECK_FALSE(r.doc["error"]["code"].get<std::string>().empty());
    }
}

TEST_CASE("random argument soup never escapes the exit-code contract")
{
    std::vector<std::string> pool{"analyze", "normeq",   "classnum", "classorder", "character", "shape",
                                  "field",   "--m",      "--p",      "--pi",       "--target",  "--alpha",
                                  "--l",     "--exponent", "--rule", "main",       "7",         "2",
                                  "-5",      "1+w",      "x",        "0",          "3",         "--allow-unit",
                                  "--digits", "--pretty", "10",      "",           "1e9",       "--ideal"};
    std::mt19937_64 rng(7);
    for (int it = 0; it < 300; ++it) {
        std::vector<std::string> args{"--no-cache", "--harvest-cap", "2000", "--hp-cap", "20"};
        int n = 1 + rng() % 6;
        for (int i = 0; i < n; ++i) args.push_back(pool[rng() % pool.size()]);
        std::string joined;
        for (auto& a : args) joined += a + " ";
        CAPTURE(joined);
        auto r = invoke(args);
        CHECK((r.code == kExitOk || r.code == kExitError || r.code == kExitIndeterminate));
        CHECK(r.doc["schema"] == 1);
        if (r.code == kExitError) CHECK(r.doc["status"] == "error");
        if (r.code == kExitIndeterminate) CHECK(r.doc["status"] == "indeterminate");
        if (r.code == kExitOk) CHECK(r.doc["status"] == "ok");
    }
}

TEST_CASE("worked examples through the command line")
{
    auto r = invoke({"--no-cache", "analyze", "--m", "5", "--p", "19"});
    CHECK(r.code == kExitOk);
    CHECK(r.doc["outputs"]["verdict"] == "Division");

    auto s = invoke({"--no-cache", "shape", "--l", "3", "--p", "23", "--m", "43"});
    CHECK(s.code == kExitOk);
    CHECK(s.doc["outputs"]["f"] == 2);
    CHECK(s.doc["outputs"]["r"] == 1);
    CHECK(s.doc["outputs"]["kummer"] == Json::parse(R"([{"e":1,"f":2,"count":3}])"));
    CHECK(s.doc["outputs"]["refolds"] == true);

    auto c = invoke({"--no-cache", "character", "--alpha", "11", "--pi", "2+3*w"});
    CHECK(c.code == kExitOk);
    CHECK(c.doc["outputs"]["value"].is_string());

    auto n = invoke({"--no-cache", "normeq", "--m", "43", "--target", "23"});
    CHECK(n.code == kExitOk);
    CHECK(n.doc["outputs"]["solvable"] == "no");
    auto y = invoke({"--no-cache", "normeq", "--m", "11", "--target", "19"});
    CHECK(y.doc["outputs"]["solvable"] == "yes");
    CHECK(y.doc["outputs"]["refolds"] == true);
    CHECK(y.doc["outputs"]["beta"]["relative_norm"] == Json::parse(R"({"a":"19","b":"0"})"));

    auto p = invoke({"--no-cache", "principal", "--m", "43", "--ideal", R"({"primes":[{"p":"23","exponent":12}]})"});
    CHECK(p.code == kExitOk);
    CHECK(p.doc["outputs"]["status"] == "principal");
    auto q = invoke({"--no-cache", "principal", "--m", "43", "--ideal", R"({"primes":[{"p":"23","exponent":4}]})"});
    CHECK(q.doc["outputs"]["status"] == "not_principal");

    auto f = invoke({"--no-cache", "field", "--m", "2"});
    CHECK(f.code == kExitOk);
    CHECK(f.doc["outputs"]["multiplication_table"].size() == 6);
    CHECK(f.doc["outputs"]["discriminant"].is_string());
}

TEST_CASE("tiny budgets report Indeterminate with exit code 2")
{
    auto r = invoke({"--no-cache", "--harvest-cap", "10", "--hp-cap", "3", "analyze", "--m", "43", "--p", "23"});
    CHECK(r.code == kExitIndeterminate);
    CHECK(r.doc["status"] == "indeterminate");
    CHECK(r.doc["outputs"]["verdict"] == "Indeterminate");
    CHECK(r.doc["budgets"]["harvest_cap"] == 10);
}

TEST_CASE("equal inputs give byte-identical reports apart from timings")
{
    for (auto args : std::vector<std::vector<std::string>>{{"--no-cache", "classnum", "--m", "43"},
                                                           {"--no-cache", "analyze", "--m", "11", "--p", "19"},
                                                           {"--no-cache", "normeq", "--m", "43", "--target", "529"}}) {
        auto a = invoke(args), b = invoke(args);
        CHECK(a.code == b.code);
        CHECK(without_timings(a.doc).dump() == without_timings(b.doc).dump());
    }
}

TEST_CASE("cold and warm cache runs agree")
{
    TempDir dir("warm");
    auto cold = invoke(with_cache(dir, {"classnum", "--m", "43"}));
    auto warm = invoke(with_cache(dir, {"classnum", "--m", "43"}));
    CHECK(cold.doc["timings"]["cache"]["43"] == "miss");
    CHECK(warm.doc["timings"]["cache"]["43"] == "hit");
    CHECK(cold.doc["outputs"]["h_L"] == "48");
    CHECK(without_timings(cold.doc).dump() == without_timings(warm.doc).dump());

    // decisions that reuse the cached class group are unchanged too
    auto fresh = invoke({"--no-cache", "analyze", "--m", "43", "--p", "23"});
    auto cached = invoke(with_cache(dir, {"analyze", "--m", "43", "--p", "23"}));
    CHECK(cached.doc["timings"]["cache"]["43"] == "hit");
    CHECK(without_timings(fresh.doc).dump() == without_timings(cached.doc).dump());
}

TEST_CASE("cache key depends on m, budgets and nothing else")
{
    Budgets b;
    auto k = FieldCache::key(43, b);
    CHECK(k.size() == 64);
    CHECK(k == FieldCache::key(43, Budgets{}));
    CHECK(k != FieldCache::key(11, b));
    Budgets c = b;
    c.harvest_cap += 1;
    CHECK(k != FieldCache::key(43, c));
    c = b;
    c.digits = 100;
    CHECK(k != FieldCache::key(43, c));

    TempDir dir("key");
    invoke(with_cache(dir, {"classnum", "--m", "5"}));
    auto other = invoke(with_cache(dir, {"--harvest-cap", "30000", "classnum", "--m", "5"}));
    CHECK(other.doc["timings"]["cache"]["5"] == "miss");
    std::size_t files = 0;
    for (auto& e : fs::recursive_directory_iterator(dir.path))
        if (e.is_regular_file()) ++files;
    CHECK(files == 2);
}

TEST_CASE("a tampered cache entry is detected and replaced")
{
    TempDir dir("tamper");
    auto cold = invoke(with_cache(dir, {"classnum", "--m", "11"}));
    FieldCache cache(dir.path);
    fs::path file = cache.path_for(11, Budgets{});
    REQUIRE(fs::exists(file));
    std::string text;
    {
        std::ifstream in(file);
        std::getline(in, text);
    }
    auto pos = text.find("\"h_L\":\"4\"");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 9, "\"h_L\":\"8\"");
    {
        std::ofstream out(file);
        out << text << '\n';
    }
    auto tampered = invoke(with_cache(dir, {"classnum", "--m", "11"}));
    CHECK(tampered.doc["timings"]["cache"]["11"] == "corrupt");
    CHECK(tampered.err.find("checksum") != std::string::npos);
    CHECK(tampered.doc["outputs"]["h_L"] == "4");
    CHECK(without_timings(cold.doc).dump() == without_timings(tampered.doc).dump());

    auto again = invoke(with_cache(dir, {"classnum", "--m", "11"}));
    CHECK(again.doc["timings"]["cache"]["11"] == "hit");

    {
        std::ofstream out(file);
        out << "{ truncated";
    }
    auto garbage = invoke(with_cache(dir, {"classnum", "--m", "11"}));
    CHECK(garbage.doc["timings"]["cache"]["11"] == "corrupt");
    CHECK(garbage.doc["outputs"]["h_L"] == "4");
}

TEST_CASE("budget config files")
{
    Budgets b;
    apply_budget_config(b, "# budgets\n\nnode_cap = 123 # inline comment\n  hp_cap=7\n");
    CHECK(b.node_cap == 123);
    CHECK(b.hp_cap == 7);
    CHECK(b.harvest_cap == Budgets{}.harvest_cap);
    CHECK_THROWS_AS(apply_budget_config(b, "node_cap = 1\nnode_cap = 2\n"), MathError);
    CHECK_THROWS_AS(apply_budget_config(b, "mystery = 1\n"), MathError);
    CHECK_THROWS_AS(apply_budget_config(b, "node_cap = many\n"), MathError);
    CHECK_THROWS_AS(apply_budget_config(b, "node_cap 5\n"), MathError);

    TempDir dir("config");
    fs::path cfg = dir.path / "budgets.conf";
    {
        std::ofstream out(cfg);
        out << "harvest_cap = 10\nhp_cap = 3\n";
    }
    auto r = invoke({"--no-cache", "--config", cfg.string(), "analyze", "--m", "43", "--p", "23"});
    CHECK(r.code == kExitIndeterminate);
    CHECK(r.doc["budgets"]["hp_cap"] == 3);
    // command-line values override the file
    auto o = invoke({"--no-cache", "--config", cfg.string(), "--hp-cap", "9", "classnum", "--m", "5"});
    CHECK(o.doc["budgets"]["hp_cap"] == 9);
    CHECK(o.doc["budgets"]["harvest_cap"] == 10);
}

TEST_CASE("json round trips of cached structures")
{
    FieldContext F(mpz_class(11), Budgets{});
    const auto& cg = F.class_group();
    auto back = class_group_from_json(Json::parse(to_json(cg).dump()));
    CHECK(to_json(back).dump() == to_json(cg).dump());
    auto U = units_from_json(*F.order(), Json::parse(to_json(F.units()).dump()));
    CHECK(U.logs == F.units().logs);
    CHECK(U.regulator == F.units().regulator);
    CHECK(mpq_from_json("6/-4") == mpq_class(-3, 2));
    CHECK_THROWS(mpz_from_json(Json("12a")));
}
