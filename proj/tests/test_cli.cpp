#include "gasket/cluster_io.hpp"
#include "gasket/gasket_level.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>

using namespace gasket;
namespace fs = std::filesystem;

namespace {

struct Sandbox {
    fs::path dir;
    Sandbox() {
        dir = fs::temp_directory_path() / ("gasket_cli_" + std::to_string(::getpid()));
        fs::remove_all(dir);
        fs::create_directories(dir);
        // 3·1_{B(0,1)}
        write_text((dir / "ball.json").string(),
                   R"({"bound_L": 1, "terms": [{"coeff": "3", "center": {"half": "+", "a": 0, "b": 0, "level": 0}, "radius_log2": 0}]})");
    }
    ~Sandbox() { fs::remove_all(dir); }
    std::string path(const std::string& name) const { return (dir / name).string(); }

    // Exit code of `gasket args`, run inside the sandbox with stderr captured.
    int run(const std::string& args) const {
        const std::string cmd = "cd '" + dir.string() + "' && GASKET_THREADS=2 '" GASKET_CLI "' " + args +
                                " > stdout.txt 2> stderr.txt";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }
    std::string err() const { return read_text(path("stderr.txt")); }
};

std::size_t count(const std::string& s, const std::string& needle) {
    std::size_t k = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++k;
    return k;
}

}  // namespace

TEST_CASE("selftest passes") {
    Sandbox sb;
    CHECK(sb.run("selftest") == 0);
    CHECK(read_text(sb.path("stdout.txt")).find("FAIL") == std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
    Sandbox sb;
    CHECK(sb.run("sandpile --level 3 --density nowhere.json") == 2);
    CHECK(sb.err().find("nowhere.json") != std::string::npos);
    CHECK(sb.run("sandpile --level 3 --density ball.json --frobnicate") == 2);
    CHECK(sb.run("frobnicate") == 2);
    CHECK(sb.run("limit --density ball.json --levels 5:3") == 2);
    CHECK(sb.run("limit --density ball.json --models sandpile,walkers") == 2);
    CHECK(sb.run("rotor --level 3 --density ball.json --rotors spiral") == 2);
    CHECK(sb.run("sandpile --level 3 --density ball.json --domain-L x") == 2);
}

TEST_CASE("boundary contact without growth exits with 1") {
    Sandbox sb;
    CHECK(sb.run("sandpile --level 3 --density ball.json --domain-L 1 --auto-grow 0") == 1);
    CHECK(sb.run("sandpile --level 3 --density ball.json --domain-L 1 --auto-grow 1 --report r.json") == 0);
    CHECK(nlohmann::json::parse(read_text(sb.path("r.json")))["result"]["domain_L"] == 2);
}

TEST_CASE("render a five-vertex cluster") {
    Sandbox sb;
    const auto ctx = GasketLevel::make(2, 1);
    std::vector<char> m(ctx->size(), 0);
    m[ctx->origin()] = 1;
    for (auto s : ctx->slots(ctx->origin())) m[static_cast<std::size_t>(s)] = 1;
    write_text(sb.path("star.csv"), cluster_csv(*ctx, m));
    REQUIRE(sb.run("render star.csv -o star.svg") == 0);
    const std::string svg = read_text(sb.path("star.svg"));
    CHECK(count(svg, "<circle") == 5);
    CHECK(svg.find("<g id=\"outline\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("0.1.0") != std::string::npos);

    write_text(sb.path("other.csv"), cluster_csv(*GasketLevel::make(3, 1), std::vector<char>(GasketLevel::make(3, 1)->size(), 0)));
    CHECK(sb.run("render star.csv other.csv -o mixed.svg") == 2);
}

TEST_CASE("a missing seed is drawn and announced") {
    Sandbox sb;
    REQUIRE(sb.run("idla --level 3 --density ball.json --trials 1 --report r.json") == 0);
    CHECK(sb.err().find("seed") != std::string::npos);
    const auto r = nlohmann::json::parse(read_text(sb.path("r.json")));
    CHECK(r["config"]["seed_from_entropy"] == true);
    CHECK(r["config"]["seed"].is_number_unsigned());
}

TEST_CASE("reports share a schema and embed config and version") {
    Sandbox sb;
    const std::vector<std::string> runs = {
        "sandpile --level 4 --density ball.json --report sandpile.json",
        "rotor --level 4 --density ball.json --report rotor.json",
        "idla --level 4 --density ball.json --seed 5 --trials 2 --report idla.json",
        "obstacle --level 3 --density ball.json --domain-L 2 --report obstacle.json",
        "limit --density ball.json --levels 3:4 --trials 2 --seed 5 --report limit.json"};
    for (const auto& args : runs) {
        CAPTURE(args);
        REQUIRE(sb.run(args) == 0);
        const std::string name = args.substr(0, args.find(' '));
        const auto r = nlohmann::json::parse(read_text(sb.path(name + ".json")));
        CHECK(r["tool"] == "gasket");
        CHECK(r["version"] == "0.1.0");
        CHECK(r["config"]["subcommand"] == name);
        CHECK(r["config"]["density"] == "ball.json");
        CHECK(r["result"].is_object());
    }
    const auto limit = nlohmann::json::parse(read_text(sb.path("limit.json")))["result"];
    CHECK(limit["levels"].size() == 2);
    for (const char* c : {"containment", "mass_conservation", "boundary_regularity", "exponents", "cauchy"})
        CHECK(limit["criteria"][c]["pass"].is_boolean());
    const auto obstacle = nlohmann::json::parse(read_text(sb.path("obstacle.json")))["result"];
    CHECK(obstacle["oracle"]["junctions"].size() > 0);
}

TEST_CASE("fixed seed and config give byte-identical outputs") {
    Sandbox sb;
    const std::string runs =
        "sandpile --level 4 --density ball.json --out sp.csv --odometer odo.csv --report sp.json && "
        "'" GASKET_CLI "' rotor --level 4 --density ball.json --rotors random --seed 9 --out ro.csv --flux flux.csv "
        "--report ro.json && '" GASKET_CLI "' idla --level 4 --density ball.json --seed 9 --trials 3 --out-dir runs "
        "--report id.json && '" GASKET_CLI "' render sp.csv ro.csv -o both.svg";
    const std::vector<std::string> files = {"sp.csv", "odo.csv",  "sp.json",  "ro.csv",
                                            "flux.csv", "ro.json", "id.json", "runs/trial_000.csv",
                                            "runs/trial_002.csv", "both.svg"};
    std::map<std::string, std::string> first;
    REQUIRE(sb.run(runs) == 0);
    for (const auto& f : files) first[f] = read_text(sb.path(f));
    REQUIRE(sb.run(runs) == 0);
    for (const auto& f : files) {
        CAPTURE(f);
        CHECK(read_text(sb.path(f)) == first[f]);
    }
    // The trial CSVs reload into the same clusters.
    const auto ctx = GasketLevel::make(4, 2);
    CHECK(to_members(load_cluster_csv(sb.path("runs/trial_001.csv")), *ctx).size() == ctx->size());
}
