#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "ifalab/cli.hpp"
#include "ifalab/error.hpp"
#include "ifalab/io.hpp"

using namespace ifalab;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("ifa_lab_test_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("ingesting plain and dated returns") {
    const auto plain = parse_returns("0.01\n-0.02\n0.003\n");
    CHECK(plain.returns == std::vector<double>{0.01, -0.02, 0.003});
    CHECK(plain.source == "ingested");

    const auto dated = parse_returns("date,return\n2020-01-02,0.5\n2020-01-03,-0.25\n");
    CHECK(dated.returns == std::vector<double>{0.5, -0.25});

    const auto header_plain = parse_returns("return\n1\n2\n", IngestFormat::plain);
    CHECK(header_plain.returns == std::vector<double>{1, 2});

    try {
        parse_returns("");
        FAIL("expected no_valid_rows");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::no_valid_rows);
    }
    try {
        parse_returns("0.1\nabc\n0.2\nxyz\n");
        FAIL("expected non_numeric");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::non_numeric);
        CHECK(std::string(e.what()).find("2,4") != std::string::npos);
    }
    try {
        ingest_returns("/nonexistent/returns.csv");
        FAIL("expected unreadable_file");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unreadable_file);
    }
}

TEST_CASE("simulate subcommand prints the n=3 cycle") {
    const auto r = run({"simulate", "--rule", "54", "--n", "3", "--seed-window", "UUU", "--ticks", "7"});
    CHECK(r.code == 0);
    CHECK(r.out == "t,tick,price\n1,-1,-1\n2,-1,-2\n3,1,-1\n4,-1,-2\n5,1,-1\n6,1,0\n7,1,1\n");
}

TEST_CASE("cycle subcommand") {
    const auto r = run({"cycle", "--rule", "54", "--n", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "rule,n,seed,transient,period\n54,3,UUU,0,7\n");
    const auto all = run({"cycle", "--rule", "54", "--n", "3", "--all"});
    CHECK(all.out == "period,entry,basin_size\n7,UUU,7\n1,DDD,1\n");
}

TEST_CASE("usage and runtime errors") {
    auto r = run({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.err.starts_with("error: code=usage"));

    r = run({"simulate", "--no-such-flag"});
    CHECK(r.code == 2);

    r = run({"simulate", "--rule", "999"});
    CHECK(r.code == 1);
    CHECK(r.err.starts_with("error: code=range"));

    r = run({"stats", "--input", "/nonexistent.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.starts_with("error: code=unreadable_file"));
}

TEST_CASE("outputs land in --out with a manifest and replay byte-identically") {
    const auto dir = scratch("replay_a");
    const auto again = scratch("replay_b");
    auto r = run({"regulate", "--ticks", "3000", "--regime", "both:50,4", "--svg", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "run_both.csv"));
    CHECK(fs::exists(dir / "regimes.csv"));
    CHECK(fs::exists(dir / "rolling.svg"));
    REQUIRE(fs::exists(dir / "manifest.json"));

    r = run({"replay", (dir / "manifest.json").string(), "--out", again.string()});
    REQUIRE(r.code == 0);
    for (const auto& name : {"run_both.csv", "regimes.csv", "rolling.csv", "manifest.json"}) {
        CHECK(read_file(dir / name) == read_file(again / name));
    }
    fs::remove_all(dir);
    fs::remove_all(again);
}

TEST_CASE("svg output never changes the CSV") {
    const auto plain = scratch("svg_off");
    const auto plotted = scratch("svg_on");
    REQUIRE(run({"compare", "--steps", "60", "--out", plain.string()}).code == 0);
    REQUIRE(run({"compare", "--steps", "60", "--svg", "--out", plotted.string()}).code == 0);
    CHECK(read_file(plain / "compare.csv") == read_file(plotted / "compare.csv"));
    CHECK(read_file(plain / "cell_frequency.csv") == read_file(plotted / "cell_frequency.csv"));
    CHECK(fs::exists(plotted / "ex_post_justice.svg"));
    CHECK_FALSE(fs::exists(plain / "ex_post_justice.svg"));
    fs::remove_all(plain);
    fs::remove_all(plotted);
}

TEST_CASE("stats on an ingested file") {
    const auto dir = scratch("ingest");
    fs::create_directories(dir);
    std::string text = "date,return\n";
    for (int i = 0; i < 300; ++i) text += "d" + std::to_string(i) + "," + std::to_string((i * 37 % 101) / 1000.0) + "\n";
    write_file_atomic(dir / "returns.csv", text);
    const auto r = run({"stats", "--input", (dir / "returns.csv").string(), "--lags", "1,2", "--rolling-window", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.starts_with("series,mean,std_dev,skewness,excess_kurtosis,lag_1,lag_2\ningested,"));
    CHECK(r.out.find("\nnormal-benchmark,") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("ca subcommand writes a PBM grid") {
    const auto dir = scratch("ca");
    const auto r = run({"ca", "--width", "5", "--steps", "2", "--out", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(read_file(dir / "grid.pbm") == "P1\n5 2\n00100\n01100\n");
    CHECK(read_file(dir / "ca.csv").starts_with("regime,p,seed,score,pollution_rate,right_half_polluted\nanarchy,"));
    fs::remove_all(dir);
}
