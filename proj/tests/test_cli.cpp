#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sldi/cli.hpp"
#include "sldi/model_io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = sldi::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << content;
    return path.string();
}

const std::string example3 = model_path("example3.model");
const std::string network = model_path("network5.model");

}  // namespace

TEST_CASE("analyze") {
    auto r = run({"analyze", network, "--schedule", "ab", "--method", "both"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"lo\":77,\"hi\":192}\n");
    CHECK(r.err.empty());

    for (const char* method : {"direct", "improved", "both"}) {
        r = run({"analyze", example3, "--schedule", "ac", "--method", method});
        CHECK(r.code == 0);
        CHECK(r.out == "{\"empty\":true}\n");
    }
    r = run({"analyze", example3, "--schedule", "ab"});
    CHECK(r.out == "{\"lo\":3,\"hi\":3}\n");
    r = run({"--float", "analyze", example3, "--schedule", "ba"});
    CHECK(r.out == "{\"lo\":3,\"hi\":3}\n");
    r = run({"analyze", network, "--schedule", "abab", "--method", "both"});
    CHECK(r.out == "{\"lo\":154,\"hi\":384}\n");
}

TEST_CASE("pteg-analyze") {
    auto r = run({"pteg-analyze", example3, "--mode", "c"});
    CHECK(r.code == 0);
    CHECK(r.out == "{\"lo\":1,\"hi\":1}\n");
    CHECK(run({"pteg-analyze", example3, "--mode", "a"}).out == "{\"empty\":true}\n");
    CHECK(run({"pteg-analyze", network, "--mode", "a"}).out == "{\"lo\":73,\"hi\":\"+inf\"}\n");
    CHECK(run({"pteg-analyze", network, "--mode", "b"}).out == "{\"lo\":72,\"hi\":192}\n");
    CHECK(run({"pteg-analyze", network, "--mode", "b", "--augmented"}).out == "{\"empty\":true}\n");
    CHECK(run({"pteg-analyze", network, "--mode", "q"}).code == sldi::cli::model_error);
}

TEST_CASE("synthesize then check") {
    auto r = run({"synthesize", example3, "--schedule", "ab", "--lambda", "3", "--reps", "4"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("prefix,t1@0,t2@0,t1@1,t2@1\n", 0) == 0);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 6);
    // output is deterministic
    CHECK(run({"synthesize", example3, "--schedule", "ab", "--lambda", "3", "--reps", "4"}).out == r.out);

    const auto good = temp_file("sldi_cli_good.csv", r.out);
    auto c = run({"check", example3, "--schedule", "ab", good});
    CHECK(c.code == 0);
    CHECK(c.out == "{\"status\":\"pass\"}\n");

    std::string tampered = r.out;
    tampered.replace(tampered.rfind(',') + 1, std::string::npos, "1000\n");
    const auto bad = temp_file("sldi_cli_bad.csv", tampered);
    c = run({"check", example3, "--schedule", "ab", bad});
    CHECK(c.code == 0);
    CHECK(c.out.find("\"status\":\"fail\"") != std::string::npos);

    c = run({"check", example3, "--schedule", "c", good});
    CHECK(c.code == sldi::cli::model_error);

    auto t = run({"synthesize", network, "--schedule", "ab", "--lambda", "77", "--format", "table", "--reps", "2"});
    CHECK(t.code == 0);
    CHECK(t.out.find("t5out@1") != std::string::npos);
}

TEST_CASE("infeasible cycle times") {
    auto r = run({"synthesize", example3, "--schedule", "ab", "--lambda", "2"});
    CHECK(r.code == sldi::cli::infeasible);
    CHECK(r.out.empty());
    CHECK(r.err.find("infeasible-lambda") != std::string::npos);
    CHECK(run({"synthesize", network, "--schedule", "ab", "--lambda", "193"}).code == sldi::cli::infeasible);
    CHECK(run({"synthesize", network, "--schedule", "ab", "--lambda", "-1"}).code == sldi::cli::infeasible);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == sldi::cli::usage);
    CHECK(run({"frobnicate"}).code == sldi::cli::usage);
    CHECK(run({"analyze", example3}).code == sldi::cli::usage);
    CHECK(run({"analyze", example3, "--schedule", "ab", "--method", "fastest"}).code == sldi::cli::usage);
    CHECK(run({"synthesize", example3, "--schedule", "ab", "--lambda", "x"}).code == sldi::cli::usage);
    CHECK(run({"synthesize", example3, "--schedule", "ab", "--lambda", "3", "--format", "xml"}).code ==
          sldi::cli::usage);
    CHECK(run({"bench", example3, "--schedule", "ab", "--methods", "magic"}).code == sldi::cli::usage);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("model errors") {
    CHECK(run({"analyze", model_path("missing.model"), "--schedule", "ab"}).code == sldi::cli::model_error);
    const auto broken = temp_file("sldi_cli_broken.model", "{ \"version\": 1,\n  oops }");
    auto r = run({"analyze", broken, "--schedule", "ab"});
    CHECK(r.code == sldi::cli::model_error);
    CHECK(r.err.find("line 2") != std::string::npos);
    CHECK(run({"analyze", example3, "--schedule", "az"}).code == sldi::cli::model_error);
}

TEST_CASE("bench prints one row per repetition count") {
    auto r = run({"--float", "bench", network, "--schedule", "ab", "--max-reps", "3", "--methods", "improved,direct"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].find("improved_ms") != std::string::npos);
    CHECK(lines[0].find("direct_ms") != std::string::npos);
    for (std::size_t k = 1; k <= 3; ++k) {
        std::istringstream row(lines[k]);
        std::size_t reps = 0, length = 0;
        double a = -1, b = -1;
        row >> reps >> length >> a >> b;
        CHECK(reps == k);
        CHECK(length == 2 * k);
        CHECK(a >= 0);
        CHECK(b >= 0);
    }
}

TEST_CASE("export") {
    auto r = run({"export", network});
    REQUIRE(r.code == 0);
    const auto reparsed = sldi::parse_model<sldi::Rational>(r.out);
    CHECK(reparsed == sldi::load_model<sldi::Rational>(network));
}
