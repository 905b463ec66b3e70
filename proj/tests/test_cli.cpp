#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qot/cli.hpp"

using namespace qot::cli;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(const RunConfig& c) {
    std::ostringstream out, err;
    int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

json last_line(const std::string& s) {
    std::istringstream in(s);
    std::string line, last;
    while (std::getline(in, line))
        if (!line.empty()) last = line;
    return json::parse(last);
}

RunConfig small(const std::string& command) {
    RunConfig c;
    c.command = command;
    c.restarts = 12;
    c.iterations = 150;
    return c;
}

}  // namespace

TEST_CASE("cost reports tagged bounds") {
    RunConfig c = small("cost");
    c.channel = "depolarizing:2:0.5";
    Run r = run_cli(c);
    REQUIRE(r.code == kExitOk);
    json j = last_line(r.out);
    CHECK(j["result"]["lower"]["value"].get<double>() == doctest::Approx(0.3061862178).epsilon(1e-6));
    CHECK(j["result"]["lower"]["method"] == "ascent-lower");
    CHECK(j["config"]["channel"] == "depolarizing:2:0.5");
}

TEST_CASE("group-length is exact") {
    RunConfig c;
    c.command = "group-length";
    c.group = "zn:4";
    Run r = run_cli(c);
    REQUIRE(r.code == kExitOk);
    json j = last_line(r.out);
    CHECK(j["lengths"] == json::array({0, 1, 2, 1}));
    CHECK(r.out.find("\"1/1\"") != std::string::npos);
}

TEST_CASE("output is deterministic for a fixed seed") {
    RunConfig c = small("lip");
    c.channel = "random:4";
    c.seed = 9;
    CHECK(run_cli(c).out == run_cli(c).out);
}

TEST_CASE("input errors exit 1") {
    CHECK(run_cli(small("frobnicate")).code == kExitInput);
    RunConfig v;
    v.command = "verify";
    v.suite = "";
    Run r = run_cli(v);
    CHECK(r.code == kExitInput);
    CHECK(r.err.find("qot:") == 0);
    RunConfig t = small("lip");
    t.channel = "depolarizing:2:0.5";
    t.tolerances["bogus"] = 1;
    CHECK(run_cli(t).code == kExitInput);
    RunConfig m = small("lip");
    m.channel = "depolarizing:3:0.5";
    CHECK(run_cli(m).code == kExitInput);
}

TEST_CASE("malformed channel file exits 1") {
    const std::string path = "qot_test_bad_channel.json";
    {
        std::ofstream f(path);
        f << "{\"kraus\": [";
    }
    RunConfig c = small("lip");
    c.channel = path;
    Run r = run_cli(c);
    std::remove(path.c_str());
    CHECK(r.code == kExitInput);
    CHECK(!r.err.empty());
}

TEST_CASE("group suite passes") {
    RunConfig c;
    c.command = "verify";
    c.suite = "group";
    Run r = run_cli(c);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("\"passed\":true") != std::string::npos);
}

TEST_CASE("cc-verify emits csv") {
    RunConfig c = small("cc-verify");
    c.samples = 3;
    Run r = run_cli(c);
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("distance") != std::string::npos);
    CHECK(r.out.find("# violations=0") != std::string::npos);
}
