#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpcip/cli.hpp"
#include "gpcip/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace gpcip;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return CliResult{code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("run round trip, frozen flags") {
    const auto r = cli({"run", "--K", "7", "--M", "1", "--D", "2", "--q", "5", "--m", "1",
                        "--seed", "42"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("rate") == "2/5");
    CHECK(j.at("ok") == true);
    CHECK(j.at("demand").size() == 2);
    CHECK(j.at("query").at("alpha") == 3);

    // emitted query and answer parse back to equal JSON
    const Query query = query_from_json(j.at("query"));
    CHECK(query_to_json(query) == j.at("query"));
    const Answer answer = answer_from_json(j.at("answer"), query);
    CHECK(answer_to_json(answer) == j.at("answer"));
}

TEST_CASE("run at K = 3 has rate 1/1") {
    const auto r = cli({"run", "--K", "3", "--M", "1", "--D", "2", "--q", "3", "--seed", "5"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out).at("rate") == "1/1");
}

TEST_CASE("invalid parameters exit 1") {
    const auto r = cli({"run", "--K", "2", "--M", "1", "--D", "2", "--seed", "1"});
    CHECK(r.code == 1);
    CHECK(r.err.find("D+M must be <= K") != std::string::npos);
}

TEST_CASE("explicit demand and side information") {
    const auto r = cli({"run", "--K", "6", "--M", "1", "--D", "2", "--seed", "9", "--demand",
                        "1,4", "--sideinfo", "6"});
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("demand") == Json::array({1, 4}));
    CHECK(j.at("sideinfo") == Json::array({6}));
}

TEST_CASE("byte-identical output for identical config and seed") {
    const std::vector<std::string> args{"run", "--K", "8", "--M", "2", "--D", "2", "--seed",
                                        "1234"};
    CHECK(cli(args).out == cli(args).out);
    const std::vector<std::string> scan{"conj2", "--K", "4", "--D", "2", "--mode", "sample",
                                        "--count", "2000", "--seed", "3"};
    CHECK(cli(scan).out == cli(scan).out);
}

TEST_CASE("audit subcommands") {
    CHECK(cli({"audit-privacy", "--K", "4", "--M", "1", "--D", "2"}).code == 0);
    CHECK(cli({"audit-privacy", "--K", "4", "--M", "1", "--D", "2", "--mutation",
               "theta1-doubled"}).code == 2);
    CHECK(cli({"audit-privacy", "--K", "20", "--M", "1", "--D", "2"}).code == 3);
    CHECK(cli({"audit-support", "--K", "4", "--M", "1", "--D", "2"}).code == 0);
    CHECK(cli({"audit-decodability", "--K", "4", "--M", "1", "--D", "2"}).code == 0);

    const auto sampled = cli({"audit-privacy", "--K", "9", "--M", "1", "--D", "2", "--mode",
                              "sample", "--count", "4000", "--seed", "11"});
    CHECK(sampled.code == 0);
    CHECK(Json::parse(sampled.out).at("mode") == "sample");
}

TEST_CASE("rate table") {
    const auto r = cli({"rate-table", "--K-min", "3", "--K-max", "12", "--M", "1", "--D", "2",
                        "--seeds", "3", "--seed", "2"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "K,M,D,achievable_rate,measured_rate,match");
    bool has_8 = false;
    while (std::getline(lines, line)) {
        CHECK(line.find("false") == std::string::npos);
        if (line.rfind("8,1,2,", 0) == 0) {
            has_8 = true;
            CHECK(line == "8,1,2,1/3,1/3,true");
        }
        if (line.rfind("7,1,2,", 0) == 0) CHECK(line.find("2/5") != std::string::npos);
    }
    CHECK(has_8);
}

TEST_CASE("theta balance command") {
    const auto all = cli({"theta-balance", "--K-max", "12"});
    CHECK(all.code == 0);
    CHECK(Json::parse(all.out).at("all_hold") == true);

    const auto one = cli({"theta-balance", "--K", "11", "--M", "1", "--D", "2"});
    CHECK(one.code == 0);
}

TEST_CASE("conj2 command") {
    const auto r = cli({"conj2", "--K", "5", "--D", "2", "--mode", "exhaustive"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j.at("graphs_scanned") == 1048576);
    CHECK(j.at("counterexamples").empty());

    CHECK(cli({"conj2", "--K", "6", "--D", "2", "--mode", "exhaustive"}).code == 3);
}

TEST_CASE("goodrel-check command") {
    const std::string path = "goodrel_test_tmp.json";
    {
        // M = 1 reach relation of the 3-cycle: f(v) = V, f(empty) = empty
        Json rel;
        rel["K"] = 3;
        rel["M"] = 1;
        rel["D"] = 2;
        rel["f"] = Json::array();
        rel["f"].push_back({{"I", Json::array()}, {"J", Json::array()}});
        for (int v = 1; v <= 3; ++v)
            rel["f"].push_back({{"I", Json::array({v})}, {"J", Json::array({1, 2, 3})}});
        std::ofstream f(path);
        f << rel.dump();
    }
    const auto r = cli({"goodrel-check", "--file", path, "--variant", "literal"});
    const Json j = Json::parse(r.out);
    CHECK(j.at("conditions").at("i").at("pass") == true);
    CHECK(j.at("conditions").at("ii").at("pass") == true);
    CHECK(j.at("conditions").at("iii").at("pass") == true);
    // every f(I) covers all of [3], so nothing can avoid a nonempty J*
    CHECK(j.at("conditions").at("iv").at("pass") == false);
    CHECK(r.code == 2);
    std::remove(path.c_str());

    CHECK(cli({"goodrel-check", "--file", "does_not_exist.json"}).code == 1);
}

TEST_CASE("graph and relation JSON round trips") {
    const Digraph g(4, {{1, 2}, {2, 3}, {3, 1}, {1, 4}});
    CHECK(graph_from_json(graph_to_json(g)).edges() == g.edges());

    SetRelation rel;
    rel.K = 3;
    rel.M = 1;
    rel.D = 2;
    rel.f[0] = 0;
    for (int v = 1; v <= 3; ++v) rel.f[1ull << (v - 1)] = 0b111;
    const SetRelation back = relation_from_json(relation_to_json(rel));
    CHECK(back.f == rel.f);
    CHECK(back.K == rel.K);
}

TEST_CASE("usage errors exit 1") {
    CHECK(cli({"no-such-command"}).code == 1);
    CHECK(cli({"run"}).code == 1);  // --K is required
    CHECK(cli({"audit-privacy", "--K", "4", "--M", "1", "--D", "2", "--mutation", "bogus"}).code ==
          1);
}
