#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "costsense/cli.hpp"

using costsense::run_cli;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("divergence prints a bare value") {
    const CliResult r =
        run({"divergence", "--kind", "hellinger2", "--p", "1,0", "--q", "0,1"});
    CHECK(r.code == 0);
    CHECK(r.out == "2\n");

    const CliResult inf =
        run({"divergence", "--kind", "kl", "--p", "1,0", "--q", "0,1"});
    CHECK(inf.code == 0);
    CHECK(inf.out == "inf\n");
}

TEST_CASE("primitive evaluates the requested form") {
    const CliResult r = run({"primitive", "--c", "0.5", "--p", "1,0", "--q",
                             "0,1", "--form", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.5\n");
}

TEST_CASE("bound cost-theorem golden bytes") {
    const CliResult r = run({"bound", "--which", "cost-theorem", "--c", "0.5",
                             "--V", "2", "--n", "100", "--h", "0.1"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"value\":0.00046296296296296298,"
          "\"regime\":\"CostTheorem_LargeMargin\","
          "\"constants\":{\"K\":0.018518518518518517,\"c_min\":0.5,"
          "\"h_star\":0.023570226039551584,"
          "\"min_form\":0.00092592592592592596,"
          "\"raw\":0.00046296296296296298},"
          "\"inputs\":{\"c\":0.5,\"h\":0.10000000000000001,\"V\":2,\"n\":100}}\n");
}

TEST_CASE("hard-instance golden bytes") {
    const CliResult r = run(
        {"hard-instance", "--V", "2", "--n", "100", "--c", "0.5", "--h", "0"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"V\":2,\"n\":100,\"c\":0.5,\"h\":0,\"p\":1,"
          "\"effective_h\":0.023570226039551584,"
          "\"h_star\":0.023570226039551584,"
          "\"margin_substituted\":true,\"margin_clamped\":false,"
          "\"p_clipped\":false,\"support\":[\"x1\",\"x2\"]}\n");
}

TEST_CASE("certify targets and exit codes") {
    const CliResult pass = run({"certify", "--which", "aux-lemma", "--grid", "50"});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("\"pass\":true") != std::string::npos);

    const CliResult prim = run(
        {"certify", "--which", "primitive-hellinger", "--c", "0.3", "--grid", "51"});
    CHECK(prim.code == 0);

    const CliResult halved = run({"certify", "--which", "tv-hellinger", "--grid", "51"});
    CHECK(halved.code == 0);

    // The unhalved integral convention fails the inequality; exit 2 records
    // the violation.
    const CliResult unhalved =
        run({"certify", "--which", "tv-hellinger-unhalved", "--grid", "51"});
    CHECK(unhalved.code == 2);
    CHECK(unhalved.out.find("\"pass\":false") != std::string::npos);

    const CliResult subadd = run(
        {"certify", "--which", "subadd", "--trials", "100", "--seed", "9"});
    CHECK(subadd.code == 0);

    const CliResult unknown = run({"certify", "--which", "nonsense"});
    CHECK(unknown.code == 1);
}

TEST_CASE("usage and domain errors map to 64 and 1") {
    CHECK(run({"frobnicate"}).code == 64);
    CHECK(run({}).code == 64);
    CHECK(run({"divergence", "--kind", "kl"}).code == 64);
    CHECK(run({"bound", "--which", "cost-theorem", "--c", "1.5", "--V", "2",
               "--n", "100", "--h", "0.1"})
              .code == 1);
    CHECK(run({"divergence", "--kind", "kl", "--p", "0.5,oops", "--q", "1,0"})
              .code == 1);
    const CliResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("divergence") != std::string::npos);
}

TEST_CASE("capacity errors map to 3") {
    const CliResult r = run({"simulate", "--V", "12", "--n", "24", "--c", "0.5",
                             "--h", "0.1", "--learner", "plugin", "--trials",
                             "5", "--seed", "1"});
    CHECK(r.code == 3);
}

TEST_CASE("joint-range writes the three csv files") {
    const auto dir = std::filesystem::path("cli_test_out") / "jr";
    std::filesystem::remove_all(dir);
    const CliResult r = run({"joint-range", "--c", "0.7", "--grid", "2", "--out",
                             dir.string()});
    CHECK(r.code == 0);
    CHECK(slurp(dir / "j2.csv") == "p,q,x,y\n0,0,0,0\n0,1,2,0.3\n1,0,2,0.3\n1,1,0,0\n");
    CHECK(slurp(dir / "hull.csv") == "x,y\n0,0\n2,0.3\n");
    const std::string curve = slurp(dir / "curve.csv");
    CHECK(curve.rfind("x,y\n0,0\n", 0) == 0);
    std::filesystem::remove_all("cli_test_out");
}

TEST_CASE("verify-integral emits quadrature diagnostics") {
    const CliResult r = run({"verify-integral", "--kind", "chi2", "--p",
                             "0.6,0.4", "--q", "0.5,0.5"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("{\"lhs\":0.03999999999999998,", 0) == 0);
    CHECK(r.out.find("\"subdivisions\":") != std::string::npos);

    const CliResult bad = run({"verify-integral", "--kind", "kl", "--p", "1,0",
                               "--q", "0.5,0.5"});
    CHECK(bad.code == 1);
}

TEST_CASE("family files drive the lecam and assouad bounds") {
    std::filesystem::create_directories("cli_test_out");
    {
        std::ofstream fam("cli_test_out/fam.json");
        fam << R"({"n":1,"members":[
            {"param":"-","dist":{"atoms":["a0","a1"],"probs":[1.0,0.0]}},
            {"param":"+","dist":{"atoms":["a0","a1"],"probs":[0.0,1.0]}}]})";
    }
    const CliResult lecam = run({"bound", "--which", "lecam", "--family",
                                 "cli_test_out/fam.json", "--c", "0.3"});
    CHECK(lecam.code == 0);
    CHECK(lecam.out.find("\"value\":0,") != std::string::npos);

    const CliResult assouad = run({"bound", "--which", "assouad", "--family",
                                   "cli_test_out/fam.json", "--c", "0.3",
                                   "--mode", "hellinger"});
    CHECK(assouad.code == 0);

    const CliResult missing = run({"bound", "--which", "lecam", "--family",
                                   "cli_test_out/nope.json", "--c", "0.3"});
    CHECK(missing.code == 1);
    std::filesystem::remove_all("cli_test_out");
}

TEST_CASE("simulate golden bytes") {
    const CliResult r = run({"simulate", "--V", "2", "--n", "50", "--c", "0.5",
                             "--h", "0.1", "--learner", "plugin", "--trials",
                             "5", "--seed", "11"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "{\"per_b\":[{\"b\":\"-\",\"mean_regret\":0.0022222222222222218,"
          "\"std_err\":0.0022222222222222222,\"trials\":5},"
          "{\"b\":\"+\",\"mean_regret\":0.0044444444444444436,"
          "\"std_err\":0.0027216552697590861,\"trials\":5}],"
          "\"max_mean_regret\":0.0044444444444444436,\"argmax_b\":\"+\","
          "\"argmax_std_err\":0.0027216552697590861,"
          "\"bound\":{\"value\":0.00092592592592592596,"
          "\"regime\":\"CostTheorem_LargeMargin\","
          "\"constants\":{\"K\":0.018518518518518517,\"c_min\":0.5,"
          "\"h_star\":0.033333333333333333,"
          "\"min_form\":0.0013094570021973102,"
          "\"raw\":0.00092592592592592596},"
          "\"inputs\":{\"c\":0.5,\"h\":0.10000000000000001,\"V\":2,\"n\":50}},"
          "\"dominance_margin\":0.0035185185185185176}\n");
}

TEST_CASE("simulate is byte-identical across runs and thread counts") {
    const std::vector<std::string> base{"simulate", "--V",      "2",    "--n",
                                        "60",       "--c",      "0.4",  "--h",
                                        "0.05",     "--learner", "plugin",
                                        "--trials", "25",       "--seed", "31"};
    std::vector<std::string> threaded = base;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const CliResult a = run(base);
    const CliResult b = run(base);
    const CliResult c = run(threaded);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.find("\"dominance_margin\":") != std::string::npos);
}

TEST_CASE("sweep runs a manifest and emits csv rows") {
    std::filesystem::create_directories("cli_test_out");
    {
        std::ofstream cfg("cli_test_out/sweep.json");
        cfg << R"({"c":[0.5],"V":[2],"n":[40],"h_star_factors":[2.0],
                   "learners":["plugin"],"trials":10,"seed":3,"threads":2})";
    }
    const CliResult r =
        run({"sweep", "--config", "cli_test_out/sweep.json"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("c,h,n,V,learner,trials,seed,bound,regime,"
                      "max_mean_regret,std_err,dominance_margin\n",
                      0) == 0);
    CHECK(r.out.find("\nplugin") == std::string::npos);  // learner is a column
    CHECK(r.out.find(",plugin,") != std::string::npos);

    const CliResult to_file = run({"sweep", "--config", "cli_test_out/sweep.json",
                                   "--out", "cli_test_out/sweep.csv"});
    CHECK(to_file.code == 0);
    CHECK(slurp("cli_test_out/sweep.csv").find(",plugin,") != std::string::npos);
    std::filesystem::remove_all("cli_test_out");
}

}  // TEST_SUITE
