#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <memory>
#include <string>

#include <json.hpp>

namespace {

struct CliRun {
    int status;
    std::string out;
};

CliRun run(const std::string& args, bool with_stderr = false) {
    std::string cmd = std::string("'") + HHT_CLI + "' " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    return {WEXITSTATUS(status), out};
}

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, BracketAtMinusOne) {
    CliRun r = run("bracket --q -1 --char 0 --f 'x*e(1,0)' --g '1*e(2,0)'");
    ASSERT_EQ(r.status, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["format"], 1);
    EXPECT_EQ(j["chain_level"], "-2*e(2,0)");
    EXPECT_EQ(j["class"], nlohmann::json::array({"-2"}));
    EXPECT_EQ(j["class_basis"], nlohmann::json::array({"e(2,0)"}));
    EXPECT_EQ(j["internal_degree"], nlohmann::json::array({2, 0}));
}

TEST(Cli, RootIndicesAndCup) {
    CliRun r = run("bracket --q root:3 --char 0 --max-degree 13 --f 'e(r,r)' --g 'y*e(0,1)'");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(json_of(r)["class_display"], "3*e*(3,3)");
    CliRun c = run("cup --f 'x*e(1,0)' --g 'y*e(0,1)'");
    ASSERT_EQ(c.status, 0);
    EXPECT_EQ(json_of(c)["chain_level"], "xy*e(1,1)");
}

TEST(Cli, Deterministic) {
    for (const char* args : {"qci --q generic --char 0 --table", "qci --q root:3 --char 2 --table --text",
                             "hh --algebra builtin:truncated_x3 --max-degree 5"}) {
        CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.status, 0) << args;
        EXPECT_EQ(a.out, b.out) << args;
    }
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run("qci --q generic --char 0 --table").status, 0);
    EXPECT_EQ(run("qci --q -1 --char 0 --verify-theorem --max-degree 6").status, 0);
    EXPECT_EQ(run("verify --suite homotopy --max-degree 6").status, 0);
    EXPECT_EQ(run("verify --suite conditions --max-degree 5").status, 0);
    EXPECT_EQ(run("verify --suite awez").status, 0);
    EXPECT_EQ(run("resolve --type twisted --max-degree 5 --verify").status, 0);
    EXPECT_EQ(run(std::string("algebra check --algebra ") + HHT_DATA_DIR "/algebras/lambda_q_generic.json").status, 0);

    CliRun e = run("bracket --f 'x*e(1,0) + y*e(1,0)' --g 'e(0,0)'", true);
    EXPECT_EQ(e.status, 2);
    auto j = json_of(e);
    EXPECT_EQ(j["error"]["kind"], "cochain");
    EXPECT_EQ(run("qci --unknown-flag", true).status, 2);
    EXPECT_EQ(run("algebra check --algebra /nonexistent.json", true).status, 2);
    EXPECT_EQ(run("bracket --f 'x*e(1,1)' --g 'e(0,0)'", true).status, 2);
}

TEST(Cli, HomotopyChoiceDoesNotChangeOutput) {
    for (const char* q : {"--q generic --char 0", "--q -1 --char 0", "--q 1 --char 2"}) {
        CliRun a = run(std::string("qci ") + q + " --table");
        CliRun b = run(std::string("qci ") + q + " --table --phi twisted");
        EXPECT_EQ(a.out, b.out) << q;
    }
}
