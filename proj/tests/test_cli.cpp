#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

namespace {

struct Run {
    int status = -1;
    std::string out;
};

// Runs the CLI through the shell. `prefix` goes before the binary (environment settings).
Run cli(const std::string& args, const std::string& prefix = "", bool merge_stderr = false) {
    std::string cmd = prefix + " '" + REPAIRLAB_CLI + "' " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int raw = pclose(p);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string fx(const std::string& name) { return std::string("'") + REPAIRLAB_FIXTURES + "/" + name + "'"; }

std::vector<std::string> repair_keys(const std::string& json_text) {
    std::vector<std::string> out;
    auto j = nlohmann::json::parse(json_text);
    for (const auto& r : j["repairs"]) {
        std::string s;
        for (const auto& e : r["endomorphisms"]) {
            auto k = e["key"].get<std::string>();
            s += (s.empty() ? "" : " ") + k.substr(0, k.find('{'));
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(Cli, CheckExitCodes) {
    EXPECT_EQ(cli("check --instance " + fx("prop_and.json")).status, 1);
    EXPECT_EQ(cli("check --spec " + fx("align.cp") + " --snapshot " + fx("aligned.json")).status, 0);
    EXPECT_EQ(cli("check --spec " + fx("align.cp") + " --snapshot " + fx("menu.json")).status, 1);
    EXPECT_EQ(cli("check --instance " + fx("graph.json")).status, 1);
}

TEST(Cli, ErrorsExitTwo) {
    auto bad = cli("check --spec " + fx("bad.cp") + " --snapshot " + fx("menu.json"), "", true);
    EXPECT_EQ(bad.status, 2);
    EXPECT_NE(bad.out.find("error: "), std::string::npos);
    EXPECT_NE(bad.out.find("line 2"), std::string::npos) << bad.out;
    EXPECT_EQ(cli("check --instance /nonexistent.json").status, 2);
    EXPECT_EQ(cli("repair --instance " + fx("prop_and.json") + " --pool colour").status, 2);
    EXPECT_EQ(cli("frobnicate").status, 2);
    EXPECT_EQ(cli("").status, 2);
    EXPECT_EQ(cli("repair --instance " + fx("prop_and.json") + " --exclude '('").status, 2);
    EXPECT_EQ(cli("repair --spec " + fx("align.cp") + " --snapshot " + fx("menu.json") + " --values grid:0").status, 2);
}

TEST(Cli, CheckJsonCarriesWitnesses) {
    auto r = cli("check --spec " + fx("align.cp") + " --snapshot " + fx("menu.json"));
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["kind"], "layout");
    EXPECT_EQ(j["value"], "false");
    ASSERT_FALSE(j["falsehood_witness"].empty());
    EXPECT_NE(r.out.find("0.0.1"), std::string::npos);
    auto text = cli("check --format text --spec " + fx("align.cp") + " --snapshot " + fx("menu.json"));
    EXPECT_EQ(text.out.rfind("false\nfalsehood witness:\n", 0), 0u) << text.out;
}

TEST(Cli, PropRepairs) {
    auto r = cli("repair --instance " + fx("prop_implies.json"));
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(repair_keys(r.out), (std::vector<std::string>{"a=F", "b=T"}));
    EXPECT_EQ(repair_keys(cli("repair --instance " + fx("prop_and.json")).out), (std::vector<std::string>{"b=T"}));
}

TEST(Cli, OutputIsDeterministic) {
    const std::string args = "repair --spec " + fx("align.cp") + " --snapshot " + fx("menu.json") + " --values grid:100 --max-card 4";
    auto a = cli(args), b = cli(args), serial = cli(args + " --serial");
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, serial.out);
}

TEST(Cli, RepairMatchesOracle) {
    for (const auto& args : {std::string("--instance ") + fx("prop_implies.json"),
                             std::string("--instance ") + fx("partner.json"),
                             "--spec " + fx("align.cp") + " --snapshot " + fx("menu.json"),
                             "--spec " + fx("align.cp") + " --snapshot " + fx("menu.json") + " --values list:52",
                             "--instance " + fx("graph.json") + " --pool colour --pool edge --drop-noop --exclude '=T'"}) {
        auto repair = cli("repair " + args), oracle = cli("oracle " + args);
        EXPECT_EQ(repair.status, oracle.status) << args;
        EXPECT_EQ(repair.out, oracle.out) << args;
    }
}

TEST(Cli, LayoutRepairs) {
    auto r = cli("repair --spec " + fx("align.cp") + " --snapshot " + fx("menu.json"));
    EXPECT_EQ(repair_keys(r.out), (std::vector<std::string>{"move-h(0.0.1)=40",
                                                            "move-h(0.0.0)=64 move-h(0.0.2)=64 move-h(0.0.3)=64"}));
    auto text = cli("repair --format text --spec " + fx("align.cp") + " --snapshot " + fx("menu.json"));
    EXPECT_NE(text.out.find("left(0.0.1): 64 -> 40"), std::string::npos) << text.out;
}

TEST(Cli, Bounds) {
    auto none = cli("repair --max-card 0 --instance " + fx("prop_implies.json"));
    EXPECT_EQ(none.status, 1);
    auto j = nlohmann::json::parse(none.out);
    EXPECT_TRUE(j["repairs"].empty());
    EXPECT_EQ(j["reason"], "max_cardinality");
    auto one = nlohmann::json::parse(cli("repair --max-count 1 --instance " + fx("prop_implies.json")).out);
    EXPECT_EQ(one["repairs"].size(), 1u);
    EXPECT_EQ(one["reason"], "max_repairs");
}

TEST(Cli, PoolCap) {
    const std::string args = "repair --instance " + fx("prop_implies.json");
    auto capped = cli(args, "REPAIRLAB_POOL_CAP=5", true);
    EXPECT_EQ(capped.status, 2);
    EXPECT_NE(capped.out.find("error: "), std::string::npos);
    EXPECT_EQ(cli(args + " --force", "REPAIRLAB_POOL_CAP=5").status, 0);
    EXPECT_EQ(cli(args, "REPAIRLAB_POOL_CAP=6").status, 0);
    EXPECT_EQ(cli(args, "REPAIRLAB_POOL_CAP=lots").status, 2);
    // The full graph pool (45) exceeds the brute-force limit.
    EXPECT_EQ(cli("oracle --instance " + fx("graph.json") + " --pool colour --pool edge").status, 2);
}

TEST(Cli, SatisfiedInstanceHasTheEmptyRepair) {
    auto r = cli("repair --spec " + fx("align.cp") + " --snapshot " + fx("aligned.json"));
    EXPECT_EQ(r.status, 0);
    auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["repairs"].size(), 1u);
    EXPECT_EQ(j["repairs"][0]["cardinality"], 0);
    EXPECT_TRUE(j["repairs"][0]["endomorphisms"].empty());
}

TEST(Cli, SpecOverridesInstanceFormula) {
    auto tmp = std::string(testing::TempDir()) + "/flip.prop";
    FILE* f = fopen(tmp.c_str(), "w");
    fputs("!a\n", f);
    fclose(f);
    auto r = cli("repair --spec '" + tmp + "' --instance " + fx("prop_and.json"));
    EXPECT_EQ(repair_keys(r.out), (std::vector<std::string>{"a=F"}));
}
