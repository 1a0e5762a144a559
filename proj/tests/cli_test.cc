// Runs the anoncheck binary end to end and checks exit codes and output.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("anoncheck_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  // Returns the exit code; stdout lands in out.txt.
  int run(const std::string& args) {
    const std::string cmd = std::string(ANONCHECK_CLI) + " " + args + " > " +
                            path("out.txt") + " 2> " + path("err.txt");
    const int status = std::system(cmd.c_str());
    output = read("out.txt");
    errors = read("err.txt");
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  fs::path dir_;
  std::string output, errors;
};

const std::string kDonation = std::string(ANONCHECK_TEST_DATA) + "/donation.traces";

TEST_F(Cli, GenerateAndCheckUniformDc) {
  ASSERT_EQ(run("generate dc -o " + path("dc.json") + " --emit-spec " + path("spec.json")), 0)
      << errors;
  EXPECT_EQ(run("check " + path("dc.json") + " " + path("spec.json")), 0) << output;
  EXPECT_NE(output.find("summary: 3 entries, 3 passed, 0 failed"), std::string::npos);
  EXPECT_EQ(run("check --json " + path("dc.json") + " " + path("spec.json")), 0);
  EXPECT_NE(output.find("\"failed\": 0"), std::string::npos);
}

TEST_F(Cli, BiasedDcPrintsAlphaTable) {
  ASSERT_EQ(run("generate dc-prob --priors 0.8,0.1,0.1 --nsa-share 0.2 -o " + path("dc.json") +
                " --emit-spec " + path("spec.json")),
            0)
      << errors;
  EXPECT_NE(output.find("alpha(1,0) = 1/2"), std::string::npos) << output;
  EXPECT_NE(output.find("alpha(0,1) = 8/9"), std::string::npos) << output;
  EXPECT_EQ(run("check " + path("dc.json") + " " + path("spec.json")), 0) << output;
}

TEST_F(Cli, FailingQueryExitsOne) {
  ASSERT_EQ(run("generate dc -o " + path("dc.json")), 0);
  write("spec.json", R"([{"query": {"kind": "k", "i": "0", "a": "paid", "j": "o", "k": 4}}])");
  EXPECT_EQ(run("check " + path("dc.json") + " " + path("spec.json")), 1);
  EXPECT_NE(output.find("FAIL"), std::string::npos);
  EXPECT_NE(output.find("witness:"), std::string::npos);
}

TEST_F(Cli, ErrorsExitTwoOrThree) {
  ASSERT_EQ(run("generate dc -o " + path("dc.json")), 0);
  write("bad.json", R"([{"formula": "Pr_o(p) < 1/0"}])");
  EXPECT_EQ(run("check " + path("dc.json") + " " + path("bad.json")), 2);
  EXPECT_FALSE(errors.empty());
  EXPECT_TRUE(output.empty());
  EXPECT_EQ(run("check " + path("missing.json") + " " + path("bad.json")), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("generate dc --n 2 -o " + path("x.json")), 2);
  EXPECT_FALSE(fs::exists(path("x.json")));

  // No measure: probabilistic formulas are a semantic error.
  write("prob.json", R"([{"formula": "Pr_o(theta(0,paid)) < 1/2"}])");
  EXPECT_EQ(run("check " + path("dc.json") + " " + path("prob.json")), 3);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, DeltaModeDefault) {
  ASSERT_EQ(run("generate dc -o " + path("dc.json")), 0);
  write("spec.json", R"([{"query": {"kind": "minimal", "i": "0", "a": "paid", "j": "o"}}])");
  EXPECT_EQ(run("check --mode delta " + path("dc.json") + " " + path("spec.json")), 0);
  EXPECT_NE(output.find("mode=delta"), std::string::npos) << output;
}

TEST_F(Cli, CspCheckDonation) {
  const std::string a = " --anonymous-events 0.gives,1.gives";
  EXPECT_EQ(run("csp-check " + kDonation + a + " --verify-theorem"), 1);
  EXPECT_NE(output.find("counterexample: <0.gives $10>"), std::string::npos) << output;
  EXPECT_NE(output.find("agree = true"), std::string::npos);
  EXPECT_EQ(run("csp-check " + kDonation + a + " --hide '$5,$10' --verify-theorem --json"), 0);
  EXPECT_NE(output.find("\"strongly_anonymous\": true"), std::string::npos) << output;
  EXPECT_EQ(run("csp-check " + kDonation + " --anonymous-events 2.gives"), 2);
}

TEST_F(Cli, ImportCspThenCheck) {
  ASSERT_EQ(run("import-csp " + kDonation + " --anonymous-events 0.gives,1.gives --hide '$5,$10' -o " +
                path("sys.json")),
            0)
      << errors;
  write("spec.json", R"([
    {"query": {"kind": "up_to", "i": "0", "a": "gives", "j": "o", "I_A": ["0", "1"]}},
    {"query": {"kind": "up_to", "i": "1", "a": "gives", "j": "o", "I_A": ["0", "1"]}}
  ])");
  EXPECT_EQ(run("check " + path("sys.json") + " " + path("spec.json")), 0) << output;
}

}  // namespace
