#include <gtest/gtest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <httplib.h>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "lexigap/service.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = LEXIGAP_CLI;
const std::string kFixtures = LEXIGAP_FIXTURES;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("lexigap_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string& args) const {
    const auto out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = "'" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  fs::path dir_;
};

const std::string kMini = "--base " + kFixtures + "/mini/base.json --lexicon " + kFixtures + "/mini/ab_verbs.tsv";

int free_port() {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in a{};
  a.sin_family = AF_INET;
  a.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  a.sin_port = 0;
  ::bind(fd, reinterpret_cast<sockaddr*>(&a), sizeof a);
  socklen_t len = sizeof a;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&a), &len);
  ::close(fd);
  return ntohs(a.sin_port);
}

}  // namespace

TEST_F(Cli, BuildPlantedCorpus) {
  auto r = run("build --corpus " + kFixtures + "/planted/corpus.txt --config " + kFixtures +
               "/planted/config.json --out " + (dir_ / "base.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("domains: 2"), std::string::npos) << r.out;
  EXPECT_TRUE(fs::exists(dir_ / "base.json"));
}

TEST_F(Cli, BuildMissingCorpus) {
  auto r = run("build --corpus " + (dir_ / "nope.txt").string() + " --out " + (dir_ / "b.json").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("nope.txt"), std::string::npos) << r.err;
  EXPECT_FALSE(fs::exists(dir_ / "b.json"));
}

TEST_F(Cli, BuildMalformedNamesLine) {
  auto r = run("build --corpus " + kFixtures + "/small/malformed.txt --out " + (dir_ / "b.json").string());
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(Cli, BuildAllDiscardedWarns) {
  auto r = run("build --corpus " + kFixtures + "/small/three_lines.txt --out " + (dir_ / "b.json").string());
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("domains: 0"), std::string::npos);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(Cli, ResolveAboli) {
  auto r = run("resolve " + kMini + " --context loi:N --phono aboli");
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string first;
  std::getline(lines, first);
  EXPECT_EQ(first.rfind("1\tabroger:V\t", 0), 0u) << r.out;
}

TEST_F(Cli, ResolveTopZeroAndUsageErrors) {
  auto r = run("resolve " + kMini + " --context loi:N --top 0");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty()) << r.out;
  EXPECT_EQ(run("resolve " + kMini + " --context loi:N --mode both").code, 2);
  EXPECT_EQ(run("resolve " + kMini + " --context ''").code, 2);
  EXPECT_NE(run("resolve --base /nonexistent.json --lexicon " + kFixtures + "/mini/ab_verbs.tsv --context loi:N").code, 0);
}

TEST_F(Cli, ResolveJsonDeterministic) {
  const std::string args = "resolve " + kMini + " --context loi:N,situation:N --threshold 0.5 --phono abo --json";
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(nlohmann::json::parse(a.out, nullptr, false).is_discarded());
}

TEST_F(Cli, ResolveMatchesServiceHandler) {
  auto r = run("resolve " + kMini + " --context situation:N --phono mépriser --slot cod --top 5 --json");
  ASSERT_EQ(r.code, 0) << r.err;
  lexigap::Service svc(lexigap::load_domain_base_file(kFixtures + "/mini/base.json"),
                       lexigap::load_lexicon_file(kFixtures + "/mini/ab_verbs.tsv"));
  auto served = svc.resolve(R"({"context": ["situation:N"], "phono": "mépriser", "slot": "cod", "top": 5})");
  ASSERT_EQ(served.status, 200);
  EXPECT_EQ(nlohmann::json::parse(r.out), nlohmann::json::parse(served.body));
}

TEST_F(Cli, EvalZeroTargets) {
  auto r = run("eval " + kMini + " --doc " + kFixtures + "/small/three_lines.txt --n 0");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("(no targets)"), std::string::npos) << r.out;
}

TEST_F(Cli, GenerateIsDeterministic) {
  ASSERT_EQ(run("generate --topics 2 --seed 3 --out " + (dir_ / "a.txt").string()).code, 0);
  ASSERT_EQ(run("generate --topics 2 --seed 3 --out " + (dir_ / "b.txt").string()).code, 0);
  EXPECT_EQ(slurp(dir_ / "a.txt"), slurp(dir_ / "b.txt"));
}

TEST_F(Cli, ServeAnswersHttp) {
  const int port = free_port();
  const auto cfg = dir_ / "service.json";
  std::ofstream(cfg) << nlohmann::json{{"base_path", kFixtures + "/mini/base.json"},
                                       {"lexicon_path", kFixtures + "/mini/ab_verbs.tsv"},
                                       {"listen_address", "127.0.0.1:" + std::to_string(port)}}
                            .dump();
  const pid_t pid = ::fork();
  ASSERT_GE(pid, 0);
  if (pid == 0) {
    ::execl(kCli.c_str(), kCli.c_str(), "serve", "--config", cfg.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  httplib::Client client("127.0.0.1", port);
  httplib::Result health;
  for (int i = 0; i < 100 && !health; ++i) {
    health = client.Get("/health");
    if (!health) std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);
  const std::string req = R"({"context": ["loi:N"], "phono": "aboli"})";
  auto a = client.Post("/resolve", req, "application/json");
  auto b = client.Post("/resolve", req, "application/json");
  ASSERT_TRUE(a && b);
  EXPECT_EQ(a->status, 200);
  EXPECT_EQ(a->body, b->body);
  auto bad = client.Post("/resolve", "{}", "application/json");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  auto missing = client.Get("/domains/42");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  ::kill(pid, SIGTERM);
  int status = 0;
  ::waitpid(pid, &status, 0);
}
