#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(LAMSEC_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus(const std::string& name) { return std::string(LAMSEC_CORPUS_DIR) + "/" + name; }

TEST(Cli, TypecheckOk) {
  auto r = run("typecheck " + corpus("fconst.sec"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Bool_low"), std::string::npos);
}

TEST(Cli, TypecheckError) {
  auto r = run("typecheck " + corpus("fid.sec"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("app: A' ≲ A"), std::string::npos);
}

TEST(Cli, RunFlipTrace) {
  auto r = run("run " + corpus("flip.sec") + " --input true --semantics small --trace");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("#1 pc=low"), std::string::npos);
  const auto last = r.out.find_last_not_of('\n');
  ASSERT_NE(last, std::string::npos);
  EXPECT_EQ(r.out.substr(r.out.rfind('\n', last) + 1, last - r.out.rfind('\n', last)), "blame p");
}

TEST(Cli, RunBigAndNsu) {
  EXPECT_EQ(run("run " + corpus("flip.sec") + " --input false --semantics big").code, 2);
  EXPECT_EQ(run("run " + corpus("nsu.sec") + " --input true").code, 3);
  auto ok = run("run " + corpus("cast-label.sec"));
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("true_low"), std::string::npos);
  EXPECT_EQ(run("run " + corpus("diverge.sec") + " --fuel 100").code, 4);
}

TEST(Cli, CompileAndErase) {
  auto c = run("compile " + corpus("cast-label.sec"));
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("=>^p"), std::string::npos);
  auto e = run("erase " + corpus("fconst.sec") + " --input true");
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("bullet"), std::string::npos);
}

TEST(Cli, CheckFiltered) {
  auto r = run("check --filter flip --corpus " + std::string(LAMSEC_CORPUS_DIR));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0 failed"), std::string::npos);
  auto j = run("check --filter typing --json --corpus " + std::string(LAMSEC_CORPUS_DIR));
  EXPECT_EQ(j.code, 0);
  EXPECT_EQ(j.out.front(), '[');
}

TEST(Cli, BadInput) {
  EXPECT_NE(run("run /nonexistent/file.sec").code, 0);
  EXPECT_NE(run("frobnicate").code, 0);
}

}  // namespace
