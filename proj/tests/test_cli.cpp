#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {
  struct Run {
    int         code;
    std::string out;
  };

  Run run(std::string const& args) {
    std::string cmd = std::string(WORDMAPS_CLI) + " " + args + " 2>&1";
    FILE*       p   = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char        buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) {
      out.append(buf, n);
    }
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
  }

  std::string slurp(std::filesystem::path const& p) {
    std::ifstream     in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::filesystem::path scratch(std::string const& name) {
    auto dir = std::filesystem::temp_directory_path() / "wordmaps_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
  }
}  // namespace

TEST_CASE("trw writes the exact CSV") {
  auto path = scratch("trw.csv");
  auto r    = run("measure trw --word \"x^3 y^2\" --n 3..6 --exact -o " + path.string());
  CHECK(r.code == 0);
  auto csv = slurp(path);
  CHECK(csv.find("# wordmaps 0.1.0\n") == 0);
  CHECK(csv.find("# command: measure trw\n") != std::string::npos);
  CHECK(csv.find("# seed: none\n") != std::string::npos);
  CHECK(csv.find("N,numerator,denominator,decimal\n") != std::string::npos);
  for (char const* row : {"3,3,2,", "4,4,3,", "5,5,4,", "6,6,5,"}) {
    CHECK(csv.find(std::string("\n") + row) != std::string::npos);
  }
}

TEST_CASE("pi as JSON") {
  auto path = scratch("pi.json");
  auto r    = run("--format json -o " + path.string() + " ext pi --word \"[x,y]\"");
  CHECK(r.code == 0);
  auto js = slurp(path);
  CHECK(js.find("\"pi\": 2") != std::string::npos);
  CHECK(js.find("\"C\": 1") != std::string::npos);
  CHECK(js.find("\"extensions\"") != std::string::npos);
}

TEST_CASE("compare reports equality") {
  auto r = run("measure compare --w1 \"[x,y]\" --w2 xyxY --group S5 --exact");
  CHECK(r.code == 0);
  CHECK(r.out.find("equal") != std::string::npos);
  CHECK(r.out.find("unequal") == std::string::npos);
  r = run("measure compare --w1 x --w2 xx --group S3 --exact");
  CHECK(r.code == 0);
  CHECK(r.out.find("unequal") != std::string::npos);
  CHECK(r.out.find("[2,1]") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("--help").code == 0);
  CHECK(run("measure trw --word x --n 3 --exact --seed 4").code == 2);
  CHECK(run("measure trw --word x --n 3 --mc --samples 10").code == 2);
  CHECK(run("measure trw --word \"x(\" --n 3 --exact").code == 2);
  CHECK(run("measure trw --word x --n 5..3 --exact").code == 2);
  CHECK(run("no-such-command").code == 2);
  auto h = run("mobius thm14 --word xy --image a^2 --image b --n 5");
  CHECK(h.code == 3);
  CHECK(h.out.find("word-algebraic-in-F_k") != std::string::npos);
  CHECK(run("--budget 10 measure trw --word xy --n 5 --exact").code == 4);
}

TEST_CASE("artifacts are byte-stable across runs and workers") {
  auto a = scratch("mc1.csv"), b = scratch("mc4.csv"), c = scratch("mc1b.csv");
  std::string args = " measure trw --word \"[x,y]\" --n 8..9 --mc --samples 20000 --seed 17 -o ";
  CHECK(run("--workers 1" + args + a.string()).code == 0);
  CHECK(run("--workers 4" + args + b.string()).code == 0);
  CHECK(run("--workers 1" + args + c.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) == slurp(c));
  CHECK(slurp(a).find("# seed: 17") != std::string::npos);
}

TEST_CASE("perm subcommands") {
  auto r = run("perm root --perm \"(1 2)(3 4)\" --degree 4 --d 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("(1 3 2 4)") != std::string::npos);
  r = run("perm is-power --perm \"(1 2)\" --degree 4 --d 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("false") != std::string::npos);
  r = run("perm moments --b 1 --t 2 --n 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("3/4") != std::string::npos);
}
