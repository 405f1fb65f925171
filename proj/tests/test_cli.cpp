// Spawns the command-line binary (path in argv[1]) and checks exit codes,
// JSON output, and determinism.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string out_file = "cli_out.tmp";
  const std::string cmd = g_binary + " " + args + " > " + out_file + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_file);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("verify nosuchsuite").code == 2);
  CHECK(run("verify coroots --dim 4").code == 2);
  CHECK(run("approx unit 5 5").code == 2);
  CHECK(run("approx unit 3 4").code == 2);  // even ideal
  CHECK(run("width fs 4 --element id").code == 2);  // even modulus
  CHECK(run("width fs 3 --element e12").code == 2);  // norm -1, not spin
}

TEST_CASE("verification suites pass") {
  for (const std::string suite : {"clifford", "coroots", "tori", "steinberg"}) {
    auto r = run("verify " + suite);
    INFO(suite, ": ", r.out);
    CHECK(r.code == 0);
    CHECK(r.out.find("\"ok\": true") != std::string::npos);
  }
}

TEST_CASE("unit certificates round-trip through independent verification") {
  auto r = run("approx unit 3 5 --out cli_cert.json");
  INFO(r.out);
  REQUIRE(r.code == 0);
  CHECK(run("verify --file cli_cert.json").code == 0);

  auto p = run("approx pair 2 3 5 --out cli_pair.json");
  INFO(p.out);
  REQUIRE(p.code == 0);
  CHECK(run("verify --file cli_pair.json").code == 0);

  // tampering is detected
  std::string body = slurp("cli_cert.json");
  auto pos = body.find("\"rhs\": \"3\"");
  if (pos != std::string::npos) {
    body.replace(pos, 10, "\"rhs\": \"2\"");
    std::ofstream("cli_tampered.json") << body;
    CHECK(run("verify --file cli_tampered.json").code == 1);
  }
}

TEST_CASE("identical runs emit identical bytes") {
  REQUIRE(run("approx unit 3 35 --out cli_a.json").code == 0);
  REQUIRE(run("approx unit 3 35 --out cli_b.json").code == 0);
  CHECK(slurp("cli_a.json") == slurp("cli_b.json"));

  REQUIRE(run("width fs 3 --element e13 --out cli_w1.json").code == 0);
  REQUIRE(run("width fs 3 --element e13 --out cli_w2.json").code == 0);
  CHECK(slurp("cli_w1.json") == slurp("cli_w2.json"));
}

TEST_CASE("width: exact and sampled modes") {
  auto exact = run("width fs 3 --element e13");
  CHECK(exact.code == 0);
  CHECK(exact.out.find("\"mode\": \"exact\"") != std::string::npos);
  CHECK(exact.out.find("\"width\": 2") != std::string::npos);

  auto ident = run("width fs 3 --element id");
  CHECK(ident.code == 0);
  CHECK(ident.out.find("\"width\": 0") != std::string::npos);

  auto sampled = run("width fs 27 --cap 4");
  CHECK(sampled.code == 3);
  CHECK(sampled.out.find("\"mode\": \"sampled\"") != std::string::npos);
}

int main(int argc, char** argv) {
  doctest::Context ctx;
  ctx.applyCommandLine(argc > 1 ? 1 : argc, argv);
  if (argc > 1) g_binary = argv[1];
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-binary>\n");
    return 1;
  }
  return ctx.run();
}
