#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

#include "mcg/corpus.hpp"

#if !defined(MCG_CLI) || !defined(MCG_EXPAND)
#error "MCG_CLI and MCG_EXPAND must name the tool binaries"
#endif

using namespace mcg;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

std::string quote(std::string const& s) {
  std::string q = "'";
  for (char c : s) {
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  }
  return q + "'";
}

Run run(std::string const& args, std::string const& env = "") {
  auto cmd = env + " " + quote(MCG_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, pipe)) {
    out.append(buf, n);
  }
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(std::string const& hay, std::string const& needle) {
  return hay.find(needle) != std::string::npos;
}

fs::path temp_corpus(std::string const& tag) {
  auto dir = fs::temp_directory_path() / ("mcg-cli-" + tag);
  fs::remove_all(dir);
  fs::copy(corpus_dir(), dir, fs::copy_options::recursive);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("presentation") {
    auto r = run("presentation -g 2 -n 0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "presentation gervais(2,0,full)"));
    CHECK(parse_presentation(r.out).generators().size() == 6);
    auto b = run("presentation -g 2 -n 1");
    CHECK(b.code == 0);
    CHECK(contains(b.out, "star(1,2,3)"));
    CHECK(run("presentation -g 1 -n 0").code == 2);
    CHECK(run("presentation -g 2").code == 2);
    auto l = run("presentation -g 3 -n 1 --lanterns");
    CHECK(contains(l.out, "gervais(3,1,full,lanterns)"));
    CHECK(contains(l.out, "lantern"));
  }

  TEST_CASE("check over the shipped corpus") {
    auto r = run("check --corpus");
    CHECK(r.code == 0);
    auto n = load_corpus(corpus_dir()).scripts.size();
    CHECK(contains(r.out, std::to_string(n) + " items, " + std::to_string(n) +
                              " passed, 0 failed"));
    auto j = run("--json check --corpus");
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["summary"]["failed"] == 0);
    CHECK(doc["items"].size() == n);
  }

  TEST_CASE("check with nothing to do") {
    auto r = run("check");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0 items"));
  }

  TEST_CASE("a single mutated script fails the run") {
    auto dir = temp_corpus("mutant");
    auto c = load_corpus(dir.string());
    // psi-star(1,1,2) is not cited by any other script
    auto path = (dir / "scripts" / "bh20.script").string();
    auto scripts = load_scripts(path, c.library);
    REQUIRE(scripts.size() == 1);
    auto const* p = c.library.find(scripts[0].presentation);
    auto mutants = single_step_mutants(*p, scripts[0]);
    REQUIRE_FALSE(mutants.empty());
    std::ofstream(path) << emit_script(mutants.front().script);
    auto r = run("check --corpus", "MCG_CORPUS_DIR=" + quote(dir.string()));
    CHECK(r.code == 1);
    CHECK(contains(r.out, "1 failed"));
    CHECK(contains(r.out, "FAIL psi-star(1,1,2)"));
    // the map certified by the broken script no longer verifies
    auto h = run("homomorphism psi20", "MCG_CORPUS_DIR=" + quote(dir.string()));
    CHECK(h.code == 1);
    fs::remove_all(dir);
  }

  TEST_CASE("check a script file") {
    auto dir = fs::temp_directory_path() / "mcg-cli-file";
    fs::create_directories(dir);
    auto path = (dir / "t.script").string();
    std::ofstream(path) << "script t over gervais(2,0,full)\n"
                           "start: a1 b a1\n"
                           "sub 0 3 -> b a1 b by braid(b,a1) inv\n"
                           "end: b a1 b\n";
    auto ok = run("check " + quote(path));
    CHECK(ok.code == 0);
    std::ofstream(path) << "script t over gervais(2,0,full)\n"
                           "start: a1 b a1\n"
                           "end: b a1 b\n";
    CHECK(run("check " + quote(path)).code == 1);
    std::ofstream(path) << "script t over gervais(2,0,full)\nbogus\n";
    CHECK(run("check " + quote(path)).code == 2);
    CHECK(run("check /nonexistent.script").code == 2);
    fs::remove_all(dir);
  }

  TEST_CASE("oracles") {
    auto a = run("oracles --over 'gervais(2,0)' --abelianize");
    CHECK(a.code == 0);
    CHECK(contains(a.out, "[10]"));
    auto c = run("oracles --over 'gervais(2,0)' --closure 2");
    CHECK(contains(c.out, "720"));
    auto h = run("oracles --over 'gervais(3,1)' --homology");
    CHECK(h.code == 0);
    CHECK(contains(h.out, "relators trivial: all"));
    CHECK(run("oracles --over 'gervais(2,0)' --closure 2 --cap 10").code == 1);
    CHECK(run("oracles --over nothing --abelianize").code == 2);
  }

  TEST_CASE("homomorphism, search, braid and surface") {
    CHECK(run("homomorphism phi20").code == 0);
    CHECK(run("homomorphism psi20").code == 0);
    CHECK(run("homomorphism nope").code == 2);
    auto s = run("search --over 'gervais(2,0)' 'a1 b a1' 'b a1 b'");
    CHECK(s.code == 0);
    CHECK(contains(s.out, "end: b a1 b"));
    CHECK(run("search --over 'gervais(2,0)' a1 a2 --depth 2").code == 1);
    CHECK(run("braid equal 's1 s2 s1' 's2 s1 s2'").code == 0);
    CHECK(run("braid equal 's1 s2' 's2 s1'").code == 1);
    auto cert = run("braid certify 's1 s2 s1' 's2 s1 s2' --over 'braid(3)'");
    CHECK(cert.code == 0);
    CHECK(contains(cert.out, "script braid over braid(3)"));
    auto inner = run(
        "surface inner \"a1 a1 a2 b a1 a1 a2 b a1 a1 a2 b c{1,2}' c{1,2}'\" "
        "--bound 6");
    CHECK(inner.code == 0);
    CHECK(contains(inner.out, "x2 x1' x0"));
  }

  TEST_CASE("reports are deterministic") {
    auto a = run("--json check --corpus -j 1");
    auto b = run("--json check --corpus -j 4");
    CHECK(a.out == b.out);
    CHECK(run("--json check --corpus").out == a.out);
    CHECK_FALSE(contains(a.out, "elapsed_ms"));
    CHECK(contains(run("--json --timings check --corpus").out, "elapsed_ms"));
  }

  TEST_CASE("corpus directory override") {
    auto missing = run("check --corpus", "MCG_CORPUS_DIR=/nonexistent/corpus");
    CHECK(missing.code == 2);
    auto dir = temp_corpus("empty");
    fs::remove_all(dir / "scripts");
    fs::remove_all(dir / "maps");
    auto r = run("check --corpus", "MCG_CORPUS_DIR=" + quote(dir.string()));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0 items"));
    fs::remove_all(dir);
  }

  TEST_CASE("chain sources expand to the shipped scripts") {
    auto dir = fs::temp_directory_path() / "mcg-cli-expand";
    fs::create_directories(dir);
    fs::path src = fs::path(corpus_dir()) / "src";
    std::size_t n = 0;
    for (auto const& e : fs::directory_iterator(src)) {
      if (e.path().extension() != ".chain") {
        continue;
      }
      ++n;
      auto stem = e.path().stem().string();
      auto out = dir / (stem + ".script");
      auto cmd = quote(MCG_EXPAND) + " " + quote(e.path().string()) + " -o " +
                 quote(out.string()) + " --corpus " + quote(corpus_dir()) +
                 " >/dev/null 2>&1";
      CHECK(std::system(cmd.c_str()) == 0);
      auto shipped = fs::path(corpus_dir()) / "scripts" / (stem + ".script");
      CAPTURE(stem);
      CHECK(read_file(out.string()) == read_file(shipped.string()));
    }
    CHECK(n == 4);
    fs::remove_all(dir);
  }

  TEST_CASE("usage errors") {
    CHECK(run("").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("check -j 0").code == 2);
    CHECK(run("braid reduce").code == 2);
    CHECK(run("search --over 'gervais(2,0)' 'a1 (' b").code == 2);
    auto v = run("--version");
    CHECK(v.code == 0);
    CHECK(contains(v.out, "1.0.0"));
  }
}
