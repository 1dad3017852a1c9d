#include <doctest.h>

#include <set>

#include "mcg/corpus.hpp"
#include "mcg/instances.hpp"
#include "mcg/reps.hpp"
#include "support.hpp"

using namespace mcg;
using mcg::test::W;

namespace {

Corpus const& corpus() {
  static Corpus const c = load_corpus(corpus_dir());
  return c;
}

// w1 and w2 are equal up to cyclic rotation and inversion.
bool same_relator(Word const& w1, Word const& w2) {
  auto a = cyclic_reduce(w1);
  auto b = cyclic_reduce(w2);
  if (a.size() != b.size()) {
    return false;
  }
  for (auto const& c : {b, invert(b)}) {
    for (std::size_t k = 0; k < c.size() || k == 0; ++k) {
      if (rotate(c, k) == a) {
        return true;
      }
    }
  }
  return false;
}

Presentation augmented(ProofScript const& s,
                       std::vector<ScriptResult> const& results) {
  auto const& c = corpus();
  std::vector<ProofScript> good;
  for (std::size_t i = 0; i < c.scripts.size(); ++i) {
    auto const& t = c.scripts[i];
    for (auto const& r : results) {
      if (r.name == t.name && r.ok && t.presentation == s.presentation) {
        good.push_back(t);
      }
    }
  }
  return with_lemmas(*c.library.find(s.presentation), good);
}

}  // namespace

TEST_SUITE("corpus") {
  TEST_CASE("the shipped corpus loads and every script passes") {
    auto const& c = corpus();
    CHECK(c.scripts.size() >= 30);
    std::set<std::string> names;
    for (auto const& s : c.scripts) {
      CHECK(names.insert(s.name).second);
      CHECK(c.library.find(s.presentation) != nullptr);
    }
    auto results = check_corpus(c.library, c.scripts);
    REQUIRE(results.size() == c.scripts.size());
    for (auto const& r : results) {
      CAPTURE(r.name);
      CAPTURE(r.reason);
      CHECK(r.ok);
    }
  }

  TEST_CASE("every single-step mutant of every script is rejected") {
    auto const& c = corpus();
    auto results = check_corpus(c.library, c.scripts);
    std::size_t mutants = 0;
    std::size_t killed = 0;
    for (auto const& s : c.scripts) {
      auto p = augmented(s, results);
      for (auto const& m : single_step_mutants(p, s)) {
        ++mutants;
        if (!check_script(p, m.script).ok) {
          ++killed;
        } else {
          MESSAGE(s.name << ": " << m.description << " survives");
        }
      }
    }
    CHECK(mutants > 1000);
    CHECK(killed == mutants);
  }

  TEST_CASE("every lemma step is valid in the homology representation") {
    // start and end of each script act identically on homology
    auto const& c = corpus();
    for (auto const& s : c.scripts) {
      auto const* p = c.library.find(s.presentation);
      auto surface = p->surface();
      if (!surface) {
        continue;
      }
      bool in_table = true;
      CurveClassTable t(*surface);
      for (auto const& g : p->generators()) {
        in_table = in_table && t.contains(g);
      }
      if (!in_table) {
        continue;
      }
      TransvectionRep rep(*surface);
      CAPTURE(s.name);
      CHECK(refute_equal(s.start, s.end, rep) == Refutation::inconclusive);
    }
  }

  TEST_CASE("both genus-2 maps verify") {
    for (auto const* name : {"phi20", "psi20"}) {
      CAPTURE(name);
      auto const& m = find_map(corpus(), name);
      auto rep = verify_map(corpus(), m);
      CHECK(rep.ok);
      for (auto const& st : rep.relators) {
        CAPTURE(st.id);
        CAPTURE(st.reason);
        CHECK(st.ok);
        if (m.certificates.contains(st.id)) {
          CHECK(st.method == "script");
        }
      }
    }
    auto const& phi = find_map(corpus(), "phi20");
    CHECK(phi.source == "birman-hilden(2,0)");
    CHECK(phi.target == "gervais20");
    CHECK(verify_map(corpus(), phi).relators.size() == 17);
    CHECK(verify_map(corpus(), find_map(corpus(), "psi20")).relators.size() ==
          11);
    CHECK_THROWS_AS(find_map(corpus(), "nope"), Error);
  }

  TEST_CASE("broken map certificates are reported") {
    auto m = find_map(corpus(), "phi20");
    m.certificates["bh-iii"] = "E-fix-a1";
    auto rep = verify_map(corpus(), m);
    CHECK_FALSE(rep.ok);
    for (auto const& st : rep.relators) {
      if (st.id == "bh-iii") {
        CHECK_FALSE(st.ok);
        CHECK(st.method == "script");
      }
    }
    auto missing = find_map(corpus(), "phi20");
    missing.certificates["bh-iii"] = "no-such-script";
    CHECK_FALSE(verify_map(corpus(), missing).ok);
    auto unknown = find_map(corpus(), "phi20");
    unknown.certificates["bh-zz"] = "S2-iii";
    CHECK_THROWS_AS(verify_map(corpus(), unknown), Error);
    // a wrong image breaks the map
    auto wrong = find_map(corpus(), "phi20");
    wrong.images[GeneratorSymbol::named("tau1")] = W("a2");
    SearchConfig small;
    small.max_depth = 2;
    small.max_states = 5000;
    CHECK_FALSE(verify_map(corpus(), wrong, small).ok);
  }

  TEST_CASE("gervais20 is the five-twist presentation") {
    auto const* p = corpus().library.find("gervais20");
    REQUIRE(p != nullptr);
    auto q = genus2_twists();
    CHECK(std::set(p->generators().begin(), p->generators().end()) ==
          std::set(q.generators().begin(), q.generators().end()));
    REQUIRE(p->relators().size() == q.relators().size());
    for (auto const& r : q.relators()) {
      CAPTURE(r.id);
      REQUIRE(p->find(r.id) != nullptr);
      CHECK(same_relator(p->at(r.id).word, r.word));
    }
  }

  TEST_CASE("gervais21-imported extends the built presentation by one relator") {
    auto const* p = corpus().library.find("gervais21-imported");
    REQUIRE(p != nullptr);
    SurfaceParams s(2, 1);
    auto q = gervais(s, {.mode = TableMode::full, .lanterns = true});
    CHECK(p->generators() == q.generators());
    REQUIRE(p->relators().size() == q.relators().size() + 1);
    for (std::size_t i = 0; i < q.relators().size(); ++i) {
      CHECK(p->relators()[i].id == q.relators()[i].id);
      CHECK(p->relators()[i].word == q.relators()[i].word);
    }
    // c{1,2} x3 c{1,2}' = x3 x2' x1 x0' c{3,1} with the x_i as twist images
    auto x0 = parse_word("a1 a3'", s);
    auto x1 = conjugate(W("b"), x0);
    auto x2 = conjugate(W("a2"), x1);
    auto x3 = conjugate(W("b1"), x2);
    auto c12 = parse_word("c{1,2}", s);
    auto c31 = parse_word("c{3,1}", s);
    auto lhs = c12 * x3 * invert(c12);
    auto rhs = x3 * invert(x2) * x1 * invert(x0) * c31;
    CHECK(same_relator(p->at("c12(x3)").word, free_reduce(lhs * invert(rhs))));
    CHECK(p->at("c12(x3)").kind == RelatorKind::imported);
  }

  TEST_CASE("map file parsing") {
    auto lookup = [](std::string const&) -> std::optional<SurfaceParams> {
      return std::nullopt;
    };
    auto m = parse_map(
        "# demo\nmap m from A to B\nimg u -> v w'\ncert r s # note\n", lookup);
    CHECK(m.name == "m");
    CHECK(m.source == "A");
    CHECK(m.target == "B");
    CHECK(m.images.at(GeneratorSymbol::named("u")) == W("v w'"));
    CHECK(m.certificates.at("r") == "s");
    CHECK_THROWS_AS(parse_map("img u -> v\n", lookup), ParseError);
    CHECK_THROWS_AS(parse_map("map m to B\n", lookup), ParseError);
    CHECK_THROWS_AS(parse_map("map m from A to B\nimg u v\n", lookup),
                    ParseError);
    CHECK_THROWS_AS(
        parse_map("map m from A to B\nimg u -> v\nimg u -> w\n", lookup),
        ParseError);
    CHECK_THROWS_AS(parse_map("map m from A to B\nfrob\n", lookup),
                    ParseError);
    CHECK_THROWS_AS(parse_map("map m from A to B\ncert r\n", lookup),
                    ParseError);
  }

  TEST_CASE("a missing corpus directory is an error") {
    CHECK_THROWS_AS(load_corpus("/nonexistent/corpus"), Error);
  }

  TEST_CASE("fnv1a digests") {
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
  }
}
