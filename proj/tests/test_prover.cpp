#include <doctest.h>

#include "mcg/corpus.hpp"
#include "mcg/prover.hpp"
#include "mcg/reps.hpp"
#include "support.hpp"

using namespace mcg;
using mcg::test::W;

namespace {

Presentation const& g20() {
  static auto const p = gervais(SurfaceParams(2, 0));
  return p;
}

Presentation const& g21() {
  static auto const p = gervais(SurfaceParams(2, 1));
  return p;
}

ProofStep certified(Presentation const& p, Word const& w, std::size_t pos,
                    std::size_t len, Word const& repl) {
  RelatorIndex index(p);
  auto j = index.certify(w.slice(pos, len), repl);
  REQUIRE(j.has_value());
  return ProofStep::sub(pos, len, repl, *j);
}

// One random relator move: replace a prefix of some relator rotation found
// at pos by the inverse of the rest of that rotation.
std::optional<Word> random_move(Presentation const& p, RelatorIndex const& idx,
                                Word const& w, std::mt19937& rng) {
  if (w.empty()) {
    return std::nullopt;
  }
  std::uniform_int_distribution<std::size_t> at(0, w.size() - 1);
  for (int tries = 0; tries < 20; ++tries) {
    auto pos = at(rng);
    auto const& entries = idx.starting_with(w[pos]);
    if (entries.empty()) {
      continue;
    }
    std::uniform_int_distribution<std::size_t> pick(0, entries.size() - 1);
    auto const& e = entries[pick(rng)];
    std::size_t k = 0;
    while (k < e.cyc.size() && pos + k < w.size() && w[pos + k] == e.cyc[k]) {
      ++k;
    }
    if (2 * k >= e.cyc.size()) {
      auto rest = invert(e.cyc.slice(k, e.cyc.size() - k));
      (void)p;
      return free_reduce(substitute(w, pos, k, rest));
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_SUITE("prover") {
  TEST_CASE("check_step: braid substitution") {
    auto w = W("a1 b a1");
    auto s = certified(g20(), w, 0, 3, W("b a1 b"));
    CHECK(s.just.id == "braid(b,a1)");
    CHECK(check_step(g20(), w, s) == W("b a1 b"));
  }

  TEST_CASE("check_step: handle substitution at (2,1)") {
    SurfaceParams p(2, 1);
    auto w = parse_word("c{2,3}", p);
    ProofStep s = ProofStep::sub(0, 1, parse_word("c{1,2}", p),
                                 Justification{"handle(1)", false, 0});
    CHECK(check_step(g21(), w, s) == parse_word("c{1,2}", p));
  }

  TEST_CASE("check_step: free insertion and cancellation") {
    auto a1 = Letter(GeneratorSymbol::a(1));
    CHECK(check_step(g20(), W("b"), ProofStep::ins(1, a1)) == W("b a1 a1'"));
    CHECK(check_step(g20(), W("b a1 a1'"), ProofStep::del(1)) == W("b"));
    CHECK_THROWS_AS(check_step(g20(), W("b a1 a1"), ProofStep::del(1)),
                    StepError);
    CHECK_THROWS_AS(check_step(g20(), W("b"), ProofStep::ins(2, a1)),
                    StepError);
  }

  TEST_CASE("check_step rejects bad justifications") {
    auto w = W("a1 b a1");
    auto good = certified(g20(), w, 0, 3, W("b a1 b"));
    auto flipped = good;
    flipped.just.inv = !flipped.just.inv;
    CHECK_THROWS_AS(check_step(g20(), w, flipped), StepError);
    auto rotated = good;
    rotated.just.rot += 1;
    CHECK_THROWS_AS(check_step(g20(), w, rotated), StepError);
    auto wrong = good;
    wrong.just.id = "braid(a1,a2)";
    CHECK_THROWS_AS(check_step(g20(), w, wrong), StepError);
    auto unknown = good;
    unknown.just.id = "nope";
    CHECK_THROWS_AS(check_step(g20(), w, unknown), StepError);
    auto oob = good;
    oob.pos = 1;
    CHECK_THROWS_AS(check_step(g20(), w, oob), StepError);
  }

  TEST_CASE("justification_word is the rotated relator") {
    auto r = g20().at("braid(b,a1)").word;
    CHECK(justification_word(g20(), {"braid(b,a1)", false, 2}) == rotate(r, 2));
    CHECK(justification_word(g20(), {"braid(b,a1)", true, 0}) == invert(r));
  }

  TEST_CASE("check_script examples") {
    ProofScript empty{"e", g20().name(), W("b"), {}, W("b")};
    CHECK(check_script(g20(), empty).ok);
    ProofScript wrong_end{"e", g20().name(), W("b"), {}, W("a1")};
    auto r = check_script(g20(), wrong_end);
    CHECK_FALSE(r.ok);
    CHECK_FALSE(r.failing_step.has_value());

    auto start = W("a1 b a1 a2");
    ProofScript s{"s", g20().name(), start, {}, W("b a1 b a2")};
    s.steps.push_back(certified(g20(), start, 0, 3, W("b a1 b")));
    CHECK(check_script(g20(), s).ok);
    s.steps[0].pos += 1;
    auto bad = check_script(g20(), s);
    CHECK_FALSE(bad.ok);
    REQUIRE(bad.failing_step.has_value());
    CHECK(*bad.failing_step == 0);
  }

  TEST_CASE("the end word is compared up to free reduction") {
    auto a1 = Letter(GeneratorSymbol::a(1));
    ProofScript s{"s", g20().name(), W("b"), {ProofStep::ins(1, a1)}, W("b")};
    CHECK(check_script(g20(), s).ok);
  }

  TEST_CASE("reduction and reverse steps") {
    auto w = W("a1 b b' a2 a2' a1' b");
    ProofScript s{"r", g20().name(), w, reduction_steps(w), W("b")};
    auto rep = check_script(g20(), s);
    CHECK(rep.ok);
    CHECK(rep.final_word == W("b"));

    auto start = W("a1 b a1");
    std::vector<ProofStep> fwd{certified(g20(), start, 0, 3, W("b a1 b"))};
    auto back = reverse_steps(g20(), start, fwd);
    ProofScript rs{"back", g20().name(), W("b a1 b"), back, start};
    CHECK(check_script(g20(), rs).ok);
  }

  TEST_CASE("script text round trip") {
    auto start = W("a1 b a1 a2");
    ProofScript s{"demo", "gervais(2,0,full)", start, {}, W("b a1 b a2")};
    s.steps.push_back(certified(g20(), start, 0, 3, W("b a1 b")));
    s.steps.push_back(ProofStep::ins(4, Letter(GeneratorSymbol::b())));
    s.steps.push_back(ProofStep::del(4));
    auto text = emit_script(s);
    auto back = parse_scripts(text);
    REQUIRE(back.size() == 1);
    CHECK(back[0].name == s.name);
    CHECK(back[0].presentation == s.presentation);
    CHECK(back[0].start == s.start);
    CHECK(back[0].end == s.end);
    CHECK(back[0].steps == s.steps);
    CHECK(emit_script(back[0]) == text);
    CHECK_THROWS_AS(parse_scripts("script x over y\nstart: b\nfoo\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_scripts("script x over y\nstart: b\n"), ParseError);
  }

  TEST_CASE("search_equal examples") {
    SearchConfig one;
    one.max_depth = 1;
    auto f = search_equal(g20(), W("a1 b a1"), W("b a1 b"), one);
    REQUIRE(f.has_value());
    CHECK(check_script(g20(), *f).ok);
    auto c = search_equal(g20(), W("a1 a2"), W("a2 a1"), one);
    REQUIRE(c.has_value());
    CHECK(check_script(g20(), *c).ok);
    SearchConfig small;
    small.max_depth = 3;
    CHECK_FALSE(search_equal(g20(), W("a1"), W("a2"), small).has_value());
    TransvectionRep rep(SurfaceParams(2, 0));
    CHECK(refute_equal(W("a1"), W("a2"), rep) == Refutation::refuted);
  }

  TEST_CASE("search_equal reaches the empty word") {
    auto r = g20().at("braid(b,a1)").word;
    auto f = search_equal(g20(), r, Word{});
    REQUIRE(f.has_value());
    CHECK(check_script(g20(), *f).ok);
    CHECK(f->end.empty());
  }

  TEST_CASE("search_equal respects the relator filter") {
    SearchConfig cfg;
    cfg.max_depth = 2;
    cfg.filter = [](Relator const& r) { return r.kind != RelatorKind::braid; };
    CHECK_FALSE(search_equal(g20(), W("a1 a2"), W("a2 a1"), cfg).has_value());
  }

  TEST_CASE("search_equal round trip on random walks") {
    std::mt19937 rng(7);
    RelatorIndex idx(g20());
    auto alphabet = g20().generators();
    SearchConfig cfg;
    cfg.max_depth = 4;
    cfg.max_states = 50000;
    int found = 0;
    for (int trial = 0; trial < 60; ++trial) {
      auto w = free_reduce(test::random_word(rng, alphabet, 6));
      auto moved = random_move(g20(), idx, w, rng);
      if (!moved) {
        continue;
      }
      auto s = search_equal(g20(), w, *moved, cfg);
      REQUIRE(s.has_value());
      ++found;
      auto rep = check_script(g20(), *s);
      CHECK(rep.ok);
      CHECK(free_reduce(s->start) == free_reduce(w));
      CHECK(free_reduce(s->end) == free_reduce(*moved));
    }
    CHECK(found > 20);
  }

  TEST_CASE("scripts found by search are sound under the homology oracle") {
    std::mt19937 rng(11);
    TransvectionRep rep(SurfaceParams(2, 0));
    auto alphabet = g20().generators();
    SearchConfig cfg;
    cfg.max_depth = 3;
    cfg.max_states = 20000;
    for (int trial = 0; trial < 80; ++trial) {
      auto w1 = free_reduce(test::random_word(rng, alphabet, 4));
      auto w2 = free_reduce(test::random_word(rng, alphabet, 4));
      if (auto s = search_equal(g20(), w1, w2, cfg)) {
        CHECK(check_script(g20(), *s).ok);
        CHECK(refute_equal(w1, w2, rep) == Refutation::inconclusive);
      }
    }
  }

  TEST_CASE("verify_homomorphism: identity on gervais(2,0)") {
    std::map<GeneratorSymbol, Word> id;
    for (auto const& g : g20().generators()) {
      id[g] = letter_word(g);
    }
    auto rep = verify_homomorphism(g20(), id, g20(), {});
    CHECK(rep.ok);
    CHECK(rep.relators.size() == g20().relators().size());
    for (auto const& s : rep.relators) {
      CHECK(s.ok);
      CHECK(s.method == "search");
    }
  }

  TEST_CASE("verify_homomorphism: certificates and failures") {
    std::map<GeneratorSymbol, Word> id;
    for (auto const& g : g20().generators()) {
      id[g] = letter_word(g);
    }
    auto missing = id;
    missing.erase(GeneratorSymbol::b());
    CHECK_THROWS_AS(verify_homomorphism(g20(), missing, g20(), {}), Error);

    auto r = g20().at("braid(b,a1)").word;
    auto script = search_equal(g20(), r, Word{});
    REQUIRE(script.has_value());
    auto rep = verify_homomorphism(g20(), id, g20(),
                                   {{"braid(b,a1)", *script}});
    CHECK(rep.ok);
    for (auto const& s : rep.relators) {
      CHECK(s.method == (s.id == "braid(b,a1)" ? "script" : "search"));
    }
    // a certificate for the wrong relator is rejected
    auto wrong = verify_homomorphism(g20(), id, g20(),
                                     {{"braid(b,a2)", *script}});
    CHECK_FALSE(wrong.ok);

    // b -> a1 breaks braid(b,b1)
    auto bad = id;
    bad[GeneratorSymbol::b()] = W("a1");
    SearchConfig cfg;
    cfg.max_depth = 2;
    cfg.max_states = 2000;
    CHECK_FALSE(verify_homomorphism(g20(), bad, g20(), {}, cfg).ok);
  }

  TEST_CASE("with_lemmas adds one relator per nontrivial script") {
    ProofScript s{"lem", g20().name(), W("a1 b a1"), {}, W("b a1 b")};
    ProofScript triv{"triv", g20().name(), W("b"), {}, W("b")};
    ProofScript other{"other", "elsewhere", W("b"), {}, W("a1")};
    auto p = with_lemmas(g20(), {s, triv, other});
    CHECK(p.relators().size() == g20().relators().size() + 1);
    CHECK(p.at("lem").word == W("a1 b a1 b' a1' b'"));
    CHECK(p.at("lem").kind == RelatorKind::lemma);
  }

  TEST_CASE("check_corpus: lemmas, failure propagation, cycles") {
    PresentationLibrary lib;
    auto name = g20().name();
    auto start = W("a1 b a1");
    ProofScript base{"base", name, start, {}, W("b a1 b")};
    base.steps.push_back(certified(g20(), start, 0, 3, W("b a1 b")));
    auto with = with_lemmas(g20(), {base});
    auto s2 = W("a1 b a1 a2");
    ProofScript user{"user", name, s2, {}, W("b a1 b a2")};
    {
      RelatorIndex idx(with, [](Relator const& r) { return r.id == "base"; });
      auto j = idx.certify(s2.slice(0, 3), W("b a1 b"));
      REQUIRE(j.has_value());
      user.steps.push_back(ProofStep::sub(0, 3, W("b a1 b"), *j));
    }
    auto res = check_corpus(lib, {user, base}, 2);
    REQUIRE(res.size() == 2);
    CHECK(res[0].name == "base");
    CHECK(res[0].ok);
    CHECK(res[1].ok);
    CHECK(res[1].cited_lemmas == std::vector<std::string>{"base"});

    auto broken = base;
    broken.steps[0].pos = 1;
    auto res2 = check_corpus(lib, {user, broken});
    CHECK_FALSE(res2[0].ok);
    CHECK_FALSE(res2[1].ok);  // cites a failing lemma

    // a script citing itself is cyclic
    ProofScript self{"self", name, s2, {}, W("b a1 b a2")};
    auto with_self = with_lemmas(g20(), {self});
    RelatorIndex idx(with_self,
                     [](Relator const& r) { return r.id == "self"; });
    auto j = idx.certify(s2, W("b a1 b a2"));
    REQUIRE(j.has_value());
    self.steps.push_back(ProofStep::sub(0, 4, W("b a1 b a2"), *j));
    auto res3 = check_corpus(lib, {self});
    CHECK_FALSE(res3[0].ok);
  }

  TEST_CASE("check_corpus is deterministic across thread counts") {
    auto c = load_corpus(corpus_dir());
    auto one = check_corpus(c.library, c.scripts, 1);
    auto four = check_corpus(c.library, c.scripts, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
      CHECK(one[i].name == four[i].name);
      CHECK(one[i].ok == four[i].ok);
      CHECK(one[i].reason == four[i].reason);
    }
  }

  TEST_CASE("single_step_mutants perturb exactly one step") {
    auto start = W("a1 b a1 a2");
    ProofScript s{"s", g20().name(), start, {}, W("b a1 b a2")};
    s.steps.push_back(certified(g20(), start, 0, 3, W("b a1 b")));
    auto ms = single_step_mutants(g20(), s);
    CHECK_FALSE(ms.empty());
    for (auto const& m : ms) {
      CHECK(m.step == 0);
      CHECK(m.script.steps.size() == s.steps.size());
      CHECK_FALSE(m.script.steps[0] == s.steps[0]);
      CHECK_FALSE(check_script(g20(), m.script).ok);
    }
  }

  TEST_CASE("library resolves built-in names") {
    PresentationLibrary lib;
    REQUIRE(lib.find("gervais(3,1,full)") != nullptr);
    CHECK(lib.find("gervais(3,1,full)")->generators().size() ==
          gervais(SurfaceParams(3, 1)).generators().size());
    CHECK(lib.find("gervais(2,0,conservative)") != nullptr);
    CHECK(lib.find("birman-hilden(2,0)") != nullptr);
    CHECK(lib.find("nothing") == nullptr);
    CHECK(lib.surface_of("gervais(3,2,full,lanterns)") == SurfaceParams(3, 2));
  }
}
