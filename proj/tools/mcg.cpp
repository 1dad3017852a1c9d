// mcg: build presentations, replay proof scripts and run the oracles.
// Exit codes: 0 every check passed, 1 a check failed, 2 usage or input error.

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>

#include "mcg/braid.hpp"
#include "mcg/corpus.hpp"
#include "mcg/report.hpp"
#include "mcg/reps.hpp"
#include "mcg/surface.hpp"

using namespace mcg;
namespace fs = std::filesystem;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Output {
  bool json = false;
  bool timings = false;
};

int finish(RunReport const& r, Output const& o) {
  std::cout << (o.json ? r.to_json(o.timings) : r.to_text(o.timings));
  return r.ok() ? 0 : 1;
}

double ms_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t)
      .count();
}

// "gervais(g,n)" is short for the full table.
std::string canonical_name(std::string const& name) {
  static std::regex const short_re(R"(gervais\((\d+),(\d+)\))");
  std::smatch m;
  if (std::regex_match(name, m, short_re)) {
    return "gervais(" + m[1].str() + "," + m[2].str() + ",full)";
  }
  return name;
}

Corpus load_library() { return load_corpus(corpus_dir()); }

// A presentation given either by name or as a .pres file; files join the
// library so scripts may refer to them.
Presentation const& resolve(Corpus& c, std::string const& what,
                            RunReport& report) {
  if (fs::is_regular_file(what)) {
    auto text = read_file(what);
    report.add_input(what, text);
    auto p = parse_presentation(text);
    auto name = p.name();
    c.library.add(std::move(p));
    return *c.library.find(name);
  }
  auto const* p = c.library.find(canonical_name(what));
  if (p == nullptr) {
    throw UsageError("unknown presentation " + what);
  }
  return *p;
}

// On the command line "1" stands for the empty word.
Word cli_word(std::string const& text,
              std::optional<SurfaceParams> ctx = std::nullopt) {
  auto a = text.find_first_not_of(" \t");
  auto b = text.find_last_not_of(" \t");
  if (a != std::string::npos && text.substr(a, b - a + 1) == "1") {
    return Word{};
  }
  return parse_word(text, ctx);
}

Word word_over(Presentation const& p, std::string const& text) {
  auto w = cli_word(text, p.surface());
  for (auto l : w) {
    if (!p.has_generator(l.id())) {
      throw UsageError("letter " + l.symbol().to_string() +
                       " is not a generator of " + p.name());
    }
  }
  return w;
}

// ---------------------------------------------------------------- presentation

struct PresentationArgs {
  int g = 0;
  int n = 0;
  std::string mode = "full";
  bool lanterns = false;
  bool all_stars = false;
  std::string out;
};

int cmd_presentation(PresentationArgs const& a) {
  SurfaceParams p(a.g, a.n);
  auto pres = gervais(p, {.mode = parse_table_mode(a.mode),
                          .dedup_stars = !a.all_stars,
                          .lanterns = a.lanterns});
  auto text = emit_presentation(pres);
  if (a.out.empty() || a.out == "-") {
    std::cout << text;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!(f << text)) {
      throw Error("cannot write " + a.out);
    }
  }
  return 0;
}

// ----------------------------------------------------------------------- check

struct CheckArgs {
  std::vector<std::string> scripts;
  std::vector<std::string> presentations;
  bool corpus = false;
  unsigned threads = 1;
};

int cmd_check(CheckArgs const& a, Output const& o) {
  RunReport report("check");
  auto c = load_library();
  for (auto const& p : a.presentations) {
    resolve(c, p, report);
  }
  std::vector<ProofScript> scripts;
  if (a.corpus) {
    scripts = c.scripts;
    for (auto const& f : c.files) {
      report.add_input(fs::relative(f, corpus_dir()).generic_string(),
                       read_file(f));
    }
  }
  for (auto const& path : a.scripts) {
    auto text = read_file(path);
    report.add_input(path, text);
    std::vector<ProofScript> s;
    try {
      s = parse_scripts(text, [&](std::string const& name) {
        return c.library.surface_of(name);
      });
    } catch (ParseError const& e) {
      throw ParseError(path + ": " + e.what(), e.position());
    }
    scripts.insert(scripts.end(), s.begin(), s.end());
  }
  for (auto const& r : check_corpus(c.library, scripts, a.threads)) {
    std::string reason = r.reason;
    if (r.failing_step) {
      reason = "step " + std::to_string(*r.failing_step) + ": " + reason;
    }
    report.add({r.name, r.ok, reason, {}, r.elapsed_ms});
  }
  return finish(report, o);
}

// ---------------------------------------------------------------------- search

struct SearchArgs {
  std::string over;
  std::string w1;
  std::string w2;
  std::size_t depth = 6;
  std::size_t length = 40;
  std::size_t states = 200000;
  int growth = 2;
  bool lemmas = false;
};

int cmd_search(SearchArgs const& a, Output const& o) {
  RunReport report("search");
  auto c = load_library();
  Presentation p = resolve(c, a.over, report);
  if (a.lemmas) {
    std::vector<ProofScript> over;
    for (auto const& s : c.scripts) {
      if (s.presentation == p.name()) {
        over.push_back(s);
      }
    }
    std::vector<ProofScript> good;
    auto results = check_corpus(c.library, over);
    for (std::size_t i = 0; i < over.size(); ++i) {
      auto it = std::find_if(results.begin(), results.end(),
                             [&](auto const& r) { return r.name == over[i].name; });
      if (it != results.end() && it->ok) {
        good.push_back(over[i]);
      }
    }
    p = with_lemmas(p, good);
  }
  auto w1 = word_over(p, a.w1);
  auto w2 = word_over(p, a.w2);
  SearchConfig cfg;
  cfg.max_depth = a.depth;
  cfg.max_length = a.length;
  cfg.max_states = a.states;
  cfg.max_growth = a.growth;
  auto t = std::chrono::steady_clock::now();
  auto found = search_equal(p, w1, w2, cfg);
  ReportItem item{"search", found.has_value(), {}, {}, ms_since(t)};
  if (found) {
    found->name = "search";
    item.value = emit_script(*found);
  } else {
    item.reason = "no derivation within the bounds";
  }
  if (!o.json && found) {
    std::cout << item.value;
    return 0;
  }
  report.add(std::move(item));
  return finish(report, o);
}

// ---------------------------------------------------------------- homomorphism

struct HomArgs {
  std::string name;
  std::string file;
  std::size_t depth = 6;
  std::size_t states = 200000;
};

int cmd_homomorphism(HomArgs const& a, Output const& o) {
  RunReport report("homomorphism");
  auto c = load_library();
  for (auto const& f : c.files) {
    report.add_input(fs::relative(f, corpus_dir()).generic_string(),
                     read_file(f));
  }
  MapSpec m;
  if (!a.file.empty()) {
    auto text = read_file(a.file);
    report.add_input(a.file, text);
    m = parse_map(text, [&](std::string const& n) {
      return c.library.surface_of(n);
    });
  } else if (!a.name.empty()) {
    auto it = std::find_if(c.maps.begin(), c.maps.end(),
                           [&](auto const& x) { return x.name == a.name; });
    if (it == c.maps.end()) {
      throw UsageError("unknown map " + a.name);
    }
    m = *it;
  } else {
    throw UsageError("give a map name or --map FILE");
  }
  SearchConfig cfg;
  cfg.max_depth = a.depth;
  cfg.max_states = a.states;
  auto rep = verify_map(c, m, cfg);
  for (auto const& s : rep.relators) {
    report.add({s.id, s.ok, s.reason, s.method, 0});
  }
  return finish(report, o);
}

// --------------------------------------------------------------------- oracles

struct OracleArgs {
  std::string over;
  bool homology = false;
  std::optional<unsigned> closure;
  bool abelianize = false;
  std::uint64_t cap = 10'000'000;
};

TransvectionRep rep_for(Presentation const& p) {
  auto s = p.surface();
  if (!s) {
    throw UsageError(p.name() + " has no surface parameters");
  }
  return TransvectionRep(*s);
}

int cmd_oracles(OracleArgs const& a, Output const& o) {
  if (!a.homology && !a.closure && !a.abelianize) {
    throw UsageError("choose --homology, --closure P or --abelianize");
  }
  RunReport report("oracles");
  auto c = load_library();
  auto const& p = resolve(c, a.over, report);
  if (a.abelianize) {
    auto t = std::chrono::steady_clock::now();
    report.add({"abelianize", true, {}, format_factors(abelianization(p)),
                ms_since(t)});
  }
  if (a.closure) {
    auto t = std::chrono::steady_clock::now();
    auto rep = rep_for(p);
    std::vector<IntMatrix> gens;
    for (auto const& g : p.generators()) {
      gens.push_back(twist_matrix(g, rep));
    }
    ReportItem item{"closure", false, {}, {}, 0};
    try {
      item.value = std::to_string(mod_p_closure(gens, *a.closure, a.cap));
      item.ok = true;
    } catch (CapExceeded const& e) {
      item.reason = e.what();
    }
    item.elapsed_ms = ms_since(t);
    report.add(std::move(item));
  }
  if (a.homology) {
    auto t = std::chrono::steady_clock::now();
    auto rep = rep_for(p);
    auto id = IntMatrix::identity(rep.dimension());
    std::vector<std::string> bad;
    for (auto const& r : p.relators()) {
      if (!(word_matrix(r.word, rep) == id)) {
        bad.push_back(r.id);
      }
    }
    ReportItem item{"homology", bad.empty(), {}, {}, 0};
    if (bad.empty()) {
      item.value = "relators trivial: all";
    } else {
      item.value = "relators trivial: " +
                   std::to_string(p.relators().size() - bad.size()) + "/" +
                   std::to_string(p.relators().size());
      for (auto const& b : bad) {
        item.reason += (item.reason.empty() ? "nontrivial: " : ", ") + b;
      }
    }
    item.elapsed_ms = ms_since(t);
    report.add(std::move(item));
  }
  return finish(report, o);
}

// ----------------------------------------------------------------------- braid

struct BraidArgs {
  std::string op;
  std::vector<std::string> words;
  std::string chain;
  std::string over;
};

// Generators sigma_1.. of the explicit chain, or s1..s{k} from the words.
std::vector<GeneratorSymbol> chain_for(BraidArgs const& a,
                                       std::vector<Word> const& ws) {
  if (!a.chain.empty()) {
    std::vector<GeneratorSymbol> out;
    for (auto l : cli_word(a.chain)) {
      out.push_back(l.symbol());
    }
    return out;
  }
  int top = 1;
  static std::regex const s_re(R"(s(\d+))");
  for (auto const& w : ws) {
    for (auto l : w) {
      std::smatch m;
      auto name = l.symbol().to_string();
      if (!std::regex_match(name, m, s_re)) {
        throw UsageError("letter " + name + " is not s<k>; pass --chain");
      }
      top = std::max(top, std::stoi(m[1]));
    }
  }
  return sigma_chain(top + 1);
}

int cmd_braid(BraidArgs const& a, Output const& o) {
  RunReport report("braid");
  std::size_t want = a.op == "reduce" ? 1 : 2;
  if (a.words.size() != want) {
    throw UsageError("braid " + a.op + " takes " + std::to_string(want) +
                     " word(s)");
  }
  std::vector<Word> ws;
  for (auto const& t : a.words) {
    ws.push_back(cli_word(t));
  }
  auto chain = chain_for(a, ws);
  if (a.op == "reduce") {
    auto r = from_braid_word(handle_reduce(to_braid_word(ws[0], chain)), chain);
    report.add({"reduce", true, {}, print_word(r).empty() ? "1" : print_word(r), 0});
  } else if (a.op == "equal") {
    bool eq = braid_equal(ws[0], ws[1], chain);
    report.add({"equal", eq, eq ? "" : "the braids differ", {}, 0});
  } else {
    if (a.over.empty()) {
      throw UsageError("braid certify needs --over");
    }
    auto c = load_library();
    auto const& p = resolve(c, a.over, report);
    auto cert = braid_certificate(p, chain, word_over(p, a.words[0]),
                                  word_over(p, a.words[1]), "braid");
    if (cert && !o.json) {
      std::cout << emit_script(*cert);
      return 0;
    }
    report.add({"certify", cert.has_value(),
                cert ? "" : "the braids differ",
                cert ? emit_script(*cert) : "", 0});
  }
  return finish(report, o);
}

// --------------------------------------------------------------------- surface

struct SurfaceArgs {
  std::string op;
  std::vector<std::string> words;
  std::size_t bound = 6;
};

std::string shown(Word const& w) { return w.empty() ? "1" : print_word(w); }

int cmd_surface(SurfaceArgs const& a, Output const& o) {
  RunReport report("surface");
  auto need = [&](std::size_t n) {
    if (a.words.size() != n) {
      throw UsageError("surface " + a.op + " takes " + std::to_string(n) +
                       " argument(s)");
    }
  };
  if (a.op == "act") {
    // act <twist-word> on <x-word>; the "on" is optional
    auto ws = a.words;
    if (ws.size() == 3 && ws[1] == "on") {
      ws.erase(ws.begin() + 1);
    }
    if (ws.size() != 2) {
      throw UsageError("usage: surface act <twist-word> on <x-word>");
    }
    auto f = word_action(cli_word(ws[0], SurfaceParams(2, 0)));
    report.add({"act", true, {}, shown(dehn_reduce(f.apply(cli_word(ws[1])))),
                0});
  } else if (a.op == "equal") {
    need(2);
    auto d = dehn_reduce(cli_word(a.words[0]) * invert(cli_word(a.words[1])));
    report.add({"equal", d.empty(), d.empty() ? "" : "quotient " + shown(d),
                {}, 0});
  } else if (a.op == "inner") {
    need(1);
    auto f = word_action(cli_word(a.words[0], SurfaceParams(2, 0)));
    auto g = is_inner(f, a.bound);
    report.add({"inner", g.has_value(),
                g ? "" : "no conjugator of length <= " + std::to_string(a.bound),
                g ? shown(*g) : "", 0});
  } else {
    throw UsageError("unknown surface operation " + a.op);
  }
  return finish(report, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mapping class group presentation toolkit"};
  app.set_version_flag("--version", toolkit_version());
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_flag("--json", out.json, "Structured JSON report");
  app.add_flag("--timings", out.timings, "Include elapsed times");

  PresentationArgs pa;
  auto* pres = app.add_subcommand("presentation", "Emit gervais(g,n)");
  pres->add_option("-g,--genus", pa.g)->required();
  pres->add_option("-n,--boundary", pa.n)->required();
  pres->add_option("--mode", pa.mode)
      ->check(CLI::IsMember({"full", "conservative"}));
  pres->add_flag("--lanterns", pa.lanterns, "Add both lantern forms");
  pres->add_flag("--all-stars", pa.all_stars, "Keep every rotation of a star");
  pres->add_option("-o,--out", pa.out, "Output file (default stdout)");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Replay proof scripts");
  check->add_option("scripts", ca.scripts, "Script files")
      ->check(CLI::ExistingFile);
  check->add_option("-p,--presentation", ca.presentations,
                    "Extra presentation files or names");
  check->add_flag("--corpus", ca.corpus, "Check every corpus script");
  check->add_option("-j,--threads", ca.threads)->check(CLI::Range(1u, 256u));

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Bounded relator search");
  search->add_option("--over", sa.over)->required();
  search->add_option("w1", sa.w1)->required();
  search->add_option("w2", sa.w2)->required();
  search->add_option("--depth", sa.depth);
  search->add_option("--length", sa.length);
  search->add_option("--states", sa.states);
  search->add_option("--growth", sa.growth);
  search->add_flag("--lemmas", sa.lemmas, "Use passing corpus lemmas");

  HomArgs ha;
  auto* hom = app.add_subcommand("homomorphism", "Verify a map");
  hom->add_option("name", ha.name, "Corpus map name");
  hom->add_option("--map", ha.file, "Map file")->check(CLI::ExistingFile);
  hom->add_option("--depth", ha.depth);
  hom->add_option("--states", ha.states);

  OracleArgs oa;
  auto* orc = app.add_subcommand("oracles", "Homology, closure, abelianization");
  orc->add_option("--over", oa.over, "Presentation name or file")->required();
  orc->add_flag("--homology", oa.homology);
  orc->add_option("--closure", oa.closure, "Prime p");
  orc->add_flag("--abelianize", oa.abelianize);
  orc->add_option("--cap", oa.cap, "Closure size cap");

  BraidArgs ba;
  auto* braid = app.add_subcommand("braid", "Braid word oracle");
  braid->add_option("op", ba.op)
      ->required()
      ->check(CLI::IsMember({"reduce", "equal", "certify"}));
  braid->add_option("words", ba.words);
  braid->add_option("--chain", ba.chain, "Generators playing sigma_1..");
  braid->add_option("--over", ba.over, "Presentation for certify");

  SurfaceArgs fa;
  auto* surf = app.add_subcommand("surface", "Genus-2 surface group actions");
  surf->add_option("op", fa.op)
      ->required()
      ->check(CLI::IsMember({"act", "equal", "inner"}));
  surf->add_option("words", fa.words);
  surf->add_option("--bound", fa.bound);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pres) return cmd_presentation(pa);
    if (*check) return cmd_check(ca, out);
    if (*search) return cmd_search(sa, out);
    if (*hom) return cmd_homomorphism(ha, out);
    if (*orc) return cmd_oracles(oa, out);
    if (*braid) return cmd_braid(ba, out);
    if (*surf) return cmd_surface(fa, out);
  } catch (ParseError const& e) {
    std::cerr << "mcg: parse error: " << e.what() << "\n";
    return 2;
  } catch (UsageError const& e) {
    std::cerr << "mcg: " << e.what() << "\n";
    return 2;
  } catch (CapExceeded const& e) {
    std::cerr << "mcg: " << e.what() << "\n";
    return 1;
  } catch (Error const& e) {
    // invalid parameters, unreadable files, unknown symbols
    std::cerr << "mcg: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
