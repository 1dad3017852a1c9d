#include "mcg/prover.hpp"

#include "mcg/braid.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

namespace mcg {

ProofStep ProofStep::sub(std::size_t pos, std::size_t len, Word repl,
                         Justification j) {
  return {StepKind::relator_sub, pos, len, std::move(repl), std::move(j)};
}

ProofStep ProofStep::ins(std::size_t pos, Letter g) {
  return {StepKind::free_insert, pos, 0, Word{g, g.inverse()}, {}};
}

ProofStep ProofStep::del(std::size_t pos) {
  return {StepKind::free_cancel, pos, 2, Word{}, {}};
}

Word justification_word(Presentation const& p, Justification const& j) {
  auto r = p.find(j.id);
  if (r == nullptr) {
    throw StepError("unknown relator id " + j.id);
  }
  auto base = j.inv ? invert(r->word) : r->word;
  if (base.empty() ? j.rot != 0 : j.rot >= base.size()) {
    throw StepError("rotation " + std::to_string(j.rot) +
                    " out of range for relator " + j.id);
  }
  return rotate(base, j.rot);
}

Word check_step(Presentation const& p, Word const& w, ProofStep const& s) {
  if (s.pos > w.size() || s.len > w.size() - s.pos) {
    throw StepError("out-of-bounds: [" + std::to_string(s.pos) + ", " +
                    std::to_string(s.pos + s.len) + ") in word of length " +
                    std::to_string(w.size()));
  }
  switch (s.kind) {
    case StepKind::relator_sub: {
      auto removed = w.slice(s.pos, s.len);
      auto target = justification_word(p, s.just);
      if (free_reduce(removed * invert(s.replacement)) != free_reduce(target)) {
        throw StepError("invalid-justification: " + print_word(removed) +
                        " -> " + print_word(s.replacement) +
                        " is not certified by " + s.just.id);
      }
      break;
    }
    case StepKind::free_insert:
      if (s.len != 0 || s.replacement.size() != 2 ||
          s.replacement[1] != s.replacement[0].inverse()) {
        throw StepError("malformed free insertion");
      }
      break;
    case StepKind::free_cancel:
      if (s.len != 2 || !s.replacement.empty() ||
          w[s.pos + 1] != w[s.pos].inverse()) {
        throw StepError("free cancellation at " + std::to_string(s.pos) +
                        " does not remove an inverse pair");
      }
      break;
  }
  return substitute(w, s.pos, s.len, s.replacement);
}

CheckReport check_script(Presentation const& p, ProofScript const& s) {
  CheckReport rep;
  Word w = s.start;
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    try {
      w = check_step(p, w, s.steps[i]);
    } catch (Error const& e) {
      rep.failing_step = i;
      rep.reason = "step " + std::to_string(i + 1) + ": " + e.what();
      rep.final_word = w;
      return rep;
    }
  }
  rep.final_word = w;
  if (free_reduce(w) != free_reduce(s.end)) {
    rep.reason = "final word " + print_word(free_reduce(w)) +
                 " differs from end " + print_word(free_reduce(s.end));
    return rep;
  }
  rep.ok = true;
  return rep;
}

std::vector<Word> replay(Presentation const& p, ProofScript const& s) {
  std::vector<Word> out{s.start};
  for (auto const& step : s.steps) {
    out.push_back(check_step(p, out.back(), step));
  }
  return out;
}

RelatorIndex::RelatorIndex(Presentation const& p,
                           std::function<bool(Relator const&)> filter) {
  for (std::size_t idx = 0; idx < p.relators().size(); ++idx) {
    auto const& r = p.relators()[idx];
    if (r.word.empty() || (filter && !filter(r))) {
      continue;
    }
    auto ri = relators_.size();
    relators_.push_back(&r);
    for (bool inv : {false, true}) {
      auto base = inv ? invert(r.word) : r.word;
      for (std::size_t rot = 0; rot < base.size(); ++rot) {
        auto cyc = rotate(base, rot);
        by_word_.try_emplace(free_reduce(cyc), Justification{r.id, inv, rot});
        by_first_[cyc[0].code()].push_back({ri, inv, rot, cyc});
      }
    }
  }
}

std::optional<Justification> RelatorIndex::certify(Word const& removed,
                                                   Word const& repl) const {
  auto it = by_word_.find(free_reduce(removed * invert(repl)));
  if (it == by_word_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::vector<RelatorIndex::Entry> const& RelatorIndex::starting_with(
    Letter l) const {
  static std::vector<Entry> const none;
  auto it = by_first_.find(l.code());
  return it == by_first_.end() ? none : it->second;
}

std::vector<ProofStep> reduction_steps(Word const& w0) {
  std::vector<ProofStep> out;
  auto w = w0.letters();
  std::size_t i = 0;
  while (i + 1 < w.size()) {
    if (w[i + 1] == w[i].inverse()) {
      out.push_back(ProofStep::del(i));
      w.erase(w.begin() + static_cast<std::ptrdiff_t>(i),
              w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      i = i > 0 ? i - 1 : 0;
    } else {
      ++i;
    }
  }
  return out;
}

std::vector<ProofStep> reverse_steps(Presentation const& p, Word const& start,
                                     std::vector<ProofStep> const& steps) {
  std::vector<Word> words{start};
  for (auto const& s : steps) {
    words.push_back(check_step(p, words.back(), s));
  }
  std::vector<ProofStep> out;
  for (std::size_t k = steps.size(); k-- > 0;) {
    auto const& s = steps[k];
    auto const& before = words[k];
    switch (s.kind) {
      case StepKind::relator_sub: {
        auto n = p.at(s.just.id).word.size();
        Justification j{s.just.id, !s.just.inv, n == 0 ? 0 : (n - s.just.rot) % n};
        out.push_back(ProofStep::sub(s.pos, s.replacement.size(),
                                     before.slice(s.pos, s.len), j));
        break;
      }
      case StepKind::free_insert:
        out.push_back(ProofStep::del(s.pos));
        break;
      case StepKind::free_cancel:
        out.push_back(ProofStep::ins(s.pos, before[s.pos]));
        break;
    }
  }
  return out;
}

namespace {

struct SearchNode {
  Word word;
  int parent;
  std::vector<ProofStep> steps;  // parent -> this
  std::size_t depth;
};

struct Successor {
  Word word;
  std::vector<ProofStep> steps;
};

std::vector<Successor> successors(RelatorIndex const& index, Word const& w,
                                  SearchConfig const& cfg) {
  std::vector<Successor> out;
  auto emit = [&](std::size_t pos, std::size_t len, Word repl,
                  RelatorIndex::Entry const& e) {
    auto next = substitute(w, pos, len, repl);
    auto red = free_reduce(next);
    if (red.size() > cfg.max_length) {
      return;
    }
    std::vector<ProofStep> steps{ProofStep::sub(
        pos, len, std::move(repl),
        {index.relators()[e.relator]->id, e.inv, e.rot})};
    auto dels = reduction_steps(next);
    steps.insert(steps.end(), dels.begin(), dels.end());
    out.push_back({std::move(red), std::move(steps)});
  };
  for (std::size_t p = 0; p < w.size(); ++p) {
    for (auto const& e : index.starting_with(w[p])) {
      std::size_t m = 0;
      while (m < e.cyc.size() && p + m < w.size() && w[p + m] == e.cyc[m]) {
        ++m;
        auto repl = invert(e.cyc.slice(m, e.cyc.size() - m));
        int growth = static_cast<int>(repl.size()) - static_cast<int>(m);
        if (growth <= cfg.max_growth) {
          emit(p, m, std::move(repl), e);
        }
      }
    }
  }
  return out;
}

}  // namespace

std::optional<ProofScript> search_equal(Presentation const& p, Word const& w1,
                                        Word const& w2,
                                        SearchConfig const& cfg) {
  ProofScript script{"search", p.name(), w1, reduction_steps(w1), w2};
  auto r1 = free_reduce(w1);
  auto r2 = free_reduce(w2);
  if (r1 == r2) {
    return script;
  }
  RelatorIndex index(p, cfg.filter);
  std::vector<SearchNode> nodes[2];
  std::unordered_map<Word, int, WordHash> seen[2];
  nodes[0].push_back({r1, -1, {}, 0});
  nodes[1].push_back({r2, -1, {}, 0});
  seen[0].emplace(r1, 0);
  seen[1].emplace(r2, 0);
  std::size_t layer_begin[2] = {0, 0};
  std::size_t depth[2] = {0, 0};

  auto path_to = [&](int side, int idx) {
    std::vector<int> chain;
    for (int k = idx; k != -1; k = nodes[side][static_cast<std::size_t>(k)].parent) {
      chain.push_back(k);
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
  };
  auto assemble = [&](int fwd_idx, int bwd_idx) {
    for (int k : path_to(0, fwd_idx)) {
      auto const& st = nodes[0][static_cast<std::size_t>(k)].steps;
      script.steps.insert(script.steps.end(), st.begin(), st.end());
    }
    auto chain = path_to(1, bwd_idx);
    for (std::size_t k = chain.size(); k-- > 1;) {
      auto const& child = nodes[1][static_cast<std::size_t>(chain[k])];
      auto const& parent = nodes[1][static_cast<std::size_t>(chain[k - 1])];
      auto back = reverse_steps(p, parent.word, child.steps);
      script.steps.insert(script.steps.end(), back.begin(), back.end());
    }
    return script;
  };

  while (depth[0] + depth[1] < cfg.max_depth) {
    std::size_t size0 = nodes[0].size() - layer_begin[0];
    std::size_t size1 = nodes[1].size() - layer_begin[1];
    if (size0 == 0 && size1 == 0) {
      return std::nullopt;
    }
    // a side with an empty frontier (the empty word has no successors) stops
    // growing; the other side keeps going
    int side = size1 == 0 || (size0 != 0 && size0 <= size1) ? 0 : 1;
    auto layer_end = nodes[side].size();
    for (auto i = layer_begin[side]; i < layer_end; ++i) {
      auto succ = successors(index, nodes[side][i].word, cfg);
      for (auto& s : succ) {
        if (seen[side].contains(s.word)) {
          continue;
        }
        int idx = static_cast<int>(nodes[side].size());
        seen[side].emplace(s.word, idx);
        auto other = seen[1 - side].find(s.word);
        nodes[side].push_back(
            {s.word, static_cast<int>(i), std::move(s.steps), depth[side] + 1});
        if (other != seen[1 - side].end()) {
          return side == 0 ? assemble(idx, other->second)
                           : assemble(other->second, idx);
        }
        if (nodes[0].size() + nodes[1].size() > cfg.max_states) {
          return std::nullopt;
        }
      }
    }
    if (nodes[side].size() > layer_end) {
      ++depth[side];
    }
    layer_begin[side] = layer_end;
  }
  return std::nullopt;
}

Word apply_map(Word const& w, std::map<GeneratorSymbol, Word> const& images) {
  std::vector<Letter> out;
  for (auto l : w) {
    auto it = images.find(l.symbol());
    if (it == images.end()) {
      throw Error("no image for " + l.symbol().to_string());
    }
    auto img = l.sign() > 0 ? it->second : invert(it->second);
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out));
}

HomomorphismReport verify_homomorphism(
    Presentation const& src, std::map<GeneratorSymbol, Word> const& images,
    Presentation const& tgt,
    std::map<std::string, ProofScript> const& certificates,
    SearchConfig const& fallback) {
  for (auto const& s : src.generators()) {
    if (!images.contains(s)) {
      throw Error("missing image row for " + s.to_string());
    }
  }
  for (auto const& [s, w] : images) {
    for (auto l : w) {
      if (!tgt.has_generator(l.id())) {
        throw Error("image of " + s.to_string() + " uses foreign symbol " +
                    l.symbol().to_string());
      }
    }
  }
  HomomorphismReport rep;
  rep.ok = true;
  for (auto const& rel : src.relators()) {
    RelatorStatus st{rel.id, false, "none", {}};
    auto image = apply_map(rel.word, images);
    if (auto it = certificates.find(rel.id); it != certificates.end()) {
      auto const& cert = it->second;
      st.method = "script";
      if (free_reduce(cert.start) != free_reduce(image)) {
        st.reason = "certificate starts from " + print_word(cert.start) +
                    ", not the image " + print_word(image);
      } else if (!free_reduce(cert.end).empty()) {
        st.reason = "certificate does not end at the empty word";
      } else if (auto c = check_script(tgt, cert); !c.ok) {
        st.reason = c.reason;
      } else {
        st.ok = true;
      }
    } else if (search_equal(tgt, image, Word{}, fallback)) {
      st.ok = true;
      st.method = "search";
    } else {
      st.reason = "no certificate and bounded search found none";
    }
    rep.ok = rep.ok && st.ok;
    rep.relators.push_back(std::move(st));
  }
  return rep;
}

namespace {

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string t;
  while (in >> t) {
    out.push_back(t);
  }
  return out;
}

std::size_t to_index(std::string const& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
    throw Error("expected a non-negative integer, got '" + s + "'");
  }
  return std::stoul(s);
}

std::string join(std::vector<std::string> const& v, std::size_t from,
                 std::size_t to) {
  std::string out;
  for (auto i = from; i < to; ++i) {
    if (!out.empty()) {
      out += ' ';
    }
    out += v[i];
  }
  return out;
}

}  // namespace

std::vector<ProofScript> parse_scripts(std::string_view text,
                                       SurfaceLookup const& surface) {
  std::vector<ProofScript> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<SurfaceParams> ctx;
  bool have_start = false;
  bool have_end = true;
  auto fail = [&](std::string const& msg) {
    return ParseError("line " + std::to_string(lineno) + ": " + msg, 0);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    auto tok = tokens(line);
    try {
      if (tok[0] == "script") {
        if (!have_end) {
          throw fail("script " + out.back().name + " has no end line");
        }
        if (tok.size() != 4 || tok[2] != "over") {
          throw fail("expected 'script <name> over <presentation>'");
        }
        out.push_back({tok[1], tok[3], {}, {}, {}});
        ctx = surface ? surface(tok[3]) : std::nullopt;
        have_start = false;
        have_end = false;
        continue;
      }
      if (out.empty() || have_end) {
        throw fail("step outside of a script block");
      }
      auto& s = out.back();
      auto rest = std::string_view(line).substr(first);
      if (tok[0] == "start:") {
        if (have_start) {
          throw fail("duplicate start line");
        }
        s.start = parse_word(rest.substr(6), ctx);
        have_start = true;
      } else if (tok[0] == "end:") {
        if (!have_start) {
          throw fail("end before start");
        }
        s.end = parse_word(rest.substr(4), ctx);
        have_end = true;
      } else if (!have_start) {
        throw fail("step before start line");
      } else if (tok[0] == "sub") {
        if (tok.size() < 6 || tok[3] != "->") {
          throw fail("expected 'sub <pos> <len> -> <word> by <id>'");
        }
        auto by = std::find(tok.begin() + 4, tok.end(), "by");
        if (by == tok.end() || by + 1 == tok.end()) {
          throw fail("missing justification");
        }
        auto bi = static_cast<std::size_t>(by - tok.begin());
        Justification j{tok[bi + 1], false, 0};
        std::size_t k = bi + 2;
        if (k < tok.size() && tok[k] == "inv") {
          j.inv = true;
          ++k;
        }
        if (k < tok.size() && tok[k] == "rot") {
          if (k + 1 >= tok.size()) {
            throw fail("missing rotation");
          }
          j.rot = to_index(tok[k + 1]);
          k += 2;
        }
        if (k != tok.size()) {
          throw fail("trailing tokens after justification");
        }
        s.steps.push_back(ProofStep::sub(to_index(tok[1]), to_index(tok[2]),
                                         parse_word(join(tok, 4, bi), ctx),
                                         std::move(j)));
      } else if (tok[0] == "ins") {
        if (tok.size() != 3) {
          throw fail("expected 'ins <pos> <gen>'");
        }
        auto w = parse_word(tok[2], ctx);
        if (w.size() != 1) {
          throw fail("ins takes a single letter");
        }
        s.steps.push_back(ProofStep::ins(to_index(tok[1]), w[0]));
      } else if (tok[0] == "del") {
        if (tok.size() != 2) {
          throw fail("expected 'del <pos>'");
        }
        s.steps.push_back(ProofStep::del(to_index(tok[1])));
      } else {
        throw fail("unrecognized line '" + tok[0] + "'");
      }
    } catch (ParseError const&) {
      throw;
    } catch (Error const& e) {
      throw fail(e.what());
    } catch (std::exception const& e) {
      throw fail(e.what());
    }
  }
  if (!have_end) {
    throw ParseError("script " + out.back().name + " has no end line", 0);
  }
  return out;
}

std::string emit_step(ProofStep const& s) {
  switch (s.kind) {
    case StepKind::relator_sub: {
      std::string out = "sub " + std::to_string(s.pos) + " " +
                        std::to_string(s.len) + " ->";
      if (!s.replacement.empty()) {
        out += " " + print_word(s.replacement);
      }
      out += " by " + s.just.id;
      if (s.just.inv) {
        out += " inv";
      }
      if (s.just.rot != 0) {
        out += " rot " + std::to_string(s.just.rot);
      }
      return out;
    }
    case StepKind::free_insert:
      return "ins " + std::to_string(s.pos) + " " +
             s.replacement[0].to_string();
    case StepKind::free_cancel:
      return "del " + std::to_string(s.pos);
  }
  return {};
}

std::string emit_script(ProofScript const& s) {
  auto line = [](std::string const& head, Word const& w) {
    return w.empty() ? head + "\n" : head + " " + print_word(w) + "\n";
  };
  std::string out = "script " + s.name + " over " + s.presentation + "\n";
  out += line("start:", s.start);
  for (auto const& st : s.steps) {
    out += emit_step(st) + "\n";
  }
  out += line("end:", s.end);
  return out;
}

void PresentationLibrary::add(Presentation p) {
  auto name = p.name();
  loaded_.insert_or_assign(name, std::move(p));
}

Presentation const* PresentationLibrary::find(std::string const& name) const {
  if (auto it = loaded_.find(name); it != loaded_.end()) {
    return &it->second;
  }
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  if (auto it = builtin_.find(name); it != builtin_.end()) {
    return &it->second;
  }
  static std::regex const gervais_re(R"(gervais\((\d+),(\d+),(full|conservative)(,lanterns)?\))");
  std::smatch m;
  if (std::regex_match(name, m, gervais_re)) {
    SurfaceParams p(std::stoi(m[1]), std::stoi(m[2]));
    auto pres = gervais(p, {.mode = parse_table_mode(m[3].str()),
                            .lanterns = m[4].matched});
    return &builtin_.emplace(name, std::move(pres)).first->second;
  }
  static std::regex const braid_re(R"(braid\((\d+)\))");
  if (std::regex_match(name, m, braid_re)) {
    return &builtin_.emplace(name, braid_presentation(std::stoi(m[1])))
                .first->second;
  }
  if (name == "birman-hilden(2,0)") {
    return &builtin_.emplace(name, birman_hilden_2_0()).first->second;
  }
  return nullptr;
}

std::optional<SurfaceParams> PresentationLibrary::surface_of(
    std::string const& name) const {
  auto p = find(name);
  return p == nullptr ? std::nullopt : p->surface();
}

Presentation with_lemmas(Presentation const& base,
                         std::vector<ProofScript> const& scripts) {
  Presentation out = base;
  for (auto const& s : scripts) {
    if (s.presentation != base.name()) {
      continue;
    }
    auto w = free_reduce(s.start * invert(s.end));
    if (!w.empty()) {
      out.add_relator(s.name, w, RelatorKind::lemma);
    }
  }
  return out;
}

std::vector<ScriptResult> check_corpus(PresentationLibrary const& lib,
                                       std::vector<ProofScript> const& scripts,
                                       unsigned threads) {
  std::vector<ScriptResult> results(scripts.size());
  std::map<std::string, std::size_t> count;
  for (auto const& s : scripts) {
    ++count[s.name];
  }
  // Augmented presentation per presentation name.
  std::map<std::string, std::optional<Presentation>> augmented;
  std::map<std::string, std::string> aug_error;
  for (auto const& s : scripts) {
    if (augmented.contains(s.presentation)) {
      continue;
    }
    auto base = lib.find(s.presentation);
    if (base == nullptr) {
      augmented[s.presentation] = std::nullopt;
      aug_error[s.presentation] = "unknown presentation " + s.presentation;
      continue;
    }
    std::vector<ProofScript> unique;
    for (auto const& t : scripts) {
      if (t.presentation == s.presentation && count[t.name] == 1) {
        unique.push_back(t);
      }
    }
    try {
      augmented[s.presentation] = with_lemmas(*base, unique);
    } catch (Error const& e) {
      augmented[s.presentation] = std::nullopt;
      aug_error[s.presentation] = e.what();
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (auto i = next++; i < scripts.size(); i = next++) {
      auto const& s = scripts[i];
      auto& r = results[i];
      r.name = s.name;
      auto t0 = std::chrono::steady_clock::now();
      if (count.at(s.name) > 1) {
        r.reason = "duplicate script name";
      } else if (auto const& P = augmented.at(s.presentation); !P) {
        r.reason = aug_error.at(s.presentation);
      } else {
        auto c = check_script(*P, s);
        r.ok = c.ok;
        r.failing_step = c.failing_step;
        r.reason = c.reason;
        std::set<std::string> cited;
        for (auto const& st : s.steps) {
          if (st.kind != StepKind::relator_sub) {
            continue;
          }
          if (auto rel = P->find(st.just.id);
              rel != nullptr && rel->kind == RelatorKind::lemma) {
            cited.insert(rel->id);
          }
        }
        r.cited_lemmas.assign(cited.begin(), cited.end());
      }
      r.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, threads); ++t) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }

  // Lemma dependencies: a script fails if any cited lemma fails or if it
  // lies on a citation cycle.
  std::map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < results.size(); ++i) {
    by_name.emplace(results[i].name, i);
  }
  enum class Mark { none, active, done };
  std::vector<Mark> mark(results.size(), Mark::none);
  std::vector<bool> final_ok(results.size(), false);
  std::function<bool(std::size_t)> visit = [&](std::size_t i) -> bool {
    if (mark[i] == Mark::done) {
      return final_ok[i];
    }
    if (mark[i] == Mark::active) {
      return false;
    }
    mark[i] = Mark::active;
    bool ok = results[i].ok;
    for (auto const& dep : results[i].cited_lemmas) {
      auto it = by_name.find(dep);
      if (it == by_name.end()) {
        continue;
      }
      if (mark[it->second] == Mark::active) {
        if (results[i].ok) {
          results[i].reason = "cyclic lemma dependency through " + dep;
        }
        ok = false;
        continue;
      }
      if (!visit(it->second)) {
        if (ok) {
          results[i].reason = "depends on failing lemma " + dep;
        }
        ok = false;
      }
    }
    mark[i] = Mark::done;
    final_ok[i] = ok;
    return ok;
  };
  for (std::size_t i = 0; i < results.size(); ++i) {
    visit(i);
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    results[i].ok = final_ok[i];
  }
  std::sort(results.begin(), results.end(),
            [](auto const& x, auto const& y) { return x.name < y.name; });
  return results;
}

std::vector<Mutant> single_step_mutants(Presentation const& p,
                                        ProofScript const& s) {
  std::vector<Mutant> out;
  auto words = replay(p, s);
  auto consider = [&](std::size_t i, ProofStep step, std::string desc) {
    try {
      if (check_step(p, words[i], step) == words[i + 1]) {
        return;  // same rewrite, not a perturbation
      }
    } catch (Error const&) {
    }
    ProofScript m = s;
    m.steps[i] = std::move(step);
    out.push_back({"step " + std::to_string(i + 1) + " " + desc, i, std::move(m)});
  };
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    auto const& st = s.steps[i];
    auto moved = st;
    moved.pos = st.pos + 1;
    consider(i, moved, "pos+1");
    if (st.pos > 0) {
      moved.pos = st.pos - 1;
      consider(i, moved, "pos-1");
    }
    if (st.kind != StepKind::relator_sub) {
      continue;
    }
    auto flipped = st;
    flipped.just.inv = !st.just.inv;
    consider(i, flipped, "flip inversion");
    auto const* rel = p.find(st.just.id);
    if (rel != nullptr && p.relators().size() > 1) {
      auto idx = static_cast<std::size_t>(rel - p.relators().data());
      auto swapped = st;
      swapped.just.id = p.relators()[(idx + 1) % p.relators().size()].id;
      consider(i, swapped, "swap justification");
    }
  }
  return out;
}

}  // namespace mcg
