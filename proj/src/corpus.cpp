#include "mcg/corpus.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#ifndef MCG_DEFAULT_CORPUS
#define MCG_DEFAULT_CORPUS "corpus"
#endif

namespace mcg {

namespace fs = std::filesystem;

std::string corpus_dir() {
  if (auto const* env = std::getenv("MCG_CORPUS_DIR"); env && *env) {
    return env;
  }
  return MCG_DEFAULT_CORPUS;
}

std::string read_file(std::string const& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot open " + path);
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fnv1a_hex(std::string const& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static char const* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

namespace {

std::vector<std::string> files_with(fs::path const& dir,
                                    std::string const& ext) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) {
    return out;
  }
  for (auto const& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) {
      out.push_back(e.path().string());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A certificate for image = 1 citing the lemma start * end^-1 of s once:
// image = p C p^-1 with C a rotation of the lemma or its inverse.
std::optional<ProofScript> lemma_certificate(Presentation const& augmented,
                                             ProofScript const& s,
                                             Word const& image) {
  auto w = free_reduce(image);
  std::size_t k = 0;
  while (2 * k + 1 < w.size() && w[k] == w[w.size() - 1 - k].inverse()) {
    ++k;
  }
  auto core = w.slice(k, w.size() - 2 * k);
  RelatorIndex index(augmented,
                     [&](Relator const& r) { return r.id == s.name; });
  auto j = index.certify(core, Word{});
  if (!j) {
    return std::nullopt;
  }
  ProofScript out{s.name, augmented.name(), w, {}, Word{}};
  out.steps.push_back(ProofStep::sub(k, core.size(), Word{}, *j));
  for (std::size_t i = k; i > 0; --i) {
    out.steps.push_back(ProofStep::del(i - 1));
  }
  return out;
}

}  // namespace

std::vector<ProofScript> load_scripts(std::string const& path,
                                      PresentationLibrary const& lib) {
  try {
    return parse_scripts(read_file(path), [&](std::string const& name) {
      return lib.surface_of(name);
    });
  } catch (ParseError const& e) {
    throw ParseError(path + ": " + e.what(), e.position());
  }
}

MapSpec parse_map(std::string_view text, SurfaceLookup const& surface) {
  MapSpec m;
  std::optional<SurfaceParams> src_ctx;
  std::optional<SurfaceParams> tgt_ctx;
  std::size_t offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto pos = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) {
      continue;
    }
    auto rest = [&] {
      std::string r;
      std::getline(ls, r);
      auto a = r.find_first_not_of(" \t\r");
      return a == std::string::npos ? std::string() : r.substr(a);
    };
    if (kw == "map") {
      std::string from, to;
      if (!(ls >> m.name >> from >> m.source >> to >> m.target) ||
          from != "from" || to != "to") {
        throw ParseError("expected 'map NAME from SOURCE to TARGET'", pos);
      }
      if (surface) {
        src_ctx = surface(m.source);
        tgt_ctx = surface(m.target);
      }
    } else if (kw == "img") {
      std::string gen, arrow;
      if (!(ls >> gen >> arrow) || arrow != "->") {
        throw ParseError("expected 'img GEN -> WORD'", pos);
      }
      auto sym = parse_symbol(gen, src_ctx);
      if (m.images.contains(sym)) {
        throw ParseError("second image for " + gen, pos);
      }
      m.images.emplace(sym, parse_word(rest(), tgt_ctx));
    } else if (kw == "cert") {
      std::string rel, script;
      if (!(ls >> rel >> script)) {
        throw ParseError("expected 'cert RELATOR SCRIPT'", pos);
      }
      m.certificates[rel] = script;
    } else {
      throw ParseError("unknown directive " + kw, pos);
    }
  }
  if (m.name.empty()) {
    throw ParseError("missing 'map' line", 0);
  }
  return m;
}

MapSpec const& find_map(Corpus const& c, std::string const& name) {
  for (auto const& m : c.maps) {
    if (m.name == name) {
      return m;
    }
  }
  throw Error("unknown map " + name);
}

HomomorphismReport verify_map(Corpus const& c, MapSpec const& m,
                              SearchConfig const& fallback) {
  auto const* src = c.library.find(m.source);
  auto const* tgt = c.library.find(m.target);
  if (src == nullptr || tgt == nullptr) {
    throw Error("map " + m.name + " refers to an unknown presentation");
  }
  std::vector<ProofScript> over;
  for (auto const& s : c.scripts) {
    if (s.presentation == m.target) {
      over.push_back(s);
    }
  }
  auto results = check_corpus(c.library, over);
  std::map<std::string, ScriptResult const*> status;
  for (auto const& r : results) {
    status[r.name] = &r;
  }
  std::vector<ProofScript> good;
  for (auto const& s : over) {
    if (status.at(s.name)->ok) {
      good.push_back(s);
    }
  }
  auto augmented = with_lemmas(*tgt, good);

  std::map<std::string, ProofScript> certs;
  std::map<std::string, std::string> broken;
  for (auto const& [rel, name] : m.certificates) {
    if (src->find(rel) == nullptr) {
      throw Error("map " + m.name + " certifies unknown relator " + rel);
    }
    auto it = std::find_if(over.begin(), over.end(),
                           [&](auto const& s) { return s.name == name; });
    if (it == over.end()) {
      broken[rel] = "no script " + name + " over " + m.target;
    } else if (!status.at(name)->ok) {
      broken[rel] = "script " + name + " fails: " + status.at(name)->reason;
    } else if (auto c = lemma_certificate(augmented, *it,
                                          apply_map(src->at(rel).word,
                                                    m.images))) {
      certs.emplace(rel, std::move(*c));
    } else {
      broken[rel] = "image is not a cyclic conjugate of lemma " + name;
    }
  }
  auto rep = verify_homomorphism(*src, m.images, augmented, certs, fallback);
  for (auto& st : rep.relators) {
    if (auto b = broken.find(st.id); b != broken.end()) {
      st.ok = false;
      st.method = "script";
      st.reason = b->second;
      rep.ok = false;
    }
  }
  return rep;
}

Corpus load_corpus(std::string const& dir) {
  if (!fs::is_directory(dir)) {
    throw Error("corpus directory " + dir + " does not exist");
  }
  Corpus c;
  for (auto const& f : files_with(fs::path(dir) / "presentations", ".pres")) {
    try {
      c.library.add(parse_presentation(read_file(f)));
    } catch (ParseError const& e) {
      throw ParseError(f + ": " + e.what(), e.position());
    }
    c.files.push_back(f);
  }
  for (auto const& f : files_with(fs::path(dir) / "scripts", ".script")) {
    auto s = load_scripts(f, c.library);
    c.scripts.insert(c.scripts.end(), s.begin(), s.end());
    c.files.push_back(f);
  }
  auto lookup = [&](std::string const& name) {
    return c.library.surface_of(name);
  };
  for (auto const& f : files_with(fs::path(dir) / "maps", ".map")) {
    try {
      c.maps.push_back(parse_map(read_file(f), lookup));
    } catch (ParseError const& e) {
      throw ParseError(f + ": " + e.what(), e.position());
    }
    c.files.push_back(f);
  }
  std::sort(c.files.begin(), c.files.end());
  return c;
}

}  // namespace mcg
