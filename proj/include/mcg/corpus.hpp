#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mcg/prover.hpp"

namespace mcg {

// MCG_CORPUS_DIR if set, else the corpus shipped with the sources.
std::string corpus_dir();

std::string read_file(std::string const& path);

// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string fnv1a_hex(std::string const& bytes);

// A homomorphism between named presentations, with certificate scripts for
// some source relators. File format, one directive per line, '#' comments:
//   map NAME from SOURCE to TARGET
//   img GEN -> WORD
//   cert RELATOR-ID SCRIPT-NAME
struct MapSpec {
  std::string name;
  std::string source;
  std::string target;
  std::map<GeneratorSymbol, Word> images;
  std::map<std::string, std::string> certificates;
};

MapSpec parse_map(std::string_view text, SurfaceLookup const& surface);

struct Corpus {
  PresentationLibrary library;
  std::vector<ProofScript> scripts;
  std::vector<MapSpec> maps;
  std::vector<std::string> files;  // every file read, sorted
};

// dir/presentations/*.pres, dir/scripts/*.script and dir/maps/*.map
Corpus load_corpus(std::string const& dir);

MapSpec const& find_map(Corpus const& c, std::string const& name);

// verify_homomorphism with the named certificate scripts. Certificates and
// the fallback search may use lemmas of corpus scripts over the target that
// pass check_corpus; a certificate whose script fails is reported as such.
HomomorphismReport verify_map(Corpus const& c, MapSpec const& m,
                              SearchConfig const& fallback = {});

std::vector<ProofScript> load_scripts(std::string const& path,
                                      PresentationLibrary const& lib);

}  // namespace mcg
