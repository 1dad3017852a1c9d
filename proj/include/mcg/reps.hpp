#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcg/presentations.hpp"
#include "mcg/words.hpp"

namespace mcg {

using BigInt = boost::multiprecision::cpp_int;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  BigInt& operator()(std::size_t i, std::size_t j) {
    return a_[i * cols_ + j];
  }
  BigInt const& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }
  bool is_identity() const;

  friend IntMatrix operator*(IntMatrix const& x, IntMatrix const& y);
  friend IntMatrix operator-(IntMatrix const& x, IntMatrix const& y);
  friend bool operator==(IntMatrix const&, IntMatrix const&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<BigInt> a_;
};

using IntVector = std::vector<long>;

// Homology classes of the Gervais curves together with the skew pairing.
class CurveClassTable {
 public:
  explicit CurveClassTable(SurfaceParams p);

  SurfaceParams params() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return dim_; }
  IntVector const& class_of(GeneratorSymbol const& s) const;
  bool contains(GeneratorSymbol const& s) const;
  long pairing(IntVector const& x, IntVector const& y) const;
  std::vector<std::vector<long>> const& form() const noexcept { return J_; }

 private:
  SurfaceParams p_;
  std::size_t dim_;
  std::vector<std::vector<long>> J_;
  std::map<SymbolId, IntVector> classes_;
};

class TransvectionRep {
 public:
  explicit TransvectionRep(SurfaceParams p) : table_(p) {}
  explicit TransvectionRep(CurveClassTable table) : table_(std::move(table)) {}

  CurveClassTable const& table() const noexcept { return table_; }
  std::size_t dimension() const noexcept { return table_.dimension(); }

 private:
  CurveClassTable table_;
};

// x -> x + sign <x,[g]> [g]
IntMatrix twist_matrix(GeneratorSymbol const& g, TransvectionRep const& rep,
                       int sign = 1);
IntMatrix word_matrix(Word const& w, TransvectionRep const& rep);

enum class Refutation { refuted, inconclusive };
Refutation refute_equal(Word const& w1, Word const& w2,
                        TransvectionRep const& rep);

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Order of the group generated by gens reduced mod p.
std::uint64_t mod_p_closure(std::vector<IntMatrix> const& gens, unsigned p,
                            std::uint64_t cap = 10'000'000);

// Invariant factors of an integer matrix, each dividing the next, with
// units dropped and a zero for each free rank.
std::vector<BigInt> smith_invariants(std::vector<std::vector<BigInt>> m,
                                     std::size_t cols);
std::vector<BigInt> abelianization(Presentation const& p);
std::string format_factors(std::vector<BigInt> const& f);

}  // namespace mcg
