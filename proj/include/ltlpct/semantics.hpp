#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ltlpct/formula.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

enum class Kernel {
  Auto,    ///< Packed when the word has at most 64 positions.
  Packed,  ///< One uint64 truth mask per subformula.
  Scalar,  ///< One byte per position and subformula.
};

/// A formula flattened into a post-order program over a fixed context.
/// Evaluation computes the truth value of every subformula at every
/// position bottom-up. MFL quantifies over the context's props.
class CompiledFormula {
 public:
  /// Throws Error if a prop of f is missing from ctx.
  CompiledFormula(const Formula& f, Alphabet ctx);

  const Alphabet& context() const { return ctx_; }
  const Formula& formula() const { return f_; }

  /// Truth value at every position. Props of w must be in the context.
  std::vector<bool> truth(const Word& w, Kernel k = Kernel::Auto) const;
  bool eval(const Word& w) const;
  bool eval_at(const Word& w, std::size_t i) const;

  /// Truth mask (bit i = position i) over letters encoded against the
  /// context. Requires n <= 64 and a context of at most 64 props.
  std::uint64_t truth_mask(const std::uint64_t* letters, std::size_t n) const;
  bool eval_letters(const std::uint64_t* letters, std::size_t n) const {
    return (truth_mask(letters, n) & 1U) != 0;
  }

 private:
  struct Instr {
    Op op;
    int a = -1;
    int b = -1;
    int atom = -1;
    Cmp cmp = Cmp::Ge;
    int k = 0;
  };

  std::uint64_t run_packed(const std::uint64_t* rows, std::size_t n) const;
  std::vector<std::uint8_t> run_scalar(const std::vector<std::vector<std::uint8_t>>& rows,
                                       std::size_t n) const;

  Formula f_;
  Alphabet ctx_;
  std::vector<Instr> prog_;
  bool uses_mfl_ = false;
};

/// |{j < p : w,j |= f}|. Requires p <= |w|.
std::size_t count_before(const Word& w, std::size_t p, const Formula& f, const Alphabet& ctx);

/// w,i |= f. Requires i < |w| and every prop of f and w in ctx.
bool eval_at(const Word& w, std::size_t i, const Formula& f, const Alphabet& ctx);

/// w,0 |= f.
bool eval(const Word& w, const Formula& f, const Alphabet& ctx);

/// First word (in WordEnumerator order) of length <= max_len satisfying f.
/// An empty result says nothing about longer words.
std::optional<Word> bounded_sat(const Formula& f, const Alphabet& ctx, std::size_t max_len);

/// Exact satisfiability for formulas without F, G and U: a model exists iff
/// one of length at most temporal_depth(f) + 2 exists. Returns a witness or
/// nullopt, which in this fragment certifies unsatisfiability. Throws Error
/// outside the fragment.
std::optional<Word> prefix_sat_x_fragment(const Formula& f, const Alphabet& ctx);

}  // namespace ltlpct
