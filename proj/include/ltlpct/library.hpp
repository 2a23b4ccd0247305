#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ltlpct/formula.hpp"
#include "ltlpct/word.hpp"

namespace ltlpct {

inline const Prop kWht = "wht";
inline const Prop kShdw = "shdw";

/// Injective map sigma -> tilde(sigma). No tilde is itself a key, and wht,
/// shdw appear on neither side.
class TildeMap {
 public:
  TildeMap() = default;
  /// Throws Error when the map is not injective or mixes keys and values.
  explicit TildeMap(std::map<Prop, Prop> pairs);
  /// sigma -> sigma + "~" for every sigma in `keys`.
  static TildeMap suffixed(const std::set<Prop>& keys);

  bool contains(const Prop& sigma) const { return pairs_.count(sigma) != 0; }
  /// Throws Error if sigma is not a key.
  const Prop& tilde(const Prop& sigma) const;
  std::set<Prop> keys() const;
  std::set<Prop> values() const;
  const std::map<Prop, Prop>& pairs() const { return pairs_; }

 private:
  std::map<Prop, Prop> pairs_;
};

/// Hands out props `<prefix><n>` that avoid a given set. Names containing
/// '$' are reserved for generated props.
class FreshProps {
 public:
  explicit FreshProps(std::set<Prop> avoid = {}, std::string prefix = "p$");
  Prop next();
  /// Marks props as taken.
  void avoid(const std::set<Prop>& props);

 private:
  std::set<Prop> avoid_;
  std::string prefix_;
  std::size_t counter_ = 0;
};

bool is_reserved_prop(const Prop& p);

// ---- formula schemata ------------------------------------------------------

/// wht & G(wht <-> !shdw) & G(wht -> F shdw)
Formula phi_init();
/// G(Half wht <-> wht)
Formula phi_odd();
/// phi_init & phi_odd: defines shadowy words.
Formula psi_shadowy();

/// G shdw
Formula phi_last();
/// wht & G(wht | G shdw)
Formula phi_stl();
/// Half([wht & sigma] | [shdw & !tilde(sigma)])
Formula heart_body(const Prop& sigma, const TildeMap& tm);
/// G(wht -> heart_body)
Formula phi_heart(const Prop& sigma, const TildeMap& tm);
/// F(phi_stl & sigma) <-> F(phi_last & tilde(sigma))
Formula phi_diamond(const Prop& sigma, const TildeMap& tm);
/// Everything but psi_shadowy: G(sigma -> wht), G(tilde -> shdw), heart, diamond.
Formula transfer_conjuncts(const Prop& sigma, const TildeMap& tm);
/// psi_shadowy & transfer_conjuncts(sigma).
Formula phi_transfer(const Prop& sigma, const TildeMap& tm);
/// psi_shadowy & transfer conjuncts for every sigma (psi_shadowy once).
Formula psi_truly_shadowy(const std::set<Prop>& sigma, const TildeMap& tm);
/// Half([wht & alpha] | [shdw & !tilde(beta)])
Formula phi_isequal(const Prop& alpha, const Prop& beta, const TildeMap& tm);

/// G(MFL wht & (wht <-> MFL shdw))
Formula phi_odd_mfl();
/// phi_init & phi_odd_mfl: defines strongly shadowy words.
Formula psi_shadowy_mfl();

// ---- dehalfication ---------------------------------------------------------

struct Dehalfed {
  Formula formula;
  /// (p, lambda): p must agree with lambda everywhere.
  std::vector<std::pair<Prop, Formula>> definitions;

  /// Conjunction of G(p <-> lambda) over the definitions.
  Formula definitions_formula() const;
};

/// Replaces each Half(lambda) by MFL(p_lambda) with a fresh p_lambda;
/// occurrences of the same lambda share one prop. Throws Error on nested
/// Half. The equivalence of f and the result only holds under the side
/// conditions (strongly shadowy models, no F above the replaced operators)
/// that the caller has to guarantee.
Dehalfed dehalf(const Formula& f, FreshProps& fresh);

/// Extends w by labelling every position where lambda holds with p, for
/// each definition. Evaluation context: the props of w plus those of lambda.
Word label_definitions(const Word& w, const std::vector<std::pair<Prop, Formula>>& definitions);

// ---- structural word classes -----------------------------------------------

/// Even length, wht exactly on even positions, shdw exactly on odd ones.
bool is_shadowy(const Word& w);

/// Shadowy; sigma only on whites, tilde(sigma) only on shadows; each white
/// carries sigma iff its shadow carries tilde(sigma).
bool is_truly_shadowy(const Word& w, const std::set<Prop>& sigma, const TildeMap& tm);

/// The three conditions characterising models of phi_transfer: shadowy,
/// placement of sigma and its tilde, and the per-pair transfer.
bool transfer_conditions(const Word& w, const Prop& sigma, const TildeMap& tm);

/// Shadowy, and at every position wht is a most frequent letter of the past
/// and at even positions so is shdw. Letters range over ctx and the props
/// of w.
bool is_strongly_shadowy(const Word& w, const Alphabet& ctx);

/// Props labelling more than i of the positions before some even position
/// 2i of w.
std::set<Prop> importunate_props(const Word& w);

// ---- constructive generators -----------------------------------------------

using Rng = std::mt19937_64;

/// Shadowy word of 2*pairs positions; whites draw random subsets of
/// `white_extra`, shadows of `shadow_extra`.
Word random_shadowy(Rng& rng, std::size_t pairs, const std::vector<Prop>& white_extra = {},
                    const std::vector<Prop>& shadow_extra = {});

/// Truly sigma-shadowy word: whites pick subsets of sigma, shadows copy
/// them as tildes.
Word random_truly_shadowy(Rng& rng, std::size_t pairs, const std::set<Prop>& sigma,
                          const TildeMap& tm);

/// Strongly shadowy word; each prop of `extra` is added at random wherever
/// it keeps every past count within the bound.
Word random_strongly_shadowy(Rng& rng, std::size_t pairs, const std::vector<Prop>& extra);

}  // namespace ltlpct
