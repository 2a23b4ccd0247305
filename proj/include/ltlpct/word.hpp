#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ltlpct/formula.hpp"

namespace ltlpct {

/// Ordered, duplicate-free set of props. The order fixes the bit layout of
/// encoded letters (bit j stands for props()[j]) and the enumeration order.
class Alphabet {
 public:
  Alphabet() = default;
  /// Throws Error on duplicates or invalid names.
  explicit Alphabet(std::vector<Prop> props);
  /// Sorted by name.
  static Alphabet of(const std::set<Prop>& props);

  const std::vector<Prop>& props() const { return props_; }
  std::size_t size() const { return props_.size(); }
  bool empty() const { return props_.empty(); }
  const Prop& operator[](std::size_t i) const { return props_[i]; }
  bool contains(const Prop& p) const { return index_.count(p) != 0; }
  std::optional<std::size_t> index(const Prop& p) const;
  /// This alphabet followed by the props of `extra` it does not yet contain.
  Alphabet extended(const std::vector<Prop>& extra) const;
  Alphabet extended(const std::set<Prop>& extra) const;
  std::set<Prop> as_set() const { return {props_.begin(), props_.end()}; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.props_ == b.props_; }

 private:
  std::vector<Prop> props_;
  std::unordered_map<Prop, std::size_t> index_;
};

using Letter = std::set<Prop>;

/// Non-empty finite sequence of letters.
class Word {
 public:
  /// Throws Error if `positions` is empty.
  explicit Word(std::vector<Letter> positions);
  Word(std::initializer_list<Letter> positions);

  std::size_t size() const { return pos_.size(); }
  const Letter& operator[](std::size_t i) const { return pos_[i]; }
  const std::vector<Letter>& positions() const { return pos_; }
  auto begin() const { return pos_.begin(); }
  auto end() const { return pos_.end(); }

  bool holds(std::size_t i, const Prop& p) const { return pos_[i].count(p) != 0; }
  /// Props occurring anywhere in the word.
  std::set<Prop> props() const;
  /// First `len` positions; 1 <= len <= size().
  Word prefix(std::size_t len) const;
  /// Copy keeping only props in `keep`.
  Word restricted(const std::set<Prop>& keep) const;
  /// Copy without the props in `drop`.
  Word without(const std::set<Prop>& drop) const;

  friend bool operator==(const Word& a, const Word& b) { return a.pos_ == b.pos_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b);

 private:
  std::vector<Letter> pos_;
};

/// Compact human form, e.g. `[{a}, {}, {a, b}]`.
std::string format_word(const Word& w);

/// Throws Error naming the first prop of `w` outside `ctx`.
void check_word_in(const Word& w, const Alphabet& ctx);

/// Encodes each letter as a bitmask over `ctx` (at most 64 props).
std::vector<std::uint64_t> encode_letters(const Alphabet& ctx, const Word& w);
Word decode_letters(const Alphabet& ctx, const std::uint64_t* letters, std::size_t n);
Word decode_letters(const Alphabet& ctx, const std::vector<std::uint64_t>& letters);

/// Streams every word of length 1..max_len over 2^ctx exactly once:
/// shorter words first, then lexicographically with position 0 most
/// significant and letters ordered by their encoding.
class WordEnumerator {
 public:
  /// ctx may hold at most 62 props.
  WordEnumerator(const Alphabet& ctx, std::size_t max_len);
  /// Moves to the next word; false once every word has been produced.
  bool next();
  const std::vector<std::uint64_t>& letters() const { return cur_; }
  std::size_t length() const { return cur_.size(); }
  Word word() const { return decode_letters(ctx_, cur_); }

 private:
  Alphabet ctx_;
  std::size_t max_len_;
  std::uint64_t limit_;
  std::vector<std::uint64_t> cur_;
  bool started_ = false;
};

/// Materialised enumeration; prefer WordEnumerator for large spaces.
std::vector<Word> enumerate_words(const Alphabet& ctx, std::size_t max_len);

/// Number of words of length 1..max_len over 2^|ctx| (saturates at UINT64_MAX).
std::uint64_t count_words(std::size_t ctx_size, std::size_t max_len);

}  // namespace ltlpct
