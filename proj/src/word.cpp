#include "ltlpct/word.hpp"

#include <algorithm>
#include <limits>

namespace ltlpct {

Alphabet::Alphabet(std::vector<Prop> props) : props_(std::move(props)) {
  for (std::size_t i = 0; i < props_.size(); ++i) {
    if (!is_valid_prop_name(props_[i])) throw Error("invalid proposition name '" + props_[i] + "'");
    if (!index_.emplace(props_[i], i).second)
      throw Error("duplicate proposition '" + props_[i] + "' in alphabet");
  }
}

Alphabet Alphabet::of(const std::set<Prop>& props) {
  return Alphabet(std::vector<Prop>(props.begin(), props.end()));
}

std::optional<std::size_t> Alphabet::index(const Prop& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Alphabet Alphabet::extended(const std::vector<Prop>& extra) const {
  std::vector<Prop> all = props_;
  std::set<Prop> seen(props_.begin(), props_.end());
  for (const auto& p : extra)
    if (seen.insert(p).second) all.push_back(p);
  return Alphabet(std::move(all));
}

Alphabet Alphabet::extended(const std::set<Prop>& extra) const {
  return extended(std::vector<Prop>(extra.begin(), extra.end()));
}

Word::Word(std::vector<Letter> positions) : pos_(std::move(positions)) {
  if (pos_.empty()) throw Error("words must be non-empty");
}

Word::Word(std::initializer_list<Letter> positions) : Word(std::vector<Letter>(positions)) {}

std::set<Prop> Word::props() const {
  std::set<Prop> out;
  for (const auto& l : pos_) out.insert(l.begin(), l.end());
  return out;
}

Word Word::prefix(std::size_t len) const {
  if (len == 0 || len > pos_.size()) throw Error("prefix length out of range");
  return Word(std::vector<Letter>(pos_.begin(), pos_.begin() + static_cast<std::ptrdiff_t>(len)));
}

Word Word::restricted(const std::set<Prop>& keep) const {
  std::vector<Letter> out;
  out.reserve(pos_.size());
  for (const auto& l : pos_) {
    Letter r;
    for (const auto& p : l)
      if (keep.count(p)) r.insert(p);
    out.push_back(std::move(r));
  }
  return Word(std::move(out));
}

Word Word::without(const std::set<Prop>& drop) const {
  std::vector<Letter> out;
  out.reserve(pos_.size());
  for (const auto& l : pos_) {
    Letter r;
    for (const auto& p : l)
      if (!drop.count(p)) r.insert(p);
    out.push_back(std::move(r));
  }
  return Word(std::move(out));
}

bool operator<(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.pos_ < b.pos_;
}

std::string format_word(const Word& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ", ";
    out += '{';
    bool first = true;
    for (const auto& p : w[i]) {
      if (!first) out += ", ";
      out += p;
      first = false;
    }
    out += '}';
  }
  return out + "]";
}

void check_word_in(const Word& w, const Alphabet& ctx) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (const auto& p : w[i])
      if (!ctx.contains(p))
        throw Error("proposition '" + p + "' at position " + std::to_string(i) +
                    " is not in the alphabet context");
}

std::vector<std::uint64_t> encode_letters(const Alphabet& ctx, const Word& w) {
  if (ctx.size() > 64) throw Error("letter encoding supports at most 64 propositions");
  std::vector<std::uint64_t> out(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const auto& p : w[i]) {
      auto j = ctx.index(p);
      if (!j) throw Error("proposition '" + p + "' is not in the alphabet context");
      out[i] |= std::uint64_t{1} << *j;
    }
  }
  return out;
}

Word decode_letters(const Alphabet& ctx, const std::uint64_t* letters, std::size_t n) {
  std::vector<Letter> out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < ctx.size(); ++j)
      if ((letters[i] >> j) & 1U) out[i].insert(ctx[j]);
  return Word(std::move(out));
}

Word decode_letters(const Alphabet& ctx, const std::vector<std::uint64_t>& letters) {
  return decode_letters(ctx, letters.data(), letters.size());
}

WordEnumerator::WordEnumerator(const Alphabet& ctx, std::size_t max_len)
    : ctx_(ctx), max_len_(max_len), limit_(0) {
  if (ctx.size() > 62) throw Error("cannot enumerate words over more than 62 propositions");
  limit_ = std::uint64_t{1} << ctx.size();
}

bool WordEnumerator::next() {
  if (!started_) {
    started_ = true;
    if (max_len_ == 0) return false;
    cur_.assign(1, 0);
    return true;
  }
  for (std::size_t i = cur_.size(); i-- > 0;) {
    if (++cur_[i] < limit_) return true;
    cur_[i] = 0;
  }
  if (cur_.size() >= max_len_) return false;
  cur_.assign(cur_.size() + 1, 0);
  return true;
}

std::vector<Word> enumerate_words(const Alphabet& ctx, std::size_t max_len) {
  std::vector<Word> out;
  WordEnumerator en(ctx, max_len);
  while (en.next()) out.push_back(en.word());
  return out;
}

std::uint64_t count_words(std::size_t ctx_size, std::size_t max_len) {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  if (ctx_size >= 64) return max_len == 0 ? 0 : cap;
  std::uint64_t base = std::uint64_t{1} << ctx_size, total = 0, pw = 1;
  for (std::size_t l = 1; l <= max_len; ++l) {
    if (pw > cap / base) return cap;
    pw *= base;
    if (total > cap - pw) return cap;
    total += pw;
  }
  return total;
}

}  // namespace ltlpct
