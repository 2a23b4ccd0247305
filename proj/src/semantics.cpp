#include "ltlpct/semantics.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

namespace ltlpct {

namespace {

constexpr std::uint64_t full_mask(std::size_t n) {
  return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

constexpr std::uint64_t below(std::size_t i) { return full_mask(i); }

int highest_bit(std::uint64_t m) { return 63 - std::countl_zero(m); }

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, Alphabet ctx) : f_(f), ctx_(std::move(ctx)) {
  std::unordered_map<Formula, int, FormulaHash> slot;
  for (const auto& g : subformulas(f)) {
    Instr in{g.op()};
    if (g.op() == Op::Atom || g.op() == Op::MostFrequent) {
      auto j = ctx_.index(g.prop());
      if (!j) throw Error("proposition '" + g.prop() + "' is not in the alphabet context");
      in.atom = static_cast<int>(*j);
      if (g.op() == Op::MostFrequent) uses_mfl_ = true;
    }
    if (g.arity() >= 1) in.a = slot.at(g.lhs());
    if (g.arity() == 2) in.b = slot.at(g.rhs());
    if (g.op() == Op::Percent) {
      in.cmp = g.cmp();
      in.k = g.k();
    }
    slot.emplace(g, static_cast<int>(prog_.size()));
    prog_.push_back(in);
  }
}

std::uint64_t CompiledFormula::run_packed(const std::uint64_t* rows, std::size_t n) const {
  thread_local std::vector<std::uint64_t> v;
  thread_local std::vector<std::uint32_t> maxc;
  v.resize(prog_.size());
  const std::uint64_t full = full_mask(n);
  if (uses_mfl_) {
    maxc.assign(n, 0);
    for (std::size_t j = 0; j < ctx_.size(); ++j) {
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        maxc[i] = std::max(maxc[i], c);
        c += static_cast<std::uint32_t>((rows[j] >> i) & 1U);
      }
    }
  }
  for (std::size_t s = 0; s < prog_.size(); ++s) {
    const Instr& in = prog_[s];
    const std::uint64_t a = in.a >= 0 ? v[in.a] : 0;
    const std::uint64_t b = in.b >= 0 ? v[in.b] : 0;
    std::uint64_t r = 0;
    switch (in.op) {
      case Op::True: r = full; break;
      case Op::False: r = 0; break;
      case Op::Atom: r = rows[in.atom] & full; break;
      case Op::Not: r = ~a & full; break;
      case Op::And: r = a & b; break;
      case Op::Or: r = a | b; break;
      case Op::Implies: r = (~a | b) & full; break;
      case Op::Iff: r = ~(a ^ b) & full; break;
      case Op::Next: r = a >> 1; break;
      case Op::Finally:
        r = a == 0 ? 0 : full_mask(static_cast<std::size_t>(highest_bit(a)) + 1);
        break;
      case Op::Globally: {
        const std::uint64_t z = ~a & full;
        r = z == 0 ? full : full & ~full_mask(static_cast<std::size_t>(highest_bit(z)) + 1);
        break;
      }
      case Op::Until: {
        bool next = false;
        for (std::size_t i = n; i-- > 0;) {
          next = ((b >> i) & 1U) || (((a >> i) & 1U) && next);
          if (next) r |= std::uint64_t{1} << i;
        }
        break;
      }
      case Op::Half:
      case Op::PastMajority:
      case Op::Percent: {
        std::uint64_t c = 0;
        for (std::size_t i = 0; i < n; ++i) {
          bool t = false;
          if (in.op == Op::Half) t = 2 * c == i;
          else if (in.op == Op::PastMajority) t = 2 * c >= i;
          else t = compare<std::uint64_t>(100 * c, in.cmp, static_cast<std::uint64_t>(in.k) * i);
          if (t) r |= std::uint64_t{1} << i;
          c += (a >> i) & 1U;
        }
        break;
      }
      case Op::MostFrequent: {
        const std::uint64_t row = rows[in.atom];
        for (std::size_t i = 0; i < n; ++i)
          if (static_cast<std::uint32_t>(std::popcount(row & below(i))) >= maxc[i])
            r |= std::uint64_t{1} << i;
        break;
      }
    }
    v[s] = r;
  }
  return v.back();
}

std::vector<std::uint8_t> CompiledFormula::run_scalar(
    const std::vector<std::vector<std::uint8_t>>& rows, std::size_t n) const {
  std::vector<std::vector<std::uint8_t>> v(prog_.size());
  std::vector<std::size_t> maxc;
  if (uses_mfl_) {
    maxc.assign(n, 0);
    for (const auto& row : rows) {
      std::size_t c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        maxc[i] = std::max(maxc[i], c);
        c += row[i];
      }
    }
  }
  for (std::size_t s = 0; s < prog_.size(); ++s) {
    const Instr& in = prog_[s];
    std::vector<std::uint8_t> r(n, 0);
    const auto* a = in.a >= 0 ? &v[in.a] : nullptr;
    const auto* b = in.b >= 0 ? &v[in.b] : nullptr;
    switch (in.op) {
      case Op::True: std::fill(r.begin(), r.end(), 1); break;
      case Op::False: break;
      case Op::Atom: r = rows[in.atom]; break;
      case Op::Not: for (std::size_t i = 0; i < n; ++i) r[i] = !(*a)[i]; break;
      case Op::And: for (std::size_t i = 0; i < n; ++i) r[i] = (*a)[i] && (*b)[i]; break;
      case Op::Or: for (std::size_t i = 0; i < n; ++i) r[i] = (*a)[i] || (*b)[i]; break;
      case Op::Implies: for (std::size_t i = 0; i < n; ++i) r[i] = !(*a)[i] || (*b)[i]; break;
      case Op::Iff: for (std::size_t i = 0; i < n; ++i) r[i] = (*a)[i] == (*b)[i]; break;
      case Op::Next: for (std::size_t i = 0; i + 1 < n; ++i) r[i] = (*a)[i + 1]; break;
      case Op::Finally: {
        bool any = false;
        for (std::size_t i = n; i-- > 0;) r[i] = any = any || (*a)[i];
        break;
      }
      case Op::Globally: {
        bool all = true;
        for (std::size_t i = n; i-- > 0;) r[i] = all = all && (*a)[i];
        break;
      }
      case Op::Until: {
        bool next = false;
        for (std::size_t i = n; i-- > 0;) r[i] = next = (*b)[i] || ((*a)[i] && next);
        break;
      }
      case Op::Half:
      case Op::PastMajority:
      case Op::Percent: {
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (in.op == Op::Half) r[i] = 2 * c == i;
          else if (in.op == Op::PastMajority) r[i] = 2 * c >= i;
          else r[i] = compare<std::size_t>(100 * c, in.cmp, static_cast<std::size_t>(in.k) * i);
          c += (*a)[i];
        }
        break;
      }
      case Op::MostFrequent: {
        std::size_t c = 0;
        for (std::size_t i = 0; i < n; ++i) {
          r[i] = c >= maxc[i];
          c += rows[in.atom][i];
        }
        break;
      }
    }
    v[s] = std::move(r);
  }
  return v.back();
}

std::vector<bool> CompiledFormula::truth(const Word& w, Kernel k) const {
  const std::size_t n = w.size();
  if (k == Kernel::Auto) k = n <= 64 ? Kernel::Packed : Kernel::Scalar;
  if (k == Kernel::Packed && n > 64) throw Error("packed kernel handles at most 64 positions");
  std::vector<bool> out(n);
  if (k == Kernel::Packed) {
    std::vector<std::uint64_t> rows(ctx_.size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& p : w[i]) {
        auto j = ctx_.index(p);
        if (!j) throw Error("proposition '" + p + "' is not in the alphabet context");
        rows[*j] |= std::uint64_t{1} << i;
      }
    }
    const std::uint64_t m = run_packed(rows.data(), n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (m >> i) & 1U;
    return out;
  }
  std::vector<std::vector<std::uint8_t>> rows(ctx_.size(), std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : w[i]) {
      auto j = ctx_.index(p);
      if (!j) throw Error("proposition '" + p + "' is not in the alphabet context");
      rows[*j][i] = 1;
    }
  }
  const auto r = run_scalar(rows, n);
  for (std::size_t i = 0; i < n; ++i) out[i] = r[i] != 0;
  return out;
}

bool CompiledFormula::eval(const Word& w) const { return truth(w)[0]; }

bool CompiledFormula::eval_at(const Word& w, std::size_t i) const {
  if (i >= w.size()) throw Error("position " + std::to_string(i) + " out of range");
  return truth(w)[i];
}

std::uint64_t CompiledFormula::truth_mask(const std::uint64_t* letters, std::size_t n) const {
  if (n > 64 || ctx_.size() > 64) throw Error("packed kernel handles at most 64 positions and props");
  thread_local std::vector<std::uint64_t> rows;
  rows.assign(ctx_.size(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t l = letters[i];
    while (l) {
      const int j = std::countr_zero(l);
      rows[static_cast<std::size_t>(j)] |= std::uint64_t{1} << i;
      l &= l - 1;
    }
  }
  return run_packed(rows.data(), n);
}

std::size_t count_before(const Word& w, std::size_t p, const Formula& f, const Alphabet& ctx) {
  if (p > w.size()) throw Error("position " + std::to_string(p) + " out of range");
  check_word_in(w, ctx);
  const auto t = CompiledFormula(f, ctx).truth(w);
  return static_cast<std::size_t>(std::count(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(p), true));
}

bool eval_at(const Word& w, std::size_t i, const Formula& f, const Alphabet& ctx) {
  if (i >= w.size()) throw Error("position " + std::to_string(i) + " out of range");
  check_word_in(w, ctx);
  return CompiledFormula(f, ctx).truth(w)[i];
}

bool eval(const Word& w, const Formula& f, const Alphabet& ctx) { return eval_at(w, 0, f, ctx); }

std::optional<Word> bounded_sat(const Formula& f, const Alphabet& ctx, std::size_t max_len) {
  const CompiledFormula cf(f, ctx);
  WordEnumerator en(ctx, std::min<std::size_t>(max_len, 64));
  while (en.next())
    if (cf.eval_letters(en.letters().data(), en.length())) return en.word();
  return std::nullopt;
}

std::optional<Word> prefix_sat_x_fragment(const Formula& f, const Alphabet& ctx) {
  if (!is_x_fragment(f))
    throw Error("formula uses F, G or U; prefix search only decides the X fragment");
  return bounded_sat(f, ctx, temporal_depth(f) + 2);
}

}  // namespace ltlpct
