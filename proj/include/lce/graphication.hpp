#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lce/algebra.hpp"
#include "lce/partitions.hpp"

namespace lce {

// Unordered multiset of nonempty monomial slots [u1|...|uk]; the carrier of
// symmetry factors and interaction graphs. Slots are kept sorted so equality
// is structural.
class Bracketting {
 public:
  explicit Bracketting(Mode mode) : mode_(mode) {}
  Bracketting(Mode mode, std::vector<Monomial> slots) : mode_(mode), slots_(std::move(slots)) {
    for (const auto& s : slots_) {
      if (s.mode() != mode_) throw error("bracketting slot mode mismatch");
      if (s.is_unit()) throw error("bracketting slot must not be the unit");
    }
    std::sort(slots_.begin(), slots_.end());
  }

  Mode mode() const { return mode_; }
  int length() const { return static_cast<int>(slots_.size()); }
  bool empty() const { return slots_.empty(); }
  const std::vector<Monomial>& slots() const { return slots_; }

  std::vector<int> support() const {
    std::vector<int> s;
    for (const auto& slot : slots_) {
      auto part = slot.support();
      s.insert(s.end(), part.begin(), part.end());
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  int degree_at(int label) const {
    int d = 0;
    for (const auto& slot : slots_) d += slot.degree_at(label);
    return d;
  }

  int degree() const {
    int d = 0;
    for (const auto& slot : slots_) d += slot.degree();
    return d;
  }

  friend bool operator==(const Bracketting& a, const Bracketting& b) {
    return a.mode_ == b.mode_ && a.slots_ == b.slots_;
  }
  friend bool operator!=(const Bracketting& a, const Bracketting& b) { return !(a == b); }
  friend bool operator<(const Bracketting& a, const Bracketting& b) {
    if (a.mode_ != b.mode_) return a.mode_ < b.mode_;
    return std::lexicographical_compare(a.slots_.begin(), a.slots_.end(), b.slots_.begin(),
                                        b.slots_.end());
  }

 private:
  Mode mode_;
  std::vector<Monomial> slots_;
};

// Concatenation product: multiset union of slots.
inline Bracketting concat(const Bracketting& a, const Bracketting& b) {
  if (a.mode() != b.mode()) throw error("bracketting mode mismatch");
  std::vector<Monomial> slots = a.slots();
  slots.insert(slots.end(), b.slots().begin(), b.slots().end());
  return Bracketting(a.mode(), std::move(slots));
}

// Collected tensor sum: ordered tuple of basis elements -> coefficient.
// One entry is a TensorTerm, one summand of Delta^[n](x).
using TensorSum = std::map<std::vector<Monomial>, Rational>;
using TensorTerm = TensorSum::value_type;

inline void add_tensor(TensorSum& sum, const std::vector<Monomial>& key, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = sum.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) sum.erase(it);
  }
}

// Delta(m): generators are primitive, so the coproduct distributes the
// occurrences of m over the two legs in all 2^deg ways (subwords keep their
// order in noncommutative mode).
inline TensorSum coproduct(const Monomial& m) {
  int n = m.degree();
  if (n > 30) throw error("coproduct degree too large");
  TensorSum out;
  std::vector<int> left, right;
  for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
    left.clear();
    right.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1ULL << i))
        left.push_back(i);
      else
        right.push_back(i);
    }
    add_tensor(out, {m.subword(left), m.subword(right)}, 1);
  }
  return out;
}

namespace detail {

// Distributes the occurrences of m over `arity` legs; a leg may stay empty
// unless `reduced` is set.
inline TensorSum iterate_coproduct(const Monomial& m, int arity, bool reduced) {
  if (arity < 1) throw error("coproduct arity must be >= 1");
  if (m.degree() > 20) throw error("iterated coproduct degree too large");
  int n = m.degree();
  TensorSum out;
  if (reduced && n < arity) return out;  // pigeonhole: some leg would be empty
  std::vector<int> assign(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> legs(static_cast<std::size_t>(arity));
  while (true) {
    for (auto& l : legs) l.clear();
    for (int i = 0; i < n; ++i) legs[static_cast<std::size_t>(assign[i])].push_back(i);
    bool ok = true;
    if (reduced)
      for (const auto& l : legs)
        if (l.empty()) ok = false;
    if (ok) {
      std::vector<Monomial> key;
      key.reserve(legs.size());
      for (const auto& l : legs) key.push_back(m.subword(l));
      add_tensor(out, key, 1);
    }
    int i = 0;
    for (; i < n; ++i) {
      if (++assign[i] < arity) break;
      assign[i] = 0;
    }
    if (i == n) break;
  }
  return out;
}

}  // namespace detail

// Delta^[n]
inline TensorSum iterated_coproduct(const Monomial& m, int arity) {
  return detail::iterate_coproduct(m, arity, false);
}

// Reduced Delta-bar^[n]: every leg nonempty; zero when arity > degree.
inline TensorSum iterated_reduced_coproduct(const Monomial& m, int arity) {
  return detail::iterate_coproduct(m, arity, true);
}

namespace detail {

// Commutative fast path: multiset decompositions of the exponent vector with
// multinomial counting. Parts are emitted in non-increasing lexicographic
// order so every multiset of parts appears exactly once.
inline void multiset_decompositions(
    const std::vector<int>& remaining, const std::vector<int>& bound,
    std::vector<std::vector<int>>& parts,
    const std::function<void(const std::vector<std::vector<int>>&)>& emit) {
  bool done = true;
  for (int v : remaining)
    if (v != 0) done = false;
  if (done) {
    emit(parts);
    return;
  }
  // enumerate candidate parts f: nonzero, f <= remaining componentwise,
  // f <= bound lexicographically
  std::size_t r = remaining.size();
  std::vector<int> f(r, 0);
  auto next = [&]() -> bool {  // odometer over the componentwise box
    for (std::size_t i = r; i-- > 0;) {
      if (++f[i] <= remaining[i]) return true;
      f[i] = 0;
    }
    return false;
  };
  while (next()) {
    if (f > bound) continue;  // keep parts non-increasing
    std::vector<int> rest(r);
    for (std::size_t i = 0; i < r; ++i) rest[i] = remaining[i] - f[i];
    parts.push_back(f);
    multiset_decompositions(rest, f, parts, emit);
    parts.pop_back();
  }
}

inline Rational commutative_symmetry_factor(const std::vector<int>& exponents,
                                            const std::vector<std::vector<int>>& parts) {
  BigInt num = 1;
  for (int e : exponents) num *= factorial(static_cast<unsigned>(e));
  BigInt den = 1;
  for (const auto& f : parts)
    for (int v : f) den *= factorial(static_cast<unsigned>(v));
  // multiplicity of each distinct part
  int run = 1;
  for (std::size_t i = 1; i <= parts.size(); ++i) {
    if (i < parts.size() && parts[i] == parts[i - 1]) {
      ++run;
    } else {
      den *= factorial(static_cast<unsigned>(run));
      run = 1;
    }
  }
  return Rational(num, den);
}

inline Monomial slot_from_part(Mode mode, const std::vector<std::pair<Generator, int>>& groups,
                               const std::vector<int>& part) {
  std::vector<Generator> gens;
  for (std::size_t j = 0; j < part.size(); ++j)
    for (int c = 0; c < part[j]; ++c) gens.push_back(groups[j].first);
  return Monomial(mode, std::move(gens));
}

}  // namespace detail

// The graphication map G = sum_n reduced-Delta^[n] / n! : every bracketting
// appearing in G(m) together with its symmetry factor s_Gamma^m.
//
// Commutative mode enumerates multiset decompositions of the exponent vector
// (no Bell-number blowup); noncommutative mode walks the set partitions of
// the word positions, each contributing 1 to its induced bracketting.
inline std::map<Bracketting, Rational> graphicate(const Monomial& m,
                                                  int word_cap = kDefaultWordCap) {
  std::map<Bracketting, Rational> out;
  if (m.is_unit()) return out;
  if (m.mode() == Mode::commutative) {
    if (m.degree() > std::max(word_cap, 24))
      throw error("commutative graphication degree exceeds cap " +
                  std::to_string(std::max(word_cap, 24)));
    auto groups = m.grouped();
    std::vector<int> exponents;
    exponents.reserve(groups.size());
    for (const auto& [g, e] : groups) exponents.push_back(e);
    std::vector<std::vector<int>> parts;
    detail::multiset_decompositions(
        exponents, exponents, parts, [&](const std::vector<std::vector<int>>& ps) {
          std::vector<Monomial> slots;
          slots.reserve(ps.size());
          for (const auto& f : ps) slots.push_back(detail::slot_from_part(m.mode(), groups, f));
          out[Bracketting(m.mode(), std::move(slots))] =
              detail::commutative_symmetry_factor(exponents, ps);
        });
  } else {
    if (m.degree() > word_cap)
      throw error("noncommutative graphication degree exceeds cap " + std::to_string(word_cap));
    for_each_partition_of_range(m.degree(), [&](const std::vector<std::vector<int>>& blocks) {
      std::vector<Monomial> slots;
      slots.reserve(blocks.size());
      for (const auto& b : blocks) slots.push_back(m.subword(b));
      Bracketting gamma(m.mode(), std::move(slots));
      auto [it, inserted] = out.emplace(std::move(gamma), 1);
      if (!inserted) it->second += 1;
    });
  }
  return out;
}

namespace detail {

// Counts set partitions of the word positions whose induced subwords realize
// the target slots, backtracking position by position.
inline long long count_word_partitions(const Monomial& w, const std::vector<Monomial>& slots) {
  int n = w.degree();
  std::vector<std::vector<int>> blocks;
  long long count = 0;
  auto block_is_extendable = [&](const std::vector<int>& positions) {
    // the block's current word must be a prefix of some slot
    Monomial word = w.subword(positions);
    for (const auto& s : slots) {
      if (s.degree() < word.degree()) continue;
      bool prefix = true;
      for (int i = 0; i < word.degree(); ++i)
        if (!(s.gens()[static_cast<std::size_t>(i)] == word.gens()[static_cast<std::size_t>(i)])) {
          prefix = false;
          break;
        }
      if (prefix) return true;
    }
    return false;
  };
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      std::vector<Monomial> words;
      words.reserve(blocks.size());
      for (const auto& b : blocks) words.push_back(w.subword(b));
      std::sort(words.begin(), words.end());
      if (words == slots) ++count;
      return;
    }
    std::size_t existing = blocks.size();
    for (std::size_t i = 0; i < existing; ++i) {
      blocks[i].push_back(pos);
      if (block_is_extendable(blocks[i])) self(self, pos + 1);
      blocks[i].pop_back();
    }
    if (static_cast<int>(blocks.size()) < static_cast<int>(slots.size())) {
      blocks.emplace_back(1, pos);
      if (block_is_extendable(blocks.back())) self(self, pos + 1);
      blocks.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace detail

// Coefficient of Gamma in G(m); zero when Gamma does not arise.
inline Rational symmetry_factor(const Bracketting& gamma, const Monomial& m,
                                int word_cap = kDefaultWordCap) {
  if (gamma.mode() != m.mode()) throw error("symmetry factor mode mismatch");
  if (gamma.empty() || m.is_unit()) return gamma.empty() && m.is_unit() ? 1 : 0;
  // occurrence multisets must agree
  std::vector<Generator> a, b;
  for (const auto& s : gamma.slots()) a.insert(a.end(), s.gens().begin(), s.gens().end());
  b = m.gens();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return 0;

  if (m.mode() == Mode::commutative) {
    auto groups = m.grouped();
    std::map<Generator, std::size_t> index;
    std::vector<int> exponents;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      index.emplace(groups[j].first, j);
      exponents.push_back(groups[j].second);
    }
    std::vector<std::vector<int>> parts;
    for (const auto& slot : gamma.slots()) {
      std::vector<int> f(groups.size(), 0);
      for (const auto& g : slot.gens()) ++f[index.at(g)];
      parts.push_back(std::move(f));
    }
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return detail::commutative_symmetry_factor(exponents, parts);
  }
  if (m.degree() > word_cap)
    throw error("noncommutative symmetry factor degree exceeds cap " + std::to_string(word_cap));
  return Rational(detail::count_word_partitions(m, gamma.slots()));
}

}  // namespace lce
