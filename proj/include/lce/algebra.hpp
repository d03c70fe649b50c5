#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lce/config.hpp"
#include "lce/rational.hpp"

namespace lce {

enum class Mode { commutative, noncommutative };

// One field symbol phi_i(x_S): field index plus finite label support.
struct Generator {
  int field = 1;
  std::vector<int> labels;  // sorted, duplicate-free, all >= 1

  Generator(int field_index, std::vector<int> support)
      : field(field_index), labels(std::move(support)) {
    if (field < 1) throw error("generator field index must be >= 1");
    if (labels.empty()) throw error("generator support must be nonempty");
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw error("generator support has a repeated label");
    if (labels.front() < 1) throw error("labels must be positive integers");
  }

  bool local() const { return labels.size() == 1; }
  bool covers(int label) const {
    return std::binary_search(labels.begin(), labels.end(), label);
  }

  friend bool operator==(const Generator& a, const Generator& b) {
    return a.field == b.field && a.labels == b.labels;
  }
  friend bool operator!=(const Generator& a, const Generator& b) { return !(a == b); }
  // canonical order: (sorted support, field index)
  friend bool operator<(const Generator& a, const Generator& b) {
    if (a.labels != b.labels) return a.labels < b.labels;
    return a.field < b.field;
  }
};

// Fixes the algebra: commutative or noncommutative, and how many field
// symbols n_k exist for each support size k. A permissive profile skips the
// arity check entirely.
class ArityProfile {
 public:
  ArityProfile(Mode mode, std::map<int, int> counts)
      : mode_(mode), counts_(std::move(counts)) {
    for (const auto& [k, n] : counts_)
      if (k < 1 || n < 0) throw error("bad arity profile entry");
  }
  static ArityProfile permissive(Mode mode) {
    ArityProfile p(mode, {});
    p.permissive_ = true;
    return p;
  }

  Mode mode() const { return mode_; }
  bool is_permissive() const { return permissive_; }
  int count(int support_size) const {
    auto it = counts_.find(support_size);
    return it == counts_.end() ? 0 : it->second;
  }
  const std::map<int, int>& counts() const { return counts_; }

  void validate(const Generator& g) const {
    if (permissive_) return;
    int n = count(static_cast<int>(g.labels.size()));
    if (g.field > n)
      throw error("field index " + std::to_string(g.field) + " exceeds n_" +
                  std::to_string(g.labels.size()) + " = " + std::to_string(n));
  }

 private:
  Mode mode_;
  std::map<int, int> counts_;  // support size k -> n_k, absent means 0
  bool permissive_ = false;
};

// Basis element: multiset (commutative) or word (noncommutative) of
// generators. The empty collection is the unit 1.
class Monomial {
 public:
  explicit Monomial(Mode mode) : mode_(mode) {}
  Monomial(Mode mode, std::vector<Generator> gens) : mode_(mode), gens_(std::move(gens)) {
    canonicalize();
  }
  static Monomial unit(Mode mode) { return Monomial(mode); }

  Mode mode() const { return mode_; }
  bool is_unit() const { return gens_.empty(); }
  int degree() const { return static_cast<int>(gens_.size()); }
  const std::vector<Generator>& gens() const { return gens_; }

  std::vector<int> support() const {
    std::vector<int> s;
    for (const auto& g : gens_) s.insert(s.end(), g.labels.begin(), g.labels.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
  }

  // Occurrences whose support contains the label; a nonlocal generator counts
  // once per occurrence.
  int degree_at(int label) const {
    int d = 0;
    for (const auto& g : gens_)
      if (g.covers(label)) ++d;
    return d;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.mode_ != b.mode_) throw error("monomial mode mismatch");
    std::vector<Generator> gens = a.gens_;
    gens.insert(gens.end(), b.gens_.begin(), b.gens_.end());
    return Monomial(a.mode_, std::move(gens));
  }

  Monomial pow(int e) const {
    if (e < 0) throw error("negative monomial power");
    Monomial r = unit(mode_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // T-component: generators supported inside `keep` survive, generators
  // disjoint from it become 1, a generator straddling the split kills the
  // whole component (nullopt = zero).
  std::optional<Monomial> restrict_to(std::vector<int> keep) const {
    std::sort(keep.begin(), keep.end());
    std::vector<Generator> out;
    for (const auto& g : gens_) {
      bool any = false, all = true;
      for (int l : g.labels) {
        if (std::binary_search(keep.begin(), keep.end(), l))
          any = true;
        else
          all = false;
      }
      if (any && !all) return std::nullopt;
      if (any) out.push_back(g);
    }
    return Monomial(mode_, std::move(out));
  }

  // Applies an injective label substitution to every generator.
  Monomial relabel(const std::map<int, int>& sigma) const {
    std::vector<int> sup = support();
    std::vector<int> images;
    for (int l : sup) {
      auto it = sigma.find(l);
      if (it == sigma.end()) throw error("relabel map undefined on label " + std::to_string(l));
      images.push_back(it->second);
    }
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end())
      throw error("relabel map is not injective on the support");
    std::vector<Generator> out;
    out.reserve(gens_.size());
    for (const auto& g : gens_) {
      std::vector<int> labels;
      labels.reserve(g.labels.size());
      for (int l : g.labels) labels.push_back(sigma.at(l));
      out.emplace_back(g.field, std::move(labels));
    }
    return Monomial(mode_, std::move(out));
  }

  // Induced sub-monomial of the occurrences at `positions` (ascending).
  Monomial subword(const std::vector<int>& positions) const {
    std::vector<Generator> out;
    out.reserve(positions.size());
    for (int p : positions) out.push_back(gens_.at(static_cast<std::size_t>(p)));
    return Monomial(mode_, std::move(out));
  }

  // Run-length encoding of the generator sequence. In commutative mode the
  // sequence is canonical so this groups all equal occurrences.
  std::vector<std::pair<Generator, int>> grouped() const {
    std::vector<std::pair<Generator, int>> out;
    for (const auto& g : gens_) {
      if (!out.empty() && out.back().first == g)
        ++out.back().second;
      else
        out.emplace_back(g, 1);
    }
    return out;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.mode_ == b.mode_ && a.gens_ == b.gens_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.mode_ != b.mode_) return a.mode_ < b.mode_;
    return std::lexicographical_compare(a.gens_.begin(), a.gens_.end(), b.gens_.begin(),
                                        b.gens_.end());
  }

 private:
  Mode mode_;
  std::vector<Generator> gens_;

  void canonicalize() {
    if (mode_ == Mode::commutative) std::sort(gens_.begin(), gens_.end());
  }
};

// Finite rational-linear combination of basis elements.
class Polynomial {
 public:
  explicit Polynomial(Mode mode) : mode_(mode) {}
  static Polynomial zero(Mode mode) { return Polynomial(mode); }
  static Polynomial one(Mode mode) { return monomial(Monomial::unit(mode)); }
  static Polynomial monomial(const Monomial& m, const Rational& c = 1) {
    Polynomial p(m.mode());
    p.add_term(m, c);
    return p;
  }

  Mode mode() const { return mode_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (m.mode() != mode_) throw error("polynomial term mode mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_modes(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, c);
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    check_modes(a, b);
    Polynomial r = a;
    for (const auto& [m, c] : b.terms_) r.add_term(m, -c);
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_modes(a, b);
    Polynomial r(a.mode_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& p) {
    Polynomial r(p.mode_);
    for (const auto& [m, k] : p.terms_) r.add_term(m, c * k);
    return r;
  }
  friend Polynomial operator-(const Polynomial& p) { return Rational(-1) * p; }

  Polynomial pow(int e) const {
    if (e < 0) throw error("negative polynomial power");
    Polynomial r = one(mode_);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  // Hopf-algebra-map action of a label substitution, term by term.
  Polynomial relabel(const std::map<int, int>& sigma) const {
    Polynomial r(mode_);
    for (const auto& [m, c] : terms_) r.add_term(m.relabel(sigma), c);
    return r;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.mode_ == b.mode_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  Mode mode_;
  std::map<Monomial, Rational> terms_;

  static void check_modes(const Polynomial& a, const Polynomial& b) {
    if (a.mode_ != b.mode_) throw error("polynomial mode mismatch");
  }
};

}  // namespace lce
