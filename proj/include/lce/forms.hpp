#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "lce/graphication.hpp"
#include "lce/graphs.hpp"

namespace lce {

enum class FormKind { table, pairing, product_rule, derived };
enum class Closure { none, symmetric, quasi_symmetric };

namespace detail {

// Canonical lookup key under a closure: quasi-symmetric packs the support
// order-preservingly onto 1..s, symmetric minimizes over all bijections.
inline Monomial closure_key(const Monomial& m, Closure c) {
  if (c == Closure::none || m.is_unit()) return m;
  auto sup = m.support();
  if (c == Closure::quasi_symmetric) {
    std::map<int, int> sigma;
    int next = 1;
    for (int l : sup) sigma[l] = next++;
    return m.relabel(sigma);
  }
  if (sup.size() > 8) throw error("symmetric closure: support too large to canonicalize");
  std::vector<int> targets(sup.size());
  std::iota(targets.begin(), targets.end(), 1);
  std::optional<Monomial> best;
  do {
    std::map<int, int> sigma;
    for (std::size_t i = 0; i < sup.size(); ++i) sigma[sup[i]] = targets[i];
    Monomial r = m.relabel(sigma);
    if (!best || r < *best) best = std::move(r);
  } while (std::next_permutation(targets.begin(), targets.end()));
  return *best;
}

}  // namespace detail

// Rational-valued linear functional on basis elements. Table, pairing and
// product-rule forms are data; convolution, exp* and log* yield derived
// forms evaluated on demand. The unit's value is fixed by the unital flag
// (1 when unital, 0 when infinitesimal).
class LinearForm {
 public:
  static LinearForm table(Mode mode, std::map<Monomial, Rational> entries, Closure closure,
                          bool unital, int bound = kDefaultDegreeBound) {
    return LinearForm(mode, FormKind::table, closure, unital, bound, std::move(entries), {});
  }

  // Propagator-style form: nonzero only on degree two.
  static LinearForm pairing(Mode mode, std::map<Monomial, Rational> entries, Closure closure,
                            int bound = kDefaultDegreeBound) {
    for (const auto& [m, v] : entries)
      if (m.degree() != 2) throw error("pairing form entry must have degree 2");
    return LinearForm(mode, FormKind::pairing, closure, false, bound, std::move(entries), {});
  }

  // Factorizes over labels: rho(m) = prod over labels of the table value on
  // the label's sub-monomial. Models independent point variables.
  static LinearForm product_rule(Mode mode, std::map<Monomial, Rational> entries,
                                 Closure closure, bool unital,
                                 int bound = kDefaultDegreeBound) {
    for (const auto& [m, v] : entries) {
      if (m.support().size() != 1) throw error("product-rule entry must live on one label");
      for (const auto& gen : m.gens())
        if (!gen.local()) throw error("product-rule entry must be local");
    }
    return LinearForm(mode, FormKind::product_rule, closure, unital, bound, std::move(entries),
                      {});
  }

  static LinearForm counit(Mode mode) {
    return LinearForm(mode, FormKind::table, Closure::none, true,
                      std::numeric_limits<int>::max(), {}, {});
  }

  static LinearForm derived(Mode mode, bool unital, int bound,
                            std::function<Rational(const Monomial&)> fn) {
    return LinearForm(mode, FormKind::derived, Closure::none, unital, bound, {},
                      std::move(fn));
  }

  Mode mode() const { return mode_; }
  FormKind kind() const { return kind_; }
  Closure closure() const { return closure_; }
  bool unital() const { return unital_; }
  bool infinitesimal() const { return !unital_; }
  int bound() const { return bound_; }
  const std::map<Monomial, Rational>& entries() const { return entries_; }

  Rational value(const Monomial& m) const {
    if (m.mode() != mode_) throw error("form and monomial mode mismatch");
    if (m.is_unit()) return unital_ ? 1 : 0;
    if (m.degree() > bound_)
      throw error("monomial degree " + std::to_string(m.degree()) +
                  " exceeds the form's bound " + std::to_string(bound_));
    switch (kind_) {
      case FormKind::derived:
        return fn_(m);
      case FormKind::pairing:
        if (m.degree() != 2) return 0;
        return lookup(m);
      case FormKind::table:
        return lookup(m);
      case FormKind::product_rule: {
        for (const auto& gen : m.gens())
          if (!gen.local()) throw error("product-rule form needs a local monomial");
        Rational v = 1;
        for (int label : m.support()) {
          auto part = m.restrict_to({label});
          v *= lookup(*part);
          if (v.is_zero()) break;
        }
        return v;
      }
    }
    throw error("unreachable form kind");
  }

 private:
  Mode mode_;
  FormKind kind_;
  Closure closure_;
  bool unital_;
  int bound_;
  std::map<Monomial, Rational> entries_;
  std::function<Rational(const Monomial&)> fn_;

  LinearForm(Mode mode, FormKind kind, Closure closure, bool unital, int bound,
             std::map<Monomial, Rational> entries, std::function<Rational(const Monomial&)> fn)
      : mode_(mode),
        kind_(kind),
        closure_(closure),
        unital_(unital),
        bound_(bound),
        fn_(std::move(fn)) {
    for (auto& [m, v] : entries) {
      if (m.mode() != mode_) throw error("form entry mode mismatch");
      if (m.is_unit()) throw error("the unit's value is fixed by the unital flag");
      Monomial key = detail::closure_key(m, closure_);
      if (!entries_.emplace(std::move(key), v).second)
        throw error("duplicate form entry (after closure normalization)");
    }
  }

  Rational lookup(const Monomial& m) const {
    auto it = entries_.find(detail::closure_key(m, closure_));
    return it == entries_.end() ? Rational(0) : it->second;
  }
};

// Linear extension to polynomials.
inline Rational evaluate(const LinearForm& f, const Polynomial& p) {
  if (f.mode() != p.mode()) throw error("form and polynomial mode mismatch");
  Rational acc = 0;
  for (const auto& [m, c] : p.terms()) acc += c * f.value(m);
  return acc;
}

// Convolution product (f * g)(m) = f(m_(1)) g(m_(2)) through the coproduct's
// position splittings.
inline LinearForm convolve(const LinearForm& f, const LinearForm& g) {
  if (f.mode() != g.mode()) throw error("convolution mode mismatch");
  int bound = std::min(f.bound(), g.bound());
  bool unital = f.unital() && g.unital();
  auto fn = [f, g](const Monomial& m) -> Rational {
    int n = m.degree();
    if (n > 30) throw error("convolution degree too large");
    Rational acc = 0;
    std::vector<int> left, right;
    for (unsigned long long mask = 0; mask < (1ULL << n); ++mask) {
      left.clear();
      right.clear();
      for (int i = 0; i < n; ++i) ((mask >> i) & 1ULL ? left : right).push_back(i);
      Rational lv = f.value(m.subword(left));
      if (lv.is_zero()) continue;
      acc += lv * g.value(m.subword(right));
    }
    return acc;
  };
  return LinearForm::derived(f.mode(), unital, bound, std::move(fn));
}

// Feynman rule: tau[u1|...|uk] = tau(u1)...tau(uk).
inline Rational feynman_rule(const LinearForm& tau, const Bracketting& gamma) {
  Rational v = 1;
  for (const auto& slot : gamma.slots()) {
    v *= tau.value(slot);
    if (v.is_zero()) break;
  }
  return v;
}

// Convolution exponential of an infinitesimal form: rho = tau o G, i.e.
// rho(m) = sum over brackettings of s_Gamma^m tau[Gamma]. Always unital.
inline LinearForm conv_exp(const LinearForm& tau) {
  if (tau.unital()) throw error("conv_exp needs an infinitesimal form");
  int bound = tau.bound();
  auto fn = [tau, bound](const Monomial& m) -> Rational {
    Rational acc = 0;
    for (const auto& [gamma, s] : graphicate(m, bound)) {
      Rational fr = feynman_rule(tau, gamma);
      if (!fr.is_zero()) acc += s * fr;
    }
    return acc;
  };
  return LinearForm::derived(tau.mode(), true, bound, std::move(fn));
}

// Convolution logarithm of a unital form, computed by Mobius inversion over
// partitions of the occurrence set:
//   tau(m) = sum_t (-1)^{|t|+1} (|t|-1)! prod_B rho(m_B),
// blocks keeping the word order in noncommutative mode.
inline LinearForm conv_log(const LinearForm& rho) {
  if (!rho.unital()) throw error("conv_log needs a unital form");
  int bound = std::min(rho.bound(), partition_cap());
  auto fn = [rho](const Monomial& m) -> Rational {
    Rational acc = 0;
    for_each_partition_of_range(m.degree(), [&](const std::vector<std::vector<int>>& blocks) {
      Rational term = mobius_to_top(static_cast<int>(blocks.size()));
      for (const auto& b : blocks) {
        term *= rho.value(m.subword(b));
        if (term.is_zero()) break;
      }
      acc += term;
    });
    return acc;
  };
  return LinearForm::derived(rho.mode(), false, bound, std::move(fn));
}

// Connected part: the diagram sum restricted to connected brackettings.
inline Rational rho_connected(const LinearForm& tau, const Monomial& m) {
  if (tau.unital()) throw error("rho_connected needs an infinitesimal form");
  if (m.is_unit()) return 0;
  if (m.degree() > tau.bound())
    throw error("monomial degree exceeds the form's bound");
  Rational acc = 0;
  for (const auto& [gamma, s] : graphicate(m, tau.bound())) {
    if (!is_connected(gamma)) continue;
    Rational fr = feynman_rule(tau, gamma);
    if (!fr.is_zero()) acc += s * fr;
  }
  return acc;
}

// Convenience quotient rho(num)/rho(den) used for normalized Green-function
// style evaluations; purely algebraic, no analytic content.
inline Rational green_quotient(const LinearForm& f, const Polynomial& num,
                               const Polynomial& den) {
  Rational d = evaluate(f, den);
  if (d.is_zero()) throw error("green_quotient: denominator evaluates to zero");
  return evaluate(f, num) / d;
}

}  // namespace lce
