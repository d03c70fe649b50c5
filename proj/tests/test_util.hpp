#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "lce/algebra.hpp"
#include "lce/forms.hpp"

namespace lcetest {

using namespace lce;

// Deterministic random value factory for property tests.
struct Gen {
  std::mt19937 rng;
  explicit Gen(unsigned seed) : rng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Rational rational(int span = 9) { return Rational(uniform(-span, span), uniform(1, span)); }
  Rational nonzero_rational(int span = 9) {
    for (;;) {
      Rational r = rational(span);
      if (!r.is_zero()) return r;
    }
  }

  Generator generator(int max_field, int max_label, int max_support = 1) {
    int k = uniform(1, max_support);
    std::vector<int> labels;
    while (static_cast<int>(labels.size()) < k) {
      int l = uniform(1, max_label);
      if (std::find(labels.begin(), labels.end(), l) == labels.end()) labels.push_back(l);
    }
    return Generator(uniform(1, max_field), labels);
  }

  Monomial monomial(Mode mode, int max_deg, int max_field, int max_label, int max_support = 1,
                    int min_deg = 0) {
    int d = uniform(min_deg, max_deg);
    std::vector<Generator> gens;
    gens.reserve(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) gens.push_back(generator(max_field, max_label, max_support));
    return Monomial(mode, std::move(gens));
  }

  Polynomial polynomial(Mode mode, int max_terms, int max_deg, int max_field, int max_label) {
    Polynomial p(mode);
    int t = uniform(1, max_terms);
    for (int i = 0; i < t; ++i)
      p.add_term(monomial(mode, max_deg, max_field, max_label), rational());
    return p;
  }
};

inline LinearForm random_table_form(Gen& gen, Mode mode, bool unital, Closure closure, int bound,
                                    int max_deg, int max_field, int max_label,
                                    int entry_count = 6) {
  std::map<Monomial, Rational> table;
  for (int i = 0; i < entry_count; ++i) {
    Monomial m = gen.monomial(mode, max_deg, max_field, max_label, 1, 1);
    table[lce::detail::closure_key(m, closure)] = gen.nonzero_rational();
  }
  return LinearForm::table(mode, std::move(table), closure, unital, bound);
}

inline Generator g(int field, std::initializer_list<int> labels) {
  return Generator(field, std::vector<int>(labels));
}

inline Monomial mono(Mode mode, std::initializer_list<Generator> gens) {
  return Monomial(mode, std::vector<Generator>(gens));
}

}  // namespace lcetest
