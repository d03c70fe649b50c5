#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lce/linked_cluster.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

using namespace lce;
using lcetest::g;
using lcetest::mono;

namespace {

constexpr Mode C = Mode::commutative;
constexpr Mode N = Mode::noncommutative;

Monomial phi(int label) { return mono(C, {g(1, {label})}); }

Monomial phis(std::initializer_list<int> labels) {
  std::vector<Generator> gens;
  for (int l : labels) gens.emplace_back(1, std::vector<int>{l});
  return Monomial(C, std::move(gens));
}

Monomial psis(std::initializer_list<int> labels) {
  std::vector<Generator> gens;
  for (int l : labels) gens.emplace_back(1, std::vector<int>{l});
  return Monomial(N, std::move(gens));
}

Monomial phi_pow(int label, int e) {
  std::vector<Generator> gens(static_cast<std::size_t>(e), Generator(1, {label}));
  return Monomial(C, std::move(gens));
}

LinearForm unit_pairing(int bound = kDefaultDegreeBound) {
  std::map<Monomial, Rational> entries{{phis({1, 2}), Rational(1)}};
  return LinearForm::pairing(C, entries, Closure::symmetric, bound);
}

// classical univariate recursion:
// c_n = m_n - sum_{j=1}^{n-1} C(n-1, j-1) c_j m_{n-j}
std::vector<Rational> cumulants_by_recursion(const std::vector<Rational>& m) {
  std::vector<Rational> c(m.size(), Rational(0));  // c[0] unused
  for (std::size_t n = 1; n < m.size(); ++n) {
    Rational acc = m[n];
    for (std::size_t j = 1; j < n; ++j)
      acc -= Rational(binomial(static_cast<unsigned>(n - 1), static_cast<unsigned>(j - 1))) *
             c[j] * m[n - j];
    c[n] = acc;
  }
  return c;
}

}  // namespace

TEST_CASE("partition expectation at the top partition is the plain value") {
  lcetest::Gen gen(103);
  for (int t = 0; t < 20; ++t) {
    LinearForm rho = lcetest::random_table_form(gen, C, true, Closure::none, 10, 4, 2, 3);
    Monomial x = gen.monomial(C, 5, 2, 3, 1, 1);
    PartitionExpectation pe(rho, x);
    CHECK(pe(SetPartition::coarsest(x.support())) == rho.value(x));
  }
}

TEST_CASE("mobius_inverted, frozen cases") {
  std::map<Monomial, Rational> t{
      {phi(1), Rational(2, 3)},
      {phi(2), Rational(5)},
      {phis({1, 2}), Rational(7, 2)},
  };
  LinearForm rho = LinearForm::table(C, t, Closure::none, true);

  // single support label: the only partition is the top one
  CHECK(mobius_inverted(rho, phi(1)) == Rational(2, 3));

  // two labels: rho(x) - rho(x_1) rho(x_2)
  CHECK(mobius_inverted(rho, phis({1, 2})) ==
        Rational(7, 2) - Rational(2, 3) * Rational(5));

  // a nonlocal generator: the split term dies through the zero component
  std::map<Monomial, Rational> t2{{mono(C, {g(1, {1, 2})}), Rational(9, 4)}};
  LinearForm rho2 = LinearForm::table(C, t2, Closure::none, true);
  CHECK(mobius_inverted(rho2, mono(C, {g(1, {1, 2})})) == Rational(9, 4));
}

TEST_CASE("combinatorial linked cluster theorem, commutative") {
  lcetest::Gen gen(107);
  // support of size one is trivially equal
  LinearForm rho1 = lcetest::random_table_form(gen, C, true, Closure::none, 10, 4, 1, 1);
  auto r1 = check_combinatorial_lct(rho1, phi_pow(1, 3));
  CHECK(r1.equal);

  // a mixed-multiplicity element with symmetric forms
  for (int t = 0; t < 10; ++t) {
    LinearForm rho = lcetest::random_table_form(gen, C, true, Closure::symmetric, 10, 4, 1, 4);
    Monomial x = phi_pow(1, 2) * phi(2) * phi(3);
    auto r = check_combinatorial_lct(rho, x);
    CHECK(r.equal);
  }

  // random monomials, random plain forms
  for (int t = 0; t < 25; ++t) {
    LinearForm rho = lcetest::random_table_form(gen, C, true, Closure::none, 10, 4, 2, 4);
    Monomial x = gen.monomial(C, 6, 2, 4, 1, 1);
    auto r = check_combinatorial_lct(rho, x);
    CHECK(r.equal);
  }

  // nonlocal generators participate too
  for (int t = 0; t < 10; ++t) {
    LinearForm rho = lcetest::random_table_form(gen, C, true, Closure::none, 10, 4, 2, 4);
    Monomial x = gen.monomial(C, 5, 2, 4, 2, 1);
    auto r = check_combinatorial_lct(rho, x);
    CHECK(r.equal);
  }
}

TEST_CASE("combinatorial linked cluster theorem, noncommutative words") {
  lcetest::Gen gen(109);
  // a word with a repeated label
  for (int t = 0; t < 10; ++t) {
    LinearForm rho = lcetest::random_table_form(gen, N, true, Closure::none, 10, 4, 1, 4);
    auto r = check_combinatorial_lct(rho, psis({1, 2, 1, 3}));
    CHECK(r.equal);
  }
  for (int t = 0; t < 20; ++t) {
    LinearForm rho = lcetest::random_table_form(gen, N, true, Closure::none, 10, 4, 2, 4);
    Monomial x = gen.monomial(N, 6, 2, 4, 1, 1);
    auto r = check_combinatorial_lct(rho, x);
    CHECK(r.equal);
  }
}

TEST_CASE("admissible family construction and instantiation") {
  Polynomial quartic(C);
  quartic.add_term(phi_pow(1, 4), Rational(1, 24));
  AdmissibleFamily fam{quartic};
  CHECK(fam.pattern_degree() == 4);
  CHECK(fam.instantiate({}) == Polynomial::one(C));
  Polynomial p2 = fam.instantiate({1, 2});
  CHECK(p2 == Polynomial::monomial(phi_pow(1, 4) * phi_pow(2, 4), Rational(1, 576)));

  // a pattern escaping the abstract point is rejected
  Polynomial bad(C);
  bad.add_term(phi(2), Rational(1));
  CHECK_THROWS_AS(AdmissibleFamily{bad}, error);
  CHECK_THROWS_AS(fam.instantiate({3, 3}), error);
}

TEST_CASE("admissibility verifier passes product families") {
  // single field per point
  AdmissibleFamily single{Polynomial::monomial(phi(1))};
  auto r1 = verify_admissible(single, 4);
  CHECK(r1.ok);
  CHECK(r1.failures.empty());

  // quartic interaction
  Polynomial quartic(C);
  quartic.add_term(phi_pow(1, 4), Rational(1, 24));
  CHECK(verify_admissible(AdmissibleFamily{quartic}, 4).ok);

  // multi-term pattern with two fields
  Polynomial mixed(C);
  mixed.add_term(phi(1), Rational(1));
  mixed.add_term(mono(C, {g(1, {1}), g(2, {1})}), Rational(-3, 2));
  CHECK(verify_admissible(AdmissibleFamily{mixed}, 4).ok);

  // noncommutative pattern
  Polynomial word(N);
  word.add_term(mono(N, {g(1, {1}), g(2, {1})}), Rational(1));
  CHECK(verify_admissible(AdmissibleFamily{word}, 3).ok);

  // a pattern with a constant term
  Polynomial affine(C);
  affine.add_term(Monomial::unit(C), Rational(1));
  affine.add_term(phi(1), Rational(2, 3));
  CHECK(verify_admissible(AdmissibleFamily{affine}, 4).ok);
}

TEST_CASE("moment series of the matching form") {
  AdmissibleFamily single{Polynomial::monomial(phi(1))};
  LinearForm rho = conv_exp(unit_pairing());
  MomentSeries s = moment_series(rho, single, 4);
  CHECK(s.coeff[0] == Rational(1));
  CHECK(s.coeff[1] == Rational(0));
  CHECK(s.coeff[2] == Rational(1, 2));
  CHECK(s.coeff[3] == Rational(0));
  CHECK(s.coeff[4] == Rational(1, 8));  // 3 matchings / 4!
  MomentSeries s0 = moment_series(rho, single, 0);
  CHECK(s0.coeff == std::vector<Rational>{Rational(1)});
}

TEST_CASE("moment series of the Bernoulli form") {
  Rational p(1, 3);
  LinearForm rho = LinearForm::derived(
      C, true, 12, [p](const Monomial& m) { return m.is_unit() ? Rational(1) : p; });
  AdmissibleFamily single{Polynomial::monomial(phi(1))};
  MomentSeries s = moment_series(rho, single, 6);
  for (int n = 1; n <= 6; ++n)
    CHECK(s.coeff[static_cast<std::size_t>(n)] ==
          p / Rational(factorial(static_cast<unsigned>(n))));
}

TEST_CASE("series_log") {
  MomentSeries one{4, {1, 0, 0, 0, 0}};
  CHECK(series_log(one).coeff == std::vector<Rational>{0, 0, 0, 0, 0});

  MomentSeries onepx{5, {1, 1, 0, 0, 0, 0}};
  CHECK(series_log(onepx).coeff ==
        std::vector<Rational>{Rational(0), Rational(1), Rational(-1, 2), Rational(1, 3),
                              Rational(-1, 4), Rational(1, 5)});

  // Gaussian matching series: log(1 + x^2/2 + x^4/8) = x^2/2 up to order 4
  MomentSeries gauss{4, {Rational(1), Rational(0), Rational(1, 2), Rational(0), Rational(1, 8)}};
  CHECK(series_log(gauss).coeff ==
        std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2), Rational(0),
                              Rational(0)});

  MomentSeries bad{2, {2, 0, 0}};
  CHECK_THROWS_AS(series_log(bad), error);
}

TEST_CASE("connected series of a pairing: one edge only") {
  AdmissibleFamily single{Polynomial::monomial(phi(1))};
  auto conn = connected_series(unit_pairing(), single, 4);
  CHECK(conn.series.coeff ==
        std::vector<Rational>{Rational(0), Rational(0), Rational(1, 2), Rational(0),
                              Rational(0)});
  for (int f : conn.partial_diagrams) CHECK(f == 0);

  // order 1 with a plain value
  std::map<Monomial, Rational> t1{{phi(1), Rational(5, 9)}};
  LinearForm tau1 = LinearForm::table(C, t1, Closure::symmetric, false);
  auto c1 = connected_series(tau1, single, 1);
  CHECK(c1.series.coeff[1] == Rational(5, 9));
}

TEST_CASE("functional linked cluster theorem") {
  AdmissibleFamily single{Polynomial::monomial(phi(1))};

  // pairing form, one field per point
  auto r = check_functional_lct(unit_pairing(), single, 4);
  CHECK(r.equal);

  // zero form: both sides vanish
  LinearForm zero = LinearForm::table(C, {}, Closure::none, false);
  auto rz = check_functional_lct(zero, single, 4);
  CHECK(rz.equal);
  for (const auto& c : rz.log_moments.coeff) CHECK(c.is_zero());

  // Bernoulli cumulants: <e^X>_c - 1 = log E[e^X] at series level, order 6
  Rational p(1, 3);
  LinearForm rho = LinearForm::derived(
      C, true, 12, [p](const Monomial& m) { return m.is_unit() ? Rational(1) : p; });
  auto rb = check_functional_lct(conv_log(rho), single, 6);
  CHECK(rb.equal);
  // and the log side really is log(1 + p(e^x - 1)) =: sum log-coefficients
  MomentSeries direct = series_log(moment_series(rho, single, 6));
  CHECK(rb.log_moments == direct);

  // random table forms
  lcetest::Gen gen(113);
  for (int t = 0; t < 4; ++t) {
    LinearForm tau = lcetest::random_table_form(gen, C, false, Closure::symmetric, 12, 3, 1, 3);
    auto rr = check_functional_lct(tau, single, 4);
    CHECK(rr.equal);
  }
}

TEST_CASE("functional linked cluster theorem, multi-term and quartic patterns") {
  lcetest::Gen gen(127);
  // quartic interaction at order 3 (12 occurrences)
  Polynomial quartic(C);
  quartic.add_term(phi_pow(1, 4), Rational(1, 24));
  AdmissibleFamily quartic_fam{quartic};
  auto rq = check_functional_lct(unit_pairing(12), quartic_fam, 3);
  CHECK(rq.equal);

  // multi-term pattern: flagged diagrams appear, the theorem still holds
  Polynomial mixed(C);
  mixed.add_term(phi(1), Rational(1));
  mixed.add_term(phi_pow(1, 2), Rational(1, 2));
  AdmissibleFamily mixed_fam{mixed};
  for (int t = 0; t < 3; ++t) {
    LinearForm tau = lcetest::random_table_form(gen, C, false, Closure::symmetric, 12, 3, 1, 3);
    auto rm = check_functional_lct(tau, mixed_fam, 3);
    CHECK(rm.equal);
    int flagged = 0;
    for (int f : rm.partial_diagrams) flagged += f;
    CHECK(flagged > 0);
  }

  // noncommutative single-field pattern with a Wightman-style pairing
  std::map<Monomial, Rational> nct{{psis({1, 2}), Rational(2, 5)},
                                   {psis({2, 1}), Rational(-3, 7)}};
  LinearForm nc_tau = LinearForm::pairing(N, nct, Closure::quasi_symmetric);
  AdmissibleFamily nc_single{Polynomial::monomial(psis({1}))};
  auto rn = check_functional_lct(nc_tau, nc_single, 4);
  CHECK(rn.equal);
}

TEST_CASE("moments to cumulants: Gaussian fixture") {
  std::vector<Rational> m{1, 0, 1, 0, 3, 0, 15};
  std::map<Monomial, Rational> moments;
  for (int n = 1; n <= 6; ++n) moments[phi_pow(1, n)] = m[static_cast<std::size_t>(n)];
  auto cum = moments_to_cumulants(moments, C);
  std::vector<Rational> want{0, 0, 1, 0, 0, 0, 0};  // only c_2 = 1
  for (int n = 1; n <= 6; ++n)
    CHECK(cum.at(phi_pow(1, n)) == want[static_cast<std::size_t>(n)]);
  // cross-check with the classical univariate recursion
  auto rec = cumulants_by_recursion(m);
  for (int n = 1; n <= 6; ++n)
    CHECK(cum.at(phi_pow(1, n)) == rec[static_cast<std::size_t>(n)]);
}

TEST_CASE("independent variables have vanishing mixed cumulants") {
  std::map<Monomial, Rational> moments{
      {phi(1), Rational(2, 3)},
      {phi(2), Rational(-4, 5)},
      {phis({1, 2}), Rational(2, 3) * Rational(-4, 5)},  // E[X1 X2] = E[X1] E[X2]
  };
  auto cum = moments_to_cumulants(moments, C);
  CHECK(cum.at(phis({1, 2})) == Rational(0));
  CHECK(cum.at(phi(1)) == Rational(2, 3));
}

TEST_CASE("moments_to_cumulants and cumulants_to_moments are mutually inverse") {
  lcetest::Gen gen(131);
  for (Mode mode : {C, N}) {
    for (int t = 0; t < 8; ++t) {
      // moments on all words/multisets over two labels up to degree 4
      std::map<Monomial, Rational> moments;
      std::vector<Monomial> keys;
      std::vector<Generator> pool{Generator(1, {1}), Generator(1, {2})};
      std::function<void(std::vector<Generator>&)> build = [&](std::vector<Generator>& cur) {
        if (!cur.empty()) keys.push_back(Monomial(mode, cur));
        if (cur.size() == 3) return;
        for (const auto& gg : pool) {
          cur.push_back(gg);
          build(cur);
          cur.pop_back();
        }
      };
      std::vector<Generator> cur;
      build(cur);
      for (const auto& k : keys) moments[k] = gen.rational();
      auto cum = moments_to_cumulants(moments, mode);
      auto back = cumulants_to_moments(cum, mode);
      CHECK(back == moments);
      auto cum2 = moments_to_cumulants(back, mode);
      CHECK(cum2 == cum);
    }
  }
}

TEST_CASE("ordered Wightman truncation on four points") {
  // truncated two-point values on increasing pairs; reversed-order entries are
  // deliberately set to sentinels that must never be consulted
  auto v = [](int a, int b) {
    static std::map<std::pair<int, int>, Rational> vals{
        {{1, 2}, Rational(2)},  {{3, 4}, Rational(3)}, {{1, 3}, Rational(5)},
        {{2, 4}, Rational(7)},  {{1, 4}, Rational(11)}, {{2, 3}, Rational(13)},
    };
    return vals.at({a, b});
  };
  std::map<Monomial, Rational> cum;
  for (auto [a, b] : std::vector<std::pair<int, int>>{{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}, {2, 3}}) {
    cum[psis({a, b})] = v(a, b);
    cum[psis({b, a})] = Rational(991);  // sentinel
  }
  cum[psis({1, 2, 3, 4})] = Rational(0);
  auto moments = cumulants_to_moments(cum, N);
  Rational want = v(1, 2) * v(3, 4) + v(1, 3) * v(2, 4) + v(1, 4) * v(2, 3);
  CHECK(moments.at(psis({1, 2, 3, 4})) == want);

  // ordered-pair-partition oracle over the label set
  Rational oracle = 0;
  for (const auto& part : enumerate_partitions({1, 2, 3, 4})) {
    bool all_pairs = true;
    for (const auto& b : part.blocks())
      if (b.size() != 2) all_pairs = false;
    if (!all_pairs) continue;
    Rational term = 1;
    for (const auto& b : part.blocks()) term *= v(b[0], b[1]);
    oracle += term;
  }
  CHECK(oracle == want);
}

TEST_CASE("caps are enforced") {
  AdmissibleFamily single{Polynomial::monomial(phi(1))};
  LinearForm tau = LinearForm::table(C, {}, Closure::none, false, 40);
  CHECK_THROWS_AS(connected_series(tau, single, partition_cap() + 1), error);
  LinearForm rho = LinearForm::table(C, {}, Closure::none, true, 40);
  CHECK_THROWS_AS(moment_series(rho, single, partition_cap() + 1), error);
}
