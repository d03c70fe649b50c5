#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lce/forms.hpp"
#include "lce/partitions.hpp"

namespace lce {

// Raised when a form fails the scalar-species check: the moment of P(S)
// depends on the actual points of S, not just on |S|.
struct not_natural_error : error {
  using error::error;
};

// rho^x(t) = rho(x_{T_1}) ... rho(x_{T_k}) on partitions of support(x); a
// killed component (straddling generator) zeroes the product.
class PartitionExpectation {
 public:
  PartitionExpectation(LinearForm rho, Monomial x) : rho_(std::move(rho)), x_(std::move(x)) {
    if (!rho_.unital()) throw error("partition expectation needs a unital form");
  }

  const Monomial& element() const { return x_; }

  Rational operator()(const SetPartition& t) const {
    if (t.ground() != x_.support())
      throw error("partition expectation: wrong ground set");
    return block_product(t.blocks());
  }

  Rational block_product(const std::vector<std::vector<int>>& blocks) const {
    Rational v = 1;
    for (const auto& b : blocks) {
      auto comp = x_.restrict_to(b);
      if (!comp) return 0;
      v *= rho_.value(*comp);
      if (v.is_zero()) break;
    }
    return v;
  }

 private:
  LinearForm rho_;
  Monomial x_;
};

// Mobius-inverted expectation over the support partitions:
//   sum_t rho^x(t) (-1)^{|t|+1} (|t|-1)!.
inline Rational mobius_inverted(const LinearForm& rho, const Monomial& x) {
  auto sup = x.support();
  if (sup.empty()) throw error("mobius_inverted needs a nonempty support");
  PartitionExpectation pe(rho, x);
  Rational acc = 0;
  for_each_partition(sup, [&](const std::vector<std::vector<int>>& blocks) {
    Rational term = pe.block_product(blocks);
    if (!term.is_zero()) acc += mobius_to_top(static_cast<int>(blocks.size())) * term;
  });
  return acc;
}

struct LctReport {
  Rational connected_sum;  // rho_conn(x) with tau = log* rho
  Rational mobius_sum;     // Mobius-inverted expectation
  bool equal = false;
};

// Combinatorial linked cluster theorem as a machine check:
// rho_conn(x) = sum_t rho^x(t) mu(t, 1-hat), exactly.
inline LctReport check_combinatorial_lct(const LinearForm& rho, const Monomial& x) {
  LctReport r;
  r.connected_sum = rho_connected(conv_log(rho), x);
  r.mobius_sum = mobius_inverted(rho, x);
  r.equal = r.connected_sum == r.mobius_sum;
  return r;
}

// Interaction family T -> P(T): a pattern polynomial on the abstract point
// (label 1), relabeled onto each point of T and multiplied in increasing
// point order. P(empty) = 1.
class AdmissibleFamily {
 public:
  explicit AdmissibleFamily(Polynomial pattern) : pattern_(std::move(pattern)) {
    for (const auto& [m, c] : pattern_.terms()) {
      auto sup = m.support();
      if (!sup.empty() && sup != std::vector<int>{1})
        throw error("pattern must be supported on the abstract point x1");
    }
  }

  Mode mode() const { return pattern_.mode(); }
  const Polynomial& pattern() const { return pattern_; }
  int pattern_degree() const { return pattern_.degree(); }

  Polynomial instantiate(const std::vector<int>& points) const {
    std::vector<int> pts = points;
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      throw error("instantiation points must be distinct");
    Polynomial out = Polynomial::one(mode());
    for (int t : pts) out = out * pattern_.relabel({{1, t}});
    return out;
  }

  Polynomial instantiate_prefix(int n) const {
    std::vector<int> pts;
    for (int j = 1; j <= n; ++j) pts.push_back(j);
    return instantiate(pts);
  }

 private:
  Polynomial pattern_;
};

struct AdmissibilityReport {
  bool ok = true;
  std::vector<std::string> failures;
};

// Machine check of the two admissibility conditions for |T| <= max_size:
// order-preserving relabel equivariance and the tensor splitting identity
//   sum_b mu_b (P_b)_U (x) (P_b)_V = P(U) (x) P(V).
inline AdmissibilityReport verify_admissible(const AdmissibleFamily& fam, int max_size = 4) {
  AdmissibilityReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.failures.push_back(std::move(msg));
  };
  for (int n = 0; n <= max_size; ++n) {
    std::vector<int> base, spread;
    for (int j = 1; j <= n; ++j) {
      base.push_back(j);
      spread.push_back(2 * j + 1);
    }
    Polynomial pn = fam.instantiate(base);
    // equivariance under an order-preserving bijection
    std::map<int, int> sigma;
    for (int j = 1; j <= n; ++j) sigma[j] = 2 * j + 1;
    if (pn.relabel(sigma) != fam.instantiate(spread))
      fail("equivariance fails at n = " + std::to_string(n));
    // splitting identity over every split U | V of [n]
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> u, v;
      for (int j = 1; j <= n; ++j) ((mask >> (j - 1)) & 1u ? u : v).push_back(j);
      std::map<std::pair<Monomial, Monomial>, Rational> lhs, rhs;
      for (const auto& [b, mu] : pn.terms()) {
        auto bu = b.restrict_to(u);
        auto bv = b.restrict_to(v);
        if (!bu || !bv) continue;
        auto key = std::make_pair(*bu, *bv);
        lhs[key] += mu;
        if (lhs[key].is_zero()) lhs.erase(key);
      }
      Polynomial pu = fam.instantiate(u), pv = fam.instantiate(v);
      for (const auto& [mu_m, mu_c] : pu.terms())
        for (const auto& [mv_m, mv_c] : pv.terms()) {
          auto key = std::make_pair(mu_m, mv_m);
          rhs[key] += mu_c * mv_c;
          if (rhs[key].is_zero()) rhs.erase(key);
        }
      if (lhs != rhs)
        fail("splitting fails at n = " + std::to_string(n) + ", |U| = " +
             std::to_string(u.size()));
    }
  }
  return report;
}

// Truncated generating series with exact coefficients, rho-hat(n) x^n.
struct MomentSeries {
  int order = 0;
  std::vector<Rational> coeff;  // indices 0..order

  friend bool operator==(const MomentSeries& a, const MomentSeries& b) {
    return a.order == b.order && a.coeff == b.coeff;
  }
  friend bool operator!=(const MomentSeries& a, const MomentSeries& b) { return !(a == b); }
};

// rho-hat(n) = rho(P([n])) / n!; the scalar-species property (dependence on
// the size only) is checked on a second instantiation.
inline MomentSeries moment_series(const LinearForm& rho, const AdmissibleFamily& fam,
                                  int order) {
  if (!rho.unital()) throw error("moment series needs a unital form");
  if (order < 0) throw error("negative series order");
  if (order * fam.pattern_degree() > partition_cap())
    throw error("moment series order exceeds the occurrence cap " +
                std::to_string(partition_cap()));
  MomentSeries s{order, {}};
  for (int n = 0; n <= order; ++n) {
    std::vector<int> base, spread;
    for (int j = 1; j <= n; ++j) {
      base.push_back(j);
      spread.push_back(2 * j);
    }
    Rational v = evaluate(rho, fam.instantiate(base));
    if (v != evaluate(rho, fam.instantiate(spread)))
      throw not_natural_error("the form is not natural: the moment of P(S) depends on the points of S, not only on |S|");
    s.coeff.push_back(v / Rational(factorial(static_cast<unsigned>(n))));
  }
  return s;
}

namespace detail {

inline std::vector<Rational> truncated_mul(const std::vector<Rational>& a,
                                           const std::vector<Rational>& b, int order) {
  std::vector<Rational> out(static_cast<std::size_t>(order) + 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j + i <= static_cast<std::size_t>(order) && j < b.size(); ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace detail

// Formal power-series logarithm of a series with constant term 1.
inline MomentSeries series_log(const MomentSeries& s) {
  if (s.coeff.empty() || s.coeff[0] != Rational(1))
    throw error("series_log needs constant term 1");
  std::vector<Rational> y = s.coeff;
  y[0] = 0;
  std::vector<Rational> power(static_cast<std::size_t>(s.order) + 1, Rational(0));
  power[0] = 1;
  std::vector<Rational> out(static_cast<std::size_t>(s.order) + 1, Rational(0));
  for (int k = 1; k <= s.order; ++k) {
    power = detail::truncated_mul(power, y, s.order);
    Rational sign = (k % 2 == 1) ? 1 : -1;
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!power[i].is_zero()) out[i] += sign * power[i] / Rational(k);
  }
  return MomentSeries{s.order, std::move(out)};
}

struct ConnectedSeriesResult {
  MomentSeries series;
  // per order: connected diagrams that some basis element of P([n]) does not
  // feed (s_Gamma^b = 0 for that b); aggregated, not resolved
  std::vector<int> partial_diagrams;
};

// Connected-diagram generating series: coefficient n is
//   (1/n!) sum over connected Gamma of (sum_b lambda_b s_Gamma^b) tau[Gamma],
// with P([n]) = sum_b lambda_b b.
inline ConnectedSeriesResult connected_series(const LinearForm& tau,
                                              const AdmissibleFamily& fam, int order) {
  if (tau.unital()) throw error("connected series needs an infinitesimal form");
  if (order < 0) throw error("negative series order");
  if (order * fam.pattern_degree() > partition_cap())
    throw error("connected series order exceeds the occurrence cap " +
                std::to_string(partition_cap()));
  ConnectedSeriesResult r;
  r.series.order = order;
  r.series.coeff.assign(static_cast<std::size_t>(order) + 1, Rational(0));
  r.partial_diagrams.assign(static_cast<std::size_t>(order) + 1, 0);
  for (int n = 1; n <= order; ++n) {
    Polynomial pn = fam.instantiate_prefix(n);
    std::map<Bracketting, Rational> aggregated;
    std::map<Bracketting, int> contributors;
    int basis_count = 0;
    for (const auto& [b, lambda] : pn.terms()) {
      if (b.is_unit()) continue;
      ++basis_count;
      for (const auto& [gamma, s] : graphicate(b, tau.bound())) {
        if (!is_connected(gamma)) continue;
        aggregated[gamma] += lambda * s;
        contributors[gamma] += 1;
      }
    }
    Rational total = 0;
    for (const auto& [gamma, s_n] : aggregated) {
      if (contributors.at(gamma) < basis_count)
        ++r.partial_diagrams[static_cast<std::size_t>(n)];
      if (s_n.is_zero()) continue;
      Rational fr = feynman_rule(tau, gamma);
      if (!fr.is_zero()) total += s_n * fr;
    }
    r.series.coeff[static_cast<std::size_t>(n)] =
        total / Rational(factorial(static_cast<unsigned>(n)));
  }
  return r;
}

struct FlctReport {
  MomentSeries log_moments;  // log of the moment generating series
  MomentSeries connected;    // connected-diagram series
  bool equal = false;
  std::vector<int> partial_diagrams;
};

// Functional linked cluster theorem as a machine check:
// log(rho-hat(x)) = sum_n (1/n!) sum over connected diagrams x^n, exactly,
// with rho = exp* tau.
inline FlctReport check_functional_lct(const LinearForm& tau, const AdmissibleFamily& fam,
                                       int order) {
  FlctReport r;
  r.log_moments = series_log(moment_series(conv_exp(tau), fam, order));
  auto conn = connected_series(tau, fam, order);
  r.connected = conn.series;
  r.partial_diagrams = std::move(conn.partial_diagrams);
  r.equal = r.log_moments == r.connected;
  return r;
}

namespace detail {

inline int max_key_degree(const std::map<Monomial, Rational>& table) {
  int d = 0;
  for (const auto& [m, c] : table) d = std::max(d, m.degree());
  return d;
}

}  // namespace detail

// Moments indexed by basis elements -> cumulants on the same index set, via
// the convolution logarithm of the induced table form. Moments absent from
// the table count as zero; in noncommutative mode the blocks keep the word
// order (truncated Wightman convention).
inline std::map<Monomial, Rational> moments_to_cumulants(
    const std::map<Monomial, Rational>& moments, Mode mode) {
  LinearForm rho = LinearForm::table(mode, moments, Closure::none, true,
                                     std::max(detail::max_key_degree(moments), 1));
  LinearForm tau = conv_log(rho);
  std::map<Monomial, Rational> out;
  for (const auto& [m, v] : moments) out[m] = tau.value(m);
  return out;
}

inline std::map<Monomial, Rational> cumulants_to_moments(
    const std::map<Monomial, Rational>& cumulants, Mode mode) {
  LinearForm tau = LinearForm::table(mode, cumulants, Closure::none, false,
                                     std::max(detail::max_key_degree(cumulants), 1));
  LinearForm rho = conv_exp(tau);
  std::map<Monomial, Rational> out;
  for (const auto& [m, v] : cumulants) out[m] = rho.value(m);
  return out;
}

}  // namespace lce
