#pragma once

#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lce/expr.hpp"
#include "lce/form_io.hpp"
#include "lce/graphs.hpp"
#include "lce/linked_cluster.hpp"

namespace lce::cli {

namespace detail {

// Deterministic pseudo-random symmetric form derived from a seed: the value
// of a monomial is hashed from the canonical text of its symmetric-closure
// representative.
inline LinearForm seeded_form(Mode mode, unsigned seed, bool unital, int bound) {
  auto fn = [seed](const Monomial& m) -> Rational {
    Monomial key = lce::detail::closure_key(m, Closure::symmetric);
    std::string text = to_text(key);
    unsigned long long h = 1469598103934665603ULL ^ (seed * 2654435761ULL);
    for (char c : text) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    long long num = static_cast<long long>(h % 19) - 9;
    long long den = static_cast<long long>((h / 19) % 9) + 1;
    return Rational(num, den);
  };
  return LinearForm::derived(mode, unital, bound, std::move(fn));
}

inline std::string join_labels(const std::vector<int>& labels) {
  std::string s;
  for (std::size_t i = 0; i < labels.size(); ++i)
    s += (i ? "," : "") + std::string("x") + std::to_string(labels[i]);
  return s;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"lce - exact engine for combinatorial Hopf algebras, interaction diagrams "
               "and linked cluster theorems"};
  app.require_subcommand(1);

  std::string profile_file, form_file, format = "text", pattern_text;
  std::string expr_text, bracket_text, mono_text;
  int min_len = 0, max_len = 0, order = 0, max_degree = 0, max_size = 4;
  unsigned seed = 0;
  bool inverse = false;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: text or kv")
        ->check(CLI::IsMember({"text", "kv"}));
  };
  auto add_graph_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format: text, kv or dot")
        ->check(CLI::IsMember({"text", "kv", "dot"}));
  };
  auto add_profile = [&](CLI::App* cmd) {
    cmd->add_option("--profile", profile_file, "profile JSON file (mode and n_k table)");
  };

  CLI::App* c_graph = app.add_subcommand(
      "graphicate", "expand a basis element into brackettings with symmetry factors");
  c_graph->add_option("expr", expr_text, "monomial expression")->required();
  c_graph->add_option("--min-len", min_len, "keep brackettings with at least this many slots");
  c_graph->add_option("--max-len", max_len, "keep brackettings with at most this many slots");
  c_graph->add_option("--max-degree", max_degree, "raise the noncommutative degree cap");
  add_profile(c_graph);
  add_format(c_graph);

  CLI::App* c_symfac =
      app.add_subcommand("symfac", "symmetry factor of a bracketting in a monomial's expansion");
  c_symfac->add_option("bracketting", bracket_text, "bracketting expression")->required();
  c_symfac->add_option("monomial", mono_text, "monomial expression")->required();
  c_symfac->add_option("--max-degree", max_degree, "raise the noncommutative degree cap");
  add_profile(c_symfac);

  CLI::App* c_comp =
      app.add_subcommand("components", "connected components of a bracketting");
  c_comp->add_option("bracketting", bracket_text, "bracketting expression")->required();
  add_profile(c_comp);
  add_graph_format(c_comp);

  CLI::App* c_dot = app.add_subcommand("dot", "interaction graph of a bracketting as DOT");
  c_dot->add_option("bracketting", bracket_text, "bracketting expression")->required();
  add_profile(c_dot);

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a form on a polynomial");
  c_eval->add_option("expr", expr_text, "polynomial expression")->required();
  c_eval->add_option("--form", form_file, "form-table JSON file")->required();
  c_eval->add_option("--max-degree", max_degree, "override the form's degree bound");

  CLI::App* c_log =
      app.add_subcommand("logform", "evaluate the convolution logarithm of a form");
  c_log->add_option("expr", expr_text, "polynomial expression")->required();
  c_log->add_option("--form", form_file, "form-table JSON file (unital)")->required();
  c_log->add_option("--max-degree", max_degree, "override the form's degree bound");

  CLI::App* c_cum = app.add_subcommand(
      "cumulants", "convert the form's table from moments to cumulants (or back)");
  c_cum->add_option("--form", form_file, "form-table JSON file")->required();
  c_cum->add_flag("--inverse", inverse, "treat the table as cumulants and print moments");
  c_cum->add_option("--max-degree", max_degree, "override the form's degree bound");
  add_format(c_cum);

  CLI::App* c_lct =
      app.add_subcommand("lct-check", "verify the combinatorial linked cluster theorem");
  c_lct->add_option("expr", expr_text, "monomial expression")->required();
  c_lct->add_option("--form", form_file, "unital form-table JSON file");
  CLI::Option* lct_seed = c_lct->add_option("--seed", seed, "derive a random symmetric form");
  c_lct->add_option("--max-degree", max_degree, "override the form's degree bound");
  add_format(c_lct);

  CLI::App* c_flct =
      app.add_subcommand("flct-check", "verify the functional linked cluster theorem");
  c_flct->add_option("--pattern", pattern_text, "per-point interaction pattern over x1")
      ->required();
  c_flct->add_option("--order", order, "series truncation order")->required();
  c_flct->add_option("--form", form_file, "form-table JSON file (unital or infinitesimal)");
  CLI::Option* flct_seed = c_flct->add_option("--seed", seed, "derive a random symmetric form");
  c_flct->add_option("--max-degree", max_degree, "override the form's degree bound");
  add_format(c_flct);

  CLI::App* c_adm = app.add_subcommand(
      "verify-admissible", "check the admissibility conditions of a pattern family");
  c_adm->add_option("--pattern", pattern_text, "per-point interaction pattern over x1")
      ->required();
  c_adm->add_option("--max-size", max_size, "largest point set to check");
  add_profile(c_adm);
  add_format(c_adm);

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::optional<ArityProfile> profile;
    if (!profile_file.empty()) profile = load_profile_file(profile_file);
    if (!profile && !form_file.empty()) profile = load_form_profile(form_file);
    const ArityProfile* prof = profile ? &*profile : nullptr;
    bool kv = format == "kv";

    if (c_graph->parsed()) {
      Monomial m = parse_monomial(expr_text, prof);
      int cap = max_degree > 0 ? max_degree : kDefaultWordCap;
      for (const auto& [gamma, s] : graphicate(m, cap)) {
        if (min_len > 0 && gamma.length() < min_len) continue;
        if (max_len > 0 && gamma.length() > max_len) continue;
        if (kv)
          out << "s=" << s.str() << " len=" << gamma.length() << " bracket=" << to_text(gamma)
              << "\n";
        else
          out << s.str() << " " << to_text(gamma) << "\n";
      }
      return 0;
    }

    if (c_symfac->parsed()) {
      Bracketting gamma = parse_bracketting(bracket_text, prof);
      Monomial m = parse_monomial(mono_text, prof);
      int cap = max_degree > 0 ? max_degree : kDefaultWordCap;
      out << symmetry_factor(gamma, m, cap).str() << "\n";
      return 0;
    }

    if (c_comp->parsed()) {
      Bracketting gamma = parse_bracketting(bracket_text, prof);
      auto decomp = connected_components(gamma);
      if (format == "dot") {
        for (const auto& part : decomp.parts) out << to_dot(build_graph(part.bracketting));
        return 0;
      }
      if (kv) {
        out << "components=" << decomp.parts.size() << "\n";
        for (std::size_t i = 0; i < decomp.parts.size(); ++i)
          out << "component=" << i << " support=" << detail::join_labels(decomp.parts[i].support)
              << " bracket=" << to_text(decomp.parts[i].bracketting) << "\n";
      } else {
        out << "components " << decomp.parts.size() << "\n";
        for (std::size_t i = 0; i < decomp.parts.size(); ++i)
          out << i << ": support={" << detail::join_labels(decomp.parts[i].support)
              << "} bracket=" << to_text(decomp.parts[i].bracketting) << "\n";
      }
      return 0;
    }

    if (c_dot->parsed()) {
      Bracketting gamma = parse_bracketting(bracket_text, prof);
      InteractionGraph gr = build_graph(gamma);
      if (gr.mixed_nonlocal_slot)
        err << "warning: a slot mixes a nonlocal generator with other factors\n";
      out << to_dot(gr);
      return 0;
    }

    if (c_eval->parsed() || c_log->parsed()) {
      LinearForm form = load_form_file(form_file, max_degree);
      Polynomial p = parse_polynomial(expr_text, prof);
      Rational v = c_eval->parsed() ? evaluate(form, p) : evaluate(conv_log(form), p);
      out << v.str() << "\n";
      return 0;
    }

    if (c_cum->parsed()) {
      LinearForm form = load_form_file(form_file, max_degree);
      if (inverse && form.unital())
        throw error("--inverse expects an infinitesimal form (cumulants)");
      if (!inverse && !form.unital()) throw error("moments form must be unital");
      LinearForm result = inverse ? conv_exp(form) : conv_log(form);
      for (const auto& [m, v] : form.entries()) {
        Rational value = result.value(m);
        if (kv)
          out << "key=" << to_text(m) << " value=" << value.str() << "\n";
        else
          out << to_text(m) << " = " << value.str() << "\n";
      }
      return 0;
    }

    if (c_lct->parsed()) {
      if (form_file.empty() && lct_seed->count() == 0)
        throw error("lct-check needs --form or --seed");
      Monomial x = parse_monomial(expr_text, prof);
      int bound = std::max(max_degree > 0 ? max_degree : kDefaultDegreeBound, x.degree());
      LinearForm rho = form_file.empty()
                           ? detail::seeded_form(x.mode(), seed, true, bound)
                           : load_form_file(form_file, max_degree);
      auto report = check_combinatorial_lct(rho, x);
      if (kv) {
        out << "connected=" << report.connected_sum.str() << " mobius=" << report.mobius_sum.str()
            << " equal=" << (report.equal ? 1 : 0) << "\n";
      } else {
        out << "connected = " << report.connected_sum.str() << "\n";
        out << "mobius    = " << report.mobius_sum.str() << "\n";
        out << "equal     = " << (report.equal ? "yes" : "no") << "\n";
      }
      return report.equal ? 0 : 2;
    }

    if (c_flct->parsed()) {
      if (form_file.empty() && flct_seed->count() == 0)
        throw error("flct-check needs --form or --seed");
      Polynomial pattern = parse_polynomial(pattern_text, prof);
      AdmissibleFamily fam{pattern};
      int needed = std::max(1, order * fam.pattern_degree());
      int bound = std::max(max_degree > 0 ? max_degree : kDefaultDegreeBound, needed);
      LinearForm tau = [&] {
        if (form_file.empty()) return detail::seeded_form(pattern.mode(), seed, false, bound);
        LinearForm f = load_form_file(form_file, max_degree > 0 ? max_degree : bound);
        return f.unital() ? conv_log(f) : f;
      }();
      auto report = check_functional_lct(tau, fam, order);
      for (int n = 0; n <= order; ++n) {
        auto i = static_cast<std::size_t>(n);
        if (kv)
          out << "order=" << n << " log=" << report.log_moments.coeff[i].str()
              << " connected=" << report.connected.coeff[i].str()
              << " partial=" << report.partial_diagrams[i] << "\n";
        else
          out << "order " << n << ": log = " << report.log_moments.coeff[i].str()
              << ", connected = " << report.connected.coeff[i].str()
              << ", partial diagrams = " << report.partial_diagrams[i] << "\n";
      }
      if (kv)
        out << "equal=" << (report.equal ? 1 : 0) << "\n";
      else
        out << "equal = " << (report.equal ? "yes" : "no") << "\n";
      return report.equal ? 0 : 2;
    }

    if (c_adm->parsed()) {
      Polynomial pattern = parse_polynomial(pattern_text, prof);
      AdmissibleFamily fam{pattern};
      auto report = verify_admissible(fam, max_size);
      if (kv)
        out << "admissible=" << (report.ok ? 1 : 0) << "\n";
      else
        out << "admissible = " << (report.ok ? "yes" : "no") << "\n";
      for (const auto& f : report.failures) out << (kv ? "failure=" : "  ") << f << "\n";
      return report.ok ? 0 : 2;
    }

    err << "error: no subcommand\n";
    return 1;
  } catch (const not_natural_error& e) {
    err << "identity violation: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lce::cli
