#pragma once

// Command-line front end: asdist <series|count|conductor|poles|constant|oracle|compare|disc> [options]
//
// Exit codes: 0 success, 1 compare mismatch, 2 invalid input, 3 consistency
// or precision failure.

#include <gmpxx.h>

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "asdist/counting.hpp"
#include "asdist/dirichlet.hpp"
#include "asdist/errors.hpp"
#include "asdist/field_model.hpp"
#include "asdist/oracle/artin_schreier.hpp"
#include "asdist/tauberian.hpp"

namespace asdist::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kMismatch = 1, kInvalidInput = 2, kConsistency = 3 };

struct JobConfig {
  std::string command;
  std::optional<std::uint64_t> p;
  std::optional<std::uint64_t> q;
  unsigned genus = 0;
  std::string l_poly;  // comma-separated, ascending
  std::string clp_order = "1";
  std::string model_file;
  unsigned r = 1;
  unsigned order = 10;
  unsigned bound = 6;
  unsigned precision_bits = kDefaultPrecisionBits;
  unsigned cutoff = 20;
  std::size_t residue = 0;
  std::string module;
  std::size_t budget = 10'000'000;
  std::string format = "text";
};

namespace detail {

inline json number(const mpz_class& z) {
  if (fits_int64(z)) return z.get_si();
  return z.get_str();
}

inline json number(const mpq_class& x) {
  if (x.get_den() == 1) return number(x.get_num());
  return x.get_str();
}

inline std::vector<mpz_class> parse_int_list(const std::string& text) {
  std::vector<mpz_class> out;
  std::istringstream is(text);
  std::string item;
  while (std::getline(is, item, ',')) {
    mpz_class c;
    if (item.empty() || c.set_str(item, 10) != 0) throw input_error("bad integer '" + item + "' in --l-poly");
    out.push_back(c);
  }
  return out;
}

inline FieldModel build_model(const JobConfig& cfg) {
  if (!cfg.model_file.empty()) return load_model_file(cfg.model_file);
  if (!cfg.q) throw input_error("--q is required (or --model-file)");
  std::uint64_t p = 0;
  if (cfg.p) {
    p = *cfg.p;
  } else {
    for (std::uint64_t d = 2; d <= *cfg.q; ++d)
      if (*cfg.q % d == 0) {
        p = d;
        break;
      }
  }
  mpz_class clp;
  if (clp.set_str(cfg.clp_order, 10) != 0) throw input_error("bad --clp '" + cfg.clp_order + "'");
  return make_field_model(p, *cfg.q, cfg.genus, parse_int_list(cfg.l_poly), clp);
}

inline json model_json(const FieldModel& m) {
  json l = json::array();
  for (const auto& c : m.l_poly()) l.push_back(number(c));
  return {{"p", m.p()}, {"q", m.q()}, {"genus", m.genus()}, {"l_poly", l}, {"clp_order", number(m.clp_order())}};
}

/// Rows of (n, value) or (key, value) pairs, rendered per output format.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string decimal(const Real& x, int digits = 12) { return to_decimal(x, digits); }

struct Report {
  json data = json::array();
  Table table;
  std::vector<std::string> text;  // human-readable lines
};

inline Report series_report(const Series& s) {
  Report r;
  r.table.header = {"n", "value"};
  std::string line;
  for (std::size_t n = 0; n <= s.order(); ++n) {
    r.data.push_back({{"n", n}, {"value", number(s[n])}});
    r.table.rows.push_back({std::to_string(n), s[n].get_str()});
    line += (n ? "," : "") + s[n].get_str();
  }
  r.text.push_back(line);
  return r;
}

inline Report count_table(const std::vector<mpz_class>& values, const std::string& label) {
  Report r;
  r.table.header = {"n", label};
  for (std::size_t n = 0; n < values.size(); ++n) {
    r.data.push_back({{"n", n}, {label, number(values[n])}});
    r.table.rows.push_back({std::to_string(n), values[n].get_str()});
    r.text.push_back(label + "(" + std::to_string(n) + ") = " + values[n].get_str());
  }
  return r;
}

inline void add_kv(Report& r, const std::string& key, const json& value, const std::string& shown) {
  r.data.push_back({{"key", key}, {"value", value}});
  r.table.rows.push_back({key, shown});
  r.text.push_back(key + ": " + shown);
}

inline std::string fraction_list(const std::vector<mpq_class>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + xs[i].get_str();
  return s;
}

inline json fraction_json(const std::vector<mpq_class>& xs) {
  json a = json::array();
  for (const auto& x : xs) a.push_back(x.get_str());
  return a;
}

inline Report poles_report(const FieldModel& model, const JobConfig& cfg) {
  const auto rep = pole_analysis(model.p(), cfg.r, model.q());
  Report r;
  r.table.header = {"key", "value"};
  PrecisionScope scope(cfg.precision_bits);
  add_kv(r, "abscissa", rep.abscissa.get_str(), rep.abscissa.get_str());
  add_kv(r, "radius", decimal(rep.radius(), 20), "q^-" + rep.abscissa.get_str() + " = " + decimal(rep.radius(), 20));
  add_kv(r, "log_order", rep.log_order, std::to_string(rep.log_order));
  add_kv(r, "progression", rep.progression, std::to_string(rep.progression));
  add_kv(r, "max_order_angles", fraction_json(rep.max_order_angles), fraction_list(rep.max_order_angles));
  add_kv(r, "all_angles", fraction_json(rep.all_angles), fraction_list(rep.all_angles));
  std::ostringstream lambda;
  lambda << lambda_rational(model, model.p(), cfg.r);
  add_kv(r, "lambda", lambda.str(), lambda.str());
  return r;
}

inline Report constant_report(const FieldModel& model, const GroupSpec& group, const JobConfig& cfg) {
  Report r;
  r.table.header = {"key", "value"};
  const auto poles = pole_analysis(group.p, group.r, model.q());
  const std::size_t residue = cfg.residue ? cfg.residue : poles.progression;
  const AsymptoticEstimate generic = tauberian_constant(model, group, cfg.cutoff, residue, cfg.precision_bits);
  PrecisionScope scope(cfg.precision_bits);
  add_kv(r, "exponent", generic.exponent.get_str(), generic.exponent.get_str());
  add_kv(r, "log_power", generic.log_order - 1, std::to_string(generic.log_order - 1));
  add_kv(r, "progression", {generic.progression, generic.residue},
         std::to_string(generic.residue) + " mod " + std::to_string(generic.progression));
  std::optional<Real> closed_value;
  try {
    const AddendumConstant closed = addendum_constants(model, group, cfg.cutoff, cfg.precision_bits);
    closed_value = closed.estimate.constant;
    if (closed.estimate.exact_constant) {
      const auto& c = *closed.estimate.exact_constant;
      add_kv(r, "closed_form", number(c), c.get_str());
    } else {
      const std::string shown = decimal(closed.estimate.constant, 15) + " (= " + closed.rational_part.get_str() +
                                " * " + decimal(closed.euler_product, 15) + " * log(q)^" +
                                std::to_string(closed.log_q_power) + ", error <= " + decimal(closed.error_bound, 3) + ")";
      add_kv(r, "closed_form", decimal(closed.estimate.constant, 15), shown);
      add_kv(r, "closed_form_error_bound", decimal(closed.error_bound, 6), decimal(closed.error_bound, 6));
    }
  } catch (const unsupported_input& e) {
    add_kv(r, "closed_form", nullptr, std::string("unavailable (") + e.what() + ")");
  }
  std::ostringstream fixed;
  fixed << std::fixed << std::setprecision(6) << generic.constant;
  add_kv(r, "tauberian", decimal(generic.constant, 15), fixed.str());
  if (closed_value) {
    const Real delta = boost::multiprecision::abs(generic.constant - *closed_value) / boost::multiprecision::abs(*closed_value);
    add_kv(r, "relative_delta", decimal(delta, 3), decimal(delta, 3));
  }
  return r;
}

inline Report disc_report(const FieldModel& model, const GroupSpec& group, const JobConfig& cfg) {
  const auto v = discriminant_view(model, group, cfg.order);
  Report r;
  r.table.header = {"key", "value"};
  add_kv(r, "a_p", v.exponents.lower.get_str(), v.exponents.lower.get_str());
  add_kv(r, "d_p", v.exponents.upper.get_str(), v.exponents.upper.get_str());
  add_kv(r, "malle", v.exponents.malle.get_str(), v.exponents.malle.get_str());
  add_kv(r, "comparison_numerator", number(v.exponents.comparison_numerator), v.exponents.comparison_numerator.get_str());
  add_kv(r, "comparison_sign", v.exponents.comparison_sign, std::to_string(v.exponents.comparison_sign));
  add_kv(r, "statement", v.statement, v.statement);
  if (v.exact_counts) {
    json z = json::array();
    std::string shown;
    for (std::size_t n = 0; n < v.exact_counts->size(); ++n) {
      z.push_back(number((*v.exact_counts)[n]));
      shown += (n ? "," : "") + (*v.exact_counts)[n].get_str();
    }
    add_kv(r, "Z", z, shown);
  }
  return r;
}

inline void emit(std::ostream& out, const JobConfig& cfg, const std::optional<FieldModel>& model, const GroupSpec& group,
                 const Report& rep, unsigned order_meta) {
  if (cfg.format == "json") {
    json doc;
    doc["command"] = cfg.command;
    doc["model"] = model ? model_json(*model) : json{{"p", group.p}, {"q", *cfg.q}, {"genus", 0}};
    doc["group"] = {{"p", group.p}, {"r", group.r}};
    doc["data"] = rep.data;
    doc["meta"] = {{"order", order_meta}, {"precision_bits", cfg.precision_bits}};
    out << doc.dump(2) << '\n';
  } else if (cfg.format == "tsv") {
    for (std::size_t i = 0; i < rep.table.header.size(); ++i) out << (i ? "\t" : "") << rep.table.header[i];
    out << '\n';
    for (const auto& row : rep.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "\t" : "") << row[i];
      out << '\n';
    }
  } else {
    for (const auto& line : rep.text) out << line << '\n';
  }
}

inline void check_counts(const Series& s) {
  for (std::size_t n = 0; n <= s.order(); ++n)
    if (s[n].get_den() != 1 || s[n] < 0)
      throw consistency_error("coefficient " + std::to_string(n) + " = " + s[n].get_str() +
                              " is not a nonnegative integer");
}

inline int dispatch(const JobConfig& cfg, std::ostream& out) {
  if (cfg.command == "oracle" || cfg.command == "compare") {
    if (!cfg.q) throw input_error("--q is required");
    const std::uint64_t q = *cfg.q;
    const FieldModel model = rational_function_field(cfg.p ? *cfg.p : build_model(cfg).p(), q);
    if (cfg.genus != 0 || !cfg.model_file.empty()) throw input_error("the oracle covers the rational function field only");
    const GroupSpec group = subgroup_count_poly(model.p(), cfg.r);
    const auto oracle = oracle::oracle_count(q, model.p(), cfg.r, cfg.bound, cfg.budget);
    if (cfg.command == "oracle") {
      emit(out, cfg, model, group, count_table(oracle, "c"), cfg.bound);
      return kOk;
    }
    const Series s = phi_series(model, group, cfg.bound);
    check_counts(s);
    Report r;
    r.table.header = {"n", "oracle", "series", "match"};
    std::size_t relevant = 0, matched = 0;
    for (std::size_t n = 0; n <= cfg.bound; ++n) {
      const mpz_class series_value = s[n].get_num();
      const bool ok = series_value == oracle[n];
      if (oracle[n] != 0 || series_value != 0) {
        ++relevant;
        if (ok) ++matched;
      }
      r.data.push_back({{"n", n}, {"oracle", number(oracle[n])}, {"series", number(series_value)}, {"match", ok}});
      r.table.rows.push_back({std::to_string(n), oracle[n].get_str(), series_value.get_str(), ok ? "1" : "0"});
      if (!ok) r.text.push_back("mismatch at n=" + std::to_string(n) + ": oracle " + oracle[n].get_str() + ", series " +
                                series_value.get_str());
    }
    const bool all = matched == relevant;
    r.text.push_back(std::string(all ? "match " : "MISMATCH ") + std::to_string(matched) + "/" +
                     std::to_string(relevant) + " degrees");
    emit(out, cfg, model, group, r, cfg.bound);
    return all ? kOk : kMismatch;
  }

  const FieldModel model = build_model(cfg);
  const GroupSpec group = subgroup_count_poly(model.p(), cfg.r);
  if (cfg.command == "series") {
    const Series s = phi_series(model, group, cfg.order);
    check_counts(s);
    emit(out, cfg, model, group, series_report(s), cfg.order);
  } else if (cfg.command == "count") {
    emit(out, cfg, model, group, count_table(counting_function(model, group, cfg.order), "C"), cfg.order);
  } else if (cfg.command == "conductor") {
    const DivisorModule m = DivisorModule::parse(cfg.module);
    const mpz_class c = conductor_count(model, group, m);
    Report r;
    r.table.header = {"module", "degree", "count"};
    r.data.push_back({{"module", m.to_string()}, {"degree", m.degree()}, {"count", number(c)}});
    r.table.rows.push_back({m.to_string(), std::to_string(m.degree()), c.get_str()});
    r.text.push_back("c(" + m.to_string() + ") = " + c.get_str());
    emit(out, cfg, model, group, r, static_cast<unsigned>(m.degree()));
  } else if (cfg.command == "poles") {
    emit(out, cfg, model, group, poles_report(model, cfg), 0);
  } else if (cfg.command == "constant") {
    emit(out, cfg, model, group, constant_report(model, group, cfg), cfg.cutoff);
  } else if (cfg.command == "disc") {
    emit(out, cfg, model, group, disc_report(model, group, cfg), cfg.order);
  } else {
    throw input_error("unknown command '" + cfg.command + "'");
  }
  return kOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Counting elementary abelian p-extensions of global function fields by conductor"};
  app.require_subcommand(1);
  JobConfig cfg;

  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "characteristic (defaults to the prime dividing q)");
    sub->add_option("--q", cfg.q, "size of the constant field");
    sub->add_option("--genus", cfg.genus, "genus of F")->capture_default_str();
    sub->add_option("--l-poly", cfg.l_poly, "L-polynomial coefficients, ascending, comma-separated");
    sub->add_option("--clp", cfg.clp_order, "order of Cl^0(F)[p]")->capture_default_str();
    sub->add_option("--model-file", cfg.model_file, "key=value model description");
    sub->add_option("--r", cfg.r, "rank r of G = C_p^r")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--format", cfg.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"json", "tsv", "text"}));
    sub->add_option("--precision", cfg.precision_bits, "working precision in bits")
        ->capture_default_str()
        ->check(CLI::Range(64u, 1u << 16));
  };

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {{"series", "coefficients of the conductor Dirichlet series"},
                        {"count", "partial sums C(F,G;q^n)"},
                        {"conductor", "number of extensions with an explicit conductor"},
                        {"poles", "pole report of Lambda_r"},
                        {"constant", "asymptotic constant, closed form and Tauberian"},
                        {"oracle", "brute-force counts over F_q(x)"},
                        {"compare", "oracle versus series, nonzero exit on mismatch"},
                        {"disc", "discriminant view and exponent comparison"}};
  for (const auto& s : commands) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_model(sub);
    const std::string name = s.name;
    if (name == "series" || name == "count" || name == "disc")
      sub->add_option("--order", cfg.order, "truncation order")->capture_default_str();
    if (name == "oracle" || name == "compare") {
      sub->add_option("--bound", cfg.bound, "conductor degree bound")->capture_default_str();
      sub->add_option("--budget", cfg.budget, "enumeration budget")->capture_default_str();
    }
    if (name == "constant") {
      sub->add_option("--cutoff", cfg.cutoff, "Euler product degree cutoff")->capture_default_str()->check(CLI::PositiveNumber);
      sub->add_option("--residue", cfg.residue, "progression class n mod l (0 = l)")->capture_default_str();
    }
    if (name == "conductor") sub->add_option("--module", cfg.module, "module, e.g. 1.0^2*2.0^3")->required();
    sub->callback([&cfg, name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }
  try {
    return detail::dispatch(cfg, out);
  } catch (const input_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const budget_exceeded& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const consistency_error& e) {
    err << "consistency failure: " << e.what() << '\n';
    return kConsistency;
  } catch (const precision_error& e) {
    err << "precision failure: " << e.what() << '\n';
    return kConsistency;
  }
}

}  // namespace asdist::cli
