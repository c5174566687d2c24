#include "hilb/cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hilb/engine.hpp"
#include "hilb/oracle.hpp"

namespace hilb {
namespace {

using nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// class resolution

using AnySpec = std::variant<ClassSpec<Rat>, ClassSpec<Dual>, ClassSpec<PolyY>>;

struct ResolvedClass {
  std::string name;
  AnySpec spec;
  int listed_coeffs = 0;  // file-backed classes: length of the f list
};

std::optional<AnySpec> builtin_spec(const std::string& name) {
  if (name == "trivial") return AnySpec{trivial_class()};
  if (name == "chern") return AnySpec{chern_class()};
  if (name == "todd") return AnySpec{todd_class()};
  if (name == "a_hat") return AnySpec{a_hat_class()};
  if (name == "l_genus") return AnySpec{l_genus_class()};
  if (name == "ch_dual") return AnySpec{ch_dual_class()};
  return std::nullopt;
}

// {"name": ..., "f": ["1/2", ...], "ring": "rationals" | "dual" | "poly_y:d"}
// f lists f_1, f_2, ...; f_0 = 1 is implied.
ResolvedClass load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open spec file '" + path + "'");
  ordered_json j = ordered_json::parse(in);
  if (!j.is_object() || !j.contains("f") || !j["f"].is_array())
    throw std::invalid_argument("spec file must be a JSON object with an \"f\" array");

  std::vector<std::string> raw;
  for (const auto& v : j["f"]) {
    if (!v.is_string())
      throw std::invalid_argument("spec file coefficients must be strings");
    raw.push_back(v.get<std::string>());
  }

  ResolvedClass out;
  out.name = j.value("name", std::string("custom"));
  out.listed_coeffs = static_cast<int>(raw.size());

  std::string ring = j.value("ring", std::string("rationals"));
  if (ring == "rationals") {
    std::vector<Rat> cs;
    for (const auto& s : raw) cs.push_back(parse_ring<Rat>(s));
    out.spec = series_class(out.name, std::move(cs));
  } else if (ring == "dual") {
    std::vector<Dual> cs;
    for (const auto& s : raw) cs.push_back(parse_ring<Dual>(s));
    out.spec = series_class(out.name, std::move(cs));
  } else if (ring.rfind("poly_y:", 0) == 0) {
    const std::string digits = ring.substr(7);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("ring '" + ring + "' needs a numeric bound");
    int bound = std::stoi(digits);
    std::vector<PolyY> cs;
    for (const auto& s : raw) cs.push_back(parse_ring<PolyY>(s, bound));
    out.spec = series_class(out.name, std::move(cs));
  } else {
    throw std::invalid_argument("unknown ring '" + ring + "'");
  }
  return out;
}

ResolvedClass resolve_class(const std::string& cls, const std::string& path) {
  if (!cls.empty() && !path.empty())
    throw std::invalid_argument("give either --class or --spec-file, not both");
  if (!path.empty()) return load_spec_file(path);
  if (cls.empty()) throw std::invalid_argument("a class is required: --class or --spec-file");
  if (auto b = builtin_spec(cls)) return {cls, std::move(*b), 0};
  throw std::invalid_argument("unknown class '" + cls + "'");
}

// ---------------------------------------------------------------------------
// output helpers

template <typename R>
ordered_json tables_json(const std::string& cls, const CoefficientTables<R>& t) {
  ordered_json j;
  j["class"] = cls;
  j["order"] = t.order;
  auto column = [&](const std::vector<R>& v) {
    ordered_json a = ordered_json::array();
    for (int k = 1; k <= t.order; ++k) a.push_back(ring_str(v[k]));
    return a;
  };
  j["a"] = column(t.a);
  j["b"] = column(t.b);
  ordered_json rows = ordered_json::array();
  for (int k = 1; k < t.order; ++k) {
    ordered_json row = ordered_json::array();
    for (int l = 1; k + l <= t.order; ++l) row.push_back(ring_str(t.akl[k][l]));
    rows.push_back(row);
  }
  j["akl"] = rows;
  if (!t.c.empty()) j["c"] = column(t.c);
  return j;
}

template <typename R>
void tables_text(std::ostream& out, const std::string& cls, const std::string& kind,
                 const CoefficientTables<R>& t) {
  out << "class: " << cls << "\n";
  out << "kind: " << kind << "\n";
  out << "order: " << t.order << "\n";
  auto column = [&](const char* label, const std::vector<R>& v) {
    out << label << ":";
    for (int k = 1; k <= t.order; ++k) out << ' ' << ring_str(v[k]);
    out << "\n";
  };
  column("a", t.a);
  column("b", t.b);
  if (!t.c.empty()) column("c", t.c);
  for (int k = 1; k < t.order; ++k) {
    out << "akl[" << k << "]:";
    for (int l = 1; k + l <= t.order; ++l) out << ' ' << ring_str(t.akl[k][l]);
    out << "\n";
  }
}

ordered_json gen_json(const FockGen& g) {
  return ordered_json::array({g.k, g.cls == SurfCls::h ? "h" : "1"});
}

ordered_json gen_json(const FormalGen& g) {
  switch (g.cls) {
    case FormalCls::one: return ordered_json::array({g.k, "1"});
    case FormalCls::canon: return ordered_json::array({g.k, "K"});
    case FormalCls::line: return ordered_json::array({g.k, "F"});
    case FormalCls::diag:
      return ordered_json::array({ordered_json::array({g.k, g.l}), "Q"});
  }
  return {};
}

template <typename R, typename Gen>
void emit_state(std::ostream& out, const State<R, Gen>& s, const std::string& format) {
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& [m, c] : s.terms()) {
      ordered_json mono = ordered_json::array();
      for (const auto& g : m) mono.push_back(gen_json(g));
      ordered_json term;
      term["coeff"] = ring_str(c);
      term["monomial"] = mono;
      arr.push_back(term);
    }
    out << arr.dump(2) << "\n";
    return;
  }
  if (s.terms().empty()) {
    out << "0\n";
    return;
  }
  for (const auto& [m, c] : s.terms()) out << ring_str(c) << ' ' << monomial_str(m) << '\n';
}

// ---------------------------------------------------------------------------
// subcommands

struct CoeffsOpts {
  std::string cls, path;
  int order = 8;
  std::string kind = "tangent";
  std::string format = "text";
};

int do_coeffs(const CoeffsOpts& o, std::ostream& out) {
  if (o.cls == "ch") {
    if (!o.path.empty())
      throw std::invalid_argument("--class ch does not combine with --spec-file");
    if (o.kind != "tangent")
      throw std::invalid_argument("--class ch has exactly one table kind");
    auto t = chern_character_tables(o.order);
    if (o.format == "json")
      out << tables_json("ch", t).dump(2) << "\n";
    else
      tables_text(out, "ch", "ch", t);
    return 0;
  }

  ResolvedClass rc = resolve_class(o.cls, o.path);
  if (rc.listed_coeffs > o.order)
    throw std::invalid_argument("spec file lists coefficients beyond the requested order");
  std::visit(
      [&]<typename R>(const ClassSpec<R>& spec) {
        CoefficientTables<R> t = o.kind == "taut"
                                     ? tautological_coefficients(spec, o.order)
                                     : tangent_coefficients(spec, o.order);
        if (o.format == "json")
          out << tables_json(rc.name, t).dump(2) << "\n";
        else
          tables_text(out, rc.name, o.kind, t);
      },
      rc.spec);
  return 0;
}

struct StateOpts {
  std::string cls, path;
  int n = 0;
  int gamma = 0;
  bool concrete = false;  // set from the --gamma option after parsing
  std::string format = "text";
};

int do_state(const StateOpts& o, bool tautological, std::ostream& out) {
  if (o.cls == "ch") {
    if (tautological) throw std::invalid_argument("'ch' is not a multiplicative class");
    if (!o.path.empty())
      throw std::invalid_argument("--class ch does not combine with --spec-file");
    if (o.concrete)
      emit_state(out, chern_character_state(SurfaceModel(o.gamma), o.n), o.format);
    else
      emit_state(out, chern_character_state_abstract(o.n), o.format);
    return 0;
  }

  ResolvedClass rc = resolve_class(o.cls, o.path);
  if (rc.listed_coeffs > std::max(o.n, 1))
    throw std::invalid_argument("spec file lists coefficients beyond weight n");
  std::visit(
      [&]<typename R>(const ClassSpec<R>& spec) {
        if (tautological) {
          if (o.concrete) {
            // the tautological sheaf of the fibre class h
            CohClass<R> line{R{}, ring_one<R>()};
            emit_state(out, tautological_state(spec, SurfaceModel(o.gamma), line, o.n),
                       o.format);
          } else {
            emit_state(out, tautological_state_abstract(spec, o.n), o.format);
          }
        } else {
          if (o.concrete)
            emit_state(out, tangent_state(spec, SurfaceModel(o.gamma), o.n), o.format);
          else
            emit_state(out, tangent_state_abstract(spec, o.n), o.format);
        }
      },
      rc.spec);
  return 0;
}

struct VerifyOpts {
  std::vector<std::string> checks{"all"};
  std::vector<int> gammas{2, 3};
  std::vector<std::string> classes{"chern", "todd", "a_hat"};
  std::string path;
  int order = 8;
  std::string format = "text";
};

const std::vector<std::string> kAllChecks = {"defw", "readoff", "z2",    "z3",
                                             "dots", "cases",   "dual"};

struct CheckLine {
  std::string check;
  std::optional<std::string> cls;
  std::optional<int> gamma;
  int order;
  CheckReport rep;
};

int do_verify(const VerifyOpts& o, std::ostream& out) {
  for (const auto& c : o.checks)
    if (c != "all" && std::find(kAllChecks.begin(), kAllChecks.end(), c) == kAllChecks.end())
      throw std::invalid_argument("unknown check '" + c + "'");
  const bool all =
      std::find(o.checks.begin(), o.checks.end(), "all") != o.checks.end();
  std::vector<std::string> want;
  for (const auto& c : kAllChecks)
    if (all || std::find(o.checks.begin(), o.checks.end(), c) != o.checks.end())
      want.push_back(c);

  for (int g : o.gammas)
    if (g < 2) throw std::invalid_argument("gamma must be at least 2");

  const bool needs_classes =
      std::any_of(want.begin(), want.end(),
                  [](const std::string& c) { return c != "cases" && c != "dual"; });
  std::vector<ResolvedClass> classes;
  if (needs_classes) {
    for (const auto& name : o.classes) {
      if (auto b = builtin_spec(name))
        classes.push_back({name, std::move(*b), 0});
      else
        throw std::invalid_argument("unknown class '" + name + "'");
    }
    if (!o.path.empty()) classes.push_back(load_spec_file(o.path));
  }

  std::vector<CheckLine> lines;
  for (const auto& rc : classes) {
    std::visit(
        [&]<typename R>(const ClassSpec<R>& spec) {
          if (rc.listed_coeffs > o.order)
            throw std::invalid_argument(
                "spec file lists coefficients beyond the requested order");
          std::map<int, Series<R>> zcache;
          auto zsum = [&](int g) -> const Series<R>& {
            auto it = zcache.find(g);
            if (it == zcache.end()) it = zcache.emplace(g, z_gamma(g, spec, o.order)).first;
            return it->second;
          };
          std::optional<CoefficientTables<R>> tables;
          auto tbl = [&]() -> const CoefficientTables<R>& {
            if (!tables) tables = tangent_coefficients(spec, o.order);
            return *tables;
          };
          for (const auto& chk : want) {
            if (chk == "defw") {
              for (int g : o.gammas)
                lines.push_back({"defw", rc.name, g, o.order,
                                 verify_defw_sum(zsum(g), tbl(), g)});
            } else if (chk == "readoff") {
              lines.push_back({"readoff", rc.name, std::nullopt, o.order,
                               verify_readoff_sums(zsum(2), zsum(3), tbl(), o.order)});
            } else if (chk == "z2") {
              lines.push_back({"z2", rc.name, std::nullopt, o.order,
                               verify_z2_sum(zsum(2), spec)});
            } else if (chk == "z3") {
              lines.push_back({"z3", rc.name, std::nullopt, o.order,
                               verify_z3_sum(zsum(3), spec)});
            } else if (chk == "dots") {
              CheckReport rep{true, ""};
              for (int n = 0; n <= 5 && rep.pass; ++n) {
                rep = verify_dots(spec, n, o.order);
                if (!rep.pass) rep.detail = "n=" + std::to_string(n) + ": " + rep.detail;
              }
              lines.push_back({"dots", rc.name, std::nullopt, o.order, rep});
            }
          }
        },
        rc.spec);
  }
  for (const auto& chk : want) {
    if (chk == "cases")
      lines.push_back({"cases", std::nullopt, std::nullopt, o.order,
                       verify_cases(o.order, o.order)});
    if (chk == "dual")
      lines.push_back({"dual", std::nullopt, std::nullopt, o.order, verify_dual(o.order)});
  }

  bool ok = true;
  for (const auto& l : lines) ok = ok && l.rep.pass;

  if (o.format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& l : lines) {
      ordered_json j;
      j["check"] = l.check;
      if (l.gamma) j["gamma"] = *l.gamma;
      if (l.cls) j["class"] = *l.cls;
      j["order"] = l.order;
      j["pass"] = l.rep.pass;
      j["detail"] = l.rep.detail;
      arr.push_back(j);
    }
    out << arr.dump(2) << "\n";
  } else {
    for (const auto& l : lines) {
      out << "check=" << l.check;
      if (l.gamma) out << " gamma=" << *l.gamma;
      if (l.cls) out << " class=" << *l.cls;
      out << " order=" << l.order << ": ";
      if (l.rep.pass)
        out << "PASS\n";
      else
        out << "FAIL (" << l.rep.detail << ")\n";
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplicative characteristic classes of Hilbert schemes of points",
               "hilb"};
  app.require_subcommand(1);

  CoeffsOpts co;
  StateOpts so, to, cho;
  VerifyOpts vo;

  auto add_class_opts = [](CLI::App* cmd, std::string& cls, std::string& path) {
    cmd->add_option("--class", cls, "Built-in class name");
    cmd->add_option("--spec-file", path, "JSON class description");
  };
  auto add_format_opt = [](CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };

  auto* coeffs = app.add_subcommand(
      "coeffs", "Print coefficient tables (a_k, b_k, a_{k,l}, and c_k for taut)");
  add_class_opts(coeffs, co.cls, co.path);
  coeffs->add_option("--order", co.order, "Top degree of the tables")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();
  coeffs->add_option("--kind", co.kind, "tangent or taut")
      ->check(CLI::IsMember({"tangent", "taut"}))
      ->capture_default_str();
  add_format_opt(coeffs, co.format);

  auto configure_state = [&](CLI::App* cmd, StateOpts& opt, bool with_class) {
    if (with_class) add_class_opts(cmd, opt.cls, opt.path);
    cmd->add_option("--n", opt.n, "Number of points")->required()->check(CLI::Range(0, 24));
    auto* gopt = cmd->add_option("--gamma", opt.gamma,
                                 "Concrete surface: total space of O(-gamma) on P^1");
    auto* aopt = cmd->add_flag("--abstract",
                               "Keep the K and diagonal symbols (the default)");
    gopt->excludes(aopt);
    add_format_opt(cmd, opt.format);
    return gopt;
  };

  auto* state = app.add_subcommand("state", "Print the weight-n tangent class state");
  auto* state_gamma = configure_state(state, so, true);
  auto* taut =
      app.add_subcommand("taut", "Print the weight-n tautological class state");
  auto* taut_gamma = configure_state(taut, to, true);
  auto* chsub =
      app.add_subcommand("ch", "Print the weight-n Chern character of the tangent bundle");
  auto* ch_gamma = configure_state(chsub, cho, false);

  auto* verify = app.add_subcommand("verify", "Run the fixed-point verification suites");
  verify->add_option("--checks", vo.checks, "defw, readoff, z2, z3, dots, cases, dual, all")
      ->delimiter(',')
      ->capture_default_str();
  verify->add_option("--gamma", vo.gammas, "Surface parameters, each >= 2")
      ->delimiter(',');
  verify->add_option("--class", vo.classes, "Classes to verify")->delimiter(',');
  verify->add_option("--spec-file", vo.path, "Additional class from a JSON file");
  verify->add_option("--order", vo.order, "Total degree of the checks")
      ->check(CLI::Range(1, 12))
      ->capture_default_str();
  add_format_opt(verify, vo.format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  so.concrete = state_gamma->count() > 0;
  to.concrete = taut_gamma->count() > 0;
  cho.concrete = ch_gamma->count() > 0;
  cho.cls = "ch";

  try {
    if (coeffs->parsed()) return do_coeffs(co, out);
    if (state->parsed()) return do_state(so, false, out);
    if (taut->parsed()) return do_state(to, true, out);
    if (chsub->parsed()) return do_state(cho, false, out);
    if (verify->parsed()) return do_verify(vo, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace hilb
