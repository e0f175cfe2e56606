#include "ncdiff/cli.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncdiff/bell.hpp"
#include "ncdiff/darboux.hpp"
#include "ncdiff/division.hpp"
#include "ncdiff/format.hpp"
#include "ncdiff/parser.hpp"

namespace ncdiff {

namespace {

using nlohmann::json;

// Bad flag values that CLI11 cannot see on its own; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string ring = "free";
  std::string gens = "s";
  int dim = 1;
  int x_order = 16;
  int t_order = 0;
  bool json = false;
  std::vector<std::string> binds;

  std::string side;
  std::optional<int> n;
  std::optional<int> k;
  std::string s = "s";
  std::string file;
  std::string phi;
  std::string phi0;
  std::string psi0;
  bool audit = false;
  std::string reading = "after-k";
};

template <DifferentialRing R>
struct Realization {
  R unit;
  std::function<R(const std::string&, bool)> lookup;
};

std::string show(const FreeElement& a) { return format_element(a); }
std::string show(const MatrixJet& a) { return format_jet(a); }
std::string show(const DiffOperator<FreeElement>& op) { return format_operator(op); }
std::string show(const DiffOperator<MatrixJet>& op) { return format_jet_operator(op); }

// "label: value" for one-line values, "label:" followed by the block otherwise.
void emit(std::ostream& out, const std::string& label, std::string value) {
  if (!value.empty() && value.back() == '\n') value.pop_back();
  if (value.find('\n') == std::string::npos) {
    out << label << ": " << value << '\n';
  } else {
    out << label << ":\n" << value << '\n';
  }
}

void emit_json(std::ostream& out, const json& value) { out << value.dump(2) << '\n'; }

SessionConfig make_config(const Options& opt) {
  SessionConfig config;
  if (opt.ring == "free") {
    config.ring_mode = RingMode::free;
  } else if (opt.ring == "jet") {
    config.ring_mode = RingMode::jet;
  } else {
    config.ring_mode = RingMode::bijet;
  }
  config.generators.clear();
  std::stringstream list(opt.gens);
  std::string name;
  while (std::getline(list, name, ',')) {
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) continue;
    const bool ident = (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_') &&
                       std::all_of(name.begin(), name.end(),
                                   [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
    if (!ident || name == "D" || name == "D0" || name == "e")
      throw UsageError("invalid generator name '" + name + "'");
    config.generators.push_back(name);
  }
  if (config.generators.empty()) throw UsageError("--gens declares no generators");
  config.matrix_dim = opt.dim;
  config.x_order = opt.x_order;
  config.t_order = opt.t_order;
  config.json = opt.json;
  try {
    config.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return config;
}

std::map<std::string, std::filesystem::path> parse_binds(const Options& opt, const SessionConfig& config) {
  std::map<std::string, std::filesystem::path> out;
  for (const auto& bind : opt.binds) {
    const auto eq = bind.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == bind.size())
      throw UsageError("--bind expects name=file, got '" + bind + "'");
    const std::string name = bind.substr(0, eq);
    if (!config.declares(name)) throw UsageError("--bind names undeclared generator '" + name + "'");
    out[name] = bind.substr(eq + 1);
  }
  return out;
}

Realization<FreeElement> free_realization() {
  return {FreeElement::one(), [](const std::string& name, bool star) {
            auto g = FreeElement::generator(name);
            return star ? conjugate(g) : g;
          }};
}

Realization<MatrixJet> jet_realization(const SessionConfig& config,
                                       const std::map<std::string, std::filesystem::path>& binds) {
  std::map<std::string, MatrixJet> values;
  for (const auto& [name, path] : binds) values[name] = parse_jet(path, config);
  MatrixJet unit = MatrixJet::identity(config.matrix_dim);
  if (config.ring_mode == RingMode::bijet) unit = unit.lift_t(config.t_order);
  return {unit, [values = std::move(values)](const std::string& name, bool star) {
            auto it = values.find(name);
            if (it == values.end()) throw Error("generator '" + name + "' has no --bind value in jet mode");
            return star ? conjugate(it->second) : it->second;
          }};
}

template <DifferentialRing R>
R element(const std::string& text, const SessionConfig& config, const Realization<R>& real) {
  return evaluate(*parse_expr(text, config), real.unit, real.lookup);
}

template <DifferentialRing R>
DiffOperator<R> load_operator(const std::string& file, const SessionConfig& config, const Realization<R>& real) {
  return build_operator(parse_operator(file, config), real.unit, real.lookup);
}

Side side_of(const std::string& text) { return text == "left" ? Side::left : Side::right; }

template <DifferentialRing R>
int cmd_bell(const Options& opt, const SessionConfig& config, const Realization<R>& real, std::ostream& out) {
  const BellTable<R> table(element(opt.s, config, real));
  const int n = *opt.n;
  const std::string side = opt.side.empty() ? "left" : opt.side;
  const R* value = nullptr;
  if (side == "left") {
    value = &table.left(n);
  } else if (side == "right") {
    value = &table.right(n);
  } else {
    if (!opt.k) throw UsageError("bell --side gen needs --k");
    value = &table.gen(n, *opt.k);
  }
  if (config.json) {
    emit_json(out, to_json(*value));
  } else {
    out << show(*value);
    if (show(*value).back() != '\n') out << '\n';
  }
  return 0;
}

template <DifferentialRing R>
int cmd_divide(const Options& opt, const SessionConfig& config, const Realization<R>& real, std::ostream& out) {
  const auto l = load_operator(opt.file, config, real);
  const BellTable<R> table(element(opt.s, config, real));
  const auto outcome = divide(l, table, side_of(opt.side));
  if (config.json) {
    emit_json(out, json{{"quotient", to_json(outcome.quotient)},
                        {"remainder", to_json(outcome.remainder)},
                        {"exact", outcome.exact}});
  } else {
    emit(out, "quotient", show(outcome.quotient));
    emit(out, "remainder", show(outcome.remainder));
  }
  return 0;
}

template <DifferentialRing R>
int cmd_factor_check(const Options& opt, const SessionConfig& config, const Realization<R>& real,
                     std::ostream& out) {
  const auto l = load_operator(opt.file, config, real);
  const Side side = side_of(opt.side);
  if (!opt.phi.empty()) {
    if constexpr (std::is_same_v<R, MatrixJet>) {
      const auto fact = factor_from_kernel(l, parse_jet(opt.phi, config), side);
      if (config.json) {
        emit_json(out, json{{"s", to_json(fact.s)},
                            {"quotient", to_json(fact.outcome.quotient)},
                            {"remainder", to_json(fact.outcome.remainder)}});
      } else {
        emit(out, "s", show(fact.s));
        emit(out, "quotient", show(fact.outcome.quotient));
        emit(out, "remainder", show(fact.outcome.remainder));
      }
      return 0;
    } else {
      throw UsageError("--phi needs --ring jet or bijet");
    }
  }
  const R residual = riccati_residual(l, element(opt.s, config, real), side);
  const bool factors = is_zero(residual);
  if (config.json) {
    emit_json(out, json{{"riccati", to_json(residual)}, {"factorizes", factors}});
  } else {
    emit(out, "riccati", show(residual));
    emit(out, "factorizes", factors ? "yes" : "no");
  }
  return 0;
}

template <DifferentialRing R>
int cmd_darboux(const Options& opt, const SessionConfig& config, const Realization<R>& real, std::ostream& out) {
  const auto l = load_operator(opt.file, config, real);
  const BellTable<R> table(element(opt.s, config, real));
  const auto outcome = darboux_transform(l, table);
  std::optional<CoefficientAudit<R>> audit;
  if (opt.audit)
    audit = transformed_coefficients(l, table,
                                     opt.reading == "from-k" ? BoundaryReading::from_k : BoundaryReading::after_k);

  if (config.json) {
    json doc{{"transformed", to_json(outcome.transformed)}, {"burgers", to_json(outcome.burgers_rhs)}};
    if (audit) {
      json report{{"consistent", !audit->discrepancy.has_value()}};
      if (audit->discrepancy) {
        report["index"] = audit->discrepancy->index;
        report["printed"] = to_json(audit->discrepancy->printed);
        report["expected"] = to_json(audit->discrepancy->expected);
        report["difference"] = to_json(audit->discrepancy->difference);
      }
      doc["audit"] = report;
    }
    emit_json(out, doc);
    return 0;
  }

  if constexpr (std::is_same_v<R, FreeElement>) {
    out << format_coefficient_list(outcome.transformed) << '\n';
  } else {
    emit(out, "transformed", show(outcome.transformed));
  }
  emit(out, "burgers", show(outcome.burgers_rhs));
  if (audit) {
    if (!audit->discrepancy) {
      out << "audit: consistent\n";
    } else {
      const auto& d = *audit->discrepancy;
      out << "audit: a[" << d.index << "] differs\n";
      emit(out, "printed", show(d.printed));
      emit(out, "expected", show(d.expected));
      emit(out, "difference", show(d.difference));
    }
  }
  return 0;
}

template <DifferentialRing R>
int cmd_burgers(const Options& opt, const SessionConfig& config, const Realization<R>& real, std::ostream& out) {
  const auto l = load_operator(opt.file, config, real);
  const R rhs = burgers_rhs(l, element(opt.s, config, real));
  if (config.json) {
    emit_json(out, to_json(rhs));
  } else {
    out << show(rhs);
    if (show(rhs).back() != '\n') out << '\n';
  }
  return 0;
}

// propagate and verify-matveev always work on plain x-jets.
SessionConfig plain_jet(SessionConfig config) {
  config.ring_mode = RingMode::jet;
  return config;
}

int cmd_propagate(const Options& opt, const SessionConfig& base, std::ostream& out) {
  const SessionConfig config = plain_jet(base);
  const auto real = jet_realization(config, parse_binds(opt, config));
  const auto l = load_operator(opt.file, config, real);
  const MatrixJet phi = time_propagate(l, parse_jet(opt.phi0, config), config.t_order);
  if (config.json) {
    emit_json(out, to_json(phi));
  } else {
    out << show(phi);
    if (show(phi).back() != '\n') out << '\n';
  }
  return 0;
}

int cmd_verify_matveev(const Options& opt, const SessionConfig& base, std::ostream& out, std::ostream& err) {
  const SessionConfig config = plain_jet(base);
  const auto real = jet_realization(config, parse_binds(opt, config));
  const auto l = load_operator(opt.file, config, real);
  const auto report =
      matveev_verify(l, parse_jet(opt.phi0, config), parse_jet(opt.psi0, config), config.t_order);
  if (config.json) {
    emit_json(out, json{{"transformed", to_json(report.transformed)},
                        {"residual_zero", report.residual_zero},
                        {"burgers_zero", report.burgers_zero}});
  } else {
    emit(out, "transformed", show(report.transformed));
    emit(out, "residual", report.residual_zero ? "zero" : "nonzero");
    emit(out, "burgers", report.burgers_zero ? "zero" : "nonzero");
  }
  if (report.residual_zero && report.burgers_zero) return 0;
  err << "error: Matveev residual does not vanish on the valid range\n";
  return 1;
}

template <typename F>
int dispatch(const Options& opt, const SessionConfig& config, F&& body) {
  if (config.ring_mode == RingMode::free) {
    if (!opt.binds.empty()) throw UsageError("--bind needs --ring jet or bijet");
    return body(free_realization());
  }
  return body(jet_realization(config, parse_binds(opt, config)));
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Noncommutative differential operator toolkit", "ncdiff"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--ring", opt.ring, "free, jet or bijet")->check(CLI::IsMember({"free", "jet", "bijet"}));
  app.add_option("--gens", opt.gens, "comma-separated generator names");
  app.add_option("--dim", opt.dim, "matrix size in jet modes");
  app.add_option("--x-order", opt.x_order, "x truncation order in jet modes");
  app.add_option("--t-order", opt.t_order, "t truncation order");
  app.add_flag("--json", opt.json, "machine-readable output");
  app.add_option("--bind", opt.binds, "name=jetfile, generator value in jet modes");

  auto add_operator_file = [&](CLI::App* sub) {
    sub->add_option("operator", opt.file, "operator file")->required()->check(CLI::ExistingFile);
  };
  auto add_s = [&](CLI::App* sub) { sub->add_option("--s", opt.s, "expression for s (default: s)"); };
  auto add_side = [&](CLI::App* sub, std::vector<std::string> sides) {
    sub->add_option("--side", opt.side, "division side")->check(CLI::IsMember(std::move(sides)));
  };

  auto* bell = app.add_subcommand("bell", "print a Bell polynomial");
  add_side(bell, {"left", "right", "gen"});
  bell->add_option("--n", opt.n, "first index")->required();
  bell->add_option("--k", opt.k, "second index (gen)");
  add_s(bell);

  auto* div = app.add_subcommand("divide", "divide an operator by D - s");
  add_side(div, {"left", "right"});
  add_operator_file(div);
  add_s(div);

  auto* fc = app.add_subcommand("factor-check", "check the Riccati condition or factor from a kernel element");
  add_side(fc, {"left", "right"});
  add_operator_file(fc);
  add_s(fc);
  fc->add_option("--phi", opt.phi, "jet file of a kernel element")->check(CLI::ExistingFile);

  auto* dbx = app.add_subcommand("darboux", "Darboux transform of an operator");
  add_operator_file(dbx);
  add_s(dbx);
  dbx->add_flag("--audit", opt.audit, "audit the closed coefficient formula");
  dbx->add_option("--reading", opt.reading, "where the audited sum starts: after-k (default) or from-k")
      ->check(CLI::IsMember({"after-k", "from-k"}));

  auto* bur = app.add_subcommand("burgers", "right-hand side of the Burgers flow");
  add_operator_file(bur);
  add_s(bur);

  auto* prop = app.add_subcommand("propagate", "Taylor-propagate D0 phi = L phi");
  add_operator_file(prop);
  prop->add_option("--phi0", opt.phi0, "initial jet file")->required()->check(CLI::ExistingFile);

  auto* mat = app.add_subcommand("verify-matveev", "check the Matveev transform on jets");
  add_operator_file(mat);
  mat->add_option("--phi0", opt.phi0, "initial jet of phi")->required()->check(CLI::ExistingFile);
  mat->add_option("--psi0", opt.psi0, "initial jet of psi")->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    const SessionConfig config = make_config(opt);
    if (opt.side.empty() && !bell->parsed()) opt.side = "right";
    auto run = [&](auto body) { return dispatch(opt, config, body); };

    if (bell->parsed()) return run([&](const auto& real) { return cmd_bell(opt, config, real, out); });
    if (div->parsed()) return run([&](const auto& real) { return cmd_divide(opt, config, real, out); });
    if (fc->parsed()) return run([&](const auto& real) { return cmd_factor_check(opt, config, real, out); });
    if (dbx->parsed()) return run([&](const auto& real) { return cmd_darboux(opt, config, real, out); });
    if (bur->parsed()) return run([&](const auto& real) { return cmd_burgers(opt, config, real, out); });
    if (prop->parsed()) return cmd_propagate(opt, config, out);
    if (mat->parsed()) return cmd_verify_matveev(opt, config, out, err);
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ncdiff
