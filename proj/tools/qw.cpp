// Command-line front end: algebra inspection, annihilator and module
// computations, the specialized decision procedures, and the regression
// suite. See README.md and docs/ for formats.

#include "qw/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_common(CLI::App* cmd, qw::RunConfig& cfg, bool with_phi = true) {
  cmd->add_option("algebra", cfg.algebra,
                  "catalog name, alias, or path to an .alg file")
      ->required();
  cmd->add_option_function<std::string>(
      "--params",
      [&cfg](const std::string& text) {
        std::istringstream is(text);
        std::string item;
        while (std::getline(is, item, ',')) {
          auto eq = item.find('=');
          if (eq == std::string::npos)
            throw CLI::ValidationError("--params wants NAME=RATIONAL[,NAME=RATIONAL...]");
          cfg.params[item.substr(0, eq)] = qw::parse_rational(item.substr(eq + 1));
        }
      },
      "algebra parameters, e.g. a=0,b=-1 or ell=1/2");
  if (with_phi) {
    cmd->add_option("--phi", cfg.phi_inline, "inline phi, e.g. 'I0=1,I1=-2/3' or 'z=1'");
    cmd->add_option("--phi-file", cfg.phi_file, "phi spec file (JSON; supports rule-based phi)");
  }
  cmd->add_option("--window", cfg.window, "candidate window bound on |grade|")
      ->capture_default_str();
  cmd->add_option("--constraint-window", [&cfg](const CLI::results_t& r) {
    cfg.constraint_window = std::stol(r[0]);
    return true;
  }, "constraint-side window bound (auto-derived when omitted)");
  cmd->add_option("--expect", cfg.expect, "expected verdict; mismatches exit with code 1");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with quasi-Whittaker modules over nonsemisimple Lie algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // accept global options like --format after the subcommand

  qw::RunConfig cfg;
  bool json = false;
  app.add_flag_callback("--format-json", [&] { json = true; });
  app.add_option_function<std::string>(
      "--format", [&](const std::string& f) { json = f == "json"; }, "output format: human | json");

  auto* algebra = app.add_subcommand("algebra", "inspect the built-in catalog");
  auto* alist = algebra->add_subcommand("list", "list catalog algebras");
  auto* ashow = algebra->add_subcommand("show", "show families, brackets and parameters");
  qw::RunConfig show_cfg;
  add_common(ashow, show_cfg, false);

  auto* ann = app.add_subcommand("annihilator", "compute the Whittaker annihilator");
  add_common(ann, cfg);

  auto* crit = app.add_subcommand("criterion", "run the specialized irreducibility criterion");
  add_common(crit, cfg);
  crit->add_option("--r-max", cfg.r_max, "maximal recurrence order")->capture_default_str();
  crit->add_option("--rec-window", cfg.rec_window, "recurrence detection window")
      ->capture_default_str();

  auto* wv = app.add_subcommand("whittaker-vectors", "solve for quasi-Whittaker vectors");
  add_common(wv, cfg);
  wv->add_option("--degree-bound", cfg.degree_bound, "monomial degree bound")
      ->capture_default_str();
  wv->add_flag("--type-free", cfg.type_free, "certify that no other type occurs");

  auto* red = app.add_subcommand("reduce", "constructive descent to a quasi-Whittaker vector");
  add_common(red, cfg);
  red->add_option("--vector", cfg.vector_text, "vector literal, e.g. 'L-1*L-2*w + 2*L-1^2*w'")
      ->required();

  auto* probe = app.add_subcommand("probe", "randomized irreducibility probe");
  add_common(probe, cfg);
  probe->add_option("--degree-bound", cfg.degree_bound, "monomial degree bound")
      ->capture_default_str();
  probe->add_option("--trials", cfg.trials, "number of random vectors")->capture_default_str();
  probe->add_option("--seed", cfg.seed, "random seed (recorded in the report)")
      ->capture_default_str();

  auto* jxi = app.add_subcommand("jxi", "maximal submodule J_xi and the quotient eigenvalue");
  add_common(jxi, cfg);
  jxi->add_option("--xi", cfg.xi, "the scalar xi")->capture_default_str();
  jxi->add_option("--degree-bound", cfg.degree_bound, "spanning degree bound")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify-paper", "run the full regression table");
  verify->add_option("--seed", cfg.seed, "seed for the randomized cases")->capture_default_str();
  verify->add_option("--filter", cfg.filter, "only run cases whose id contains this substring");

  CLI11_PARSE(app, argc, argv);

  if (algebra->parsed()) {
    if (alist->parsed()) {
      cfg.command = "algebra-list";
    } else if (ashow->parsed()) {
      cfg = show_cfg;
      cfg.command = "algebra-show";
    } else {
      std::cerr << "usage: qw algebra list|show\n";
      return 2;
    }
  } else if (ann->parsed()) {
    cfg.command = "annihilator";
  } else if (crit->parsed()) {
    cfg.command = "criterion";
  } else if (wv->parsed()) {
    cfg.command = "whittaker-vectors";
  } else if (red->parsed()) {
    cfg.command = "reduce";
  } else if (probe->parsed()) {
    cfg.command = "probe";
  } else if (jxi->parsed()) {
    cfg.command = "jxi";
  } else if (verify->parsed()) {
    cfg.command = "verify-paper";
  }
  cfg.json = json;

  qw::RunOutcome out = qw::run(cfg);
  std::cout << out.text;
  return out.exit_code;
}
