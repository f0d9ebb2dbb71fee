// Command-line front end for the Herbrand engine: parsing, Skolemization,
// champ fini / expansion inspection, Property C checking, the semi-decision
// loop, derivation building and verification, and rules of passage.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "herbrand/fundamental.hpp"
#include "herbrand/polarity.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

herbrand::FormulaPtr read_formula(const std::string& path) {
  return herbrand::parse(slurp(path));
}

std::size_t atom_budget_default() {
  if (const char* env = std::getenv("HERBRAND_ATOM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    std::cerr << "ignoring malformed HERBRAND_ATOM_BUDGET='" << env << "'\n";
  }
  return herbrand::kDefaultAtomBudget;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace herbrand;

  CLI::App app{"Herbrand engine: Property C, linear derivations, and the "
               "modus-ponens-free calculus"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string proof_path;
  std::string out_path;
  int order = 1;
  int max_order = 5;
  std::size_t budget = atom_budget_default();
  std::string format = "text";
  std::string direction = "prenex";
  bool normalize = false;
  bool historic = false;

  auto add_formula_arg = [&](CLI::App* sub) {
    sub->add_option("input", input, "formula file, or '-' for stdin")
        ->default_val("-");
  };

  auto* cmd_parse = app.add_subcommand("parse", "parse and print rectified");
  add_formula_arg(cmd_parse);

  auto* cmd_skolem =
      app.add_subcommand("skolemize", "print the outer Skolemized form");
  add_formula_arg(cmd_skolem);

  auto* cmd_champ = app.add_subcommand("champ", "print the champ fini");
  add_formula_arg(cmd_champ);
  cmd_champ->add_option("--order", order, "order n (terms of height < n)")
      ->required();

  auto* cmd_expand = app.add_subcommand("expand", "print the expansion");
  add_formula_arg(cmd_expand);
  cmd_expand->add_option("--order", order, "order n")->required();

  auto* cmd_checkc =
      app.add_subcommand("check-c", "test Property C at a given order");
  add_formula_arg(cmd_checkc);
  cmd_checkc->add_option("--order", order, "order n")->required();
  cmd_checkc->add_option("--atom-budget", budget, "expansion atom budget");
  cmd_checkc->add_option("--format", format, "text|record");

  auto* cmd_prove = app.add_subcommand("prove", "semi-decision loop");
  add_formula_arg(cmd_prove);
  cmd_prove->add_option("--max-order", max_order, "orders to try")->required();
  cmd_prove->add_option("--atom-budget", budget, "expansion atom budget");
  cmd_prove->add_option("-o,--out", out_path, "derivation output file");

  auto* cmd_derive =
      app.add_subcommand("derive", "build a derivation at a given order");
  add_formula_arg(cmd_derive);
  cmd_derive->add_option("--order", order, "order n")->required();
  cmd_derive->add_option("-o,--out", out_path, "derivation output file");

  auto* cmd_verify = app.add_subcommand("verify", "check a derivation file");
  cmd_verify->add_option("prooffile", proof_path, "derivation file")
      ->required();
  cmd_verify->add_flag("--historic", historic, "reject conjunction");

  auto* cmd_bound =
      app.add_subcommand("bound", "order bound of a checked derivation");
  cmd_bound->add_option("prooffile", proof_path, "derivation file")
      ->required();

  auto* cmd_passage = app.add_subcommand("passage", "apply rules of passage");
  add_formula_arg(cmd_passage);
  cmd_passage->add_option("--direction", direction, "prenex|antiprenex")
      ->check(CLI::IsMember({"prenex", "antiprenex"}));
  cmd_passage->add_flag("--normalize", normalize,
                        "repeat until no redex remains");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_parse->parsed()) {
      std::cout << print(read_formula(input)) << "\n";
      return 0;
    }
    if (cmd_skolem->parsed()) {
      std::cout << print(outer_skolemize(read_formula(input))) << "\n";
      return 0;
    }
    if (cmd_champ->parsed()) {
      ChampFini c = champ_fini(order, outer_skolemize(read_formula(input)));
      for (auto& t : c.terms) std::cout << print(t) << "\n";
      return 0;
    }
    if (cmd_expand->parsed()) {
      FormulaPtr f = outer_skolemize(read_formula(input));
      ChampFini c = champ_fini(order, f);
      std::cout << print(expand(f, c.terms)) << "\n";
      return 0;
    }
    if (cmd_checkc->parsed()) {
      PropertyCReport r = check_property_c(read_formula(input), order, budget);
      if (format == "record") {
        std::cout << report_record(r);
      } else {
        std::cout << "order: " << r.order << "\n"
                  << "skolemized: " << print(r.skolemized) << "\n"
                  << "champ:";
        for (auto& t : r.champ.terms) std::cout << ' ' << print(t);
        std::cout << "\natoms: " << r.atom_count << "\n"
                  << "verdict: " << (r.verdict ? "true" : "false") << "\n";
      }
      return r.verdict ? 0 : 1;
    }
    if (cmd_prove->parsed()) {
      ProveOutcome out = prove(read_formula(input), max_order, budget);
      if (out.resource_limited) {
        std::cerr << "resource limit: " << out.limit_detail << "\n";
        return 3;
      }
      if (!out.found) {
        std::cerr << "exhausted: no Property C up to order " << max_order
                  << "\n";
        return 2;
      }
      std::cerr << "found: Property C at order " << out.order << "\n";
      write_output(out_path, write_derivation(*out.derivation));
      return 0;
    }
    if (cmd_derive->parsed()) {
      Derivation d = build_derivation(read_formula(input), order);
      write_output(out_path, write_derivation(d));
      return 0;
    }
    if (cmd_verify->parsed()) {
      Derivation d = read_derivation(slurp(proof_path));
      Verdict v = check(d, historic);
      if (v.accepted) {
        std::cout << "accepted\n";
        return 0;
      }
      std::cout << "rejected step=" << v.step << " reason="
                << (v.reason ? to_string(*v.reason) : std::string("unknown"))
                << "\n";
      std::cerr << v.detail << "\n";
      return 1;
    }
    if (cmd_bound->parsed()) {
      Derivation d = read_derivation(slurp(proof_path));
      Verdict v = check(d);
      if (!v.accepted) {
        std::cerr << "derivation rejected at step " << v.step << ": "
                  << v.detail << "\n";
        return 1;
      }
      std::cout << lemma4_bound(d) << "\n";
      return 0;
    }
    if (cmd_passage->parsed()) {
      FormulaPtr f = read_formula(input);
      PassageDirection dir = direction == "prenex" ? PassageDirection::Prenex
                                                   : PassageDirection::Antiprenex;
      if (normalize) {
        std::cout << print(passage_normalize(f, dir).result) << "\n";
      } else {
        auto redex = find_passage_redex(f, dir);
        if (!redex) {
          std::cerr << "no passage redex\n";
          return 1;
        }
        std::cout << print(apply_passage(f, redex->first, redex->second, dir))
                  << "\n";
      }
      return 0;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitUsage;
}
