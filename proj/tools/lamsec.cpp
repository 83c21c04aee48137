// Command-line driver: typecheck, compile, run, erase and check programs.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lamsec/bigstep.hpp"
#include "lamsec/compile.hpp"
#include "lamsec/erasure.hpp"
#include "lamsec/harness.hpp"
#include "lamsec/smallstep.hpp"
#include "lamsec/syntax.hpp"

namespace {

using namespace lamsec;

constexpr int kExitTypeError = 1;

struct Loaded {
  harness::Program program;
  harness::Prepared prepared;
};

Loaded load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  Loaded l;
  l.program = harness::parse_corpus_program(ss.str(), path);
  l.prepared = harness::prepare(l.program);
  return l;
}

/// The compiled program with the input substituted, or null with a message.
cc::Term instantiate(const Loaded& l, const std::string& input) {
  if (l.program.input == harness::InputSpec::closed) return l.prepared.compiled;
  return cc::subst(l.prepared.compiled, "x", cc::boolean(input == "true", kHigh));
}

int report_type_error(const Loaded& l) {
  std::cerr << "type error: " << l.prepared.type_error << "\n";
  return kExitTypeError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gradual information-flow language: type checker, compiler and interpreters"};
  app.require_subcommand(1);

  std::string file;
  std::string semantics = "small";
  std::string input = "true";
  long fuel = 100000;
  bool trace = false;
  std::string filter;
  bool json = false;
  std::string corpus = LAMSEC_CORPUS_DIR;

  auto* typecheck = app.add_subcommand("typecheck", "Type check a program");
  typecheck->add_option("file", file, "Program file")->required();

  auto* compile_cmd = app.add_subcommand("compile", "Print the cast-calculus translation");
  compile_cmd->add_option("file", file, "Program file")->required();

  auto* run = app.add_subcommand("run", "Run a program");
  run->add_option("file", file, "Program file")->required();
  run->add_option("--semantics", semantics, "small or big")->check(CLI::IsMember({"small", "big"}));
  run->add_option("--input", input, "Value of the high input x")->check(CLI::IsMember({"true", "false"}));
  run->add_option("--fuel", fuel, "Step budget")->check(CLI::PositiveNumber);
  run->add_flag("--trace", trace, "Print every small step");

  auto* erase = app.add_subcommand("erase", "Print the erased translation");
  erase->add_option("file", file, "Program file")->required();
  erase->add_option("--input", input, "Value of the high input x")->check(CLI::IsMember({"true", "false"}));

  auto* check = app.add_subcommand("check", "Run the property suite over the corpus");
  check->add_option("--filter", filter, "Only this check or program");
  check->add_option("--fuel", fuel, "Step budget")->check(CLI::PositiveNumber);
  check->add_flag("--json", json, "Print the report as JSON");
  check->add_option("--corpus", corpus, "Corpus directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const auto programs = harness::load_corpus(corpus);
      const auto summary = harness::run_corpus(programs, {filter, fuel});
      if (json) {
        std::cout << harness::to_json(summary.reports).dump(2) << "\n";
      } else {
        for (const auto& r : summary.reports) {
          std::cout << harness::to_string(r.status) << "  " << r.check << "  " << r.program << "  " << r.input;
          if (r.status != harness::Status::pass) std::cout << "  " << r.detail;
          std::cout << "\n";
        }
        std::cout << summary.reports.size() << " checks, " << summary.failures() << " failed\n";
      }
      return summary.ok() ? 0 : 1;
    }

    const Loaded l = load(file);
    if (!l.prepared.typed) return report_type_error(l);

    if (typecheck->parsed()) {
      std::cout << to_string(l.prepared.typed->type) << "\n";
      return 0;
    }
    if (compile_cmd->parsed()) {
      std::cout << cc::to_string(l.prepared.compiled) << "\n";
      return 0;
    }
    if (erase->parsed()) {
      std::cout << cc::to_string(erasure::erase(instantiate(l, input))) << "\n";
      return 0;
    }
    const cc::Term m = instantiate(l, input);
    Outcome outcome;
    if (semantics == "small") {
      const auto r = small::run_small(m, Label::low, {fuel, trace, false});
      for (const auto& line : r.trace) std::cout << line << "\n";
      outcome = r.outcome;
    } else {
      outcome = big::eval_big({}, Label::low, m, {fuel, nullptr}).outcome;
    }
    std::cout << describe(outcome) << "\n";
    if (outcome.is_value()) std::cout << "heap " << to_string(outcome.heap) << "\n";
    return exit_code(outcome);
  } catch (const syntax::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitTypeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
