#pragma once

// Executable metatheory: loads a corpus of annotated programs and runs the
// safety, simulation and noninterference properties over it.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "lamsec/cc.hpp"
#include "lamsec/rules.hpp"
#include "lamsec/surface.hpp"

namespace lamsec::harness {

enum class InputSpec : std::uint8_t { high_bool, closed };

/// A corpus program. Header comments carry its expectations:
///   ; name: flip
///   ; typing: ok | error <rule>: <premise>
///   ; input: x | closed
///   ; expect: <outcome>           (all inputs)
///   ; expect-true: <outcome>      (x = true_high)
///   ; expect-false: <outcome>     (x = false_high)
///   ; fuel: <n>
/// where <outcome> is `value <term>`, `blame <p>`, `nsu-error` or `timeout`.
struct Program {
  std::string name;
  std::string source;
  bool typing_ok = true;
  std::string error_rule;     // when !typing_ok
  std::string error_premise;  // when !typing_ok
  InputSpec input = InputSpec::high_bool;
  std::string expect;
  std::string expect_true;
  std::string expect_false;
  std::optional<long> fuel;
};

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Program parse_corpus_program(const std::string& text, const std::string& fallback_name);
Program load_program(const std::filesystem::path& path);
/// Every *.sec file in the directory, sorted by file name.
std::vector<Program> load_corpus(const std::filesystem::path& dir);

enum class Status : std::uint8_t { pass, fail, timeout };
std::string_view to_string(Status s);

struct Report {
  std::string check;
  std::string program;
  std::string input;
  Status status = Status::pass;
  std::string detail;
};

/// A program parsed, typed and compiled, ready for the checks.
struct Prepared {
  Program program;
  surface::Term term;
  surface::Context context;
  std::optional<surface::Typed> typed;  // absent if typing failed
  std::string type_error;               // message when typing failed
  std::string type_error_rule;
  std::string type_error_premise;
  cc::Term compiled;                    // null if typing failed

  struct Input {
    std::string name;  // true_high, false_high or closed
    cc::Term term;     // the compiled program with x substituted
    std::string expect;
  };
  std::vector<Input> inputs;
};

/// Throws syntax::ParseError when the source does not parse.
Prepared prepare(const Program& p);

long fuel_for(const Prepared& p, long fuel);

// ---- individual checks ------------------------------------------------------

std::vector<Report> check_typing(const Prepared& p);
std::vector<Report> check_roundtrip(const Prepared& p);
std::vector<Report> check_compile_types(const Prepared& p);
std::vector<Report> check_expect(const Prepared& p, long fuel, Coverage* cov = nullptr);
std::vector<Report> check_agreement(const Prepared& p, long fuel, Coverage* cov = nullptr);
std::vector<Report> check_progress(const Prepared& p, long fuel, Coverage* cov = nullptr);
std::vector<Report> check_preservation(const Prepared& p, long fuel);
std::vector<Report> check_value_pc_agnostic(const Prepared& p, long fuel);
std::vector<Report> check_determinism_erased(const Prepared& p, long fuel, Coverage* cov = nullptr);
std::vector<Report> check_simulation(const Prepared& p, long fuel, Coverage* cov = nullptr);
std::vector<Report> check_noninterference(const Prepared& p, long fuel);
std::vector<Report> check_high_pc_heap(const Prepared& p, long fuel);

/// Single-value check: the type of V is the same under every
/// static and dynamic PC.
Report check_value(const cc::Term& v, const cc::HeapContext& sigma, const std::string& program,
                   const std::string& input);

/// All check names, in the order run_corpus runs them.
const std::vector<std::string>& check_names();

struct Options {
  std::string filter;  // a check name or a program name; empty runs everything
  long fuel = 100000;
};

struct Summary {
  std::vector<Report> reports;
  Coverage coverage;
  bool ok() const;
  int failures() const;
};

Summary run_corpus(const std::vector<Program>& corpus, const Options& opts = {});

nlohmann::json to_json(const std::vector<Report>& reports);

}  // namespace lamsec::harness
