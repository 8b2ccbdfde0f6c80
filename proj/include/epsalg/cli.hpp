#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "epsalg/scalar.hpp"

namespace epsalg {

struct RunConfig {
  enum class Command { Accelerate, Oracle, Identities, Lv, KernelGen };
  enum class Engine { Rec, Det, Cross, Linear };
  enum class OutputFormat { Table, Csv, Json };

  Command command = Command::Accelerate;

  std::string input;  // path or builtin series name
  std::string input_format = "csv";
  long length = 13;  // builtin series length
  int m = 1;
  int max_k = -1;
  Mode mode = Mode::Rational;
  mpfr_prec_t precision_bits = 53;
  Engine engine = Engine::Rec;
  OutputFormat format = OutputFormat::Table;
  unsigned long seed = 42;
  bool strict = false;
  std::optional<std::string> limit;  // known limit, for error columns

  // oracle
  std::string family = "hankel";
  int k = 0;
  long n = 0;
  long diff_order = 0;

  // identities sweep
  int sweep_sequences = 5;
  long sweep_length = 12;

  // kernel-gen
  int kernel_k = 1;
  std::string coefficients;  // "a1,a2,..."
  std::string kernel_limit = "0";
  std::string kernel_seeds;  // "s0,s1,..."
  std::string output_path;   // empty writes to stdout
};

/// Executes one command. Exit status: 0 success, 1 breakdown in requested
/// cells under --strict, 2 configuration or input errors.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace epsalg
