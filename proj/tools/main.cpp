#include <CLI11.hpp>

#include <iostream>

#include "epsalg/cli.hpp"

namespace {

void add_common(CLI::App* cmd, epsalg::RunConfig& config) {
  cmd->add_option("-i,--input", config.input,
                  "input file or builtin series (ln2 | geometric:S,c,lambda | power:x,c0,c1,...)");
  cmd->add_option("--input-format", config.input_format, "input file format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-l,--length", config.length, "number of terms for builtin series");
  cmd->add_option("-m", config.m, "step parameter of the multistep algorithm");
  std::map<std::string, epsalg::Mode> modes{{"rational", epsalg::Mode::Rational}, {"float", epsalg::Mode::Float}};
  cmd->add_option("--mode", config.mode, "arithmetic mode")->transform(CLI::CheckedTransformer(modes));
  cmd->add_option("--precision-bits", config.precision_bits, "float precision in bits (>= 53)");
  std::map<std::string, epsalg::RunConfig::OutputFormat> formats{
      {"table", epsalg::RunConfig::OutputFormat::Table},
      {"csv", epsalg::RunConfig::OutputFormat::Csv},
      {"json", epsalg::RunConfig::OutputFormat::Json}};
  cmd->add_option("-f,--format", config.format, "output format")->transform(CLI::CheckedTransformer(formats));
  cmd->add_flag("--strict", config.strict, "exit 1 when requested cells broke down");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"convergence acceleration by the multistep epsilon algorithm"};
  app.require_subcommand(1);

  epsalg::RunConfig config;

  auto* accelerate = app.add_subcommand("accelerate", "build an epsilon table for a sequence");
  add_common(accelerate, config);
  std::map<std::string, epsalg::RunConfig::Engine> engines{{"rec", epsalg::RunConfig::Engine::Rec},
                                                           {"det", epsalg::RunConfig::Engine::Det},
                                                           {"cross", epsalg::RunConfig::Engine::Cross},
                                                           {"linear", epsalg::RunConfig::Engine::Linear}};
  accelerate->add_option("-e,--engine", config.engine, "rec | det | cross | linear")
      ->transform(CLI::CheckedTransformer(engines));
  accelerate->add_option("--max-k", config.max_k, "emit columns up to this k only");
  std::string limit_text;
  auto* limit_opt = accelerate->add_option("--limit", limit_text, "known limit; adds an error column");

  auto* oracle = app.add_subcommand("oracle", "evaluate one determinant from the oracle");
  add_common(oracle, config);
  oracle->add_option("--family", config.family, "hankel | h | phi")
      ->check(CLI::IsMember({"hankel", "h", "extended-h", "phi"}));
  oracle->add_option("-k", config.k, "determinant dimension")->required();
  oracle->add_option("-n", config.n, "base index")->required();
  oracle->add_option("--diff", config.diff_order, "evaluate over Delta^d of the input");

  auto* identities = app.add_subcommand("identities", "randomized determinantal identity sweep");
  add_common(identities, config);
  identities->add_option("--seed", config.seed, "sweep seed");
  identities->add_option("--sequences", config.sweep_sequences, "number of random sequences");
  identities->add_option("--sweep-length", config.sweep_length, "length of each random sequence");

  auto* lv = app.add_subcommand("lv", "build the lattice and check its equation");
  add_common(lv, config);

  auto* kernel = app.add_subcommand("kernel-gen", "generate a kernel sequence from its relation");
  add_common(kernel, config);
  kernel->add_option("-k", config.kernel_k, "number of coefficients")->required();
  kernel->add_option("--coeffs", config.coefficients, "a_1,...,a_k (a_k nonzero)")->required();
  kernel->add_option("--limit", config.kernel_limit, "the limit S")->required();
  kernel->add_option("--seeds", config.kernel_seeds, "seed terms S_0,...,S_(km-1)")->required();
  kernel->add_option("-o,--output", config.output_path, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (accelerate->parsed()) config.command = epsalg::RunConfig::Command::Accelerate;
  if (oracle->parsed()) config.command = epsalg::RunConfig::Command::Oracle;
  if (identities->parsed()) {
    config.command = epsalg::RunConfig::Command::Identities;
    if (identities->get_option("-m")->count() == 0) config.m = 0;
  }
  if (lv->parsed()) config.command = epsalg::RunConfig::Command::Lv;
  if (kernel->parsed()) config.command = epsalg::RunConfig::Command::KernelGen;
  if (limit_opt->count() > 0) config.limit = limit_text;

  return epsalg::run(config, std::cout, std::cerr);
}
