#include "epsalg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>

#include "epsalg/epsilon_table.hpp"
#include "epsalg/identities.hpp"
#include "epsalg/lotka_volterra.hpp"
#include "epsalg/series.hpp"
#include "epsalg/shanks.hpp"
#include "epsalg/table_io.hpp"

namespace epsalg {

namespace {

SequencePrefix resolve_input(const RunConfig& config) {
  if (config.input.empty()) throw InvalidSpec("no input sequence given");
  if (std::filesystem::exists(config.input)) {
    const SequenceFormat fmt =
        config.input_format == "json" ? SequenceFormat::Json : SequenceFormat::Csv;
    SequencePrefix seq = load_sequence(config.input, fmt, config.precision_bits);
    if (config.mode == Mode::Rational && seq.mode() != Mode::Rational) {
      throw InvalidSpec("rational mode rejects non-rational input values");
    }
    if (config.mode == Mode::Float && seq.mode() == Mode::Rational) {
      std::vector<Scalar> lifted;
      for (const Scalar& s : seq.terms()) lifted.push_back(s.to_float(config.precision_bits));
      return SequencePrefix(std::move(lifted), seq.label());
    }
    return seq;
  }
  auto builtin = parse_builtin_series(config.input, config.length, config.mode, config.precision_bits);
  if (!builtin) throw InvalidSpec("input \"" + config.input + "\" is neither a file nor a builtin series");
  return generate(*builtin);
}

std::vector<Scalar> parse_scalar_list(const std::string& text, Mode mode, mpfr_prec_t bits) {
  std::vector<Scalar> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (!piece.empty()) out.push_back(Scalar::parse(piece, mode, bits));
  }
  return out;
}

/// Fills a table of the same shape as the recursive engines, every entry
/// evaluated independently from the determinant formulas.
EpsilonTable determinant_engine_table(const SequencePrefix& seq, int m, const ZeroPolicy& policy) {
  EpsilonTable t = multistep_epsilon(seq, m, policy);  // shape and initialization rows
  const DifferenceTable diffs(seq);
  for (int kappa = 1; kappa <= t.max_k(); ++kappa) {
    for (long n = 0; n <= t.max_n(kappa); ++n) {
      CellState cell;
      try {
        Scalar v = epsilon_entry_det(diffs, m, kappa, n, policy);
        cell.status = CellStatus::Valid;
        cell.value = std::move(v);
      } catch (const Breakdown& b) {
        cell.status = CellStatus::Breakdown;
        cell.origin_k = b.k;
        cell.origin_n = b.n;
      }
      t.cell_mut(kappa, n) = std::move(cell);
    }
  }
  return t;
}

/// Linear-solve engine: only the full-step columns kappa = 0 mod (m+1).
EpsilonTable linear_engine_table(const SequencePrefix& seq, int m, const ZeroPolicy& policy) {
  const DifferenceTable diffs(seq);
  EpsilonTable t = multistep_epsilon(seq, m, policy);
  t.for_each([&](int k, long n, const CellState&) {
    if (k >= 1) t.cell_mut(k, n) = CellState{};
  });
  for (int kappa = 0; kappa <= t.max_k(); kappa += m + 1) {
    if (kappa == 0) continue;  // initialization row already holds S_n
    const int block = kappa / (m + 1);
    for (long n = 0; n <= t.max_n(kappa); ++n) {
      CellState cell;
      try {
        Scalar v = multistep_shanks_linear(diffs, m, block, n, policy);
        cell.status = CellStatus::Valid;
        cell.value = std::move(v);
      } catch (const SingularSystem&) {
        cell.status = CellStatus::Breakdown;
        cell.origin_k = kappa;
        cell.origin_n = n;
      }
      t.cell_mut(kappa, n) = std::move(cell);
    }
  }
  return t;
}

int emit_table(const EpsilonTable& table, const RunConfig& config, std::ostream& out) {
  std::optional<Scalar> limit;
  if (config.limit) limit = Scalar::parse(*config.limit, config.mode, config.precision_bits);
  switch (config.format) {
    case RunConfig::OutputFormat::Json:
      out << table_to_json(table, config.max_k, limit).dump(2) << "\n";
      break;
    case RunConfig::OutputFormat::Csv:
      write_table_csv(table, out, config.max_k, limit);
      break;
    case RunConfig::OutputFormat::Table:
      write_table_text(table, out, config.max_k, limit);
      break;
  }
  if (config.strict) {
    bool broken = false;
    table.for_each([&](int k, long n, const CellState& cell) {
      (void)n;
      if (config.max_k >= 0 && k > config.max_k) return;
      if (cell.status == CellStatus::Breakdown) broken = true;
    });
    if (broken) return 1;
  }
  return 0;
}

int cmd_accelerate(const RunConfig& config, std::ostream& out) {
  const SequencePrefix seq = resolve_input(config);
  const ZeroPolicy policy = ZeroPolicy::for_mode(config.mode, config.precision_bits);
  switch (config.engine) {
    case RunConfig::Engine::Rec:
      return emit_table(config.m == 1 ? wynn_epsilon(seq, policy) : multistep_epsilon(seq, config.m, policy), config,
                        out);
    case RunConfig::Engine::Det:
      return emit_table(determinant_engine_table(seq, config.m, policy), config, out);
    case RunConfig::Engine::Cross:
      return emit_table(cross_rule_table(seq, policy), config, out);
    case RunConfig::Engine::Linear:
      return emit_table(linear_engine_table(seq, config.m, policy), config, out);
  }
  return 2;
}

int cmd_oracle(const RunConfig& config, std::ostream& out) {
  const SequencePrefix seq = resolve_input(config);
  const DifferenceTable diffs(seq);
  DetSpec spec;
  if (config.family == "hankel") {
    spec.family = DetFamily::ClassicHankel;
  } else if (config.family == "h" || config.family == "extended-h") {
    spec.family = DetFamily::ExtendedH;
  } else if (config.family == "phi") {
    spec.family = DetFamily::Phi;
  } else {
    throw InvalidSpec("unknown determinant family \"" + config.family + "\"");
  }
  spec.k = config.k;
  spec.n = config.n;
  spec.m = config.m;
  spec.shift = config.diff_order;
  const Scalar value = evaluate(spec, diffs);
  if (config.format == RunConfig::OutputFormat::Json) {
    nlohmann::json doc;
    doc["family"] = config.family;
    doc["k"] = spec.k;
    doc["n"] = spec.n;
    doc["m"] = spec.m;
    doc["diff_order"] = spec.shift;
    doc["value"] = value.exact_str();
    out << doc.dump(2) << "\n";
  } else {
    out << value.str() << "\n";
  }
  return 0;
}

int cmd_identities(const RunConfig& config, std::ostream& out) {
  std::mt19937_64 rng(config.seed);
  struct Tally {
    long cases = 0;
    Scalar worst;         // largest |residual|
    Scalar allowed;       // largest rho*scale seen (float mode)
    bool failed = false;
  };
  std::map<IdentityId, Tally> tallies;
  const ZeroPolicy policy = ZeroPolicy::for_mode(config.mode, config.precision_bits);

  std::vector<int> ms;
  if (config.m == 0) {
    ms = {1, 2, 3};
  } else {
    ms = {config.m};
  }
  long sylvester_cases = 0;
  bool sylvester_ok = true;
  for (int s = 0; s < config.sweep_sequences; ++s) {
    SequencePrefix seq = random_small_rational_sequence(rng, config.sweep_length);
    if (config.mode == Mode::Float) {
      std::vector<Scalar> lifted;
      for (const Scalar& x : seq.terms()) lifted.push_back(x.to_float(config.precision_bits));
      seq = SequencePrefix(std::move(lifted), seq.label());
    }
    const DifferenceTable diffs(seq);
    for (int m : ms) {
      sweep_identities(diffs, m, [&](const IdentityCase& c, const IdentityResult& r) {
        Tally& t = tallies[c.id];
        ++t.cases;
        const Scalar mag = r.residual.abs();
        if (t.cases == 1 || mag.compare(t.worst) > 0) t.worst = mag;
        if (config.mode == Mode::Rational) {
          if (!r.residual.is_zero()) t.failed = true;
        } else {
          const Scalar bound = policy.rho * r.scale.abs() + policy.tau;
          if (t.allowed.mode() != Mode::Float || bound.compare(t.allowed) > 0) t.allowed = bound;
          if (mag.compare(bound) > 0) t.failed = true;
        }
      });
    }
    // Random bordered matrices for the Sylvester identity.
    std::uniform_int_distribution<int> dim_dist(3, 6);
    for (int rep = 0; rep < 4; ++rep) {
      const int dim = dim_dist(rng);
      Matrix mat(static_cast<std::size_t>(dim));
      for (auto& row : mat) {
        for (int c = 0; c < dim; ++c) row.push_back(random_small_rational(rng));
      }
      if (config.mode == Mode::Float) {
        for (auto& row : mat) {
          for (auto& x : row) x = x.to_float(config.precision_bits);
        }
      }
      const Scalar res = check_sylvester(mat);
      ++sylvester_cases;
      if (config.mode == Mode::Rational && !res.is_zero()) sylvester_ok = false;
    }
  }

  bool all_ok = sylvester_ok;
  for (const auto& [id, tally] : tallies) {
    out << identity_name(id) << ": cases=" << tally.cases << " max|residual|=" << tally.worst.str() << " "
        << (tally.failed ? "FAIL" : "PASS") << "\n";
    if (tally.failed) all_ok = false;
  }
  out << "sylvester: cases=" << sylvester_cases << " " << (sylvester_ok ? "PASS" : "FAIL") << "\n";
  out << (all_ok ? "all residuals zero\n" : "nonzero residuals found\n");
  return all_ok ? 0 : 1;
}

int cmd_lv(const RunConfig& config, std::ostream& out) {
  const SequencePrefix seq = resolve_input(config);
  const ZeroPolicy policy = ZeroPolicy::for_mode(config.mode, config.precision_bits);
  const EpsilonTable table = multistep_epsilon(seq, config.m, policy);
  const LVLattice lattice = miura_from_epsilon(table);
  const LVResidualReport report = lv_residuals(lattice);

  switch (config.format) {
    case RunConfig::OutputFormat::Json: {
      nlohmann::json doc = lattice_to_json(lattice, seq.mode(), seq.precision_bits());
      auto res = nlohmann::json::array();
      for (const auto& site : report.residuals) {
        nlohmann::json r;
        r["k"] = site.k;
        r["n"] = site.n;
        r["residual"] = site.residual.exact_str();
        res.push_back(std::move(r));
      }
      doc["residuals"] = std::move(res);
      doc["skipped_sites"] = report.skipped.size();
      out << doc.dump(2) << "\n";
      break;
    }
    case RunConfig::OutputFormat::Csv:
      write_lattice_csv(lattice, out);
      break;
    case RunConfig::OutputFormat::Table: {
      out << "lattice  m=" << config.m << "  lines " << lattice.min_line() << ".." << lattice.max_line() << "\n";
      for (int j = lattice.min_line(); j <= lattice.max_line(); ++j) {
        out << "a[" << j << "] |";
        for (long n = 0; n <= lattice.max_time(j); ++n) {
          const LVEntry& e = lattice.entry(j, n);
          out << " ";
          switch (e.status) {
            case LVStatus::Finite: out << e.value.str(); break;
            case LVStatus::Infinity: out << "inf"; break;
            case LVStatus::Breakdown: out << "<breakdown>"; break;
            case LVStatus::Unset: out << "."; break;
          }
        }
        out << "\n";
      }
      break;
    }
  }
  Scalar worst = Scalar::zero(seq.mode(), seq.precision_bits());
  for (const auto& site : report.residuals) {
    if (site.residual.compare_abs(worst) > 0) worst = site.residual.abs();
  }
  out << "lattice-equation sites=" << report.residuals.size() << " skipped=" << report.skipped.size()
      << " max|residual|=" << worst.str() << "\n";
  const bool ok = seq.mode() == Mode::Rational
                      ? report.all_zero_exact()
                      : is_effectively_zero(worst, Scalar::one(Mode::Float, seq.precision_bits()),
                                            policy);
  out << (ok ? "residuals zero\n" : "nonzero residuals\n");
  if (config.strict && !report.skipped.empty()) return 1;
  return ok ? 0 : 1;
}

int cmd_kernel_gen(const RunConfig& config, std::ostream& out) {
  KernelSpec spec;
  spec.m = config.m;
  spec.k = config.kernel_k;
  spec.coefficients = parse_scalar_list(config.coefficients, config.mode, config.precision_bits);
  spec.limit = Scalar::parse(config.kernel_limit, config.mode, config.precision_bits);
  spec.seeds = parse_scalar_list(config.kernel_seeds, config.mode, config.precision_bits);
  const SequencePrefix seq = generate_kernel(spec, config.length);
  if (!config.output_path.empty()) {
    std::ofstream file(config.output_path);
    if (!file) throw Error("cannot write " + config.output_path);
    save_sequence(seq, file, SequenceFormat::Csv);
    out << "wrote " << seq.size() << " terms to " << config.output_path << "\n";
  } else {
    save_sequence(seq, out, SequenceFormat::Csv);
  }
  return 0;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.m < 0) throw InvalidSpec("m must be positive");
    if (config.command != RunConfig::Command::Identities && config.m == 0) {
      throw InvalidSpec("m must be positive");
    }
    if (config.engine == RunConfig::Engine::Cross && config.m != 1) {
      throw InvalidSpec("cross rule requires m=1");
    }
    if (config.mode == Mode::Float && config.precision_bits < 53) {
      throw InvalidSpec("float precision must be at least 53 bits");
    }
    switch (config.command) {
      case RunConfig::Command::Accelerate:
        return cmd_accelerate(config, out);
      case RunConfig::Command::Oracle:
        return cmd_oracle(config, out);
      case RunConfig::Command::Identities:
        return cmd_identities(config, out);
      case RunConfig::Command::Lv:
        return cmd_lv(config, out);
      case RunConfig::Command::KernelGen:
        return cmd_kernel_gen(config, out);
    }
    err << "unknown command\n";
    return 2;
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyFile& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace epsalg
