#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "epsalg/epsilon_table.hpp"
#include "epsalg/lotka_volterra.hpp"

namespace epsalg {

const char* cell_status_name(CellStatus status);

/**
 * JSON schema for epsilon tables:
 *   {"m": int, "cells": [{"k": int, "n": int, "status": "valid|breakdown|unset|infinity",
 *                         "value": string}]}
 * plus "mode"/"precision_bits"/"label" bookkeeping fields. Values are exact
 * strings ("p/q" rationals, hexadecimal float literals), so parsing an
 * emitted table reproduces every cell bit-exactly.
 */
nlohmann::json table_to_json(const EpsilonTable& table, int max_k = -1,
                             const std::optional<Scalar>& limit = std::nullopt);

void write_table_csv(const EpsilonTable& table, std::ostream& out, int max_k = -1,
                     const std::optional<Scalar>& limit = std::nullopt);

void write_table_text(const EpsilonTable& table, std::ostream& out, int max_k = -1,
                      const std::optional<Scalar>& limit = std::nullopt);

/// A table read back from JSON, for round-trip checks and downstream tools.
struct ParsedTable {
  int m = 1;
  Mode mode = Mode::Rational;
  mpfr_prec_t precision_bits = 53;
  std::string label;
  std::map<std::pair<int, long>, CellState> cells;
};

ParsedTable table_from_json(const nlohmann::json& doc);

nlohmann::json lattice_to_json(const LVLattice& lattice, Mode mode, mpfr_prec_t bits);
void write_lattice_csv(const LVLattice& lattice, std::ostream& out);

}  // namespace epsalg
