#include "epsalg/table_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

namespace epsalg {

const char* cell_status_name(CellStatus status) {
  switch (status) {
    case CellStatus::Valid: return "valid";
    case CellStatus::Breakdown: return "breakdown";
    case CellStatus::Infinity: return "infinity";
    case CellStatus::Unset: return "unset";
  }
  return "unset";
}

namespace {

CellStatus status_from_name(const std::string& name) {
  if (name == "valid") return CellStatus::Valid;
  if (name == "breakdown") return CellStatus::Breakdown;
  if (name == "infinity") return CellStatus::Infinity;
  if (name == "unset") return CellStatus::Unset;
  throw Error("unknown cell status \"" + name + "\"");
}

std::optional<Scalar> column_error(const EpsilonTable& table, int k, const CellState& cell,
                                   const std::optional<Scalar>& limit) {
  if (!limit || !cell.valid()) return std::nullopt;
  if (k < 0 || k % (table.m() + 1) != 0) return std::nullopt;
  Scalar target = *limit;
  Scalar value = cell.value;
  if (value.mode() == Mode::Rational && target.mode() == Mode::Float) {
    value = value.to_float(target.precision_bits());
  } else if (value.mode() == Mode::Float && target.mode() == Mode::Rational) {
    target = target.to_float(value.precision_bits());
  }
  return (value - target).abs();
}

}  // namespace

nlohmann::json table_to_json(const EpsilonTable& table, int max_k, const std::optional<Scalar>& limit) {
  nlohmann::json doc;
  doc["m"] = table.m();
  doc["mode"] = table.source().mode() == Mode::Rational ? "rational" : "float";
  doc["precision_bits"] = static_cast<long>(table.source().precision_bits());
  doc["label"] = table.source().label();
  auto cells = nlohmann::json::array();
  table.for_each([&](int k, long n, const CellState& cell) {
    if (cell.status == CellStatus::Unset) return;
    if (max_k >= 0 && k > max_k) return;
    nlohmann::json c;
    c["k"] = k;
    c["n"] = n;
    c["status"] = cell_status_name(cell.status);
    c["value"] = cell.valid() ? cell.value.exact_str() : "";
    if (cell.status == CellStatus::Breakdown) {
      c["origin_k"] = cell.origin_k;
      c["origin_n"] = cell.origin_n;
    }
    if (auto err = column_error(table, k, cell, limit)) c["error"] = err->str();
    cells.push_back(std::move(c));
  });
  doc["cells"] = std::move(cells);
  return doc;
}

void write_table_csv(const EpsilonTable& table, std::ostream& out, int max_k, const std::optional<Scalar>& limit) {
  out << "k,n,status,value";
  if (limit) out << ",error";
  out << "\n";
  table.for_each([&](int k, long n, const CellState& cell) {
    if (cell.status == CellStatus::Unset) return;
    if (max_k >= 0 && k > max_k) return;
    out << k << "," << n << "," << cell_status_name(cell.status) << ",";
    if (cell.valid()) out << cell.value.exact_str();
    if (limit) {
      out << ",";
      if (auto err = column_error(table, k, cell, limit)) out << err->str();
    }
    out << "\n";
  });
}

void write_table_text(const EpsilonTable& table, std::ostream& out, int max_k, const std::optional<Scalar>& limit) {
  const int k_hi = max_k >= 0 ? std::min(max_k, table.max_k()) : table.max_k();
  out << "epsilon table  m=" << table.m() << "  terms=" << table.source().size();
  if (!table.source().label().empty()) out << "  [" << table.source().label() << "]";
  out << "\n";
  for (int k = table.min_k(); k <= k_hi; ++k) {
    bool any = false;
    for (long n = 0; n <= table.max_n(k); ++n) {
      if (table.cell(k, n).status != CellStatus::Unset) {
        any = true;
        break;
      }
    }
    if (!any) continue;
    out << "k=" << std::setw(3) << k << " |";
    for (long n = 0; n <= table.max_n(k); ++n) {
      const CellState& cell = table.cell(k, n);
      out << " ";
      switch (cell.status) {
        case CellStatus::Valid: out << cell.value.str(); break;
        case CellStatus::Breakdown: out << "<breakdown@" << cell.origin_k << "," << cell.origin_n << ">"; break;
        case CellStatus::Infinity: out << "inf"; break;
        case CellStatus::Unset: out << "."; break;
      }
    }
    out << "\n";
  }
  if (limit) {
    out << "errors vs limit " << limit->str() << " (columns k = 0 mod " << (table.m() + 1) << "):\n";
    for (int k = 0; k <= k_hi; k += table.m() + 1) {
      out << "k=" << std::setw(3) << k << " |";
      for (long n = 0; n <= table.max_n(k); ++n) {
        out << " ";
        if (auto err = column_error(table, k, table.cell(k, n), limit)) {
          out << err->to_double();
        } else {
          out << ".";
        }
      }
      out << "\n";
    }
  }
}

ParsedTable table_from_json(const nlohmann::json& doc) {
  ParsedTable out;
  if (!doc.is_object() || !doc.contains("m") || !doc.contains("cells")) {
    throw ParseError("expected an epsilon table object", 1);
  }
  out.m = doc["m"].get<int>();
  out.mode = doc.value("mode", "rational") == std::string("float") ? Mode::Float : Mode::Rational;
  out.precision_bits = doc.value("precision_bits", 53L);
  out.label = doc.value("label", "");
  for (const auto& c : doc["cells"]) {
    CellState cell;
    cell.status = status_from_name(c["status"].get<std::string>());
    if (cell.status == CellStatus::Valid) {
      cell.value = Scalar::parse(c["value"].get<std::string>(), out.mode, out.precision_bits);
    }
    if (cell.status == CellStatus::Breakdown) {
      cell.origin_k = c.value("origin_k", 0);
      cell.origin_n = c.value("origin_n", 0L);
    }
    out.cells[{c["k"].get<int>(), c["n"].get<long>()}] = std::move(cell);
  }
  return out;
}

namespace {

const char* lv_status_name(LVStatus status) {
  switch (status) {
    case LVStatus::Finite: return "finite";
    case LVStatus::Infinity: return "infinity";
    case LVStatus::Breakdown: return "breakdown";
    case LVStatus::Unset: return "unset";
  }
  return "unset";
}

}  // namespace

nlohmann::json lattice_to_json(const LVLattice& lattice, Mode mode, mpfr_prec_t bits) {
  nlohmann::json doc;
  doc["m"] = lattice.m();
  doc["mode"] = mode == Mode::Rational ? "rational" : "float";
  doc["precision_bits"] = static_cast<long>(bits);
  auto sites = nlohmann::json::array();
  for (int j = lattice.min_line(); j <= lattice.max_line(); ++j) {
    for (long n = 0; n <= lattice.max_time(j); ++n) {
      const LVEntry& e = lattice.entry(j, n);
      if (e.status == LVStatus::Unset) continue;
      nlohmann::json s;
      s["j"] = j;
      s["n"] = n;
      s["status"] = lv_status_name(e.status);
      s["value"] = e.finite() ? e.value.exact_str() : "";
      sites.push_back(std::move(s));
    }
  }
  doc["sites"] = std::move(sites);
  return doc;
}

void write_lattice_csv(const LVLattice& lattice, std::ostream& out) {
  out << "j,n,status,value\n";
  for (int j = lattice.min_line(); j <= lattice.max_line(); ++j) {
    for (long n = 0; n <= lattice.max_time(j); ++n) {
      const LVEntry& e = lattice.entry(j, n);
      if (e.status == LVStatus::Unset) continue;
      out << j << "," << n << "," << lv_status_name(e.status) << ",";
      if (e.finite()) out << e.value.exact_str();
      out << "\n";
    }
  }
}

}  // namespace epsalg
