#include "epsalg/series.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "epsalg/errors.hpp"

namespace epsalg {

SeriesSpec SeriesSpec::alternating_harmonic(long length, Mode mode, mpfr_prec_t bits) {
  SeriesSpec s;
  s.kind = Kind::AlternatingHarmonic;
  s.length = length;
  s.mode = mode;
  s.precision_bits = bits;
  return s;
}

SeriesSpec SeriesSpec::geometric(Scalar limit, Scalar scale, Scalar ratio, long length) {
  SeriesSpec s;
  s.kind = Kind::Geometric;
  s.length = length;
  s.mode = limit.mode();
  s.precision_bits = s.mode == Mode::Float ? limit.precision_bits() : 53;
  s.limit = std::move(limit);
  s.scale = std::move(scale);
  s.ratio = std::move(ratio);
  return s;
}

SeriesSpec SeriesSpec::power_series(std::vector<Scalar> coefficients, Scalar x, long length) {
  SeriesSpec s;
  s.kind = Kind::PowerSeriesPartialSums;
  s.length = length;
  s.mode = x.mode();
  s.precision_bits = s.mode == Mode::Float ? x.precision_bits() : 53;
  s.coefficients = std::move(coefficients);
  s.x = std::move(x);
  return s;
}

SeriesSpec SeriesSpec::explicit_terms_of(std::vector<Scalar> terms) {
  SeriesSpec s;
  s.kind = Kind::Explicit;
  s.length = static_cast<long>(terms.size());
  if (!terms.empty()) {
    s.mode = terms[0].mode();
    s.precision_bits = s.mode == Mode::Float ? terms[0].precision_bits() : 53;
  }
  s.explicit_terms = std::move(terms);
  return s;
}

SequencePrefix generate(const SeriesSpec& spec) {
  if (spec.length < 2) throw InvalidSpec("series length must be at least 2");
  const Mode mode = spec.mode;
  const mpfr_prec_t prec = spec.precision_bits;
  switch (spec.kind) {
    case SeriesSpec::Kind::AlternatingHarmonic: {
      SequencePrefix out("ln2");
      Scalar acc = Scalar::zero(mode, prec);
      for (long j = 1; j <= spec.length; ++j) {
        Scalar term = Scalar::one(mode, prec) / Scalar::from_long(j, mode, prec);
        if (j % 2 == 0) term = -term;
        acc += term;
        out.push_back(acc);
      }
      return out;
    }
    case SeriesSpec::Kind::Geometric: {
      if (spec.ratio == Scalar::one(spec.ratio.mode(), prec)) {
        throw InvalidSpec("geometric series requires ratio != 1");
      }
      SequencePrefix out("geometric");
      Scalar pow = Scalar::one(mode, prec);
      for (long n = 0; n < spec.length; ++n) {
        out.push_back(spec.limit + spec.scale * pow);
        pow *= spec.ratio;
      }
      return out;
    }
    case SeriesSpec::Kind::PowerSeriesPartialSums: {
      if (spec.coefficients.empty()) throw InvalidSpec("power series requires coefficients");
      SequencePrefix out("power-series");
      Scalar acc = Scalar::zero(mode, prec);
      Scalar pow = Scalar::one(mode, prec);
      for (long n = 0; n < spec.length; ++n) {
        const Scalar c = n < static_cast<long>(spec.coefficients.size())
                             ? spec.coefficients[static_cast<std::size_t>(n)]
                             : Scalar::zero(mode, prec);
        acc += c * pow;
        pow *= spec.x;
        out.push_back(acc);
      }
      return out;
    }
    case SeriesSpec::Kind::Explicit:
      return SequencePrefix(spec.explicit_terms, "explicit");
  }
  throw InvalidSpec("unknown series kind");
}

SequencePrefix generate_kernel(const KernelSpec& spec, long length) {
  if (spec.m < 1 || spec.k < 1) throw InvalidSpec("kernel spec needs m >= 1 and k >= 1");
  if (static_cast<int>(spec.coefficients.size()) != spec.k) {
    throw InvalidSpec("kernel spec needs exactly k coefficients");
  }
  if (spec.coefficients.back().is_zero()) throw InvalidSpec("kernel spec requires a_k != 0");
  const long km = static_cast<long>(spec.k) * spec.m;
  if (static_cast<long>(spec.seeds.size()) != km) {
    throw SeedCountMismatch("kernel spec needs exactly k*m = " + std::to_string(km) + " seed values, got " +
                            std::to_string(spec.seeds.size()));
  }
  if (length < km) throw InvalidSpec("kernel sequence length must cover the seeds");

  const Mode mode = spec.limit.mode();
  const mpfr_prec_t prec = mode == Mode::Float ? spec.limit.precision_bits() : 53;

  // Binomial weights of S_(n+j) in sum_i a_i Delta^(im) S_n, j = 0..km.
  std::vector<Scalar> weight(static_cast<std::size_t>(km + 1), Scalar::zero(mode, prec));
  mpz_t binom;
  mpz_init(binom);
  for (int i = 1; i <= spec.k; ++i) {
    const long im = static_cast<long>(i) * spec.m;
    const Scalar& ai = spec.coefficients[static_cast<std::size_t>(i - 1)];
    for (long j = 0; j <= im; ++j) {
      mpz_bin_uiui(binom, static_cast<unsigned long>(im), static_cast<unsigned long>(j));
      Scalar c = Scalar::from_mpz(binom, mode, prec) * ai;
      if ((im - j) % 2 != 0) c = -c;
      weight[static_cast<std::size_t>(j)] += c;
    }
  }
  mpz_clear(binom);
  const Scalar& top = weight[static_cast<std::size_t>(km)];
  if (top.is_zero()) throw DegenerateRecurrence("leading recurrence weight vanished");

  SequencePrefix out("kernel");
  for (const Scalar& s : spec.seeds) out.push_back(s);
  // S_n - S = sum_j weight[j] S_(n+j); solve for the top term.
  for (long n = 0; n + km < length; ++n) {
    Scalar rhs = out[n] - spec.limit;
    for (long j = 0; j < km; ++j) {
      rhs -= weight[static_cast<std::size_t>(j)] * out[n + j];
    }
    out.push_back(rhs / top);
  }

  if (mode == Mode::Rational) {
    // Exact re-check of the defining relation at every admissible n.
    for (long n = 0; n + km <= out.max_index(); ++n) {
      Scalar acc = spec.limit;
      for (int i = 1; i <= spec.k; ++i) {
        acc += spec.coefficients[static_cast<std::size_t>(i - 1)] *
               forward_difference(out, static_cast<long>(i) * spec.m, n);
      }
      if (!acc.equals(out[n])) throw DegenerateRecurrence("kernel relation re-check failed");
    }
  }
  return out;
}

namespace {

SequencePrefix from_strings(const std::vector<std::string>& lines, const std::vector<long>& line_numbers,
                            mpfr_prec_t float_bits, const std::string& label) {
  if (lines.empty()) throw EmptyFile("no values in input");
  bool all_rational = true;
  for (const auto& text : lines) {
    if (!Scalar::looks_rational(text)) {
      all_rational = false;
      break;
    }
  }
  const Mode mode = all_rational ? Mode::Rational : Mode::Float;
  SequencePrefix out(label);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(Scalar::parse(lines[i], mode, float_bits));
    } catch (const Error& e) {
      throw ParseError(e.what(), line_numbers[i]);
    }
  }
  return out;
}

}  // namespace

SequencePrefix parse_sequence(std::istream& in, SequenceFormat format, mpfr_prec_t float_bits,
                              const std::string& fallback_label) {
  if (format == SequenceFormat::Json) {
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), 1);
    }
    if (!doc.is_object() || !doc.contains("terms") || !doc["terms"].is_array()) {
      throw ParseError("expected {\"label\": ..., \"terms\": [...]}", 1);
    }
    std::vector<std::string> values;
    std::vector<long> line_numbers;
    long idx = 1;
    for (const auto& item : doc["terms"]) {
      if (!item.is_string()) throw ParseError("terms must be scalar strings", idx);
      values.push_back(item.get<std::string>());
      line_numbers.push_back(idx++);
    }
    const std::string label = doc.value("label", fallback_label);
    return from_strings(values, line_numbers, float_bits, label);
  }

  std::vector<std::string> values;
  std::vector<long> line_numbers;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string trimmed = line;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
    std::size_t start = 0;
    while (start < trimmed.size() && std::isspace(static_cast<unsigned char>(trimmed[start]))) ++start;
    trimmed = trimmed.substr(start);
    if (trimmed.empty() || trimmed[0] == '#') continue;
    values.push_back(trimmed);
    line_numbers.push_back(line_no);
  }
  return from_strings(values, line_numbers, float_bits, fallback_label);
}

SequencePrefix load_sequence(const std::string& path, SequenceFormat format, mpfr_prec_t float_bits) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_sequence(in, format, float_bits, path);
}

void save_sequence(const SequencePrefix& seq, std::ostream& out, SequenceFormat format) {
  if (format == SequenceFormat::Json) {
    nlohmann::json doc;
    doc["label"] = seq.label();
    auto terms = nlohmann::json::array();
    for (const Scalar& s : seq.terms()) terms.push_back(s.exact_str());
    doc["terms"] = terms;
    out << doc.dump(2) << "\n";
    return;
  }
  for (const Scalar& s : seq.terms()) out << s.exact_str() << "\n";
}

std::optional<SeriesSpec> parse_builtin_series(const std::string& name, long length, Mode mode, mpfr_prec_t bits) {
  auto parse_scalar = [&](const std::string& text) { return Scalar::parse(text, mode, bits); };
  if (name == "ln2" || name == "alternating-harmonic") {
    return SeriesSpec::alternating_harmonic(length, mode, bits);
  }
  const auto colon = name.find(':');
  if (colon == std::string::npos) return std::nullopt;
  const std::string head = name.substr(0, colon);
  std::vector<std::string> parts;
  {
    std::stringstream ss(name.substr(colon + 1));
    std::string piece;
    while (std::getline(ss, piece, ',')) parts.push_back(piece);
  }
  if (head == "geometric") {
    if (parts.size() != 3) throw InvalidSpec("geometric:S,c,lambda needs three values");
    return SeriesSpec::geometric(parse_scalar(parts[0]), parse_scalar(parts[1]), parse_scalar(parts[2]), length);
  }
  if (head == "power") {
    if (parts.size() < 2) throw InvalidSpec("power:x,c0,... needs x and at least one coefficient");
    std::vector<Scalar> coeffs;
    for (std::size_t i = 1; i < parts.size(); ++i) coeffs.push_back(parse_scalar(parts[i]));
    return SeriesSpec::power_series(std::move(coeffs), parse_scalar(parts[0]), length);
  }
  return std::nullopt;
}

Scalar random_small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 9);
  return Scalar::rational(num(rng), den(rng));
}

SequencePrefix random_small_rational_sequence(std::mt19937_64& rng, long length, const std::string& label) {
  std::vector<Scalar> terms;
  terms.reserve(static_cast<std::size_t>(length));
  for (long j = 0; j < length; ++j) terms.push_back(random_small_rational(rng));
  return SequencePrefix(std::move(terms), label);
}

}  // namespace epsalg
