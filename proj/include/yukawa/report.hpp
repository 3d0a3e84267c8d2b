#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <locale>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "yukawa/golden_embedded.hpp"
#include "yukawa/hydrogenic.hpp"
#include "yukawa/numerov.hpp"
#include "yukawa/perturbation.hpp"

namespace yukawa::report {

enum class RegimeName { table1, table23, custom };

/// Unit conventions of the comparison tables.
///   table1:  hbar = m = 1, A = sqrt(2), alpha = g A
///   table23: hbar = 1, m = 1/2, alpha = 0.2, A free
struct UnitRegime {
  RegimeName name = RegimeName::custom;
  double hbar = 1.0;
  double mass = 1.0;

  static UnitRegime table1() { return {RegimeName::table1, 1.0, 1.0}; }
  static UnitRegime table23() { return {RegimeName::table23, 1.0, 0.5}; }
  static UnitRegime custom(double hbar, double mass) { return {RegimeName::custom, hbar, mass}; }
};

inline constexpr double kTable1Coupling = 1.4142135623730951;  // sqrt(2)
inline constexpr double kTable23Screening = 0.2;

inline std::string_view regime_name(RegimeName r) {
  switch (r) {
    case RegimeName::table1: return "table1";
    case RegimeName::table23: return "table23";
    case RegimeName::custom: return "custom";
  }
  return "custom";
}

/// A number as printed in a table: its value and the count of printed decimals.
struct PrintedValue {
  double value = 0.0;
  int decimals = 0;
  std::string text;

  /// Half a unit in the last printed digit.
  double half_unit() const { return 0.5 * std::pow(10.0, -decimals); }
};

inline PrintedValue parse_printed(std::string_view text) {
  PrintedValue p;
  p.text = std::string(text);
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, p.value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("not a printed decimal: '" + std::string(text) + "'");
  }
  const auto dot = text.find('.');
  p.decimals = dot == std::string_view::npos ? 0 : static_cast<int>(text.size() - dot - 1);
  return p;
}

/// Rounds half away from zero at `decimals` places. A scaled value within
/// 1e-9 of a tie counts as a tie, since decimal ties are rarely exact in binary.
inline double round_half_away(double x, int decimals) {
  const double scale = std::pow(10.0, decimals);
  const double scaled = std::fabs(x) * scale;
  double whole = std::floor(scaled);
  if (scaled - whole >= 0.5 - 1e-9) whole += 1.0;
  return std::copysign(whole / scale, x);
}

struct GoldenRow {
  int table = 0;
  std::string state;
  StateLabel label;
  std::optional<double> g;
  std::optional<double> coupling;
  std::optional<double> screening;
  PrintedValue present;
  std::optional<PrintedValue> reference;
  std::optional<PrintedValue> alt_1;
  std::optional<PrintedValue> alt_2;
};

struct GoldenTables {
  std::vector<GoldenRow> rows;

  std::vector<GoldenRow> table(int id) const {
    std::vector<GoldenRow> out;
    for (const auto& r : rows) {
      if (r.table == id) out.push_back(r);
    }
    return out;
  }
};

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::optional<PrintedValue> optional_printed(std::string_view s) {
  s = trim(s);
  if (s.empty() || s == "-") return std::nullopt;
  return parse_printed(s);
}

inline std::optional<double> optional_number(std::string_view s) {
  s = trim(s);
  if (s.empty() || s == "-") return std::nullopt;
  return parse_printed(s).value;
}

inline int parse_int(std::string_view s) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace detail

/// Parses the golden-table format: '#' comment lines, then rows
///   table,state,n,ell,g,A,alpha,present,reference,alt_1,alt_2
/// with empty or '-' for absent values.
inline GoldenTables parse_golden(std::string_view text) {
  GoldenTables out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = detail::trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto f = detail::split_csv(line);
    if (f.size() != 11) {
      throw std::invalid_argument("golden data line " + std::to_string(line_no) + ": expected 11 fields, got " +
                                  std::to_string(f.size()));
    }
    try {
      GoldenRow row;
      row.table = detail::parse_int(f[0]);
      row.state = std::string(detail::trim(f[1]));
      row.label = StateLabel(detail::parse_int(f[2]), detail::parse_int(f[3]));
      if (spectroscopic_label(row.label) != row.state) {
        throw std::invalid_argument("label '" + row.state + "' does not match (n, ell)");
      }
      row.g = detail::optional_number(f[4]);
      row.coupling = detail::optional_number(f[5]);
      row.screening = detail::optional_number(f[6]);
      row.present = parse_printed(detail::trim(f[7]));
      row.reference = detail::optional_printed(f[8]);
      row.alt_1 = detail::optional_printed(f[9]);
      row.alt_2 = detail::optional_printed(f[10]);
      if (row.table == 1 && !row.g) throw std::invalid_argument("table 1 rows need g");
      if (row.table != 1 && (!row.coupling || !row.screening)) {
        throw std::invalid_argument("table 2/3 rows need A and alpha");
      }
      out.rows.push_back(std::move(row));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("golden data line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

/// The embedded golden tables, or the file named by YUKAWA_GOLDEN_PATH.
inline GoldenTables load_golden() {
  if (const char* path = std::getenv("YUKAWA_GOLDEN_PATH"); path != nullptr && *path != '\0') {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string("cannot read golden data file ") + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_golden(buf.str());
  }
  return parse_golden(detail::kEmbeddedGoldenTables);
}

/// Oracle outcome without the sampled wavefunction.
struct OracleSummary {
  double energy = 0.0;
  int node_count = 0;
  double log_derivative_mismatch = 0.0;
  bool converged = false;
};

struct ComparisonRow {
  std::string state;
  StateLabel label;
  double coupling = 0.0;
  double screening = 0.0;
  std::optional<double> g;
  EnergyBreakdown perturbative;
  std::optional<OracleSummary> oracle;
  std::optional<std::string> oracle_error;
  std::optional<PrintedValue> ref_present;
  std::optional<PrintedValue> ref_exact;
  std::optional<PrintedValue> alt_1;
  std::optional<PrintedValue> alt_2;
  std::optional<double> dev_present;  ///< perturbative - printed present value
  std::optional<double> dev_exact;    ///< oracle - printed reference value
};

inline PhysicalContext context_for(const UnitRegime& regime, double coupling, double screening) {
  return PhysicalContext(regime.hbar, regime.mass, coupling, screening);
}

inline ComparisonRow compute_state(const UnitRegime& regime, double coupling, double screening,
                                   const StateLabel& s, bool with_oracle) {
  const PhysicalContext ctx = context_for(regime, coupling, screening);
  ComparisonRow row;
  row.state = spectroscopic_label(s);
  row.label = s;
  row.coupling = coupling;
  row.screening = screening;
  row.perturbative = total_energy(ctx, s);
  if (with_oracle) {
    try {
      const auto sol = solve_bound_state(ctx, s.ell, s.n);
      row.oracle = OracleSummary{sol.energy, sol.node_count, sol.log_derivative_mismatch, sol.converged};
      if (!sol.converged) row.oracle_error = "oracle did not converge";
    } catch (const std::exception& e) {
      row.oracle_error = std::string(e.what()) + " [state " + row.state + ", A=" + std::to_string(coupling) +
                         ", alpha=" + std::to_string(screening) + "]";
    }
  }
  return row;
}

inline ComparisonRow compare_golden(const GoldenRow& golden, bool with_oracle) {
  ComparisonRow row;
  if (golden.table == 1) {
    row = compute_state(UnitRegime::table1(), kTable1Coupling, *golden.g * kTable1Coupling, golden.label,
                        with_oracle);
    row.g = golden.g;
  } else {
    row = compute_state(UnitRegime::table23(), *golden.coupling, *golden.screening, golden.label, with_oracle);
  }
  row.state = golden.state;
  row.ref_present = golden.present;
  row.ref_exact = golden.reference;
  row.alt_1 = golden.alt_1;
  row.alt_2 = golden.alt_2;
  row.dev_present = row.perturbative.total - golden.present.value;
  if (row.oracle && golden.reference) row.dev_exact = row.oracle->energy - golden.reference->value;
  return row;
}

/// One row per printed row of the requested table, in printed order.
inline std::vector<ComparisonRow> reproduce_table(int table_id, bool with_oracle,
                                                  const GoldenTables& golden = load_golden()) {
  if (table_id < 1 || table_id > 3) {
    throw std::invalid_argument("table id must be 1, 2 or 3 (got " + std::to_string(table_id) + ")");
  }
  std::vector<ComparisonRow> rows;
  for (const auto& g : golden.table(table_id)) rows.push_back(compare_golden(g, with_oracle));
  return rows;
}

/// Float slack on tolerance comparisons, so that exact decimal ties
/// (|deviation| == tolerance in real arithmetic) are not lost to binary rounding.
inline constexpr double kTieSlack = 1e-12;

/// Tolerance on the perturbative deviation: `override_tol` if given,
/// otherwise half a unit in the row's last printed digit.
inline double present_tolerance(const ComparisonRow& row, std::optional<double> override_tol = std::nullopt) {
  if (override_tol) return *override_tol;
  return row.ref_present ? row.ref_present->half_unit() : 0.0;
}

inline bool present_within_tolerance(const ComparisonRow& row, std::optional<double> override_tol = std::nullopt) {
  if (!row.dev_present) return true;
  return std::fabs(*row.dev_present) <= present_tolerance(row, override_tol) + kTieSlack;
}

enum class ExitStatus : int { success = 0, golden_deviation = 1, oracle_failure = 2, invalid_arguments = 3 };

/// Oracle failure takes precedence over golden deviations.
inline ExitStatus verdict(const std::vector<ComparisonRow>& rows, bool with_oracle,
                          std::optional<double> override_tol = std::nullopt) {
  bool deviation = false;
  bool oracle_failed = false;
  for (const auto& r : rows) {
    if (!present_within_tolerance(r, override_tol)) deviation = true;
    if (with_oracle && r.oracle_error) oracle_failed = true;
  }
  if (oracle_failed) return ExitStatus::oracle_failure;
  if (deviation) return ExitStatus::golden_deviation;
  return ExitStatus::success;
}

enum class Format { human, csv, json };

inline Format parse_format(std::string_view s) {
  if (s == "human") return Format::human;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

inline constexpr std::string_view kCsvHeader =
    "state,n,ell,A,alpha,epsilon,shift,de1,de2,total,oracle,ref_present,ref_exact,dev_present,dev_exact";

namespace detail {

/// Shortest fixed-notation text that parses back to the same double.
inline std::string format_double(double v) {
  char buf[512];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

inline std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

inline std::optional<double> oracle_energy(const ComparisonRow& r) {
  return r.oracle ? std::optional<double>(r.oracle->energy) : std::nullopt;
}

inline std::string fixed(double v, int decimals) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(decimals) << v;
  return os.str();
}

inline std::string emit_csv(const std::vector<ComparisonRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.state;
    out += ',' + std::to_string(r.label.n);
    out += ',' + std::to_string(r.label.ell);
    out += ',' + format_double(r.coupling);
    out += ',' + format_double(r.screening);
    out += ',' + format_double(r.perturbative.epsilon);
    out += ',' + format_double(r.perturbative.constant_shift);
    out += ',' + format_double(r.perturbative.de1);
    out += ',' + format_double(r.perturbative.de2);
    out += ',' + format_double(r.perturbative.total);
    out += ',' + format_optional(oracle_energy(r));
    out += ',' + (r.ref_present ? r.ref_present->text : std::string());
    out += ',' + (r.ref_exact ? r.ref_exact->text : std::string());
    out += ',' + format_optional(r.dev_present);
    out += ',' + format_optional(r.dev_exact);
    out += '\n';
  }
  return out;
}

inline std::string emit_json(const std::vector<ComparisonRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  const auto opt = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  const auto printed = [](const std::optional<PrintedValue>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(v->value) : nlohmann::ordered_json(nullptr);
  };
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["state"] = r.state;
    o["n"] = r.label.n;
    o["ell"] = r.label.ell;
    o["A"] = r.coupling;
    o["alpha"] = r.screening;
    o["epsilon"] = r.perturbative.epsilon;
    o["shift"] = r.perturbative.constant_shift;
    o["de1"] = r.perturbative.de1;
    o["de2"] = r.perturbative.de2;
    o["total"] = r.perturbative.total;
    o["oracle"] = opt(oracle_energy(r));
    o["ref_present"] = printed(r.ref_present);
    o["ref_exact"] = printed(r.ref_exact);
    o["dev_present"] = opt(r.dev_present);
    o["dev_exact"] = opt(r.dev_exact);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline std::string emit_human(const std::vector<ComparisonRow>& rows) {
  const bool any_g = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.g.has_value(); });
  const bool any_oracle = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.oracle || r.oracle_error; });
  std::ostringstream os;
  os << pad("state", 5) << pad(any_g ? "g" : "A", 9) << pad("alpha", 10) << pad("perturbative", 14)
     << pad("printed", 12) << pad("dev", 11);
  if (any_oracle) os << pad("oracle", 14) << pad("reference", 12) << pad("dev", 11);
  os << '\n';
  for (const auto& r : rows) {
    const int decimals = r.ref_present ? r.ref_present->decimals : 6;
    os << pad(r.state, 5) << pad(r.g ? fixed(*r.g, 3) : fixed(r.coupling, 2), 9) << pad(fixed(r.screening, 5), 10)
       << pad(fixed(round_half_away(r.perturbative.total, decimals), decimals), 14)
       << pad(r.ref_present ? r.ref_present->text : "-", 12)
       << pad(r.dev_present ? fixed(*r.dev_present, 7) : "-", 11);
    if (any_oracle) {
      if (r.oracle) {
        os << pad(fixed(r.oracle->energy, 8), 14);
      } else {
        os << pad(r.oracle_error ? "FAILED" : "-", 14);
      }
      os << pad(r.ref_exact ? r.ref_exact->text : "-", 12) << pad(r.dev_exact ? fixed(*r.dev_exact, 7) : "-", 11);
    }
    os << '\n';
    if (r.oracle_error) os << "      oracle: " << *r.oracle_error << '\n';
  }
  return os.str();
}

}  // namespace detail

inline std::string emit(const std::vector<ComparisonRow>& rows, Format format) {
  if (rows.empty()) throw std::invalid_argument("emit: no rows to emit");
  switch (format) {
    case Format::csv: return detail::emit_csv(rows);
    case Format::json: return detail::emit_json(rows);
    case Format::human: return detail::emit_human(rows);
  }
  return {};
}

}  // namespace yukawa::report
