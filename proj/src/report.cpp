#include "padix/harness.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace padix {

ReportFormat parse_format(std::string_view s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  if (s == "table") return ReportFormat::Table;
  throw std::invalid_argument("unknown format '" + std::string(s) + "' (csv|json|table)");
}

std::string format_decimal_field(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.15g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string opt_field(const std::optional<double>& v) { return v ? format_decimal_field(*v) : ""; }

void write_csv(const ReportBundle& b, std::ostream& out) {
  out << kCsvHeader << "\n";
  for (const auto& r : b.rows) {
    out << r.model << ',' << r.p << ',' << r.n << ',' << r.k << ',' << csv_field(r.target) << ',' << r.scope << ','
        << format_decimal_field(r.mean) << ',' << format_decimal_field(r.stderr_) << ',' << r.n_eff << ','
        << r.n_inconclusive << ',' << opt_field(r.lower) << ',' << opt_field(r.upper) << ',' << to_string(r.verdict)
        << ',' << r.seed << "\n";
  }
}

nlohmann::ordered_json spec_json(const ExperimentSpec& s) {
  nlohmann::ordered_json j;
  j["model"] = to_string(s.model);
  j["p"] = s.p.value();
  j["n"] = s.n;
  j["precision"] = s.k;
  j["precision_max"] = s.k_max;
  j["samples"] = s.samples;
  j["seed"] = s.seed;
  j["targets"] = format_targets(s.targets);
  j["max_depth"] = s.budget.max_depth;
  j["min_remaining_digits"] = s.budget.min_remaining_digits;
  j["workers"] = s.workers;
  j["paranoid"] = s.paranoid;
  j["inconclusive_cap"] = format_decimal_field(s.inconclusive_cap);
  return j;
}

void write_json(const ReportBundle& b, std::ostream& out) {
  nlohmann::ordered_json j;
  j["version"] = b.version;
  j["spec"] = spec_json(b.spec);
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : b.rows) {
    nlohmann::ordered_json row;
    row["model"] = r.model;
    row["p"] = r.p;
    row["n"] = r.n;
    row["k"] = r.k;
    row["target"] = r.target;
    row["scope"] = r.scope;
    row["mean"] = format_decimal_field(r.mean);
    row["stderr"] = format_decimal_field(r.stderr_);
    row["n_eff"] = r.n_eff;
    row["n_inconclusive"] = r.n_inconclusive;
    row["escalations"] = r.escalations;
    row["lower"] = r.lower ? nlohmann::ordered_json(format_decimal_field(*r.lower)) : nlohmann::ordered_json();
    row["upper"] = r.upper ? nlohmann::ordered_json(format_decimal_field(*r.upper)) : nlohmann::ordered_json();
    row["verdict"] = to_string(r.verdict);
    row["seed"] = r.seed;
    row["band_note"] = r.band_note;
    j["rows"].push_back(std::move(row));
  }
  j["wall_time_seconds"] = format_decimal_field(b.wall_seconds);
  j["paranoid_violations"] = b.paranoid_violations;
  if (b.digest) j["digest"] = *b.digest;
  out << j.dump(2) << "\n";
}

void write_table(const ReportBundle& b, std::ostream& out) {
  out << std::left << std::setw(22) << "target" << std::setw(11) << "scope" << std::right << std::setw(14) << "mean"
      << std::setw(12) << "stderr" << std::setw(10) << "n_eff" << std::setw(7) << "inc" << std::setw(12) << "lower"
      << std::setw(12) << "upper" << "  verdict\n";
  for (const auto& r : b.rows) {
    auto num = [](double v, int prec) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(prec) << v;
      return os.str();
    };
    out << std::left << std::setw(22) << r.target << std::setw(11) << r.scope << std::right << std::setw(14)
        << num(r.mean, 6) << std::setw(12) << num(r.stderr_, 6) << std::setw(10) << r.n_eff << std::setw(7)
        << r.n_inconclusive << std::setw(12) << (r.lower ? num(*r.lower, 6) : "-") << std::setw(12)
        << (r.upper ? num(*r.upper, 6) : "-") << "  " << to_string(r.verdict) << "\n";
  }
  out << b.spec.samples << " samples, " << to_string(b.spec.model) << " p=" << b.spec.p.value() << " n=" << b.spec.n
      << ", " << std::fixed << std::setprecision(2) << b.wall_seconds << " s\n";
}

}  // namespace

void write_report(const ReportBundle& bundle, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::Csv: write_csv(bundle, out); break;
    case ReportFormat::Json: write_json(bundle, out); break;
    case ReportFormat::Table: write_table(bundle, out); break;
  }
}

void write_report(const ReportBundle& bundle, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_report(bundle, format, out);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("bad ") + what + " field '" + s + "'");
  }
}

std::uint64_t to_u64(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    auto v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(std::string("bad ") + what + " field '" + s + "'");
  }
}

std::optional<double> opt_double(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  if (j.is_string()) return to_double(j.get<std::string>(), "band");
  return j.get<double>();
}

double json_double(const nlohmann::json& j) { return j.is_string() ? to_double(j.get<std::string>(), "decimal") : j.get<double>(); }

std::vector<EstimateRow> parse_json_rows(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  std::vector<EstimateRow> rows;
  for (const auto& r : j.at("rows")) {
    EstimateRow row;
    row.model = r.at("model").get<std::string>();
    row.p = r.at("p").get<std::uint32_t>();
    row.n = r.at("n").get<int>();
    row.k = r.at("k").get<int>();
    row.target = r.at("target").get<std::string>();
    row.scope = r.at("scope").get<std::string>();
    row.mean = json_double(r.at("mean"));
    row.stderr_ = json_double(r.at("stderr"));
    row.n_eff = r.at("n_eff").get<std::uint64_t>();
    row.n_inconclusive = r.at("n_inconclusive").get<std::uint64_t>();
    if (r.contains("escalations")) row.escalations = r.at("escalations").get<std::uint64_t>();
    row.lower = opt_double(r.at("lower"));
    row.upper = opt_double(r.at("upper"));
    row.verdict = parse_verdict(r.at("verdict").get<std::string>());
    row.seed = r.at("seed").get<std::uint64_t>();
    if (r.contains("band_note")) row.band_note = r.at("band_note").get<std::string>();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<EstimateRow> parse_csv_rows(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty report");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw std::runtime_error("unexpected CSV header");
  std::vector<EstimateRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_csv_line(line);
    if (f.size() != 14) throw std::runtime_error("expected 14 CSV fields, got " + std::to_string(f.size()));
    EstimateRow r;
    r.model = f[0];
    r.p = static_cast<std::uint32_t>(to_u64(f[1], "p"));
    r.n = static_cast<int>(to_u64(f[2], "n"));
    r.k = static_cast<int>(to_u64(f[3], "k"));
    r.target = f[4];
    r.scope = f[5];
    r.mean = to_double(f[6], "mean");
    r.stderr_ = to_double(f[7], "stderr");
    r.n_eff = to_u64(f[8], "n_eff");
    r.n_inconclusive = to_u64(f[9], "n_inconclusive");
    if (!f[10].empty()) r.lower = to_double(f[10], "lower");
    if (!f[11].empty()) r.upper = to_double(f[11], "upper");
    r.verdict = parse_verdict(f[12]);
    r.seed = to_u64(f[13], "seed");
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<EstimateRow> read_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  int c = in.peek();
  while (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
    in.get();
    c = in.peek();
  }
  if (c == '{') return parse_json_rows(in);
  return parse_csv_rows(in);
}

}  // namespace padix
