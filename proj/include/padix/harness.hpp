#pragma once

#include "padix/extension_ring.hpp"
#include "padix/formulas.hpp"
#include "padix/model.hpp"
#include "padix/root_counter.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace padix {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kCsvHeader =
    "model,p,n,k,target,scope,mean,stderr,n_eff,n_inconclusive,lower,upper,verdict,seed";

// all      : every root in O_K
// field    : every root in K
// new      : roots generating K (whole field for polynomials; eigenvalues are integral anyway)
// integral : roots in O_K generating K
// complement : n minus the roots in Q_p^un (pseudo-target "outside-un")
enum class Scope { All, Field, New, Integral, Complement };
std::string to_string(Scope s);
Scope parse_scope(std::string_view s);

struct Target {
  std::optional<RingDescriptor> ring;  // empty for outside-un
  Scope scope = Scope::New;
  std::string name() const;  // descriptor text or "outside-un"
  friend bool operator==(const Target&, const Target&) = default;
};

// "unram:2@new;eis:2:1:-3,0,1@new;outside-un"
std::vector<Target> parse_targets(std::string_view text, PrimeBase p);
std::string format_targets(const std::vector<Target>& targets);

struct ExperimentSpec {
  Model model = Model::Poly;
  PrimeBase p{3};
  int n = 3;
  int k = 16;
  int k_max = 64;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 0;
  std::vector<Target> targets;
  CountBudget budget;
  int workers = 1;
  bool paranoid = false;
  bool digest = false;
  double inconclusive_cap = 1e-3;

  // Throws std::invalid_argument on a bad spec.
  void validate() const;
};

enum class Verdict { Within, Above, Below, NoBand };
std::string to_string(Verdict v);
Verdict parse_verdict(std::string_view s);
Verdict judge(double mean, double stderr_, std::optional<double> lower, std::optional<double> upper);

struct EstimateRow {
  std::string model;
  std::uint32_t p = 0;
  int n = 0;
  int k = 0;
  std::string target;
  std::string scope;
  double mean = 0;
  double stderr_ = 0;
  std::uint64_t n_eff = 0;
  std::uint64_t n_inconclusive = 0;
  std::uint64_t escalations = 0;
  std::optional<double> lower, upper;
  Verdict verdict = Verdict::NoBand;
  std::uint64_t seed = 0;
  std::string band_note;

  double inconclusive_rate() const {
    const auto tot = n_eff + n_inconclusive;
    return tot ? static_cast<double>(n_inconclusive) / static_cast<double>(tot) : 0.0;
  }
};

struct ReportBundle {
  ExperimentSpec spec;
  std::vector<EstimateRow> rows;
  double wall_seconds = 0;
  std::string version = kVersion;
  std::optional<std::string> digest;
  std::uint64_t paranoid_violations = 0;
  std::vector<std::string> violation_notes;  // first few
};

// Band attached to a target, if the formulas module defines one.
std::optional<FormulaBand> band_for(Model model, PrimeBase p, int n, const Target& t);

// Per-sample values, one int per target (kInconclusiveValue when not decisive).
inline constexpr int kInconclusiveValue = -1000000;
struct SampleValues {
  std::vector<int> values;
  std::vector<std::uint8_t> escalated;
};

// Evaluates one sample index; exposed for tests and the acceptance suite.
class SampleEvaluator {
 public:
  explicit SampleEvaluator(const ExperimentSpec& spec);
  ~SampleEvaluator();
  SampleEvaluator(SampleEvaluator&&) noexcept;
  SampleValues evaluate(std::uint64_t index);
  // Violations seen so far (paranoid mode).
  std::uint64_t violations() const;
  const std::vector<std::string>& violation_notes() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

ReportBundle run_experiment(const ExperimentSpec& spec);

// Outside-Q_p^un row from per-sample unramified new counts r = 1..n (index r-1); inconclusive samples carry
// kInconclusiveValue in any slot.
EstimateRow derive_outside_un(Model model, PrimeBase p, int n, const std::vector<std::vector<int>>& new_counts,
                              std::uint64_t seed, int k);

enum class ReportFormat { Csv, Json, Table };
ReportFormat parse_format(std::string_view s);

void write_report(const ReportBundle& bundle, ReportFormat format, std::ostream& out);
void write_report(const ReportBundle& bundle, ReportFormat format, const std::string& path);
std::string format_decimal_field(double v);

// Reading back for `check` / `report`.
std::vector<EstimateRow> read_rows(const std::string& path);
std::vector<EstimateRow> parse_csv_rows(std::istream& in);

struct CheckOutcome {
  int exit_code = 0;  // 0 ok, 1 band violation, 3 inconclusive rate
  std::vector<std::string> messages;
};
CheckOutcome check_rows(const std::vector<EstimateRow>& rows, double inconclusive_cap = 1e-3);
CheckOutcome check(const std::string& path, double inconclusive_cap = 1e-3);
// Exit status for a finished run: rows plus paranoid violations.
CheckOutcome assess(const ReportBundle& bundle);

}  // namespace padix
