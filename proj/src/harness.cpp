#include "padix/harness.hpp"

#include "padix/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace padix {

std::string to_string(Scope s) {
  switch (s) {
    case Scope::All: return "all";
    case Scope::Field: return "field";
    case Scope::New: return "new";
    case Scope::Integral: return "integral";
    case Scope::Complement: return "complement";
  }
  return "?";
}

Scope parse_scope(std::string_view s) {
  if (s == "all") return Scope::All;
  if (s == "field") return Scope::Field;
  if (s == "new") return Scope::New;
  if (s == "integral") return Scope::Integral;
  if (s == "complement") return Scope::Complement;
  throw std::invalid_argument("unknown scope '" + std::string(s) + "' (all|field|new|integral|complement)");
}

std::string Target::name() const { return ring ? ring->text() : "outside-un"; }

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<Target> parse_targets(std::string_view text, PrimeBase p) {
  std::vector<Target> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = strip(text.substr(start, end - start));
    start = end + 1;
    if (item.empty()) continue;
    Target t;
    std::string_view ring = item, scope;
    if (auto at = item.rfind('@'); at != std::string_view::npos) {
      ring = strip(item.substr(0, at));
      scope = strip(item.substr(at + 1));
    }
    if (ring == "outside-un") {
      if (!scope.empty() && scope != "complement") throw std::invalid_argument("outside-un only has scope 'complement'");
      t.scope = Scope::Complement;
    } else {
      t.ring = RingDescriptor::parse(ring, p);
      t.scope = scope.empty() ? Scope::New : parse_scope(scope);
      if (t.scope == Scope::Complement) throw std::invalid_argument("scope 'complement' belongs to outside-un");
      if ((t.scope == Scope::New || t.scope == Scope::Integral) && !t.ring->is_unramified() &&
          !(t.ring->e == 2 && t.ring->f == 1))
        throw std::invalid_argument("new/integral scopes on ramified targets need e=2, f=1");
    }
    out.push_back(std::move(t));
  }
  if (out.empty()) throw std::invalid_argument("no targets given");
  return out;
}

std::string format_targets(const std::vector<Target>& targets) {
  std::string s;
  for (const auto& t : targets) {
    if (!s.empty()) s += ";";
    s += t.name() + "@" + to_string(t.scope);
  }
  return s;
}

void ExperimentSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (k < 1) throw std::invalid_argument("precision must be >= 1");
  if (k > k_max) throw std::invalid_argument("precision exceeds precision-max");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (budget.max_depth < 1 || budget.min_remaining_digits < 1) throw std::invalid_argument("budget must be positive");
  if (targets.empty()) throw std::invalid_argument("no targets");
  for (const auto& t : targets) {
    if (t.ring && t.ring->p != p) throw std::invalid_argument("target prime differs from experiment prime");
    if (t.scope == Scope::Complement && n > kMaxExtensionDegree)
      throw std::invalid_argument("outside-un needs n <= " + std::to_string(kMaxExtensionDegree));
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Within: return "within";
    case Verdict::Above: return "above";
    case Verdict::Below: return "below";
    case Verdict::NoBand: return "no-band";
  }
  return "?";
}

Verdict parse_verdict(std::string_view s) {
  if (s == "within") return Verdict::Within;
  if (s == "above") return Verdict::Above;
  if (s == "below") return Verdict::Below;
  if (s == "no-band") return Verdict::NoBand;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

Verdict judge(double mean, double se, std::optional<double> lower, std::optional<double> upper) {
  if (!lower && !upper) return Verdict::NoBand;
  if (upper && mean > *upper + 3 * se) return Verdict::Above;
  if (lower && mean < *lower - 3 * se) return Verdict::Below;
  return Verdict::Within;
}

std::optional<FormulaBand> band_for(Model model, PrimeBase p, int n, const Target& t) {
  if (t.scope == Scope::Complement) {
    Rational b = outside_un_bound(model, p);
    return FormulaBand::exact(0, b, b, "outside the maximal unramified extension: [0, bound]");
  }
  const RingDescriptor& d = *t.ring;
  if (model == Model::Poly) {
    if (t.scope == Scope::New && d.is_unramified() && d.f <= n) return unramified_poly_band(p, d.f, n);
    if (t.scope == Scope::New && d.e == 2 && d.f == 1 && n >= 3) {
      Rational c = ramified_quadratic_poly_expectation(p, rpow(p.value(), -d.disc_val));
      return FormulaBand::exact(c, c, c, "ramified quadratic: ||Disc|| p^2(p^2+1)/(p^4+p^3+p^2+p+1), n >= 3");
    }
    return std::nullopt;
  }
  if ((t.scope == Scope::New || t.scope == Scope::Integral) && d.is_unramified() && d.f <= n)
    return matrix_unramified_band(p, d.f, n);
  return std::nullopt;
}

// ------------------------------------------------------------------ evaluation plan

namespace {

struct Request {
  RingDescriptor ring;
  bool whole_field;
};

struct LinearForm {
  int constant = 0;
  std::vector<std::pair<int, int>> terms;  // (request, weight)
};

struct Plan {
  std::vector<Request> requests;
  std::vector<LinearForm> forms;
  std::map<int, int> unram_main;  // degree -> request in the model's natural region
  std::map<std::string, std::pair<int, int>> o_vs_k;  // ring text -> (O request, K request)
  std::vector<int> ramified_new;  // target indices measuring new roots of a ramified quadratic
};

Plan make_plan(const ExperimentSpec& spec) {
  Plan plan;
  const bool poly = spec.model == Model::Poly;
  auto req = [&](const RingDescriptor& d, bool field) {
    if (!poly) field = false;
    for (std::size_t i = 0; i < plan.requests.size(); ++i)
      if (plan.requests[i].ring == d && plan.requests[i].whole_field == field) return static_cast<int>(i);
    plan.requests.push_back({d, field});
    const int idx = static_cast<int>(plan.requests.size()) - 1;
    if (d.is_unramified() && field == poly) plan.unram_main[d.f] = idx;
    return idx;
  };
  auto newness = [&](LinearForm& form, const RingDescriptor& d, bool field) {
    if (d.is_unramified()) {
      for (long long dd : divisors(d.f)) {
        const int mu = mobius(d.f / dd);
        if (mu) form.terms.push_back({req(RingDescriptor::unramified(d.p, static_cast<int>(dd)), field), mu});
      }
    } else {
      form.terms.push_back({req(d, field), 1});
      form.terms.push_back({req(RingDescriptor::unramified(d.p, 1), field), -1});
    }
  };
  for (std::size_t ti = 0; ti < spec.targets.size(); ++ti) {
    const Target& t = spec.targets[ti];
    LinearForm form;
    switch (t.scope) {
      case Scope::All: form.terms.push_back({req(*t.ring, false), 1}); break;
      case Scope::Field: form.terms.push_back({req(*t.ring, true), 1}); break;
      case Scope::New: newness(form, *t.ring, poly); break;
      case Scope::Integral: newness(form, *t.ring, false); break;
      case Scope::Complement: {
        // n - sum_{r<=n} sum_{d|r} mu(r/d) all(d) = n - sum_d all(d) sum_{m <= n/d} mu(m)
        form.constant = spec.n;
        for (int d = 1; d <= spec.n; ++d) {
          int w = 0;
          for (int m = 1; m <= spec.n / d; ++m) w += mobius(m);
          if (w) form.terms.push_back({req(RingDescriptor::unramified(spec.p, d), poly), -w});
        }
        break;
      }
    }
    if (t.ring && !t.ring->is_unramified() && (t.scope == Scope::New || t.scope == Scope::Integral))
      plan.ramified_new.push_back(static_cast<int>(ti));
    plan.forms.push_back(std::move(form));
  }
  if (poly) {
    for (std::size_t i = 0; i < plan.requests.size(); ++i) {
      const auto& r = plan.requests[i];
      auto& slot = plan.o_vs_k[r.ring.text()];
      if (slot.first == 0 && slot.second == 0) slot = {-1, -1};
      (r.whole_field ? slot.second : slot.first) = static_cast<int>(i);
    }
  }
  return plan;
}

using AnyArith = std::variant<Mod64, Mod128, ModBig>;

AnyArith make_arith(PrimeBase p, int k) {
  if (Mod64::fits(p, k)) return AnyArith(std::in_place_index<0>, p, k);
  if (Mod128::fits(p, k)) return AnyArith(std::in_place_index<1>, p, k);
  return AnyArith(std::in_place_index<2>, p, k);
}

}  // namespace

struct SampleEvaluator::Impl {
  ExperimentSpec spec;
  Plan plan;
  DigitStream stream;
  std::map<int, AnyArith> ariths;
  std::map<std::pair<int, int>, std::unique_ptr<AnyRing>> rings;  // (request, k)
  std::uint64_t violations = 0;
  std::vector<std::string> notes;

  explicit Impl(const ExperimentSpec& s) : spec(s), plan(make_plan(s)), stream(s.seed, s.p) {}

  const AnyArith& arith(int k) {
    auto it = ariths.find(k);
    if (it == ariths.end()) it = ariths.emplace(k, make_arith(spec.p, k)).first;
    return it->second;
  }

  template <class Arith>
  const ExtensionRing<Arith>& ring(int req, int k) {
    auto key = std::make_pair(req, k);
    auto it = rings.find(key);
    if (it == rings.end()) it = rings.emplace(key, std::make_unique<AnyRing>(make_ring(plan.requests[req].ring, k))).first;
    return std::get<ExtensionRing<Arith>>(*it->second);
  }

  template <class Arith>
  void eval_level(const Arith& ar, std::uint64_t index, const std::vector<int>& pending,
                  std::vector<RootCountResult>& results, CountBudget b) {
    using Word = typename Arith::word_type;
    const int k = ar.precision();
    const int n = spec.n;
    std::vector<Word> F;
    if (spec.model == Model::Poly) {
      F.resize(n + 1);
      for (int i = 0; i <= n; ++i) F[i] = stream.coefficient(ar, index, static_cast<std::uint32_t>(i));
    } else {
      std::vector<Word> A(static_cast<std::size_t>(n) * n);
      for (int c = 0; c < n * n; ++c) A[c] = stream.coefficient(ar, index, static_cast<std::uint32_t>(c));
      F = char_poly_words(ar, std::span<const Word>(A), n);
    }
    const std::span<const Word> Fs(F);
    ResidueProfile direct = make_profile(Fs, ar, Region::Integral);
    std::optional<ResidueProfile> reversed;
    for (int r : pending) {
      const auto& R = ring<Arith>(r, k);
      if (plan.requests[r].whole_field) {
        if (!reversed) {
          std::vector<Word> rev(F.rbegin(), F.rend());
          reversed = make_profile(std::span<const Word>(rev), ar, Region::MaximalIdeal);
        }
        results[r] = count_field_roots(Fs, R, b, &direct, &*reversed);
      } else {
        results[r] = count_roots(Fs, R, Region::Integral, b, &direct);
      }
    }
  }

  void note(std::uint64_t index, const std::string& what) {
    ++violations;
    if (notes.size() < 20) notes.push_back("sample " + std::to_string(index) + ": " + what);
  }

  void paranoid(std::uint64_t index, const std::vector<RootCountResult>& res, const SampleValues& vals) {
    const int n = spec.n;
    std::map<int, int> all;
    for (auto [d, r] : plan.unram_main)
      if (res[r].is_exact()) all[d] = res[r].value();
    int total = 0;
    for (auto [r, a] : all) {
      if (a < 0 || a > n) note(index, "all(" + std::to_string(r) + ") = " + std::to_string(a) + " outside [0, n]");
      bool have = true;
      for (long long d : divisors(r)) have = have && all.count(static_cast<int>(d));
      if (!have) continue;
      std::map<int, int> fresh;
      for (long long d : divisors(r)) {
        int v = 0;
        for (long long e : divisors(d)) v += mobius(d / e) * all[static_cast<int>(e)];
        fresh[static_cast<int>(d)] = v;
        if (v < 0) note(index, "new(" + std::to_string(d) + ") negative");
        if (v % d != 0) note(index, "new(" + std::to_string(d) + ") = " + std::to_string(v) + " not a multiple of its degree");
        if (all[static_cast<int>(d)] > a) note(index, "all(" + std::to_string(d) + ") > all(" + std::to_string(r) + ")");
      }
      int sum = 0;
      for (auto [d, v] : fresh) sum += v;
      if (sum != a) note(index, "Mobius identity fails at r = " + std::to_string(r));
      total += fresh[r];
    }
    for (int t : plan.ramified_new)
      if (vals.values[t] != kInconclusiveValue) {
        if (vals.values[t] < 0) note(index, "negative ramified new count");
        total += vals.values[t];
      }
    if (total > n) note(index, "total counted roots " + std::to_string(total) + " exceeds n");
    for (const auto& [name, pr] : plan.o_vs_k) {
      auto [o, kk] = pr;
      if (o >= 0 && kk >= 0 && res[o].is_exact() && res[kk].is_exact() && res[o].value() > res[kk].value())
        note(index, "integral count exceeds field count for " + name);
    }
  }

  SampleValues evaluate(std::uint64_t index) {
    const std::size_t R = plan.requests.size();
    std::vector<RootCountResult> results(R);
    std::vector<int> level_of(R, 0);
    std::vector<int> pending(R);
    for (std::size_t i = 0; i < R; ++i) pending[i] = static_cast<int>(i);
    int k = spec.k, level = 0;
    CountBudget b = spec.budget;
    while (!pending.empty()) {
      std::visit([&](const auto& ar) { eval_level(ar, index, pending, results, b); }, arith(k));
      std::vector<int> still;
      for (int r : pending) {
        level_of[r] = level;
        if (!results[r].is_exact()) still.push_back(r);
      }
      pending.swap(still);
      if (pending.empty() || k >= spec.k_max) break;
      k = std::min(2 * k, spec.k_max);
      b.max_depth *= 2;
      ++level;
    }
    SampleValues out;
    for (const auto& form : plan.forms) {
      int v = form.constant;
      bool ok = true, esc = false;
      for (auto [r, w] : form.terms) {
        if (!results[r].is_exact()) ok = false;
        else v += w * results[r].value();
        esc = esc || level_of[r] > 0;
      }
      out.values.push_back(ok ? v : kInconclusiveValue);
      out.escalated.push_back(esc ? 1 : 0);
    }
    if (spec.paranoid) paranoid(index, results, out);
    return out;
  }
};

SampleEvaluator::SampleEvaluator(const ExperimentSpec& spec) : impl_(std::make_unique<Impl>(spec)) {}
SampleEvaluator::~SampleEvaluator() = default;
SampleEvaluator::SampleEvaluator(SampleEvaluator&&) noexcept = default;
SampleValues SampleEvaluator::evaluate(std::uint64_t index) { return impl_->evaluate(index); }
std::uint64_t SampleEvaluator::violations() const { return impl_->violations; }
const std::vector<std::string>& SampleEvaluator::violation_notes() const { return impl_->notes; }

// ------------------------------------------------------------------ aggregation

namespace {

struct Accumulator {
  std::int64_t sum = 0;
  __int128 sumsq = 0;
  std::uint64_t n_eff = 0, n_inc = 0, esc = 0;

  void add(int v, bool escalated) {
    if (escalated) ++esc;
    if (v == kInconclusiveValue) {
      ++n_inc;
      return;
    }
    ++n_eff;
    sum += v;
    sumsq += static_cast<__int128>(v) * v;
  }
  double mean() const { return n_eff ? static_cast<double>(static_cast<long double>(sum) / n_eff) : 0.0; }
  double stderr_() const {
    if (n_eff < 2) return 0.0;
    const __int128 num = static_cast<__int128>(n_eff) * sumsq - static_cast<__int128>(sum) * sum;
    const long double var = static_cast<long double>(num) / (static_cast<long double>(n_eff) * (n_eff - 1));
    return static_cast<double>(std::sqrt(var / n_eff));
  }
};

EstimateRow make_row(Model model, PrimeBase p, int n, int k, std::uint64_t seed, const Target& t, const Accumulator& acc) {
  EstimateRow row;
  row.model = to_string(model);
  row.p = p.value();
  row.n = n;
  row.k = k;
  row.target = t.name();
  row.scope = to_string(t.scope);
  row.mean = acc.mean();
  row.stderr_ = acc.stderr_();
  row.n_eff = acc.n_eff;
  row.n_inconclusive = acc.n_inc;
  row.escalations = acc.esc;
  row.seed = seed;
  if (auto band = band_for(model, p, n, t)) {
    row.lower = static_cast<double>(band->lower);
    row.upper = static_cast<double>(band->upper);
    row.band_note = band->provenance;
  }
  row.verdict = acc.n_eff ? judge(row.mean, row.stderr_, row.lower, row.upper) : Verdict::NoBand;
  return row;
}

}  // namespace

ReportBundle run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t N = spec.samples;
  const std::size_t T = spec.targets.size();
  std::vector<std::int32_t> values(N * T);
  std::vector<std::uint8_t> escal(N * T);
  std::atomic<std::uint64_t> next{0};
  constexpr std::uint64_t chunk = 64;
  std::mutex mu;
  std::uint64_t violations = 0;
  std::vector<std::pair<std::uint64_t, std::string>> notes;
  std::exception_ptr failure;

  auto work = [&] {
    try {
      SampleEvaluator ev(spec);
      while (true) {
        const std::uint64_t start = next.fetch_add(chunk);
        if (start >= N) break;
        for (std::uint64_t i = start; i < std::min(N, start + chunk); ++i) {
          SampleValues sv = ev.evaluate(i);
          for (std::size_t t = 0; t < T; ++t) {
            values[i * T + t] = sv.values[t];
            escal[i * T + t] = sv.escalated[t];
          }
        }
      }
      std::lock_guard lock(mu);
      violations += ev.violations();
      for (const auto& s : ev.violation_notes()) {
        const auto idx = std::stoull(s.substr(7));
        notes.emplace_back(idx, s);
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      next.store(N);
    }
  };
  std::vector<std::thread> pool;
  const int w = static_cast<int>(std::min<std::uint64_t>(spec.workers, (N + chunk - 1) / chunk));
  for (int i = 1; i < w; ++i) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ReportBundle bundle;
  bundle.spec = spec;
  for (std::size_t t = 0; t < T; ++t) {
    Accumulator acc;
    for (std::uint64_t i = 0; i < N; ++i) acc.add(values[i * T + t], escal[i * T + t] != 0);
    bundle.rows.push_back(make_row(spec.model, spec.p, spec.n, spec.k, spec.seed, spec.targets[t], acc));
  }
  bundle.paranoid_violations = violations;
  std::sort(notes.begin(), notes.end());
  for (std::size_t i = 0; i < notes.size() && i < 20; ++i) bundle.violation_notes.push_back(notes[i].second);
  if (spec.digest) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::int32_t v : values) {
      const auto u = static_cast<std::uint32_t>(v);
      for (int b = 0; b < 4; ++b) {
        h ^= (u >> (8 * b)) & 0xFFu;
        h *= 0x100000001b3ULL;
      }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    bundle.digest = buf;
  }
  bundle.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return bundle;
}

EstimateRow derive_outside_un(Model model, PrimeBase p, int n, const std::vector<std::vector<int>>& new_counts,
                              std::uint64_t seed, int k) {
  Accumulator acc;
  for (const auto& row : new_counts) {
    if (static_cast<int>(row.size()) < n) throw std::invalid_argument("need new counts for r = 1..n");
    int v = n;
    bool ok = true;
    for (int r = 0; r < n; ++r) {
      if (row[r] == kInconclusiveValue) ok = false;
      else v -= row[r];
    }
    acc.add(ok ? v : kInconclusiveValue, false);
  }
  Target t;
  t.scope = Scope::Complement;
  return make_row(model, p, n, k, seed, t, acc);
}

CheckOutcome check_rows(const std::vector<EstimateRow>& rows, double cap) {
  CheckOutcome out;
  bool rate = false, band = false;
  for (const auto& r : rows) {
    const std::string id = r.model + " " + r.target + "@" + r.scope;
    if (r.inconclusive_rate() > cap) {
      rate = true;
      out.messages.push_back(id + ": inconclusive rate " + std::to_string(r.inconclusive_rate()) + " exceeds cap");
    }
    const Verdict v = judge(r.mean, r.stderr_, r.lower, r.upper);
    if (v == Verdict::Above || v == Verdict::Below) {
      band = true;
      std::ostringstream os;
      os << id << ": mean " << format_decimal_field(r.mean) << " " << to_string(v) << " band ["
         << (r.lower ? format_decimal_field(*r.lower) : "-") << ", " << (r.upper ? format_decimal_field(*r.upper) : "-")
         << "] widened by 3*" << format_decimal_field(r.stderr_);
      out.messages.push_back(os.str());
    }
  }
  out.exit_code = rate ? 3 : band ? 1 : 0;
  return out;
}

CheckOutcome assess(const ReportBundle& bundle) {
  CheckOutcome out = check_rows(bundle.rows, bundle.spec.inconclusive_cap);
  if (bundle.paranoid_violations) {
    out.messages.push_back(std::to_string(bundle.paranoid_violations) + " per-sample invariant violations");
    for (const auto& s : bundle.violation_notes) out.messages.push_back("  " + s);
    if (out.exit_code == 0) out.exit_code = 1;
  }
  return out;
}

CheckOutcome check(const std::string& path, double cap) { return check_rows(read_rows(path), cap); }

}  // namespace padix
