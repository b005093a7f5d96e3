#include "padix/root_counter.hpp"

#include "padix/formulas.hpp"

namespace padix {

std::string to_string(Model m) { return m == Model::Matrix ? "matrix" : "poly"; }

Model parse_model(std::string_view s) {
  if (s == "matrix") return Model::Matrix;
  if (s == "poly") return Model::Poly;
  throw std::invalid_argument("model must be 'matrix' or 'poly'");
}

std::string to_string(InconclusiveReason r) {
  switch (r) {
    case InconclusiveReason::PrecisionExhausted: return "PrecisionExhausted";
    case InconclusiveReason::DepthExceeded: return "DepthExceeded";
    case InconclusiveReason::NonSeparableSuspect: return "NonSeparableSuspect";
  }
  return "?";
}

std::string RootCountResult::describe() const {
  if (is_exact()) return "Exact(" + std::to_string(*count) + ")";
  return "Inconclusive(" + to_string(reason) + ")";
}

RootCountResult combine(std::span<const RootCountResult> parts, std::span<const int> weights) {
  int total = 0, digits = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    digits = std::max(digits, parts[i].digits_consumed);
    if (!parts[i].is_exact()) return RootCountResult::inconclusive(parts[i].reason, digits);
    total += weights[i] * parts[i].value();
  }
  return RootCountResult::exact(total, digits);
}

namespace {

template <class Arith>
std::vector<typename Arith::word_type> to_words(const std::vector<PadicDigits>& F, const Arith& ar) {
  std::vector<typename Arith::word_type> out;
  for (const auto& c : F) {
    if (c.base() != ar.base()) throw std::invalid_argument("base mismatch");
    if (c.known_digits() < ar.precision()) throw ArithmeticError("coefficient precision below ring precision");
    out.push_back(ar.from_big(c.value()));
  }
  return out;
}

int common_precision(const std::vector<PadicDigits>& F) {
  if (F.empty()) throw std::invalid_argument("empty polynomial");
  int k = F.front().known_digits();
  for (const auto& c : F) k = std::min(k, c.known_digits());
  return k;
}

}  // namespace

RootCountResult count_integral_roots(const std::vector<PadicDigits>& F, const AnyRing& R, CountBudget b) {
  return std::visit(
      [&](const auto& ring) {
        auto w = to_words(F, ring.arith());
        return count_roots(std::span<const typename std::decay_t<decltype(ring)>::Word>(w), ring, Region::Integral, b);
      },
      R);
}

RootCountResult count_maximal_ideal_roots(const std::vector<PadicDigits>& F, const AnyRing& R, CountBudget b) {
  return std::visit(
      [&](const auto& ring) {
        auto w = to_words(F, ring.arith());
        return count_roots(std::span<const typename std::decay_t<decltype(ring)>::Word>(w), ring, Region::MaximalIdeal,
                           b);
      },
      R);
}

RootCountResult count_field_roots(const std::vector<PadicDigits>& P, const AnyRing& R, CountBudget b) {
  return std::visit(
      [&](const auto& ring) {
        auto w = to_words(P, ring.arith());
        return count_field_roots(std::span<const typename std::decay_t<decltype(ring)>::Word>(w), ring, b);
      },
      R);
}

NewRootTable mobius_table(std::vector<RootCountResult> all) {
  NewRootTable t;
  t.r_max = static_cast<int>(all.size());
  t.all = std::move(all);
  for (int r = 1; r <= t.r_max; ++r) {
    std::vector<RootCountResult> parts;
    std::vector<int> weights;
    for (int d = 1; d <= r; ++d) {
      if (r % d) continue;
      parts.push_back(t.all[d - 1]);
      weights.push_back(mobius(r / d));
    }
    t.fresh.push_back(combine(parts, weights));
  }
  return t;
}

NewRootTable new_counts_unramified(const std::vector<PadicDigits>& F, Model model, int r_max, CountBudget b) {
  if (r_max < 1 || r_max > kMaxExtensionDegree) throw std::invalid_argument("r_max out of range");
  const int k = common_precision(F);
  const PrimeBase p = F.front().base();
  std::vector<RootCountResult> all;
  for (int d = 1; d <= r_max; ++d) {
    AnyRing R = make_unramified(p, d, k);
    all.push_back(model == Model::Poly ? count_field_roots(F, R, b) : count_integral_roots(F, R, b));
  }
  return mobius_table(std::move(all));
}

RootCountResult new_count_ramified_quadratic(const std::vector<PadicDigits>& P, const AnyRing& R, CountBudget b) {
  const RingDescriptor& d = descriptor_of(R);
  if (d.e != 2 || d.f != 1) throw std::invalid_argument("expected a ramified quadratic ring");
  const int k = std::visit([](const auto& r) { return r.base_precision(); }, R);
  RootCountResult in_k = count_field_roots(P, R, b);
  RootCountResult in_base = count_field_roots(P, make_unramified(d.p, 1, k), b);
  RootCountResult parts[] = {in_k, in_base};
  int weights[] = {1, -1};
  return combine(parts, weights);
}

}  // namespace padix
