#include "padix/extension_ring.hpp"

#include <charconv>
#include <sstream>

namespace padix {

template class ExtensionRing<Mod64>;
template class ExtensionRing<Mod128>;
template class ExtensionRing<ModBig>;

namespace {

long long parse_ll(std::string_view s, std::string_view what) {
  long long v = 0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e)
    throw std::invalid_argument("bad " + std::string(what) + ": '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

RingDescriptor RingDescriptor::unramified(PrimeBase p, int f) {
  if (f < 1 || f > kMaxExtensionDegree) throw std::invalid_argument("unramified degree out of range");
  RingDescriptor d;
  d.p = p;
  d.f = f;
  return d;
}

RingDescriptor RingDescriptor::eisenstein_over(PrimeBase p, int f, std::vector<long long> E,
                                               std::optional<int> disc_val) {
  const int e = static_cast<int>(E.size()) - 1;
  if (e < 2) throw std::invalid_argument("Eisenstein polynomial must have degree >= 2");
  if (f < 1 || e * f > kMaxExtensionDegree) throw std::invalid_argument("extension degree out of range");
  const long long pp = p.value();
  if (E.back() != 1) throw std::invalid_argument("Eisenstein polynomial must be monic");
  if (E[0] % pp != 0 || (E[0] / pp) % pp == 0) throw std::invalid_argument("not Eisenstein: constant term valuation must be 1");
  for (int i = 1; i < e; ++i)
    if (E[i] % pp != 0) throw std::invalid_argument("not Eisenstein: coefficient not divisible by p");
  RingDescriptor d;
  d.p = p;
  d.f = f;
  d.e = e;
  d.eisenstein = std::move(E);
  if (d.is_tame()) {
    const int tame = (e - 1) * f;
    if (disc_val && *disc_val != tame) throw std::invalid_argument("discriminant valuation contradicts tame formula");
    d.disc_val = tame;
  } else {
    if (!disc_val) throw std::invalid_argument("wild ramification: discriminant valuation must be supplied");
    if (*disc_val < e - 1) throw std::invalid_argument("discriminant valuation too small");
    d.disc_val = *disc_val;
  }
  return d;
}

RingDescriptor RingDescriptor::parse(std::string_view text, PrimeBase p) {
  auto parts = split(text, ':');
  if (parts.size() == 2 && parts[0] == "unram") return unramified(p, static_cast<int>(parse_ll(parts[1], "degree")));
  if ((parts.size() == 4 || parts.size() == 5) && parts[0] == "eis") {
    const int e = static_cast<int>(parse_ll(parts[1], "ramification index"));
    const int f = static_cast<int>(parse_ll(parts[2], "inertia degree"));
    std::vector<long long> E;
    for (auto c : split(parts[3], ',')) E.push_back(parse_ll(c, "coefficient"));
    if (static_cast<int>(E.size()) != e + 1) throw std::invalid_argument("Eisenstein coefficient count must be e+1");
    std::optional<int> disc;
    if (parts.size() == 5) {
      if (parts[4].substr(0, 5) != "disc=") throw std::invalid_argument("expected disc=<v>");
      disc = static_cast<int>(parse_ll(parts[4].substr(5), "discriminant valuation"));
    }
    return eisenstein_over(p, f, std::move(E), disc);
  }
  throw std::invalid_argument("unparseable ring descriptor: '" + std::string(text) + "'");
}

std::string RingDescriptor::text() const {
  if (e == 1) return "unram:" + std::to_string(f);
  std::ostringstream os;
  os << "eis:" << e << ":" << f << ":";
  for (std::size_t i = 0; i < eisenstein.size(); ++i) os << (i ? "," : "") << eisenstein[i];
  if (!is_tame()) os << ":disc=" << disc_val;
  return os.str();
}

AnyRing make_ring(const RingDescriptor& d, int k) {
  if (Mod64::fits(d.p, k)) return AnyRing(std::in_place_index<0>, d, k);
  if (Mod128::fits(d.p, k)) return AnyRing(std::in_place_index<1>, d, k);
  return AnyRing(std::in_place_index<2>, d, k);
}

AnyRing make_unramified(PrimeBase p, int f, int k) { return make_ring(RingDescriptor::unramified(p, f), k); }

AnyRing make_eisenstein(const RingDescriptor& base, std::vector<long long> E, int k, std::optional<int> disc_val) {
  if (!base.is_unramified()) throw std::invalid_argument("Eisenstein layer needs an unramified base");
  return make_ring(RingDescriptor::eisenstein_over(base.p, base.f, std::move(E), disc_val), k);
}

const RingDescriptor& descriptor_of(const AnyRing& r) {
  return std::visit([](const auto& ring) -> const RingDescriptor& { return ring.descriptor(); }, r);
}

}  // namespace padix
