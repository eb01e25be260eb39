#include "chistar/modforms.hpp"

#include <array>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace chistar {

namespace {

constexpr std::array<std::string_view, 8> kNames = {"E2", "E4", "E6", "Delta", "j", "f", "chi", "chi_star"};

std::shared_mutex cache_mutex;
std::map<std::pair<int, long>, NamedSeries>& cache() {
  static std::map<std::pair<int, long>, NamedSeries> c;
  return c;
}

NamedSeries compute(SeriesName name, long T) {
  if (name == SeriesName::E2 || name == SeriesName::E4 || name == SeriesName::E6) {
    int k = name == SeriesName::E2 ? 2 : name == SeriesName::E4 ? 4 : 6;
    return {name, RationalAhm(eisenstein_qexp(k, T)), T};
  }
  // Division by Delta (valuation 1) costs two orders of precision.
  long base = T + 2;
  RationalSeries e4 = eisenstein_qexp(4, base), e6 = eisenstein_qexp(6, base);
  RationalSeries e4c = e4 * e4 * e4;
  RationalSeries delta = (e4c - e6 * e6).scaled(make_rational(1, 1728));
  RationalSeries out;
  switch (name) {
    case SeriesName::Delta:
      out = delta;
      break;
    case SeriesName::j:
      out = e4c * series_invert(delta);
      break;
    case SeriesName::f:
      out = e4 * e6 * series_invert(delta);
      break;
    case SeriesName::chi:
    case SeriesName::chi_star: {
      RationalSeries f = e4 * e6 * series_invert(delta);
      RationalSeries chi = eisenstein_qexp(2, base) * f;
      if (name == SeriesName::chi) {
        out = chi;
        break;
      }
      std::vector<RationalSeries> y{chi.truncated(T), (-f).truncated(T)};
      return {name, RationalAhm(std::move(y)), T};
    }
    default:
      break;
  }
  return {name, RationalAhm(out.truncated(T)), T};
}

}  // namespace

std::string_view series_name(SeriesName n) { return kNames[static_cast<std::size_t>(n)]; }

SeriesName parse_series_name(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i)
    if (kNames[i] == s) return static_cast<SeriesName>(i);
  throw ParseError("unknown series '" + std::string(s) + "'");
}

Integer sigma(int k, long n) {
  if (n < 1 || k < 0) throw InvalidArgument("sigma needs n >= 1 and k >= 0");
  Integer s = 0, p;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    s += p;
    long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      s += p;
    }
  }
  return s;
}

RationalSeries eisenstein_qexp(int k, long T) {
  long scale;
  switch (k) {
    case 2: scale = -24; break;
    case 4: scale = 240; break;
    case 6: scale = -504; break;
    default: throw InvalidArgument("eisenstein_qexp supports k = 2, 4, 6");
  }
  if (T < 1) throw InvalidArgument("eisenstein_qexp needs T >= 1");
  std::vector<Rational> c(static_cast<std::size_t>(T));
  c[0] = 1;
  for (long n = 1; n < T; ++n) c[static_cast<std::size_t>(n)] = Rational(sigma(k - 1, n) * scale);
  return RationalSeries(1, 0, std::move(c), T);
}

NamedSeries derived_qexp(SeriesName name, long T) {
  if (T < 2) throw InvalidArgument("derived_qexp needs T >= 2");
  auto key = std::make_pair(static_cast<int>(name), T);
  {
    std::shared_lock lock(cache_mutex);
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  NamedSeries s = compute(name, T);
  std::unique_lock lock(cache_mutex);
  return cache().emplace(key, std::move(s)).first->second;
}

}  // namespace chistar
