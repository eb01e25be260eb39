#pragma once

#include <string>
#include <string_view>

#include "chistar/ahm.hpp"

namespace chistar {

enum class SeriesName { E2, E4, E6, Delta, j, f, chi, chi_star };

std::string_view series_name(SeriesName n);
// Throws ParseError for unknown names.
SeriesName parse_series_name(std::string_view s);

struct NamedSeries {
  SeriesName name;
  RationalAhm series;
  long truncation;
};

// Sum of d^k over the positive divisors d of n.
Integer sigma(int k, long n);

// E2 = 1 - 24 sum sigma_1(n) q^n, E4 = 1 + 240 sum sigma_3(n) q^n,
// E6 = 1 - 504 sum sigma_5(n) q^n, exact below q^T.
RationalSeries eisenstein_qexp(int k, long T);

// Exact expansion known below q^T, built from the Eisenstein series:
//   Delta = (E4^3 - E6^2)/1728, j = E4^3/Delta, f = E4 E6/Delta,
//   chi = E2 f, chi_star = chi - Y f.
// Results are memoised per (name, T); the cache is safe for concurrent use.
NamedSeries derived_qexp(SeriesName name, long T);

}  // namespace chistar
