#include "hsbm/binomial.hpp"

#include <limits>
#include <string>

namespace hsbm {

namespace {
constexpr unsigned __int128 kMax128 = ~static_cast<unsigned __int128>(0);
}

unsigned __int128 binomial_u128(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    const auto f = static_cast<unsigned __int128>(n - k + i);
    if (r > kMax128 / f) {
      throw BinomialOverflow("binomial(" + std::to_string(n) + ", " + std::to_string(k) +
                             ") exceeds 128-bit range");
    }
    r = r * f / static_cast<unsigned __int128>(i);  // exact: C(n-k+i, i) is integral
  }
  return r;
}

double binomial(std::int64_t n, std::int64_t k) {
  return static_cast<double>(binomial_u128(n, k));
}

}  // namespace hsbm
