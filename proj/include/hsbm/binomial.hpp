#pragma once

#include <cstdint>
#include <stdexcept>

namespace hsbm {

// Binomial coefficients are kept exact in 128-bit integers until the final
// conversion to double; C(n, d-1) leaves the 64-bit range well below the
// parameter sizes the closed-form spectrum needs.
class BinomialOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

unsigned __int128 binomial_u128(std::int64_t n, std::int64_t k);

double binomial(std::int64_t n, std::int64_t k);

}  // namespace hsbm
