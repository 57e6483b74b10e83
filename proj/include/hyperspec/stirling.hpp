#pragma once

#include <cstddef>
#include <map>
#include <mutex>
#include <utility>

#include "hyperspec/error.hpp"
#include "hyperspec/rational.hpp"

namespace hyperspec {

inline Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer result = 1;
  for (unsigned j = 1; j <= k; ++j) {
    result = result * (n - k + j) / j;
  }
  return result;
}

inline Integer factorial(unsigned n) {
  Integer result = 1;
  for (unsigned j = 2; j <= n; ++j) result *= j;
  return result;
}

/// Stirling number of the second kind {k r}, evaluated through the
/// alternating sum (1/r!) sum_j (-1)^j C(r,j) (r-j)^k.
inline Integer stirling2(unsigned k, unsigned r) {
  if (r < 1 || r > k) {
    throw Error(ErrorCode::RangeError, "stirling2 needs 1 <= r <= k");
  }
  Integer sum = 0;
  for (unsigned j = 0; j <= r; ++j) {
    Integer term = binomial(r, j) * boost::multiprecision::pow(Integer(r - j), k);
    if (j % 2 == 0) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum / factorial(r);
}

/// Number of entries of an order-k tensor whose index set is a fixed r-set.
inline Integer entry_count(unsigned r, unsigned k) { return stirling2(k, r) * factorial(r); }

/// Number of entries in a single row corresponding to a fixed r-set
/// containing the row index.
inline Integer row_count_N(unsigned r, unsigned k) { return stirling2(k, r) * factorial(r - 1); }

/// Thread-safe memo of row counts, shared by tensor construction.
class StirlingTable {
 public:
  const Integer& row_count(unsigned r, unsigned k) {
    std::lock_guard lock(mutex_);
    auto key = std::make_pair(r, k);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, row_count_N(r, k)).first;
    return it->second;
  }

  static StirlingTable& shared() {
    static StirlingTable table;
    return table;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<unsigned, unsigned>, Integer> cache_;
};

}  // namespace hyperspec
