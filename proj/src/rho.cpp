#include "mw/rho.hpp"

#include <map>

#include "mw/types.hpp"

namespace mw {

const BigInt& rho(int k, int q) {
  MW_CHECK(k >= 0 && q >= 0, "rho needs k,q >= 0");
  static std::map<std::pair<int, int>, BigInt> memo;
  auto it = memo.find({k, q});
  if (it != memo.end()) return it->second;
  BigInt value;
  if (q == 0) {
    value = 1;
  } else {
    BigInt factor = boost::multiprecision::pow(BigInt(13), k) + 1;
    value = factor * rho(k + 1, q - 1);
  }
  return memo.emplace(std::make_pair(k, q), std::move(value)).first->second;
}

int rho_clamped(int k, int q, int limit) {
  MW_CHECK(limit >= 0, "clamp limit must be nonnegative");
  const BigInt& r = rho(k, q);
  if (r > limit) return limit;
  return static_cast<int>(r);
}

}  // namespace mw
