#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mw {

using BigInt = boost::multiprecision::cpp_int;

// Radius schedule: rho(k,0) = 1, rho(k,q) = (13^k + 1) * rho(k+1, q-1).
// Values grow fast, so they are kept exact and clamped only at use sites.
const BigInt& rho(int k, int q);

// min(rho(k,q), limit) as a plain int (limit must be positive).
int rho_clamped(int k, int q, int limit);

}  // namespace mw
