#pragma once

#include <cstdint>
#include <iosfwd>

namespace mw {

enum class SelftestScale { Small, Full };

// Runs the property suites at reduced scale; prints one line per suite and
// returns false as soon as any property is falsified.
bool selftest(SelftestScale scale, uint64_t seed, std::ostream& out);

}  // namespace mw
