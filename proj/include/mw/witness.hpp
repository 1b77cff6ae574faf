#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "mw/typeengine.hpp"

namespace mw {

// Online realization of the local-to-global lookup table: keys are
// (local type, scatter type), values the global type plus the first
// structure/vertex that witnessed the pair.  Soundness rests on the
// locality theorem; every hit can be cross-checked against a direct
// computation.
class WitnessCache {
 public:
  struct Stats {
    uint64_t lookups = 0;
    uint64_t hits = 0;
    uint64_t misses = 0;
    uint64_t bypasses = 0;   // truncated scatter types skip the cache
    uint64_t violations = 0;
  };

  std::optional<TypeId> lookup(LtpId ltp, StpId stp);
  void store(LtpId ltp, StpId stp, TypeId tp, std::string witness);
  const std::string& witness(LtpId ltp, StpId stp) const;
  size_t size() const { return map_.size(); }
  Stats& stats() { return stats_; }
  const Stats& stats() const { return stats_; }

 private:
  std::map<std::pair<LtpId, StpId>, std::pair<TypeId, std::string>> map_;
  Stats stats_;
};

class LocalityViolation : public Error {
 public:
  using Error::Error;
};

enum class ViolationPolicy { Throw, LogAndBypass };

struct L2GOptions {
  // Recompute every cache hit directly and compare; a disagreement is a
  // locality-theorem violation (an implementation bug).
  bool verify = false;
  ViolationPolicy policy = ViolationPolicy::Throw;
  std::string source;       // witness tag for stored entries
  std::ostream* log = nullptr;
};

// Computes tp_{k,q}(A, v) for all v from the given per-vertex local types:
// derives the (k+1,q-1) tower via rank shifts, computes the scatter type,
// then answers each vertex through the witness cache with a direct
// fallback.  Input and output vectors are indexed 1..n.
std::vector<TypeId> local_to_global_all(TypeContext& ctx, const std::vector<LtpId>& ltps,
                                        int k, int q, WitnessCache& cache,
                                        const L2GOptions& opt = {});

// The scatter type used by local_to_global_all at (k,q) on this structure.
StpId scatter_type_of(TypeContext& ctx, const std::vector<LtpId>& ltps, int k, int q,
                      WitnessCache& cache, const L2GOptions& opt = {});

}  // namespace mw
