#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "primegrid/signature.hpp"

namespace primegrid::trail {

// Resumable accumulation state. The initial state (next_n = 2) has
// last_norm = 0 (norm of 1), zero cumsum and zero primes seen.
struct TrailCheckpoint {
    uint64_t next_n = 2;      // first unprocessed integer
    uint8_t last_norm = 0;    // ||next_n - 1||_inf
    uint64_t cumsum_linf = 0; // L_inf(next_n - 1)
    uint64_t prime_count = 0; // pi(next_n - 1)

    bool operator==(const TrailCheckpoint&) const = default;
};

// L_inf values recorded at every prime, in order.
struct PrimeStops {
    std::vector<uint64_t> values;
};

// Hop length between consecutive integers: max of the two norms.
inline uint64_t hop(uint64_t norm_k, uint64_t norm_k_plus_1) {
    return norm_k > norm_k_plus_1 ? norm_k : norm_k_plus_1;
}

// Folds one segment into the checkpoint, appending L_inf(p) for every prime
// in the segment. The result is independent of how a range is cut into
// segments. Throws std::domain_error if segment.lo != checkpoint.next_n.
TrailCheckpoint stream_trail(const signature::NormSegment& segment,
                             const TrailCheckpoint& checkpoint, PrimeStops& stops);

// Drives a full [from, to] run: segments are sieved (in parallel when
// threads > 1), folded sequentially in order. on_segment is called after each
// fold with the advanced checkpoint and the stops appended by that segment;
// it is the persistence hook for the CLI.
using SegmentCallback =
    std::function<void(const TrailCheckpoint&, const std::vector<uint64_t>&)>;

TrailCheckpoint run_trail(uint64_t from, uint64_t to_inclusive,
                          const TrailCheckpoint& start, uint64_t segment_size,
                          unsigned threads, PrimeStops& stops,
                          const SegmentCallback& on_segment = nullptr);

// L1 trail length by direct summation; no checkpointing (L1 grows too fast
// to be worth streaming at scale).
uint64_t l1_trail(uint64_t n);

struct RatioPoint {
    uint64_t k;      // prime index, 1-based
    uint64_t prime;  // p_k
    uint64_t stop;   // L_inf(p_k)
    double ratio;    // stop / prime
};

// Ratio L_inf(p_k)/p_k at every stride-th prime. primes must align with
// stops (primes[i] is the (i+1)-th prime).
std::vector<RatioPoint> ratio_series(const PrimeStops& stops,
                                     const std::vector<uint64_t>& primes,
                                     uint64_t stride);

// --- checkpoint persistence (used by the CLI; format is part of the
// external contract) ---

inline constexpr int kCheckpointFormatVersion = 1;

// Raw little-endian uint64 values appended to `path`.
void append_stops_file(const std::string& path, const std::vector<uint64_t>& stops);
std::vector<uint64_t> read_stops_file(const std::string& path);
void truncate_stops_file(const std::string& path, uint64_t count);

void write_checkpoint_json(const std::string& path, const TrailCheckpoint& cp,
                           const std::string& stops_file);
TrailCheckpoint read_checkpoint_json(const std::string& path, std::string* stops_file);

}  // namespace primegrid::trail
