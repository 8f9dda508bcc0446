#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "primegrid/signature.hpp"

namespace primegrid::words {

using bigint = boost::multiprecision::cpp_int;

// A word over the norm alphabet: positive letters.
using Word = std::vector<uint32_t>;

// True iff w belongs to the forbidden family F_n for some n >= 1:
// |w| = 2^(n+1) and every letter < n+1.
bool is_forbidden(const Word& w);

// True iff any contiguous subword of w is forbidden.
bool contains_forbidden(const Word& w);

struct Violation {
    uint64_t integer;  // first integer of the offending window
    uint32_t n;        // family index
};

// Sliding scan of a norm segment for forbidden windows, families F_1..F_n_max.
// Empty on true norm data; any hit means the sieve is broken.
std::vector<Violation> scan_forbidden(const signature::NormSegment& segment, uint32_t n_max);

// Letter-value scan used for generated sequences (values, not a segment).
std::vector<size_t> scan_forbidden_values(const std::vector<uint8_t>& letters, uint32_t n_max);

struct CrtResult {
    bigint x;  // unique solution in [1, M]
    bigint m;  // product of the prime powers
};

// Solves x + i - 1 == 0 (mod primes[i]^w[i]) for i = 1..|w|.
// Throws std::domain_error on duplicate primes or size mismatch.
CrtResult crt_locate(const Word& w, const std::vector<uint64_t>& primes);

struct Factorization {
    std::vector<std::pair<bigint, uint32_t>> entries;
    bool complete = true;  // false when the budget expired first

    uint32_t norm_inf() const;
};

using Clock = std::chrono::steady_clock;

// Arbitrary-precision factorization: small-prime stripping, then Miller-Rabin
// and Pollard rho. Stops early (complete = false) when `deadline` passes.
Factorization factor_big(const bigint& n,
                         std::optional<Clock::time_point> deadline = std::nullopt);

struct WordLocation {
    bigint location;  // x + k*M
    uint64_t k;
};

struct SearchOutcome {
    std::optional<WordLocation> found;
    bool budget_exhausted = false;
    uint64_t k_tried = 0;
};

// Smallest k <= k_max with exact norm match at x + kM, verified by full
// factorization of every window element.
SearchOutcome search_word(const Word& w, const std::vector<uint64_t>& primes,
                          uint64_t k_max,
                          std::optional<Clock::time_point> deadline = std::nullopt);

// Exact-norm verification of a known location: norm(loc + i) == w[i] for all i.
struct VerifyOutcome {
    bool verified = false;
    bool complete = true;  // false when the budget expired
    std::vector<uint32_t> norms;
};

VerifyOutcome verify_location(const Word& w, const bigint& location,
                              std::optional<Clock::time_point> deadline = std::nullopt);

}  // namespace primegrid::words
