#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace primegrid::signature {

// Sorted prime -> exponent map of a positive integer. 1 has an empty
// signature.
struct PrimeSignature {
    std::vector<std::pair<uint64_t, uint32_t>> entries;

    uint64_t value() const;  // reconstruct the source integer
    bool valid() const;      // primes strictly increasing, exponents >= 1
};

// Full factorization of n (trial division, then deterministic Miller-Rabin +
// Pollard rho for large cofactors). Throws std::domain_error for n = 0.
PrimeSignature factor_signature(uint64_t n);

uint32_t norm_inf(const PrimeSignature& sig);  // max exponent, 0 for 1
uint64_t norm_one(const PrimeSignature& sig);  // Omega(n): sum of exponents
uint64_t omega(const PrimeSignature& sig);     // count of distinct primes
uint64_t sigma0(const PrimeSignature& sig);    // divisor count, prod (e_i + 1)

// Chebyshev distance: max |exponent difference| over the union of primes.
uint32_t chebyshev_distance(const PrimeSignature& a, const PrimeSignature& b);

bool is_prime_u64(uint64_t n);

// Per-integer linf norm and primality for [lo, hi).
struct NormSegment {
    uint64_t lo = 0, hi = 0;
    std::vector<uint8_t> norms;
    std::vector<uint8_t> prime_flags;

    size_t size() const { return norms.size(); }
};

// Base primes up to `limit`, shared read-only across segment computations.
struct SieveContext {
    uint64_t limit = 0;
    std::vector<uint64_t> primes;

    explicit SieveContext(uint64_t limit);
};

// All primes up to limit (classic bit-packed sieve).
std::vector<uint64_t> simple_sieve(uint64_t limit);

uint64_t isqrt(uint64_t n);

// Segment default: fits the residual scratch array comfortably in memory and
// amortizes the base-prime walk.
inline constexpr uint64_t kDefaultSegment = uint64_t(1) << 22;

// Norms and primality for every integer in [lo, hi). The context must cover
// sqrt(hi-1). Pure; segments are independent and safe to run in parallel.
NormSegment sieve_norms(uint64_t lo, uint64_t hi, const SieveContext& ctx);

// Convenience overload building its own context.
NormSegment sieve_norms(uint64_t lo, uint64_t hi);

// Omega(n) (prime factors with multiplicity) for every integer in [lo, hi);
// used by the l1 trail utility.
std::vector<uint8_t> sieve_norms_l1(uint64_t lo, uint64_t hi, const SieveContext& ctx);

}  // namespace primegrid::signature
