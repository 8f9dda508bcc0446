#include "primegrid/signature.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace primegrid::signature {

uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

uint64_t PrimeSignature::value() const {
    uint64_t v = 1;
    for (auto [p, e] : entries)
        for (uint32_t i = 0; i < e; ++i) v *= p;
    return v;
}

bool PrimeSignature::valid() const {
    uint64_t last = 0;
    for (auto [p, e] : entries) {
        if (p <= last || e == 0) return false;
        last = p;
    }
    return true;
}

uint32_t norm_inf(const PrimeSignature& sig) {
    uint32_t m = 0;
    for (auto [p, e] : sig.entries) m = std::max(m, e);
    return m;
}

uint64_t norm_one(const PrimeSignature& sig) {
    uint64_t s = 0;
    for (auto [p, e] : sig.entries) s += e;
    return s;
}

uint64_t omega(const PrimeSignature& sig) { return sig.entries.size(); }

uint64_t sigma0(const PrimeSignature& sig) {
    uint64_t s = 1;
    for (auto [p, e] : sig.entries) s *= e + 1;
    return s;
}

uint32_t chebyshev_distance(const PrimeSignature& a, const PrimeSignature& b) {
    uint32_t m = 0;
    size_t i = 0, j = 0;
    while (i < a.entries.size() || j < b.entries.size()) {
        if (j == b.entries.size() ||
            (i < a.entries.size() && a.entries[i].first < b.entries[j].first)) {
            m = std::max(m, a.entries[i].second);
            ++i;
        } else if (i == a.entries.size() || b.entries[j].first < a.entries[i].first) {
            m = std::max(m, b.entries[j].second);
            ++j;
        } else {
            const uint32_t ea = a.entries[i].second, eb = b.entries[j].second;
            m = std::max(m, ea > eb ? ea - eb : eb - ea);
            ++i;
            ++j;
        }
    }
    return m;
}

namespace {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<__uint128_t>(a) * b) % m);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

bool miller_rabin(uint64_t n, uint64_t a) {
    if (a % n == 0) return true;
    uint64_t d = n - 1;
    int s = std::countr_zero(d);
    d >>= s;
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Pollard rho with Brent cycle detection; returns a non-trivial factor of
// composite odd n.
uint64_t pollard_rho(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1;
        uint64_t q = 1;
        int steps = 0;
        auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        for (int lam = 1; d == 1; lam *= 2) {
            x = y;
            for (int i = 0; i < lam && d == 1; ++i) {
                y = f(y);
                q = mulmod(q, x > y ? x - y : y - x, n);
                if (++steps % 64 == 0 || i == lam - 1) {
                    d = std::gcd(q, n);
                    q = 1;
                }
            }
            if (lam > (1 << 24)) break;
        }
        if (d != 1 && d != n) return d;
    }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    uint64_t d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    // Deterministic for all 64-bit inputs with this base set.
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!miller_rabin(n, a)) return false;
    }
    return true;
}

PrimeSignature factor_signature(uint64_t n) {
    if (n == 0) throw std::domain_error("factor_signature: n must be >= 1");
    PrimeSignature sig;
    if (n == 1) return sig;

    auto take = [&](uint64_t p) {
        uint32_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) sig.entries.emplace_back(p, e);
    };

    take(2);
    take(3);
    for (uint64_t d = 5; d <= 1000000 && d * d <= n; d += 6) {
        take(d);
        take(d + 2);
    }
    if (n > 1) {
        if (n <= 1000000ULL * 1000000ULL && isqrt(n) <= 1000000) {
            // only reachable if n itself is prime after full trial division
            sig.entries.emplace_back(n, 1);
        } else {
            std::vector<uint64_t> large;
            factor_rec(n, large);
            std::sort(large.begin(), large.end());
            for (size_t i = 0; i < large.size();) {
                size_t j = i;
                while (j < large.size() && large[j] == large[i]) ++j;
                sig.entries.emplace_back(large[i], static_cast<uint32_t>(j - i));
                i = j;
            }
        }
    }
    std::sort(sig.entries.begin(), sig.entries.end());
    return sig;
}

std::vector<uint64_t> simple_sieve(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    const size_t words = (limit + 1 + 63) / 64;
    std::vector<uint64_t> composite(words, 0);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i >> 6] & (uint64_t(1) << (i & 63))) continue;
        for (uint64_t j = i * i; j <= limit; j += i)
            composite[j >> 6] |= uint64_t(1) << (j & 63);
    }
    for (uint64_t i = 2; i <= limit; ++i)
        if (!(composite[i >> 6] & (uint64_t(1) << (i & 63)))) primes.push_back(i);
    return primes;
}

SieveContext::SieveContext(uint64_t lim) : limit(lim), primes(simple_sieve(lim)) {}

NormSegment sieve_norms(uint64_t lo, uint64_t hi, const SieveContext& ctx) {
    if (lo < 1 || lo >= hi) throw std::domain_error("sieve_norms: need 1 <= lo < hi");
    const uint64_t root = isqrt(hi - 1);
    if (ctx.limit < root) throw std::domain_error("sieve_norms: context does not cover sqrt(hi-1)");

    const size_t len = hi - lo;
    NormSegment seg;
    seg.lo = lo;
    seg.hi = hi;
    seg.norms.assign(len, 0);
    seg.prime_flags.assign(len, 0);

    std::vector<uint64_t> residual(len);
    for (size_t i = 0; i < len; ++i) residual[i] = lo + i;

    for (uint64_t p : ctx.primes) {
        if (p > root) break;
        // never divide a prime out of itself: its residual stays put and
        // marks it prime below
        uint64_t m = std::max(p * 2, (lo + p - 1) / p * p);
        if (p == 2) {
            for (; m < hi; m += 2) {
                uint64_t& r = residual[m - lo];
                const int e = std::countr_zero(r);
                r >>= e;
                auto& nm = seg.norms[m - lo];
                if (e > nm) nm = static_cast<uint8_t>(e);
            }
            continue;
        }
        for (; m < hi; m += p) {
            uint64_t& r = residual[m - lo];
            uint32_t e = 0;
            do {
                r /= p;
                ++e;
            } while (r % p == 0);
            auto& nm = seg.norms[m - lo];
            if (e > nm) nm = static_cast<uint8_t>(e);
        }
    }

    for (size_t i = 0; i < len; ++i) {
        const uint64_t r = residual[i];
        if (r > 1) {
            // cofactor above sqrt(hi-1) is a single prime, exponent 1
            if (seg.norms[i] == 0) seg.norms[i] = 1;
            if (r == lo + i) seg.prime_flags[i] = 1;
        }
    }
    return seg;
}

NormSegment sieve_norms(uint64_t lo, uint64_t hi) {
    if (lo < 1 || lo >= hi) throw std::domain_error("sieve_norms: need 1 <= lo < hi");
    SieveContext ctx(isqrt(hi - 1));
    return sieve_norms(lo, hi, ctx);
}

std::vector<uint8_t> sieve_norms_l1(uint64_t lo, uint64_t hi, const SieveContext& ctx) {
    if (lo < 1 || lo >= hi) throw std::domain_error("sieve_norms_l1: need 1 <= lo < hi");
    const uint64_t root = isqrt(hi - 1);
    if (ctx.limit < root) throw std::domain_error("sieve_norms_l1: context does not cover sqrt(hi-1)");

    const size_t len = hi - lo;
    std::vector<uint8_t> omega_sum(len, 0);
    std::vector<uint64_t> residual(len);
    for (size_t i = 0; i < len; ++i) residual[i] = lo + i;

    for (uint64_t p : ctx.primes) {
        if (p > root) break;
        uint64_t m = std::max(p * 2, (lo + p - 1) / p * p);
        for (; m < hi; m += p) {
            uint64_t& r = residual[m - lo];
            uint32_t e = 0;
            do {
                r /= p;
                ++e;
            } while (r % p == 0);
            omega_sum[m - lo] += static_cast<uint8_t>(e);
        }
    }
    for (size_t i = 0; i < len; ++i)
        if (residual[i] > 1) omega_sum[i] += 1;
    return omega_sum;
}

}  // namespace primegrid::signature
