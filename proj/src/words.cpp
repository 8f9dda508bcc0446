#include "primegrid/words.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/miller_rabin.hpp>

#include "primegrid/errors.hpp"

namespace primegrid::words {

bool is_forbidden(const Word& w) {
    if (w.empty()) throw std::domain_error("is_forbidden: empty word");
    const size_t len = w.size();
    if (len < 4 || !std::has_single_bit(len)) return false;
    const uint32_t n = static_cast<uint32_t>(std::bit_width(len)) - 2;  // len = 2^(n+1)
    return *std::max_element(w.begin(), w.end()) < n + 1;
}

bool contains_forbidden(const Word& w) {
    if (w.empty()) throw std::domain_error("contains_forbidden: empty word");
    for (uint32_t n = 1; (size_t(1) << (n + 1)) <= w.size(); ++n) {
        const size_t win = size_t(1) << (n + 1);
        size_t run = 0;
        for (uint32_t letter : w) {
            run = (letter < n + 1) ? run + 1 : 0;
            if (run >= win) return true;
        }
    }
    return false;
}

namespace {

template <typename LetterAt>
std::vector<size_t> scan_runs(size_t count, uint32_t n_max, LetterAt at,
                              std::vector<uint32_t>* family_out) {
    std::vector<size_t> hits;
    std::vector<uint64_t> run(n_max + 1, 0);
    for (size_t i = 0; i < count; ++i) {
        const uint32_t letter = at(i);
        for (uint32_t n = 1; n <= n_max; ++n) {
            if (letter < n + 1) {
                if (++run[n] >= (uint64_t(1) << (n + 1))) {
                    hits.push_back(i + 1 - (size_t(1) << (n + 1)));
                    if (family_out) family_out->push_back(n);
                    run[n] = 0;
                }
            } else {
                run[n] = 0;
            }
        }
    }
    return hits;
}

}  // namespace

std::vector<Violation> scan_forbidden(const signature::NormSegment& segment, uint32_t n_max) {
    std::vector<uint32_t> families;
    auto hits = scan_runs(
        segment.size(), n_max, [&](size_t i) { return segment.norms[i]; }, &families);
    std::vector<Violation> out;
    for (size_t i = 0; i < hits.size(); ++i)
        out.push_back({segment.lo + hits[i], families[i]});
    return out;
}

std::vector<size_t> scan_forbidden_values(const std::vector<uint8_t>& letters, uint32_t n_max) {
    return scan_runs(
        letters.size(), n_max, [&](size_t i) { return letters[i]; }, nullptr);
}

namespace {

bigint pow_big(uint64_t base, uint32_t e) {
    bigint r = 1;
    for (uint32_t i = 0; i < e; ++i) r *= base;
    return r;
}

// extended gcd over cpp_int: g = a*s + b*t
bigint ext_gcd(const bigint& a, const bigint& b, bigint& s, bigint& t) {
    if (b == 0) {
        s = 1;
        t = 0;
        return a;
    }
    bigint s1, t1;
    bigint g = ext_gcd(b, a % b, s1, t1);
    s = t1;
    t = s1 - (a / b) * t1;
    return g;
}

}  // namespace

CrtResult crt_locate(const Word& w, const std::vector<uint64_t>& primes) {
    if (w.empty() || w.size() != primes.size())
        throw std::domain_error("crt_locate: need one prime per letter");
    std::set<uint64_t> distinct(primes.begin(), primes.end());
    if (distinct.size() != primes.size())
        throw std::domain_error("crt_locate: primes must be pairwise distinct");

    // x == -(i) mod primes[i]^w[i], zero-based offsets
    bigint x = 0, m = 1;
    for (size_t i = 0; i < w.size(); ++i) {
        const bigint mi = pow_big(primes[i], w[i]);
        bigint ri = (-bigint(i)) % mi;
        if (ri < 0) ri += mi;
        // combine x (mod m) with ri (mod mi)
        bigint s, t;
        const bigint g = ext_gcd(m, mi, s, t);
        if (g != 1) throw std::domain_error("crt_locate: moduli not coprime");
        bigint diff = ri - x;
        bigint k = (diff * s) % mi;
        x += m * k;
        m *= mi;
        x %= m;
        if (x < 0) x += m;
    }
    if (x == 0) x = m;  // unique representative in [1, M]
    return {x, m};
}

uint32_t Factorization::norm_inf() const {
    uint32_t m = 0;
    for (const auto& [p, e] : entries) m = std::max(m, e);
    return m;
}

namespace {

bool expired(const std::optional<Clock::time_point>& deadline) {
    return deadline && Clock::now() >= *deadline;
}

bool is_probable_prime(const bigint& n) {
    return boost::multiprecision::miller_rabin_test(n, 32);
}

bigint rho_big(const bigint& n, const std::optional<Clock::time_point>& deadline) {
    // Brent variant with batched gcd.
    for (uint64_t c = 1;; ++c) {
        bigint x = 2, y = 2, d = 1, q = 1;
        uint64_t steps = 0;
        auto f = [&](const bigint& v) { return (v * v + c) % n; };
        for (uint64_t lam = 1; d == 1; lam *= 2) {
            x = y;
            for (uint64_t i = 0; i < lam && d == 1; ++i) {
                y = f(y);
                q = (q * abs(x - y)) % n;
                if (++steps % 128 == 0 || i == lam - 1) {
                    d = gcd(q, n);
                    q = 1;
                    if (expired(deadline)) return 0;
                }
            }
            if (lam > (uint64_t(1) << 30)) break;
        }
        if (d != 1 && d != n) return d;
        if (expired(deadline)) return 0;
    }
}

bool factor_big_rec(const bigint& n, Factorization& out,
                    const std::optional<Clock::time_point>& deadline) {
    if (n == 1) return true;
    if (n <= std::numeric_limits<uint64_t>::max()) {
        auto sig = signature::factor_signature(n.convert_to<uint64_t>());
        for (auto [p, e] : sig.entries) out.entries.emplace_back(bigint(p), e);
        return true;
    }
    if (is_probable_prime(n)) {
        out.entries.emplace_back(n, 1);
        return true;
    }
    if (expired(deadline)) return false;
    const bigint d = rho_big(n, deadline);
    if (d == 0) return false;
    return factor_big_rec(d, out, deadline) && factor_big_rec(n / d, out, deadline);
}

}  // namespace

Factorization factor_big(const bigint& n, std::optional<Clock::time_point> deadline) {
    if (n <= 0) throw std::domain_error("factor_big: n must be positive");
    Factorization out;
    bigint rem = n;
    // strip small primes first so rho only sees hard cofactors
    for (uint64_t p : {2ULL, 3ULL, 5ULL}) {
        uint32_t e = 0;
        while (rem % p == 0) {
            rem /= p;
            ++e;
        }
        if (e) out.entries.emplace_back(bigint(p), e);
    }
    for (uint64_t d = 7; d <= 100000; d += 6) {
        for (uint64_t cand : {d, d + 4}) {  // 6k+1, 6k+5
            uint32_t e = 0;
            while (rem % cand == 0) {
                rem /= cand;
                ++e;
            }
            if (e) out.entries.emplace_back(bigint(cand), e);
        }
    }
    out.complete = factor_big_rec(rem, out, deadline);

    std::sort(out.entries.begin(), out.entries.end());
    // merge duplicates produced by recursive splits
    std::vector<std::pair<bigint, uint32_t>> merged;
    for (auto& [p, e] : out.entries) {
        if (!merged.empty() && merged.back().first == p)
            merged.back().second += e;
        else
            merged.emplace_back(p, e);
    }
    out.entries = std::move(merged);
    return out;
}

VerifyOutcome verify_location(const Word& w, const bigint& location,
                              std::optional<Clock::time_point> deadline) {
    VerifyOutcome out;
    out.norms.assign(w.size(), 0);
    out.verified = true;
    for (size_t i = 0; i < w.size(); ++i) {
        Factorization f = factor_big(location + bigint(i), deadline);
        if (!f.complete) {
            out.complete = false;
            out.verified = false;
            return out;
        }
        out.norms[i] = f.norm_inf();
        if (out.norms[i] != w[i]) out.verified = false;
    }
    return out;
}

SearchOutcome search_word(const Word& w, const std::vector<uint64_t>& primes,
                          uint64_t k_max, std::optional<Clock::time_point> deadline) {
    const CrtResult crt = crt_locate(w, primes);
    SearchOutcome out;
    for (uint64_t k = 0; k <= k_max; ++k) {
        if (expired(deadline)) {
            out.budget_exhausted = true;
            return out;
        }
        const bigint cand = crt.x + bigint(k) * crt.m;
        // cheap pruning: the designated prime power must divide exactly
        bool plausible = true;
        for (size_t i = 0; i < w.size() && plausible; ++i) {
            const bigint v = cand + bigint(i);
            if (v % pow_big(primes[i], w[i] + 1) == 0) plausible = false;
        }
        if (!plausible) {
            out.k_tried = k + 1;
            continue;
        }
        VerifyOutcome v = verify_location(w, cand, deadline);
        if (!v.complete) {
            out.budget_exhausted = true;
            return out;
        }
        out.k_tried = k + 1;
        if (v.verified) {
            out.found = WordLocation{cand, k};
            return out;
        }
    }
    return out;
}

}  // namespace primegrid::words
