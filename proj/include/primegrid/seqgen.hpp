#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "primegrid/alias.hpp"
#include "primegrid/analytic.hpp"
#include "primegrid/rng.hpp"

namespace primegrid::seqgen {

// 26-bin alphabet: index k holds letter k+1 for k = 0..24, index 25 is the
// star bin aggregating every letter >= 26.
inline constexpr int kAlphabet = 26;

struct InputDistribution {
    std::array<double, kAlphabet> p{};

    double sum() const;
    void normalize();
};

InputDistribution table3_p1();  // published Model 1 input distribution
InputDistribution table3_p2();  // published Model 2 input distribution
InputDistribution from_density(const analytic::LetterDensity& q);  // p = q
InputDistribution from_csv(const std::string& path);

enum class Model {
    one,  // resample the offending letter from the truncated tail
    two,  // deterministically bump the offending letter to the smallest legal one
    raw,  // elimination disabled, fixed full alphabet (identity-map oracle)
};

// Streaming generator. Characters are zero-based bins (letter = char + 1,
// star = 25). index[k] tracks the run of characters <= k; a run of length
// 2^(k+2) completes a forbidden word from family k+1 and forces the closing
// character upward. The alphabet ceiling for the character at zero-based
// position p is max(0, floor(log2(p + 1)) - 1), clamped to 25, so it bumps
// at positions 3, 7, 15, ...
class Generator {
public:
    Generator(Model model, const InputDistribution& p, uint64_t seed);

    uint8_t step();
    uint64_t position() const { return pos_; }
    const std::array<uint64_t, kAlphabet>& counts() const { return counts_; }
    const std::array<uint64_t, kAlphabet>& run_index() const { return index_; }
    int ceiling_used() const { return max_char_; }  // ceiling of the last step

    // Caps used by the blocked variant: thresholds only apply to families
    // F_1..F_forbidden_cap, and the sampling ceiling may be pinned.
    void set_forbidden_cap(int cap) { forbidden_cap_ = cap; }
    void set_fixed_max_char(int mc) { fixed_max_char_ = mc; }

private:
    int current_max_char() const;

    Model model_;
    InputDistribution p_;
    Xoshiro256ss rng_;
    std::array<AliasTable, kAlphabet * kAlphabet> tables_;  // slice [i..j]
    std::array<uint64_t, kAlphabet> index_{};
    std::array<uint64_t, kAlphabet> counts_{};
    uint64_t pos_ = 0;
    int max_char_ = 0;
    // families F_1..F_25 (levels 0..24); the star bin terminates every run
    int forbidden_cap_ = kAlphabet - 2;
    int fixed_max_char_ = -1;

    const AliasTable& slice(int i, int j) const { return tables_[i * kAlphabet + j]; }
};

// Full sequence of characters; deterministic in (model, p, length, seed).
std::vector<uint8_t> generate(Model model, const InputDistribution& p,
                              uint64_t length, uint64_t seed);

// Block-concatenated generator: positions 1..4 run under elimination set
// F_1, positions 2^n+1..2^(n+1) under F_1..F_n, up to n_max. Letters are
// sampled from the full q-derived distribution throughout.
std::vector<uint8_t> generate_blocked(const analytic::LetterDensity& q, int n_max,
                                      uint64_t seed);

struct LetterMarginals {
    std::array<double, kAlphabet> freq{};
};

LetterMarginals empirical_marginals(const std::vector<uint8_t>& seq);

// Root-mean-square with the 1/26 normalization used for all published error
// figures.
double rms(const LetterMarginals& a, const analytic::LetterDensity& q);

// Mean pairwise maximum of consecutive letter values (star valued as 26).
double c0_estimate(const std::vector<uint8_t>& seq);

// Streaming run: c0, marginals and forbidden-word self-check without
// materializing the sequence. One generator per thread; callers parallelize
// over runs with distinct seeds.
struct RunStats {
    uint64_t length = 0;
    uint64_t seed = 0;
    double c0 = 0.0;
    double rms_vs_q = 0.0;
    LetterMarginals marginals;
};

RunStats run_simulation(Model model, const InputDistribution& p, uint64_t length,
                        uint64_t seed, const analytic::LetterDensity& q);

}  // namespace primegrid::seqgen
