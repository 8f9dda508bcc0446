#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "primegrid/analytic.hpp"
#include "primegrid/seqgen.hpp"

namespace primegrid::optimizer {

enum class Strategy { rand1bin, best1bin };

enum class EvalSeedPolicy { fixed, per_generation };

struct DEConfig {
    size_t population = 40;
    double weight_f = 0.7;      // differential weight, in (0, 2)
    double crossover_cr = 0.9;  // crossover probability
    Strategy strategy = Strategy::rand1bin;
    size_t generations = 200;
    std::vector<std::pair<double, double>> bounds;  // per-coordinate [lo, hi]
    uint64_t eval_length = 1000000;                 // letters per fitness evaluation
    EvalSeedPolicy eval_seed_policy = EvalSeedPolicy::fixed;
    unsigned threads = 1;
    double target_value = -1.0;  // stop early when best <= target (if >= 0)
    // optional known-good vectors planted into the initial population
    std::vector<std::vector<double>> seeds;
};

// Objective receives the candidate vector and an evaluation seed chosen by
// the seed policy.
using Objective = std::function<double(const std::vector<double>&, uint64_t)>;

struct DEResult {
    std::vector<double> best;
    double best_value = 0.0;
    std::vector<double> history;  // best value per generation, non-increasing
};

// Storn-Price differential evolution: mutation, binomial crossover, greedy
// selection. Deterministic given (config, seed). Candidates with non-finite
// objective are rejected, never propagated.
DEResult de_minimize(const Objective& objective, const DEConfig& config, uint64_t seed);

struct FitResult {
    seqgen::InputDistribution distribution;
    double achieved_rms = 0.0;
    std::vector<double> history;
};

// Inverse problem: find an input distribution whose simulated letter
// marginals match q. Decision variables are 26 weights normalized to a
// distribution before every evaluation.
FitResult inverse_fit(seqgen::Model model, const analytic::LetterDensity& q,
                      const DEConfig& config, uint64_t seed);

}  // namespace primegrid::optimizer
