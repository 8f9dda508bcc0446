#include "primegrid/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "primegrid/rng.hpp"

namespace primegrid::optimizer {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded(const Objective& objective, const std::vector<double>& x, uint64_t eval_seed) {
    const double v = objective(x, eval_seed);
    return std::isfinite(v) ? v : kInf;
}

void evaluate_batch(const Objective& objective,
                    const std::vector<std::vector<double>>& xs, uint64_t eval_seed,
                    unsigned threads, std::vector<double>& out) {
    out.resize(xs.size());
    if (threads <= 1 || xs.size() <= 1) {
        for (size_t i = 0; i < xs.size(); ++i) out[i] = guarded(objective, xs[i], eval_seed);
        return;
    }
    std::atomic<size_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const size_t i = cursor.fetch_add(1);
            if (i >= xs.size()) return;
            out[i] = guarded(objective, xs[i], eval_seed);
        }
    };
    std::vector<std::future<void>> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : pool) f.get();
}

}  // namespace

DEResult de_minimize(const Objective& objective, const DEConfig& config, uint64_t seed) {
    const size_t np = config.population;
    const size_t dim = config.bounds.size();
    if (np < 4) throw std::domain_error("de_minimize: population must be >= 4");
    if (dim == 0) throw std::domain_error("de_minimize: bounds must be non-empty");
    for (auto [lo, hi] : config.bounds)
        if (!(lo < hi)) throw std::domain_error("de_minimize: bad bounds");

    Xoshiro256ss rng(seed);
    auto eval_seed_for = [&](size_t gen) -> uint64_t {
        if (config.eval_seed_policy == EvalSeedPolicy::fixed) return seed ^ 0x5eedULL;
        uint64_t s = seed + gen + 1;
        return splitmix64(s);
    };

    std::vector<std::vector<double>> pop(np, std::vector<double>(dim));
    for (auto& x : pop)
        for (size_t d = 0; d < dim; ++d) {
            const auto [lo, hi] = config.bounds[d];
            x[d] = lo + (hi - lo) * rng.next_double();
        }
    for (size_t i = 0; i < config.seeds.size() && i < np; ++i) {
        if (config.seeds[i].size() != dim)
            throw std::domain_error("de_minimize: seed vector dimension mismatch");
        pop[i] = config.seeds[i];
        for (size_t d = 0; d < dim; ++d) {
            const auto [lo, hi] = config.bounds[d];
            pop[i][d] = std::clamp(pop[i][d], lo, hi);
        }
    }
    std::vector<double> fitness;
    evaluate_batch(objective, pop, eval_seed_for(0), config.threads, fitness);

    DEResult res;
    size_t best_i = std::min_element(fitness.begin(), fitness.end()) - fitness.begin();
    res.history.push_back(fitness[best_i]);

    std::vector<std::vector<double>> trials(np, std::vector<double>(dim));
    std::vector<double> trial_fit;
    for (size_t gen = 1; gen <= config.generations; ++gen) {
        const uint64_t es = eval_seed_for(gen);
        for (size_t i = 0; i < np; ++i) {
            size_t r1, r2, r3;
            do r1 = rng.next_below(np); while (r1 == i);
            do r2 = rng.next_below(np); while (r2 == i || r2 == r1);
            do r3 = rng.next_below(np); while (r3 == i || r3 == r1 || r3 == r2);
            const std::vector<double>& base =
                config.strategy == Strategy::best1bin ? pop[best_i] : pop[r1];
            const std::vector<double>& da =
                config.strategy == Strategy::best1bin ? pop[r1] : pop[r2];
            const std::vector<double>& db =
                config.strategy == Strategy::best1bin ? pop[r2] : pop[r3];

            auto& trial = trials[i];
            const size_t jrand = rng.next_below(dim);
            for (size_t d = 0; d < dim; ++d) {
                if (d == jrand || rng.next_double() < config.crossover_cr) {
                    const auto [lo, hi] = config.bounds[d];
                    double v = base[d] + config.weight_f * (da[d] - db[d]);
                    trial[d] = std::clamp(v, lo, hi);
                } else {
                    trial[d] = pop[i][d];
                }
            }
        }
        evaluate_batch(objective, trials, es, config.threads, trial_fit);
        for (size_t i = 0; i < np; ++i) {
            if (trial_fit[i] <= fitness[i]) {
                pop[i] = trials[i];
                fitness[i] = trial_fit[i];
            }
        }
        best_i = std::min_element(fitness.begin(), fitness.end()) - fitness.begin();
        res.history.push_back(std::min(res.history.back(), fitness[best_i]));
        if (config.target_value >= 0.0 && res.history.back() <= config.target_value) break;
    }

    res.best = pop[best_i];
    res.best_value = res.history.back();
    return res;
}

namespace {

seqgen::InputDistribution normalized(const std::vector<double>& x) {
    seqgen::InputDistribution d;
    double sum = 0.0;
    for (int i = 0; i < seqgen::kAlphabet; ++i) {
        d.p[i] = std::max(0.0, x[i]);
        sum += d.p[i];
    }
    if (sum <= 0.0) return d;  // leaves an all-zero distribution; caller rejects
    for (auto& v : d.p) v /= sum;
    return d;
}

}  // namespace

FitResult inverse_fit(seqgen::Model model, const analytic::LetterDensity& q,
                      const DEConfig& config_in, uint64_t seed) {
    if (q.k_max() != seqgen::kAlphabet - 1)
        throw std::domain_error("inverse_fit: expected a 25-letter density");
    DEConfig config = config_in;
    if (config.bounds.empty())
        config.bounds.assign(seqgen::kAlphabet, {1e-10, 1.0});
    if (config.bounds.size() != seqgen::kAlphabet)
        throw std::domain_error("inverse_fit: bounds must have 26 coordinates");

    const uint64_t eval_length = config.eval_length;
    Objective objective = [&, eval_length](const std::vector<double>& x,
                                           uint64_t eval_seed) -> double {
        seqgen::InputDistribution p = normalized(x);
        if (p.sum() <= 0.0) return kInf;
        const auto stats = seqgen::run_simulation(model, p, eval_length, eval_seed, q);
        return stats.rms_vs_q;
    };

    DEResult r = de_minimize(objective, config, seed);
    FitResult out;
    out.distribution = normalized(r.best);
    out.achieved_rms = r.best_value;
    out.history = std::move(r.history);
    return out;
}

}  // namespace primegrid::optimizer
