#pragma once

#include <vector>

namespace primegrid::analytic {

// Riemann zeta at integer k >= 2, absolute error < 1e-13
// (Euler-Maclaurin corrected partial sum). Throws std::domain_error for k < 2.
double zeta(int k);

// 1/zeta(k) with the convention 1/zeta(1) = 0 used throughout the letter
// density definitions.
double inv_zeta(int k);

// Densities q_k = 1/zeta(k+1) - 1/zeta(k) of integers whose largest prime
// exponent equals k, truncated at k_max with the remaining mass in `tail`.
struct LetterDensity {
    std::vector<double> q;  // q[0] unused; q[k] for k = 1..k_max
    double tail = 0.0;      // sum over k > k_max

    int k_max() const { return static_cast<int>(q.size()) - 1; }
    // Probability vector over the truncated alphabet: q_1..q_kmax then tail.
    std::vector<double> as_prob_vector() const;
};

LetterDensity letter_density(int k_max);

// c = sum_k (1 - 1/zeta(k)) = 1.7052...
double constant_c();

// sum_k (k + 1/(2^(k+1)-1)) q_k = 1.9476...
double bound_bunched();

// (3/2) c = 2.5578...
double bound_spread();

// Expected pairwise maximum of two independent draws from q:
// sum_k k (1/zeta^2(k+1) - 1/zeta^2(k)) = 2.22101...
double iid_expected_hop();

// Offset logarithmic integral Li(x) = integral_2^x dt/ln t, relative error
// < 1e-8 (adaptive Simpson). Throws std::domain_error for x < 2.
double li(double x);

}  // namespace primegrid::analytic
