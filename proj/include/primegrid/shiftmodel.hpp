#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "primegrid/analytic.hpp"

namespace primegrid::shiftmodel {

// Letters are positive norm values; kStar aggregates every letter above the
// tracked alphabet and sorts after all of them.
inline constexpr uint32_t kStar = 0xFFFFFFFFu;

using Word = std::vector<uint32_t>;

// De-Bruijn-style vertex shift: states are the allowed words of length n,
// edges follow the (n-1)-overlap rule.
struct VertexShift {
    int word_len = 0;
    std::vector<Word> states;
    std::vector<std::vector<uint32_t>> next;  // successor state indices

    uint32_t emitted_letter(uint32_t state) const { return states[state].back(); }
};

// States exclude every word containing an element of `eliminated` as a
// subword (the E' closure). Throws std::domain_error on an empty alphabet.
VertexShift build_vertex_shift(const std::vector<Word>& eliminated,
                               const std::vector<uint32_t>& alphabet);

// A Markov chain compatible with some shift: row-stochastic P supported on
// the transition structure, each state emitting one letter.
struct MarkovShift {
    std::vector<std::string> state_names;
    std::vector<uint32_t> emit;
    std::vector<std::vector<double>> P;
    std::vector<double> pi;

    size_t size() const { return emit.size(); }
};

// Unique stationary row vector of an irreducible row-stochastic matrix
// (dense direct solve; power iteration fallback). Throws std::domain_error
// when the support graph is not irreducible.
std::vector<double> stationary(const std::vector<std::vector<double>>& P);

// Markov shift induced by per-letter input probabilities with rejection
// renormalization: P(i -> j) proportional to prob[letter(j)] over the allowed
// successors of i. Solves the stationary vector.
MarkovShift markov_from_vertex(const VertexShift& vs,
                               const std::map<uint32_t, double>& letter_prob);

// Concrete value distribution standing in for the star letter.
struct StarDistribution {
    std::vector<uint32_t> values;
    std::vector<double> prob;
};

// Conditional letter density q_k / (sum over the range) for k in
// [first_letter, last_letter].
StarDistribution star_distribution(int first_letter, int last_letter);

// E[max(letter(s), letter(s'))] over stationary pairs, star letters expanded
// through the given value distribution (consecutive stars independent).
double expected_hop(const MarkovShift& ms, const StarDistribution& star);

struct LetterMarginals {
    std::map<uint32_t, double> Pi;  // keyed by letter value; kStar for star
};

LetterMarginals marginals(const MarkovShift& ms);

// RMS of (marginals - q) over the chain's alphabet, the star bucket compared
// against the mass q leaves above the concrete letters.
double residual(const MarkovShift& ms, const analytic::LetterDensity& q);

enum class Example { empty, single, double_word };

struct CalibratedExample {
    MarkovShift chain;
    std::vector<double> params;  // p1 (, p2)
    StarDistribution star;       // expansion matching the chain's alphabet
};

// The worked examples: eliminated set {} / {'1111'} / {'1111','11121112'}
// on their compressed state spaces, calibrated so letter marginals match q.
CalibratedExample calibrate_example(Example which);

// Building blocks for the worked examples at explicit parameter values
// (used by calibration and by tests probing miscalibrated chains).
MarkovShift single_example_chain(double p1);
MarkovShift double_example_chain(double p1, double p2);

// Letter-value sequence sampled from the chain (star emitted as 26).
std::vector<uint32_t> sample_letters(const MarkovShift& ms, size_t length, uint64_t seed);

}  // namespace primegrid::shiftmodel
