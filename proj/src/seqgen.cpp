#include "primegrid/seqgen.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "primegrid/errors.hpp"

namespace primegrid::seqgen {

double InputDistribution::sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

void InputDistribution::normalize() {
    const double s = sum();
    if (s <= 0.0) throw std::domain_error("InputDistribution: non-positive mass");
    for (double& v : p) v /= s;
}

InputDistribution table3_p1() {
    InputDistribution d;
    d.p = {0.778066482,     0.1808120958,    0.0344511792,    0.005501330873,
           0.0008606020801, 0.0001788032959, 5.589433871e-05, 2.736073937e-05,
           1.31193597e-05,  7.594988824e-06, 4.286503901e-06, 3.540683918e-06,
           2.973346931e-06, 2.403969944e-06, 2.812292935e-06, 3.03521793e-06,
           2.459252943e-06, 2.294506947e-06, 1.121315974e-06, 1.70937596e-07,
           2.59843894e-07,  9.695063776e-08, 5.074703883e-08, 1.579332963e-08,
           6.098237859e-09, 9.831509773e-09};
    return d;
}

InputDistribution table3_p2() {
    InputDistribution d;
    d.p = {0.7791783767,    0.166204795,     0.03914430883,   0.01075578968,
           0.003211510904,  0.0009983211701, 0.0003228213903, 0.000100454897,
           3.482384896e-05, 1.119959966e-05, 5.66707383e-06,  6.236370813e-06,
           6.553250804e-06, 6.186574815e-06, 5.746875828e-06, 3.470847896e-06,
           1.430745957e-06, 1.018855969e-06, 7.578192773e-07, 1.379581959e-07,
           2.503132925e-07, 5.449547837e-08, 5.148644846e-08, 2.473640926e-08,
           5.160489846e-09, 5.419687838e-09};
    return d;
}

InputDistribution from_density(const analytic::LetterDensity& q) {
    if (q.k_max() != kAlphabet - 1)
        throw std::domain_error("from_density: expected a 25-letter density");
    InputDistribution d;
    for (int k = 1; k <= q.k_max(); ++k) d.p[k - 1] = q.q[k];
    d.p[kAlphabet - 1] = q.tail;
    return d;
}

InputDistribution from_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open distribution file: " + path);
    InputDistribution d;
    std::string line;
    int row = 0;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        // accept "value" or "index,value"; skip a header line
        const auto comma = line.find(',');
        std::string field = comma == std::string::npos ? line : line.substr(comma + 1);
        try {
            if (row >= kAlphabet) throw data_error("too many rows in " + path);
            d.p[row] = std::stod(field);
        } catch (const std::invalid_argument&) {
            if (row == 0) continue;  // header
            throw data_error("bad number in " + path + ": " + field);
        }
        ++row;
    }
    if (row != kAlphabet)
        throw data_error("expected 26 rows in " + path + ", got " + std::to_string(row));
    d.normalize();
    return d;
}

Generator::Generator(Model model, const InputDistribution& p, uint64_t seed)
    : model_(model), p_(p), rng_(seed) {
    for (int i = 0; i < kAlphabet; ++i) {
        for (int j = i; j < kAlphabet; ++j) {
            std::vector<double> w(p_.p.begin() + i, p_.p.begin() + j + 1);
            tables_[i * kAlphabet + j] = AliasTable(w);
        }
    }
    if (!slice(0, kAlphabet - 1).valid())
        throw std::domain_error("Generator: distribution has no mass");
}

int Generator::current_max_char() const {
    if (fixed_max_char_ >= 0) return fixed_max_char_;
    // floor(log2(pos + 1)) - 1: ceiling bumps at positions 3, 7, 15, ...
    const int mc = static_cast<int>(std::bit_width(pos_ + 1)) - 2;
    if (mc < 0) return 0;
    return mc > kAlphabet - 1 ? kAlphabet - 1 : mc;
}

uint8_t Generator::step() {
    if (model_ == Model::raw) {
        const auto x = static_cast<uint8_t>(slice(0, kAlphabet - 1).sample(rng_));
        ++counts_[x];
        ++pos_;
        return x;
    }

    max_char_ = current_max_char();
    const auto& main_table = slice(0, max_char_);
    if (!main_table.valid()) throw numeric_error("generator: sampling slice has no mass");
    int x = static_cast<int>(main_table.sample(rng_));

    // Runs are tracked at every family level, not just up to the current
    // ceiling: a run must be counted from its true start or words that
    // complete right when a level first becomes samplable slip through.
    // A threshold at level k can only fire at positions >= 2^(k+2) - 1,
    // where the ceiling is already >= k + 1, so the resample range below is
    // never empty.
    for (int k = forbidden_cap_; k >= x; --k) {
        ++index_[k];
        if (index_[k] >= (uint64_t(1) << (k + 2))) {
            assert(k < max_char_ && "forbidden threshold fired at the ceiling");
            if (model_ == Model::one) {
                const auto& tail = slice(k + 1, max_char_);
                if (!tail.valid())
                    throw numeric_error("generator: truncated tail has no mass");
                x = k + 1 + static_cast<int>(tail.sample(rng_));
            } else {
                x = k + 1;
            }
            break;
        }
    }
    for (int k = 0; k < x; ++k) index_[k] = 0;

    ++counts_[x];
    ++pos_;
    return static_cast<uint8_t>(x);
}

std::vector<uint8_t> generate(Model model, const InputDistribution& p,
                              uint64_t length, uint64_t seed) {
    if (length == 0) throw std::domain_error("generate: length must be >= 1");
    Generator gen(model, p, seed);
    std::vector<uint8_t> out(length);
    for (uint64_t i = 0; i < length; ++i) out[i] = gen.step();
    return out;
}

std::vector<uint8_t> generate_blocked(const analytic::LetterDensity& q, int n_max,
                                      uint64_t seed) {
    if (n_max < 1 || n_max > kAlphabet - 1)
        throw std::domain_error("generate_blocked: n_max must be in [1, 25]");
    Generator gen(Model::one, from_density(q), seed);
    gen.set_fixed_max_char(kAlphabet - 1);  // full alphabet in every block
    const uint64_t length = uint64_t(1) << (n_max + 1);
    std::vector<uint8_t> out(length);
    for (uint64_t i = 0; i < length; ++i) {
        // one-based position j: block 1 covers 1..4, block n covers
        // 2^n+1..2^(n+1); elimination set within block n is F_1..F_n
        const uint64_t j = i + 1;
        const int block = j <= 2 ? 1 : static_cast<int>(std::bit_width(j - 1)) - 1;
        gen.set_forbidden_cap(std::min(block, n_max) - 1);  // zero-based family cap
        out[i] = gen.step();
    }
    return out;
}

LetterMarginals empirical_marginals(const std::vector<uint8_t>& seq) {
    if (seq.empty()) throw std::domain_error("empirical_marginals: empty sequence");
    LetterMarginals m;
    std::array<uint64_t, kAlphabet> counts{};
    for (uint8_t c : seq) ++counts[c];
    for (int i = 0; i < kAlphabet; ++i)
        m.freq[i] = static_cast<double>(counts[i]) / static_cast<double>(seq.size());
    return m;
}

double rms(const LetterMarginals& a, const analytic::LetterDensity& q) {
    const auto target = q.as_prob_vector();
    if (target.size() != kAlphabet) throw std::domain_error("rms: density size mismatch");
    double s = 0.0;
    for (int i = 0; i < kAlphabet; ++i) {
        const double d = a.freq[i] - target[i];
        s += d * d;
    }
    return std::sqrt(s / kAlphabet);
}

double c0_estimate(const std::vector<uint8_t>& seq) {
    if (seq.size() < 2) throw std::domain_error("c0_estimate: need at least two letters");
    uint64_t sum = 0;
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        sum += std::max(seq[i], seq[i + 1]) + 1;  // char -> letter value, star = 26
    return static_cast<double>(sum) / static_cast<double>(seq.size() - 1);
}

RunStats run_simulation(Model model, const InputDistribution& p, uint64_t length,
                        uint64_t seed, const analytic::LetterDensity& q) {
    if (length < 2) throw std::domain_error("run_simulation: length must be >= 2");
    Generator gen(model, p, seed);
    uint64_t sum = 0;
    uint8_t prev = gen.step();
    for (uint64_t i = 1; i < length; ++i) {
        const uint8_t cur = gen.step();
        sum += std::max(prev, cur) + 1;
        prev = cur;
    }
    RunStats st;
    st.length = length;
    st.seed = seed;
    st.c0 = static_cast<double>(sum) / static_cast<double>(length - 1);
    for (int i = 0; i < kAlphabet; ++i)
        st.marginals.freq[i] =
            static_cast<double>(gen.counts()[i]) / static_cast<double>(length);
    st.rms_vs_q = rms(st.marginals, q);
    return st;
}

}  // namespace primegrid::seqgen
