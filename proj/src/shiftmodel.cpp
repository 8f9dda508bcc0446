#include "primegrid/shiftmodel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "primegrid/errors.hpp"
#include "primegrid/rng.hpp"

namespace primegrid::shiftmodel {

namespace {

bool contains_subword(const Word& w, const Word& sub) {
    if (sub.size() > w.size()) return false;
    for (size_t i = 0; i + sub.size() <= w.size(); ++i) {
        if (std::equal(sub.begin(), sub.end(), w.begin() + i)) return true;
    }
    return false;
}

std::string letter_str(uint32_t v) { return v == kStar ? "*" : std::to_string(v); }

std::string word_str(const Word& w) {
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += ',';
        s += letter_str(w[i]);
    }
    return s;
}

}  // namespace

VertexShift build_vertex_shift(const std::vector<Word>& eliminated,
                               const std::vector<uint32_t>& alphabet) {
    if (alphabet.empty()) throw std::domain_error("build_vertex_shift: empty alphabet");
    size_t n = 1;
    for (const auto& w : eliminated) n = std::max(n, w.size());

    VertexShift vs;
    vs.word_len = static_cast<int>(n);

    // enumerate alphabet^n, skipping words that contain an eliminated factor
    Word current(n, alphabet[0]);
    std::vector<size_t> odo(n, 0);
    for (;;) {
        bool bad = false;
        for (const auto& e : eliminated)
            if (contains_subword(current, e)) {
                bad = true;
                break;
            }
        if (!bad) vs.states.push_back(current);
        size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++odo[pos] < alphabet.size()) {
                current[pos] = alphabet[odo[pos]];
                break;
            }
            odo[pos] = 0;
            current[pos] = alphabet[0];
        }
        if (pos == 0 && odo[0] == 0 && current[0] == alphabet[0]) break;
    }

    // overlap adjacency via prefix index
    std::map<Word, std::vector<uint32_t>> by_prefix;
    for (uint32_t j = 0; j < vs.states.size(); ++j) {
        Word prefix(vs.states[j].begin(), vs.states[j].end() - 1);
        by_prefix[prefix].push_back(j);
    }
    vs.next.resize(vs.states.size());
    for (uint32_t i = 0; i < vs.states.size(); ++i) {
        Word suffix(vs.states[i].begin() + 1, vs.states[i].end());
        auto it = by_prefix.find(suffix);
        if (it != by_prefix.end()) vs.next[i] = it->second;
    }
    return vs;
}

namespace {

bool strongly_connected(const std::vector<std::vector<double>>& P) {
    const size_t n = P.size();
    auto reach = [&](bool reverse) {
        std::vector<char> seen(n, 0);
        std::vector<size_t> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            const size_t v = stack.back();
            stack.pop_back();
            for (size_t w = 0; w < n; ++w) {
                const double edge = reverse ? P[w][v] : P[v][w];
                if (edge > 0.0 && !seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        return std::count(seen.begin(), seen.end(), 1) == static_cast<long>(n);
    };
    return reach(false) && reach(true);
}

std::vector<double> power_iteration(const std::vector<std::vector<double>>& P) {
    const size_t n = P.size();
    std::vector<double> pi(n, 1.0 / n), nxt(n);
    for (int iter = 0; iter < 200000; ++iter) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (size_t i = 0; i < n; ++i) {
            if (pi[i] == 0.0) continue;
            for (size_t j = 0; j < n; ++j) nxt[j] += pi[i] * P[i][j];
        }
        double diff = 0.0, sum = 0.0;
        for (size_t j = 0; j < n; ++j) {
            diff += std::fabs(nxt[j] - pi[j]);
            sum += nxt[j];
        }
        for (size_t j = 0; j < n; ++j) pi[j] = nxt[j] / sum;
        if (diff < 1e-14) return pi;
    }
    throw numeric_error("stationary: power iteration did not converge");
}

}  // namespace

std::vector<double> stationary(const std::vector<std::vector<double>>& P) {
    const size_t n = P.size();
    if (n == 0) throw std::domain_error("stationary: empty matrix");
    for (const auto& row : P) {
        if (row.size() != n) throw std::domain_error("stationary: matrix not square");
        double s = 0.0;
        for (double v : row) {
            if (v < 0.0) throw std::domain_error("stationary: negative entry");
            s += v;
        }
        if (std::fabs(s - 1.0) > 1e-12)
            throw std::domain_error("stationary: row does not sum to 1");
    }
    if (!strongly_connected(P)) throw std::domain_error("stationary: chain is reducible");

    // solve (P^T - I) pi = 0 with the last equation replaced by sum(pi) = 1
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (size_t i = 0; i + 1 < n; ++i) {
        for (size_t j = 0; j < n; ++j) a[i][j] = P[j][i] - (i == j ? 1.0 : 0.0);
    }
    for (size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    a[n - 1][n] = 1.0;

    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        if (std::fabs(a[piv][col]) < 1e-300) return power_iteration(P);
        std::swap(a[col], a[piv]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> pi(n);
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) {
        pi[i] = a[i][n] / a[i][i];
        sum += pi[i];
    }
    for (double& v : pi) v /= sum;
    return pi;
}

MarkovShift markov_from_vertex(const VertexShift& vs,
                               const std::map<uint32_t, double>& letter_prob) {
    MarkovShift ms;
    const size_t n = vs.states.size();
    ms.state_names.reserve(n);
    ms.emit.reserve(n);
    ms.P.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        ms.state_names.push_back(word_str(vs.states[i]));
        ms.emit.push_back(vs.states[i].back());
    }
    for (size_t i = 0; i < n; ++i) {
        double norm = 0.0;
        for (uint32_t j : vs.next[i]) norm += letter_prob.at(vs.states[j].back());
        if (norm <= 0.0)
            throw std::domain_error("markov_from_vertex: state with no outgoing mass");
        for (uint32_t j : vs.next[i])
            ms.P[i][j] = letter_prob.at(vs.states[j].back()) / norm;
    }
    ms.pi = stationary(ms.P);
    return ms;
}

StarDistribution star_distribution(int first_letter, int last_letter) {
    StarDistribution sd;
    double total = 0.0;
    for (int k = first_letter; k <= last_letter; ++k) {
        const double qk = analytic::inv_zeta(k + 1) - analytic::inv_zeta(k);
        sd.values.push_back(static_cast<uint32_t>(k));
        sd.prob.push_back(qk);
        total += qk;
    }
    for (double& v : sd.prob) v /= total;
    return sd;
}

namespace {

// expectation of max over the star distribution and a fixed letter
double expect_max_with(const StarDistribution& sd, uint32_t a) {
    double e = 0.0;
    for (size_t i = 0; i < sd.values.size(); ++i)
        e += sd.prob[i] * std::max(a, sd.values[i]);
    return e;
}

// expectation of max of two independent star draws
double expect_max_pair(const StarDistribution& sd) {
    double e = 0.0, cdf = 0.0;
    for (size_t i = 0; i < sd.values.size(); ++i) {
        const double prev = cdf;
        cdf += sd.prob[i];
        e += sd.values[i] * (cdf * cdf - prev * prev);
    }
    return e;
}

}  // namespace

double expected_hop(const MarkovShift& ms, const StarDistribution& star) {
    const double star_pair = expect_max_pair(star);
    double e = 0.0;
    for (size_t i = 0; i < ms.size(); ++i) {
        if (ms.pi[i] == 0.0) continue;
        for (size_t j = 0; j < ms.size(); ++j) {
            const double w = ms.pi[i] * ms.P[i][j];
            if (w == 0.0) continue;
            const uint32_t a = ms.emit[i], b = ms.emit[j];
            double m;
            if (a != kStar && b != kStar)
                m = std::max(a, b);
            else if (a == kStar && b == kStar)
                m = star_pair;
            else
                m = expect_max_with(star, a == kStar ? b : a);
            e += w * m;
        }
    }
    return e;
}

LetterMarginals marginals(const MarkovShift& ms) {
    LetterMarginals lm;
    for (size_t i = 0; i < ms.size(); ++i) lm.Pi[ms.emit[i]] += ms.pi[i];
    return lm;
}

double residual(const MarkovShift& ms, const analytic::LetterDensity& q) {
    const LetterMarginals lm = marginals(ms);
    double ss = 0.0;
    size_t terms = 0;
    double concrete_target = 0.0;
    for (const auto& [letter, mass] : lm.Pi) {
        if (letter == kStar) continue;
        if (letter > static_cast<uint32_t>(q.k_max()))
            throw std::domain_error("residual: chain letter outside density range");
        const double d = mass - q.q[letter];
        ss += d * d;
        concrete_target += q.q[letter];
        ++terms;
    }
    if (auto it = lm.Pi.find(kStar); it != lm.Pi.end()) {
        const double d = it->second - (1.0 - concrete_target);
        ss += d * d;
        ++terms;
    }
    return std::sqrt(ss / static_cast<double>(terms));
}

namespace {

constexpr int kLetters = 25;  // tracked alphabet 1..25 + star

struct Split {
    std::vector<double> p;  // p[1..25], p[0] unused
    double star;
};

// per-letter input probabilities for k >= 2 given p1 (single example): the
// non-1 mass 1 - p1 split proportionally to q. At the calibrated root this
// equals the published scaling p_k = (1 - p1^4) q_k, and rows stay
// stochastic for any p1 (the miscalibrated-residual probe relies on that).
Split single_split(double p1) {
    Split s;
    s.p.assign(kLetters + 1, 0.0);
    const double q1 = analytic::inv_zeta(2);
    const double f = (1.0 - p1) / (1.0 - q1);
    s.p[1] = p1;
    for (int k = 2; k <= kLetters; ++k)
        s.p[k] = f * (analytic::inv_zeta(k + 1) - analytic::inv_zeta(k));
    s.star = f * (1.0 - analytic::inv_zeta(kLetters + 1));
    return s;
}

}  // namespace

MarkovShift single_example_chain(double p1) {
    const Split sp = single_split(p1);
    // states: '11', '111', letters 1..25, star
    const size_t n = 2 + kLetters + 1;
    MarkovShift ms;
    ms.state_names = {"'11'", "'111'"};
    ms.emit = {1, 1};
    for (int k = 1; k <= kLetters; ++k) {
        ms.state_names.push_back(std::to_string(k));
        ms.emit.push_back(k);
    }
    ms.state_names.push_back("*");
    ms.emit.push_back(kStar);

    const size_t s11 = 0, s111 = 1, s1 = 2;  // letter k at index 1 + k
    auto idx = [&](int k) { return static_cast<size_t>(1 + k); };
    const size_t sstar = n - 1;

    ms.P.assign(n, std::vector<double>(n, 0.0));
    auto fill_free = [&](size_t row, size_t one_target) {
        ms.P[row][one_target] = sp.p[1];
        for (int k = 2; k <= kLetters; ++k) ms.P[row][idx(k)] = sp.p[k];
        ms.P[row][sstar] = sp.star;
    };
    fill_free(s11, s111);  // '11' + 1 -> '111'
    // '111': 1 is blocked, renormalize by (1 - p1)
    for (int k = 2; k <= kLetters; ++k) ms.P[s111][idx(k)] = sp.p[k] / (1.0 - sp.p[1]);
    ms.P[s111][sstar] = sp.star / (1.0 - sp.p[1]);
    fill_free(s1, s11);  // fresh 1 + 1 -> '11'
    for (int k = 2; k <= kLetters; ++k) fill_free(idx(k), s1);
    fill_free(sstar, s1);

    ms.pi = stationary(ms.P);
    return ms;
}

MarkovShift double_example_chain(double p1, double p2) {
    // states: 1,'11','111','1112','11121','111211','1112111',2, 3..25, star
    const std::vector<std::string> special = {"1",        "'11'",     "'111'",
                                              "'1112'",   "'11121'",  "'111211'",
                                              "'1112111'", "2"};
    const std::vector<uint32_t> special_emit = {1, 1, 1, 2, 1, 1, 1, 2};
    const size_t n_special = special.size();
    const size_t n = n_special + (kLetters - 2) + 1;

    MarkovShift ms;
    ms.state_names = special;
    ms.emit = special_emit;
    for (int k = 3; k <= kLetters; ++k) {
        ms.state_names.push_back(std::to_string(k));
        ms.emit.push_back(k);
    }
    ms.state_names.push_back("*");
    ms.emit.push_back(kStar);

    // split of the aggregate non-{1,2} mass proportional to q
    const double pstar_total = 1.0 - p1 - p2;
    const double tail_q = 1.0 - analytic::inv_zeta(3);  // mass of letters >= 3
    std::vector<double> pk(kLetters + 1, 0.0);
    for (int k = 3; k <= kLetters; ++k)
        pk[k] = pstar_total * (analytic::inv_zeta(k + 1) - analytic::inv_zeta(k)) / tail_q;
    const double pstar = pstar_total * (1.0 - analytic::inv_zeta(kLetters + 1)) / tail_q;

    const size_t s1 = 0, s11 = 1, s111 = 2, s1112 = 3, s11121 = 4, s111211 = 5,
                 s1112111 = 6, s2 = 7;
    auto idx = [&](int k) { return n_special + static_cast<size_t>(k - 3); };
    const size_t sstar = n - 1;

    ms.P.assign(n, std::vector<double>(n, 0.0));
    auto fill_free = [&](size_t row, size_t one_target, size_t two_target) {
        ms.P[row][one_target] = p1;
        ms.P[row][two_target] = p2;
        for (int k = 3; k <= kLetters; ++k) ms.P[row][idx(k)] = pk[k];
        ms.P[row][sstar] = pstar;
    };
    fill_free(s1, s11, s2);
    fill_free(s11, s111, s2);
    // '111': 1 blocked
    {
        const double norm = 1.0 - p1;
        ms.P[s111][s1112] = p2 / norm;
        for (int k = 3; k <= kLetters; ++k) ms.P[s111][idx(k)] = pk[k] / norm;
        ms.P[s111][sstar] = pstar / norm;
    }
    fill_free(s1112, s11121, s2);
    fill_free(s11121, s111211, s2);
    fill_free(s111211, s1112111, s2);
    // '1112111': both 1 and 2 blocked
    {
        const double norm = 1.0 - p1 - p2;
        for (int k = 3; k <= kLetters; ++k) ms.P[s1112111][idx(k)] = pk[k] / norm;
        ms.P[s1112111][sstar] = pstar / norm;
    }
    fill_free(s2, s1, s2);
    for (int k = 3; k <= kLetters; ++k) fill_free(idx(k), s1, s2);
    fill_free(sstar, s1, s2);

    ms.pi = stationary(ms.P);
    return ms;
}

namespace {

double q_of(int k) { return analytic::inv_zeta(k + 1) - analytic::inv_zeta(k); }

double marginal_of_letter(const MarkovShift& ms, uint32_t letter) {
    double m = 0.0;
    for (size_t i = 0; i < ms.size(); ++i)
        if (ms.emit[i] == letter) m += ms.pi[i];
    return m;
}

double solve_single_p1() {
    // q1 = (p + p^2 + p^3) / (1 + p + p^2 + p^3), strictly increasing in p
    const double q1 = q_of(1);
    double lo = 0.0, hi = 1.0 - 1e-12;
    for (int i = 0; i < 200; ++i) {
        const double p = 0.5 * (lo + hi);
        const double v = (p + p * p + p * p * p) / (1.0 + p + p * p + p * p * p);
        (v < q1 ? lo : hi) = p;
    }
    return 0.5 * (lo + hi);
}

std::pair<double, double> solve_double_p1p2() {
    const double q1 = q_of(1), q2 = q_of(2);
    auto F = [&](double p1, double p2, double& f1, double& f2) {
        MarkovShift ms = double_example_chain(p1, p2);
        f1 = marginal_of_letter(ms, 1) - q1;
        f2 = marginal_of_letter(ms, 2) - q2;
    };
    double p1 = 0.70, p2 = 0.18;
    for (int iter = 0; iter < 100; ++iter) {
        double f1, f2;
        F(p1, p2, f1, f2);
        if (std::fabs(f1) + std::fabs(f2) < 1e-13) break;
        const double h = 1e-8;
        double a1, a2, b1, b2;
        F(p1 + h, p2, a1, a2);
        F(p1, p2 + h, b1, b2);
        const double j11 = (a1 - f1) / h, j21 = (a2 - f2) / h;
        const double j12 = (b1 - f1) / h, j22 = (b2 - f2) / h;
        const double det = j11 * j22 - j12 * j21;
        if (std::fabs(det) < 1e-18) throw numeric_error("double example: singular Jacobian");
        p1 -= (f1 * j22 - f2 * j12) / det;
        p2 -= (j11 * f2 - j21 * f1) / det;
    }
    return {p1, p2};
}

}  // namespace

CalibratedExample calibrate_example(Example which) {
    CalibratedExample out;
    out.star = star_distribution(kLetters + 1, 64);
    if (which == Example::empty) {
        const size_t n = kLetters + 1;
        MarkovShift ms;
        std::vector<double> row(n, 0.0);
        for (int k = 1; k <= kLetters; ++k) {
            ms.state_names.push_back(std::to_string(k));
            ms.emit.push_back(k);
            row[k - 1] = q_of(k);
        }
        ms.state_names.push_back("*");
        ms.emit.push_back(kStar);
        row[n - 1] = 1.0 - analytic::inv_zeta(kLetters + 1);
        ms.P.assign(n, row);
        ms.pi = row;
        out.chain = std::move(ms);
        return out;
    }
    if (which == Example::single) {
        const double p1 = solve_single_p1();
        out.chain = single_example_chain(p1);
        out.params = {p1};
        return out;
    }
    auto [p1, p2] = solve_double_p1p2();
    out.chain = double_example_chain(p1, p2);
    out.params = {p1, p2};
    return out;
}

std::vector<uint32_t> sample_letters(const MarkovShift& ms, size_t length, uint64_t seed) {
    if (ms.pi.empty()) throw std::domain_error("sample_letters: chain not solved");
    Xoshiro256ss rng(seed);
    auto pick = [&](const std::vector<double>& dist) {
        const double u = rng.next_double();
        double acc = 0.0;
        for (size_t i = 0; i < dist.size(); ++i) {
            acc += dist[i];
            if (u < acc) return i;
        }
        return dist.size() - 1;
    };
    std::vector<uint32_t> out;
    out.reserve(length);
    size_t state = pick(ms.pi);
    for (size_t i = 0; i < length; ++i) {
        const uint32_t letter = ms.emit[state];
        out.push_back(letter == kStar ? 26u : letter);
        state = pick(ms.P[state]);
    }
    return out;
}

}  // namespace primegrid::shiftmodel
