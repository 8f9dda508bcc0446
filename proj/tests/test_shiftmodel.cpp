#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <set>

#include "primegrid/analytic.hpp"
#include "primegrid/rng.hpp"
#include "primegrid/shiftmodel.hpp"
#include "primegrid/words.hpp"

using namespace primegrid;
using shiftmodel::kStar;

namespace {

// independent brute-force count of allowed n-words used to cross-check the
// vertex shift enumeration
size_t brute_count(const std::vector<shiftmodel::Word>& eliminated,
                   const std::vector<uint32_t>& alphabet, size_t n) {
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) total *= alphabet.size();
    size_t count = 0;
    for (size_t code = 0; code < total; ++code) {
        shiftmodel::Word w(n);
        size_t c = code;
        for (size_t i = 0; i < n; ++i) {
            w[i] = alphabet[c % alphabet.size()];
            c /= alphabet.size();
        }
        bool ok = true;
        for (const auto& e : eliminated) {
            for (size_t i = 0; ok && i + e.size() <= n; ++i)
                if (std::equal(e.begin(), e.end(), w.begin() + i)) ok = false;
        }
        count += ok;
    }
    return count;
}

}  // namespace

TEST_CASE("vertex shift construction") {
    const std::vector<uint32_t> abc = {1, 2, kStar};
    const auto vs = shiftmodel::build_vertex_shift({{1, 1, 1, 1}}, abc);
    CHECK(vs.word_len == 4);
    CHECK(vs.states.size() == 80);  // 3^4 - 1
    CHECK(vs.states.size() == brute_count({{1, 1, 1, 1}}, abc, 4));

    // full shift: complete overlap graph on single letters
    const auto full = shiftmodel::build_vertex_shift({}, {1, 2});
    CHECK(full.word_len == 1);
    CHECK(full.states.size() == 2);
    for (const auto& nbrs : full.next) CHECK(nbrs.size() == 2);

    const std::vector<shiftmodel::Word> two = {{1, 1, 1, 2, 1, 1, 1, 2}, {1, 1, 1, 1}};
    const auto vs2 = shiftmodel::build_vertex_shift(two, abc);
    CHECK(vs2.word_len == 8);
    CHECK(vs2.states.size() == brute_count(two, abc, 8));
    CHECK(vs2.states.size() < 6561);

    CHECK_THROWS_AS(shiftmodel::build_vertex_shift({}, {}), std::domain_error);
}

TEST_CASE("stationary solver") {
    const std::vector<std::vector<double>> swap2 = {{0, 1}, {1, 0}};
    const auto pi = shiftmodel::stationary(swap2);
    CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));

    // randomized irreducible chains on up to 100 states
    Xoshiro256ss rng(31337);
    for (int trial = 0; trial < 10; ++trial) {
        const size_t n = 3 + rng.next_below(98);
        std::vector<std::vector<double>> P(n, std::vector<double>(n, 0.0));
        for (size_t i = 0; i < n; ++i) {
            P[i][(i + 1) % n] = 0.1;  // cycle guarantees irreducibility
            double sum = 0.1;
            for (size_t j = 0; j < n; ++j) {
                if (rng.next_double() < 0.15) {
                    const double w = rng.next_double();
                    P[i][j] += w;
                    sum += w;
                }
            }
            for (size_t j = 0; j < n; ++j) P[i][j] /= sum;
        }
        const auto v = shiftmodel::stationary(P);
        double checksum = 0.0;
        for (size_t j = 0; j < n; ++j) {
            double pj = 0.0;
            for (size_t i = 0; i < n; ++i) pj += v[i] * P[i][j];
            CHECK(std::fabs(pj - v[j]) < 1e-10);
            checksum += v[j];
        }
        CHECK(std::fabs(checksum - 1.0) < 1e-12);
    }

    // reducible chain rejected
    const std::vector<std::vector<double>> blocks = {{1, 0}, {0, 1}};
    CHECK_THROWS_AS(shiftmodel::stationary(blocks), std::domain_error);
    const std::vector<std::vector<double>> bad_rows = {{0.5, 0.4}, {1, 0}};
    CHECK_THROWS_AS(shiftmodel::stationary(bad_rows), std::domain_error);
}

TEST_CASE("single worked example") {
    const auto cal = shiftmodel::calibrate_example(shiftmodel::Example::single);
    REQUIRE(cal.params.size() == 1);
    const double p1 = cal.params[0];
    CHECK(p1 == doctest::Approx(0.70451750393497).epsilon(1e-10));

    // closed-form stationary mass of the '111' state
    const double pi111 = p1 * p1 * p1 * (1.0 - p1) / (1.0 - p1 * p1 * p1 * p1);
    REQUIRE(cal.chain.state_names[1] == "'111'");
    CHECK(cal.chain.pi[1] == doctest::Approx(pi111).epsilon(1e-12));

    CHECK(shiftmodel::expected_hop(cal.chain, cal.star) ==
          doctest::Approx(2.267674314001).epsilon(1e-7));

    const auto q = analytic::letter_density(25);
    CHECK(shiftmodel::residual(cal.chain, q) < 1e-8);
    const auto lm = shiftmodel::marginals(cal.chain);
    CHECK(lm.Pi.at(1) == doctest::Approx(q.q[1]).epsilon(1e-10));
    CHECK(lm.Pi.at(2) == doctest::Approx(q.q[2]).epsilon(1e-10));

    // deliberately miscalibrated chain has a visible residual
    const auto wrong = shiftmodel::single_example_chain(0.5);
    CHECK(shiftmodel::residual(wrong, q) > 1e-2);
}

TEST_CASE("double worked example") {
    const auto cal = shiftmodel::calibrate_example(shiftmodel::Example::double_word);
    REQUIRE(cal.params.size() == 2);
    const double p1 = cal.params[0], p2 = cal.params[1];
    CHECK(p1 == doctest::Approx(0.70451750393497).epsilon(1e-8));
    CHECK(p2 == doctest::Approx(0.17983592503218).epsilon(1e-8));

    const double den = 1.0 - std::pow(p1, 4) +
                       (std::pow(p1, 3) + std::pow(p1, 4) + std::pow(p1, 5) +
                        std::pow(p1, 6)) *
                           p2;
    const double pi111 = (1.0 - p1) * std::pow(p1, 3) / den;
    const double pi1112111 = std::pow(p1, 6) * p2 / den;
    REQUIRE(cal.chain.state_names[2] == "'111'");
    REQUIRE(cal.chain.state_names[6] == "'1112111'");
    CHECK(cal.chain.pi[2] == doctest::Approx(pi111).epsilon(1e-10));
    CHECK(cal.chain.pi[6] == doctest::Approx(pi1112111).epsilon(1e-10));

    CHECK(shiftmodel::expected_hop(cal.chain, cal.star) ==
          doctest::Approx(2.270017296649).epsilon(1e-7));

    const auto q = analytic::letter_density(25);
    const auto lm = shiftmodel::marginals(cal.chain);
    CHECK(lm.Pi.at(2) == doctest::Approx(q.q[2]).epsilon(1e-8));
    CHECK(shiftmodel::residual(cal.chain, q) < 1e-8);
}

TEST_CASE("iid example matches the analytic hop and the chains order strictly") {
    const auto empty = shiftmodel::calibrate_example(shiftmodel::Example::empty);
    const auto single = shiftmodel::calibrate_example(shiftmodel::Example::single);
    const auto dbl = shiftmodel::calibrate_example(shiftmodel::Example::double_word);

    const double h_empty = shiftmodel::expected_hop(empty.chain, empty.star);
    const double h_single = shiftmodel::expected_hop(single.chain, single.star);
    const double h_double = shiftmodel::expected_hop(dbl.chain, dbl.star);

    CHECK(h_empty == doctest::Approx(analytic::iid_expected_hop()).epsilon(1e-9));
    CHECK(h_empty == doctest::Approx(2.22101).epsilon(1e-5));
    CHECK(h_empty < h_single);
    CHECK(h_single < h_double);

    const double cap = 2.0 * analytic::constant_c();
    CHECK(h_empty <= cap);
    CHECK(h_single <= cap);
    CHECK(h_double <= cap);
}

TEST_CASE("generic vertex-shift route reproduces the single example") {
    const auto cal = shiftmodel::calibrate_example(shiftmodel::Example::single);
    const double p1 = cal.params[0];
    const auto q = analytic::letter_density(25);
    const double q1 = q.q[1], q2 = q.q[2];
    // compress letters >= 3 into the star; input probabilities keep the
    // single example's proportional split
    const double f = (1.0 - p1) / (1.0 - q1);
    std::map<uint32_t, double> prob = {
        {1, p1}, {2, f * q2}, {kStar, (1.0 - p1) - f * q2}};

    const auto vs = shiftmodel::build_vertex_shift({{1, 1, 1, 1}}, {1, 2, kStar});
    const auto ms = shiftmodel::markov_from_vertex(vs, prob);

    const auto lm = shiftmodel::marginals(ms);
    CHECK(lm.Pi.at(1) == doctest::Approx(q1).epsilon(1e-10));
    CHECK(lm.Pi.at(2) == doctest::Approx(q2).epsilon(1e-10));
    CHECK(lm.Pi.at(kStar) == doctest::Approx(1.0 - q1 - q2).epsilon(1e-10));

    // mass of states ending in '111' equals the compressed chain's pi('111')
    double pi111_vertex = 0.0;
    for (size_t i = 0; i < vs.states.size(); ++i) {
        const auto& w = vs.states[i];
        if (w[1] == 1 && w[2] == 1 && w[3] == 1 && w[0] != 1) pi111_vertex += ms.pi[i];
    }
    const double pi111 = p1 * p1 * p1 * (1.0 - p1) / (1.0 - p1 * p1 * p1 * p1);
    CHECK(pi111_vertex == doctest::Approx(pi111).epsilon(1e-10));

    const auto star = shiftmodel::star_distribution(3, 64);
    CHECK(shiftmodel::expected_hop(ms, star) ==
          doctest::Approx(2.267674314001).epsilon(1e-7));
}

TEST_CASE("sampled sequences avoid the eliminated word") {
    const auto cal = shiftmodel::calibrate_example(shiftmodel::Example::single);
    const auto letters = shiftmodel::sample_letters(cal.chain, 100000, 77);
    REQUIRE(letters.size() == 100000);
    std::vector<uint8_t> vals(letters.begin(), letters.end());
    // '1111' never appears (the F_1 window)
    CHECK(words::scan_forbidden_values(vals, 1).empty());
    // determinism
    const auto again = shiftmodel::sample_letters(cal.chain, 100000, 77);
    CHECK(letters == again);
}
