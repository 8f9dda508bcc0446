#include "primegrid/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "primegrid/errors.hpp"

namespace primegrid::analytic {

namespace {

// B_2, B_4, ..., B_14
constexpr double kBernoulli[] = {
    1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
    5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0,
};

double pow_int(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

double zeta(int k) {
    if (k < 2) throw std::domain_error("zeta: k must be >= 2 (zeta(1) diverges)");
    const double s = k;
    const int M = 20;
    double sum = 0.0;
    for (int n = 1; n < M; ++n) sum += 1.0 / pow_int(n, k);
    const double Ms = pow_int(M, k);
    sum += static_cast<double>(M) / Ms / (s - 1.0);  // M^(1-s)/(s-1)
    sum += 0.5 / Ms;
    // Euler-Maclaurin correction terms B_2j/(2j)! * s(s+1)...(s+2j-2) * M^(-s-2j+1)
    double fact = 1.0;             // (2j)!
    double rising = 1.0;           // s(s+1)...(s+2j-2)
    double mpow = 1.0 / (Ms * M);  // M^(-s-2j+1)
    for (int j = 1; j <= 7; ++j) {
        fact *= (2 * j - 1) * (2 * j);
        if (j == 1)
            rising = s;
        else
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2);
        sum += kBernoulli[j - 1] / fact * rising * mpow;
        mpow /= static_cast<double>(M) * M;
    }
    return sum;
}

double inv_zeta(int k) {
    if (k <= 1) return 0.0;
    return 1.0 / zeta(k);
}

std::vector<double> LetterDensity::as_prob_vector() const {
    std::vector<double> p(q.begin() + 1, q.end());
    p.push_back(tail);
    return p;
}

LetterDensity letter_density(int k_max) {
    if (k_max < 1) throw std::domain_error("letter_density: k_max must be >= 1");
    LetterDensity d;
    d.q.resize(k_max + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) d.q[k] = inv_zeta(k + 1) - inv_zeta(k);
    d.tail = 1.0 - inv_zeta(k_max + 1);  // 1 - sum_{k<=k_max} q_k, telescoped
    return d;
}

double constant_c() {
    double c = 0.0;
    for (int k = 1; k <= 70; ++k) c += 1.0 - inv_zeta(k);
    return c;
}

double bound_bunched() {
    double s = 0.0;
    for (int k = 1; k <= 70; ++k) {
        const double qk = inv_zeta(k + 1) - inv_zeta(k);
        s += (k + 1.0 / (std::ldexp(1.0, k + 1) - 1.0)) * qk;
    }
    return s;
}

double bound_spread() { return 1.5 * constant_c(); }

double iid_expected_hop() {
    double s = 0.0;
    for (int k = 1; k <= 70; ++k) {
        const double a = inv_zeta(k + 1), b = inv_zeta(k);
        s += k * (a * a - b * b);
    }
    return s;
}

namespace {

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = 1.0 / std::log(lm), frm = 1.0 / std::log(rm);
    const double left = simpson(a, m, fa, flm, fm);
    const double right = simpson(m, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double li(double x) {
    if (x < 2.0) throw std::domain_error("li: x must be >= 2");
    if (x == 2.0) return 0.0;
    const double fa = 1.0 / std::log(2.0);
    const double fb = 1.0 / std::log(x);
    const double m = 0.5 * (2.0 + x);
    const double fm = 1.0 / std::log(m);
    const double whole = simpson(2.0, x, fa, fm, fb);
    // Absolute tolerance scaled from a crude magnitude estimate gives the
    // required relative accuracy.
    const double tol = 1e-10 * std::max(1.0, std::fabs(whole));
    return adaptive_simpson(2.0, x, fa, fm, fb, whole, tol, 48);
}

}  // namespace primegrid::analytic
