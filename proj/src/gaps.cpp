#include "primegrid/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "primegrid/analytic.hpp"
#include "primegrid/errors.hpp"

namespace primegrid::gaps {

GapSeries gap_series(const std::vector<uint64_t>& input, int order, Kind kind) {
    if (order != 1 && order != 2) throw std::domain_error("gap_series: order must be 1 or 2");
    if (input.size() < static_cast<size_t>(order) + 1)
        throw std::domain_error("gap_series: input too short for requested order");

    std::vector<int64_t> d1(input.size() - 1);
    for (size_t i = 0; i + 1 < input.size(); ++i) {
        if (input[i + 1] <= input[i])
            throw std::domain_error("gap_series: input not strictly increasing");
        d1[i] = static_cast<int64_t>(input[i + 1] - input[i]);
    }
    std::vector<int64_t> vals;
    if (order == 1) {
        vals = std::move(d1);
    } else {
        vals.resize(d1.size() - 1);
        for (size_t i = 0; i + 1 < d1.size(); ++i) vals[i] = d1[i + 1] - d1[i];
    }

    GapSeries s;
    s.kind = kind;
    s.values.reserve(vals.size());
    for (int64_t v : vals) {
        if (v < std::numeric_limits<int16_t>::min() || v > std::numeric_limits<int16_t>::max())
            throw numeric_error("gap_series: value out of int16 range");
        s.values.push_back(static_cast<int16_t>(v));
    }
    return s;
}

uint64_t Histogram::count_of(int64_t value) const {
    if (value < bin_lo || value >= bin_lo + static_cast<int64_t>(counts.size())) return 0;
    return counts[value - bin_lo];
}

uint64_t Histogram::total() const {
    uint64_t t = 0;
    for (uint64_t c : counts) t += c;
    return t;
}

Histogram histogram(const GapSeries& series) {
    if (series.values.empty()) throw std::domain_error("histogram: empty series");
    const auto [mn, mx] = std::minmax_element(series.values.begin(), series.values.end());
    Histogram h;
    h.bin_lo = *mn;
    h.counts.assign(static_cast<size_t>(*mx - *mn) + 1, 0);
    for (int16_t v : series.values) ++h.counts[v - h.bin_lo];
    return h;
}

std::vector<int64_t> champions(const Histogram& hist) {
    uint64_t best = 0;
    for (uint64_t c : hist.counts) best = std::max(best, c);
    std::vector<int64_t> out;
    for (size_t i = 0; i < hist.counts.size(); ++i)
        if (hist.counts[i] == best) out.push_back(hist.bin_lo + static_cast<int64_t>(i));
    return out;
}

ExclusionReport excluded_values_check(const GapSeries& series) {
    if (series.kind != Kind::TrailD1)
        throw std::domain_error("excluded_values_check: series must be TrailD1");
    ExclusionReport rep;
    for (size_t i = 0; i < series.values.size(); ++i) {
        const int16_t v = series.values[i];
        if (v >= 1 && v <= 6 && !rep.small_values.count(v)) rep.small_values[v] = i;
    }
    if (rep.small_values.count(3) || rep.small_values.count(5)) {
        rep.three_or_five_present = true;
        throw numeric_error("excluded_values_check: trail gap 3 or 5 present (engine bug)");
    }
    return rep;
}

uint64_t pi_infty(uint64_t n, const trail::PrimeStops& stops) {
    const auto& v = stops.values;
    return static_cast<uint64_t>(std::upper_bound(v.begin(), v.end(), n) - v.begin());
}

PntRatios pnt_ratios(uint64_t k, const trail::PrimeStops& stops) {
    if (k == 0 || k > stops.values.size())
        throw std::domain_error("pnt_ratios: k out of range of stops");
    const uint64_t n = stops.values[k - 1];
    const double nd = static_cast<double>(n);
    const uint64_t pin = pi_infty(n, stops);
    return {static_cast<double>(pin) * std::log(nd) / nd,
            static_cast<double>(pin) / analytic::li(nd)};
}

}  // namespace primegrid::gaps
