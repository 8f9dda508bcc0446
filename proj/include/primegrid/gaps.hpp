#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "primegrid/trail.hpp"

namespace primegrid::gaps {

enum class Kind { D1, D2, TrailD1, TrailD2 };

struct GapSeries {
    Kind kind;
    std::vector<int16_t> values;
};

// First differences (order 1) of a strictly increasing sequence, or
// differences of those (order 2). Values are checked against int16 range.
GapSeries gap_series(const std::vector<uint64_t>& input, int order, Kind kind);

struct Histogram {
    int64_t bin_lo = 0;            // value of counts[0]
    std::vector<uint64_t> counts;  // one bin per integer, trimmed to nonzero ends

    uint64_t count_of(int64_t value) const;
    uint64_t total() const;
};

Histogram histogram(const GapSeries& series);

// Most frequent gap value(s); ties all reported, ascending.
std::vector<int64_t> champions(const Histogram& hist);

struct ExclusionReport {
    // values 1..6 that occur, with index of first occurrence (0-based)
    std::map<int16_t, size_t> small_values;
    bool three_or_five_present = false;
};

// Scans a TrailD1 series for the provably excluded values. A hit for 3 or 5
// signals an engine bug and throws primegrid::numeric_error.
ExclusionReport excluded_values_check(const GapSeries& series);

// pi_inf(N) = max{k : L_inf(p_k) <= N}; 0 below the first stop.
uint64_t pi_infty(uint64_t n, const trail::PrimeStops& stops);

struct PntRatios {
    double ratio_log;  // pi_inf(N) * log(N) / N
    double ratio_li;   // pi_inf(N) / Li(N)
};

// Ratios at N = L_inf(p_k); stops must cover index k.
PntRatios pnt_ratios(uint64_t k, const trail::PrimeStops& stops);

}  // namespace primegrid::gaps
