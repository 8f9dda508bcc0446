#pragma once

#include <cstdint>
#include <vector>

#include "primegrid/rng.hpp"

namespace primegrid {

// Walker/Vose alias table over a non-negative weight vector. One uniform
// double per sample, GSL-style (integer part selects the column, fractional
// part the coin).
class AliasTable {
public:
    AliasTable() = default;

    explicit AliasTable(const std::vector<double>& weights) {
        const size_t n = weights.size();
        double total = 0.0;
        for (double w : weights) total += w;
        if (n == 0 || total <= 0.0) return;  // stays invalid
        cut_.assign(n, 0.0);
        alias_.assign(n, 0);
        std::vector<double> scaled(n);
        std::vector<uint32_t> small, large;
        for (size_t i = 0; i < n; ++i) {
            scaled[i] = weights[i] * n / total;
            (scaled[i] < 1.0 ? small : large).push_back(static_cast<uint32_t>(i));
        }
        while (!small.empty() && !large.empty()) {
            const uint32_t s = small.back(), l = large.back();
            small.pop_back();
            large.pop_back();
            cut_[s] = scaled[s];
            alias_[s] = l;
            scaled[l] -= 1.0 - scaled[s];
            (scaled[l] < 1.0 ? small : large).push_back(l);
        }
        for (uint32_t i : small) cut_[i] = 1.0;
        for (uint32_t i : large) cut_[i] = 1.0;
        valid_ = true;
    }

    bool valid() const { return valid_; }

    uint32_t sample(Xoshiro256ss& rng) const {
        const double u = rng.next_double() * static_cast<double>(cut_.size());
        const auto idx = static_cast<uint32_t>(u);
        const double frac = u - idx;
        return frac < cut_[idx] ? idx : alias_[idx];
    }

private:
    std::vector<double> cut_;
    std::vector<uint32_t> alias_;
    bool valid_ = false;
};

}  // namespace primegrid
