#include "primegrid/trail.hpp"

#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <future>
#include <stdexcept>

#include <json.hpp>

#include "primegrid/errors.hpp"

namespace primegrid::trail {

TrailCheckpoint stream_trail(const signature::NormSegment& segment,
                             const TrailCheckpoint& checkpoint, PrimeStops& stops) {
    if (segment.lo != checkpoint.next_n)
        throw std::domain_error("stream_trail: segment does not start at checkpoint");

    TrailCheckpoint cp = checkpoint;
    uint64_t cumsum = cp.cumsum_linf;
    uint64_t last = cp.last_norm;
    const size_t len = segment.size();
    for (size_t i = 0; i < len; ++i) {
        const uint64_t norm = segment.norms[i];
        cumsum += last > norm ? last : norm;
        if (segment.prime_flags[i]) {
            stops.values.push_back(cumsum);
            ++cp.prime_count;
        }
        last = norm;
    }
    cp.next_n = segment.hi;
    cp.last_norm = static_cast<uint8_t>(last);
    cp.cumsum_linf = cumsum;
    return cp;
}

TrailCheckpoint run_trail(uint64_t from, uint64_t to_inclusive,
                          const TrailCheckpoint& start, uint64_t segment_size,
                          unsigned threads, PrimeStops& stops,
                          const SegmentCallback& on_segment) {
    if (from < 2 || from > to_inclusive) throw std::domain_error("run_trail: need 2 <= from <= to");
    if (start.next_n != from) throw std::domain_error("run_trail: checkpoint does not match from");
    if (segment_size == 0) throw std::domain_error("run_trail: segment size must be positive");
    if (threads == 0) threads = 1;

    const uint64_t hi_end = to_inclusive + 1;
    signature::SieveContext ctx(signature::isqrt(to_inclusive));

    TrailCheckpoint cp = start;
    std::deque<std::future<signature::NormSegment>> inflight;
    uint64_t next_lo = from;
    auto launch = [&]() {
        if (next_lo >= hi_end) return;
        const uint64_t lo = next_lo;
        const uint64_t hi = std::min(hi_end, lo + segment_size);
        next_lo = hi;
        inflight.push_back(std::async(std::launch::async, [lo, hi, &ctx] {
            return signature::sieve_norms(lo, hi, ctx);
        }));
    };
    for (unsigned i = 0; i < threads && next_lo < hi_end; ++i) launch();

    while (!inflight.empty()) {
        signature::NormSegment seg = inflight.front().get();
        inflight.pop_front();
        launch();
        const size_t stops_before = stops.values.size();
        cp = stream_trail(seg, cp, stops);
        if (on_segment) {
            std::vector<uint64_t> appended(stops.values.begin() + stops_before,
                                           stops.values.end());
            on_segment(cp, appended);
        }
    }
    return cp;
}

uint64_t l1_trail(uint64_t n) {
    if (n == 0) throw std::domain_error("l1_trail: n must be >= 1");
    if (n == 1) return 0;
    signature::SieveContext ctx(signature::isqrt(n));
    uint64_t cumsum = 0;
    uint64_t last = 0;  // Omega(1) = 0
    for (uint64_t lo = 2; lo <= n; lo += signature::kDefaultSegment) {
        const uint64_t hi = std::min(n + 1, lo + signature::kDefaultSegment);
        auto om = signature::sieve_norms_l1(lo, hi, ctx);
        for (uint8_t v : om) {
            cumsum += last + v;
            last = v;
        }
    }
    return cumsum;
}

std::vector<RatioPoint> ratio_series(const PrimeStops& stops,
                                     const std::vector<uint64_t>& primes,
                                     uint64_t stride) {
    if (stride == 0) throw std::domain_error("ratio_series: stride must be >= 1");
    if (primes.size() < stops.values.size())
        throw std::domain_error("ratio_series: prime list shorter than stops");
    std::vector<RatioPoint> out;
    for (uint64_t k = stride; k <= stops.values.size(); k += stride) {
        const uint64_t stop = stops.values[k - 1];
        const uint64_t p = primes[k - 1];
        out.push_back({k, p, stop, static_cast<double>(stop) / static_cast<double>(p)});
    }
    return out;
}

void append_stops_file(const std::string& path, const std::vector<uint64_t>& stops) {
    std::ofstream f(path, std::ios::binary | std::ios::app);
    if (!f) throw data_error("cannot open stops file for append: " + path);
    for (uint64_t v : stops) {
        unsigned char b[8];
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
        f.write(reinterpret_cast<const char*>(b), 8);
    }
    if (!f) throw data_error("write failed: " + path);
}

std::vector<uint64_t> read_stops_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot open stops file: " + path);
    std::vector<uint64_t> out;
    unsigned char b[8];
    while (f.read(reinterpret_cast<char*>(b), 8)) {
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
        out.push_back(v);
    }
    if (f.gcount() != 0) throw data_error("stops file truncated mid-value: " + path);
    return out;
}

void truncate_stops_file(const std::string& path, uint64_t count) {
    std::error_code ec;
    std::filesystem::resize_file(path, count * 8, ec);
    if (ec) throw data_error("cannot truncate stops file: " + path + ": " + ec.message());
}

void write_checkpoint_json(const std::string& path, const TrailCheckpoint& cp,
                           const std::string& stops_file) {
    nlohmann::ordered_json j;
    j["next_n"] = cp.next_n;
    j["last_norm"] = cp.last_norm;
    j["cumsum_linf"] = cp.cumsum_linf;
    j["prime_count"] = cp.prime_count;
    j["stops_file"] = stops_file;
    j["format_version"] = kCheckpointFormatVersion;
    // write-then-rename so a crash never leaves a torn checkpoint
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw data_error("cannot write checkpoint: " + tmp);
        f << j.dump(2) << '\n';
    }
    std::filesystem::rename(tmp, path);
}

TrailCheckpoint read_checkpoint_json(const std::string& path, std::string* stops_file) {
    std::ifstream f(path);
    if (!f) throw data_error("cannot open checkpoint: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw data_error("malformed checkpoint " + path + ": " + e.what());
    }
    if (j.value("format_version", -1) != kCheckpointFormatVersion)
        throw data_error("unsupported checkpoint format_version in " + path);
    TrailCheckpoint cp;
    cp.next_n = j.at("next_n").get<uint64_t>();
    cp.last_norm = static_cast<uint8_t>(j.at("last_norm").get<unsigned>());
    cp.cumsum_linf = j.at("cumsum_linf").get<uint64_t>();
    cp.prime_count = j.at("prime_count").get<uint64_t>();
    if (stops_file) *stops_file = j.at("stops_file").get<std::string>();
    return cp;
}

}  // namespace primegrid::trail
