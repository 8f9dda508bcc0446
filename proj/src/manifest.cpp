#include "primegrid/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "primegrid/errors.hpp"

namespace primegrid::manifest {

std::string file_digest(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw data_error("digest: cannot open " + path);
    uint64_t h = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (f.read(buf, sizeof buf) || f.gcount() > 0) {
        const std::streamsize n = f.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!f) break;
    }
    char hex[17];
    snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    return std::string("fnv1a64:") + hex;
}

void RunManifest::add_input(const std::string& path) { inputs[path] = file_digest(path); }

void RunManifest::add_output(const std::string& path) { outputs[path] = file_digest(path); }

void RunManifest::write(const std::string& path) const {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["engine_version"] = kEngineVersion;
    j["format_version"] = kFormatVersion;
    j["prng"] = "xoshiro256**";
    j["wall_time_s"] = wall_time_s;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write manifest: " + path);
    f << j.dump(2) << '\n';
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw data_error("cannot write csv: " + path);
    for (size_t i = 0; i < header.size(); ++i) f << (i ? "," : "") << header[i];
    f << '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
        f << '\n';
    }
    if (!f) throw data_error("csv write failed: " + path);
}

}  // namespace primegrid::manifest
