#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace primegrid::manifest {

inline constexpr const char* kEngineVersion = "0.1.0";
inline constexpr int kFormatVersion = 1;

// FNV-1a over a file's bytes, hex-encoded; the integrity digest recorded in
// run manifests.
std::string file_digest(const std::string& path);

struct RunManifest {
    std::string command;
    std::map<std::string, std::string> parameters;
    std::map<std::string, std::string> inputs;   // path -> digest
    std::map<std::string, std::string> outputs;  // path -> digest
    double wall_time_s = 0.0;

    void add_input(const std::string& path);
    void add_output(const std::string& path);
    void write(const std::string& path) const;
};

// CSV conventions shared by every command: comma separated, LF endings,
// header row, integers rendered exactly, reals shortest-round-trip.
std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace primegrid::manifest
