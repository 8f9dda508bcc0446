#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "primegrid/analytic.hpp"
#include "primegrid/errors.hpp"
#include "primegrid/gaps.hpp"
#include "primegrid/manifest.hpp"
#include "primegrid/optimizer.hpp"
#include "primegrid/seqgen.hpp"
#include "primegrid/shiftmodel.hpp"
#include "primegrid/signature.hpp"
#include "primegrid/trail.hpp"
#include "primegrid/words.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace primegrid;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

unsigned default_threads() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

std::vector<uint64_t> parse_u64_list(const std::string& csv) {
    std::vector<uint64_t> out;
    size_t pos = 0;
    while (pos < csv.size()) {
        size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        out.push_back(std::stoull(csv.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    if (out.empty()) throw data_error("empty list: " + csv);
    return out;
}

std::string timestamp_utc() {
    char buf[32];
    const auto t = std::time(nullptr);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// ---------------------------------------------------------------- trail ---

struct SegmentBudgetReached {};

void cmd_trail(uint64_t from, uint64_t to, uint64_t segment_size, const std::string& dir,
               bool resume, unsigned threads, uint64_t max_segments) {
    fs::create_directories(dir);
    const std::string stops_path = dir + "/stops.bin";
    const std::string cp_path = dir + "/checkpoint.json";

    trail::TrailCheckpoint cp;
    if (resume) {
        std::string stops_name;
        cp = trail::read_checkpoint_json(cp_path, &stops_name);
        // drop any stops written after the last durable checkpoint
        trail::truncate_stops_file(stops_path, cp.prime_count);
        if (cp.next_n > to + 1) throw data_error("checkpoint already beyond --to");
    } else {
        if (fs::exists(cp_path)) throw data_error(cp_path + " exists; use --resume");
        std::ofstream(stops_path, std::ios::binary | std::ios::trunc);
        trail::write_checkpoint_json(cp_path, cp, "stops.bin");
        if (from != cp.next_n) throw data_error("fresh runs must start at --from 2");
    }
    if (cp.next_n == to + 1) {
        std::fprintf(stderr, "trail: nothing to do (checkpoint at end)\n");
        return;
    }

    uint64_t segments_done = 0;
    trail::PrimeStops scratch;
    try {
        trail::run_trail(cp.next_n, to, cp, segment_size, threads, scratch,
                         [&](const trail::TrailCheckpoint& next_cp,
                             const std::vector<uint64_t>& appended) {
                             trail::append_stops_file(stops_path, appended);
                             trail::write_checkpoint_json(cp_path, next_cp, "stops.bin");
                             scratch.values.clear();  // persisted; keep memory flat
                             if (max_segments && ++segments_done >= max_segments &&
                                 next_cp.next_n <= to)
                                 throw SegmentBudgetReached{};
                         });
    } catch (const SegmentBudgetReached&) {
        std::fprintf(stderr, "trail: segment budget reached; continue with --resume\n");
    }
}

int run_trail_command(uint64_t from, uint64_t to, uint64_t segment_size,
                      const std::string& dir, bool resume, unsigned threads,
                      uint64_t max_segments) {
    Timer timer;
    cmd_trail(from, to, segment_size, dir, resume, threads, max_segments);
    manifest::RunManifest m;
    m.command = "trail";
    m.parameters = {{"from", std::to_string(from)},
                    {"to", std::to_string(to)},
                    {"segment_size", std::to_string(segment_size)},
                    {"checkpoint_dir", dir},
                    {"resume", resume ? "true" : "false"},
                    {"threads", std::to_string(threads)}};
    m.add_output(dir + "/stops.bin");
    m.add_output(dir + "/checkpoint.json");
    m.wall_time_s = timer.seconds();
    m.write(dir + "/manifest.json");
    return 0;
}

// ----------------------------------------------------------------- gaps ---

int cmd_gaps(const std::string& stops_file, int order, const std::string& hist_csv,
             const std::string& range, const std::string& json_out) {
    Timer timer;
    trail::PrimeStops stops;
    stops.values = trail::read_stops_file(stops_file);
    const auto kind = order == 1 ? gaps::Kind::TrailD1 : gaps::Kind::TrailD2;
    const auto series = gaps::gap_series(stops.values, order, kind);
    const auto hist = gaps::histogram(series);

    // order-2 histograms are clipped to [-60, 60] unless overridden
    int64_t lo = order == 2 ? -60 : hist.bin_lo;
    int64_t hi = order == 2 ? 60 : hist.bin_lo + static_cast<int64_t>(hist.counts.size()) - 1;
    if (!range.empty()) {
        if (range == "full") {
            lo = hist.bin_lo;
            hi = hist.bin_lo + static_cast<int64_t>(hist.counts.size()) - 1;
        } else {
            const auto colon = range.find(':');
            if (colon == std::string::npos) throw data_error("--range expects lo:hi or full");
            lo = std::stoll(range.substr(0, colon));
            hi = std::stoll(range.substr(colon + 1));
        }
    }
    lo = std::max(lo, hist.bin_lo);
    hi = std::min(hi, hist.bin_lo + static_cast<int64_t>(hist.counts.size()) - 1);

    std::vector<std::vector<std::string>> rows;
    for (int64_t v = lo; v <= hi; ++v)
        rows.push_back({std::to_string(v), std::to_string(hist.count_of(v))});
    manifest::write_csv(hist_csv, {"value", "count"}, rows);

    ordered_json j;
    j["kind"] = order == 1 ? "trail_d1" : "trail_d2";
    // N_max comes from the checkpoint the trail run left next to the stops
    const fs::path cp_path = fs::path(stops_file).parent_path() / "checkpoint.json";
    if (fs::exists(cp_path)) {
        const auto cp = trail::read_checkpoint_json(cp_path.string(), nullptr);
        j["N_max"] = cp.next_n - 1;
    } else {
        j["N_max"] = nullptr;
    }
    j["series_length"] = series.values.size();
    j["champions"] = gaps::champions(hist);
    if (order == 1) {
        const auto rep = gaps::excluded_values_check(series);
        ordered_json sm = ordered_json::object();
        for (auto [v, idx] : rep.small_values) sm[std::to_string(v)] = idx;
        j["small_value_first_index"] = sm;
        j["three_or_five_present"] = rep.three_or_five_present;
    }
    j["generated_at"] = timestamp_utc();
    if (!json_out.empty()) {
        std::ofstream f(json_out, std::ios::binary);
        f << j.dump(2) << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }

    manifest::RunManifest m;
    m.command = "gaps";
    m.parameters = {{"stops", stops_file},
                    {"order", std::to_string(order)},
                    {"hist", hist_csv},
                    {"range", range.empty() ? "default" : range}};
    m.add_input(stops_file);
    m.add_output(hist_csv);
    if (!json_out.empty()) m.add_output(json_out);
    m.wall_time_s = timer.seconds();
    m.write(hist_csv + ".manifest.json");
    return 0;
}

// ---------------------------------------------------------------- ratio ---

int cmd_ratio(const std::string& stops_file, uint64_t stride, const std::string& out_csv) {
    Timer timer;
    trail::PrimeStops stops;
    stops.values = trail::read_stops_file(stops_file);
    // regenerate the prime values alongside the stops
    std::vector<uint64_t> primes;
    primes.reserve(stops.values.size());
    {
        const uint64_t count = stops.values.size();
        // p_k < k (ln k + ln ln k) for k >= 6; generous padding for small k
        const double kd = static_cast<double>(std::max<uint64_t>(count, 6));
        const auto bound =
            static_cast<uint64_t>(kd * (std::log(kd) + std::log(std::log(kd))) + 100.0);
        signature::SieveContext ctx(signature::isqrt(bound));
        for (uint64_t lo = 2; lo <= bound && primes.size() < count;
             lo += signature::kDefaultSegment) {
            const uint64_t hi = std::min(bound + 1, lo + signature::kDefaultSegment);
            const auto seg = signature::sieve_norms(lo, hi, ctx);
            for (size_t i = 0; i < seg.size() && primes.size() < count; ++i)
                if (seg.prime_flags[i]) primes.push_back(seg.lo + i);
        }
        if (primes.size() < count) throw numeric_error("ratio: prime bound too small");
    }
    const auto series = trail::ratio_series(stops, primes, stride);
    std::vector<std::vector<std::string>> rows;
    for (const auto& pt : series)
        rows.push_back({std::to_string(pt.k), std::to_string(pt.prime),
                        std::to_string(pt.stop), manifest::format_double(pt.ratio)});
    manifest::write_csv(out_csv, {"k", "prime", "stop", "ratio"}, rows);

    manifest::RunManifest m;
    m.command = "ratio";
    m.parameters = {{"stops", stops_file},
                    {"stride", std::to_string(stride)},
                    {"out", out_csv}};
    m.add_input(stops_file);
    m.add_output(out_csv);
    m.wall_time_s = timer.seconds();
    m.write(out_csv + ".manifest.json");
    return 0;
}

// ------------------------------------------------------------------ pnt ---

int cmd_pnt(const std::string& stops_file, uint64_t k) {
    trail::PrimeStops stops;
    stops.values = trail::read_stops_file(stops_file);
    if (k == 0 || k > stops.values.size()) throw data_error("pnt: k outside stops range");
    const auto r = gaps::pnt_ratios(k, stops);
    ordered_json j;
    j["k"] = k;
    j["N"] = stops.values[k - 1];
    j["pi_infty"] = gaps::pi_infty(stops.values[k - 1], stops);
    j["ratio_log"] = r.ratio_log;
    j["ratio_li"] = r.ratio_li;
    std::cout << j.dump(2) << '\n';
    manifest::RunManifest m;
    m.command = "pnt";
    m.parameters = {{"stops", stops_file}, {"k", std::to_string(k)}};
    m.add_input(stops_file);
    m.write("pnt.manifest.json");
    return 0;
}

// ------------------------------------------------------------ constants ---

int cmd_constants() {
    const auto q = analytic::letter_density(25);
    ordered_json j;
    j["c"] = analytic::constant_c();
    j["bound_bunched"] = analytic::bound_bunched();
    j["bound_spread"] = analytic::bound_spread();
    j["iid_expected_hop"] = analytic::iid_expected_hop();
    j["q"] = std::vector<double>(q.q.begin() + 1, q.q.end());
    j["tail"] = q.tail;
    j["tail_interpretation"] = "q row 26 aggregates all letters >= 26 (the * character)";
    j["zeta"] = ordered_json::object();
    for (int k : {2, 3, 4, 5, 10, 26}) j["zeta"][std::to_string(k)] = analytic::zeta(k);
    std::cout << j.dump(2) << '\n';
    manifest::RunManifest m;
    m.command = "constants";
    m.write("constants.manifest.json");
    return 0;
}

// ------------------------------------------------------------ find-word ---

int cmd_find_word(const std::string& word_csv, const std::string& primes_csv,
                  uint64_t kmax, uint64_t budget_ms) {
    Timer timer;
    const auto w64 = parse_u64_list(word_csv);
    words::Word w(w64.begin(), w64.end());
    const auto primes = parse_u64_list(primes_csv);
    const auto crt = words::crt_locate(w, primes);
    std::optional<words::Clock::time_point> deadline;
    if (budget_ms) deadline = words::Clock::now() + std::chrono::milliseconds(budget_ms);
    const auto res = words::search_word(w, primes, kmax, deadline);
    ordered_json j;
    j["word"] = w;
    j["primes"] = primes;
    j["M"] = crt.m.str();
    j["x"] = crt.x.str();
    j["found"] = res.found.has_value();
    if (res.found) {
        j["location"] = res.found->location.str();
        j["k"] = res.found->k;
    }
    j["budget_exhausted"] = res.budget_exhausted;
    j["k_tried"] = res.k_tried;
    std::cout << j.dump(2) << '\n';
    manifest::RunManifest m;
    m.command = "find-word";
    m.parameters = {{"word", word_csv},
                    {"primes", primes_csv},
                    {"kmax", std::to_string(kmax)}};
    m.wall_time_s = timer.seconds();
    m.write("find_word.manifest.json");
    return 0;
}

// ------------------------------------------------------- markov-example ---

int cmd_markov_example(const std::string& which) {
    shiftmodel::Example ex;
    if (which == "empty")
        ex = shiftmodel::Example::empty;
    else if (which == "single")
        ex = shiftmodel::Example::single;
    else
        ex = shiftmodel::Example::double_word;
    const auto cal = shiftmodel::calibrate_example(ex);
    ordered_json j;
    j["which"] = which;
    j["params"] = cal.params;
    j["expected_hop"] = shiftmodel::expected_hop(cal.chain, cal.star);
    const auto q = analytic::letter_density(25);
    j["marginal_rms"] = shiftmodel::residual(cal.chain, q);
    ordered_json pi = ordered_json::object();
    for (size_t i = 0; i < cal.chain.size(); ++i)
        pi[cal.chain.state_names[i]] = cal.chain.pi[i];
    j["pi"] = pi;
    std::cout << j.dump(2) << '\n';
    manifest::RunManifest m;
    m.command = "markov-example";
    m.parameters = {{"which", which}};
    m.write("markov_example.manifest.json");
    return 0;
}

// -------------------------------------------------------------- simulate ---

seqgen::InputDistribution load_distribution(const std::string& spec) {
    if (spec == "table3-p1") return seqgen::table3_p1();
    if (spec == "table3-p2") return seqgen::table3_p2();
    if (spec == "q") return seqgen::from_density(analytic::letter_density(25));
    return seqgen::from_csv(spec);
}

int cmd_simulate(int model, const std::string& dist, uint64_t length, uint64_t runs,
                 uint64_t seed, unsigned threads, const std::string& out_json) {
    Timer timer;
    if (runs == 0) throw data_error("--runs must be >= 1");
    const auto p = load_distribution(dist);
    const auto q = analytic::letter_density(25);
    const auto mdl = model == 1 ? seqgen::Model::one : seqgen::Model::two;

    std::vector<seqgen::RunStats> stats(runs);
    std::atomic<uint64_t> cursor{0};
    auto worker = [&] {
        for (;;) {
            const uint64_t r = cursor.fetch_add(1);
            if (r >= runs) return;
            uint64_t rs = seed + r;
            stats[r] = seqgen::run_simulation(mdl, p, length, splitmix64(rs), q);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads && t < runs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    double mean = 0, mn = stats[0].c0, mx = stats[0].c0;
    for (const auto& s : stats) {
        mean += s.c0;
        mn = std::min(mn, s.c0);
        mx = std::max(mx, s.c0);
    }
    mean /= static_cast<double>(runs);
    double var = 0;
    for (const auto& s : stats) var += (s.c0 - mean) * (s.c0 - mean);
    const double sd = runs > 1 ? std::sqrt(var / static_cast<double>(runs - 1)) : 0.0;

    ordered_json j;
    j["model"] = model;
    j["distribution"] = dist;
    j["length"] = length;
    j["runs"] = runs;
    j["seed"] = seed;
    j["prng"] = "xoshiro256**";
    j["c0"] = {{"mean", mean}, {"sd", sd}, {"min", mn}, {"max", mx}};
    ordered_json per_run = ordered_json::array();
    for (uint64_t r = 0; r < runs; ++r)
        per_run.push_back({{"run", r},
                           {"seed", stats[r].seed},
                           {"c0", stats[r].c0},
                           {"rms", stats[r].rms_vs_q}});
    j["per_run"] = per_run;
    if (!out_json.empty()) {
        std::ofstream f(out_json, std::ios::binary);
        f << j.dump(2) << '\n';
    } else {
        std::cout << j.dump(2) << '\n';
    }
    manifest::RunManifest m;
    m.command = "simulate";
    m.parameters = {{"model", std::to_string(model)},
                    {"dist", dist},
                    {"length", std::to_string(length)},
                    {"runs", std::to_string(runs)},
                    {"seed", std::to_string(seed)}};
    if (!out_json.empty()) m.add_output(out_json);
    m.wall_time_s = timer.seconds();
    m.write(out_json.empty() ? "simulate.manifest.json" : out_json + ".manifest.json");
    return 0;
}

// -------------------------------------------------------------- optimize ---

int cmd_optimize(const std::string& model, uint64_t pop, uint64_t gens,
                 uint64_t eval_length, uint64_t seed, unsigned threads,
                 const std::string& out_csv) {
    Timer timer;
    seqgen::Model mdl;
    if (model == "1")
        mdl = seqgen::Model::one;
    else if (model == "2")
        mdl = seqgen::Model::two;
    else if (model == "raw")
        mdl = seqgen::Model::raw;
    else
        throw data_error("--model must be 1|2|raw");
    const auto q = analytic::letter_density(25);
    optimizer::DEConfig cfg;
    cfg.population = pop;
    cfg.generations = gens;
    cfg.eval_length = eval_length;
    cfg.threads = threads;
    const auto fit = optimizer::inverse_fit(mdl, q, cfg, seed);

    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < seqgen::kAlphabet; ++i)
        rows.push_back(
            {std::to_string(i + 1), manifest::format_double(fit.distribution.p[i])});
    manifest::write_csv(out_csv, {"letter", "p"}, rows);

    ordered_json j;
    j["model"] = model;
    j["achieved_rms"] = fit.achieved_rms;
    j["generations"] = fit.history.size() - 1;
    j["history_first"] = fit.history.front();
    j["history_last"] = fit.history.back();
    std::cout << j.dump(2) << '\n';

    manifest::RunManifest m;
    m.command = "optimize";
    m.parameters = {{"model", model},
                    {"pop", std::to_string(pop)},
                    {"gens", std::to_string(gens)},
                    {"eval_length", std::to_string(eval_length)},
                    {"seed", std::to_string(seed)}};
    m.add_output(out_csv);
    m.wall_time_s = timer.seconds();
    m.write(out_csv + ".manifest.json");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime grid number-trail engine"};
    app.require_subcommand(1);

    // trail
    auto* trail_cmd = app.add_subcommand("trail", "stream L_inf with checkpoints");
    uint64_t from = 2, to = 0, segment_size = signature::kDefaultSegment, max_segments = 0;
    std::string dir;
    bool resume = false;
    unsigned threads = default_threads();
    trail_cmd->add_option("--from", from, "first integer (default 2)");
    trail_cmd->add_option("--to", to, "last integer (inclusive)")->required();
    trail_cmd->add_option("--segment-size", segment_size, "integers per segment");
    trail_cmd->add_option("--checkpoint-dir", dir, "checkpoint directory")->required();
    trail_cmd->add_flag("--resume", resume, "resume from the directory's checkpoint");
    trail_cmd->add_option("--threads", threads, "worker threads");
    trail_cmd->add_option("--max-segments", max_segments,
                          "stop after this many segments (batch operation)");

    // gaps
    auto* gaps_cmd = app.add_subcommand("gaps", "gap series histograms from a stops file");
    std::string stops_file, hist_csv, range, json_out;
    int order = 1;
    gaps_cmd->add_option("--stops", stops_file)->required();
    gaps_cmd->add_option("--order", order)->check(CLI::IsMember({1, 2}));
    gaps_cmd->add_option("--hist", hist_csv, "histogram CSV output")->required();
    gaps_cmd->add_option("--range", range, "lo:hi clip or 'full'");
    gaps_cmd->add_option("--json", json_out, "report JSON output");

    // ratio
    auto* ratio_cmd = app.add_subcommand("ratio", "L_inf(p_k)/p_k series");
    std::string ratio_stops, ratio_out = "ratio.csv";
    uint64_t stride = 100000;
    ratio_cmd->add_option("--stops", ratio_stops)->required();
    ratio_cmd->add_option("--stride", stride);
    ratio_cmd->add_option("--out", ratio_out);

    // pnt
    auto* pnt_cmd = app.add_subcommand("pnt", "modified prime counting ratios");
    std::string pnt_stops;
    uint64_t pnt_k = 0;
    pnt_cmd->add_option("--stops", pnt_stops)->required();
    pnt_cmd->add_option("--k", pnt_k)->required();

    // constants
    auto* const_cmd = app.add_subcommand("constants", "analytic constants as JSON");

    // find-word
    auto* fw_cmd = app.add_subcommand("find-word", "locate a word in the norm sequence");
    std::string word_csv, primes_csv;
    uint64_t kmax = 1000000, budget_ms = 0;
    fw_cmd->add_option("--word", word_csv)->required();
    fw_cmd->add_option("--primes", primes_csv)->required();
    fw_cmd->add_option("--kmax", kmax);
    fw_cmd->add_option("--budget-ms", budget_ms, "wall clock budget (0 = none)");

    // markov-example
    auto* mk_cmd = app.add_subcommand("markov-example", "calibrated worked examples");
    std::string which;
    mk_cmd->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"empty", "single", "double"}));

    // simulate
    auto* sim_cmd = app.add_subcommand("simulate", "random model statistics");
    int sim_model = 2;
    std::string dist = "table3-p2", sim_out;
    uint64_t length = 10000000, runs = 10, seed = 0;
    unsigned sim_threads = default_threads();
    sim_cmd->add_option("--model", sim_model)->check(CLI::IsMember({1, 2}));
    sim_cmd->add_option("--dist", dist, "table3-p1|table3-p2|q|CSV file");
    sim_cmd->add_option("--length", length);
    sim_cmd->add_option("--runs", runs);
    sim_cmd->add_option("--seed", seed)->required();
    sim_cmd->add_option("--threads", sim_threads);
    sim_cmd->add_option("--out", sim_out, "JSON output file (default stdout)");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "differential-evolution inverse fit");
    std::string opt_model = "2", opt_out = "dist.csv";
    uint64_t pop = 40, gens = 200, eval_length = 10000000, opt_seed = 0;
    unsigned opt_threads = default_threads();
    opt_cmd->add_option("--model", opt_model);
    opt_cmd->add_option("--pop", pop);
    opt_cmd->add_option("--gens", gens);
    opt_cmd->add_option("--eval-length", eval_length);
    opt_cmd->add_option("--seed", opt_seed)->required();
    opt_cmd->add_option("--threads", opt_threads);
    opt_cmd->add_option("--out", opt_out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (trail_cmd->parsed()) {
            if (to < from) throw data_error("--to must be >= --from");
            return run_trail_command(from, to, segment_size, dir, resume, threads,
                                     max_segments);
        }
        if (gaps_cmd->parsed()) return cmd_gaps(stops_file, order, hist_csv, range, json_out);
        if (ratio_cmd->parsed()) return cmd_ratio(ratio_stops, stride, ratio_out);
        if (pnt_cmd->parsed()) return cmd_pnt(pnt_stops, pnt_k);
        if (const_cmd->parsed()) return cmd_constants();
        if (fw_cmd->parsed()) return cmd_find_word(word_csv, primes_csv, kmax, budget_ms);
        if (mk_cmd->parsed()) return cmd_markov_example(which);
        if (sim_cmd->parsed())
            return cmd_simulate(sim_model, dist, length, runs, seed, sim_threads, sim_out);
        if (opt_cmd->parsed())
            return cmd_optimize(opt_model, pop, gens, eval_length, opt_seed, opt_threads,
                                opt_out);
    } catch (const data_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitData;
    } catch (const numeric_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    }
    return 0;
}
