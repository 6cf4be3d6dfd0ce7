// Command-line front end: per-level statistics, the verification suite,
// thermodynamic beta scans, and the decay-shape diagnostic.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "farey/farey.hpp"

namespace {

using namespace farey;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitCap = 3;
constexpr int kExitIo = 4;

struct RunConfig {
    unsigned k_min = 2;
    unsigned k_max = 24;
    std::string backend = "float";
    std::string summation = "compensated";
    unsigned threads = 0;  // 0 = hardware concurrency
    unsigned split_depth = kDefaultSplitDepth;
    double beta_min = 1.0;
    double beta_max = 1.0;
    unsigned beta_steps = 1;
    std::string checkpoint_path;
    bool resume = false;
    std::string out_path;  // empty = stdout
    std::string in_path;
    std::string format = "jsonl";
    bool no_timings = false;
};

OutputFormat parse_format(const std::string& f) {
    if (f == "jsonl") return OutputFormat::jsonl;
    if (f == "csv") return OutputFormat::csv;
    throw std::invalid_argument("unknown output format: " + f);
}

Level level_cap_from_env() {
    const char* env = std::getenv("FAREY_MAX_LEVEL");
    if (env == nullptr || *env == '\0') return kMaxStreamLevel;
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0 || v > kMaxStreamLevel)
        throw std::invalid_argument("FAREY_MAX_LEVEL must be an integer in [1, " +
                                    std::to_string(kMaxStreamLevel) + "]");
    return static_cast<Level>(v);
}

Backend make_backend(const RunConfig& cfg) {
    Backend b;
    if (cfg.backend == "exact")
        b.mode = Mode::exact;
    else if (cfg.backend == "float")
        b.mode = Mode::floating;
    else
        throw std::invalid_argument("unknown backend: " + cfg.backend);
    if (cfg.summation == "compensated")
        b.summation = Summation::compensated;
    else if (cfg.summation == "pairwise")
        b.summation = Summation::pairwise;
    else
        throw std::invalid_argument("unknown summation mode: " + cfg.summation);
    b.threads = cfg.threads;
    b.split_depth = cfg.split_depth;
    b.max_level = level_cap_from_env();
    return b;
}

void require_valid_range(const RunConfig& cfg) {
    if (cfg.k_min < 2) throw std::invalid_argument("--k-min must be >= 2");
    if (cfg.k_min > cfg.k_max) throw std::invalid_argument("--k-min must not exceed --k-max");
}

// Writes through a temporary so readers never observe a half-written file.
class OutputFile {
public:
    explicit OutputFile(const std::string& path) : path_(path) {
        if (path_.empty()) return;
        file_.open(path_, std::ios::trunc);
        if (!file_) throw io_error("cannot open output file: " + path_);
    }
    std::ostream& stream() { return path_.empty() ? std::cout : file_; }
    void finish() {
        if (path_.empty()) {
            std::cout.flush();
            return;
        }
        file_.flush();
        if (!file_) throw io_error("write to output file failed: " + path_);
        file_.close();
    }

private:
    std::string path_;
    std::ofstream file_;
};

int cmd_compute(const RunConfig& cfg) {
    require_valid_range(cfg);
    Backend backend = make_backend(cfg);

    std::unique_ptr<CheckpointLog> log;
    if (!cfg.checkpoint_path.empty()) {
        if (backend.is_exact())
            throw std::invalid_argument(
                "checkpointing stores binary64 partials and requires --backend float");
        log = std::make_unique<CheckpointLog>(cfg.checkpoint_path, cfg.resume);
        backend.checkpoint = log.get();
    } else if (cfg.resume) {
        throw std::invalid_argument("--resume requires --checkpoint PATH");
    }

    std::vector<LevelStatistics> rows;
    rows.reserve(cfg.k_max - cfg.k_min + 1);
    for (Level k = cfg.k_min; k <= cfg.k_max; ++k) rows.push_back(compute_level(k, backend));

    OutputFile out(cfg.out_path);
    write_levels(out.stream(), rows, parse_format(cfg.format));
    out.finish();
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    require_valid_range(cfg);
    const Backend backend = make_backend(cfg);
    const auto reports = run_suite(cfg.k_min, cfg.k_max, backend);

    OutputFile out(cfg.out_path);
    write_reports(out.stream(), reports, parse_format(cfg.format), !cfg.no_timings);
    out.finish();
    return suite_passed(reports) ? kExitOk : kExitCheckFailure;
}

int cmd_scan(const RunConfig& cfg) {
    require_valid_range(cfg);
    if (cfg.beta_steps < 1) throw std::invalid_argument("--beta-steps must be >= 1");
    if (cfg.beta_min > cfg.beta_max)
        throw std::invalid_argument("--beta-min must not exceed --beta-max");
    const Backend backend = make_backend(cfg);

    std::vector<ThermoPoint> points;
    for (Level k = cfg.k_min; k <= cfg.k_max; ++k) {
        for (unsigned i = 0; i < cfg.beta_steps; ++i) {
            const double beta =
                cfg.beta_steps == 1
                    ? cfg.beta_min
                    : cfg.beta_min + (cfg.beta_max - cfg.beta_min) *
                                         (static_cast<double>(i) / (cfg.beta_steps - 1));
            points.push_back(thermo_point(k, beta, backend));
        }
    }

    OutputFile out(cfg.out_path);
    write_thermo(out.stream(), points, parse_format(cfg.format));
    out.finish();
    return kExitOk;
}

// --- fit: decay-shape diagnostic -----------------------------------------

std::map<Level, double> read_even_sums(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file: " + path);
    std::map<Level, double> evens;
    std::string line;
    bool csv_header_seen = false;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.front() == '{') {
            const auto record = nlohmann::json::parse(line);
            evens[record.at("k").get<Level>()] = record.at("even_sum").get<double>();
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!csv_header_seen) {
            header = fields;
            csv_header_seen = true;
            continue;
        }
        const auto k_col = std::find(header.begin(), header.end(), "k") - header.begin();
        const auto e_col =
            std::find(header.begin(), header.end(), "even_sum") - header.begin();
        if (static_cast<std::size_t>(e_col) >= header.size())
            throw std::invalid_argument("input has no even_sum column");
        evens[static_cast<Level>(std::stoul(fields.at(k_col)))] =
            std::stod(fields.at(e_col));
    }
    return evens;
}

struct Spread {
    double relative = 0.0;  // (max - min) / mean
};

Spread relative_spread(const std::vector<double>& values) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    return Spread{(*hi - *lo) / mean};
}

int cmd_fit(const RunConfig& cfg) {
    if (cfg.in_path.empty()) throw std::invalid_argument("fit requires --in PATH");
    const auto evens = read_even_sums(cfg.in_path);
    if (evens.empty()) throw std::invalid_argument("input contains no rows");

    const Level k_lo = evens.begin()->first;
    const Level k_hi = evens.rbegin()->first;
    if (evens.size() != k_hi - k_lo + 1)
        throw std::invalid_argument("input levels must form a contiguous range");
    if (k_hi < 16) throw std::invalid_argument("fit requires data up to at least level 16");
    if (k_lo < 2) throw std::invalid_argument("fit requires levels >= 2");

    // c_k = even_sum(k) * log2(k); spread taken over the top half of the range
    std::vector<std::pair<Level, double>> c;
    for (const auto& [k, even] : evens) c.emplace_back(k, even * std::log2(double(k)));
    const std::size_t window = (c.size() + 1) / 2;
    const Level window_lo = c[c.size() - window].first;
    std::vector<double> c_win, even_win;
    for (const auto& [k, ck] : c)
        if (k >= window_lo) {
            c_win.push_back(ck);
            even_win.push_back(evens.at(k));
        }
    const double c_spread = relative_spread(c_win).relative;
    const double even_spread = relative_spread(even_win).relative;

    OutputFile out(cfg.out_path);
    const OutputFormat format = parse_format(cfg.format);
    if (format == OutputFormat::csv) {
        out.stream() << "type,k,even_sum,c_k,window_k_min,window_k_max,c_k_spread,"
                        "even_sum_spread\n";
        for (const auto& [k, ck] : c)
            out.stream() << "point," << k << ',' << decimal17(evens.at(k)) << ','
                         << decimal17(ck) << ",,,,\n";
        out.stream() << "summary,,,," << window_lo << ',' << k_hi << ',' << decimal17(c_spread)
                     << ',' << decimal17(even_spread) << '\n';
    } else {
        for (const auto& [k, ck] : c)
            out.stream() << "{\"type\":\"point\",\"k\":" << k
                         << ",\"even_sum\":" << decimal17(evens.at(k))
                         << ",\"c_k\":" << decimal17(ck) << "}\n";
        out.stream() << "{\"type\":\"summary\",\"window_k_min\":" << window_lo
                     << ",\"window_k_max\":" << k_hi << ",\"c_k_spread\":" << decimal17(c_spread)
                     << ",\"even_sum_spread\":" << decimal17(even_spread) << "}\n";
    }
    out.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Farey tree interval engine: level statistics, lineage and bound checks, "
                 "thermodynamic scans"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool with_range = true) {
        if (with_range) {
            sub->add_option("--k-min", cfg.k_min, "lowest level (>= 2)");
            sub->add_option("--k-max", cfg.k_max, "highest level");
        }
        sub->add_option("--backend", cfg.backend, "exact|float")
            ->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--summation", cfg.summation, "compensated|pairwise (float backend)")
            ->check(CLI::IsMember({"compensated", "pairwise"}));
        sub->add_option("--threads", cfg.threads, "worker count, 0 = hardware");
        sub->add_option("--split-depth", cfg.split_depth, "subtree decomposition depth");
        sub->add_option("--out", cfg.out_path, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "jsonl|csv")
            ->check(CLI::IsMember({"jsonl", "csv"}));
    };

    CLI::App* compute = app.add_subcommand("compute", "per-level interval statistics");
    add_common(compute);
    compute->add_option("--checkpoint", cfg.checkpoint_path, "subtree-task sidecar path");
    compute->add_flag("--resume", cfg.resume, "skip tasks recorded in the checkpoint");

    CLI::App* verify = app.add_subcommand("verify", "run the inequality/identity suite");
    add_common(verify);
    verify->add_flag("--no-timings", cfg.no_timings,
                     "write elapsed_ms as 0 for byte-identical reports");

    CLI::App* scan = app.add_subcommand("scan", "thermodynamic quantities over a beta grid");
    add_common(scan);
    scan->add_option("--beta-min", cfg.beta_min, "grid start");
    scan->add_option("--beta-max", cfg.beta_max, "grid end");
    scan->add_option("--beta-steps", cfg.beta_steps, "grid point count (>= 1)");

    CLI::App* fit = app.add_subcommand("fit", "decay-shape diagnostic c_k = even_sum * log2(k)");
    fit->add_option("--in", cfg.in_path, "compute results (jsonl or csv)")->required();
    fit->add_option("--out", cfg.out_path, "output path (default stdout)");
    fit->add_option("--format", cfg.format, "jsonl|csv")
        ->check(CLI::IsMember({"jsonl", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (app.got_subcommand(compute)) return cmd_compute(cfg);
        if (app.got_subcommand(verify)) return cmd_verify(cfg);
        if (app.got_subcommand(scan)) return cmd_scan(cfg);
        return cmd_fit(cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const cap_error& e) {
        std::cerr << "cap violation: " << e.what() << "\n";
        return kExitCap;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
}
