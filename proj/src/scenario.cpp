#include "isac/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace isac {
namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos)
        return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

/// Flat key = value file with line tracking and unknown-key detection.
class KeyValueFile {
public:
    KeyValueFile(const std::string& text, std::string name) : name_(std::move(name)) {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError(at(line_no) + ": expected 'key = value', got '" + line + "'");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError(at(line_no) + ": empty key");
            if (entries_.count(key))
                throw ConfigError(at(line_no) + ": duplicate key '" + key + "' (first at line " +
                                  std::to_string(entries_[key].line) + ")");
            entries_[key] = {value, line_no};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string at(int line) const { return name_ + ":" + std::to_string(line); }

    [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
        const auto it = entries_.find(key);
        const std::string where = it == entries_.end() ? name_ : at(it->second.line);
        throw ConfigError(where + ": " + key + ": " + msg);
    }

    std::string get_string(const std::string& key, const std::string& def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        consumed_.insert(key);
        return it->second.value;
    }

    double get_double(const std::string& key, double def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        consumed_.insert(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second.value, &pos);
            if (pos != it->second.value.size())
                throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(key, "expected a number, got '" + it->second.value + "'");
        }
    }

    /// Like get_double but also accepts "inf" for the no-noise sentinel.
    double get_snr(const std::string& key, double def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        if (it->second.value == "inf" || it->second.value == "+inf") {
            consumed_.insert(key);
            return kNoNoise;
        }
        return get_double(key, def);
    }

    long get_long(const std::string& key, long def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        consumed_.insert(key);
        long v = 0;
        const auto* first = it->second.value.data();
        const auto* last = first + it->second.value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last)
            fail(key, "expected an integer, got '" + it->second.value + "'");
        return v;
    }

    int get_int(const std::string& key, int def) {
        return static_cast<int>(get_long(key, def));
    }

    std::uint64_t get_u64(const std::string& key, std::uint64_t def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        consumed_.insert(key);
        std::uint64_t v = 0;
        const auto* first = it->second.value.data();
        const auto* last = first + it->second.value.size();
        const auto res = std::from_chars(first, last, v);
        if (res.ec != std::errc() || res.ptr != last)
            fail(key, "expected an unsigned integer, got '" + it->second.value + "'");
        return v;
    }

    /// Comma-separated integers; "a-b" spans an inclusive range.
    std::vector<int> get_int_list(const std::string& key, std::vector<int> def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        consumed_.insert(key);
        std::vector<int> out;
        std::istringstream in(it->second.value);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty())
                fail(key, "empty list element");
            const auto dash = item.find('-', 1); // allow a leading minus to fail later
            try {
                if (dash != std::string::npos) {
                    const int a = std::stoi(item.substr(0, dash));
                    const int b = std::stoi(item.substr(dash + 1));
                    if (b < a)
                        fail(key, "descending range '" + item + "'");
                    for (int v = a; v <= b; ++v)
                        out.push_back(v);
                } else {
                    out.push_back(std::stoi(item));
                }
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception&) {
                fail(key, "expected an integer or range, got '" + item + "'");
            }
        }
        return out;
    }

    Rational get_rational(const std::string& key, Rational def) {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            return def;
        consumed_.insert(key);
        const auto slash = it->second.value.find('/');
        try {
            if (slash == std::string::npos)
                return Rational{std::stol(it->second.value), 1};
            return Rational{std::stol(it->second.value.substr(0, slash)),
                            std::stol(it->second.value.substr(slash + 1))};
        } catch (const std::exception&) {
            fail(key, "expected 'num/den' or an integer, got '" + it->second.value + "'");
        }
    }

    /// Errors out on the first key no getter ever touched.
    void finish() const {
        for (const auto& [key, entry] : entries_)
            if (!consumed_.count(key))
                throw ConfigError(at(entry.line) + ": unknown key '" + key + "'");
    }

    /// Keys matching prefix.N.suffix must use contiguous indices from 0;
    /// returns the count.
    int indexed_count(const std::string& prefix, const std::string& probe_suffix) const {
        int count = 0;
        while (has(prefix + "." + std::to_string(count) + "." + probe_suffix))
            ++count;
        return count;
    }

private:
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::string name_;
    std::map<std::string, Entry> entries_;
    std::set<std::string> consumed_;
};

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            return true;
    return false;
}

ScenarioConfig parse_scenario(KeyValueFile& file) {
    ScenarioConfig cfg;

    cfg.numerology.scs_hz = 1e3 * file.get_double("numerology.scs_khz", 120.0);
    cfg.numerology.fc_hz = 1e9 * file.get_double("numerology.fc_ghz", 28.0);
    cfg.numerology.n_prb = file.get_int("numerology.n_prb", 64);
    cfg.numerology.n_slots = file.get_int("numerology.n_slots", 8);
    cfg.numerology.cp_fraction = file.get_double("numerology.cp_fraction", 0.0703);
    try {
        cfg.numerology.validate();
    } catch (const ConfigError& e) {
        file.fail("numerology.scs_khz", e.what());
    }

    cfg.prs.comb_size = file.get_int("prs.comb_size", 4);
    cfg.prs.n_symbols = file.get_int("prs.n_symbols", 12);
    cfg.prs.start_symbol = file.get_int("prs.start_symbol", 0);
    cfg.prs.re_offset = file.get_int("prs.re_offset", 0);
    cfg.prs.slots = file.get_int_list("prs.slots", {});
    cfg.prs.c_init = static_cast<std::uint32_t>(file.get_u64("prs.c_init", kDefaultPrsSeed));
    try {
        cfg.prs.validate(cfg.numerology);
    } catch (const ConfigError& e) {
        file.fail("prs.comb_size", e.what());
    }

    cfg.pdsch.slots = file.get_int_list("pdsch.slots", {});
    cfg.pdsch.code_rate = file.get_rational("pdsch.code_rate", Rational{490, 1024});
    cfg.pdsch.payload_seed = file.get_u64("pdsch.payload_seed", 1);
    try {
        cfg.pdsch.validate(cfg.numerology);
    } catch (const ConfigError& e) {
        file.fail("pdsch.slots", e.what());
    }

    cfg.dmrs.symbol_positions = file.get_int_list("dmrs.symbol_positions", {3, 8, 12});
    cfg.dmrs.slots = cfg.pdsch.slots; // DMRS lives inside the PDSCH allocation
    cfg.dmrs.c_init = static_cast<std::uint32_t>(file.get_u64("dmrs.c_init", kDefaultDmrsSeed));
    try {
        cfg.dmrs.validate(cfg.numerology);
    } catch (const ConfigError& e) {
        file.fail("dmrs.symbol_positions", e.what());
    }

    if (intersects(cfg.prs.slots, cfg.pdsch.slots))
        file.fail("pdsch.slots", "PRS and PDSCH slots must be disjoint");

    const int n_targets = file.indexed_count("target", "range_m");
    for (int i = 0; i < n_targets; ++i) {
        const std::string base = "target." + std::to_string(i) + ".";
        Target t;
        t.bistatic_range_m = file.get_double(base + "range_m", 0.0);
        t.velocity_mps = file.get_double(base + "velocity_mps", 0.0);
        t.amplitude = {file.get_double(base + "amplitude_re", 1.0),
                       file.get_double(base + "amplitude_im", 0.0)};
        if (t.bistatic_range_m < 0.0 || t.bistatic_range_m >= cfg.numerology.max_range_m())
            file.fail(base + "range_m",
                      "target range must lie in [0, " +
                          std::to_string(cfg.numerology.max_range_m()) +
                          " m), the unambiguous interval of this numerology");
        cfg.channel.targets.push_back(t);
    }
    cfg.channel.snr_db = file.get_snr("channel.snr_db", kNoNoise);
    cfg.channel.seed = file.get_u64("channel.seed", 1);

    cfg.range_oversample = file.get_int("estimator.range_oversample", 4);
    cfg.doppler_oversample = file.get_int("estimator.doppler_oversample", 4);
    if (cfg.range_oversample < 1)
        file.fail("estimator.range_oversample", "must be >= 1");
    if (cfg.doppler_oversample < 1)
        file.fail("estimator.doppler_oversample", "must be >= 1");

    cfg.detector.k_expected = file.get_int("detector.k_expected", 2);
    cfg.detector.min_sep_bins = file.get_int("detector.min_sep_bins", 0);
    cfg.detector.rel_threshold = file.get_double("detector.rel_threshold", 0.5);
    cfg.detector.max_velocity_mps = file.get_double("detector.max_velocity_mps", 0.0);
    if (cfg.detector.k_expected < 1)
        file.fail("detector.k_expected", "must be >= 1");
    if (!(cfg.detector.rel_threshold >= 0.0 && cfg.detector.rel_threshold <= 1.0))
        file.fail("detector.rel_threshold", "must lie in [0, 1]");

    const std::string alg = file.get_string("deghost.algorithm", "auto");
    if (alg == "auto")
        cfg.algorithm = Algorithm::Auto;
    else if (alg == "hadamard")
        cfg.algorithm = Algorithm::Hadamard;
    else if (alg == "joint_ifft")
        cfg.algorithm = Algorithm::JointIfft;
    else
        file.fail("deghost.algorithm", "expected auto, hadamard or joint_ifft, got '" + alg + "'");

    if (cfg.algorithm == Algorithm::Hadamard && cfg.prs.comb_size > 4)
        cfg.warnings.push_back("hadamard fusion with comb " + std::to_string(cfg.prs.comb_size) +
                               ": PRS and DMRS ghosts overlap, expect residual ghosts");
    if (cfg.algorithm == Algorithm::JointIfft && cfg.prs.comb_size <= 4)
        cfg.warnings.push_back("joint_ifft fusion with comb " +
                               std::to_string(cfg.prs.comb_size) +
                               ": hadamard fusion is the matched choice");

    cfg.table_scs_khz = file.get_int_list("table.scs_khz", {15, 30, 60, 120, 240});
    cfg.table_comb = file.get_int_list("table.comb", {2, 4, 6, 12});
    for (int scs : cfg.table_scs_khz)
        if (!valid_scs(1e3 * scs))
            file.fail("table.scs_khz", "unsupported subcarrier spacing " + std::to_string(scs) +
                                           " kHz");
    for (int comb : cfg.table_comb)
        if (comb != 2 && comb != 4 && comb != 6 && comb != 12)
            file.fail("table.comb", "comb size must be one of 2, 4, 6, 12, got " +
                                        std::to_string(comb));

    const bool any_alloc =
        file.has("alloc.total_prb") || file.has("alloc.total_slots") ||
        file.indexed_count("alloc.target", "range_weight") > 0;
    if (any_alloc) {
        AllocProblem problem;
        problem.numerology = cfg.numerology;
        problem.total_prb = file.get_int("alloc.total_prb", 272);
        problem.total_slots = file.get_int("alloc.total_slots", 80);
        problem.alpha0 = file.get_double("alloc.alpha0", 2.0);
        const int k = file.indexed_count("alloc.target", "range_weight");
        for (int i = 0; i < k; ++i) {
            const std::string base = "alloc.target." + std::to_string(i) + ".";
            AllocProblem::TargetWeights w;
            w.range_weight = file.get_double(base + "range_weight", 1.0);
            w.velocity_weight = file.get_double(base + "velocity_weight", 1.0);
            problem.targets.push_back(w);
        }
        if (problem.targets.empty())
            problem.targets.push_back({1.0, 1.0});
        problem.r0_bits =
            file.get_double("alloc.r0", throughput_per_prb_slot(cfg.pdsch, cfg.dmrs));
        problem.throughput_norm = file.get_double("alloc.throughput_norm", 0.0);
        problem.range_norm = file.get_double("alloc.range_norm", 0.0);
        problem.velocity_norm = file.get_double("alloc.velocity_norm", 0.0);
        try {
            problem.validate();
        } catch (const ConfigError& e) {
            file.fail("alloc.total_prb", e.what());
        }
        cfg.alloc = std::move(problem);
    }

    file.finish();
    return cfg;
}

} // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& name) {
    KeyValueFile file(text, name);
    return parse_scenario(file);
}

ScenarioConfig parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

FuseMethod method_for_comb(int comb_size) {
    return comb_size <= 4 ? FuseMethod::Hadamard : FuseMethod::JointIfft;
}

SimulationResult run_simulation(const ScenarioConfig& config) {
    if (config.prs.slots.empty())
        throw ConfigError("simulation needs at least one PRS slot");

    // Transmit grid and the receiver-side reference copies.
    ResourceGrid tx = new_grid(config.numerology);
    generate_prs(tx, config.prs);
    SimulationResult result;
    if (config.has_comm()) {
        generate_dmrs(tx, config.dmrs);
        result.payload_bits = generate_pdsch(tx, config.pdsch);
    }
    ResourceGrid prs_reference = new_grid(config.numerology);
    generate_prs(prs_reference, config.prs);

    ResourceGrid rx = apply_channel(tx, config.channel);
    rx = add_awgn(rx, config.channel.snr_db, config.channel.seed);

    const Eigen::MatrixXcd g_prs = divide(rx, prs_reference);
    result.prs_profile = range_profile(g_prs, config.numerology, config.range_oversample);
    result.sensing_metrics = metrics(config.numerology, config.prs.comb_size);

    const int min_sep = config.resolved_min_sep_bins();
    if (config.has_comm()) {
        ResourceGrid dmrs_reference = new_grid(config.numerology);
        generate_dmrs(dmrs_reference, config.dmrs);
        const Eigen::MatrixXcd g_dmrs = divide(rx, dmrs_reference);
        result.dmrs_profile =
            range_profile(g_dmrs, config.numerology, config.range_oversample);

        result.method = config.algorithm == Algorithm::Auto
                            ? method_for_comb(config.prs.comb_size)
                            : (config.algorithm == Algorithm::Hadamard ? FuseMethod::Hadamard
                                                                       : FuseMethod::JointIfft);
        if (result.method == FuseMethod::Hadamard) {
            result.fused = combine_hadamard(result.prs_profile, *result.dmrs_profile);
        } else {
            result.fused = joint_profile(normalize_max(column_collapse(g_prs)),
                                         normalize_max(column_collapse(g_dmrs)),
                                         config.numerology, config.range_oversample);
        }
        result.detections = classify(*result.fused, config.detector.k_expected, min_sep,
                                     config.detector.rel_threshold);
    } else {
        // PRS-only sensing: classify straight off the (ambiguous) range profile.
        FusedProfile plain;
        plain.magnitudes = result.prs_profile.magnitudes;
        plain.bin_scale_m = result.prs_profile.bin_scale_m;
        result.detections = classify(plain, config.detector.k_expected, min_sep,
                                     config.detector.rel_threshold);
    }

    // Doppler per detection: compensate that target's delay, then search the
    // alias-free window of the PRS sampling pattern.
    const int stride = time_sampling_stride(prs_reference);
    double best_peak = -1.0;
    for (auto& detection : result.detections) {
        const double delay_s = detection.bistatic_range_m / kSpeedOfLight;
        const Eigen::MatrixXcd compensated =
            compensate_delay(g_prs, delay_s, config.numerology);
        DopplerProfile profile =
            doppler_profile(compensated, config.numerology, config.doppler_oversample);
        Eigen::Index window = alias_free_window_bins(profile, stride);
        if (config.detector.max_velocity_mps > 0.0) {
            const double mps_per_bin =
                kSpeedOfLight * profile.bin_scale_hz / (2.0 * config.numerology.fc_hz);
            window = std::min<Eigen::Index>(
                window, static_cast<Eigen::Index>(config.detector.max_velocity_mps / mps_per_bin));
        }
        const Eigen::Index bin = peak_bin_in_window(profile.magnitudes, window);
        const double doppler_hz =
            static_cast<double>(signed_bin(bin, profile.magnitudes.size())) *
            profile.bin_scale_hz;
        detection.velocity_mps = kSpeedOfLight * doppler_hz / (2.0 * config.numerology.fc_hz);
        if (detection.peak_magnitude > best_peak) {
            best_peak = detection.peak_magnitude;
            result.doppler = std::move(profile);
        }
    }
    if (!result.doppler)
        result.doppler = doppler_profile(g_prs, config.numerology, config.doppler_oversample);
    return result;
}

} // namespace isac
