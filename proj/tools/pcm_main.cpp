// pcm: polar coded modulation link simulator.
// Subcommands: construct (Monte Carlo code construction), sweep (BLER/BER
// over SNR, CSV output), tables (labeling table dump).

#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "pcm/construction.hpp"
#include "pcm/presets.hpp"
#include "pcm/random.hpp"
#include "pcm/schemes.hpp"
#include "pcm/sim.hpp"

namespace {

struct SchemeFlags {
    std::string scheme = "bipcm";
    int pam = 0;
    int n = 0;
    int split = 0;
    std::string kernel;
    std::string labeling;
    int labeling_split = -1;
    std::string interleaver = "block";
    uint64_t il_seed = 0;
    std::string llr = "exact";
};

int order_exponent(int pam) {
    if (pam < 2 || pam > 64 || !std::has_single_bit(static_cast<unsigned>(pam)))
        throw std::invalid_argument("--pam must be a power of 2 in 2..64");
    return std::bit_width(static_cast<unsigned>(pam)) - 1;
}

pcm::SchemeConfig build_config(const SchemeFlags& f) {
    const pcm::SchemeKind kind = pcm::scheme_by_name(f.scheme);
    const int m = order_exponent(f.pam);
    if (f.n < 1) throw std::invalid_argument("--n is required and must be >= 1");

    int n_uses = f.n;
    if (kind == pcm::SchemeKind::plain_bicm) {
        if (f.n % m != 0) throw std::invalid_argument("--n must be divisible by m for bipcm");
        n_uses = f.n / m;
    }

    pcm::Kernel kernel;
    if (kind == pcm::SchemeKind::compound_bicm) {
        std::string kname = f.kernel;
        if (kname.empty()) kname = "k" + std::to_string(m);
        kernel = pcm::Kernel::by_name(kname);
    }

    std::optional<pcm::LabelingSpec> labeling;
    if (!f.labeling.empty()) {
        const int ls = f.labeling_split >= 0 ? f.labeling_split : f.split;
        labeling = pcm::LabelingSpec::by_name(f.labeling, ls);
    }

    pcm::InterleaverSpec il;
    if (f.interleaver == "block") il = pcm::InterleaverSpec::block();
    else if (f.interleaver == "rand") il = pcm::InterleaverSpec::seeded(f.il_seed);
    else throw std::invalid_argument("--il must be block or rand");

    pcm::SchemeConfig cfg = pcm::make_scheme(kind, m, n_uses, f.split, kernel, labeling, il);
    cfg.llr = f.llr == "maxlog" ? pcm::LlrMethod::maxlog : pcm::LlrMethod::exact;
    return cfg;
}

void add_scheme_flags(CLI::App* cmd, SchemeFlags& f, bool need_scheme) {
    auto* s = cmd->add_option("--scheme", f.scheme, "bipcm|compound|mlpcm|hybrid");
    auto* p = cmd->add_option("--pam", f.pam, "PAM order (2,4,8,16,...)");
    auto* n = cmd->add_option("--n", f.n, "code length: per-component N, or m*N for bipcm");
    if (need_scheme) {
        s->required();
        p->required();
        n->required();
    }
    cmd->add_option("--s", f.split, "hybrid splitting parameter");
    cmd->add_option("--kernel", f.kernel, "compound kernel: k2|k3|k4");
    cmd->add_option("--labeling", f.labeling, "gray|gray-msb|sp|hybrid (default: scheme's rule)");
    cmd->add_option("--labeling-s", f.labeling_split, "split for --labeling hybrid");
    cmd->add_option("--il", f.interleaver, "interleaver: block|rand");
    cmd->add_option("--il-seed", f.il_seed, "seed for --il rand");
    cmd->add_option("--llr", f.llr, "exact|maxlog");
}

std::vector<double> parse_snr_range(const std::string& text) {
    double a = 0, step = 0, b = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &a, &step, &b) == 3) {
        if (step <= 0) throw std::invalid_argument("--snr step must be positive");
        std::vector<double> v;
        for (double s = a; s <= b + 1e-9; s += step) v.push_back(s);
        return v;
    }
    char extra;
    if (std::sscanf(text.c_str(), "%lf %c", &a, &extra) == 1) return {a};
    throw std::invalid_argument("--snr expects a:step:b or a single value");
}

void print_rate_report(std::ostream& os, const pcm::SchemeConfig& cfg) {
    os << "fingerprint: " << pcm::fingerprint(cfg) << '\n';
    for (size_t j = 0; j < cfg.components.size(); ++j) {
        const auto& c = cfg.components[j];
        char buf[128];
        std::snprintf(buf, sizeof buf, "component %zu: n=%d k=%zu rate=%.4f", j, c.length,
                      c.info_set.size(),
                      static_cast<double>(c.info_set.size()) / c.length);
        os << buf << '\n';
    }
    os << "total: k=" << cfg.data_bits() << " of " << cfg.total_bits() << '\n';
}

std::string cache_path(const std::string& dir, const pcm::SchemeConfig& cfg,
                       double design_snr_db, long trials, uint64_t seed) {
    std::string name = pcm::construction_fingerprint(cfg);
    for (char& ch : name)
        if (ch == '|' || ch == '=') ch = '_';
    char buf[96];
    std::snprintf(buf, sizeof buf, "_d%.6g_t%ld_s%llu.profile", design_snr_db, trials,
                  static_cast<unsigned long long>(seed));
    return dir + "/" + name + buf;
}

pcm::ReliabilityProfile cached_construct(const std::string& dir, const pcm::SchemeConfig& cfg,
                                         double design_snr_db, long trials, uint64_t seed,
                                         int workers) {
    const std::string path = cache_path(dir, cfg, design_snr_db, trials, seed);
    if (std::filesystem::exists(path)) {
        pcm::ReliabilityProfile profile = pcm::read_profile(path);
        if (profile.fingerprint == pcm::construction_fingerprint(cfg) &&
            profile.design_snr_db == design_snr_db && profile.trials == trials)
            return profile;
    }
    std::cerr << "constructing " << pcm::construction_fingerprint(cfg) << " at "
              << design_snr_db << " dB, " << trials << " trials\n";
    pcm::ReliabilityProfile profile =
        pcm::construct_monte_carlo(cfg, design_snr_db, trials, seed, workers);
    std::filesystem::create_directories(dir);
    pcm::write_profile(path, profile);
    return profile;
}

void emit_metadata(std::ostream& os, const pcm::StopRule& stop, uint64_t seed) {
    std::time_t now = std::time(nullptr);
    char ts[64];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    os << "# timestamp " << ts << '\n';
    os << "# gaussian " << pcm::kGaussianMethodName << '\n';
    os << "# stop min_block_errors=" << stop.min_block_errors
       << " max_trials=" << stop.max_trials << '\n';
    os << "# seed " << seed << '\n';
}

int run_construct(const SchemeFlags& flags, int k, double design_snr, long trials,
                  uint64_t seed, int workers, const std::string& out) {
    pcm::SchemeConfig cfg = build_config(flags);
    pcm::ReliabilityProfile profile =
        pcm::construct_monte_carlo(cfg, design_snr, trials, seed, workers);
    pcm::write_profile(out, profile);
    cfg = pcm::constructed_scheme(cfg, profile, k);
    std::cout << "profile: " << out << '\n';
    print_rate_report(std::cout, cfg);
    return 0;
}

int run_sweep_figure(const std::string& figure, std::optional<long> trials_cap,
                     std::optional<long> min_block_errors, std::optional<uint64_t> seed_opt,
                     int workers, const std::string& cache_dir, std::ostream& os) {
    pcm::FigurePreset preset = pcm::figure_preset(figure);
    if (trials_cap) preset.stop.max_trials = *trials_cap;
    if (min_block_errors) preset.stop.min_block_errors = *min_block_errors;
    if (seed_opt) preset.seed = *seed_opt;

    emit_metadata(os, preset.stop, preset.seed);
    os << "# figure " << preset.name << " k_total=" << preset.k_total
       << " construction_trials=" << preset.construction_trials << '\n';
    os << pcm::sim_csv_header() << '\n';
    for (size_t e = 0; e < preset.entries.size(); ++e) {
        const auto& entry = preset.entries[e];
        pcm::SchemeConfig base = preset.scheme_for(entry);
        pcm::ReliabilityProfile profile =
            cached_construct(cache_dir, base, entry.design_snr_db, preset.construction_trials,
                             preset.seed, workers);
        pcm::SchemeConfig cfg = pcm::constructed_scheme(base, profile, preset.k_total);
        os << "# scheme " << pcm::scheme_name(entry.kind) << " design_snr_db="
           << entry.design_snr_db << " interleaver=" << cfg.interleaver.name() << '\n';
        const auto results =
            pcm::sweep(cfg, entry.snrs_db, preset.stop, pcm::mix_seed(preset.seed, e), workers);
        for (const auto& r : results) os << pcm::sim_csv_row(cfg, r) << '\n';
        os.flush();
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polar coded modulation link simulator"};
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "Monte Carlo code construction");
    SchemeFlags cons_flags;
    add_scheme_flags(construct, cons_flags, true);
    int cons_k = 0;
    double cons_design = 0.0;
    long cons_trials = 100000;
    uint64_t cons_seed = 1;
    int cons_workers = 0;
    std::string cons_out;
    construct->add_option("--k", cons_k, "total information bits")->required();
    construct->add_option("--design-snr", cons_design, "design SNR in dB")->required();
    construct->add_option("--trials", cons_trials, "construction trials");
    construct->add_option("--seed", cons_seed, "construction seed");
    construct->add_option("--workers", cons_workers, "worker threads (0 = all)");
    construct->add_option("--out", cons_out, "profile output path")->required();

    // sweep
    auto* sweep_cmd = app.add_subcommand("sweep", "BLER/BER sweep, CSV output");
    SchemeFlags sw_flags;
    add_scheme_flags(sweep_cmd, sw_flags, false);
    std::string sw_snr, sw_profile, sw_out, sw_figure, sw_cache = "profiles";
    int sw_k = 0, sw_workers = 0;
    long sw_trials = 100000;
    std::optional<long> sw_cap, sw_minerr;
    std::optional<uint64_t> sw_seed;
    bool sw_inline = false;
    double sw_design = 0.0;
    sweep_cmd->add_option("--snr", sw_snr, "SNR range a:step:b in dB");
    sweep_cmd->add_option("--k", sw_k, "total information bits (with --construct-inline)");
    sweep_cmd->add_option("--profile", sw_profile, "reliability profile path");
    sweep_cmd->add_flag("--construct-inline", sw_inline, "construct instead of loading a profile");
    sweep_cmd->add_option("--design-snr", sw_design, "design SNR for --construct-inline");
    sweep_cmd->add_option("--trials", sw_trials, "construction trials for --construct-inline");
    sweep_cmd->add_option("--trials-cap", [&sw_cap](const std::vector<std::string>& v) {
        sw_cap = std::stol(v[0]);
        return true;
    }, "max trials per SNR point");
    sweep_cmd->add_option("--min-block-errors", [&sw_minerr](const std::vector<std::string>& v) {
        sw_minerr = std::stol(v[0]);
        return true;
    }, "stop after this many block errors");
    sweep_cmd->add_option("--seed", [&sw_seed](const std::vector<std::string>& v) {
        sw_seed = std::stoull(v[0]);
        return true;
    }, "sweep seed");
    sweep_cmd->add_option("--workers", sw_workers, "worker threads (0 = all)");
    sweep_cmd->add_option("--out", sw_out, "CSV output path (default stdout)");
    sweep_cmd->add_option("--figure", sw_figure, "preset: 64qam|256qam");
    sweep_cmd->add_option("--profile-cache", sw_cache, "profile cache directory for --figure");

    // tables
    auto* tables = app.add_subcommand("tables", "labeling table dump");
    int tb_pam = 0, tb_split = 0;
    std::string tb_labeling;
    tables->add_option("--pam", tb_pam, "PAM order")->required();
    tables->add_option("--labeling", tb_labeling, "gray|gray-msb|sp|hybrid")->required();
    tables->add_option("--s", tb_split, "hybrid splitting parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (construct->parsed())
            return run_construct(cons_flags, cons_k, cons_design, cons_trials, cons_seed,
                                 cons_workers, cons_out);

        if (sweep_cmd->parsed()) {
            std::ofstream file;
            if (!sw_out.empty()) {
                file.open(sw_out);
                if (!file) throw std::runtime_error("cannot open output file: " + sw_out);
            }
            std::ostream& os = sw_out.empty() ? std::cout : file;

            if (!sw_figure.empty())
                return run_sweep_figure(sw_figure, sw_cap, sw_minerr, sw_seed, sw_workers,
                                        sw_cache, os);

            if (sw_snr.empty()) throw std::invalid_argument("--snr or --figure is required");
            pcm::SchemeConfig cfg = build_config(sw_flags);
            pcm::ReliabilityProfile profile;
            if (sw_inline) {
                if (sw_k < 1) throw std::invalid_argument("--k is required with --construct-inline");
                profile = pcm::construct_monte_carlo(cfg, sw_design, sw_trials,
                                                     sw_seed.value_or(1), sw_workers);
                cfg = pcm::constructed_scheme(cfg, profile, sw_k);
            } else if (!sw_profile.empty()) {
                profile = pcm::read_profile(sw_profile);
                const int k = sw_k > 0 ? sw_k : cfg.data_bits();
                if (k < 1) throw std::invalid_argument("--k is required with --profile");
                cfg = pcm::constructed_scheme(cfg, profile, k);
            } else {
                throw std::invalid_argument("sweep needs --profile or --construct-inline");
            }

            pcm::StopRule stop;
            if (sw_cap) stop.max_trials = *sw_cap;
            if (sw_minerr) stop.min_block_errors = *sw_minerr;
            const uint64_t seed = sw_seed.value_or(1);
            emit_metadata(os, stop, seed);
            os << "# scheme " << pcm::scheme_name(cfg.kind)
               << " interleaver=" << cfg.interleaver.name() << '\n';
            print_rate_report(std::cerr, cfg);
            os << pcm::sim_csv_header() << '\n';
            const auto snrs = parse_snr_range(sw_snr);
            const auto results = pcm::sweep(cfg, snrs, stop, seed, sw_workers);
            for (const auto& r : results) os << pcm::sim_csv_row(cfg, r) << '\n';
            return 0;
        }

        if (tables->parsed()) {
            const int m = order_exponent(tb_pam);
            const pcm::LabelingSpec spec = pcm::LabelingSpec::by_name(tb_labeling, tb_split);
            std::cout << pcm::labeling_table(pcm::build_pam(m, spec));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
