#pragma once

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "evotfs/evotfs.hpp"

namespace evotfs {
namespace cli {

// Exit codes: 0 success, 1 runtime error, 2 usage/config error.

inline std::size_t parse_positive(const std::string& text, const std::string& what) {
    std::size_t value = 0;
    try {
        std::size_t pos = 0;
        value = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
    } catch (const std::exception&) {
        throw ConfigError(what + ": not a count: '" + text + "'");
    }
    return value;
}

inline std::size_t default_workers() {
    if (const char* env = std::getenv("EVO_TFS_THREADS")) {
        std::size_t w = parse_positive(env, "EVO_TFS_THREADS");
        if (w == 0) throw ConfigError("EVO_TFS_THREADS must be >= 1");
        return w;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

/// Flat key=value file; '#' starts a comment, blank lines are skipped.
inline std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    auto trim = [](std::string s) {
        std::size_t a = s.find_first_not_of(" \t\r");
        std::size_t b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": empty key");
        out[key] = value;
    }
    return out;
}

// Knobs shared by the oversample and evaluate subcommands. Defaults mirror
// the standard parameter table: 50 generations, tournament 3, 80%/20%
// crossover/mutation, 2 elites, max depth 10, alpha 0.5, sigma 10, and the
// population size chosen from the imbalance ratio unless overridden.
struct CommonOpts {
    std::uint64_t seed = 0;
    std::size_t workers = 0;  // 0 = EVO_TFS_THREADS or hardware concurrency
    double alpha = 0.5;
    double sigma_dtw = 10.0;
    double sigma_dft = 10.0;
    std::size_t window_len = 0;   // 0 = ceil(T/3)
    std::size_t population = 0;   // 0 = by IR rule
    std::size_t generations = 50;
    double crossover_rate = 0.80;
    double mutation_rate = 0.20;
    std::size_t tournament = 3;
    std::size_t elites = 2;
    int max_depth = 10;
    bool no_dtw = false;
    bool no_dft = false;
    bool verbose = false;
};

struct BoundOption {
    CLI::Option* option;
    std::string key;
    std::function<void(const std::string&)> assign;
};

class OptionBinder {
public:
    explicit OptionBinder(CLI::App* app) : app_(app) {}

    template <typename T>
    CLI::Option* add(const std::string& flag, const std::string& key, T& target, const std::string& help) {
        CLI::Option* opt = app_->add_option(flag, target, help);
        bound_.push_back({opt, key, [&target, key](const std::string& text) {
                              assign_value(target, text, key);
                          }});
        return opt;
    }

    CLI::Option* add_flag(const std::string& flag, const std::string& key, bool& target, const std::string& help) {
        CLI::Option* opt = app_->add_flag(flag, target, help);
        bound_.push_back({opt, key, [&target, key](const std::string& text) {
                              if (text == "true" || text == "1") target = true;
                              else if (text == "false" || text == "0") target = false;
                              else throw ConfigError(key + ": expected true/false, got '" + text + "'");
                          }});
        return opt;
    }

    /// Flags given on the command line win over config-file values.
    void apply_config(const std::map<std::string, std::string>& values) const {
        std::map<std::string, bool> known;
        for (const auto& b : bound_) known[b.key] = true;
        for (const auto& [key, value] : values)
            if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
        for (const auto& b : bound_) {
            auto it = values.find(b.key);
            if (it == values.end()) continue;
            if (b.option->count() > 0) continue;
            b.assign(it->second);
        }
    }

private:
    template <typename T>
    static void assign_value(T& target, const std::string& text, const std::string& key) {
        std::stringstream ss(text);
        T parsed{};
        ss >> parsed;
        if (ss.fail() || !ss.eof()) throw ConfigError(key + ": cannot parse '" + text + "'");
        target = parsed;
    }

    CLI::App* app_;
    std::vector<BoundOption> bound_;
};

inline void bind_common(OptionBinder& bind, CommonOpts& o) {
    bind.add("--seed", "seed", o.seed, "Master random seed");
    bind.add("--workers", "workers", o.workers, "Worker thread count (default: EVO_TFS_THREADS or hardware)");
    bind.add("--alpha", "alpha", o.alpha, "Weight of the time-domain fitness term, in [0, 1]");
    bind.add("--sigma-dtw", "sigma_dtw", o.sigma_dtw, "Gaussian sigma for the DTW term");
    bind.add("--sigma-dft", "sigma_dft", o.sigma_dft, "Gaussian sigma for the Fourier term");
    bind.add("--window-len", "window_len", o.window_len, "Sliding-window length L (default ceil(T/3))");
    bind.add("--population", "population", o.population, "GP population size (default 30, or 50 when IR >= 15)");
    bind.add("--generations", "generations", o.generations, "GP generations");
    bind.add("--crossover-rate", "crossover_rate", o.crossover_rate, "Crossover probability");
    bind.add("--mutation-rate", "mutation_rate", o.mutation_rate, "Mutation probability");
    bind.add("--tournament", "tournament", o.tournament, "Tournament size");
    bind.add("--elites", "elites", o.elites, "Elites copied unchanged each generation");
    bind.add("--max-depth", "max_depth", o.max_depth, "Maximum tree depth");
    bind.add_flag("--no-dtw", "no_dtw", o.no_dtw, "Drop the time-domain fitness term (alpha = 0)");
    bind.add_flag("--no-dft", "no_dft", o.no_dft, "Drop the frequency-domain fitness term (alpha = 1)");
    bind.add_flag("--verbose", "verbose", o.verbose, "Per-generation progress on stderr");
}

inline void finalize_common(CommonOpts& o) {
    if (o.no_dtw && o.no_dft) throw ConfigError("fitness would be constant: --no-dtw and --no-dft conflict");
    if (o.no_dtw) o.alpha = 0.0;
    if (o.no_dft) o.alpha = 1.0;
    if (!(o.alpha >= 0.0 && o.alpha <= 1.0))
        throw ConfigError("alpha must lie in [0, 1], got " + std::to_string(o.alpha));
    if (!(o.sigma_dtw > 0.0) || !(o.sigma_dft > 0.0)) throw ConfigError("sigma values must be > 0");
    if (o.workers == 0) o.workers = default_workers();

    GpConfig gp;
    gp.population_size = o.population ? o.population : 30;
    gp.generations = o.generations;
    gp.crossover_rate = o.crossover_rate;
    gp.mutation_rate = o.mutation_rate;
    gp.tournament_size = o.tournament;
    gp.elites = o.elites;
    gp.max_depth = o.max_depth;
    gp.validate();  // surfaces rate/elite/depth violations as usage errors
}

inline PipelineConfig make_pipeline_config(const CommonOpts& o) {
    PipelineConfig cfg;
    cfg.gp.generations = o.generations;
    cfg.gp.crossover_rate = o.crossover_rate;
    cfg.gp.mutation_rate = o.mutation_rate;
    cfg.gp.tournament_size = o.tournament;
    cfg.gp.elites = o.elites;
    cfg.gp.max_depth = o.max_depth;
    cfg.gp.seed = o.seed;
    cfg.fit.alpha = o.alpha;
    cfg.fit.sigma_dtw = o.sigma_dtw;
    cfg.fit.sigma_dft = o.sigma_dft;
    if (o.window_len) cfg.window_len = o.window_len;
    if (o.population) cfg.population = o.population;
    cfg.workers = o.workers;
    return cfg;
}

inline std::string fmt4(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

inline std::string mean_std(double mean, double std) { return fmt4(mean) + "±" + fmt4(std); }

/// The effective configuration echoed at the top of every report. The worker
/// count is deliberately omitted: outputs must not depend on parallelism.
inline std::string config_header(const CommonOpts& o) {
    std::string s;
    s += "seed=" + std::to_string(o.seed);
    s += " alpha=" + format_value(o.alpha);
    s += " sigma_dtw=" + format_value(o.sigma_dtw);
    s += " sigma_dft=" + format_value(o.sigma_dft);
    s += " window_len=" + (o.window_len ? std::to_string(o.window_len) : std::string("auto"));
    s += " population=" + (o.population ? std::to_string(o.population) : std::string("auto"));
    s += " generations=" + std::to_string(o.generations);
    s += " crossover_rate=" + format_value(o.crossover_rate);
    s += " mutation_rate=" + format_value(o.mutation_rate);
    s += " tournament=" + std::to_string(o.tournament);
    s += " elites=" + std::to_string(o.elites);
    s += " max_depth=" + std::to_string(o.max_depth);
    return s;
}

// --- oversample ---------------------------------------------------------------

struct OversampleArgs {
    std::string train_path;
    std::string out_path;
    std::string report_path;  // default: <out>.provenance.tsv
    CommonOpts common;
};

inline int cmd_oversample(const OversampleArgs& args, std::ostream& err) {
    Dataset raw = load_ucr(args.train_path);
    PipelineConfig cfg = make_pipeline_config(args.common);

    std::mutex log_mutex;
    ProcessObserver observer;
    if (args.common.verbose)
        observer = [&](std::size_t proc, int cls, std::size_t target, std::size_t gen, double best) {
            std::lock_guard<std::mutex> lock(log_mutex);
            err << "proc=" << proc << " class=" << raw.label_name(cls) << " target=" << target
                << " gen=" << gen << " best=" << format_value(best) << "\n";
        };

    OversampleOutcome outcome = run_oversample(raw, cfg, observer);
    save_ucr(outcome.merged_original, args.out_path);

    std::string report_path = args.report_path.empty() ? args.out_path + ".provenance.tsv" : args.report_path;
    std::ofstream report(report_path);
    if (!report) throw FormatError("cannot write '" + report_path + "'");
    report << "# evo-tfs oversample provenance\n";
    report << "# train=" << args.train_path << " out=" << args.out_path << " " << config_header(args.common)
           << "\n";
    for (const auto& w : outcome.batch.warnings) report << "# warning: " << w << "\n";
    report << "class\ttarget_index\trank\tfitness\tseed\n";
    for (const auto& p : outcome.batch.provenance)
        report << raw.label_name(p.class_id) << '\t' << p.target_index << '\t' << p.rank << '\t'
               << format_value(p.fitness) << '\t' << p.seed << '\n';

    for (const auto& w : outcome.batch.warnings) err << "warning: " << w << "\n";
    err << "wrote " << outcome.merged_original.size() << " series (" << outcome.batch.samples.size()
        << " synthetic) to " << args.out_path << "\n";
    return 0;
}

// --- evaluate -------------------------------------------------------------------

struct EvaluateArgs {
    std::string train_path;
    std::string test_path;
    std::vector<std::string> methods;
    std::string classifier = "dtw1nn";
    std::size_t seeds = 1;
    std::size_t density_k = 3;
    std::size_t smote_k = 5;
    CommonOpts common;
};

inline Method parse_method(const std::string& name) {
    if (name == "none") return Method::None;
    if (name == "duplicate") return Method::Duplicate;
    if (name == "smote") return Method::Smote;
    if (name == "evotfs") return Method::EvoTfs;
    throw ConfigError("unknown method '" + name + "' (expected none|duplicate|smote|evotfs)");
}

inline Classifier parse_classifier(const std::string& name) {
    if (name == "dtw1nn") return Classifier::Dtw1nn;
    if (name == "spec1nn") return Classifier::Spec1nn;
    throw ConfigError("unknown classifier '" + name + "' (expected dtw1nn|spec1nn)");
}

inline int cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
    if (args.methods.empty()) throw ConfigError("--method is required");
    if (args.seeds < 1) throw ConfigError("--seeds must be >= 1");
    if (args.density_k < 1) throw ConfigError("--density-k must be >= 1");
    std::vector<Method> methods;
    for (const auto& name : args.methods) methods.push_back(parse_method(name));
    Classifier classifier = parse_classifier(args.classifier);

    Dataset train = load_ucr(args.train_path);
    Dataset test = load_ucr(args.test_path);

    HarnessSettings settings;
    settings.pipeline = make_pipeline_config(args.common);
    settings.smote_k = args.smote_k;
    settings.density_k = args.density_k;
    settings.seeds = args.seeds;
    settings.base_seed = args.common.seed;
    settings.workers = args.common.workers;

    std::vector<MethodSummary> summaries;
    std::map<Method, double> u_means;
    for (Method m : methods) {
        summaries.push_back(evaluate_method(train, test, m, classifier, settings));
        u_means[m] = summaries.back().mean(&SeedOutcome::u);
    }
    auto u_norm = normalize_u(u_means);

    out << "# evo-tfs evaluate\n";
    out << "# train=" << args.train_path << " test=" << args.test_path << " classifier=" << args.classifier
        << " seeds=" << args.seeds << " density_k=" << args.density_k << " smote_k=" << args.smote_k << " "
        << config_header(args.common) << "\n";
    out << "method\tclassifier\tf1\tg_mean\tu(k=" << args.density_k << ")\tu_norm\n";
    for (const auto& s : summaries) {
        out << method_name(s.method) << '\t' << classifier_name(s.classifier) << '\t'
            << mean_std(s.mean(&SeedOutcome::f1), s.stddev(&SeedOutcome::f1)) << '\t'
            << mean_std(s.mean(&SeedOutcome::g_mean), s.stddev(&SeedOutcome::g_mean)) << '\t'
            << mean_std(s.mean(&SeedOutcome::u), s.stddev(&SeedOutcome::u)) << '\t'
            << (methods.size() > 1 ? fmt4(u_norm[s.method]) : std::string("-")) << '\n';
    }
    return 0;
}

// --- inspect ---------------------------------------------------------------------

struct InspectArgs {
    std::string train_path;
    std::size_t window_len = 0;
    bool dump_pool = false;
    std::size_t tree_count = 0;
    std::uint64_t seed = 0;
    int max_depth = 10;
};

inline int cmd_inspect(const InspectArgs& args, std::ostream& out) {
    Dataset d = load_ucr(args.train_path);
    std::size_t window_len = args.window_len ? args.window_len : default_window_len(d.length);
    TerminalPool pool = extract_windows(d, window_len);

    if (args.dump_pool) {
        // one window per line, labeled with its source series' label
        Dataset windows;
        windows.label_names = d.label_names;
        windows.length = pool.window_len;
        windows.series.reserve(pool.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            for (std::size_t w = 0; w < pool.windows_per_series; ++w)
                windows.series.push_back(
                    LabeledSeries{d.series[i].label, pool.subseries[i * pool.windows_per_series + w]});
        save_ucr(windows, out);
        return 0;
    }

    if (args.tree_count > 0) {
        GpConfig cfg;
        cfg.population_size = args.tree_count;
        cfg.elites = 0;  // only initialization runs here
        cfg.max_depth = args.max_depth;
        cfg.seed = args.seed;
        Rng rng(cfg.seed);
        for (const auto& ind : init_population(pool, cfg, rng)) out << tree_to_string(ind.tree) << "\n";
        return 0;
    }

    auto counts = d.class_counts();
    out << "series: " << d.size() << "\n";
    out << "length: " << d.length << "\n";
    out << "classes: " << counts.size() << "\n";
    for (const auto& [cls, n] : counts) out << "  class " << d.label_name(cls) << ": " << n << "\n";
    if (counts.size() >= 2) out << "imbalance_ratio: " << format_value(imbalance_ratio(d)) << "\n";
    out << "window_len: " << window_len << "\n";
    out << "pool_size: " << pool.size() << "\n";
    return 0;
}

// --- entry point --------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"Evo-TFS: evolutionary time-frequency oversampling for imbalanced time series"};
    app.require_subcommand(1);

    OversampleArgs over;
    EvaluateArgs eval;
    InspectArgs inspect;
    std::string over_config, eval_config;

    CLI::App* over_cmd = app.add_subcommand("oversample", "Rebalance a training set with GP-evolved samples");
    over_cmd->add_option("--train", over.train_path, "Training set (UCR text format)")->required();
    over_cmd->add_option("--out", over.out_path, "Rebalanced output file")->required();
    over_cmd->add_option("--report", over.report_path, "Provenance report path (default <out>.provenance.tsv)");
    over_cmd->add_option("--config", over_config, "key=value config file (flags win)");
    OptionBinder over_bind(over_cmd);
    bind_common(over_bind, over.common);

    CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score rebalancing methods with simple classifiers");
    eval_cmd->add_option("--train", eval.train_path, "Training set (UCR text format)")->required();
    eval_cmd->add_option("--test", eval.test_path, "Test set (UCR text format)")->required();
    eval_cmd->add_option("--method", eval.methods, "none|duplicate|smote|evotfs (repeat or comma-list)")
        ->required()
        ->delimiter(',');
    eval_cmd->add_option("--classifier", eval.classifier, "dtw1nn|spec1nn");
    eval_cmd->add_option("--seeds", eval.seeds, "Number of consecutive seeds to average over");
    eval_cmd->add_option("--density-k", eval.density_k, "k for the density-consistency metric U");
    eval_cmd->add_option("--smote-k", eval.smote_k, "Neighbor count for the SMOTE baseline");
    eval_cmd->add_option("--config", eval_config, "key=value config file (flags win)");
    OptionBinder eval_bind(eval_cmd);
    bind_common(eval_bind, eval.common);

    CLI::App* inspect_cmd = app.add_subcommand("inspect", "Dump the window pool or sample GP trees");
    inspect_cmd->add_option("--train", inspect.train_path, "Training set (UCR text format)")->required();
    inspect_cmd->add_option("--window-len", inspect.window_len, "Sliding-window length L");
    CLI::Option* pool_flag = inspect_cmd->add_flag("--pool", inspect.dump_pool, "Dump the window pool as UCR text");
    inspect_cmd->add_option("--tree", inspect.tree_count, "Print N ramped-half-and-half trees")
        ->excludes(pool_flag);
    inspect_cmd->add_option("--seed", inspect.seed, "Seed for --tree");
    inspect_cmd->add_option("--max-depth", inspect.max_depth, "Maximum tree depth for --tree");

    std::vector<const char*> argv;
    argv.push_back("evo-tfs");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::RequiredError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        err << "run 'evo-tfs --help' for usage\n";
        return 2;
    }

    try {
        if (over_cmd->parsed()) {
            if (!over_config.empty()) over_bind.apply_config(parse_config_file(over_config));
            finalize_common(over.common);
            return cmd_oversample(over, err);
        }
        if (eval_cmd->parsed()) {
            if (!eval_config.empty()) eval_bind.apply_config(parse_config_file(eval_config));
            finalize_common(eval.common);
            return cmd_evaluate(eval, out);
        }
        if (inspect_cmd->parsed()) return cmd_inspect(inspect, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cli
}  // namespace evotfs
