// tjade: command-line front end for the tensor blind-source-separation toolkit.
// Subcommands: simulate, apply, mdi, asv, synth-semeion.
// Exit codes: 0 success, 2 input error, 3 numeric/degeneracy error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tjade/asv.hpp"
#include "tjade/experiment.hpp"
#include "tjade/io.hpp"
#include "tjade/mdi.hpp"
#include "tjade/semeion.hpp"

using namespace tjade;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ArgumentError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ArgumentError("cannot write " + path);
    return out;
}

struct SimulateArgs {
    std::string config;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int reps_override = 0;
    int threads = 0;
    std::string out_prefix = "tjade_";
};

int cmd_simulate(const SimulateArgs& args) {
    ExperimentConfig cfg = parse_experiment_config(slurp(args.config));
    if (args.seed_set) cfg.seed = args.seed;
    if (args.reps_override > 0) cfg.reps = args.reps_override;
    if (args.threads > 0) cfg.threads = args.threads;
    const ExperimentResult result = run_experiment(cfg);
    auto results_file = open_out(args.out_prefix + "results.csv");
    write_results_csv(results_file, result);
    auto summary_file = open_out(args.out_prefix + "summary.csv");
    write_summary_csv(summary_file, summarize(result));
    std::cout << "wrote " << args.out_prefix << "results.csv (" << result.rows.size()
              << " rows) and " << args.out_prefix << "summary.csv\n";
    return 0;
}

struct ApplyArgs {
    std::string data;
    std::string format = "csv";
    std::vector<int> dims;
    std::vector<int> digits;
    std::string method = "tjade";
    int c = 1;
    int max_sweeps = 100;
    std::string out_prefix = "tjade_";
};

int cmd_apply(const ApplyArgs& args) {
    Sample sample({1}, 1);
    std::vector<int> labels;
    if (args.format == "semeion") {
        std::ifstream in(args.data);
        if (!in) throw ArgumentError("cannot open " + args.data);
        const std::vector<SemeionRecord> recs = parse_semeion(in);
        sample = semeion_sample(recs, args.digits);
        labels = semeion_labels(recs, args.digits);
        std::map<int, int> sizes;
        for (int l : labels) sizes[l]++;
        std::cout << "parsed " << recs.size() << " records; kept " << sample.n() << " (";
        bool first = true;
        for (const auto& [digit, count] : sizes) {
            std::cout << (first ? "" : ", ") << "digit " << digit << ": " << count;
            first = false;
        }
        std::cout << ")\n";
    } else if (args.format == "csv") {
        if (args.dims.empty()) throw ArgumentError("--dims is required for the csv format");
        std::ifstream in(args.data);
        if (!in) throw ArgumentError("cannot open " + args.data);
        sample = read_vectorized_sample(in, args.dims);
    } else {
        throw ArgumentError("unknown format: " + args.format);
    }

    FitOptions opt;
    opt.c = args.c;
    opt.joint_diag.max_sweeps = args.max_sweeps;
    UnmixingModel model;
    if (args.method == "tjade")
        model = tjade_fit(sample, opt);
    else if (args.method == "tfobi")
        model = tfobi_fit(sample, opt);
    else if (args.method == "jade")
        model = jade_fit(sample.order() == 1 ? sample : sample.vectorized(), opt);
    else if (args.method == "fobi")
        model = fobi_fit(sample.order() == 1 ? sample : sample.vectorized(), opt);
    else
        throw ArgumentError("unknown method: " + args.method);

    const Sample scores = transform(model, args.method == "jade" || args.method == "fobi"
                                               ? sample.vectorized()
                                               : sample);
    auto scores_file = open_out(args.out_prefix + "scores.csv");
    write_csv_matrix(scores_file, scores.data().transpose());

    const Vector kurt = cell_kurtosis_of(model, args.method == "jade" || args.method == "fobi"
                                                    ? sample.vectorized()
                                                    : sample);
    auto kurt_file = open_out(args.out_prefix + "kurtosis.csv");
    kurt_file << "component,kurtosis\n";
    for (Eigen::Index i = 0; i < kurt.size(); ++i) kurt_file << i << ',' << kurt(i) << '\n';

    auto model_file = open_out(args.out_prefix + "model.json");
    model_file << model_to_json(model) << '\n';
    std::cout << "wrote " << args.out_prefix << "scores.csv, " << args.out_prefix
              << "kurtosis.csv, " << args.out_prefix << "model.json ("
              << (model.converged() ? "converged" : "NOT converged") << ")\n";
    return 0;
}

int cmd_mdi(const std::string& est_path, const std::string& mix_path, std::int64_t n) {
    std::ifstream est_in(est_path);
    if (!est_in) throw ArgumentError("cannot open " + est_path);
    std::ifstream mix_in(mix_path);
    if (!mix_in) throw ArgumentError("cannot open " + mix_path);
    const Matrix est = read_csv_matrix(est_in);
    const Matrix mix = read_csv_matrix(mix_in);
    if (est.cols() != mix.rows()) throw ShapeError("estimate and mixing are not conformable");
    const double d = mdi(est * mix);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", d);
    std::cout << "mdi " << buf << '\n';
    std::snprintf(buf, sizeof buf, "%.12g", transformed_mdi(d, n, static_cast<int>(est.rows())));
    std::cout << "tmdi " << buf << '\n';
    return 0;
}

int cmd_asv(const std::string& setting_name, const std::string& out_path) {
    const SettingSpec setting = builtin_setting(setting_name);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        os = &file;
    }
    *os << "mode,k,kp,kind,asv,status\n";
    for (int mode = 1; mode <= static_cast<int>(setting.dims.size()); ++mode) {
        const AsymptoticProfile prof = asv_profile(setting, mode);
        for (int k = 0; k < prof.p; ++k)
            for (int kp = 0; kp < prof.p; ++kp) {
                *os << mode << ',' << k << ',' << kp << ',';
                if (k == kp) {
                    *os << "diag," << asv_diag(prof, k) << ",ok\n";
                } else {
                    try {
                        const double v = asv_offdiag(prof, k, kp);
                        *os << "offdiag," << v << ",ok\n";
                    } catch (const UndefinedVarianceError&) {
                        *os << "offdiag,,undefined\n";
                    }
                }
            }
    }
    return 0;
}

int cmd_synth(std::uint64_t seed, const std::string& out_path) {
    const std::vector<SemeionRecord> recs = synthetic_semeion(seed);
    auto out = open_out(out_path);
    write_semeion(out, recs);
    std::cout << "wrote " << recs.size() << " synthetic records to " << out_path << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blind source separation for tensor-valued data (TJADE and baselines)"};
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App* simulate = app.add_subcommand("simulate", "Run a Monte-Carlo study from a JSON config");
    simulate->add_option("--config", sim.config, "JSON study config")->required();
    simulate->add_option("--seed", sim.seed, "RNG seed (overrides the config)")
        ->required()
        ->each([&](const std::string&) { sim.seed_set = true; });
    simulate->add_option("--reps", sim.reps_override, "replication count override");
    simulate->add_option("--threads", sim.threads, "worker threads (0 = hardware)");
    simulate->add_option("--out", sim.out_prefix, "output prefix");

    ApplyArgs ap;
    CLI::App* apply = app.add_subcommand("apply", "Fit an unmixing model to data and export components");
    apply->add_option("--data", ap.data, "input data file")->required();
    apply->add_option("--format", ap.format, "semeion | csv");
    apply->add_option("--dims", ap.dims, "tensor dims for csv input, e.g. --dims 3 4")->delimiter(',');
    apply->add_option("--digits", ap.digits, "semeion digit filter, e.g. --digits 0,1,7")->delimiter(',');
    apply->add_option("--method", ap.method, "tjade | tfobi | jade | fobi");
    apply->add_option("--c", ap.c, "cumulant variant (1 or 2)");
    apply->add_option("--max-sweeps", ap.max_sweeps, "Jacobi sweep cap for the rotation");
    apply->add_option("--out", ap.out_prefix, "output prefix");

    std::string mdi_est, mdi_mix;
    std::int64_t mdi_n = 1;
    CLI::App* mdi_cmd = app.add_subcommand("mdi", "Minimum distance index of estimate vs mixing");
    mdi_cmd->add_option("--estimate", mdi_est, "estimated unmixing matrix CSV")->required();
    mdi_cmd->add_option("--mixing", mdi_mix, "true mixing matrix CSV")->required();
    mdi_cmd->add_option("--n", mdi_n, "sample size for the transformed index (default 1)");

    std::string asv_setting, asv_out;
    CLI::App* asv_cmd = app.add_subcommand("asv", "Asymptotic-variance table for a setting");
    asv_cmd->add_option("--setting", asv_setting, "builtin setting name")->required();
    asv_cmd->add_option("--out", asv_out, "output CSV (default stdout)");

    std::uint64_t synth_seed = 2024;
    std::string synth_out = "semeion_synthetic.dat";
    CLI::App* synth = app.add_subcommand("synth-semeion", "Write the synthetic semeion-format corpus");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--out", synth_out, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*simulate) return cmd_simulate(sim);
        if (*apply) return cmd_apply(ap);
        if (*mdi_cmd) return cmd_mdi(mdi_est, mdi_mix, mdi_n);
        if (*asv_cmd) return cmd_asv(asv_setting, asv_out);
        if (*synth) return cmd_synth(synth_seed, synth_out);
    } catch (const SingularityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const UndefinedVarianceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return 0;
}
