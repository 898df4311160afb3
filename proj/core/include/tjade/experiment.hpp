#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tjade/asv.hpp"
#include "tjade/settings.hpp"

namespace tjade {

enum class Method { TJade, TFobi, VJade, VFobi };

Method method_from_name(std::string_view name);
std::string to_string(Method method);

/// Declarative description of a Monte-Carlo study.
struct ExperimentConfig {
    std::vector<SettingSpec> settings;
    std::vector<MixingKind> mixings;
    std::vector<Method> methods;
    std::vector<std::int64_t> ns;
    int reps = 100;
    std::uint64_t seed = 1;
    int c = 1;
    int threads = 0;  // 0 = hardware concurrency
    JointDiagOptions joint_diag{};

    void validate() const;
};

/// Parse the JSON config text. Keys: setting (name or list of names, or inline
/// {name, dims, cells}), mixing, methods, ns, reps, seed, c, optional threads.
/// Throws ArgumentError with a position-anchored message on malformed input.
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct ResultRow {
    std::string method;
    std::string mixing;
    std::string setting;
    std::int64_t n = 0;
    int rep = 0;
    double mdi = 0.0;         // NaN when the fit failed outright
    double tmdi = 0.0;
    bool converged = true;
    double ms = 0.0;
};

struct SummaryRow {
    std::string method;
    std::string mixing;
    std::string setting;
    std::int64_t n = 0;
    int reps = 0;
    int failures = 0;         // non-converged or failed fits
    double mean_mdi = 0.0;    // over converged rows
    double mean_tmdi = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
};

/// Run the study. Per replication: draw the source sample once, mix it with
/// each mixing kind (matrices drawn from dedicated substreams), fit every
/// method, evaluate MDI against the used mixing. Fitter errors become
/// non-converged rows. Deterministic for a fixed (config, seed), independent
/// of the thread count.
ExperimentResult run_experiment(const ExperimentConfig& config);

std::vector<SummaryRow> summarize(const ExperimentResult& result);

/// Fixed column order: method,mixing,setting,n,rep,mdi,tmdi,converged,ms.
void write_results_csv(std::ostream& os, const ExperimentResult& result);
void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary);

}  // namespace tjade
