#include "tjade/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "tjade/mdi.hpp"

namespace tjade {

namespace {

using nlohmann::json;

SettingSpec setting_from_json(const json& j) {
    if (j.is_string()) return builtin_setting(j.get<std::string>());
    if (j.is_object()) {
        SettingSpec spec;
        spec.name = j.value("name", "custom");
        spec.dims = j.at("dims").get<std::vector<int>>();
        spec.cells = j.at("cells").get<std::vector<std::string>>();
        spec.validate();
        return spec;
    }
    throw ArgumentError("config: 'setting' entries must be names or {name,dims,cells} objects");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

struct Task {
    std::size_t setting_idx;
    std::size_t n_idx;
    int rep;
    std::size_t row_offset;  // first row slot for this task
};

}  // namespace

Method method_from_name(std::string_view name) {
    if (name == "tjade") return Method::TJade;
    if (name == "tfobi") return Method::TFobi;
    if (name == "vjade") return Method::VJade;
    if (name == "vfobi") return Method::VFobi;
    throw ArgumentError("unknown method: " + std::string(name));
}

std::string to_string(Method method) {
    switch (method) {
        case Method::TJade: return "tjade";
        case Method::TFobi: return "tfobi";
        case Method::VJade: return "vjade";
        case Method::VFobi: return "vfobi";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (settings.empty()) throw ArgumentError("config: at least one setting required");
    for (const SettingSpec& s : settings) s.validate();
    if (mixings.empty()) throw ArgumentError("config: at least one mixing kind required");
    if (methods.empty()) throw ArgumentError("config: at least one method required");
    if (ns.empty()) throw ArgumentError("config: at least one sample size required");
    for (std::int64_t n : ns)
        if (n < 4) throw ArgumentError("config: sample sizes must be >= 4");
    if (reps < 1) throw ArgumentError("config: reps must be >= 1");
    if (c != 1 && c != 2) throw ArgumentError("config: c must be 1 or 2");
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("config parse error: ") + e.what());
    }
    try {
        ExperimentConfig cfg;
        const json& setting = j.at("setting");
        if (setting.is_array())
            for (const json& s : setting) cfg.settings.push_back(setting_from_json(s));
        else
            cfg.settings.push_back(setting_from_json(setting));
        for (const json& m : j.at("mixing")) cfg.mixings.push_back(mixing_from_name(m.get<std::string>()));
        for (const json& m : j.at("methods")) cfg.methods.push_back(method_from_name(m.get<std::string>()));
        for (const json& n : j.at("ns")) cfg.ns.push_back(n.get<std::int64_t>());
        cfg.reps = j.at("reps").get<int>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.c = j.value("c", 1);
        cfg.threads = j.value("threads", 0);
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("config error: ") + e.what());
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    config.validate();
    const std::size_t rows_per_task = config.mixings.size() * config.methods.size();

    std::vector<Task> tasks;
    std::size_t offset = 0;
    for (std::size_t si = 0; si < config.settings.size(); ++si)
        for (std::size_t ni = 0; ni < config.ns.size(); ++ni)
            for (int rep = 0; rep < config.reps; ++rep) {
                tasks.push_back({si, ni, rep, offset});
                offset += rows_per_task;
            }

    ExperimentResult result;
    result.rows.resize(offset);

    auto run_task = [&](const Task& task) {
        const SettingSpec& setting = config.settings[task.setting_idx];
        const std::int64_t n = config.ns[task.n_idx];
        // substream path: (setting, n, rep, lane); lane 0 = data, 1+kind = mixing
        Rng data_rng = Rng::substream(config.seed,
                                      {task.setting_idx, static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(task.rep), 0});
        const Sample z = draw_sample(setting, n, data_rng);

        std::size_t slot = task.row_offset;
        for (const MixingKind kind : config.mixings) {
            Rng mix_rng = Rng::substream(config.seed,
                                         {task.setting_idx, static_cast<std::uint64_t>(n),
                                          static_cast<std::uint64_t>(task.rep),
                                          1 + static_cast<std::uint64_t>(kind)});
            const std::vector<Matrix> mixers = draw_mixing(kind, setting.dims, mix_rng);
            const Sample x = kind == MixingKind::Identity ? z : multi_mode_product(z, mixers);

            for (const Method method : config.methods) {
                ResultRow row;
                row.method = to_string(method);
                row.mixing = to_string(kind);
                row.setting = setting.name;
                row.n = n;
                row.rep = task.rep;
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    FitOptions opt;
                    opt.c = config.c;
                    opt.joint_diag = config.joint_diag;
                    Matrix gain;
                    bool conv = true;
                    switch (method) {
                        case Method::TJade: {
                            UnmixingModel mod = tjade_fit(x, opt);
                            gain = kronecker_gain(mod, mixers);
                            conv = mod.converged();
                            break;
                        }
                        case Method::TFobi: {
                            UnmixingModel mod = tfobi_fit(x, opt);
                            gain = kronecker_gain(mod, mixers);
                            conv = mod.converged();
                            break;
                        }
                        case Method::VJade: {
                            UnmixingModel mod = jade_fit(x.vectorized(), opt);
                            gain = mod.phis[0] * kron_chain(mixers);
                            conv = mod.converged();
                            break;
                        }
                        case Method::VFobi: {
                            UnmixingModel mod = fobi_fit(x.vectorized(), opt);
                            gain = mod.phis[0] * kron_chain(mixers);
                            conv = mod.converged();
                            break;
                        }
                    }
                    row.mdi = mdi(gain);
                    row.tmdi = transformed_mdi(row.mdi, n, static_cast<int>(gain.rows()));
                    row.converged = conv;
                } catch (const Error&) {
                    row.mdi = std::numeric_limits<double>::quiet_NaN();
                    row.tmdi = std::numeric_limits<double>::quiet_NaN();
                    row.converged = false;
                }
                row.ms = elapsed_ms(t0);
                result.rows[slot++] = std::move(row);
            }
        }
    };

    unsigned nthreads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                           : std::max(1u, std::thread::hardware_concurrency());
    nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(tasks.size()));
    if (nthreads <= 1) {
        for (const Task& t : tasks) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
                    run_task(tasks[i]);
            });
        for (std::thread& th : pool) th.join();
    }
    return result;
}

std::vector<SummaryRow> summarize(const ExperimentResult& result) {
    std::map<std::tuple<std::string, std::string, std::string, std::int64_t>, SummaryRow> cells;
    std::vector<std::tuple<std::string, std::string, std::string, std::int64_t>> order;
    for (const ResultRow& row : result.rows) {
        const auto key = std::make_tuple(row.method, row.mixing, row.setting, row.n);
        auto it = cells.find(key);
        if (it == cells.end()) {
            SummaryRow s;
            s.method = row.method;
            s.mixing = row.mixing;
            s.setting = row.setting;
            s.n = row.n;
            it = cells.emplace(key, std::move(s)).first;
            order.push_back(key);
        }
        SummaryRow& s = it->second;
        s.reps += 1;
        if (row.converged && std::isfinite(row.mdi)) {
            s.mean_mdi += row.mdi;
            s.mean_tmdi += row.tmdi;
        } else {
            s.failures += 1;
        }
    }
    std::vector<SummaryRow> out;
    out.reserve(order.size());
    for (const auto& key : order) {
        SummaryRow s = cells[key];
        const int ok = s.reps - s.failures;
        if (ok > 0) {
            s.mean_mdi /= ok;
            s.mean_tmdi /= ok;
        } else {
            s.mean_mdi = std::numeric_limits<double>::quiet_NaN();
            s.mean_tmdi = std::numeric_limits<double>::quiet_NaN();
        }
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

void put_double(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
}

}  // namespace

void write_results_csv(std::ostream& os, const ExperimentResult& result) {
    os << "method,mixing,setting,n,rep,mdi,tmdi,converged,ms\n";
    for (const ResultRow& r : result.rows) {
        os << r.method << ',' << r.mixing << ',' << r.setting << ',' << r.n << ',' << r.rep << ',';
        put_double(os, r.mdi);
        os << ',';
        put_double(os, r.tmdi);
        os << ',' << (r.converged ? 1 : 0) << ',';
        put_double(os, r.ms);
        os << '\n';
    }
}

void write_summary_csv(std::ostream& os, const std::vector<SummaryRow>& summary) {
    os << "method,mixing,setting,n,reps,failures,mean_mdi,mean_tmdi\n";
    for (const SummaryRow& s : summary) {
        os << s.method << ',' << s.mixing << ',' << s.setting << ',' << s.n << ',' << s.reps << ','
           << s.failures << ',';
        put_double(os, s.mean_mdi);
        os << ',';
        put_double(os, s.mean_tmdi);
        os << '\n';
    }
}

}  // namespace tjade
