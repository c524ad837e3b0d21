#include "rezqu/workbench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "rezqu/dynamics.hpp"
#include "rezqu/error_budget.hpp"
#include "rezqu/errors.hpp"
#include "rezqu/hamiltonian.hpp"
#include "rezqu/move_design.hpp"
#include "rezqu/spectra.hpp"
#include "rezqu/tunneling.hpp"

namespace rezqu::workbench {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError("config error at '" + path + "': " + what);
}

void require_keys(const json& obj, const std::string& path,
                  const std::vector<std::string>& required,
                  const std::vector<std::string>& optional) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        const bool known =
            std::find(required.begin(), required.end(), key) != required.end() ||
            std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) fail(path + "." + key, "unknown key");
    }
    for (const auto& key : required)
        if (!obj.contains(key)) fail(path + "." + key, "missing required key");
}

double get_num(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.at(key).is_number()) fail(path + "." + key, "expected a number");
    return obj.at(key).get<double>();
}

double get_num(const json& obj, const std::string& path, const std::string& key,
               double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_num(obj, path, key);
}

int get_int(const json& obj, const std::string& path, const std::string& key,
            int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number_integer()) fail(path + "." + key, "expected an integer");
    return obj.at(key).get<int>();
}

std::string get_str(const json& obj, const std::string& path, const std::string& key,
                    const std::string& fallback = "") {
    if (!obj.contains(key)) {
        if (fallback.empty()) fail(path + "." + key, "missing required key");
        return fallback;
    }
    if (!obj.at(key).is_string()) fail(path + "." + key, "expected a string");
    return obj.at(key).get<std::string>();
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i)
        xs[i] = n > 1 ? a + (b - a) * double(i) / double(n - 1) : a;
    return xs;
}

MoveContext move_context_from(const json& p, const std::string& path) {
    MoveContext ctx;
    const std::string family = get_str(p, path, "family");
    if (family == "piecewise-linear")
        ctx.family = PulseFamily::PiecewiseLinear;
    else if (family == "erf")
        ctx.family = PulseFamily::Erf;
    else
        fail(path + ".family", "expected 'piecewise-linear' or 'erf'");
    ctx.f_q_start_ghz = get_num(p, path, "f_q_start_ghz");
    ctx.f_q_end_ghz = get_num(p, path, "f_q_end_ghz");
    ctx.sigma_ns = get_num(p, path, "sigma_ns", 1.0);
    ctx.front2_slope_ghz_per_ns = get_num(p, path, "front2_slope_ghz_per_ns", 0.5);
    ctx.rear_slope_ghz_per_ns = get_num(p, path, "rear_slope_ghz_per_ns", 0.5);
    return ctx;
}

MoveDirection direction_from(const json& p, const std::string& path) {
    const std::string d = get_str(p, path, "direction", "qubit-to-memory");
    if (d == "qubit-to-memory") return MoveDirection::QubitToMemory;
    if (d == "memory-to-qubit") return MoveDirection::MemoryToQubit;
    fail(path + ".direction", "expected 'qubit-to-memory' or 'memory-to-qubit'");
}

const std::vector<std::string> move_keys_common = {
    "family",  "f_q_start_ghz", "f_q_end_ghz", "sigma_ns", "front2_slope_ghz_per_ns",
    "rear_slope_ghz_per_ns", "direction", "dt_ns", "sample_rows"};

} // namespace

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "spectrum",   "idling-sweep", "move-analytic", "move-optimize",
        "tail-sweep", "lz-estimate",  "measurement",   "error-budget"};
    return names;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(root, "$", {"device", "experiment", "params"},
                 {"output", "seed", "workers"});

    ExperimentConfig cfg;
    const json& dev = root.at("device");
    require_keys(dev, "$.device", {"f_m_ghz", "f_b_ghz", "eta_ghz", "g_m_ghz", "g_b_ghz"},
                 {"include_gd"});
    cfg.device.f_m_ghz = get_num(dev, "$.device", "f_m_ghz");
    cfg.device.f_b_ghz = get_num(dev, "$.device", "f_b_ghz");
    cfg.device.eta_ghz = get_num(dev, "$.device", "eta_ghz");
    cfg.device.g_m_ghz = get_num(dev, "$.device", "g_m_ghz");
    cfg.device.g_b_ghz = get_num(dev, "$.device", "g_b_ghz");
    if (dev.contains("include_gd")) {
        if (!dev.at("include_gd").is_boolean())
            fail("$.device.include_gd", "expected a boolean");
        cfg.device.include_gd = dev.at("include_gd").get<bool>();
    }
    try {
        cfg.device.validate();
    } catch (const std::invalid_argument& e) {
        fail("$.device", e.what());
    }

    cfg.experiment = root.at("experiment").is_string()
                         ? root.at("experiment").get<std::string>()
                         : std::string();
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), cfg.experiment) == names.end())
        fail("$.experiment", "unknown experiment '" + cfg.experiment + "'");

    cfg.params = root.at("params");
    const std::string p = "$.params";
    const auto check_numbers = [&](const std::vector<std::string>& keys) {
        for (const auto& key : keys)
            if (cfg.params.contains(key)) get_num(cfg.params, p, key);
    };
    if (cfg.experiment == "spectrum" || cfg.experiment == "idling-sweep") {
        require_keys(cfg.params, p, {"f_q_start_ghz", "f_q_stop_ghz", "points"}, {});
        check_numbers({"f_q_start_ghz", "f_q_stop_ghz"});
        get_int(cfg.params, p, "points", 2);
    } else if (cfg.experiment == "move-analytic") {
        require_keys(cfg.params, p, {"family", "f_q_start_ghz", "f_q_end_ghz"},
                     move_keys_common);
        move_context_from(cfg.params, p);
        direction_from(cfg.params, p);
        check_numbers({"dt_ns"});
        get_int(cfg.params, p, "sample_rows", 1200);
    } else if (cfg.experiment == "move-optimize") {
        auto opt = move_keys_common;
        opt.insert(opt.end(), {"n_starts", "max_evals", "target"});
        require_keys(cfg.params, p, {"family", "f_q_start_ghz", "f_q_end_ghz", "mode"},
                     opt);
        move_context_from(cfg.params, p);
        direction_from(cfg.params, p);
        const std::string mode = get_str(cfg.params, p, "mode");
        if (mode != "two_param" && mode != "four_param")
            fail(p + ".mode", "expected 'two_param' or 'four_param'");
        check_numbers({"dt_ns", "target"});
        get_int(cfg.params, p, "n_starts", 5);
        get_int(cfg.params, p, "max_evals", 2000);
        get_int(cfg.params, p, "sample_rows", 1200);
    } else if (cfg.experiment == "tail-sweep") {
        require_keys(cfg.params, p,
                     {"sigma_start_ns", "sigma_stop_ns", "points", "f_q_low_ghz",
                      "f_q_high_ghz"},
                     {"g_bk_ghz", "f_qk_ghz"});
        check_numbers({"sigma_start_ns", "sigma_stop_ns", "f_q_low_ghz",
                       "f_q_high_ghz", "g_bk_ghz", "f_qk_ghz"});
        get_int(cfg.params, p, "points", 2);
    } else if (cfg.experiment == "lz-estimate") {
        require_keys(cfg.params, p, {"g_bk_ghz", "delta_b_ghz", "sweep_ghz_per_ns"},
                     {"g_mk_ghz", "delta_mk_ghz", "with_oracle"});
        check_numbers({"g_bk_ghz", "delta_b_ghz", "sweep_ghz_per_ns", "g_mk_ghz",
                       "delta_mk_ghz"});
        if (cfg.params.contains("with_oracle") &&
            !cfg.params.at("with_oracle").is_boolean())
            fail(p + ".with_oracle", "expected a boolean");
    } else if (cfg.experiment == "measurement") {
        require_keys(cfg.params, p, {"f_q_ghz", "gamma_per_ns", "t_meas_ns"},
                     {"points"});
        check_numbers({"f_q_ghz", "gamma_per_ns", "t_meas_ns"});
        get_int(cfg.params, p, "points", 601);
    } else if (cfg.experiment == "error-budget") {
        require_keys(cfg.params, p, {"delta_ghz", "n_list", "n_op_list"},
                     {"sigma_ns", "f_qk_ghz", "sweep_ghz_per_ns"});
        check_numbers({"delta_ghz", "sigma_ns", "f_qk_ghz", "sweep_ghz_per_ns"});
        for (const char* key : {"n_list", "n_op_list"}) {
            if (!cfg.params.at(key).is_array())
                fail(p + "." + key, "expected an array of integers");
            for (const auto& v : cfg.params.at(key))
                if (!v.is_number_integer())
                    fail(p + "." + key, "expected an array of integers");
        }
    }

    if (root.contains("output")) {
        const json& out = root.at("output");
        require_keys(out, "$.output", {}, {"path", "format"});
        cfg.output_path = get_str(out, "$.output", "path", "-");
        const std::string f = get_str(out, "$.output", "format", "csv");
        if (f == "csv")
            cfg.format = OutputFormat::Csv;
        else if (f == "json")
            cfg.format = OutputFormat::Json;
        else
            fail("$.output.format", "expected 'csv' or 'json'");
    }
    if (root.contains("seed")) {
        if (!root.at("seed").is_number_integer()) fail("$.seed", "expected an integer");
        cfg.seed = root.at("seed").get<unsigned long long>();
    }
    cfg.workers = get_int(root, "$", "workers", 0);
    cfg.canonical = root;
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void parallel_for(int n_jobs, int workers, const std::function<void(int)>& fn) {
    if (workers <= 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n_jobs);
    if (workers <= 1) {
        for (int i = 0; i < n_jobs; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_jobs) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

void base_metadata(const ExperimentConfig& cfg, SweepResult& result) {
    result.metadata.emplace_back("tool", std::string("rezqu-sim ") + tool_version);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(config_hash(cfg.canonical)));
    result.metadata.emplace_back("config_hash", hash);
    result.metadata.emplace_back("config", cfg.canonical.dump());
}

} // namespace

SweepResult run_spectrum(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    const auto fq = linspace(get_num(cfg.params, p, "f_q_start_ghz"),
                             get_num(cfg.params, p, "f_q_stop_ghz"),
                             get_int(cfg.params, p, "points", 2));
    const Basis basis(2);
    SweepResult res;
    base_metadata(cfg, res);
    res.columns = {"f_q_ghz"};
    for (int n = 0; n <= 2; ++n)
        for (int k = 0; k < basis.block_dim(n); ++k) {
            const BasisLabel l = basis.block_label(n, k);
            res.columns.push_back("eps_" + std::to_string(l.n_m) +
                                  std::to_string(l.n_q) + std::to_string(l.n_b) +
                                  "_ghz");
        }
    res.rows.assign(fq.size(), {});
    parallel_for(int(fq.size()), cfg.workers, [&](int i) {
        std::vector<double> row{fq[i]};
        const double wq = angular(fq[i]);
        row.push_back(linear(assemble_block(cfg.device, wq, 0)(0, 0).real()));
        for (int n = 1; n <= 2; ++n) {
            // near an avoided crossing the contested labels emit NaN
            const EigenSystem es =
                diagonalize_block(cfg.device, wq, n, LabelPolicy::Lenient);
            for (int k = 0; k < basis.block_dim(n); ++k) {
                const int idx = es.label_to_index[k];
                row.push_back(idx >= 0 ? linear(es.eigenvalues(idx))
                                       : std::nan(""));
            }
        }
        res.rows[i] = std::move(row);
    });
    return res;
}

SweepResult run_idling_sweep(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    const auto fq = linspace(get_num(cfg.params, p, "f_q_start_ghz"),
                             get_num(cfg.params, p, "f_q_stop_ghz"),
                             get_int(cfg.params, p, "points", 2));
    SweepResult res;
    base_metadata(cfg, res);
    res.columns = {"f_q_ghz", "omega_zz_exact_nogd_mhz", "omega_zz_exact_gd_mhz",
                   "omega_zz_4th_mhz"};
    res.rows.assign(fq.size(), {});
    parallel_for(int(fq.size()), cfg.workers, [&](int i) {
        const double wq = angular(fq[i]);
        DeviceParams nogd = cfg.device, gd = cfg.device;
        nogd.include_gd = false;
        gd.include_gd = true;
        const ZZReport a = omega_zz(nogd, wq);
        const ZZReport b = omega_zz(gd, wq);
        res.rows[i] = {fq[i], linear(a.omega_zz_exact) * 1e3,
                       linear(b.omega_zz_exact) * 1e3, linear(a.omega_zz_4th) * 1e3};
    });
    return res;
}

SweepResult run_move(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    const MoveContext ctx = move_context_from(cfg.params, p);
    const MoveDirection dir = direction_from(cfg.params, p);

    PropagateOptions prop;
    prop.dt = get_num(cfg.params, p, "dt_ns", 2.5e-4);

    MoveDesign design;
    if (cfg.experiment == "move-analytic") {
        design = design_move_analytic(cfg.device, ctx, dir, prop);
    } else {
        const std::string mode = get_str(cfg.params, p, "mode");
        if (mode != "two_param" && mode != "four_param")
            fail(p + ".mode", "expected 'two_param' or 'four_param'");
        MoveOptimizeOptions opts;
        opts.seed = cfg.seed;
        opts.n_starts = get_int(cfg.params, p, "n_starts", 5);
        opts.max_evals_per_start = get_int(cfg.params, p, "max_evals", 2000);
        opts.propagate = prop;
        if (cfg.params.contains("target"))
            opts.target = get_num(cfg.params, p, "target");
        design = optimize_move(cfg.device, ctx,
                               mode == "two_param" ? OptimizeMode::TwoParam
                                                   : OptimizeMode::FourParam,
                               dir, opts);
    }

    const PulseShape pulse = build_directed_pulse(cfg.device, ctx, design.params, dir);
    const Basis basis(2);
    const BasisLabel init_label =
        dir == MoveDirection::QubitToMemory ? BasisLabel{0, 1, 0} : BasisLabel{1, 0, 0};
    const EigenSystem es0 = diagonalize_block(cfg.device, pulse.omega(0.0), 1);
    StateVector psi0{es0.state_of(basis, init_label), 1, 0.0};

    PropagateOptions sampled = prop;
    const int want_rows = get_int(cfg.params, p, "sample_rows", 1200);
    const long total_steps = std::lround(std::ceil(pulse.duration() / prop.dt));
    sampled.sample_stride = std::max(1L, total_steps / std::max(1, want_rows));
    const Trajectory traj = propagate(cfg.device, pulse, psi0, pulse.duration(), sampled);

    SweepResult res;
    base_metadata(cfg, res);
    const TrajectoryTable table = trajectory_table(traj, cfg.device, pulse);
    res.columns = table.columns;
    res.rows = table.rows;
    res.metadata.emplace_back("design", move_design_to_json(design));
    res.metadata.emplace_back("achieved_error", fmt17(design.achieved_error));
    res.metadata.emplace_back("tail_gamma2", fmt17(design.tail_gamma2));
    res.metadata.emplace_back("varphi", fmt17(design.varphi));
    res.stagnation_warning = design.optimizer_stagnated;
    return res;
}

SweepResult run_tail_sweep(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    const auto sigmas = linspace(get_num(cfg.params, p, "sigma_start_ns"),
                                 get_num(cfg.params, p, "sigma_stop_ns"),
                                 get_int(cfg.params, p, "points", 2));
    const double f_low = get_num(cfg.params, p, "f_q_low_ghz");
    const double f_high = get_num(cfg.params, p, "f_q_high_ghz");
    const bool with_kth = cfg.params.contains("g_bk_ghz") && cfg.params.contains("f_qk_ghz");
    const double g_bk = angular(get_num(cfg.params, p, "g_bk_ghz", 0.0));
    const double w_qk = angular(get_num(cfg.params, p, "f_qk_ghz", 0.0));

    SweepResult res;
    base_metadata(cfg, res);
    res.columns = {"sigma_ns", "err_tail_front"};
    if (with_kth) res.columns.push_back("err_tail_kth");
    res.rows.assign(sigmas.size(), {});
    parallel_for(int(sigmas.size()), cfg.workers, [&](int i) {
        const double sigma = sigmas[i];
        ErfRampPulse ramp(angular(f_low),
                          {{angular(f_high - f_low), 3.0 * sigma, sigma}}, 6.0 * sigma);
        const PulseShape front(ramp);
        std::vector<double> row{
            sigma, tail_error_front_ramp(front, cfg.device.g_b(), cfg.device.omega_b())};
        if (with_kth)
            row.push_back(tail_error_kth_qubit(front, cfg.device.g_b(), g_bk, w_qk,
                                               cfg.device.omega_b()));
        res.rows[i] = std::move(row);
    });
    return res;
}

SweepResult run_lz_estimate(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    const double g_bk = angular(get_num(cfg.params, p, "g_bk_ghz"));
    const double delta_b = angular(get_num(cfg.params, p, "delta_b_ghz"));
    const double rate = angular(get_num(cfg.params, p, "sweep_ghz_per_ns"));
    const bool with_oracle = !cfg.params.contains("with_oracle") ||
                             cfg.params.at("with_oracle").get<bool>();

    SweepResult res;
    base_metadata(cfg, res);
    res.columns = {"err_lz_qubit_qubit"};
    std::vector<double> row{lz_error_qubit_qubit(cfg.device.g_b(), g_bk, delta_b, rate)};
    if (with_oracle) {
        res.columns.push_back("err_lz_oracle");
        row.push_back(lz_error_two_level_oracle(cfg.device.g_b() * g_bk / delta_b, rate));
    }
    if (cfg.params.contains("g_mk_ghz") && cfg.params.contains("delta_mk_ghz")) {
        res.columns.push_back("err_lz_qubit_memory");
        row.push_back(lz_error_qubit_memory(cfg.device.g_b(), g_bk,
                                            angular(get_num(cfg.params, p, "g_mk_ghz")),
                                            delta_b,
                                            angular(get_num(cfg.params, p, "delta_mk_ghz")),
                                            rate));
    }
    res.rows.push_back(std::move(row));
    return res;
}

SweepResult run_measurement(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    MeasurementParams mp;
    mp.f_m_ghz = cfg.device.f_m_ghz;
    mp.g_m_ghz = cfg.device.g_m_ghz;
    mp.f_q_ghz = get_num(cfg.params, p, "f_q_ghz");
    mp.gamma_per_ns = get_num(cfg.params, p, "gamma_per_ns");
    mp.t_meas_ns = get_num(cfg.params, p, "t_meas_ns");
    const int points = get_int(cfg.params, p, "points", 601);

    const DecayReport rep = survival_error(mp, points);
    SweepResult res;
    base_metadata(cfg, res);
    res.columns = {"t_ns",        "alpha2_bare",  "beta2_bare", "alpha2_eigen",
                   "beta2_eigen", "err_bare",     "err_eigen",  "ratio"};
    for (std::size_t k = 0; k < rep.bare.t_ns.size(); ++k) {
        const double eb = rep.bare.alpha2[k] + rep.bare.beta2[k];
        const double ee = rep.eigen.alpha2[k] + rep.eigen.beta2[k];
        res.rows.push_back({rep.bare.t_ns[k], rep.bare.alpha2[k], rep.bare.beta2[k],
                            rep.eigen.alpha2[k], rep.eigen.beta2[k], eb, ee,
                            eb > 0.0 ? ee / eb : 0.0});
    }
    res.metadata.emplace_back("err_bare", fmt17(rep.err_bare));
    res.metadata.emplace_back("err_eigen", fmt17(rep.err_eigen));
    res.metadata.emplace_back("ratio", fmt17(rep.ratio));
    res.metadata.emplace_back("ratio_weak_coupling", fmt17(rep.ratio_weak_coupling));
    res.metadata.emplace_back("gamma_m", fmt17(rep.gamma_m));
    res.metadata.emplace_back("gamma_q", fmt17(rep.gamma_q));
    return res;
}

SweepResult run_error_budget(const ExperimentConfig& cfg) {
    const std::string p = "$.params";
    const double delta_ghz = get_num(cfg.params, p, "delta_ghz");
    const double sigma = get_num(cfg.params, p, "sigma_ns", 1.0);
    const double f_qk = get_num(cfg.params, p, "f_qk_ghz", 6.5);
    const double sweep = get_num(cfg.params, p, "sweep_ghz_per_ns", 0.5);
    if (!cfg.params.at("n_list").is_array() || !cfg.params.at("n_op_list").is_array())
        fail(p + ".n_list", "expected arrays of integers");
    std::vector<int> ns, nops;
    for (const auto& v : cfg.params.at("n_list")) ns.push_back(v.get<int>());
    for (const auto& v : cfg.params.at("n_op_list")) nops.push_back(v.get<int>());

    // front ramp for the tail terms: bus detuning delta -> (f_m - f_b)
    const double f_low = cfg.device.f_b_ghz + delta_ghz;
    ErfRampPulse ramp(angular(f_low),
                      {{angular(cfg.device.f_m_ghz - f_low), 3.0 * sigma, sigma}},
                      6.0 * sigma);
    const PulseShape front(ramp);

    SweepResult res;
    base_metadata(cfg, res);
    res.columns = {"n_qubits",         "n_ops",
                   "idle_rezqu",       "idle_conventional",
                   "ratio_rezqu_conv", "xx_memory_memory",
                   "zz_memory_memory", "tail_move",
                   "tail_qubit_k",     "lz_qubit_qubit",
                   "lz_qubit_memory"};
    for (int n : ns)
        for (int nop : nops) {
            ArchitectureParams arch = ArchitectureParams::symmetric_ghz(
                cfg.device.g_m_ghz, delta_ghz, n, nop);
            arch.g_b = arch.g_bk = cfg.device.g_b();
            ErrorBudget b;
            b.idle_rezqu = idle_rezqu_worstcase(arch, cfg.device.eta());
            b.idle_conventional = idle_conventional(arch, cfg.device.eta());
            const MemoryMemoryErrors mm = memory_memory_errors(arch, cfg.device.eta());
            b.xx_memory_memory = mm.err_xx;
            b.zz_memory_memory = mm.err_zz;
            b.tail_move = tail_error_front_ramp(front, cfg.device.g_b(),
                                                cfg.device.omega_b());
            b.tail_qubit_k = tail_error_kth_qubit(front, cfg.device.g_b(),
                                                  cfg.device.g_b(), angular(f_qk),
                                                  cfg.device.omega_b());
            b.lz_qubit_qubit = lz_error_qubit_qubit(cfg.device.g_b(), cfg.device.g_b(),
                                                    angular(delta_ghz), angular(sweep));
            b.lz_qubit_memory = lz_error_qubit_memory(
                cfg.device.g_b(), cfg.device.g_b(), cfg.device.g_m(), angular(delta_ghz),
                angular(delta_ghz), angular(sweep));
            res.rows.push_back({double(n), double(nop), b.idle_rezqu,
                                b.idle_conventional, b.idle_rezqu / b.idle_conventional,
                                b.xx_memory_memory, b.zz_memory_memory, b.tail_move,
                                b.tail_qubit_k, b.lz_qubit_qubit, b.lz_qubit_memory});
        }
    return res;
}

SweepResult run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "spectrum") return run_spectrum(cfg);
    if (cfg.experiment == "idling-sweep") return run_idling_sweep(cfg);
    if (cfg.experiment == "move-analytic" || cfg.experiment == "move-optimize")
        return run_move(cfg);
    if (cfg.experiment == "tail-sweep") return run_tail_sweep(cfg);
    if (cfg.experiment == "lz-estimate") return run_lz_estimate(cfg);
    if (cfg.experiment == "measurement") return run_measurement(cfg);
    if (cfg.experiment == "error-budget") return run_error_budget(cfg);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

namespace {

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&tt));
    return buf;
}

} // namespace

std::string to_csv(const SweepResult& result, bool reproducible) {
    std::ostringstream out;
    for (const auto& [key, value] : result.metadata)
        out << "# " << key << ": " << value << "\n";
    if (!reproducible) out << "# generated: " << timestamp_utc() << "\n";
    for (std::size_t c = 0; c < result.columns.size(); ++c)
        out << (c ? "," : "") << result.columns[c];
    out << "\n";
    for (const auto& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << fmt17(row[c]);
        out << "\n";
    }
    return out.str();
}

std::string to_json_text(const SweepResult& result, bool reproducible) {
    json meta = json::object();
    for (const auto& [key, value] : result.metadata) {
        if (key == "config" || key == "design")
            meta[key] = json::parse(value);
        else
            meta[key] = value;
    }
    if (!reproducible) meta["generated"] = timestamp_utc();
    json data = json::object();
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
        json col = json::array();
        for (const auto& row : result.rows) col.push_back(row[c]);
        data[result.columns[c]] = std::move(col);
    }
    json root;
    root["meta"] = std::move(meta);
    root["columns"] = result.columns;
    root["data"] = std::move(data);
    return root.dump(2) + "\n";
}

std::uint64_t config_hash(const nlohmann::json& canonical) {
    const std::string s = canonical.dump();
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace rezqu::workbench
