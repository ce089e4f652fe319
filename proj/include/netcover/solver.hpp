#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netcover/model.hpp"

namespace netcover {

enum class SolveStatus { Optimal, Feasible, Infeasible, Unbounded, Timeout, Unread };

inline const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Feasible: return "feasible";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::Timeout: return "timeout";
        case SolveStatus::Unread: return "unread";
    }
    return "?";
}

struct SolveResult {
    SolveStatus status = SolveStatus::Unread;
    bool has_incumbent = false;
    double incumbent = 0.0;
    bool has_bound = false;
    double bound = -kInf;
    std::map<std::string, double> values;  // present iff has_incumbent
    double wall_time = 0.0;                // seconds

    double gap() const {
        if (!has_incumbent || !has_bound) return 1.0;
        if (incumbent == 0.0) return bound >= -kTol ? 0.0 : 1.0;
        return (incumbent - bound) / incumbent;
    }
};

struct SolveOptions {
    double time_limit = 1800.0;
    double abs_gap = 1.0;  // objective is integral
    int threads = 1;
    std::string backend;  // empty: NETCOVER_SOLVER env, then the built-in script
};

struct BackendDescriptor {
    std::string name;
    std::string command;
    bool available = false;
};

namespace detail {

inline std::string default_backend_command() {
#ifdef NETCOVER_BACKEND_SCRIPT
    return std::string("python3 ") + NETCOVER_BACKEND_SCRIPT;
#else
    return "python3 milp_backend.py";
#endif
}

inline std::string backend_script_path() {
#ifdef NETCOVER_BACKEND_SCRIPT
    return NETCOVER_BACKEND_SCRIPT;
#else
    return "milp_backend.py";
#endif
}

inline std::filesystem::path make_temp_dir() {
    auto base = std::filesystem::temp_directory_path();
    static std::mt19937_64 rng(std::random_device{}());
    for (int tries = 0; tries < 64; ++tries) {
        auto dir = base / ("netcover-" + std::to_string(rng()));
        std::error_code ec;
        if (std::filesystem::create_directory(dir, ec)) return dir;
    }
    throw std::runtime_error("cannot create temp directory");
}

}  // namespace detail

// Ordered by preference; the first available one is the default.
inline std::vector<BackendDescriptor> backend_list() {
    std::vector<BackendDescriptor> out;
    if (const char* env = std::getenv("NETCOVER_SOLVER"))
        out.push_back({"env:NETCOVER_SOLVER", env, true});
    bool script_ok = std::filesystem::exists(detail::backend_script_path());
    out.push_back({"scipy-highs", detail::default_backend_command(), script_ok});
    return out;
}

inline std::string resolve_backend(const SolveOptions& opt) {
    if (!opt.backend.empty()) return opt.backend;
    for (const auto& b : backend_list())
        if (b.available) return b.command;
    throw std::runtime_error("no MILP backend available (set NETCOVER_SOLVER)");
}

// Solve through the process boundary: LP file in, solution file out.
// Binaries are rounded at 0.5 and kept only if the rounded point still
// satisfies the model. A timeout whose incumbent is already within abs_gap
// of the bound is promoted to optimal (the objective is integral).
inline SolveResult solve(const ModelSpec& model, const SolveOptions& opt = {}) {
    const std::string backend = resolve_backend(opt);
    auto dir = detail::make_temp_dir();
    auto lp_path = dir / "model.lp";
    auto sol_path = dir / "model.sol";
    auto log_path = dir / "backend.log";
    {
        std::ofstream lp(lp_path);
        emit_lp(model, lp);
    }
    std::ostringstream cmd;
    cmd << backend << " " << lp_path << " " << sol_path << " --time-limit " << opt.time_limit
        << " --abs-gap " << opt.abs_gap << " --threads " << opt.threads << " > " << log_path
        << " 2>&1";

    SolveResult res;
    auto t0 = std::chrono::steady_clock::now();
    int rc = std::system(cmd.str().c_str());
    res.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::ifstream sol(sol_path);
    if (rc != 0 || !sol) {
        res.status = SolveStatus::Unread;
        if (!std::getenv("NETCOVER_KEEP_TMP")) std::filesystem::remove_all(dir);
        return res;
    }
    std::string key;
    while (sol >> key) {
        if (key == "status") {
            std::string s;
            sol >> s;
            if (s == "optimal") res.status = SolveStatus::Optimal;
            else if (s == "feasible") res.status = SolveStatus::Feasible;
            else if (s == "infeasible") res.status = SolveStatus::Infeasible;
            else if (s == "unbounded") res.status = SolveStatus::Unbounded;
            else if (s == "timeout") res.status = SolveStatus::Timeout;
            else res.status = SolveStatus::Unread;
        } else if (key == "objective") {
            sol >> res.incumbent;
            res.has_incumbent = true;
        } else if (key == "bound") {
            sol >> res.bound;
            res.has_bound = true;
        } else if (key == "var") {
            std::string name;
            double value;
            sol >> name >> value;
            res.values[name] = value;
        } else {
            std::string skip;
            std::getline(sol, skip);
        }
    }
    if (!std::getenv("NETCOVER_KEEP_TMP")) std::filesystem::remove_all(dir);

    if (res.has_incumbent) {
        // Round binaries; keep the rounding only if it stays feasible.
        std::map<std::string, double> rounded = res.values;
        for (const auto& v : model.variables()) {
            if (v.kind != VarKind::Binary) continue;
            auto it = rounded.find(v.name);
            if (it != rounded.end()) it->second = it->second >= 0.5 ? 1.0 : 0.0;
        }
        if (model.max_violation(model.to_vector(rounded)) <= 1e-6) res.values = rounded;
        res.incumbent = model.objective_value(model.to_vector(res.values));
        if (res.status == SolveStatus::Timeout && res.has_bound &&
            res.incumbent - res.bound <= opt.abs_gap - 1e-6)
            res.status = SolveStatus::Optimal;
    }
    return res;
}

}  // namespace netcover
