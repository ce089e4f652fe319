#pragma once

#include <atomic>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "netcover/pipeline.hpp"

namespace netcover {

// Shifted geometric mean, computed through logs.
inline double sgm(const std::vector<double>& values, double shift) {
    if (values.empty()) throw std::invalid_argument("sgm: empty value list");
    if (shift < 0) throw std::invalid_argument("sgm: negative shift");
    double acc = 0.0;
    for (double v : values) {
        if (v < 0) throw std::invalid_argument("sgm: negative value");
        acc += std::log(v + shift);
    }
    return std::exp(acc / static_cast<double>(values.size())) - shift;
}

struct BenchRecord {
    std::string instance;
    std::string set_name;
    RadiusPolicy radius = RadiusPolicy::Small;
    Variant variant = Variant::SF;
    SolveStatus status = SolveStatus::Unread;
    bool affected = false;
    bool solved = false;
    double t = 0.0;          // solver seconds (preprocessing excluded)
    double incumbent = 0.0;  // v_bar, valid iff affected
    double bound = 0.0;      // v_underbar
    bool has_bound = false;
    int n_sd = 0;
    double sigma = 1.0;
    double v_r = 1.0;
    double vprime_r = std::numeric_limits<double>::quiet_NaN();
};

struct BenchOptions {
    double time_limit = 1800.0;
    double abs_gap = 1.0;
    int workers = 3;  // one solve per worker
    std::string backend;
};

struct BenchSummaryRow {
    std::string set_name;
    RadiusPolicy radius = RadiusPolicy::Small;
    Variant variant = Variant::SF;
    double sgm_time = 0.0;
    double sgm_sigma = 0.0;
    double sgm_vr = 0.0;
    int solved = 0, affected = 0, total = 0;
};

struct BenchResults {
    std::vector<BenchRecord> records;
    std::vector<BenchSummaryRow> summary;
};

namespace detail {

inline void finish_record(BenchRecord& rec, const PipelineOutcome& out, double limit) {
    rec.status = out.result.status;
    rec.affected = out.affected;
    rec.solved = out.solved;
    rec.n_sd = out.n_sd;
    rec.t = out.result.wall_time;
    rec.has_bound = out.result.has_bound;
    if (rec.has_bound) rec.bound = out.result.bound;
    if (rec.affected) {
        rec.incumbent = out.result.incumbent;
        rec.sigma = rec.has_bound && rec.incumbent != 0.0
                        ? (rec.incumbent - rec.bound) / rec.incumbent
                        : 1.0;
        rec.sigma = std::max(0.0, rec.sigma);
        rec.v_r = rec.incumbent / rec.n_sd;
    } else {
        rec.t = limit;
        rec.sigma = 1.0;
        rec.v_r = 1.0;
    }
}

}  // namespace detail

// Run variant x instance jobs with a fixed-size worker pool and aggregate
// the per-(set, radius, variant) statistics.
inline BenchResults run_grid(const InstanceSet& set, const std::vector<Variant>& variants,
                             const BenchOptions& opt = {}) {
    struct Job {
        size_t instance;
        Variant variant;
    };
    std::vector<Job> jobs;
    for (size_t i = 0; i < set.networks.size(); ++i)
        for (Variant v : variants) jobs.push_back({i, v});

    BenchResults results;
    results.records.resize(jobs.size());
    std::atomic<size_t> next{0};
    std::mutex mtx;

    auto worker = [&]() {
        SolveOptions sopt;
        sopt.time_limit = opt.time_limit;
        sopt.abs_gap = opt.abs_gap;
        sopt.backend = opt.backend;
        for (;;) {
            size_t j = next.fetch_add(1);
            if (j >= jobs.size()) return;
            const Job& job = jobs[j];
            BenchRecord rec;
            rec.instance = set.specs[job.instance].name;
            rec.set_name = set.name;
            rec.radius = set.policy;
            rec.variant = job.variant;
            const Network& net = set.networks[job.instance];
            double delta = radius_for(net, set.policy);
            try {
                PipelineOutcome out = run_pipeline(net, delta, job.variant, sopt);
                detail::finish_record(rec, out, opt.time_limit);
            } catch (const std::exception&) {
                rec.status = SolveStatus::Unread;
                rec.t = opt.time_limit;
            }
            std::lock_guard<std::mutex> lock(mtx);
            results.records[j] = rec;
        }
    };
    int nw = std::max(1, opt.workers);
    std::vector<std::thread> pool;
    for (int i = 0; i < nw; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    // v'_r needs the SFD incumbent on the same instance.
    std::map<std::string, double> sfd_value;
    for (const auto& r : results.records)
        if (r.variant == Variant::SFD && r.affected) sfd_value[r.instance] = r.incumbent;
    for (auto& r : results.records) {
        auto it = sfd_value.find(r.instance);
        if (r.affected && it != sfd_value.end() && it->second != 0.0)
            r.vprime_r = r.incumbent / it->second;
    }

    for (Variant v : variants) {
        BenchSummaryRow row;
        row.set_name = set.name;
        row.radius = set.policy;
        row.variant = v;
        std::vector<double> ts, sigmas, vrs;
        for (const auto& r : results.records) {
            if (r.variant != v) continue;
            ++row.total;
            if (r.affected) ++row.affected;
            if (r.solved) ++row.solved;
            ts.push_back(r.t);
            sigmas.push_back(r.sigma);
            vrs.push_back(r.v_r);
        }
        if (row.total > 0) {
            row.sgm_time = sgm(ts, 1.0);
            row.sgm_sigma = sgm(sigmas, 0.01);
            row.sgm_vr = sgm(vrs, 0.01);
        }
        results.summary.push_back(row);
    }
    return results;
}

inline std::string records_to_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream os;
    os << "instance,set,radius,variant,status,affected,solved,time,incumbent,bound,n_sd,"
          "sigma,v_r,vprime_r\n";
    os << std::setprecision(12);
    for (const auto& r : records) {
        os << r.instance << ',' << r.set_name << ',' << radius_policy_name(r.radius) << ','
           << variant_name(r.variant) << ',' << status_name(r.status) << ',' << r.affected << ','
           << r.solved << ',' << r.t << ',';
        if (r.affected) os << r.incumbent;
        os << ',';
        if (r.has_bound) os << r.bound;
        os << ',' << r.n_sd << ',' << r.sigma << ',' << r.v_r << ',';
        if (!std::isnan(r.vprime_r)) os << r.vprime_r;
        os << '\n';
    }
    return os.str();
}

// Aligned text table in the benchmark layout: one row per variant with SGM
// time, gap, relative primal bound and S/A/T.
inline std::string summary_table(const std::vector<BenchSummaryRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(12) << "set" << std::setw(8) << "radius" << std::setw(8)
       << "variant" << std::right << std::setw(10) << "time" << std::setw(10) << "sigma%"
       << std::setw(10) << "v_r%" << std::setw(12) << "S/A/T" << '\n';
    for (const auto& r : rows) {
        std::ostringstream sat;
        sat << r.solved << '/' << r.affected << '/' << r.total;
        os << std::left << std::setw(12) << r.set_name << std::setw(8)
           << radius_policy_name(r.radius) << std::setw(8) << variant_name(r.variant)
           << std::right << std::fixed << std::setprecision(1) << std::setw(10) << r.sgm_time
           << std::setw(10) << 100.0 * r.sgm_sigma << std::setw(10) << 100.0 * r.sgm_vr
           << std::setw(12) << sat.str() << '\n';
        os.unsetf(std::ios::fixed);
    }
    return os.str();
}

}  // namespace netcover
