// netcover: continuous set covering on networks.
//
// Subcommands: gen, preprocess, covers, build, solve, verify, bench.
// Exit codes: 0 ok, 1 infeasible / not a cover, 2 usage, 3 backend failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "netcover/jsonio.hpp"
#include "netcover/netcover.hpp"

namespace fs = std::filesystem;
using namespace netcover;

namespace {

int log_level() {
    const char* env = std::getenv("NETCOVER_LOG");
    if (!env) return 1;
    std::string s = env;
    if (s == "quiet" || s == "error") return 0;
    if (s == "debug") return 2;
    return 1;
}

void info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "netcover: " << msg << "\n";
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

CoverData cover_data_from_json(const json& j, const Network& net) {
    CoverData data;
    data.delta = j.at("delta").get<double>();
    const int n = net.node_count();
    data.per_node.resize(n);
    for (NodeId v = 0; v < n; ++v) {
        auto& r = data.per_node[v];
        r.source = v;
        r.dist.assign(n, kInf);
        r.nodes = j.at("node_potential_nodes").at(v).get<std::vector<NodeId>>();
        r.edges = j.at("node_potential_edges").at(v).get<std::vector<EdgeId>>();
        r.complete = j.at("node_complete_edges").at(v).get<std::vector<EdgeId>>();
    }
    for (const auto& row : j.at("dist"))
        data.per_node[row.at(0).get<NodeId>()].dist[row.at(1).get<NodeId>()] =
            row.at(2).get<double>();
    data.edge_complete_nodes = j.at("edge_complete_nodes").get<std::vector<std::vector<NodeId>>>();
    data.edge_complete_edges = j.at("edge_complete_edges").get<std::vector<std::vector<EdgeId>>>();
    data.node_partial_nodes = j.at("node_partial_nodes").get<std::vector<std::vector<NodeId>>>();
    data.node_partial_edges = j.at("node_partial_edges").get<std::vector<std::vector<EdgeId>>>();
    data.node_partial_edge_ends.resize(n);
    for (NodeId v = 0; v < n; ++v)
        for (const auto& pair : j.at("node_partial_edge_ends").at(v))
            data.node_partial_edge_ends[v].push_back(
                {pair.at(0).get<EdgeId>(), pair.at(1).get<std::string>()[0]});
    bool any_long = false;
    for (const auto& e : net.edges())
        any_long = any_long || e.length > 2.0 * data.delta * (1.0 + kTol);
    data.rule = any_long ? LengthRule::Reduced : LengthRule::Assumption1;
    return data;
}

struct SolveArgs {
    std::string graph;
    double delta = 0.0;
    std::string radius;
    std::string variant = "SF";
    double time_limit = 1800.0;
    double abs_gap = 1.0;
    int threads = 1;
    bool no_contract = false;
    std::string out_placement;
};

int cmd_solve(const SolveArgs& a) {
    Network net = load_network_file(a.graph);
    if ((a.delta > 0) == !a.radius.empty())
        throw CLI::ValidationError("solve", "give exactly one of --delta / --radius");
    double delta = a.delta > 0 ? a.delta : radius_for(net, parse_radius_policy(a.radius));
    Variant variant = parse_variant(a.variant);
    SolveOptions opt;
    opt.time_limit = a.time_limit;
    opt.abs_gap = a.abs_gap;
    opt.threads = a.threads;

    PipelineOutcome out = run_pipeline(net, delta, variant, opt, !a.no_contract);
    std::printf("variant %s delta %.9g\n", variant_name(variant), delta);
    std::printf("status %s\n", status_name(out.result.status));
    if (out.result.status == SolveStatus::Unread) {
        std::printf("backend failure\n");
        return 3;
    }
    if (out.result.has_bound) std::printf("bound %.9g\n", out.result.bound);
    std::printf("time %.3fs (preprocess %.3fs excluded)\n", out.result.wall_time,
                out.preprocess_seconds);
    if (!out.result.has_incumbent) {
        std::printf("no incumbent\n");
        return out.result.status == SolveStatus::Infeasible ? 1 : 3;
    }
    std::printf("objective %.9g\n", out.result.incumbent);
    std::printf("gap %.2f%%\n", 100.0 * out.result.gap());
    std::printf("facilities %zu (input coordinates)\n", out.points_original.size());
    for (const auto& p : out.points_original) {
        if (p.is_node())
            std::printf("  node %d\n", p.node);
        else
            std::printf("  edge %d offset %.9g\n", p.edge, p.offset);
    }
    std::printf("verification %s\n", out.verification.ok ? "PASS" : "FAIL");
    if (!a.out_placement.empty()) {
        Placement orig;
        orig.points = out.points_original;
        orig.source_variant = variant;
        orig.objective_claimed = out.placement.objective_claimed;
        write_text(a.out_placement, placement_to_json(orig).dump(2) + "\n");
        info("placement written to " + a.out_placement);
    }
    return out.verification.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continuous set covering on networks"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a random connected instance");
    int gen_n = 10;
    double gen_p = 0.3;
    std::uint64_t gen_seed = 1;
    std::string gen_out, gen_family, gen_outdir;
    gen->add_option("--n", gen_n, "node count");
    gen->add_option("--p", gen_p, "edge probability");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--out", gen_out, "output graph file");
    gen->add_option("--family", gen_family, "generate a whole set: random_A or random_B");
    gen->add_option("--out-dir", gen_outdir, "output directory for --family");

    // preprocess
    auto* prep = app.add_subcommand("preprocess", "transform a network");
    std::string prep_graph, prep_mode = "assumption", prep_out, prep_report;
    double prep_delta = 0.0;
    prep->add_option("--graph", prep_graph, "input graph file")->required();
    prep->add_option("--delta", prep_delta, "covering radius");
    prep->add_option("--mode", prep_mode, "assumption | reduced | contract");
    prep->add_option("--out", prep_out, "output graph file")->required();
    prep->add_option("--report", prep_report, "output JSON report");

    // covers
    auto* cov = app.add_subcommand("covers", "compute cover sets");
    std::string cov_graph, cov_out, cov_rule = "assumption";
    double cov_delta = 0.0;
    cov->add_option("--graph", cov_graph)->required();
    cov->add_option("--delta", cov_delta)->required();
    cov->add_option("--out", cov_out, "covers JSON output")->required();
    cov->add_option("--rule", cov_rule, "assumption | reduced");

    // build
    auto* build = app.add_subcommand("build", "emit an LP model file");
    std::string b_graph, b_variant = "SF", b_out, b_covers;
    double b_delta = 0.0;
    build->add_option("--graph", b_graph)->required();
    build->add_option("--delta", b_delta)->required();
    build->add_option("--variant", b_variant, "F0 | F | SF | RF | SFD");
    build->add_option("--out", b_out, "LP output file")->required();
    build->add_option("--covers", b_covers, "precomputed covers JSON");

    // solve
    auto* slv = app.add_subcommand("solve", "preprocess, build, solve, verify");
    SolveArgs sa;
    slv->add_option("--graph", sa.graph)->required();
    slv->add_option("--delta", sa.delta, "covering radius");
    slv->add_option("--radius", sa.radius, "small | large (from average edge length)");
    slv->add_option("--variant", sa.variant, "F0 | F | SF | RF | SFD");
    slv->add_option("--time-limit", sa.time_limit, "seconds");
    slv->add_option("--abs-gap", sa.abs_gap, "absolute MIP gap");
    slv->add_option("--threads", sa.threads, "solver threads");
    slv->add_flag("--no-contract", sa.no_contract, "skip degree-two contraction");
    slv->add_option("--out-placement", sa.out_placement, "write placement JSON");

    // verify
    auto* ver = app.add_subcommand("verify", "check a placement file");
    std::string v_graph, v_placement;
    double v_delta = 0.0;
    ver->add_option("--graph", v_graph)->required();
    ver->add_option("--delta", v_delta)->required();
    ver->add_option("--placement", v_placement, "placement JSON")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "run a variant x instance grid");
    std::string be_set, be_variants = "SF,RF,SFD", be_out = "results";
    BenchOptions be_opt;
    bench->add_option("--set", be_set, "instance set JSON")->required();
    bench->add_option("--variants", be_variants, "comma separated variant list");
    bench->add_option("--time-limit", be_opt.time_limit, "seconds per job");
    bench->add_option("--abs-gap", be_opt.abs_gap);
    bench->add_option("--workers", be_opt.workers, "parallel solves");
    bench->add_option("--out", be_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) {
            if (!gen_family.empty()) {
                if (gen_outdir.empty()) throw std::runtime_error("--family needs --out-dir");
                fs::create_directories(gen_outdir);
                for (const char* policy : {"small", "large"}) {
                    InstanceSet set =
                        gen_family == "random_A"
                            ? make_random_a(parse_radius_policy(policy), gen_seed)
                            : make_random_b(parse_radius_policy(policy), gen_seed);
                    json instances = json::array();
                    for (size_t i = 0; i < set.networks.size(); ++i) {
                        std::string file = gen_outdir + "/" + set.specs[i].name + ".txt";
                        save_network_file(set.networks[i], file);
                        instances.push_back({{"graph", file},
                                             {"name", set.specs[i].name},
                                             {"n", set.specs[i].n},
                                             {"p", set.specs[i].p}});
                    }
                    json setj{{"name", set.name},
                              {"radius_policy", policy},
                              {"instances", instances}};
                    write_text(gen_outdir + "/set_" + std::string(policy) + ".json",
                               setj.dump(2) + "\n");
                }
                info("instance set written to " + gen_outdir);
            } else {
                if (gen_out.empty()) throw std::runtime_error("--out required");
                save_network_file(gen_random(gen_n, gen_p, gen_seed), gen_out);
            }
            return 0;
        }

        if (prep->parsed()) {
            Network net = load_network_file(prep_graph);
            Network out_net = net;
            PreprocessReport rep;
            if (prep_mode == "assumption") {
                if (!(prep_delta > 0)) throw std::runtime_error("--delta required");
                std::tie(out_net, rep) = subdivide_for_assumption(net, prep_delta);
            } else if (prep_mode == "reduced") {
                if (!(prep_delta > 0)) throw std::runtime_error("--delta required");
                std::tie(out_net, rep) = subdivide_for_reduced(net, prep_delta);
            } else if (prep_mode == "contract") {
                std::tie(out_net, rep) = contract_degree_two(net);
            } else {
                throw std::runtime_error("unknown mode: " + prep_mode);
            }
            save_network_file(out_net, prep_out);
            if (!prep_report.empty())
                write_text(prep_report, report_to_json(rep).dump(2) + "\n");
            std::printf("nodes %d -> %d, edges %d -> %d\n", rep.original_nodes, rep.result_nodes,
                        rep.original_edges, rep.result_edges);
            return 0;
        }

        if (cov->parsed()) {
            Network net = load_network_file(cov_graph);
            LengthRule rule =
                cov_rule == "reduced" ? LengthRule::Reduced : LengthRule::Assumption1;
            CoverData data = process_network(net, cov_delta, rule);
            write_text(cov_out, cover_data_to_json(net, data).dump(2) + "\n");
            return 0;
        }

        if (build->parsed()) {
            Network net = load_network_file(b_graph);
            Variant variant = parse_variant(b_variant);
            ModelSpec model;
            if (variant == Variant::F0) {
                model = build_variant(net, b_delta, nullptr, variant);
            } else if (!b_covers.empty()) {
                std::ifstream in(b_covers);
                if (!in) throw std::runtime_error("cannot open " + b_covers);
                json j = json::parse(in);
                CoverData data = cover_data_from_json(j, net);
                if (std::abs(data.delta - b_delta) > 1e-12)
                    throw std::runtime_error("covers file was computed for a different delta");
                model = build_variant(net, b_delta, &data, variant);
            } else {
                LengthRule rule =
                    variant == Variant::RF ? LengthRule::Reduced : LengthRule::Assumption1;
                CoverData data = process_network(net, b_delta, rule);
                model = build_variant(net, b_delta, &data, variant);
            }
            std::ofstream out(b_out);
            if (!out) throw std::runtime_error("cannot write " + b_out);
            emit_lp(model, out);
            info("wrote " + b_out + " (" + std::to_string(model.variables().size()) +
                 " vars, " + std::to_string(model.constraints().size()) + " rows)");
            return 0;
        }

        if (slv->parsed()) return cmd_solve(sa);

        if (ver->parsed()) {
            Network net = load_network_file(v_graph);
            std::ifstream in(v_placement);
            if (!in) throw std::runtime_error("cannot open " + v_placement);
            Placement pl = placement_from_json(json::parse(in), net);
            auto [vnet, rep] = subdivide_for_assumption(net, v_delta);
            for (auto& p : pl.points) p = map_to_subdivided(net, vnet, rep, p);
            CoverCheck check = is_cover(vnet, v_delta, pl);
            if (check.ok) {
                std::printf("COVER: every point within delta of a facility\n");
                return 0;
            }
            PointOnNetwork src = map_to_source(
                net, vnet, rep,
                PointOnNetwork::on_edge(check.witness_edge,
                                        (check.uncovered_lo + check.uncovered_hi) / 2.0));
            std::printf("NOT A COVER\n");
            std::printf("witness edge %d uncovered (%.9g, %.9g)\n", check.witness_edge,
                        check.uncovered_lo, check.uncovered_hi);
            if (src.is_node())
                std::printf("witness midpoint (input coordinates): node %d\n", src.node);
            else
                std::printf("witness midpoint (input coordinates): edge %d offset %.9g\n",
                            src.edge, src.offset);
            return 1;
        }

        if (bench->parsed()) {
            std::ifstream in(be_set);
            if (!in) throw std::runtime_error("cannot open " + be_set);
            json setj = json::parse(in);
            InstanceSet set;
            set.name = setj.value("name", "set");
            set.policy = parse_radius_policy(setj.at("radius_policy").get<std::string>());
            for (const auto& item : setj.at("instances")) {
                std::string file = item.at("graph").get<std::string>();
                set.networks.push_back(load_network_file(file));
                InstanceSpec spec;
                spec.name = item.value("name", fs::path(file).stem().string());
                spec.n = set.networks.back().node_count();
                spec.p = item.value("p", 0.0);
                set.specs.push_back(spec);
            }
            std::vector<Variant> variants;
            std::stringstream ss(be_variants);
            std::string tok;
            while (std::getline(ss, tok, ',')) variants.push_back(parse_variant(tok));
            fs::create_directories(be_out);
            BenchResults res = run_grid(set, variants, be_opt);
            write_text(be_out + "/results.csv", records_to_csv(res.records));
            write_text(be_out + "/summary.txt", summary_table(res.summary));
            write_text(be_out + "/manifest.json",
                       bench_manifest(set, variants, be_opt).dump(2) + "\n");
            std::cout << summary_table(res.summary);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
