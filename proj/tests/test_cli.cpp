#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netcover/graph.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* env = std::getenv("NETCOVER_CLI");
    REQUIRE(env != nullptr);
    return env;
}

struct RunResult {
    int code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path log = fs::temp_directory_path() / ("netcover_cli_" + std::to_string(counter++));
    std::string cmd = cli_path() + " " + args + " > " + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream buf;
    buf << in.rdbuf();
    fs::remove(log);
    return {WEXITSTATUS(rc), buf.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / name;
}

void write_path8(const fs::path& p) {
    std::ofstream out(p);
    out << "8 7\n";
    for (int i = 0; i < 7; ++i) out << i << ' ' << i + 1 << " 1.0\n";
}

}  // namespace

TEST_CASE("gen is deterministic from the command line", "[cli]") {
    auto f1 = temp_file("cli_gen1.txt");
    auto f2 = temp_file("cli_gen2.txt");
    REQUIRE(run_cli("gen --n 10 --p 0.3 --seed 1 --out " + f1.string()).code == 0);
    REQUIRE(run_cli("gen --n 10 --p 0.3 --seed 1 --out " + f2.string()).code == 0);
    CHECK(slurp(f1) == slurp(f2));
    netcover::Network g = netcover::load_network_file(f1.string());
    CHECK(g.node_count() == 10);
    fs::remove(f1);
    fs::remove(f2);
}

TEST_CASE("solve pipeline prints the path-8 optimum and verifies", "[cli]") {
    auto graph = temp_file("cli_path8.txt");
    write_path8(graph);
    auto placement = temp_file("cli_path8_placement.json");
    auto r = run_cli("solve --graph " + graph.string() +
                     " --delta 1.2 --variant SF --time-limit 120 --out-placement " +
                     placement.string());
    INFO(r.output);
    CHECK(r.code == 0);
    CHECK(r.output.find("objective 3") != std::string::npos);
    CHECK(r.output.find("verification PASS") != std::string::npos);

    // the emitted placement verifies through the verify subcommand
    auto v = run_cli("verify --graph " + graph.string() + " --delta 1.2 --placement " +
                     placement.string());
    INFO(v.output);
    CHECK(v.code == 0);
    CHECK(v.output.find("COVER") != std::string::npos);
    fs::remove(graph);
    fs::remove(placement);
}

TEST_CASE("verify rejects a non-cover with a witness", "[cli]") {
    auto graph = temp_file("cli_edge.txt");
    {
        std::ofstream out(graph);
        out << "2 1\n0 1 1.0\n";
    }
    auto placement = temp_file("cli_bad_placement.json");
    {
        std::ofstream out(placement);
        out << "[{\"edge\": 0, \"offset\": 0.0}]\n";
    }
    auto r = run_cli("verify --graph " + graph.string() + " --delta 0.4 --placement " +
                     placement.string());
    CHECK(r.code == 1);
    CHECK(r.output.find("NOT A COVER") != std::string::npos);
    // the witness midpoint is reported in input coordinates on the lone edge
    CHECK(r.output.find("witness midpoint (input coordinates): edge 0") != std::string::npos);
    fs::remove(graph);
    fs::remove(placement);
}

TEST_CASE("preprocess and build produce the expected artifacts", "[cli]") {
    auto graph = temp_file("cli_long.txt");
    {
        std::ofstream out(graph);
        out << "2 1\n0 1 3.5\n";
    }
    auto outg = temp_file("cli_long_sub.txt");
    auto rep = temp_file("cli_long_rep.json");
    auto r = run_cli("preprocess --graph " + graph.string() + " --delta 1 --mode assumption" +
                     " --out " + outg.string() + " --report " + rep.string());
    CHECK(r.code == 0);
    netcover::Network sub = netcover::load_network_file(outg.string());
    CHECK(sub.edge_count() == 4);
    CHECK(slurp(rep).find("\"subdivision\"") != std::string::npos);

    auto lp = temp_file("cli_model.lp");
    auto b = run_cli("build --graph " + outg.string() + " --delta 1 --variant SF --out " +
                     lp.string());
    CHECK(b.code == 0);
    std::string text = slurp(lp);
    CHECK(text.rfind("\\ netcover SF", 0) == 0);
    CHECK(text.find("End") != std::string::npos);

    // covers dump parses as JSON-ish text with the set names in it
    auto cov = temp_file("cli_covers.json");
    auto c = run_cli("covers --graph " + outg.string() + " --delta 1 --out " + cov.string());
    CHECK(c.code == 0);
    CHECK(slurp(cov).find("edge_complete_edges") != std::string::npos);

    // build can consume the dumped covers
    auto lp2 = temp_file("cli_model2.lp");
    auto b2 = run_cli("build --graph " + outg.string() + " --delta 1 --variant SF --covers " +
                      cov.string() + " --out " + lp2.string());
    CHECK(b2.code == 0);
    CHECK(slurp(lp2) == text);

    for (auto p : {graph, outg, rep, lp, cov, lp2}) fs::remove(p);
}

TEST_CASE("bench writes csv, summary and manifest", "[cli]") {
    fs::path dir = fs::temp_directory_path() / "netcover_cli_bench";
    fs::create_directories(dir);
    fs::path g1 = dir / "p8.txt";
    write_path8(g1);
    fs::path g2 = dir / "k3.txt";
    {
        std::ofstream out(g2);
        out << "3 3\n0 1 1.0\n0 2 1.0\n1 2 1.0\n";
    }
    fs::path setj = dir / "set.json";
    {
        std::ofstream out(setj);
        out << "{\"name\":\"tiny\",\"radius_policy\":\"large\",\"instances\":["
            << "{\"graph\":\"" << g1.string() << "\",\"name\":\"p8\"},"
            << "{\"graph\":\"" << g2.string() << "\",\"name\":\"k3\"}]}\n";
    }
    auto r = run_cli("bench --set " + setj.string() +
                     " --variants SFD --time-limit 60 --workers 2 --out " +
                     (dir / "out").string());
    INFO(r.output);
    CHECK(r.code == 0);
    CHECK(r.output.find("2/2/2") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "results.csv"));
    CHECK(fs::exists(dir / "out" / "summary.txt"));
    CHECK(fs::exists(dir / "out" / "manifest.json"));
    CHECK(slurp(dir / "out" / "results.csv").find("p8,tiny,large,SFD") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("gen --family writes the instance sets", "[cli]") {
    fs::path dir = fs::temp_directory_path() / "netcover_cli_family";
    auto r = run_cli("gen --family random_A --seed 7 --out-dir " + dir.string());
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "set_small.json"));
    CHECK(fs::exists(dir / "set_large.json"));
    int graphs = 0;
    for (const auto& f : fs::directory_iterator(dir))
        if (f.path().extension() == ".txt") ++graphs;
    CHECK(graphs == 12);
    fs::remove_all(dir);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
    CHECK(run_cli("bogus-subcommand").code == 2);
    CHECK(run_cli("solve --graph /nonexistent.txt --delta 1 --radius small").code != 0);
    auto graph = temp_file("cli_two.txt");
    {
        std::ofstream out(graph);
        out << "2 1\n0 1 1.0\n";
    }
    // both delta and radius given
    CHECK(run_cli("solve --graph " + graph.string() + " --delta 1 --radius small").code == 2);
    fs::remove(graph);
}
