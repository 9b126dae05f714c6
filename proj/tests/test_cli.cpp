#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dunkl/cli.hpp"
#include "dunkl/kernels.hpp"

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dunkl::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("help and usage errors") {
    REQUIRE(run_cli({"--help"}).code == 0);
    REQUIRE(run_cli({}).code == 2);
    REQUIRE(run_cli({"frobnicate"}).code == 2);

    // Missing required flags.
    const CliResult missing = run_cli({"eval-kernel", "--group", "I2"});
    REQUIRE(missing.code == 2);
    REQUIRE(missing.err.find("error") != std::string::npos);

    // Odd group takes exactly one multiplicity; even groups take two.
    REQUIRE(run_cli({"eval-kernel", "--group", "I3", "--kappa", "1,1", "--z", "0.1,0",
                     "--w", "0.2,0"})
                .code == 2);
    REQUIRE(run_cli({"eval-kernel", "--group", "I4", "--kappa", "1", "--z", "0.1,0",
                     "--w", "0.2,0"})
                .code == 2);
    REQUIRE(run_cli({"eval-kernel", "--group", "Q7", "--kappa", "1", "--z", "0.1,0",
                     "--w", "0.2,0"})
                .code == 2);

    // Malformed polynomial text surfaces as a usage error.
    REQUIRE(run_cli({"intertwine", "--group", "I2", "--kappa", "0.5,0.5", "--poly", "x7",
                     "--z", "1,0"})
                .code == 2);
}

TEST_CASE("eval-kernel prints the documented value") {
    const CliResult r = run_cli(
        {"eval-kernel", "--group", "I2", "--kappa", "0,0", "--z", "1,0", "--w", "1,0"});
    REQUIRE(r.code == 0);
    // 17 significant digits; the printed text parses back to exp(1) exactly.
    REQUIRE(std::stod(r.out) == std::exp(1.0));
    REQUIRE(r.out.find("2.718281828459045") == 0);
}

TEST_CASE("eval-kernel bessel flag and json schema") {
    const CliResult r = run_cli({"eval-kernel", "--group", "I4", "--kappa", "0.7,1.3",
                                 "--z", "0.8,0.2", "--w", "0.5,0.5", "--bessel", "--json"});
    REQUIRE(r.code == 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    REQUIRE(j.at("command") == "eval-kernel");
    REQUIRE(j.at("group") == "I4");
    REQUIRE(j.at("alpha") == 0.7);
    REQUIRE(j.at("beta") == 1.3);
    REQUIRE(j.at("method") == "generalized_bessel");
    REQUIRE(j.at("z").size() == 2);
    REQUIRE(j.at("w").size() == 2);
    REQUIRE(j.at("truncation").is_number_integer());
    REQUIRE(j.at("tolerances").contains("oracle_abs_err"));
    REQUIRE(j.at("abs_err").get<double>() < 1e-7);

    const double value = j.at("value").get<double>();
    const double direct = dunkl::generalized_bessel(dunkl::build_group(4, 0.7, 1.3),
                                                    {0.8, 0.2}, {0.5, 0.5});
    REQUIRE(value == direct);

    // Round trip: dump and reparse preserves the double exactly.
    const nlohmann::json again = nlohmann::json::parse(j.dump());
    REQUIRE(again.at("value").get<double>() == value);
}

TEST_CASE("intertwine prints value, oracle, and difference") {
    const CliResult r = run_cli({"intertwine", "--group", "I2", "--kappa", "0.5,0.5",
                                 "--poly", "x1", "--z", "1,0"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    double value = 0.0, oracle = 0.0, diff = 1.0;
    in >> value >> oracle >> diff;
    REQUIRE(value == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(oracle == Catch::Approx(0.5).epsilon(1e-12));
    REQUIRE(diff < 1e-12);
}

TEST_CASE("intertwine xu-line route") {
    const CliResult r = run_cli({"intertwine", "--group", "I3", "--kappa", "1.0",
                                 "--poly", "x1^2", "--z", "1,0", "--xu-line", "0",
                                 "--simplex-order", "16"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    double value = 0.0, oracle = 0.0, diff = 1.0;
    in >> value >> oracle >> diff;
    REQUIRE(diff < 1e-8);
}

TEST_CASE("laplace subcommand matches the library call") {
    const CliResult r = run_cli({"laplace", "--group", "I4", "--kappa", "0.6,1.1",
                                 "--z", "1,0.2", "--w", "0.5,0.4", "--s", "3"});
    REQUIRE(r.code == 0);
    const double direct = dunkl::dunkl_kernel_laplace(dunkl::build_group(4, 0.6, 1.1),
                                                      {1.0, 0.2}, {0.5, 0.4}, 3.0);
    REQUIRE(std::stod(r.out) == Catch::Approx(direct).epsilon(1e-15));

    // s below |z||w| is a usage error.
    REQUIRE(run_cli({"laplace", "--group", "I4", "--kappa", "0.6,1.1", "--z", "1,0.2",
                     "--w", "0.5,0.4", "--s", "0.1"})
                .code == 2);
}

TEST_CASE("table emits a stable CSV") {
    const std::vector<std::string> args = {
        "table", "--group", "I3",        "--kappa", "0.8",     "--z", "1,0",
        "--w",   "0.5,0.3", "--sweep",   "z.r=0:1:0.25",
        "--truncation", "30"};
    const CliResult first = run_cli(args);
    REQUIRE(first.code == 0);
    const auto lines = split_lines(first.out);
    REQUIRE(lines.size() == 6);  // header + 5 sweep rows
    REQUIRE(lines[0] == "group,alpha,beta,z1,z2,w1,w2,value,oracle,abs_err");
    for (size_t i = 1; i < lines.size(); ++i) {
        REQUIRE(std::count(lines[i].begin(), lines[i].end(), ',') == 9);
        REQUIRE(lines[i].find("I3") == 0);
    }

    // Bit-stable across runs.
    const CliResult second = run_cli(args);
    REQUIRE(second.out == first.out);

    // --out writes the same bytes to a file.
    const std::string path = "/tmp/dunkl_cli_table_test.csv";
    std::vector<std::string> file_args = args;
    file_args.push_back("--out");
    file_args.push_back(path);
    REQUIRE(run_cli(file_args).code == 0);
    std::ifstream in(path);
    std::stringstream body;
    body << in.rdbuf();
    REQUIRE(body.str() == first.out);
    std::remove(path.c_str());

    REQUIRE(run_cli({"table", "--group", "I3", "--kappa", "0.8", "--z", "1,0", "--w",
                     "0.5,0.3", "--sweep", "bogus=0:1:0.5"})
                .code == 2);
}

TEST_CASE("transform subcommand evaluates the gaussian profile") {
    const CliResult r = run_cli({"transform", "--group", "I2", "--kappa", "0,0",
                                 "--y", "0.5,0", "--input", "gaussian"});
    REQUIRE(r.code == 0);
    REQUIRE(std::stod(r.out) == Catch::Approx(std::exp(-0.125)).margin(1e-8));

    REQUIRE(run_cli({"transform", "--group", "I2", "--kappa", "0,0", "--y", "0.5,0",
                     "--input", "box"})
                .code == 2);
}

TEST_CASE("verify runs the core suite") {
    const CliResult r = run_cli({"verify", "--suite", "core", "--seed", "7"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(!lines.empty());
    for (const auto& line : lines) {
        REQUIRE(line.rfind("PASS ", 0) == 0);
    }
    REQUIRE(run_cli({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("config file sets defaults and flags override") {
    const std::string path = "/tmp/dunkl_cli_config_test.cfg";
    {
        std::ofstream cfg(path);
        cfg << "# comment line\n";
        cfg << "kernel_truncation = 12\n";
        cfg << "jacobi_order = 24\n";
    }
    const CliResult file_only = run_cli({"--config", path, "eval-kernel", "--group", "I2",
                                         "--kappa", "0.5,1.5", "--z", "0.4,0.1", "--w",
                                         "0.3,0.2", "--json"});
    REQUIRE(file_only.code == 0);
    const nlohmann::json j1 = nlohmann::json::parse(file_only.out);
    REQUIRE(j1.at("truncation") == 12);
    REQUIRE(j1.at("jacobi_order") == 24);

    const CliResult overridden = run_cli({"--config", path, "eval-kernel", "--group", "I2",
                                          "--kappa", "0.5,1.5", "--z", "0.4,0.1", "--w",
                                          "0.3,0.2", "--json", "--truncation", "33"});
    REQUIRE(overridden.code == 0);
    const nlohmann::json j2 = nlohmann::json::parse(overridden.out);
    REQUIRE(j2.at("truncation") == 33);
    REQUIRE(j2.at("jacobi_order") == 24);
    std::remove(path.c_str());

    {
        std::ofstream cfg(path);
        cfg << "no_such_key = 5\n";
    }
    REQUIRE(run_cli({"--config", path, "eval-kernel", "--group", "I2", "--kappa", "0.5,1.5",
                     "--z", "0.4,0.1", "--w", "0.3,0.2"})
                .code == 2);
    std::remove(path.c_str());
}
