#include <doctest.h>

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rentwist::cli;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rentwist");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s, const std::string& prefix) {
    int n = 0;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        if (line.rfind(prefix, 0) == 0) ++n;
    return n;
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("grid parsing") {
    const auto g = parse_grid("0.1:0.9:5");
    CHECK(g.points().size() == 5);
    CHECK(g.points().front() == doctest::Approx(0.1));
    CHECK(g.points().back() == doctest::Approx(0.9));
    CHECK(parse_grid("0.2:0.8:0").points().empty());
    CHECK(parse_grid("0.5:0.7:1").points() == std::vector<double>{0.5});
    CHECK_THROWS(parse_grid("0.1:0.9"));
    CHECK_THROWS(parse_grid("0.1:0.9:x"));
    CHECK_THROWS(parse_grid("0.1;0.9;3"));
    CHECK_THROWS(parse_grid("0.1:0.9:-2"));
}

TEST_CASE("every selftest passes") {
    for (const char* sub : {"blocks", "monodromy", "correlator", "lattice", "ope", "torus", "ward"}) {
        const auto r = run_cli({sub, "--selftest"});
        CHECK_MESSAGE(r.code == kPass, sub << "\n" << r.out << r.err);
        CHECK(count_lines(r.out, "PASS ") >= 1);
        CHECK(count_lines(r.out, "FAIL ") == 0);
    }
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli({}).code == kUsage);
    CHECK(run_cli({"frobnicate"}).code == kUsage);
    CHECK(run_cli({"blocks", "--grid", "0.1:0.9:x"}).code == kUsage);
    CHECK(run_cli({"blocks", "--grid", "0:0.5:3"}).code == kUsage);
    CHECK(run_cli({"blocks", "--model", "nope"}).code == kUsage);
    CHECK(run_cli({"lattice", "--L", "7"}).code == kUsage);
    CHECK(run_cli({"lattice", "--q", "1", "--bare"}).code == kUsage);
    CHECK(run_cli({"lattice", "--k", "5"}).code == kUsage);
    CHECK(run_cli({"lattice", "--state", "excited", "--L", "6"}).code == kUsage);
    CHECK(run_cli({"ward", "--x", "1.5"}).code == kUsage);
    CHECK(run_cli({"compare", "--lattice", "/nonexistent/file.csv"}).code == kUsage);
}

TEST_CASE("degenerate parameters exit with code 3") {
    const auto r = run_cli({"correlator", "--model", "mm_n2_phi21(1/2)", "--grid", "0.5:0.5:1"});
    CHECK(r.code == kDegenerate);
    CHECK(r.err.find("degeneracy") != std::string::npos);
}

TEST_CASE("tolerance failures exit with code 4") {
    const auto path = temp_file("rentwist_cli_lattice.csv");
    REQUIRE(run_cli({"lattice", "--L", "10", "--q", "1", "--out", path.string()}).code == kPass);
    CHECK(run_cli({"compare", "--lattice", path.string(), "--model", "yl1int_gs"}).code == kPass);
    const auto strict = run_cli({"compare", "--lattice", path.string(), "--model", "yl1int_gs", "--tol", "1e-6"});
    CHECK(strict.code == kTolerance);
    CHECK(count_lines(strict.err, "FAIL compare.rms") == 1);
    std::filesystem::remove(path);
}

TEST_CASE("block CSV output") {
    const auto empty = run_cli({"blocks", "--model", "yl1int_gs", "--grid", "0.2:0.8:0"});
    CHECK(empty.code == kPass);
    CHECK(empty.out == "x,I_1,I_2,I_3\n");
    const auto r = run_cli({"blocks", "--model", "ising2int_vac", "--grid", "0.2:0.8:4"});
    CHECK(r.code == kPass);
    CHECK(count_lines(r.out, "0.") == 4);
    const auto corr = run_cli({"correlator", "--model", "yl2int_vac", "--grid", "0.3:0.7:3"});
    CHECK(corr.code == kPass);
    CHECK(corr.out.rfind("x,G_channel0,G_channel1,closed_form\n", 0) == 0);
}

TEST_CASE("lattice CSV output and file destination") {
    const auto path = temp_file("rentwist_cli_out.csv");
    const auto r = run_cli({"lattice", "--L", "6", "--m", "4", "--k", "3", "--bare", "--out", path.string()});
    CHECK(r.code == kPass);
    CHECK(r.out.empty());
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    CHECK(header == "L,ell,N,q_or_bare,trace_re,trace_im,entropy_re,entropy_im,rescaled");
    std::filesystem::remove(path);
}

TEST_CASE("configuration file values yield to explicit flags") {
    const auto path = temp_file("rentwist_cli.ini");
    {
        std::ofstream f(path);
        f << "[blocks]\nmodel=yl1int_vac\ngrid=0.2:0.8:3\n";
    }
    const auto from_file = run_cli({"--config", path.string(), "blocks"});
    CHECK(from_file.code == kPass);
    CHECK(from_file.out.rfind("x,I_1,I_2\n", 0) == 0);
    CHECK(count_lines(from_file.out, "0.") == 3);
    const auto override_grid = run_cli({"--config", path.string(), "blocks", "--grid", "0.3:0.4:2"});
    CHECK(count_lines(override_grid.out, "0.") == 2);
    std::filesystem::remove(path);
}

TEST_CASE("monodromy report") {
    const auto r = run_cli({"monodromy", "--model", "yl1int_gs"});
    CHECK(r.code == kPass);
    CHECK(r.out.find("X -19.2813 30.6594 0.211121") != std::string::npos);
    CHECK(r.out.find("Y 1 20.2276 -9.64063") != std::string::npos);
}

TEST_CASE("ward prints the coefficient vector") {
    const auto r = run_cli({"ward", "--x", "0.3"});
    CHECK(r.code == kPass);
    CHECK(r.out.rfind("d 0.3 -1.3 1", 0) == 0);
}
