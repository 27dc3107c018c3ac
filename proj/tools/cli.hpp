#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rentwist::cli {

enum ExitCode { kPass = 0, kUsage = 2, kDegenerate = 3, kTolerance = 4 };

struct Grid {
    double a = 0.0, b = 0.0;
    int n = 0;
    std::vector<double> points() const;
};
// "a:b:n" with n >= 0 evenly spaced points including both ends.
Grid parse_grid(const std::string& text);

struct RunConfig {
    std::string subcommand;
    std::string model = "yl1int_gs";
    std::string grid = "0.1:0.9:9";
    int L = 12, m = 4, k = 3, N = 2;
    std::optional<int> q;
    bool bare = false;
    std::string state = "ground";
    std::string out;
    std::string lattice_csv;
    double x = 0.3;
    double tol = 0.10;
    bool selftest = false;
    int threads = 1;
};

// Runs one invocation; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rentwist::cli
