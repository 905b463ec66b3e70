#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qot::cli {

struct RunConfig {
    std::string command;

    std::string channel;
    std::string channel2;          // verify-cost-props
    std::string resource = "pauli";
    std::string kind = "linf";
    std::string group;
    std::string rho;               // wasserstein inputs: basis:d:k, mixed:d or a matrix JSON path
    std::string sigma;
    std::string suite;
    std::string mode = "trace";    // mixing: trace | return | cost

    std::uint64_t seed = 0;
    int restarts = 200;
    int iterations = 500;
    int amplification = 1;
    int samples = 0;               // 0 picks the command's default
    int cap = 10000;
    double eps = 0.01;
    bool via_states = false;       // cost / lip: also report the state-side estimate
    bool amplified = false;        // mixing --mode trace: cb-type estimate
    std::map<std::string, double> tolerances;
    std::string format = "json";   // cc-verify emits csv
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitVerify = 2;

/// Commands understood by run().
const std::vector<std::string>& commands();

/// Runs one command. Reports go to out (JSON lines, final summary last); errors to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace qot::cli
