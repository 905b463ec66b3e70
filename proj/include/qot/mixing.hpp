#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qot/ascent.hpp"
#include "qot/channel.hpp"
#include "qot/seminorm.hpp"

namespace qot {

struct MixingOptions {
    int cap = 10000;
    int samples = 64;        // pure-state candidates per run
    int refine_steps = 5;    // alternation steps on the best candidate, per iterate
    bool amplified = false;  // search id_d (x) Phi^n over entangled inputs (cb-type estimate)
    std::uint64_t seed = 0;
};

struct MixingReport {
    int time = -1;              // first n meeting the criterion; -1 when none up to the cap
    bool cap_exceeded = false;
    bool stationary = false;    // iterates stopped changing before the criterion was met
    std::vector<double> trace;  // per-step statistic (distance, cost, ...)
    std::string method;
};

/// First n with sup_rho ||Phi^n(rho) - 1/d||_1 <= eps (unital channels).
MixingReport trace_mixing_time(const QuantumChannel& channel, double eps, const MixingOptions& opts = {});

/// First n with (1 - eps) E <=cp Phi^n <=cp (1 + eps) E.
MixingReport return_time(const QuantumChannel& channel, const ConditionalExpectation& e, double eps,
                         int cap = 10000);

struct CostMixingReport {
    MixingReport mixing;
    double kappa = 0;
};

/// First n with Cost((Phi^*)^n) >= (1 - eps) kappa, with kappa and per-step costs evaluated on a
/// shared pool of ascent witnesses (same seed and budget for every ascent).
CostMixingReport cost_mixing_time(const QuantumChannel& channel, const SeminormSpec& spec, double eps,
                                  int cap, const AscentOptions& opts);

struct BridgeReport {
    double cost = 0;
    double lip = 0;
    double kappa = 0;
    double rhs = 0;        // (1 - lip) kappa
    double slack = 0;      // cost - rhs
    bool holds = false;    // cost >= rhs - 0.02 kappa
    std::string lip_method;
};

/// Cost(Phi^*) >= (1 - Lip(Phi^*)) kappa, assuming Phi^* E = E Phi^* = E.
BridgeReport lip_cost_bridge_check(const QuantumChannel& channel, const SeminormSpec& spec,
                                   const AscentOptions& opts);

}  // namespace qot
