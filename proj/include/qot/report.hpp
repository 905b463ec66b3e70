#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "qot/linalg.hpp"

namespace qot {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Two-sided estimate of a supremum. lower is achieved by the witness; upper may be +inf.
struct CostReport {
    double lower = 0;
    double upper = kInf;
    Matrix witness;
    std::string lower_method = "ascent-lower";   // exact | closed-form | ascent-lower | sample-max
    std::string upper_method = "theory-upper";
    double gap = 0;                              // estimator stagnation gap (relative)
    std::uint64_t seed = 0;
    std::vector<std::string> notes;
    std::vector<Matrix> pool;  // ascent endpoints, kept for matched re-evaluation
};

/// Finite doubles as numbers, infinities as the strings "inf" / "-inf".
nlohmann::json number_json(double v);
nlohmann::json tagged(double v, const std::string& method);
nlohmann::json report_to_json(const CostReport& r, bool with_witness = false);

}  // namespace qot
