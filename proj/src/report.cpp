#include "qot/report.hpp"

#include <cmath>

namespace qot {

nlohmann::json number_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::json tagged(double v, const std::string& method) {
    return {{"value", number_json(v)}, {"method", method}};
}

nlohmann::json report_to_json(const CostReport& r, bool with_witness) {
    nlohmann::json j = {{"lower", tagged(r.lower, r.lower_method)},
                        {"upper", tagged(r.upper, r.upper_method)},
                        {"gap", r.gap},
                        {"seed", r.seed}};
    if (!r.notes.empty()) j["notes"] = r.notes;
    if (with_witness && r.witness.size() > 0) j["witness"] = matrix_to_json(r.witness);
    return j;
}

}  // namespace qot
