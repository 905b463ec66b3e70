#pragma once

#include <string>
#include <vector>

#include "qot/group_table.hpp"
#include "qot/linalg.hpp"

namespace qot {

/// Finite list of d x d matrices whose commutators define a Lipschitz seminorm.
struct ResourceSet {
    int dim = 0;
    std::vector<Matrix> elements;
    std::vector<std::string> labels;

    void validate() const;
    double sup_norm() const;
};

ResourceSet pauli_resources();     // {sx, sy, sz}
ResourceSet pauli_xy_resources();  // {sx, sy}
ResourceSet single_resource(const Matrix& s, const std::string& label = "s");
/// S1 v S2 on M_d1 (x) M_d2: {s (x) 1} u {1 (x) t}.
ResourceSet join(const ResourceSet& a, const ResourceSet& b);

enum class SeminormKind { Linf, L2 };

struct SeminormSpec {
    ResourceSet resource;
    SeminormKind kind = SeminormKind::Linf;
    int amplification = 1;

    int dim() const { return resource.dim * amplification; }
    /// 1_n (x) s for every resource element.
    std::vector<Matrix> effective_elements() const;
};

/// Linf: max_s ||[1_n (x) s, X]||; L2: ||(sum_s C_s^dagger C_s)^(1/2)||.
double seminorm(const SeminormSpec& spec, const Matrix& x);
/// Same value; writes the Hermitian gradient H (dF = tr(H dX)) when grad is non-null.
double seminorm(const SeminormSpec& spec, const Matrix& x, Matrix* grad);

/// max_{s,g} |f(sg) - f(g)|
double group_seminorm(const FiniteGroupTable& g, const std::vector<double>& f);

nlohmann::json resource_to_json(const ResourceSet& r);
ResourceSet resource_from_json(const nlohmann::json& j);
/// "pauli", "pauli-xy", "single:file.json", or a path to a resource JSON file.
ResourceSet parse_resource_spec(const std::string& spec);

std::string kind_name(SeminormKind k);
SeminormKind parse_kind(const std::string& s);

}  // namespace qot
