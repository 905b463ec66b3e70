#include "qot/seminorm.hpp"

#include <algorithm>
#include <cmath>

#include "qot/channel.hpp"
#include "qot/errors.hpp"

namespace qot {

void ResourceSet::validate() const {
    if (elements.empty()) throw DomainError("resource set is empty");
    if (!labels.empty() && labels.size() != elements.size())
        throw InputError("resource field 'labels' has " + std::to_string(labels.size()) +
                         " entries for " + std::to_string(elements.size()) + " elements");
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (elements[i].rows() != dim || elements[i].cols() != dim)
            throw DimensionError("resource element " + std::to_string(i) + " is " +
                                 std::to_string(elements[i].rows()) + "x" +
                                 std::to_string(elements[i].cols()) + ", resource 'dim' is " +
                                 std::to_string(dim));
}

double ResourceSet::sup_norm() const {
    double m = 0;
    for (const auto& s : elements) m = std::max(m, op_norm(s));
    return m;
}

ResourceSet pauli_resources() { return {2, {pauli(1), pauli(2), pauli(3)}, {"sx", "sy", "sz"}}; }

ResourceSet pauli_xy_resources() { return {2, {pauli(1), pauli(2)}, {"sx", "sy"}}; }

ResourceSet single_resource(const Matrix& s, const std::string& label) {
    ResourceSet r{static_cast<int>(s.rows()), {s}, {label}};
    r.validate();
    return r;
}

ResourceSet join(const ResourceSet& a, const ResourceSet& b) {
    ResourceSet r;
    r.dim = a.dim * b.dim;
    for (std::size_t i = 0; i < a.elements.size(); ++i) {
        r.elements.push_back(tensor(a.elements[i], identity(b.dim)));
        r.labels.push_back((i < a.labels.size() ? a.labels[i] : "s" + std::to_string(i)) + "(x)1");
    }
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
        r.elements.push_back(tensor(identity(a.dim), b.elements[i]));
        r.labels.push_back("1(x)" + (i < b.labels.size() ? b.labels[i] : "t" + std::to_string(i)));
    }
    return r;
}

std::vector<Matrix> SeminormSpec::effective_elements() const {
    if (amplification < 1) throw DomainError("amplification must be >= 1");
    std::vector<Matrix> out;
    for (const auto& s : resource.elements)
        out.push_back(amplification == 1 ? s : tensor(identity(amplification), s));
    return out;
}

double seminorm(const SeminormSpec& spec, const Matrix& x) { return seminorm(spec, x, nullptr); }

double seminorm(const SeminormSpec& spec, const Matrix& x, Matrix* grad) {
    const int n = spec.dim();
    if (x.rows() != n || x.cols() != n)
        throw DimensionError("seminorm expects a " + std::to_string(n) + "x" + std::to_string(n) +
                             " matrix, got " + std::to_string(x.rows()) + "x" +
                             std::to_string(x.cols()));
    const auto elems = spec.effective_elements();
    // Adjoint of X -> sX - Xs under the HS pairing is Y -> s^dagger Y - Y s^dagger.
    auto adj = [](const Matrix& s, const Matrix& y) -> Matrix {
        return s.adjoint() * y - y * s.adjoint();
    };
    if (spec.kind == SeminormKind::Linf) {
        double best = -1;
        TopSingular best_t;
        std::size_t arg = 0;
        for (std::size_t k = 0; k < elems.size(); ++k) {
            Matrix c = elems[k] * x - x * elems[k];
            if (grad) {
                TopSingular t = top_singular(c);
                if (t.value > best) {
                    best = t.value;
                    best_t = std::move(t);
                    arg = k;
                }
            } else {
                best = std::max(best, op_norm(c));
            }
        }
        if (grad) *grad = hermitian_part(adj(elems[arg], best_t.left * best_t.right.adjoint()));
        return std::max(0.0, best);
    }
    std::vector<Matrix> cs;
    Matrix q = Matrix::Zero(n, n);
    for (const auto& s : elems) {
        cs.push_back(s * x - x * s);
        q += cs.back().adjoint() * cs.back();
    }
    auto e = eig_hermitian(HermitianMatrix::from_rounded(q));
    const double lam = std::max(0.0, e.values(n - 1));
    const double value = std::sqrt(lam);
    if (grad) {
        grad->setZero(n, n);
        if (value > 0) {
            const Vector w = e.vectors.col(n - 1);
            const Matrix ww = w * w.adjoint();
            for (std::size_t k = 0; k < elems.size(); ++k) *grad += adj(elems[k], cs[k] * ww);
            *grad = hermitian_part(*grad) / value;
        }
    }
    return value;
}

double group_seminorm(const FiniteGroupTable& g, const std::vector<double>& f) {
    if (static_cast<int>(f.size()) != g.order())
        throw DimensionError("group function has " + std::to_string(f.size()) +
                             " values, group order is " + std::to_string(g.order()));
    double m = 0;
    for (int s : g.generators())
        for (int h = 0; h < g.order(); ++h) m = std::max(m, std::abs(f[g.mul(s, h)] - f[h]));
    return m;
}

nlohmann::json resource_to_json(const ResourceSet& r) {
    nlohmann::json el = nlohmann::json::array();
    for (const auto& s : r.elements) el.push_back(matrix_to_json(s));
    return {{"dim", r.dim}, {"elements", el}, {"labels", r.labels}};
}

ResourceSet resource_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("elements"))
        throw InputError("resource JSON must have fields 'dim' and 'elements'");
    if (!j["dim"].is_number_integer()) throw InputError("resource JSON field 'dim' must be an integer");
    if (!j["elements"].is_array()) throw InputError("resource JSON field 'elements' must be an array");
    ResourceSet r;
    r.dim = j["dim"].get<int>();
    for (const auto& m : j["elements"]) r.elements.push_back(matrix_from_json(m));
    if (j.contains("labels")) {
        if (!j["labels"].is_array()) throw InputError("resource JSON field 'labels' must be an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_string()) throw InputError("resource JSON field 'labels' must hold strings");
            r.labels.push_back(l.get<std::string>());
        }
    }
    r.validate();
    return r;
}

ResourceSet parse_resource_spec(const std::string& spec) {
    if (spec == "pauli") return pauli_resources();
    if (spec == "pauli-xy") return pauli_xy_resources();
    if (spec.rfind("single:", 0) == 0)
        return single_resource(matrix_from_json(read_json_file(spec.substr(7))), "s");
    if (spec.empty()) throw InputError("empty resource spec");
    return resource_from_json(read_json_file(spec));
}

std::string kind_name(SeminormKind k) { return k == SeminormKind::Linf ? "linf" : "l2"; }

SeminormKind parse_kind(const std::string& s) {
    if (s == "linf" || s == "Linf" || s == "inf") return SeminormKind::Linf;
    if (s == "l2" || s == "L2") return SeminormKind::L2;
    throw InputError("seminorm kind must be 'linf' or 'l2', got '" + s + "'");
}

}  // namespace qot
