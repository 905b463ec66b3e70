#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qot/linalg.hpp"

namespace qot {

/// Linear map on M_d stored as a d^2 x d^2 matrix acting on column-stacked vec(X).
class Superoperator {
public:
    Superoperator() = default;
    Superoperator(int dim, Matrix mat);

    static Superoperator identity(int dim);
    static Superoperator from_function(int dim, const std::function<Matrix(const Matrix&)>& f);
    /// X -> sum K X K^dagger
    static Superoperator from_kraus(const std::vector<Matrix>& kraus);

    int dim() const { return dim_; }
    const Matrix& matrix() const { return mat_; }

    Matrix apply(const Matrix& x) const;
    /// Hilbert-Schmidt adjoint.
    Superoperator adjoint() const;
    /// (*this) o inner
    Superoperator after(const Superoperator& inner) const;
    Superoperator power(int n) const;
    /// id_n (x) this, acting on M_n (x) M_d with the M_n factor first.
    Superoperator amplify(int n) const;
    /// Applies id_n (x) this to an (n d) x (n d) matrix without building the big superoperator.
    Matrix apply_amplified(const Matrix& x, int n) const;

    /// Choi matrix sum_ij E_ij (x) L(E_ij).
    Matrix choi() const;

    Superoperator operator+(const Superoperator& o) const;
    Superoperator operator-(const Superoperator& o) const;
    Superoperator operator*(double c) const;

private:
    int dim_ = 0;
    Matrix mat_;
};

Superoperator tensor(const Superoperator& a, const Superoperator& b);

/// Completely positive map given by Kraus operators. Schrodinger action rho -> sum K rho K^dagger,
/// Heisenberg action X -> sum K^dagger X K.
class QuantumChannel {
public:
    QuantumChannel() = default;
    explicit QuantumChannel(std::vector<Matrix> kraus);

    int dim() const { return dim_; }
    const std::vector<Matrix>& kraus() const { return kraus_; }
    bool trace_preserving() const { return tp_; }
    bool unital() const { return unital_; }

    Matrix heisenberg(const Matrix& x) const;
    Matrix schrodinger(const Matrix& rho) const;
    const Superoperator& schrodinger_superop() const { return schro_; }
    Superoperator heisenberg_superop() const { return schro_.adjoint(); }

private:
    int dim_ = 0;
    std::vector<Matrix> kraus_;
    bool tp_ = false;
    bool unital_ = false;
    Superoperator schro_;
};

/// Schrodinger composition: outer after inner.
QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner);
QuantumChannel tensor_channel(const QuantumChannel& a, const QuantumChannel& b);
/// id_n (x) phi
QuantumChannel amplify(const QuantumChannel& phi, int n);
/// t a + (1 - t) b as a Kraus family.
QuantumChannel convex_mix(const QuantumChannel& a, const QuantumChannel& b, double t);

QuantumChannel depolarizing(int d, double p);
QuantumChannel unitary_channel(const Matrix& u);
QuantumChannel replacer(const DensityMatrix& sigma);
QuantumChannel pauli_channel(double px, double py, double pz);
QuantumChannel identity_channel(int d);
/// Mixture of k Haar unitaries with random weights, blended with weight `laziness`
/// into the completely depolarizing map. Unital and trace preserving.
QuantumChannel random_unital_qubit_channel(Rng& rng, int k = 3, double laziness = 0.0);

/// Hilbert-Schmidt orthonormal Hermitian basis of {X in span(basis) : [s, X] = 0 for all s}.
/// basis must be HS-orthonormal Hermitian. If the identity lies in the span it comes first.
std::vector<Matrix> commutant_in_subspace(const std::vector<Matrix>& s,
                                          const std::vector<Matrix>& basis);
/// Commutant of s inside M_d.
std::vector<Matrix> commutant(const std::vector<Matrix>& s);

/// Trace-preserving conditional expectation: HS orthogonal projection onto span(basis).
class ConditionalExpectation {
public:
    ConditionalExpectation() = default;
    explicit ConditionalExpectation(std::vector<Matrix> basis);

    int dim() const { return dim_; }
    const std::vector<Matrix>& basis() const { return basis_; }
    Matrix apply(const Matrix& x) const;
    Superoperator superop() const;

private:
    int dim_ = 0;
    std::vector<Matrix> basis_;
};

ConditionalExpectation conditional_expectation(const std::vector<Matrix>& s);
/// E(X) = tr(X)/d 1
ConditionalExpectation trace_expectation(int d);

/// Block (H_i, K_i) dimensions of the fixed algebra sum B(H_i) (x) 1_{K_i}.
struct Block {
    int dim_h;
    int dim_k;
};

struct IndexReport {
    std::optional<double> index;     // closed form when blocks are given
    std::optional<double> cb_index;  // closed form when blocks are given
    double sampled_lower = 0;        // max over samples of the smallest admissible c
    int samples = 0;
    std::uint64_t seed = 0;
};

IndexReport index(const ConditionalExpectation& e, const std::optional<std::vector<Block>>& blocks,
                  int samples = 2000, std::uint64_t seed = 0);

Matrix choi(const Superoperator& map);
/// psi - phi is completely positive (Choi eigenvalues >= -tol).
bool is_cp_order(const Superoperator& phi, const Superoperator& psi, double tol = 1e-9);
double min_choi_eigenvalue(const Superoperator& map);

// JSON / spec strings ----------------------------------------------------

nlohmann::json channel_to_json(const QuantumChannel& c);
QuantumChannel channel_from_json(const nlohmann::json& j);
/// "depolarizing:d:p", "unitary:file.json", "replacer:file.json", "pauli:px:py:pz",
/// "identity:d", "random:seed[:laziness]" (random unital qubit channel), or a path to a channel
/// JSON file.
QuantumChannel parse_channel_spec(const std::string& spec);

nlohmann::json read_json_file(const std::string& path);

}  // namespace qot
