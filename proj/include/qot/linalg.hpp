#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace qot {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Rng = std::mt19937_64;

/// Tolerance on the largest entrywise mismatch |A - A^dagger|.
inline constexpr double kHermitianTol = 1e-12;

/// A matrix validated to be Hermitian. The stored matrix is exactly Hermitian.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(Matrix m);

    /// Builds from a matrix that is Hermitian by construction, averaging away rounding.
    static HermitianMatrix from_rounded(const Matrix& m);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

private:
    Matrix m_;
};

/// Positive semidefinite, unit trace.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(Matrix m, double tol = 1e-10);

    const Matrix& matrix() const { return m_.matrix(); }
    const HermitianMatrix& hermitian() const { return m_; }
    int dim() const { return m_.dim(); }

private:
    HermitianMatrix m_;
};

struct EigenDecomposition {
    RealVector values;  // ascending
    Matrix vectors;     // columns
    int sweeps = 0;
};

/// Cyclic complex Jacobi. Throws NumericalError when 100 sweeps do not converge.
EigenDecomposition eig_hermitian(const HermitianMatrix& a);

double hermitian_defect(const Matrix& m);
Matrix hermitian_part(const Matrix& m);

double op_norm(const Matrix& m);
double trace_norm(const Matrix& m);

/// Largest singular value with its left/right singular vectors.
struct TopSingular {
    double value = 0;
    Vector left;
    Vector right;
};
TopSingular top_singular(const Matrix& m);

Matrix identity(int d);
Matrix tensor(const Matrix& a, const Matrix& b);

enum class Side { A, B };
/// Traces out the named factor of C^dA (x) C^dB.
Matrix partial_trace(const Matrix& m, int da, int db, Side traced);

HermitianMatrix mat_log(const HermitianMatrix& a);
HermitianMatrix mat_exp(const HermitianMatrix& a);
/// exp(i H), unitary.
Matrix unitary_exp(const HermitianMatrix& h);
/// f applied to the spectrum.
HermitianMatrix spectral_map(const HermitianMatrix& a, double (*f)(double));

/// Pauli matrices; index 0 is the identity.
const Matrix& pauli(int k);

struct PauliCoefficients {
    double v0 = 0, v1 = 0, v2 = 0, v3 = 0;
};
/// v_i = tr(X sigma_i) / 2.
PauliCoefficients pauli_decompose(const HermitianMatrix& x);
Matrix pauli_compose(const PauliCoefficients& v);

/// Hilbert-Schmidt orthonormal Hermitian basis (generalized Gell-Mann).
/// With include_identity the first element is 1/sqrt(d).
std::vector<Matrix> hermitian_basis(int d, bool include_identity);

/// Hilbert-Schmidt inner product tr(a^dagger b).
Complex hs_inner(const Matrix& a, const Matrix& b);

bool is_unitary(const Matrix& u, double tol = 1e-10);

// Sampling ---------------------------------------------------------------

/// Independent stream derived from a seed and a stream index.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

Matrix random_gaussian(Rng& rng, int rows, int cols);
HermitianMatrix random_hermitian(Rng& rng, int d);
Matrix haar_unitary(Rng& rng, int d);
Vector haar_state_vector(Rng& rng, int d);
DensityMatrix haar_pure_state(Rng& rng, int d);
/// (1 - delta) tr_B |psi><psi| + delta 1/d, psi Haar on C^d (x) C^d.
DensityMatrix random_full_rank_state(Rng& rng, int d, double delta = 1e-3);

// JSON -------------------------------------------------------------------

/// {"rows","cols","data":[[re,im],...]} in row-major order.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace qot
