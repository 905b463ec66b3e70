#include "qot/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qot/errors.hpp"

namespace qot {

namespace {

constexpr double kJacobiRelTol = 1e-14;
constexpr int kJacobiMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
    double s = 0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

double hermitian_defect(const Matrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    double worst = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

HermitianMatrix::HermitianMatrix(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw DimensionError("hermitian matrix must be square, got " + std::to_string(m_.rows()) +
                             "x" + std::to_string(m_.cols()));
    double defect = hermitian_defect(m_);
    if (!(defect <= kHermitianTol)) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |A - A^dagger| = " << defect;
        throw DomainError(os.str());
    }
    m_ = hermitian_part(m_);
}

HermitianMatrix HermitianMatrix::from_rounded(const Matrix& m) {
    return HermitianMatrix(hermitian_part(m));
}

DensityMatrix::DensityMatrix(Matrix m, double tol) : m_(std::move(m)) {
    Complex tr = m_.matrix().trace();
    if (std::abs(tr - 1.0) > tol) {
        std::ostringstream os;
        os << "density matrix trace is " << tr.real() << ", expected 1";
        throw DomainError(os.str());
    }
    auto e = eig_hermitian(m_);
    if (e.values(0) < -tol) {
        std::ostringstream os;
        os << "density matrix has negative eigenvalue " << e.values(0);
        throw DomainError(os.str());
    }
}

EigenDecomposition eig_hermitian(const HermitianMatrix& h) {
    const int n = h.dim();
    Matrix a = h.matrix();
    Matrix v = Matrix::Identity(n, n);
    const double threshold = kJacobiRelTol * a.norm();
    int sweep = 0;
    double off = off_diagonal_norm(a);
    while (off > threshold) {
        if (sweep == kJacobiMaxSweeps) {
            std::ostringstream os;
            os << "Jacobi eigensolver did not converge in " << kJacobiMaxSweeps
               << " sweeps, off-diagonal residual " << off;
            throw NumericalError(os.str(), off);
        }
        ++sweep;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double b = std::abs(a(p, q));
                if (b == 0.0) continue;
                const Complex e = a(p, q) / b;
                const Complex ec = std::conj(e);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * b);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns: A <- A G with G = diag(1, conj(e)) [[c, s], [-s, c]].
                for (int k = 0; k < n; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * ec * akq;
                    a(k, q) = s * akp + c * ec * akq;
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * ec * vkq;
                    v(k, q) = s * vkp + c * ec * vkq;
                }
                // Rows: A <- G^dagger A.
                for (int k = 0; k < n; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * e * aqk;
                    a(q, k) = s * apk + c * e * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
        off = off_diagonal_norm(a);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    out.sweeps = sweep;
    return out;
}

TopSingular top_singular(const Matrix& m) {
    TopSingular out;
    Matrix g = m.adjoint() * m;
    auto e = eig_hermitian(HermitianMatrix::from_rounded(g));
    const Eigen::Index last = e.values.size() - 1;
    out.value = std::sqrt(std::max(0.0, e.values(last)));
    out.right = e.vectors.col(last);
    if (out.value > 0) {
        out.left = m * out.right / out.value;
    } else {
        out.left = Vector::Zero(m.rows());
        if (m.rows() > 0) out.left(0) = 1.0;
    }
    return out;
}

double op_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == m.cols() && hermitian_defect(m) <= kHermitianTol * std::max(1.0, m.norm())) {
        auto e = eig_hermitian(HermitianMatrix::from_rounded(m));
        return std::max(std::abs(e.values(0)), std::abs(e.values(e.values.size() - 1)));
    }
    return top_singular(m).value;
}

double trace_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == m.cols() && hermitian_defect(m) <= kHermitianTol * std::max(1.0, m.norm())) {
        auto e = eig_hermitian(HermitianMatrix::from_rounded(m));
        return e.values.cwiseAbs().sum();
    }
    auto e = eig_hermitian(HermitianMatrix::from_rounded(m.adjoint() * m));
    double s = 0;
    for (Eigen::Index i = 0; i < e.values.size(); ++i) s += std::sqrt(std::max(0.0, e.values(i)));
    return s;
}

Matrix identity(int d) { return Matrix::Identity(d, d); }

Matrix tensor(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Matrix partial_trace(const Matrix& m, int da, int db, Side traced) {
    if (da <= 0 || db <= 0 || m.rows() != da * db || m.cols() != da * db)
        throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", factors " + std::to_string(da) + "*" +
                             std::to_string(db));
    if (traced == Side::B) {
        Matrix out = Matrix::Zero(da, da);
        for (int i = 0; i < da; ++i)
            for (int j = 0; j < da; ++j)
                for (int k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
        return out;
    }
    Matrix out = Matrix::Zero(db, db);
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < da; ++k) out(i, j) += m(k * db + i, k * db + j);
    return out;
}

HermitianMatrix spectral_map(const HermitianMatrix& a, double (*f)(double)) {
    auto e = eig_hermitian(a);
    RealVector fv = e.values.unaryExpr(f);
    return HermitianMatrix::from_rounded(e.vectors * fv.cast<Complex>().asDiagonal() *
                                         e.vectors.adjoint());
}

HermitianMatrix mat_log(const HermitianMatrix& a) {
    auto e = eig_hermitian(a);
    if (e.values(0) <= 1e-12) {
        std::ostringstream os;
        os << "mat_log requires a positive definite argument; smallest eigenvalue is "
           << e.values(0);
        throw DomainError(os.str());
    }
    RealVector fv = e.values.array().log();
    return HermitianMatrix::from_rounded(e.vectors * fv.cast<Complex>().asDiagonal() *
                                         e.vectors.adjoint());
}

HermitianMatrix mat_exp(const HermitianMatrix& a) {
    return spectral_map(a, [](double x) { return std::exp(x); });
}

Matrix unitary_exp(const HermitianMatrix& h) {
    auto e = eig_hermitian(h);
    Vector phases(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) phases(i) = std::polar(1.0, e.values(i));
    return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

const Matrix& pauli(int k) {
    static const std::vector<Matrix> p = [] {
        std::vector<Matrix> out(4, Matrix::Zero(2, 2));
        const Complex i(0, 1);
        out[0] << 1, 0, 0, 1;
        out[1] << 0, 1, 1, 0;
        out[2] << 0, -i, i, 0;
        out[3] << 1, 0, 0, -1;
        return out;
    }();
    if (k < 0 || k > 3) throw DomainError("pauli index must be in 0..3");
    return p[k];
}

PauliCoefficients pauli_decompose(const HermitianMatrix& x) {
    if (x.dim() != 2) throw DimensionError("pauli_decompose needs a 2x2 matrix, got dim " +
                                           std::to_string(x.dim()));
    const Matrix& m = x.matrix();
    auto c = [&](int k) { return 0.5 * (pauli(k) * m).trace().real(); };
    return {c(0), c(1), c(2), c(3)};
}

Matrix pauli_compose(const PauliCoefficients& v) {
    return v.v0 * pauli(0) + v.v1 * pauli(1) + v.v2 * pauli(2) + v.v3 * pauli(3);
}

std::vector<Matrix> hermitian_basis(int d, bool include_identity) {
    std::vector<Matrix> out;
    if (include_identity) out.push_back(identity(d) / std::sqrt(static_cast<double>(d)));
    const double r = 1.0 / std::sqrt(2.0);
    const Complex i(0, 1);
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            Matrix s = Matrix::Zero(d, d);
            s(j, k) = r;
            s(k, j) = r;
            out.push_back(s);
            Matrix a = Matrix::Zero(d, d);
            a(j, k) = -i * r;
            a(k, j) = i * r;
            out.push_back(a);
        }
    }
    for (int l = 1; l < d; ++l) {
        Matrix g = Matrix::Zero(d, d);
        const double c = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int j = 0; j < l; ++j) g(j, j) = c;
        g(l, l) = -c * l;
        out.push_back(g);
    }
    return out;
}

Complex hs_inner(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

bool is_unitary(const Matrix& u, double tol) {
    if (u.rows() != u.cols()) return false;
    return (u.adjoint() * u - identity(static_cast<int>(u.rows()))).cwiseAbs().maxCoeff() <= tol;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 over (seed, stream) so nearby seeds give unrelated streams.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return Rng(z);
}

Matrix random_gaussian(Rng& rng, int rows, int cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) g(i, j) = Complex(n(rng), n(rng));
    return g;
}

HermitianMatrix random_hermitian(Rng& rng, int d) {
    return HermitianMatrix::from_rounded(random_gaussian(rng, d, d));
}

Matrix haar_unitary(Rng& rng, int d) {
    Matrix z = random_gaussian(rng, d, d);
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < d; ++k) {
        const Complex rk = r(k, k);
        const double a = std::abs(rk);
        if (a > 0) q.col(k) *= rk / a;
    }
    return q;
}

Vector haar_state_vector(Rng& rng, int d) {
    Vector v = random_gaussian(rng, d, 1).col(0);
    return v / v.norm();
}

DensityMatrix haar_pure_state(Rng& rng, int d) {
    Vector v = haar_state_vector(rng, d);
    return DensityMatrix(hermitian_part(v * v.adjoint()));
}

DensityMatrix random_full_rank_state(Rng& rng, int d, double delta) {
    Vector psi = haar_state_vector(rng, d * d);
    Matrix mixed = partial_trace(psi * psi.adjoint(), d, d, Side::B);
    Matrix rho = (1.0 - delta) * mixed + delta * identity(d) / static_cast<double>(d);
    rho /= rho.trace().real();
    return DensityMatrix(hermitian_part(rho));
}

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json data = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            data.push_back({m(i, j).real(), m(i, j).imag()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("matrix JSON must be an object with rows, cols, data");
    for (const char* key : {"rows", "cols", "data"})
        if (!j.contains(key)) throw InputError(std::string("matrix JSON is missing field '") + key + "'");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw InputError("matrix JSON fields 'rows' and 'cols' must be integers");
    const long rows = j["rows"].get<long>();
    const long cols = j["cols"].get<long>();
    if (rows <= 0 || cols <= 0) throw InputError("matrix JSON 'rows'/'cols' must be positive");
    const auto& data = j["data"];
    if (!data.is_array() || static_cast<long>(data.size()) != rows * cols)
        throw InputError("matrix JSON field 'data' must hold rows*cols = " +
                         std::to_string(rows * cols) + " entries");
    Matrix m(rows, cols);
    for (long k = 0; k < rows * cols; ++k) {
        const auto& e = data[k];
        if (e.is_number()) {
            m(k / cols, k % cols) = e.get<double>();
        } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
            m(k / cols, k % cols) = Complex(e[0].get<double>(), e[1].get<double>());
        } else {
            throw InputError("matrix JSON field 'data' entry " + std::to_string(k) +
                             " must be [re, im]");
        }
    }
    return m;
}

}  // namespace qot
