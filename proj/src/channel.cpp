#include "qot/channel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qot/errors.hpp"

namespace qot {

namespace {

constexpr double kChannelFlagTol = 1e-10;
constexpr double kNullspaceRelTol = 1e-9;

Eigen::Map<const Vector> vec_view(const Matrix& x) { return {x.data(), x.size()}; }

Matrix unvec(const Vector& v, int d) {
    return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix matrix_unit(int d, int i, int j) {
    Matrix e = Matrix::Zero(d, d);
    e(i, j) = 1.0;
    return e;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError("channel spec field '" + field + "' is not a number: '" + text + "'");
    }
}

int parse_int(const std::string& field, const std::string& text) {
    try {
        std::size_t used = 0;
        int v = std::stoi(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError("channel spec field '" + field + "' is not an integer: '" + text + "'");
    }
}

}  // namespace

// Superoperator -----------------------------------------------------------

Superoperator::Superoperator(int dim, Matrix mat) : dim_(dim), mat_(std::move(mat)) {
    if (mat_.rows() != dim * dim || mat_.cols() != dim * dim)
        throw DimensionError("superoperator on M_" + std::to_string(dim) + " must be " +
                             std::to_string(dim * dim) + " square");
}

Superoperator Superoperator::identity(int dim) {
    return Superoperator(dim, Matrix::Identity(dim * dim, dim * dim));
}

Superoperator Superoperator::from_function(int dim, const std::function<Matrix(const Matrix&)>& f) {
    Matrix m(dim * dim, dim * dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) {
            Matrix y = f(matrix_unit(dim, i, j));
            m.col(j * dim + i) = vec_view(y);
        }
    return Superoperator(dim, std::move(m));
}

Superoperator Superoperator::from_kraus(const std::vector<Matrix>& kraus) {
    if (kraus.empty()) throw DomainError("Kraus family is empty");
    const int d = static_cast<int>(kraus.front().rows());
    Matrix m = Matrix::Zero(d * d, d * d);
    for (const auto& k : kraus) m += qot::tensor(k.conjugate(), k);
    return Superoperator(d, std::move(m));
}

Matrix Superoperator::apply(const Matrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_)
        throw DimensionError("superoperator on M_" + std::to_string(dim_) + " applied to " +
                             std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
    Vector v = mat_ * vec_view(x);
    return unvec(v, dim_);
}

Superoperator Superoperator::adjoint() const { return Superoperator(dim_, mat_.adjoint()); }

Superoperator Superoperator::after(const Superoperator& inner) const {
    if (inner.dim_ != dim_) throw DimensionError("composing superoperators of different dimension");
    return Superoperator(dim_, mat_ * inner.mat_);
}

Superoperator Superoperator::power(int n) const {
    if (n < 0) throw DomainError("superoperator power must be non-negative");
    Superoperator result = identity(dim_);
    Superoperator base = *this;
    while (n > 0) {
        if (n & 1) result = result.after(base);
        base = base.after(base);
        n >>= 1;
    }
    return result;
}

Superoperator Superoperator::amplify(int n) const {
    if (n < 1) throw DomainError("amplification must be >= 1");
    if (n == 1) return *this;
    return qot::tensor(identity(n), *this);
}

Matrix Superoperator::apply_amplified(const Matrix& x, int n) const {
    if (n == 1) return apply(x);
    if (x.rows() != n * dim_ || x.cols() != n * dim_)
        throw DimensionError("amplified map expects " + std::to_string(n * dim_) + " square input");
    Matrix out(x.rows(), x.cols());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.block(i * dim_, j * dim_, dim_, dim_) =
                apply(x.block(i * dim_, j * dim_, dim_, dim_));
    return out;
}

Matrix Superoperator::choi() const {
    const int d = dim_;
    Matrix j = Matrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) j += qot::tensor(matrix_unit(d, a, b), apply(matrix_unit(d, a, b)));
    return j;
}

Superoperator Superoperator::operator+(const Superoperator& o) const {
    if (o.dim_ != dim_) throw DimensionError("adding superoperators of different dimension");
    return Superoperator(dim_, mat_ + o.mat_);
}

Superoperator Superoperator::operator-(const Superoperator& o) const {
    if (o.dim_ != dim_) throw DimensionError("subtracting superoperators of different dimension");
    return Superoperator(dim_, mat_ - o.mat_);
}

Superoperator Superoperator::operator*(double c) const { return Superoperator(dim_, mat_ * c); }

Superoperator tensor(const Superoperator& a, const Superoperator& b) {
    const int da = a.dim(), db = b.dim(), d = da * db;
    std::vector<Matrix> ia(da * da), ib(db * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) ia[i * da + j] = a.apply(matrix_unit(da, i, j));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j) ib[i * db + j] = b.apply(matrix_unit(db, i, j));
    Matrix m(d * d, d * d);
    for (int i1 = 0; i1 < da; ++i1)
        for (int j1 = 0; j1 < da; ++j1)
            for (int i2 = 0; i2 < db; ++i2)
                for (int j2 = 0; j2 < db; ++j2) {
                    Matrix y = qot::tensor(ia[i1 * da + j1], ib[i2 * db + j2]);
                    m.col((j1 * db + j2) * d + (i1 * db + i2)) = vec_view(y);
                }
    return Superoperator(d, std::move(m));
}

// QuantumChannel -----------------------------------------------------------

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) throw DomainError("channel needs at least one Kraus operator");
    dim_ = static_cast<int>(kraus_.front().rows());
    for (std::size_t i = 0; i < kraus_.size(); ++i)
        if (kraus_[i].rows() != dim_ || kraus_[i].cols() != dim_)
            throw DimensionError("Kraus operator " + std::to_string(i) + " is " +
                                 std::to_string(kraus_[i].rows()) + "x" +
                                 std::to_string(kraus_[i].cols()) + ", expected " +
                                 std::to_string(dim_) + "x" + std::to_string(dim_));
    Matrix kk = Matrix::Zero(dim_, dim_), kkd = Matrix::Zero(dim_, dim_);
    for (const auto& k : kraus_) {
        kk += k.adjoint() * k;
        kkd += k * k.adjoint();
    }
    const Matrix id = qot::identity(dim_);
    tp_ = (kk - id).cwiseAbs().maxCoeff() <= kChannelFlagTol;
    unital_ = (kkd - id).cwiseAbs().maxCoeff() <= kChannelFlagTol;
    if (!tp_ && !unital_)
        throw DomainError("Kraus family is neither trace preserving nor unital");
    schro_ = Superoperator::from_kraus(kraus_);
}

Matrix QuantumChannel::heisenberg(const Matrix& x) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& k : kraus_) out += k.adjoint() * x * k;
    return out;
}

Matrix QuantumChannel::schrodinger(const Matrix& rho) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& k : kraus_) out += k * rho * k.adjoint();
    return out;
}

QuantumChannel compose(const QuantumChannel& outer, const QuantumChannel& inner) {
    if (outer.dim() != inner.dim()) throw DimensionError("compose: channel dimensions differ");
    std::vector<Matrix> k;
    for (const auto& a : outer.kraus())
        for (const auto& b : inner.kraus()) k.push_back(a * b);
    return QuantumChannel(std::move(k));
}

QuantumChannel tensor_channel(const QuantumChannel& a, const QuantumChannel& b) {
    std::vector<Matrix> k;
    for (const auto& x : a.kraus())
        for (const auto& y : b.kraus()) k.push_back(qot::tensor(x, y));
    return QuantumChannel(std::move(k));
}

QuantumChannel amplify(const QuantumChannel& phi, int n) {
    if (n < 1) throw DomainError("amplification must be >= 1");
    return tensor_channel(identity_channel(n), phi);
}

QuantumChannel convex_mix(const QuantumChannel& a, const QuantumChannel& b, double t) {
    if (a.dim() != b.dim()) throw DimensionError("convex_mix: channel dimensions differ");
    if (t < 0 || t > 1) throw DomainError("convex_mix weight must lie in [0, 1]");
    std::vector<Matrix> k;
    for (const auto& x : a.kraus()) k.push_back(std::sqrt(t) * x);
    for (const auto& y : b.kraus()) k.push_back(std::sqrt(1 - t) * y);
    return QuantumChannel(std::move(k));
}

QuantumChannel depolarizing(int d, double p) {
    if (d < 2) throw DomainError("depolarizing dimension must be >= 2");
    if (!(p >= 0 && p <= 1)) throw DomainError("depolarizing parameter p must lie in [0, 1]");
    // Weyl operators X^a Z^b average to the completely depolarizing map.
    const double pi = std::acos(-1.0);
    Matrix shift = Matrix::Zero(d, d), clock = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        shift((k + 1) % d, k) = 1.0;
        clock(k, k) = std::polar(1.0, 2 * pi * k / d);
    }
    std::vector<Matrix> kraus;
    const double dd = static_cast<double>(d) * d;
    kraus.push_back(std::sqrt(1 - p + p / dd) * qot::identity(d));
    if (p > 0) {
        Matrix xa = qot::identity(d);
        for (int a = 0; a < d; ++a) {
            Matrix zb = qot::identity(d);
            for (int b = 0; b < d; ++b) {
                if (a != 0 || b != 0) kraus.push_back(std::sqrt(p / dd) * (xa * zb));
                zb = zb * clock;
            }
            xa = xa * shift;
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel unitary_channel(const Matrix& u) {
    if (!is_unitary(u)) throw DomainError("unitary channel needs a unitary matrix");
    return QuantumChannel({u});
}

QuantumChannel replacer(const DensityMatrix& sigma) {
    const int d = sigma.dim();
    auto e = eig_hermitian(sigma.hermitian());
    std::vector<Matrix> kraus;
    for (int k = 0; k < d; ++k) {
        const double lam = std::max(0.0, e.values(k));
        if (lam <= 0) continue;
        for (int j = 0; j < d; ++j) {
            Matrix op = Matrix::Zero(d, d);
            op.col(j) = std::sqrt(lam) * e.vectors.col(k);
            kraus.push_back(op);
        }
    }
    return QuantumChannel(std::move(kraus));
}

QuantumChannel pauli_channel(double px, double py, double pz) {
    const double p0 = 1 - px - py - pz;
    if (px < 0 || py < 0 || pz < 0 || p0 < -1e-15)
        throw DomainError("pauli channel probabilities must be non-negative with sum <= 1");
    std::vector<Matrix> k;
    const double w[4] = {std::max(0.0, p0), px, py, pz};
    for (int i = 0; i < 4; ++i)
        if (w[i] > 0) k.push_back(std::sqrt(w[i]) * pauli(i));
    return QuantumChannel(std::move(k));
}

QuantumChannel identity_channel(int d) {
    if (d < 1) throw DomainError("identity channel dimension must be >= 1");
    return QuantumChannel({qot::identity(d)});
}

QuantumChannel random_unital_qubit_channel(Rng& rng, int k, double laziness) {
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> w(k);
    double total = 0;
    for (auto& x : w) total += (x = ex(rng));
    std::vector<Matrix> kraus;
    for (int i = 0; i < k; ++i)
        kraus.push_back(std::sqrt((1 - laziness) * w[i] / total) * haar_unitary(rng, 2));
    if (laziness > 0)
        for (int i = 0; i < 4; ++i) kraus.push_back(std::sqrt(laziness / 4) * pauli(i));
    return QuantumChannel(std::move(kraus));
}

// Commutant / conditional expectation ------------------------------------------

std::vector<Matrix> commutant_in_subspace(const std::vector<Matrix>& s,
                                          const std::vector<Matrix>& basis) {
    if (s.empty()) throw DomainError("resource set is empty; its commutant is the whole algebra");
    if (basis.empty()) return {};
    const int d = static_cast<int>(basis.front().rows());
    for (const auto& x : s)
        if (x.rows() != d || x.cols() != d)
            throw DimensionError("resource element is " + std::to_string(x.rows()) + "x" +
                                 std::to_string(x.cols()) + ", expected " + std::to_string(d));
    const int m = static_cast<int>(basis.size());
    const int per = 2 * d * d;
    RealMatrix a(per * static_cast<int>(s.size()), m);
    for (int k = 0; k < m; ++k) {
        for (std::size_t r = 0; r < s.size(); ++r) {
            Matrix c = s[r] * basis[k] - basis[k] * s[r];
            for (int t = 0; t < d * d; ++t) {
                a(static_cast<int>(r) * per + 2 * t, k) = c.data()[t].real();
                a(static_cast<int>(r) * per + 2 * t + 1, k) = c.data()[t].imag();
            }
        }
    }
    RealMatrix gram = a.transpose() * a;
    auto e = eig_hermitian(HermitianMatrix::from_rounded(gram.cast<Complex>()));
    const double lmax = std::max(0.0, e.values(m - 1));
    std::vector<Matrix> null;
    for (int k = 0; k < m; ++k) {
        if (e.values(k) > kNullspaceRelTol * lmax && lmax > 0) continue;
        Matrix x = Matrix::Zero(d, d);
        for (int t = 0; t < m; ++t) x += e.vectors(t, k).real() * basis[t];
        null.push_back(hermitian_part(x));
    }

    // Put the identity first when it lies in the span, then Gram-Schmidt.
    std::vector<Matrix> out;
    const Matrix unit = qot::identity(d) / std::sqrt(static_cast<double>(d));
    Matrix proj = Matrix::Zero(d, d);
    for (const auto& x : null) proj += hs_inner(x, unit).real() * x;
    if (proj.norm() > 1 - 1e-8) out.push_back(unit);
    for (auto x : null) {
        for (const auto& b : out) x -= hs_inner(b, x).real() * b;
        const double n = x.norm();
        if (n > 1e-6) out.push_back(x / n);
    }
    return out;
}

std::vector<Matrix> commutant(const std::vector<Matrix>& s) {
    if (s.empty()) throw DomainError("resource set is empty; its commutant is the whole algebra");
    return commutant_in_subspace(s, hermitian_basis(static_cast<int>(s.front().rows()), true));
}

ConditionalExpectation::ConditionalExpectation(std::vector<Matrix> basis) : basis_(std::move(basis)) {
    if (basis_.empty()) throw DomainError("conditional expectation needs a non-empty basis");
    dim_ = static_cast<int>(basis_.front().rows());
}

Matrix ConditionalExpectation::apply(const Matrix& x) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto& b : basis_) out += hs_inner(b, x) * b;
    return out;
}

Superoperator ConditionalExpectation::superop() const {
    Matrix m = Matrix::Zero(dim_ * dim_, dim_ * dim_);
    for (const auto& b : basis_) {
        Eigen::Map<const Vector> v(b.data(), b.size());
        m += v * v.adjoint();
    }
    return Superoperator(dim_, std::move(m));
}

ConditionalExpectation conditional_expectation(const std::vector<Matrix>& s) {
    return ConditionalExpectation(commutant(s));
}

ConditionalExpectation trace_expectation(int d) {
    return ConditionalExpectation({qot::identity(d) / std::sqrt(static_cast<double>(d))});
}

IndexReport index(const ConditionalExpectation& e, const std::optional<std::vector<Block>>& blocks,
                  int samples, std::uint64_t seed) {
    const int d = e.dim();
    IndexReport rep;
    rep.samples = samples;
    rep.seed = seed;
    if (blocks) {
        long total = 0, algebra = 0;
        double ind = 0, cb = 0;
        for (const auto& b : *blocks) {
            if (b.dim_h < 1 || b.dim_k < 1) throw DimensionError("block dimensions must be >= 1");
            total += static_cast<long>(b.dim_h) * b.dim_k;
            algebra += static_cast<long>(b.dim_h) * b.dim_h;
            ind += static_cast<double>(std::min(b.dim_h, b.dim_k)) * b.dim_k;
            cb += static_cast<double>(b.dim_k) * b.dim_k;
        }
        if (total != d)
            throw DimensionError("block structure sums to dimension " + std::to_string(total) +
                                 ", ambient dimension is " + std::to_string(d));
        if (algebra != static_cast<long>(e.basis().size()))
            throw DimensionError("block structure describes an algebra of dimension " +
                                 std::to_string(algebra) + ", conditional expectation range has " +
                                 std::to_string(e.basis().size()));
        rep.index = ind;
        rep.cb_index = cb;
    }
    double best = 0;
    for (int i = 0; i < samples; ++i) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(i));
        Matrix x;
        if (i % 2 == 0) {
            x = random_gaussian(rng, d, d);
        } else {
            Vector a = haar_state_vector(rng, d), b = haar_state_vector(rng, d);
            x = a * b.adjoint();
        }
        Matrix p = x.adjoint() * x;
        auto eb = eig_hermitian(HermitianMatrix::from_rounded(e.apply(p)));
        const double top = eb.values(d - 1);
        std::vector<int> support;
        for (int k = 0; k < d; ++k)
            if (eb.values(k) > 1e-12 * top) support.push_back(k);
        Matrix w(d, static_cast<Eigen::Index>(support.size()));
        for (std::size_t k = 0; k < support.size(); ++k)
            w.col(static_cast<Eigen::Index>(k)) =
                eb.vectors.col(support[k]) / std::sqrt(eb.values(support[k]));
        auto ec = eig_hermitian(HermitianMatrix::from_rounded(w.adjoint() * p * w));
        best = std::max(best, ec.values(ec.values.size() - 1));
    }
    rep.sampled_lower = best;
    return rep;
}

Matrix choi(const Superoperator& map) { return map.choi(); }

double min_choi_eigenvalue(const Superoperator& map) {
    return eig_hermitian(HermitianMatrix::from_rounded(map.choi())).values(0);
}

bool is_cp_order(const Superoperator& phi, const Superoperator& psi, double tol) {
    return min_choi_eigenvalue(psi - phi) >= -tol;
}

// JSON ---------------------------------------------------------------------

nlohmann::json channel_to_json(const QuantumChannel& c) {
    nlohmann::json k = nlohmann::json::array();
    for (const auto& m : c.kraus()) k.push_back(matrix_to_json(m));
    return {{"dim", c.dim()}, {"kraus", k}};
}

QuantumChannel channel_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
        throw InputError("channel JSON must have fields 'dim' and 'kraus'");
    if (!j["dim"].is_number_integer()) throw InputError("channel JSON field 'dim' must be an integer");
    const int d = j["dim"].get<int>();
    if (!j["kraus"].is_array() || j["kraus"].empty())
        throw InputError("channel JSON field 'kraus' must be a non-empty array");
    std::vector<Matrix> k;
    for (const auto& m : j["kraus"]) {
        Matrix x = matrix_from_json(m);
        if (x.rows() != d || x.cols() != d)
            throw DimensionError("channel JSON field 'kraus' holds a " + std::to_string(x.rows()) +
                                 "x" + std::to_string(x.cols()) + " matrix but 'dim' is " +
                                 std::to_string(d));
        k.push_back(x);
    }
    return QuantumChannel(std::move(k));
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed JSON in '" + path + "': " + e.what());
    }
}

QuantumChannel parse_channel_spec(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw InputError("empty channel spec");
    const std::string& kind = parts[0];
    if (kind == "depolarizing") {
        if (parts.size() != 3) throw InputError("channel spec 'depolarizing' expects depolarizing:d:p");
        return depolarizing(parse_int("d", parts[1]), parse_double("p", parts[2]));
    }
    if (kind == "pauli") {
        if (parts.size() != 4) throw InputError("channel spec 'pauli' expects pauli:px:py:pz");
        return pauli_channel(parse_double("px", parts[1]), parse_double("py", parts[2]),
                             parse_double("pz", parts[3]));
    }
    if (kind == "identity") {
        if (parts.size() != 2) throw InputError("channel spec 'identity' expects identity:d");
        return identity_channel(parse_int("d", parts[1]));
    }
    if (kind == "random") {
        if (parts.size() != 2 && parts.size() != 3)
            throw InputError("channel spec 'random' expects random:seed or random:seed:laziness");
        Rng rng = make_rng(static_cast<std::uint64_t>(parse_int("seed", parts[1])));
        return random_unital_qubit_channel(rng, 3, parts.size() == 3 ? parse_double("laziness", parts[2]) : 0.0);
    }
    if (kind == "unitary" || kind == "replacer") {
        if (parts.size() < 2) throw InputError("channel spec '" + kind + "' expects " + kind + ":file.json");
        const std::string path = spec.substr(kind.size() + 1);
        Matrix m = matrix_from_json(read_json_file(path));
        if (kind == "unitary") return unitary_channel(m);
        return replacer(DensityMatrix(m));
    }
    if (parts.size() == 1) return channel_from_json(read_json_file(spec));
    throw InputError("unknown channel kind '" + kind + "'");
}

}  // namespace qot
