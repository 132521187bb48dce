// matrix.hpp - small dense complex matrices, registers and density matrices
//
// Everything here targets dimensions of at most a few qubits (<= 16 in
// practice), so storage is a flat row-major std::vector and the Hermitian
// eigensolver is a cyclic complex Jacobi sweep: slow for large inputs, but
// deterministic and accurate to machine precision on the sizes we use.
//
// Tensor ordering: for a RegisterLayout {d0, d1, ..., dn-1} the leftmost
// register is the most significant factor, i.e. basis index |a b c> maps to
// a*d1*d2 + b*d2 + c.  All protocol code uses |Alice, Bob, control>.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace remcoh {

using Complex = std::complex<double>;
using Ket = std::vector<Complex>;

/// Uniform tolerance for Hermiticity, unit trace and positivity checks.
inline constexpr double kStateTolerance = 1e-10;

class ComplexMatrix {
public:
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        }
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0) {
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        }
        if (data_.size() != rows * cols) {
            throw std::invalid_argument("ComplexMatrix: entry count does not match rows*cols");
        }
        if (!all_finite()) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        if (rows_ == 0 || cols_ == 0) {
            throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
        }
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw std::invalid_argument("ComplexMatrix: ragged initializer");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
        if (!all_finite()) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        ComplexMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    std::span<const Complex> entries() const { return data_; }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_shape(o, "+=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_shape(o, "-=");
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_shape(const ComplexMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument(std::string("ComplexMatrix ") + op + ": shape mismatch");
        }
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("ComplexMatrix *: inner dimensions differ");
    }
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline ComplexMatrix transpose(const ComplexMatrix& m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

inline Complex trace(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("trace: matrix is not square");
    Complex t{};
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

/// Kronecker product: block (i, j) of the result is a(i, j) * b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return d;
}

/// max |M - M^dagger| over all entries.
inline double max_asymmetry(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("max_asymmetry: matrix is not square");
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j)
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& z : m.entries()) s += std::norm(z);
    return std::sqrt(s);
}

// Kets and projectors.

inline ComplexMatrix outer(const Ket& ket, const Ket& bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    return m;
}

inline ComplexMatrix projector(const Ket& v) { return outer(v, v); }

inline Complex inner(const Ket& a, const Ket& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: length mismatch");
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

inline Ket apply(const ComplexMatrix& m, const Ket& v) {
    if (m.cols() != v.size()) throw std::invalid_argument("apply: dimension mismatch");
    Ket r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
    return r;
}

inline Ket kron(const Ket& a, const Ket& b) {
    Ket r;
    r.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) r.push_back(x * y);
    return r;
}

// Pauli matrices: sigma_0 = I, sigma_1 = X, sigma_2 = Y, sigma_3 = Z.

inline const std::array<ComplexMatrix, 4>& pauli_set() {
    static const std::array<ComplexMatrix, 4> set{
        ComplexMatrix{{1.0, 0.0}, {0.0, 1.0}},
        ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}},
        ComplexMatrix{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}},
        ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
    };
    return set;
}

inline const ComplexMatrix& pauli(std::size_t i) { return pauli_set().at(i); }

// Hermitian eigendecomposition.

class NotHermitianError : public std::invalid_argument {
public:
    explicit NotHermitianError(double asymmetry)
        : std::invalid_argument(message(asymmetry)), asymmetry_(asymmetry) {}

    double max_asymmetry() const { return asymmetry_; }

private:
    static std::string message(double a) {
        std::ostringstream os;
        os << "matrix is not Hermitian: max |M - M^dagger| = " << a;
        return os.str();
    }

    double asymmetry_;
};

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

/// Cyclic Jacobi on a complex Hermitian matrix.  Each rotation first removes
/// the phase of the pivot so that a real Givens rotation annihilates it.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h) {
    if (!h.is_square()) throw std::invalid_argument("hermitian_eigen: matrix is not square");
    const double asym = max_asymmetry(h);
    if (asym > kStateTolerance) throw NotHermitianError(asym);

    const std::size_t n = h.rows();
    ComplexMatrix a = h;
    ComplexMatrix v = ComplexMatrix::identity(n);
    // Symmetrize so rounding noise below tolerance cannot bias the result.
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = z;
            a(j, i) = std::conj(z);
        }
    }

    const double scale = std::max(1.0, frobenius_norm(a));
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(a(i, j));
        if (std::sqrt(off) <= 1e-15 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r < 1e-300) continue;
                const Complex phase = a(p, q) / r;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // G = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on the (p, q) plane;
                // A <- G^dagger A G.
                const Complex gpp = c;
                const Complex gpq = s;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {  // A <- A G (columns p, q)
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- G^dagger A (rows p, q)
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    return hermitian_eigen(h).values;
}

// Registers and density matrices.

class RegisterLayout {
public:
    explicit RegisterLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        if (dims_.empty()) throw std::invalid_argument("RegisterLayout: no registers");
        for (auto d : dims_) {
            if (d < 2) throw std::invalid_argument("RegisterLayout: register dimension below 2");
        }
    }

    static RegisterLayout qubits(std::size_t n) { return RegisterLayout(std::vector<std::size_t>(n, 2)); }

    std::size_t size() const { return dims_.size(); }
    std::size_t dim(std::size_t reg) const { return dims_.at(reg); }
    std::span<const std::size_t> dims() const { return dims_; }

    std::size_t total() const {
        return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>{});
    }

    /// Place value of register `reg` in the flat basis index.
    std::size_t stride(std::size_t reg) const {
        std::size_t s = 1;
        for (std::size_t r = reg + 1; r < dims_.size(); ++r) s *= dims_[r];
        return s;
    }

    std::size_t digit(std::size_t index, std::size_t reg) const {
        return (index / stride(reg)) % dims_.at(reg);
    }

    friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

private:
    std::vector<std::size_t> dims_;
};

class DensityMatrix {
public:
    DensityMatrix(ComplexMatrix matrix, RegisterLayout layout)
        : matrix_(std::move(matrix)), layout_(std::move(layout)) {
        validate();
    }

    /// Divides by the trace before validating; the trace must be positive.
    static DensityMatrix normalized(const ComplexMatrix& unnormalized, RegisterLayout layout) {
        const double t = trace(unnormalized).real();
        if (!(t > 0.0)) throw std::invalid_argument("DensityMatrix::normalized: non-positive trace");
        return DensityMatrix(unnormalized * Complex(1.0 / t), std::move(layout));
    }

    static DensityMatrix pure(const Ket& psi, RegisterLayout layout) {
        return normalized(projector(psi), std::move(layout));
    }

    static DensityMatrix maximally_mixed(RegisterLayout layout) {
        const auto d = layout.total();
        return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)),
                             std::move(layout));
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    const RegisterLayout& layout() const { return layout_; }
    std::size_t dim() const { return matrix_.rows(); }
    Complex operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }

private:
    void validate() const {
        if (!matrix_.is_square()) throw std::invalid_argument("DensityMatrix: matrix is not square");
        if (layout_.total() != matrix_.rows()) {
            throw std::invalid_argument("DensityMatrix: layout does not match matrix dimension");
        }
        if (!matrix_.all_finite()) throw std::invalid_argument("DensityMatrix: non-finite entry");
        const double asym = max_asymmetry(matrix_);
        if (asym > kStateTolerance) throw NotHermitianError(asym);
        const Complex tr = trace(matrix_);
        if (std::abs(tr - 1.0) > kStateTolerance) {
            std::ostringstream os;
            os << "DensityMatrix: trace " << tr.real() << " differs from 1";
            throw std::invalid_argument(os.str());
        }
        const double lmin = hermitian_eigenvalues(matrix_).front();
        if (lmin < -kStateTolerance) {
            std::ostringstream os;
            os << "DensityMatrix: negative eigenvalue " << lmin;
            throw std::invalid_argument(os.str());
        }
    }

    ComplexMatrix matrix_;
    RegisterLayout layout_;
};

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    std::vector<std::size_t> dims(a.layout().dims().begin(), a.layout().dims().end());
    dims.insert(dims.end(), b.layout().dims().begin(), b.layout().dims().end());
    return DensityMatrix(kron(a.matrix(), b.matrix()), RegisterLayout(std::move(dims)));
}

/// I (x) op (x) I with `op` spanning registers [first, first + span) of the layout.
inline ComplexMatrix embed(const ComplexMatrix& op, const RegisterLayout& layout,
                           std::size_t first, std::size_t span = 1) {
    if (span == 0 || first + span > layout.size()) {
        throw std::invalid_argument("embed: register range out of bounds");
    }
    std::size_t left = 1, mid = 1, right = 1;
    for (std::size_t r = 0; r < layout.size(); ++r) {
        if (r < first) left *= layout.dim(r);
        else if (r < first + span) mid *= layout.dim(r);
        else right *= layout.dim(r);
    }
    if (!op.is_square() || op.rows() != mid) {
        throw std::invalid_argument("embed: operator dimension does not match registers");
    }
    return kron(kron(ComplexMatrix::identity(left), op), ComplexMatrix::identity(right));
}

/// Traces out every register not listed in `keep`; kept registers retain
/// their original relative order.  Operator-level form, usable on matrices
/// that are not states (e.g. partial transposes).
inline std::pair<ComplexMatrix, RegisterLayout> partial_trace(const ComplexMatrix& m, const RegisterLayout& layout,
                                                              std::vector<std::size_t> keep) {
    if (!m.is_square() || m.rows() != layout.total()) {
        throw std::invalid_argument("partial_trace: layout does not match matrix");
    }
    if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
        throw std::invalid_argument("partial_trace: duplicate register index");
    }
    if (keep.back() >= layout.size()) throw std::invalid_argument("partial_trace: register index out of range");

    std::vector<bool> kept(layout.size(), false);
    std::vector<std::size_t> kept_dims;
    for (auto r : keep) {
        kept[r] = true;
        kept_dims.push_back(layout.dim(r));
    }
    RegisterLayout out_layout(kept_dims);

    // Split each full index into (kept part, traced part).
    const std::size_t d = layout.total();
    std::vector<std::size_t> kept_idx(d), traced_idx(d);
    for (std::size_t i = 0; i < d; ++i) {
        std::size_t k = 0, t = 0;
        for (std::size_t r = 0; r < layout.size(); ++r) {
            const auto dig = layout.digit(i, r);
            if (kept[r]) k = k * layout.dim(r) + dig;
            else t = t * layout.dim(r) + dig;
        }
        kept_idx[i] = k;
        traced_idx[i] = t;
    }

    ComplexMatrix out(out_layout.total(), out_layout.total());
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (traced_idx[i] == traced_idx[j]) out(kept_idx[i], kept_idx[j]) += m(i, j);
    return {std::move(out), std::move(out_layout)};
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<std::size_t> keep) {
    auto [m, layout] = partial_trace(rho.matrix(), rho.layout(), std::move(keep));
    return DensityMatrix(std::move(m), std::move(layout));
}

/// Transposes the factor belonging to `subsystem`.  Works on any square
/// operator so that it can be applied twice.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const RegisterLayout& layout,
                                       std::size_t subsystem) {
    if (subsystem >= layout.size()) throw std::invalid_argument("partial_transpose: register index out of range");
    if (!m.is_square() || m.rows() != layout.total()) {
        throw std::invalid_argument("partial_transpose: layout does not match matrix");
    }
    const std::size_t d = layout.total();
    const std::size_t stride = layout.stride(subsystem);
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const std::size_t di = layout.digit(i, subsystem);
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t dj = layout.digit(j, subsystem);
            const std::size_t i2 = i - di * stride + dj * stride;
            const std::size_t j2 = j - dj * stride + di * stride;
            out(i2, j2) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t subsystem) {
    return partial_transpose(rho.matrix(), rho.layout(), subsystem);
}

}  // namespace remcoh
