#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "clusterdecay/errors.hpp"

namespace cdecay {

using Complex = std::complex<double>;

// Dense square complex matrix, row-major. Dimensions never exceed 64 here,
// so plain O(d^3) kernels are all we need.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(int dim) : dim_(dim) {
        if (dim < 1) throw InvalidSpec("matrix dimension must be >= 1");
        a_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const {
        return a_[static_cast<std::size_t>(r) * dim_ + c];
    }

    // Bounds-checked access for external callers.
    const Complex& at(int r, int c) const {
        if (r < 0 || r >= dim_ || c < 0 || c >= dim_)
            throw IndexOutOfRange("matrix index out of range");
        return (*this)(r, c);
    }

    bool operator==(const ComplexMatrix&) const = default;

  private:
    int dim_;
    std::vector<Complex> a_;
};

inline ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidSpec("matrix dimension mismatch");
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) + b(r, c);
    return out;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidSpec("matrix dimension mismatch");
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) - b(r, c);
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, Complex s) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) * s;
    return out;
}

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& a) { return a * s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidSpec("matrix dimension mismatch");
    const int d = a.dim();
    ComplexMatrix out(d);
    for (int r = 0; r < d; ++r)
        for (int k = 0; k < d; ++k) {
            const Complex arx = a(r, k);
            if (arx == Complex(0.0, 0.0)) continue;
            for (int c = 0; c < d; ++c) out(r, c) += arx * b(k, c);
        }
    return out;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = std::conj(a(c, r));
    return out;
}

inline ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int ra = 0; ra < da; ++ra)
        for (int ca = 0; ca < da; ++ca) {
            const Complex f = a(ra, ca);
            if (f == Complex(0.0, 0.0)) continue;
            for (int rb = 0; rb < db; ++rb)
                for (int cb = 0; cb < db; ++cb)
                    out(ra * db + rb, ca * db + cb) = f * b(rb, cb);
        }
    return out;
}

inline Complex trace(const ComplexMatrix& a) {
    Complex t = 0.0;
    for (int i = 0; i < a.dim(); ++i) t += a(i, i);
    return t;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw InvalidSpec("matrix dimension mismatch");
    double m = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) m = std::max(m, std::abs(a(r, c) - b(r, c)));
    return m;
}

inline bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12) {
    for (int r = 0; r < a.dim(); ++r)
        for (int c = r; c < a.dim(); ++c)
            if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
    return true;
}

namespace detail {

inline double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

}  // namespace detail

// Eigenvalues of a Hermitian matrix, ascending, via cyclic complex Jacobi
// rotations. Input is symmetrized first so roundoff-level asymmetry cannot
// leak into the result; sweeps stop once the off-diagonal Frobenius norm
// drops below 1e-13 (hard cap of 100 sweeps).
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (!is_hermitian(m, 1e-12))
        throw NonHermitianInput("eigensolver requires a Hermitian matrix");
    const int d = m.dim();
    ComplexMatrix a = (m + adjoint(m)) * Complex(0.5, 0.0);

    for (int sweep = 0; sweep < 100; ++sweep) {
        if (detail::offdiag_norm(a) < 1e-13) break;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const Complex beta = a(p, q);
                const double ab = std::abs(beta);
                if (ab == 0.0) continue;
                const Complex ephi = beta / ab;  // e^{i phi}, phase of the pivot
                const double alpha = a(p, p).real();
                const double gamma = a(q, q).real();
                const double tau = (gamma - alpha) / (2.0 * ab);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex cphi = std::conj(ephi);
                for (int k = 0; k < d; ++k) {
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp + s * cphi * akq;
                    a(k, q) = -s * akp + c * cphi * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + s * ephi * aqk;
                    a(q, k) = -s * apk + c * ephi * aqk;
                }
                // These are analytically zero / real now; drop the roundoff.
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = Complex(a(p, p).real(), 0.0);
                a(q, q) = Complex(a(q, q).real(), 0.0);
            }
        }
    }

    std::vector<double> eigs(d);
    for (int i = 0; i < d; ++i) eigs[i] = a(i, i).real();
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

}  // namespace cdecay
