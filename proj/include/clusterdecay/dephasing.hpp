#pragma once

#include <bit>
#include <cmath>
#include <utility>
#include <vector>

#include "clusterdecay/cluster_state.hpp"
#include "clusterdecay/complex_matrix.hpp"
#include "clusterdecay/errors.hpp"

namespace cdecay {

// Channel strength p in [0, 1]; p = 0 is the identity channel, p = 1 kills
// every off-diagonal element.
class DephasingStrength {
  public:
    explicit DephasingStrength(double p) : p_(p) {
        if (!(p >= 0.0 && p <= 1.0))
            throw OutOfRange("dephasing strength must lie in [0, 1]");
    }

    double value() const { return p_; }

  private:
    double p_;
};

// Kraus decomposition; construction checks completeness sum K^dag K = I.
struct KrausSet {
    std::vector<ComplexMatrix> ops;

    explicit KrausSet(std::vector<ComplexMatrix> ops_) : ops(std::move(ops_)) {
        if (ops.empty()) throw InvalidState("empty Kraus set");
        ComplexMatrix sum(ops.front().dim());
        for (const ComplexMatrix& k : ops) sum = sum + adjoint(k) * k;
        if (max_abs_diff(sum, ComplexMatrix::identity(sum.dim())) > 1e-12)
            throw InvalidState("Kraus set violates completeness");
    }
};

// Single-qubit dephasing pair K1 = diag(1, sqrt(1-p)), K2 = diag(0, sqrt(p)).
inline KrausSet kraus_pair(DephasingStrength p) {
    ComplexMatrix k1(2), k2(2);
    k1(0, 0) = 1.0;
    k1(1, 1) = std::sqrt(1.0 - p.value());
    k2(1, 1) = std::sqrt(p.value());
    return KrausSet({k1, k2});
}

// All 2^n tensor products of the pair; the binary digits of the operator
// index select the per-qubit factor, qubit 1 being the outermost (so index 0
// is K1 x ... x K1 and index 2^n - 1 is K2 x ... x K2).
inline KrausSet product_kraus(int n, DephasingStrength p) {
    if (n < 1 || n > 6) throw InvalidSpec("qubit count must be in 1..6");
    const KrausSet pair = kraus_pair(p);
    std::vector<ComplexMatrix> ops;
    ops.reserve(std::size_t(1) << n);
    for (std::size_t l = 0; l < (std::size_t(1) << n); ++l) {
        ComplexMatrix op = pair.ops[qubit_bit(l, 1, n)];
        for (int q = 2; q <= n; ++q) op = tensor(op, pair.ops[qubit_bit(l, q, n)]);
        ops.push_back(std::move(op));
    }
    return KrausSet(std::move(ops));
}

// Reference path: rho -> sum_l K_l rho K_l^dag over the full product set.
inline DensityMatrix apply_dephasing_kraus(const DensityMatrix& rho, DephasingStrength p) {
    const KrausSet ks = product_kraus(rho.n(), p);
    ComplexMatrix out(rho.mat().dim());
    for (const ComplexMatrix& k : ks.ops) out = out + k * rho.mat() * adjoint(k);
    return DensityMatrix(rho.n(), std::move(out));
}

// Closed form of the same channel: entry (i, j) is damped by
// (1-p)^(h/2) where h is the Hamming distance between i and j.
inline DensityMatrix apply_dephasing_fast(const DensityMatrix& rho, DephasingStrength p) {
    const int dim = rho.mat().dim();
    const double q = std::sqrt(1.0 - p.value());
    std::vector<double> factor(rho.n() + 1, 1.0);
    for (int h = 1; h <= rho.n(); ++h) factor[h] = factor[h - 1] * q;
    ComplexMatrix out(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            out(r, c) = rho.mat()(r, c) *
                        factor[std::popcount(static_cast<unsigned>(r ^ c))];
    return DensityMatrix(rho.n(), std::move(out));
}

// Exponential-decay parametrization p(t) = 1 - e^(-kappa tau); composing two
// exposures multiplies the survival factors (1-p).
inline DephasingStrength p_from_time(double kappa, double tau) {
    if (!(kappa >= 0.0) || !(tau >= 0.0))
        throw NegativeArgument("rate and time must be non-negative");
    return DephasingStrength(-std::expm1(-kappa * tau));
}

}  // namespace cdecay
