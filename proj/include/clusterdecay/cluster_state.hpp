#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "clusterdecay/complex_matrix.hpp"
#include "clusterdecay/errors.hpp"

namespace cdecay {

// Basis-index convention used throughout: qubit 1 is the most significant bit
// of the computational-basis index, qubit n the least significant.
inline int qubit_bit(std::size_t basis, int qubit, int n) {
    return static_cast<int>(basis >> (n - qubit)) & 1;
}

// Undirected graph on qubits 1..n whose edges carry the CZ gates.
struct ClusterSpec {
    int n;
    std::vector<std::pair<int, int>> edges;  // normalized to i < j, sorted, unique

    ClusterSpec(int n_, std::vector<std::pair<int, int>> edges_) : n(n_), edges(std::move(edges_)) {
        if (n < 2 || n > 6) throw InvalidSpec("qubit count must be in 2..6");
        for (auto& [i, j] : edges) {
            if (i > j) std::swap(i, j);
            if (i == j) throw InvalidSpec("self-loop edge");
            if (i < 1 || j > n) throw InvalidSpec("edge endpoint outside 1..n");
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw InvalidSpec("duplicate edge");
    }

    static ClusterSpec linear_chain(int n_) {
        std::vector<std::pair<int, int>> e;
        for (int i = 1; i < n_; ++i) e.emplace_back(i, i + 1);
        return ClusterSpec(n_, std::move(e));
    }

    std::string graph_label() const {
        if (edges.empty()) return "none";
        std::string s;
        for (std::size_t k = 0; k < edges.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(edges[k].first) + '-' + std::to_string(edges[k].second);
        }
        return s;
    }

    bool operator==(const ClusterSpec&) const = default;
};

// Subset of qubits that receive a Hadamard to switch representation.
class RepresentationMask {
  public:
    RepresentationMask() = default;

    explicit RepresentationMask(std::vector<int> qubits) : qubits_(std::move(qubits)) {
        std::sort(qubits_.begin(), qubits_.end());
        for (int q : qubits_)
            if (q < 1) throw IndexOutOfRange("mask qubit index must be >= 1");
        if (std::adjacent_find(qubits_.begin(), qubits_.end()) != qubits_.end())
            throw InvalidSpec("duplicate qubit in mask");
    }

    // Bit k of `bits` set selects qubit k+1 (enumeration helper for classify).
    static RepresentationMask from_bits(unsigned bits) {
        std::vector<int> qs;
        for (int q = 1; bits != 0; ++q, bits >>= 1)
            if (bits & 1u) qs.push_back(q);
        return RepresentationMask(std::move(qs));
    }

    const std::vector<int>& qubits() const { return qubits_; }

    unsigned bits() const {
        unsigned b = 0;
        for (int q : qubits_) b |= 1u << (q - 1);
        return b;
    }

    bool contains(int q) const {
        return std::binary_search(qubits_.begin(), qubits_.end(), q);
    }

    void validate_for(int n) const {
        for (int q : qubits_)
            if (q > n) throw IndexOutOfRange("mask qubit index exceeds qubit count");
    }

    std::string label() const {
        if (qubits_.empty()) return "none";
        std::string s;
        for (std::size_t k = 0; k < qubits_.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(qubits_[k]);
        }
        return s;
    }

    bool operator==(const RepresentationMask&) const = default;

  private:
    std::vector<int> qubits_;
};

struct StateVector {
    int n = 0;
    std::vector<Complex> amps;

    double norm() const {
        double s = 0.0;
        for (const Complex& a : amps) s += std::norm(a);
        return std::sqrt(s);
    }
};

// |+>^n followed by CZ on every edge. CZ is diagonal, so the state is uniform
// up to a sign: amplitude of |b> is (-1)^(#edges whose both endpoints read 1).
inline StateVector build_cluster(const ClusterSpec& spec) {
    const std::size_t dim = std::size_t(1) << spec.n;
    StateVector st{spec.n, std::vector<Complex>(dim)};
    const double amp = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        int flips = 0;
        for (const auto& [i, j] : spec.edges)
            flips += qubit_bit(b, i, spec.n) & qubit_bit(b, j, spec.n);
        st.amps[b] = Complex((flips & 1) ? -amp : amp, 0.0);
    }
    return st;
}

// Hadamard on each masked qubit (butterfly over the matching index bit).
inline StateVector apply_hadamards(const StateVector& st, const RepresentationMask& mask) {
    mask.validate_for(st.n);
    StateVector out = st;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int q : mask.qubits()) {
        const std::size_t stride = std::size_t(1) << (st.n - q);
        for (std::size_t b = 0; b < out.amps.size(); ++b) {
            if (b & stride) continue;
            const Complex lo = out.amps[b];
            const Complex hi = out.amps[b | stride];
            out.amps[b] = (lo + hi) * inv_sqrt2;
            out.amps[b | stride] = (lo - hi) * inv_sqrt2;
        }
    }
    return out;
}

// n-qubit density matrix. The constructor enforces Hermiticity and unit trace;
// positive semidefiniteness is preserved by every channel in this library and
// can be spot-checked with validate() (it costs an eigensolve).
class DensityMatrix {
  public:
    DensityMatrix(int n, ComplexMatrix mat) : n_(n), mat_(std::move(mat)) {
        if (n_ < 1 || mat_.dim() != (1 << n_))
            throw InvalidState("density matrix dimension must be 2^n");
        if (!is_hermitian(mat_, 1e-12)) throw InvalidState("density matrix not Hermitian");
        if (std::abs(trace(mat_) - Complex(1.0, 0.0)) > 1e-12)
            throw InvalidState("density matrix trace differs from 1");
    }

    int n() const { return n_; }
    const ComplexMatrix& mat() const { return mat_; }

    void validate() const {
        const auto eigs = hermitian_eigenvalues(mat_);
        if (eigs.front() < -1e-10)
            throw InvalidState("density matrix has a negative eigenvalue");
    }

  private:
    int n_;
    ComplexMatrix mat_;
};

inline DensityMatrix density_from_state(const StateVector& st) {
    if (std::abs(st.norm() - 1.0) > 1e-9)
        throw NotNormalized("state vector norm deviates from 1");
    const int dim = static_cast<int>(st.amps.size());
    ComplexMatrix rho(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) rho(r, c) = st.amps[r] * std::conj(st.amps[c]);
    return DensityMatrix(st.n, std::move(rho));
}

inline DensityMatrix representation_density(const ClusterSpec& spec,
                                            const RepresentationMask& mask) {
    return density_from_state(apply_hadamards(build_cluster(spec), mask));
}

}  // namespace cdecay
