#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "clusterdecay/cluster_state.hpp"
#include "clusterdecay/complex_matrix.hpp"
#include "clusterdecay/errors.hpp"

namespace cdecay {

// Computed negativities below this are eigensolver noise and reported as 0.
inline constexpr double kZeroThreshold = 1e-9;

// Nonempty set of qubit indices selecting the transposed side of a cut.
class QubitSubset {
  public:
    explicit QubitSubset(std::vector<int> qubits) : qubits_(std::move(qubits)) {
        if (qubits_.empty()) throw InvalidSpec("qubit subset must be nonempty");
        std::sort(qubits_.begin(), qubits_.end());
        for (int q : qubits_)
            if (q < 1) throw IndexOutOfRange("subset qubit index must be >= 1");
        if (std::adjacent_find(qubits_.begin(), qubits_.end()) != qubits_.end())
            throw InvalidSpec("duplicate qubit in subset");
    }

    const std::vector<int>& qubits() const { return qubits_; }

    bool contains(int q) const {
        return std::binary_search(qubits_.begin(), qubits_.end(), q);
    }

    void validate_for(int n) const {
        for (int q : qubits_)
            if (q > n) throw IndexOutOfRange("subset qubit index exceeds qubit count");
    }

    // OR of the basis-index bits of the member qubits.
    std::size_t index_mask(int n) const {
        std::size_t m = 0;
        for (int q : qubits_) m |= std::size_t(1) << (n - q);
        return m;
    }

    QubitSubset complement(int n) const {
        std::vector<int> rest;
        for (int q = 1; q <= n; ++q)
            if (!contains(q)) rest.push_back(q);
        return QubitSubset(std::move(rest));
    }

    std::string digits() const {
        std::string s;
        for (int q : qubits_) s += static_cast<char>('0' + q);
        return s;
    }

    bool operator==(const QubitSubset&) const = default;

  private:
    std::vector<int> qubits_;
};

// Transpose only the indices of the chosen qubits: entry (r, c) moves to the
// index pair whose subset bits are exchanged between r and c. Pure entry
// permutation, hence exactly involutive.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, int n, const QubitSubset& s) {
    s.validate_for(n);
    if (m.dim() != (1 << n)) throw WrongQubitCount("matrix dimension is not 2^n");
    const std::size_t sm = s.index_mask(n);
    ComplexMatrix out(m.dim());
    for (std::size_t r = 0; r < static_cast<std::size_t>(m.dim()); ++r)
        for (std::size_t c = 0; c < static_cast<std::size_t>(m.dim()); ++c)
            out(static_cast<int>((r & ~sm) | (c & sm)),
                static_cast<int>((c & ~sm) | (r & sm))) =
                m(static_cast<int>(r), static_cast<int>(c));
    return out;
}

inline ComplexMatrix partial_transpose(const DensityMatrix& rho, const QubitSubset& s) {
    return partial_transpose(rho.mat(), rho.n(), s);
}

// N = max(0, -lambda_min) of the partial transpose, snapped to 0 below the
// noise threshold so that ESD means exactly N == 0.
inline double negativity(const DensityMatrix& rho, const QubitSubset& s) {
    const auto eigs = hermitian_eigenvalues(partial_transpose(rho, s));
    const double neg = std::max(0.0, -eigs.front());
    return neg < kZeroThreshold ? 0.0 : neg;
}

// Cube root of the product of the three single-qubit negativities; zero as
// soon as any factor is zero.
inline double tri_negativity(const DensityMatrix& rho) {
    if (rho.n() != 3) throw WrongQubitCount("tri-negativity is defined for 3 qubits");
    double prod = 1.0;
    for (int q = 1; q <= 3; ++q) {
        const double nq = negativity(rho, QubitSubset({q}));
        if (nq == 0.0) return 0.0;
        prod *= nq;
    }
    return std::cbrt(prod);
}

// A named entanglement measure: either the negativity of a qubit subset
// ("N1", "N12", ...; digits ascending) or the tri-partite "N3part".
class Measure {
  public:
    static Measure subset(QubitSubset s) { return Measure(false, s.qubits()); }
    static Measure tripartite() { return Measure(true, {}); }

    static Measure parse(const std::string& name) {
        if (name == "N3part") return tripartite();
        if (name.size() < 2 || name[0] != 'N')
            throw ParseError("measure name must be N<digits> or N3part: " + name);
        std::vector<int> qs;
        for (std::size_t i = 1; i < name.size(); ++i) {
            const char ch = name[i];
            if (ch < '1' || ch > '9')
                throw ParseError("measure digits must be 1..9: " + name);
            const int q = ch - '0';
            if (!qs.empty() && q <= qs.back())
                throw ParseError("measure digits must be strictly ascending: " + name);
            qs.push_back(q);
        }
        return Measure(false, std::move(qs));
    }

    bool is_tripartite() const { return tripartite_; }

    QubitSubset qubits() const {
        if (tripartite_) throw InvalidState("tri-partite measure has no subset");
        return QubitSubset(qubits_);
    }

    std::string name() const {
        if (tripartite_) return "N3part";
        std::string s = "N";
        for (int q : qubits_) s += static_cast<char>('0' + q);
        return s;
    }

    void validate_for(int n) const {
        if (tripartite_) {
            if (n != 3) throw WrongQubitCount("N3part requires exactly 3 qubits");
            return;
        }
        for (int q : qubits_)
            if (q > n) throw IndexOutOfRange("measure qubit index exceeds qubit count");
        if (static_cast<int>(qubits_.size()) >= n)
            throw InvalidSpec("measure subset must be a proper subset of the qubits");
    }

    double evaluate(const DensityMatrix& rho) const {
        validate_for(rho.n());
        if (tripartite_) return tri_negativity(rho);
        return negativity(rho, QubitSubset(qubits_));
    }

    bool operator==(const Measure&) const = default;

  private:
    Measure(bool tri, std::vector<int> qs) : tripartite_(tri), qubits_(std::move(qs)) {}

    bool tripartite_;
    std::vector<int> qubits_;
};

// Complement cuts share a spectrum, so fold every subset onto the smaller
// side (preferring the side containing qubit 1 at even split).
inline QubitSubset canonical_subset(const QubitSubset& s, int n) {
    const int size = static_cast<int>(s.qubits().size());
    if (2 * size > n) return s.complement(n);
    if (2 * size == n && !s.contains(1)) return s.complement(n);
    return s;
}

// The inequivalent subset measures for an n-qubit state: all subset sizes up
// to n/2, keeping only the qubit-1 side of even splits. Ordered by size, then
// lexicographically.
inline std::vector<Measure> canonical_measures(int n) {
    if (n < 2 || n > 6) throw InvalidSpec("qubit count must be in 2..6");
    std::vector<std::vector<int>> subsets;
    for (unsigned bits = 1; bits < (1u << n); ++bits) {
        std::vector<int> qs;
        for (int q = 1; q <= n; ++q)
            if (bits & (1u << (q - 1))) qs.push_back(q);
        const int size = static_cast<int>(qs.size());
        if (2 * size > n) continue;
        if (2 * size == n && qs.front() != 1) continue;
        subsets.push_back(std::move(qs));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Measure> out;
    out.reserve(subsets.size());
    for (auto& qs : subsets) out.push_back(Measure::subset(QubitSubset(std::move(qs))));
    return out;
}

}  // namespace cdecay
