#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "clusterdecay/cluster_state.hpp"
#include "clusterdecay/dephasing.hpp"
#include "clusterdecay/errors.hpp"
#include "clusterdecay/negativity.hpp"

namespace cdecay {

// Inclusive evenly spaced grid; the same arithmetic backs the CLI p-range and
// the canonical grid so identical requests give bit-identical points.
inline std::vector<double> linspace(double start, double stop, int steps) {
    if (steps < 2) throw OutOfRange("grid needs at least 2 steps");
    if (!(start < stop)) throw OutOfRange("grid start must be below stop");
    if (!(start >= 0.0 && stop <= 1.0)) throw OutOfRange("grid must lie in [0, 1]");
    std::vector<double> g(steps);
    for (int k = 0; k < steps; ++k)
        g[k] = start + k * (stop - start) / (steps - 1);
    g.back() = stop;
    return g;
}

// 201 points, p = k/200: fine enough to localize every threshold to < 0.005
// before bisection takes over.
inline const std::vector<double>& canonical_grid() {
    static const std::vector<double> grid = linspace(0.0, 1.0, 201);
    return grid;
}

struct DecayCurve {
    ClusterSpec spec;
    RepresentationMask mask;
    std::vector<double> grid;
    std::vector<Measure> measures;
    std::vector<std::vector<double>> values;  // values[measure][grid point]
};

inline DecayCurve decay_curve(const ClusterSpec& spec, const RepresentationMask& mask,
                              const std::vector<Measure>& measures,
                              const std::vector<double>& grid) {
    mask.validate_for(spec.n);
    for (const Measure& m : measures) m.validate_for(spec.n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
            throw OutOfRange("grid point outside [0, 1]");
        if (i > 0 && !(grid[i] > grid[i - 1]))
            throw OutOfRange("grid must be strictly ascending");
    }
    DecayCurve curve{spec, mask, grid, measures,
                     std::vector<std::vector<double>>(measures.size())};
    for (auto& v : curve.values) v.reserve(grid.size());
    const DensityMatrix rho0 = representation_density(spec, mask);
    for (double p : grid) {
        const DensityMatrix rho = apply_dephasing_fast(rho0, DephasingStrength(p));
        for (std::size_t mi = 0; mi < measures.size(); ++mi)
            curve.values[mi].push_back(measures[mi].evaluate(rho));
    }
    return curve;
}

struct EsdResult {
    bool esd;          // true: entanglement dies at threshold; false: survives
    double threshold;  // meaningful only when esd
    double tolerance;
    bool warning;  // non-monotone scan, or no grid point was entangled at all
    std::string measure;
    ClusterSpec spec;
    RepresentationMask mask;
};

// Locate the dephasing strength where the measure's negativity reaches zero.
// A probe just below p = 1 decides the verdict; an Esd threshold is then the
// last crossing of the zero threshold on the canonical grid, refined by
// bisection until the bracket is narrower than tol. A rise back above zero
// after the first collapse only sets the warning flag. If no grid point is
// entangled at all the result is Esd at 0 with a warning.
inline EsdResult esd_threshold(const ClusterSpec& spec, const RepresentationMask& mask,
                               const Measure& measure, double tol = 1e-6) {
    if (!(tol >= 1e-8 && tol < 1.0))
        throw OutOfRange("bisection tolerance must lie in [1e-8, 1)");
    mask.validate_for(spec.n);
    measure.validate_for(spec.n);
    const DensityMatrix rho0 = representation_density(spec, mask);
    const auto value_at = [&](double p) {
        return measure.evaluate(apply_dephasing_fast(rho0, DephasingStrength(p)));
    };

    const double probe = 1.0 - 1e-3;
    if (value_at(probe) >= kZeroThreshold)
        return EsdResult{false, std::numeric_limits<double>::quiet_NaN(), tol,
                         false, measure.name(), spec, mask};

    const std::vector<double>& grid = canonical_grid();
    int last_alive = -1;
    bool died = false;
    bool warning = false;
    for (std::size_t i = 0; i < grid.size() && grid[i] < probe; ++i) {
        if (value_at(grid[i]) >= kZeroThreshold) {
            if (died) warning = true;
            last_alive = static_cast<int>(i);
        } else if (last_alive >= 0) {
            died = true;
        }
    }
    if (last_alive < 0)
        return EsdResult{true, 0.0, tol, true, measure.name(), spec, mask};

    double lo = grid[last_alive];
    double hi = std::min(grid[last_alive + 1], probe);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (value_at(mid) >= kZeroThreshold ? lo : hi) = mid;
    }
    return EsdResult{true, 0.5 * (lo + hi), tol, warning, measure.name(), spec, mask};
}

// Masks whose full decay signatures coincide; the stored signature is the
// representative's (lowest mask bits) curve set over the canonical measures.
struct RepClass {
    std::vector<RepresentationMask> members;
    DecayCurve signature;

    const RepresentationMask& representative() const { return members.front(); }
};

namespace detail {

// Signature matching treats masks as equivalent when some relabeling of the
// qubits maps one curve set onto the other; the channel is qubit-symmetric,
// so a relabeling is physically the same storage strategy. This subsumes the
// chain mirror and captures e.g. {3} ~ {1,2,3} on the 3-chain.
inline bool signatures_match(const std::vector<std::vector<double>>& a,
                             const std::vector<std::vector<double>>& b,
                             const std::vector<Measure>& measures,
                             const std::map<std::vector<int>, std::size_t>& index_of,
                             int n, double tol) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    do {
        bool ok = true;
        for (std::size_t mi = 0; mi < measures.size() && ok; ++mi) {
            const QubitSubset sub = measures[mi].qubits();
            std::vector<int> mapped;
            for (int q : sub.qubits()) mapped.push_back(perm[q - 1]);
            const QubitSubset folded = canonical_subset(QubitSubset(std::move(mapped)), n);
            const std::vector<double>& av = a[index_of.at(folded.qubits())];
            const std::vector<double>& bv = b[mi];
            for (std::size_t gi = 0; gi < bv.size(); ++gi)
                if (std::abs(av[gi] - bv[gi]) > tol) {
                    ok = false;
                    break;
                }
        }
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

}  // namespace detail

// Partition all 2^n Hadamard masks into decay-equivalence classes on the
// canonical grid. Classes are ordered by descending robustness of their
// representative's first measure at p = 0.5, ties by representative bits.
inline std::vector<RepClass> classify_representations(const ClusterSpec& spec,
                                                      double tol = 1e-9) {
    const std::vector<Measure> measures = canonical_measures(spec.n);
    const std::vector<double>& grid = canonical_grid();

    std::map<std::vector<int>, std::size_t> index_of;
    for (std::size_t mi = 0; mi < measures.size(); ++mi)
        index_of[measures[mi].qubits().qubits()] = mi;

    const unsigned mask_count = 1u << spec.n;
    std::vector<DecayCurve> curves;
    curves.reserve(mask_count);
    for (unsigned bits = 0; bits < mask_count; ++bits)
        curves.push_back(
            decay_curve(spec, RepresentationMask::from_bits(bits), measures, grid));

    std::vector<RepClass> classes;
    for (unsigned bits = 0; bits < mask_count; ++bits) {
        bool placed = false;
        for (RepClass& cls : classes) {
            if (detail::signatures_match(curves[bits].values, cls.signature.values,
                                         measures, index_of, spec.n, tol)) {
                cls.members.push_back(RepresentationMask::from_bits(bits));
                placed = true;
                break;
            }
        }
        if (!placed)
            classes.push_back(
                RepClass{{RepresentationMask::from_bits(bits)}, curves[bits]});
    }

    const std::size_t half = (grid.size() - 1) / 2;  // index of p = 0.5
    std::stable_sort(classes.begin(), classes.end(),
                     [&](const RepClass& x, const RepClass& y) {
                         const double vx = x.signature.values[0][half];
                         const double vy = y.signature.values[0][half];
                         if (vx != vy) return vx > vy;
                         return x.representative().bits() < y.representative().bits();
                     });
    return classes;
}

struct RankedEntry {
    RepresentationMask mask;
    double value;
    bool tied_with_prev;  // within 1e-9 of the entry above
};

struct MeasureRanking {
    Measure measure;
    std::vector<RankedEntry> entries;  // descending value
};

struct MaskDominance {
    Measure measure;
    RepresentationMask mask;
    // Maximal canonical-grid intervals where this mask's value is within
    // 1e-9 of the best across the compared masks.
    std::vector<std::pair<double, double>> intervals;
};

struct RobustnessReport {
    double p;
    std::vector<Measure> measures;
    std::vector<MeasureRanking> rankings;
    std::vector<std::pair<RepresentationMask, int>> first_counts;  // input order
    std::vector<MaskDominance> dominance;
};

// Rank the given masks by negativity at one dephasing strength, measure by
// measure; the summary counts how often each mask comes first and lists the
// p-intervals on which it dominates. Ties break toward the lexicographically
// smaller mask and are flagged.
inline RobustnessReport robustness_ranking(const ClusterSpec& spec,
                                           const std::vector<RepresentationMask>& masks,
                                           DephasingStrength p) {
    if (masks.empty()) throw InvalidSpec("robustness ranking needs at least one mask");
    for (const RepresentationMask& m : masks) m.validate_for(spec.n);

    std::vector<Measure> measures = canonical_measures(spec.n);
    if (spec.n == 3) measures.push_back(Measure::tripartite());

    const std::vector<double>& grid = canonical_grid();
    std::vector<DecayCurve> curves;
    std::vector<std::vector<double>> at_p(masks.size());
    for (std::size_t k = 0; k < masks.size(); ++k) {
        curves.push_back(decay_curve(spec, masks[k], measures, grid));
        const DensityMatrix rho =
            apply_dephasing_fast(representation_density(spec, masks[k]), p);
        for (const Measure& m : measures) at_p[k].push_back(m.evaluate(rho));
    }

    RobustnessReport report{p.value(), measures, {}, {}, {}};
    std::vector<int> firsts(masks.size(), 0);

    for (std::size_t mi = 0; mi < measures.size(); ++mi) {
        std::vector<std::size_t> order(masks.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t ka, std::size_t kb) {
            if (at_p[ka][mi] != at_p[kb][mi]) return at_p[ka][mi] > at_p[kb][mi];
            return masks[ka].qubits() < masks[kb].qubits();
        });
        MeasureRanking ranking{measures[mi], {}};
        for (std::size_t r = 0; r < order.size(); ++r) {
            const double v = at_p[order[r]][mi];
            const bool tied =
                r > 0 && std::abs(at_p[order[r - 1]][mi] - v) <= kZeroThreshold;
            ranking.entries.push_back(RankedEntry{masks[order[r]], v, tied});
        }
        ++firsts[order.front()];
        report.rankings.push_back(std::move(ranking));

        for (std::size_t k = 0; k < masks.size(); ++k) {
            MaskDominance dom{measures[mi], masks[k], {}};
            int start = -1;
            for (std::size_t gi = 0; gi <= grid.size(); ++gi) {
                bool dominant = false;
                if (gi < grid.size()) {
                    double best = 0.0;
                    for (std::size_t kk = 0; kk < masks.size(); ++kk)
                        best = std::max(best, curves[kk].values[mi][gi]);
                    dominant = curves[k].values[mi][gi] >= best - kZeroThreshold;
                }
                if (dominant && start < 0) start = static_cast<int>(gi);
                if (!dominant && start >= 0) {
                    dom.intervals.emplace_back(grid[start], grid[gi - 1]);
                    start = -1;
                }
            }
            report.dominance.push_back(std::move(dom));
        }
    }

    for (std::size_t k = 0; k < masks.size(); ++k)
        report.first_counts.emplace_back(masks[k], firsts[k]);
    return report;
}

}  // namespace cdecay
