#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "clusterdecay/cluster_state.hpp"
#include "clusterdecay/dephasing.hpp"
#include "oracles.hpp"

using namespace cdecay;

TEST_CASE("single-qubit kraus entries", "[dephasing]") {
    const KrausSet at0 = kraus_pair(DephasingStrength(0.0));
    REQUIRE(at0.ops[0] == ComplexMatrix::identity(2));
    REQUIRE(max_abs_diff(at0.ops[1], ComplexMatrix(2)) == 0.0);

    const KrausSet at1 = kraus_pair(DephasingStrength(1.0));
    REQUIRE(at1.ops[0](0, 0) == Complex(1.0, 0.0));
    REQUIRE(at1.ops[0](1, 1) == Complex(0.0, 0.0));
    REQUIRE(at1.ops[1](1, 1) == Complex(1.0, 0.0));

    const KrausSet mid = kraus_pair(DephasingStrength(0.36));
    REQUIRE_THAT(mid.ops[0](1, 1).real(), Catch::Matchers::WithinAbs(0.8, 1e-15));
    REQUIRE_THAT(mid.ops[1](1, 1).real(), Catch::Matchers::WithinAbs(0.6, 1e-15));
    REQUIRE(mid.ops[0](0, 1) == Complex(0.0, 0.0));
    REQUIRE(mid.ops[1](0, 0) == Complex(0.0, 0.0));
}

TEST_CASE("product kraus ordering over two qubits", "[dephasing]") {
    const DephasingStrength p(0.36);
    const KrausSet pair = kraus_pair(p);
    const KrausSet prod = product_kraus(2, p);
    REQUIRE(prod.ops.size() == 4);
    // index bit for qubit 1 selects the left tensor factor
    REQUIRE(max_abs_diff(prod.ops[0], tensor(pair.ops[0], pair.ops[0])) == 0.0);
    REQUIRE(max_abs_diff(prod.ops[1], tensor(pair.ops[0], pair.ops[1])) == 0.0);
    REQUIRE(max_abs_diff(prod.ops[2], tensor(pair.ops[1], pair.ops[0])) == 0.0);
    REQUIRE(max_abs_diff(prod.ops[3], tensor(pair.ops[1], pair.ops[1])) == 0.0);
}

TEST_CASE("product kraus sets are complete", "[dephasing]") {
    for (int n = 1; n <= 4; ++n) {
        const KrausSet ks = product_kraus(n, DephasingStrength(0.3));
        ComplexMatrix sum(1 << n);
        for (const auto& k : ks.ops) sum = sum + adjoint(k) * k;
        REQUIRE(max_abs_diff(sum, ComplexMatrix::identity(1 << n)) < 1e-14);
    }
}

TEST_CASE("kraus sum and closed form agree", "[dephasing]") {
    std::mt19937 rng(21);
    std::vector<DensityMatrix> states;
    states.push_back(oracle::random_density(2, rng));
    states.push_back(oracle::random_density(3, rng));
    states.push_back(density_from_state(oracle::random_product_state(3, rng)));
    states.push_back(representation_density(ClusterSpec::linear_chain(3), RepresentationMask({3})));
    for (const auto& rho : states) {
        for (double p : {0.0, 0.3, 1.0}) {
            const DephasingStrength dp(p);
            const DensityMatrix via_kraus = apply_dephasing_kraus(rho, dp);
            const DensityMatrix via_fast = apply_dephasing_fast(rho, dp);
            REQUIRE(max_abs_diff(via_kraus.mat(), via_fast.mat()) < 1e-12);
        }
    }
}

TEST_CASE("zero strength is the identity channel", "[dephasing]") {
    std::mt19937 rng(22);
    const DensityMatrix rho = oracle::random_density(2, rng);
    REQUIRE(apply_dephasing_fast(rho, DephasingStrength(0.0)).mat() == rho.mat());
    REQUIRE(apply_dephasing_kraus(rho, DephasingStrength(0.0)).mat() == rho.mat());
}

TEST_CASE("full strength kills every off-diagonal exactly", "[dephasing]") {
    std::mt19937 rng(23);
    const DensityMatrix rho = oracle::random_density(3, rng);
    const DensityMatrix out = apply_dephasing_fast(rho, DephasingStrength(1.0));
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
            if (r == c)
                REQUIRE(out.mat()(r, c) == rho.mat()(r, c));
            else
                REQUIRE(out.mat()(r, c) == Complex(0.0, 0.0));
        }
}

TEST_CASE("diagonal entries never change", "[dephasing]") {
    std::mt19937 rng(24);
    const DensityMatrix rho = oracle::random_density(3, rng);
    for (double p : {0.1, 0.5, 0.9}) {
        const DensityMatrix out = apply_dephasing_fast(rho, DephasingStrength(p));
        for (int i = 0; i < 8; ++i) REQUIRE(out.mat()(i, i) == rho.mat()(i, i));
    }
}

TEST_CASE("two applications compose like one", "[dephasing]") {
    std::mt19937 rng(25);
    const DensityMatrix rho = oracle::random_density(3, rng);
    const double p1 = 0.35, p2 = 0.2;
    const double combined = 1.0 - (1.0 - p1) * (1.0 - p2);
    const DensityMatrix twice =
        apply_dephasing_fast(apply_dephasing_fast(rho, DephasingStrength(p1)), DephasingStrength(p2));
    const DensityMatrix once = apply_dephasing_fast(rho, DephasingStrength(combined));
    REQUIRE(max_abs_diff(twice.mat(), once.mat()) < 1e-12);
}

TEST_CASE("strength from rate and time", "[dephasing]") {
    REQUIRE(p_from_time(1.5, 0.0).value() == 0.0);
    REQUIRE(p_from_time(0.0, 7.0).value() == 0.0);
    REQUIRE_THAT(p_from_time(1.0, 0.5).value(),
                 Catch::Matchers::WithinAbs(1.0 - std::exp(-0.5), 1e-15));
    REQUIRE_THAT(p_from_time(2.0, 0.25).value(), Catch::Matchers::WithinAbs(p_from_time(1.0, 0.5).value(), 1e-16));
    REQUIRE(p_from_time(50.0, 50.0).value() <= 1.0);
    REQUIRE(p_from_time(0.3, 1.0).value() < p_from_time(0.3, 2.0).value());
    REQUIRE_THROWS_AS(p_from_time(-1.0, 1.0), NegativeArgument);
    REQUIRE_THROWS_AS(p_from_time(1.0, -0.1), NegativeArgument);
    REQUIRE_THROWS_AS(p_from_time(std::nan(""), 1.0), NegativeArgument);
}

TEST_CASE("strength validation", "[dephasing]") {
    REQUIRE(DephasingStrength(0.0).value() == 0.0);
    REQUIRE(DephasingStrength(1.0).value() == 1.0);
    REQUIRE_THROWS_AS(DephasingStrength(-0.1), OutOfRange);
    REQUIRE_THROWS_AS(DephasingStrength(1.1), OutOfRange);
    REQUIRE_THROWS_AS(DephasingStrength(std::nan("")), OutOfRange);
}

TEST_CASE("incomplete kraus sets are rejected", "[dephasing]") {
    const KrausSet pair = kraus_pair(DephasingStrength(0.5));
    REQUIRE_THROWS_AS(KrausSet({pair.ops[0]}), InvalidState);
    REQUIRE_THROWS_AS(KrausSet({}), InvalidState);
}
