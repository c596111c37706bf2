#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "helpers.hpp"

using namespace rigidity;
using testutil::vec;

namespace {

// certificate soundness: every YES report must carry checkable evidence
void check_yes_evidence(const DecisionReport& report, const MatrixAction& source,
                        const MatrixAction& target) {
    REQUIRE(report.exists_nonaffine);
    REQUIRE(report.evidence.has_value());
    const Evidence& e = *report.evidence;
    CHECK(e.finite_orbit_characters.rank() > 0);
    CHECK_FALSE(is_zero_vec(e.fixed_vector));
    const MatrixAction dual = source.dual();
    for (const IntVec& b : e.stabilizer.lattice().basis()) {
        for (const IntVec& z : e.finite_orbit_characters.basis())
            CHECK(dual.apply(b).apply(z) == z);
        CHECK(target.apply(b).apply(e.fixed_vector) == e.fixed_vector);
    }
}

}  // namespace

TEST_CASE("identity source refuses a reflection target", "[decide]") {
    const MatrixAction source({testutil::identity(1)});
    const MatrixAction target({testutil::reflection1()});
    const DecisionReport report = decide_nonaffine(source, target);
    CHECK_FALSE(report.exists_nonaffine);
    REQUIRE(report.refusal.has_value());
    CHECK(*report.refusal == Refusal::NoStabilizerFixedVector);
    CHECK(report.diagnostics.finite_orbit_rank == 1);
    // the almost criterion disagrees here: the reflection has finite orbits
    const DecisionReport almost = decide_almost(source, target);
    CHECK(almost.exists_nonaffine);
}

TEST_CASE("ergodic source refuses everything", "[decide]") {
    const MatrixAction source({testutil::catmap()});
    for (const IntMatrix& t : {testutil::identity(2), testutil::shear(), testutil::catmap()}) {
        const DecisionReport report = decide_nonaffine(source, MatrixAction({t}));
        CHECK_FALSE(report.exists_nonaffine);
        CHECK(*report.refusal == Refusal::SourceErgodic);
        CHECK(report.diagnostics.finite_orbit_rank == 0);
    }
}

TEST_CASE("shear source maps onto the identity circle", "[decide]") {
    const MatrixAction source({testutil::shear()});
    const MatrixAction target({testutil::identity(1)});
    const DecisionReport report = decide_nonaffine(source, target);
    check_yes_evidence(report, source, target);
    CHECK(report.evidence->stabilizer.index() == 1);
    CHECK(report.evidence->fixed_vector == vec({1}));
    CHECK(report.diagnostics.finite_orbit_rank == 1);
}

TEST_CASE("period-three source maps onto the shear plane", "[decide]") {
    const MatrixAction source({testutil::period3()});
    const MatrixAction target({testutil::shear()});
    const DecisionReport report = decide_nonaffine(source, target);
    check_yes_evidence(report, source, target);
    CHECK(report.evidence->stabilizer.index() == 3);
    CHECK(report.evidence->stabilizer.lattice().basis().front() == vec({3}));
    CHECK(report.evidence->fixed_vector == vec({1, 0}));
    CHECK(report.diagnostics.finite_orbit_rank == 2);
}

TEST_CASE("exact decision against an identity target tracks ergodicity", "[decide]") {
    std::mt19937_64 rng(4001);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + t % 3;
        const IntMatrix m = t % 2 ? testutil::random_nonergodic(rng, n)
                                  : testutil::random_unimodular(rng, n);
        const MatrixAction source({m});
        const MatrixAction target({testutil::identity(1)});
        const DecisionReport report = decide_nonaffine(source, target);
        CHECK(report.exists_nonaffine == !is_ergodic(source));
    }
}

TEST_CASE("rank mismatch is rejected", "[decide]") {
    const MatrixAction one({testutil::shear()});
    const MatrixAction two({testutil::shear(), testutil::identity(2)});
    CHECK_THROWS_AS(decide_nonaffine(one, two), RankMismatch);
    CHECK_THROWS_AS(decide_almost(one, two), RankMismatch);
    CHECK_THROWS_AS(rigidity_certificate(two, one), RankMismatch);
}

TEST_CASE("almost criterion pinned cases", "[decide]") {
    // ergodic source blocks the almost criterion too
    const DecisionReport blocked =
        decide_almost(MatrixAction({testutil::catmap()}), MatrixAction({testutil::shear()}));
    CHECK_FALSE(blocked.exists_nonaffine);
    CHECK(*blocked.refusal == Refusal::SourceErgodic);

    // ergodic target has no finite-orbit vector to aim at
    const DecisionReport no_target =
        decide_almost(MatrixAction({testutil::identity(1)}), MatrixAction({testutil::catmap()}));
    CHECK_FALSE(no_target.exists_nonaffine);
    CHECK(*no_target.refusal == Refusal::NoFiniteOrbitTargetVector);

    // shear target: almost succeeds with the k-index stabilizer
    const DecisionReport yes =
        decide_almost(MatrixAction({testutil::period3()}), MatrixAction({testutil::shear()}));
    REQUIRE(yes.exists_nonaffine);
    CHECK(yes.evidence->stabilizer.index() == 1);
    CHECK(yes.evidence->fixed_vector == vec({1, 0}));

    // reflection target needs two steps to close up
    const DecisionReport refl =
        decide_almost(MatrixAction({testutil::identity(1)}), MatrixAction({testutil::reflection1()}));
    REQUIRE(refl.exists_nonaffine);
    CHECK(refl.evidence->stabilizer.index() == 2);
    for (const IntVec& b : refl.evidence->stabilizer.lattice().basis())
        CHECK(MatrixAction({testutil::reflection1()}).apply(b).apply(refl.evidence->fixed_vector) ==
              refl.evidence->fixed_vector);
}

TEST_CASE("almost criterion is implied by the exact one", "[decide]") {
    std::mt19937_64 rng(4002);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2;
        const IntMatrix a = t % 2 ? testutil::random_nonergodic(rng, n)
                                  : testutil::random_unimodular(rng, n);
        const IntMatrix b = t % 3 ? testutil::random_nonergodic(rng, n)
                                  : testutil::random_unimodular(rng, n);
        const MatrixAction source({a});
        const MatrixAction target({b});
        const DecisionReport exact = decide_nonaffine(source, target);
        const DecisionReport almost = decide_almost(source, target);
        if (exact.exists_nonaffine) CHECK(almost.exists_nonaffine);
        // and the shared refusals coincide
        const std::optional<Refusal> cert = rigidity_certificate(source, target);
        CHECK(almost.exists_nonaffine == !cert.has_value());
        if (cert) CHECK(*almost.refusal == *cert);
    }
}

TEST_CASE("cyclic fast path pinned cases", "[decide]") {
    // quarter turn target: B^3 = -B has no eigenvalue one
    const DecisionReport no = decide_cyclic(testutil::period3(), testutil::quarter_turn());
    CHECK_FALSE(no.exists_nonaffine);
    CHECK(*no.refusal == Refusal::NoStabilizerFixedVector);
    CHECK(*no.diagnostics.cyclic_k == 3);
    CHECK(*no.diagnostics.det_power_minus_identity == 2);

    const DecisionReport yes = decide_cyclic(testutil::period3(), testutil::shear());
    CHECK(yes.exists_nonaffine);
    CHECK(*yes.diagnostics.det_power_minus_identity == 0);

    const DecisionReport ergodic = decide_cyclic(testutil::catmap(), testutil::shear());
    CHECK_FALSE(ergodic.exists_nonaffine);
    CHECK(*ergodic.refusal == Refusal::SourceErgodic);
    CHECK(*ergodic.diagnostics.cyclic_k == 1);

    CHECK_THROWS_AS(decide_cyclic(IntMatrix{{2, 0}, {0, 1}}, testutil::shear()), NotUnimodular);
}

TEST_CASE("cyclic fast path agrees with the exact criterion", "[decide]") {
    std::mt19937_64 rng(4003);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 2 + t % 2;
        const IntMatrix a = t % 2 ? testutil::random_nonergodic(rng, n)
                                  : testutil::random_unimodular(rng, n);
        const IntMatrix b = (t / 2) % 2 ? testutil::random_nonergodic(rng, n)
                                        : testutil::random_unimodular(rng, n);
        const DecisionReport fast = decide_cyclic(a, b);
        const DecisionReport exact = decide_nonaffine(MatrixAction({a}), MatrixAction({b}));
        CHECK(fast.exists_nonaffine == exact.exists_nonaffine);
        if (fast.exists_nonaffine)
            CHECK(fast.evidence->fixed_vector == exact.evidence->fixed_vector);
    }
}

TEST_CASE("factor decision pinned cases", "[decide]") {
    const MatrixAction shear_action({testutil::shear()});
    const MatrixAction circle({testutil::identity(1)});
    const IntMatrix theta{{0, 1}};
    const DecisionReport yes = decide_factor(shear_action, circle, theta);
    CHECK(yes.exists_nonaffine);
    CHECK(yes.mode == DecisionMode::Factor);
    check_yes_evidence(yes, shear_action, circle);

    // ergodic target with a valid factor map refuses
    const MatrixAction cat({testutil::catmap()});
    const DecisionReport no = decide_factor(cat, cat, IntMatrix::identity(2));
    CHECK_FALSE(no.exists_nonaffine);
    CHECK(*no.refusal == Refusal::TargetErgodic);

    // a factor map must intertwine the generators
    CHECK_THROWS_AS(decide_factor(shear_action, cat, IntMatrix::identity(2)), NotEquivariant);
    // and must be surjective on the tangent level
    CHECK_THROWS_AS(decide_factor(shear_action, circle, IntMatrix(1, 2)), NotSurjective);
    // and must have matching shape
    CHECK_THROWS_AS(decide_factor(shear_action, circle, IntMatrix::identity(2)),
                    DimensionMismatch);
}

TEST_CASE("factor decision agrees with the exact criterion through projections", "[decide]") {
    // project away the expanding block of shear x period3
    std::vector<IntMatrix> blocks = {testutil::shear(), testutil::period3()};
    IntMatrix big(4, 4);
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) big(2 * b + i, 2 * b + j) = blocks[b](i, j);
    const MatrixAction source({big});
    const MatrixAction target({testutil::period3()});
    IntMatrix theta(2, 4);
    theta(0, 2) = 1;
    theta(1, 3) = 1;
    const DecisionReport factored = decide_factor(source, target, theta);
    const DecisionReport exact = decide_nonaffine(source, target);
    CHECK(factored.exists_nonaffine == exact.exists_nonaffine);
    CHECK(factored.exists_nonaffine);
}

TEST_CASE("decision reports carry generator k-indices", "[decide]") {
    const DecisionReport report =
        decide_nonaffine(MatrixAction({testutil::period3()}), MatrixAction({testutil::shear()}));
    REQUIRE(report.diagnostics.source_k_indices.size() == 1);
    REQUIRE(report.diagnostics.target_k_indices.size() == 1);
    CHECK(report.diagnostics.source_k_indices[0] == 3);
    CHECK(report.diagnostics.target_k_indices[0] == 1);
    CHECK(report.diagnostics.stabilizer_index.value() == 3);
}
