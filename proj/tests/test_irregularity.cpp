#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "morphlat/irregularity.hpp"
#include "morphlat/morphology.hpp"
#include "oracles.hpp"

using namespace morphlat;

namespace {

const Metric kEuclid;

VectorImage permute_pixels(const VectorImage& img, const std::vector<std::size_t>& perm) {
    VectorImage out(img.width(), img.height(), img.channels());
    for (std::size_t i = 0; i < perm.size(); ++i) out.set_pixel(i, img.pixel(perm[i]));
    return out;
}

TEST(PixelwiseDistance, Examples) {
    const VectorImage a(2, 1, 1, std::vector<double>{0, 0});
    const VectorImage b(2, 1, 1, std::vector<double>{1, 0});
    EXPECT_EQ(pixelwise_distance(a, a, kEuclid), 0.0);
    EXPECT_DOUBLE_EQ(pixelwise_distance(a, b, kEuclid), 1.0);
    EXPECT_THROW(pixelwise_distance(a, VectorImage(1, 2, 1), kEuclid), Error);
    EXPECT_THROW(pixelwise_distance(a, VectorImage(2, 1, 3), kEuclid), Error);
}

TEST(PixelwiseDistance, MatchesResummation) {
    std::mt19937_64 rng(31);
    const auto a = oracle::random_image(rng, 8, 8, 3);
    const auto b = oracle::random_image(rng, 8, 8, 3);
    EXPECT_NEAR(pixelwise_distance(a, b, kEuclid), oracle::resum_pixelwise(a, b), 1e-10);
}

TEST(Wasserstein, Examples) {
    const VectorImage a(2, 1, 1, std::vector<double>{0, 1});
    const VectorImage b(2, 1, 1, std::vector<double>{1, 1});
    EXPECT_DOUBLE_EQ(wasserstein1(a, b, kEuclid), 1.0);
    EXPECT_THROW(wasserstein1(a, VectorImage(1, 2, 1), kEuclid), Error);
}

TEST(Wasserstein, ZeroForPixelPermutations) {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = oracle::random_image(rng, 6, 5, 3, 8);
        std::vector<std::size_t> perm(img.pixel_count());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        EXPECT_EQ(wasserstein1(img, permute_pixels(img, perm), kEuclid), 0.0);
    }
}

TEST(Wasserstein, MatchesExhaustiveMatchingOn2x2) {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = oracle::random_image(rng, 2, 2, 3, 3);
        const auto b = oracle::random_image(rng, 2, 2, 3, 3);
        const double expect = oracle::exhaustive_matching(a, b);
        EXPECT_NEAR(wasserstein1(a, b, kEuclid), expect, 1e-9);
        EXPECT_NEAR(wasserstein1_by_assignment(a, b, kEuclid), expect, 1e-9);
    }
}

TEST(Wasserstein, TransportAndAssignmentAgreeOnLargerImages) {
    std::mt19937_64 rng(34);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_image(rng, 8, 8, 3, 1 + oracle::below(rng, 40));
        const auto b = oracle::random_image(rng, 8, 8, 3, 1 + oracle::below(rng, 40));
        EXPECT_NEAR(wasserstein1(a, b, kEuclid), wasserstein1_by_assignment(a, b, kEuclid), 1e-9);
    }
}

TEST(Wasserstein, SharedMassCancellationDoesNotChangeTheOptimum) {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_image(rng, 8, 8, 3, 10);
        const auto b = dilate(a, StructuringElement::square(3), OrderScheme::lexicographic());
        const auto full = make_transport_instance(a, b, false);
        const double uncancelled = solve_transport(full.costs(kEuclid), full.source_mass, full.sink_mass).cost;
        EXPECT_NEAR(wasserstein1(a, b, kEuclid), uncancelled, 1e-9);
    }
}

TEST(Wasserstein, SymmetricAndBoundedByPixelwise) {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = oracle::random_image(rng, 5, 4, 3, 6);
        const auto b = oracle::random_image(rng, 5, 4, 3, 6);
        const double ab = wasserstein1(a, b, kEuclid), ba = wasserstein1(b, a, kEuclid);
        EXPECT_NEAR(ab, ba, 1e-9);
        EXPECT_GE(ab, 0.0);
        EXPECT_LE(ab, pixelwise_distance(a, b, kEuclid) + 1e-9);
    }
}

TEST(Transport, CertificateHoldsAndRejectsBadInstances) {
    std::mt19937_64 rng(37);
    CostMatrix c{3, 4, {}};
    for (int i = 0; i < 12; ++i) c.cost.push_back(oracle::uniform(rng));
    const std::vector<std::int64_t> supply{3, 1, 2}, demand{1, 2, 2, 1};
    const auto sol = solve_transport(c, supply, demand);
    EXPECT_TRUE(check_transport_optimality(c, supply, demand, sol).empty());

    auto broken = sol;
    broken.row_potential[0] -= 1.0;  // breaks complementary slackness or dual feasibility
    EXPECT_FALSE(check_transport_optimality(c, supply, demand, broken).empty());

    EXPECT_THROW(solve_transport(c, std::vector<std::int64_t>{3, 1, 1}, demand), Error);
    EXPECT_THROW(solve_transport(c, std::vector<std::int64_t>{0, 4, 2}, demand), Error);
}

TEST(Transport, AssignmentOnKnownMatrix) {
    // Optimal: row0->col1 (1), row1->col0 (2), row2->col2 (2).
    const CostMatrix c{3, 3, {4, 1, 3, 2, 0, 5, 3, 2, 2}};
    const auto a = solve_assignment(c);
    EXPECT_DOUBLE_EQ(a.cost, 5.0);
    const std::vector<std::int64_t> ones{1, 1, 1};
    EXPECT_DOUBLE_EQ(solve_transport(c, ones, ones).cost, 5.0);
}

TEST(IrregularityIndex, IdentityAndPermutation) {
    std::mt19937_64 rng(38);
    const auto img = oracle::random_image(rng, 4, 4, 3, 5);
    const auto same = irregularity_index(img, img, kEuclid);
    EXPECT_EQ(same.phi_percent, 0.0);
    EXPECT_EQ(same.pixelwise, 0.0);

    std::vector<std::size_t> perm(img.pixel_count());
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::reverse(perm.begin(), perm.end());
    const auto moved = permute_pixels(img, perm);
    ASSERT_FALSE(moved == img);
    const auto r = irregularity_index(img, moved, kEuclid);
    EXPECT_EQ(r.wasserstein, 0.0);
    EXPECT_EQ(r.phi_percent, 100.0);
}

TEST(IrregularityIndex, HandComputed2x2) {
    // I = [0, 0.2, 0.6, 1], J = [0.2, 0, 1, 1] (gray).
    // D1 = 0.2 + 0.2 + 0.4 + 0 = 0.8. Shared mass {0, 0.2, 1} cancels, leaving
    // 0.6 -> 1 at cost 0.4, so W1 = 0.4 and phi = 50%.
    const VectorImage i(2, 2, 1, std::vector<double>{0, 0.2, 0.6, 1});
    const VectorImage j(2, 2, 1, std::vector<double>{0.2, 0, 1, 1});
    const auto r = irregularity_index(i, j, kEuclid);
    EXPECT_NEAR(r.pixelwise, 0.8, 1e-12);
    EXPECT_NEAR(r.wasserstein, oracle::exhaustive_matching(i, j), 1e-12);
    EXPECT_NEAR(r.wasserstein, 0.4, 1e-12);
    EXPECT_NEAR(r.phi_percent, 50.0, 1e-9);
}

TEST(IrregularityIndex, InvariantUnderJointPermutationAndMetricScaling) {
    std::mt19937_64 rng(39);
    const auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto img = oracle::random_image(rng, 6, 6, 3, 12);
        const auto out = erode(img, se, OrderScheme::lexicographic());
        std::vector<std::size_t> perm(img.pixel_count());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        const auto base = irregularity_index(img, out, kEuclid);
        const auto permuted = irregularity_index(permute_pixels(img, perm), permute_pixels(out, perm), kEuclid);
        EXPECT_NEAR(base.phi_percent, permuted.phi_percent, 1e-9);

        // Rescaling every sample by c scales a norm-induced metric by c.
        std::vector<double> scaled_a = img.data(), scaled_b = out.data();
        for (auto& x : scaled_a) x *= 3.0;
        for (auto& x : scaled_b) x *= 3.0;
        const auto scaled = irregularity_index(VectorImage(6, 6, 3, scaled_a), VectorImage(6, 6, 3, scaled_b), kEuclid);
        EXPECT_NEAR(scaled.pixelwise, 3.0 * base.pixelwise, 1e-9);
        EXPECT_NEAR(scaled.wasserstein, 3.0 * base.wasserstein, 1e-9);
        EXPECT_NEAR(scaled.phi_percent, base.phi_percent, 1e-9);
        EXPECT_GE(base.phi_percent, 0.0);
        EXPECT_LE(base.phi_percent, 100.0);
    }
}

} // namespace
