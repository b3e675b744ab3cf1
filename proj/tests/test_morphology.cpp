#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "morphlat/morphology.hpp"
#include "morphlat/tsp_order.hpp"
#include "oracles.hpp"

using namespace morphlat;

namespace {

VectorImage gray_row(std::vector<double> v) {
    const auto w = v.size();
    return VectorImage(w, 1, 1, std::move(v));
}

const StructuringElement kHorizontal3({{0, -1}, {0, 0}, {0, 1}});
const StructuringElement kRightPair({{0, 0}, {0, 1}});
const auto kLex = OrderScheme::lexicographic();

TEST(Dilate, SlidingMaxWithTruncatedBorder) {
    EXPECT_EQ(dilate(gray_row({0.2, 0.8, 0.5}), kHorizontal3, kLex), gray_row({0.8, 0.8, 0.8}));
}

TEST(Erode, SlidingMinWithTruncatedBorder) {
    EXPECT_EQ(erode(gray_row({0.2, 0.8, 0.5}), kHorizontal3, kLex), gray_row({0.2, 0.2, 0.5}));
}

TEST(Dilate, RedBlueUnderLex) {
    const auto img = VectorImage::from_values(2, 1, {{1, 0, 0}, {0, 0, 1}});
    // Dilation reads p - s: pixel 0 sees {red}, pixel 1 sees {blue, red}.
    EXPECT_EQ(dilate(img, kRightPair, kLex), VectorImage::from_values(2, 1, {{1, 0, 0}, {1, 0, 0}}));
    // Erosion reads p + s: pixel 0 sees {red, blue}, pixel 1 sees {blue}.
    EXPECT_EQ(erode(img, kRightPair, kLex), VectorImage::from_values(2, 1, {{0, 0, 1}, {0, 0, 1}}));
    // The reflected element gives the dilation window {red, blue} at pixel 0.
    const StructuringElement left_pair({{0, 0}, {0, -1}});
    EXPECT_EQ(dilate(img, left_pair, kLex), VectorImage::from_values(2, 1, {{1, 0, 0}, {0, 0, 1}}));
}

TEST(Dilate, MarginalProducesFalseColor) {
    const auto img = VectorImage::from_values(2, 1, {{1, 0, 0}, {0, 0, 1}});
    const auto out = dilate(img, kHorizontal3, OrderScheme::marginal());
    EXPECT_EQ(out.value(0), (VectorValue{1, 0, 1}));
    EXPECT_EQ(out.value(1), (VectorValue{1, 0, 1}));
}

TEST(Opening, RemovesPeak) {
    const auto img = gray_row({0, 1, 0});
    const auto eroded = erode(img, kRightPair, kLex);
    EXPECT_EQ(eroded, gray_row({0, 0, 0}));
    EXPECT_EQ(dilate(eroded, kRightPair, kLex), gray_row({0, 0, 0}));
    EXPECT_EQ(opening(img, kRightPair, kLex), gray_row({0, 0, 0}));
}

TEST(Morphology, ConstantImageUnchanged) {
    const VectorImage img(5, 4, 3, 0.4);
    const auto se = StructuringElement::square(3);
    const auto rank = OrderScheme::rank(RankOrder({VectorValue{0.4, 0.4, 0.4}}));
    for (const auto& order : {kLex, rank}) {
        for (auto op : {Operator::Dilate, Operator::Erode, Operator::Open, Operator::Close}) {
            EXPECT_EQ(apply(op, img, se, order), img);
        }
    }
}

TEST(Morphology, EmptyWindowIsAnError) {
    // Offsets pointing two pixels away leave pixels of a 1x2 image without support.
    const StructuringElement far({{0, 2}});
    try {
        dilate(gray_row({0.1, 0.2}), far, kLex);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyWindow);
    }
    EXPECT_THROW(erode(gray_row({0.1, 0.2}), far, OrderScheme::marginal()), Error);
}

TEST(Morphology, RankOrderMustCoverImage) {
    const auto rank = OrderScheme::rank(RankOrder({VectorValue{0.1}}));
    try {
        dilate(gray_row({0.1, 0.2}), kHorizontal3, rank);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OutsideOrderSupport);
    }
}

TEST(StructuringElementTest, Construction) {
    EXPECT_EQ(StructuringElement::square(3).offsets().size(), 9u);
    EXPECT_EQ(StructuringElement::cross(3).offsets().size(), 5u);
    EXPECT_EQ(StructuringElement::cross(5).offsets().size(), 9u);
    EXPECT_TRUE(StructuringElement::square(1).contains_origin());
    EXPECT_EQ(StructuringElement::parse("cross:5").descriptor(), "cross:5");
    EXPECT_THROW(StructuringElement::square(4), Error);
    EXPECT_THROW(StructuringElement::parse("disk:3"), Error);
    EXPECT_THROW(StructuringElement::parse("square:x"), Error);
    EXPECT_THROW(StructuringElement({}), Error);
    EXPECT_THROW(StructuringElement({{0, 0}, {0, 0}}), Error);
}

TEST(Dilate, MatchesWindowScanUnderLex) {
    std::mt19937_64 rng(101);
    const auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = oracle::random_image(rng, 8, 8, 3, 12);
        EXPECT_EQ(dilate(img, se, kLex), oracle::lex_flat(img, se.offsets(), true));
        EXPECT_EQ(erode(img, se, kLex), oracle::lex_flat(img, se.offsets(), false));
    }
}

TEST(Erode, MatchesMinimalRankScan) {
    std::mt19937_64 rng(202);
    const auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = oracle::random_image(rng, 8, 8, 3, 15);
        // A random rank order over V(img).
        auto values = distinct_values(img);
        std::shuffle(values.begin(), values.end(), rng);
        const auto list = values;
        const auto order = OrderScheme::rank(RankOrder(values));
        auto rank_of = [&](const std::vector<double>& v) {
            return static_cast<std::size_t>(std::find(list.begin(), list.end(), VectorValue(v)) - list.begin());
        };
        EXPECT_EQ(erode(img, se, order), oracle::rank_flat(img, se.offsets(), false, rank_of));
        EXPECT_EQ(dilate(img, se, order), oracle::rank_flat(img, se.offsets(), true, rank_of));
    }
}

TEST(Opening, IdempotentOnRandomImages) {
    std::mt19937_64 rng(303);
    const auto cross = StructuringElement::cross(3);
    for (int trial = 0; trial < 50; ++trial) {
        const auto img = oracle::random_image(rng, 8, 8, 3, 20);
        const auto once = opening(img, cross, kLex);
        EXPECT_EQ(opening(once, cross, kLex), once);
        const auto closed = closing(img, cross, kLex);
        EXPECT_EQ(closing(closed, cross, kLex), closed);
    }
}

TEST(Morphology, ExtensivityAndNoFalseValues) {
    std::mt19937_64 rng(404);
    const auto se = StructuringElement::square(3);
    const Metric metric;
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = oracle::random_image(rng, 8, 8, 3, 16);
        const auto tsp = OrderScheme::rank(build_tsp_order(img, metric).order);
        const auto support = distinct_values(img);
        for (const auto& order : {kLex, tsp}) {
            const auto d = dilate(img, se, order), e = erode(img, se, order);
            const auto o = opening(img, se, order), c = closing(img, se, order);
            for (std::size_t i = 0; i < img.pixel_count(); ++i) {
                const auto v = img.value(i);
                EXPECT_TRUE(order.compare(e.value(i), v) <= 0);
                EXPECT_TRUE(order.compare(d.value(i), v) >= 0);
                EXPECT_TRUE(order.compare(o.value(i), v) <= 0);
                EXPECT_TRUE(order.compare(c.value(i), v) >= 0);
                for (const auto* out : {&d, &e, &o, &c}) {
                    EXPECT_TRUE(std::binary_search(support.begin(), support.end(), out->value(i)));
                }
            }
        }
    }
}

TEST(Morphology, GrayscaleLexEqualsScalarMorphology) {
    std::mt19937_64 rng(505);
    const auto se = StructuringElement::square(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto img = oracle::random_image(rng, 7, 5, 1);
        EXPECT_EQ(dilate(img, se, kLex).data(), oracle::scalar_flat(img.data(), 7, 5, se.offsets(), true));
        EXPECT_EQ(erode(img, se, kLex).data(), oracle::scalar_flat(img.data(), 7, 5, se.offsets(), false));
    }
}

TEST(Morphology, MarginalMatchesComponentwiseScalar) {
    std::mt19937_64 rng(606);
    const auto se = StructuringElement::cross(3);
    const auto img = oracle::random_image(rng, 6, 6, 3);
    const auto out = dilate(img, se, OrderScheme::marginal());
    for (std::size_t ch = 0; ch < 3; ++ch) {
        std::vector<double> plane;
        for (std::size_t i = 0; i < img.pixel_count(); ++i) plane.push_back(img.pixel(i)[ch]);
        const auto expect = oracle::scalar_flat(plane, 6, 6, se.offsets(), true);
        for (std::size_t i = 0; i < img.pixel_count(); ++i) EXPECT_EQ(out.pixel(i)[ch], expect[i]);
    }
}

} // namespace
