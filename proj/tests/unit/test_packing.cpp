#include <gtest/gtest.h>

#include <set>

#include "bicrypt/ckks/evaluator.hpp"
#include "bicrypt/error.hpp"
#include "bicrypt/packing/layout.hpp"
#include "unit/util.hpp"

using namespace bicrypt;
using namespace bicrypt::packing;

namespace {

std::vector<Tensor3> random_batch(std::mt19937_64& rng, int n, int c, int h, int w) {
    std::vector<Tensor3> b;
    for (int i = 0; i < n; ++i) {
        Tensor3 t(c, h, w);
        t.data = bicrypt::testing::random_reals(rng, t.data.size());
        b.push_back(std::move(t));
    }
    return b;
}

}  // namespace

TEST(Packing, BhwCifarBatchFillsThreeCiphertexts) {
    const PackLayout l{Strategy::BHW, 32, 16, 16, 3, 8192};
    EXPECT_NO_THROW(validate(l));
    EXPECT_EQ(ciphertext_count(l), 3);
    EXPECT_EQ(required_slots(l), 8192);
    std::mt19937_64 rng(1);
    const auto ctx = ckks::make_context(1 << 14, 1, 1.0);
    const auto cts = pack(random_batch(rng, 32, 3, 16, 16), l, ctx);
    EXPECT_EQ(cts.size(), 3u);
}

TEST(Packing, BhwMnistSegmentBatch) {
    const PackLayout l{Strategy::BHW, 20, 14, 14, 1, 8192};
    EXPECT_EQ(ciphertext_count(l), 1);
    EXPECT_EQ(required_slots(l), 3920);
}

TEST(Packing, HwSingleImageIsRowMajor) {
    const auto ctx = ckks::make_context(16, 1, 1.0);
    const PackLayout l{Strategy::HW, 1, 2, 2, 1, ctx.slot_count()};
    Tensor3 t(1, 2, 2);
    t.data = {1, 2, 3, 4};
    const auto cts = pack({t}, l, ctx);
    ASSERT_EQ(cts.size(), 1u);
    EXPECT_EQ(ckks::decrypt_vector(cts[0], ctx).values(), (std::vector<double>{1, 2, 3, 4, 0, 0, 0, 0}));
}

TEST(Packing, CapacityErrorsReportRequiredAndAvailable) {
    try {
        validate(PackLayout{Strategy::BHW, 33, 16, 16, 3, 8192});
        FAIL() << "expected capacity error";
    } catch (const CapacityError& e) {
        EXPECT_EQ(e.required(), 33 * 256);
        EXPECT_EQ(e.available(), 8192);
    }
    EXPECT_THROW(validate(PackLayout{Strategy::HW, 1, 100, 100, 1, 8192}), CapacityError);
    EXPECT_THROW(validate(PackLayout{Strategy::Batch, 9000, 2, 2, 1, 8192}), CapacityError);
    EXPECT_THROW(validate(PackLayout{Strategy::HW, 0, 2, 2, 1, 8192}), ParameterError);
}

TEST(SlotIndex, Formulas) {
    const PackLayout bhw{Strategy::BHW, 2, 14, 14, 1, 8192};
    EXPECT_EQ(slot_index(1, 0, 0, bhw), 196);
    const PackLayout hw{Strategy::HW, 1, 2, 2, 1, 8192};
    EXPECT_EQ(slot_index(0, 1, 1, hw), 3);
    const PackLayout batch{Strategy::Batch, 5, 2, 2, 1, 8192};
    EXPECT_EQ(slot_index(4, 1, 0, batch), 4);
    EXPECT_EQ(ciphertext_index(4, 0, 1, 0, batch), 2);
    EXPECT_THROW(slot_index(2, 0, 0, bhw), IndexError);
    EXPECT_THROW(slot_index(0, 14, 0, bhw), IndexError);
    EXPECT_THROW(slot_index(0, 0, -1, hw), IndexError);
}

// Every (ciphertext, slot) pair is hit once over the full coordinate range.
TEST(SlotIndex, NoCollisionsOnSmallShapes) {
    for (Strategy s : {Strategy::Batch, Strategy::HW, Strategy::BHW})
        for (int n = 1; n <= 4; ++n)
            for (int h = 1; h <= 4; ++h)
                for (int w = 1; w <= 4; ++w) {
                    const PackLayout l{s, n, h, w, 2, 64};
                    std::set<std::pair<std::int64_t, std::int64_t>> seen;
                    for (int b = 0; b < n; ++b)
                        for (int c = 0; c < 2; ++c)
                            for (int i = 0; i < h; ++i)
                                for (int j = 0; j < w; ++j) {
                                    const auto key = std::make_pair(ciphertext_index(b, c, i, j, l), slot_index(b, i, j, l));
                                    EXPECT_TRUE(seen.insert(key).second);
                                    EXPECT_LT(key.first, ciphertext_count(l));
                                    EXPECT_LT(key.second, required_slots(l));
                                }
                    EXPECT_EQ(static_cast<std::int64_t>(seen.size()), 2LL * n * h * w);
                }
}

TEST(Packing, CiphertextCountFormulas) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        const int n = bicrypt::testing::random_int(rng, 1, 4);
        const int c = bicrypt::testing::random_int(rng, 1, 3);
        const int h = bicrypt::testing::random_int(rng, 1, 5);
        const int w = bicrypt::testing::random_int(rng, 1, 5);
        EXPECT_EQ(ciphertext_count({Strategy::BHW, n, h, w, c, 128}), c);
        EXPECT_EQ(ciphertext_count({Strategy::HW, n, h, w, c, 128}), n * c);
        EXPECT_EQ(ciphertext_count({Strategy::Batch, n, h, w, c, 128}), c * h * w);
    }
}

TEST(Packing, RoundTripsEveryStrategy) {
    std::mt19937_64 rng(4);
    const auto ctx = ckks::make_context(64, 1, 1.0);
    for (Strategy s : {Strategy::Batch, Strategy::HW, Strategy::BHW}) {
        const PackLayout l{s, 2, 2, 2, 1, ctx.slot_count()};
        const auto b = random_batch(rng, 2, 1, 2, 2);
        const auto cts = pack(b, l, ctx);
        EXPECT_EQ(static_cast<std::int64_t>(cts.size()), ciphertext_count(l));
        EXPECT_EQ(unpack(cts, l, ctx), b);
    }
    const PackLayout single{Strategy::HW, 1, 3, 5, 2, ctx.slot_count()};
    const auto one = random_batch(rng, 1, 2, 3, 5);
    EXPECT_EQ(unpack(pack(one, single, ctx), single, ctx), one);
    const PackLayout zl{Strategy::BHW, 3, 2, 2, 2, ctx.slot_count()};
    const std::vector<Tensor3> zeros(3, Tensor3(2, 2, 2));
    EXPECT_EQ(unpack(pack(zeros, zl, ctx), zl, ctx), zeros);
}

TEST(Packing, UnpackRejectsMismatchedLayouts) {
    std::mt19937_64 rng(4);
    const auto ctx = ckks::make_context(64, 1, 1.0);
    const PackLayout l{Strategy::HW, 2, 2, 2, 1, ctx.slot_count()};
    const auto cts = pack(random_batch(rng, 2, 1, 2, 2), l, ctx);
    EXPECT_THROW(unpack(cts, PackLayout{Strategy::BHW, 2, 2, 2, 1, ctx.slot_count()}, ctx), UsageError);
    EXPECT_THROW(pack(random_batch(rng, 3, 1, 2, 2), l, ctx), ShapeError);
}

TEST(Tiling, HwSpansAllSlotsAndBhwTilesByImage) {
    const PackLayout hw{Strategy::HW, 3, 14, 14, 1, 8192};
    EXPECT_EQ(tiling_for(hw), (SlotTiling{1, 8192}));
    const PackLayout bhw{Strategy::BHW, 20, 14, 14, 1, 8192};
    EXPECT_EQ(tiling_for(bhw), (SlotTiling{20, 196}));
    EXPECT_THROW(tiling_for(PackLayout{Strategy::Batch, 2, 2, 2, 1, 64}), UsageError);
    const GridLayout g = grid_for(bhw);
    EXPECT_EQ(g.offset(1, 1), 15);
}
