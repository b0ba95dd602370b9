#include <gtest/gtest.h>

#include <cmath>

#include "bicrypt/ckks/evaluator.hpp"
#include "bicrypt/error.hpp"
#include "unit/util.hpp"

using namespace bicrypt;
using namespace bicrypt::ckks;
using bicrypt::testing::random_ints;
using bicrypt::testing::random_reals;

namespace {

std::vector<double> dec(const Ciphertext& c, const HeContext& ctx) { return decrypt_vector(c, ctx).values(); }

std::vector<double> padded(std::vector<double> v, std::size_t n) {
    v.resize(n, 0.0);
    return v;
}

}  // namespace

TEST(Context, SlotCountIsHalfTheDegree) {
    const HeContext ctx = make_context(1 << 14, 10, std::ldexp(1.0, 30), Scheme::CKKS);
    EXPECT_EQ(ctx.slot_count(), 8192);
    EXPECT_EQ(ctx.max_level(), 10);
    EXPECT_EQ(make_context(8, 1, 1.0).slot_count(), 4);
}

TEST(Context, LoadsSchemeLatencies) {
    const HeContext ctx = make_context(1 << 14, 3, 1.0, Scheme::CKKS);
    EXPECT_DOUBLE_EQ(ctx.latency_table().ms(OpKind::AddPC), 0.039);
    EXPECT_DOUBLE_EQ(ctx.latency_table().ms(OpKind::AddCC), 0.077);
    EXPECT_DOUBLE_EQ(ctx.latency_table().ms(OpKind::MulPC), 0.173);
    EXPECT_DOUBLE_EQ(ctx.latency_table().ms(OpKind::MulCC), 0.390);
    EXPECT_DOUBLE_EQ(ctx.latency_table().ms(OpKind::Rot), 0.173);
    const HeContext bgv = make_context(1 << 14, 3, 1.0, Scheme::BGV);
    EXPECT_DOUBLE_EQ(bgv.latency_table().ms(OpKind::MulCC), 3.379);
}

TEST(Context, RejectsBadParameters) {
    EXPECT_THROW(make_context(12, 1, 1.0), ParameterError);
    EXPECT_THROW(make_context(4, 1, 1.0), ParameterError);
    EXPECT_THROW(make_context(16, 0, 1.0), ParameterError);
    EXPECT_THROW(make_context(16, 1, 0.0), ParameterError);
    EXPECT_THROW(parse_scheme("paillier"), ParameterError);
}

TEST(Encrypt, ZeroPadsAndStartsAtMaxLevel) {
    const HeContext ctx = make_context(8, 3, 1.0);
    const Ciphertext c = encrypt_vector(PlainVec({1, 2, 3}), ctx);
    EXPECT_EQ(dec(c, ctx), (std::vector<double>{1, 2, 3, 0}));
    EXPECT_EQ(c.level(), 3);
    EXPECT_EQ(dec(encrypt_vector(PlainVec(), ctx), ctx), (std::vector<double>{0, 0, 0, 0}));
}

TEST(Encrypt, RejectsOversizedAndNonFiniteVectors) {
    const HeContext ctx = make_context(8, 1, 1.0);
    try {
        encrypt_vector(PlainVec({1, 2, 3, 4, 5}), ctx);
        FAIL() << "expected a capacity error";
    } catch (const CapacityError& e) {
        EXPECT_EQ(e.required(), 5);
        EXPECT_EQ(e.available(), 4);
    }
    EXPECT_THROW(PlainVec({1.0, std::nan("")}), ParameterError);
    EXPECT_THROW(PlainVec({INFINITY}), ParameterError);
}

TEST(Encrypt, RoundTripsAFullVector) {
    std::mt19937_64 rng(11);
    const HeContext ctx = make_context(1 << 14, 2, 1.0);
    const std::vector<double> v = random_reals(rng, 8192, -1e3, 1e3);
    EXPECT_EQ(dec(encrypt_vector(PlainVec(v), ctx), ctx), v);
}

TEST(Decrypt, RejectsForeignContext) {
    const HeContext a = make_context(8, 1, 1.0);
    const HeContext b = make_context(8, 1, 1.0);
    const Ciphertext c = encrypt_vector(PlainVec({5}), a);
    EXPECT_EQ(dec(c, a), (std::vector<double>{5, 0, 0, 0}));
    EXPECT_THROW(decrypt_vector(c, b), UsageError);
    OpRecorder rec;
    EXPECT_THROW(he_add(c, encrypt_vector(PlainVec({1}), b), a, rec), UsageError);
}

TEST(Decrypt, LevelZeroIsStillReadable) {
    const HeContext ctx = make_context(8, 1, 1.0);
    OpRecorder rec;
    const Ciphertext c = he_mul(encrypt_vector(PlainVec({2, 3}), ctx), PlainVec({4, 5}), ctx, rec);
    ASSERT_EQ(c.level(), 0);
    EXPECT_EQ(dec(c, ctx), (std::vector<double>{8, 15, 0, 0}));
    EXPECT_EQ(dec(c, ctx), (std::vector<double>{8, 15, 0, 0}));
}

TEST(Add, CipherCipherAndCipherPlain) {
    const HeContext ctx = make_context(8, 2, 1.0);
    OpRecorder rec;
    const Ciphertext a = encrypt_vector(PlainVec({1, 2}), ctx);
    EXPECT_EQ(dec(he_add(a, encrypt_vector(PlainVec({4, 5}), ctx), ctx, rec), ctx), (std::vector<double>{5, 7, 0, 0}));
    EXPECT_EQ(rec.totals()[OpKind::AddCC], 1);
    EXPECT_EQ(dec(he_add(a, PlainVec({0, 0}), ctx, rec), ctx), (std::vector<double>{1, 2, 0, 0}));
    EXPECT_EQ(rec.totals()[OpKind::AddPC], 1);
    EXPECT_EQ(rec.totals().heops(), 2);
}

TEST(Add, ResultLevelIsTheMinimum) {
    const HeContext ctx = make_context(8, 3, 1.0);
    OpRecorder rec;
    const Ciphertext a = encrypt_vector(PlainVec({1}), ctx);
    const Ciphertext b = he_mul(a, PlainVec({1}), ctx, rec);
    EXPECT_EQ(he_add(a, b, ctx, rec).level(), 2);
    EXPECT_EQ(he_add(b, PlainVec({1}), ctx, rec).level(), 2);
    EXPECT_EQ(he_rotate(b, 1, ctx, rec).level(), 2);
}

TEST(Mul, PlainAndSquare) {
    const HeContext ctx = make_context(8, 2, 1.0);
    OpRecorder rec;
    const Ciphertext a = encrypt_vector(PlainVec({2, 3}), ctx);
    const Ciphertext p = he_mul(a, PlainVec({4, 5}), ctx, rec);
    EXPECT_EQ(dec(p, ctx), (std::vector<double>{8, 15, 0, 0}));
    EXPECT_EQ(p.level(), 1);
    EXPECT_EQ(rec.totals()[OpKind::MulPC], 1);
    const Ciphertext x = encrypt_vector(PlainVec({-7}), ctx);
    const Ciphertext sq = he_mul(x, x, ctx, rec);
    EXPECT_EQ(dec(sq, ctx)[0], 49.0);
    EXPECT_EQ(rec.totals()[OpKind::MulCC], 1);
    EXPECT_EQ(sq.level(), 1);
}

TEST(Mul, ChainBeyondBudgetFailsAtTheLastStep) {
    const int max_level = 4;
    const HeContext ctx = make_context(8, max_level, 1.0);
    OpRecorder rec;
    Ciphertext c = encrypt_vector(PlainVec({1.5}), ctx);
    OpRecorder::Scope s(rec, "chain", BranchTag::Cipher);
    for (int i = 0; i < max_level; ++i) c = he_mul(c, c, ctx, rec);
    EXPECT_EQ(c.level(), 0);
    try {
        he_mul(c, PlainVec({1}), ctx, rec);
        FAIL() << "expected a depth-budget error";
    } catch (const DepthBudgetError& e) {
        EXPECT_EQ(e.layer(), "chain");
        EXPECT_NE(std::string(e.what()).find("chain"), std::string::npos);
    }
    EXPECT_THROW(he_mul(c, c, ctx, rec), DepthBudgetError);
}

TEST(Rotate, LeftForPositiveRightForNegative) {
    const HeContext ctx = make_context(8, 1, 1.0);
    OpRecorder rec;
    const Ciphertext c = encrypt_vector(PlainVec({1, 2, 3, 4}), ctx);
    EXPECT_EQ(dec(he_rotate(c, 1, ctx, rec), ctx), (std::vector<double>{2, 3, 4, 1}));
    EXPECT_EQ(dec(he_rotate(c, -1, ctx, rec), ctx), (std::vector<double>{4, 1, 2, 3}));
    EXPECT_EQ(dec(he_rotate(c, 0, ctx, rec), ctx), (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(dec(he_rotate(c, 4, ctx, rec), ctx), (std::vector<double>{1, 2, 3, 4}));
    EXPECT_EQ(dec(he_rotate(c, 9, ctx, rec), ctx), (std::vector<double>{2, 3, 4, 1}));
    EXPECT_EQ(rec.totals()[OpKind::Rot], 5);
    EXPECT_EQ(rec.totals().heops(), 0);
}

TEST(Rotate, ComposesAdditively) {
    std::mt19937_64 rng(5);
    const HeContext ctx = make_context(64, 1, 1.0);
    OpRecorder rec;
    for (int t = 0; t < 200; ++t) {
        const Ciphertext c = encrypt_vector(PlainVec(random_ints(rng, 32)), ctx);
        const int r1 = bicrypt::testing::random_int(rng, -100, 100);
        const int r2 = bicrypt::testing::random_int(rng, -100, 100);
        const int sum = (((r1 + r2) % 32) + 32) % 32;
        EXPECT_EQ(dec(he_rotate(he_rotate(c, r1, ctx, rec), r2, ctx, rec), ctx), dec(he_rotate(c, sum, ctx, rec), ctx));
    }
}

// 1000 random pairs per operation; inputs are integers so the plain result is exact.
TEST(Homomorphism, ThousandRandomPairsPerOp) {
    std::mt19937_64 rng(2024);
    const HeContext ctx = make_context(64, 2, 1.0);
    const std::size_t n = 32;
    OpRecorder rec;
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto x = random_ints(rng, n, -1000, 1000);
        const auto y = random_ints(rng, n, -1000, 1000);
        const int r = bicrypt::testing::random_int(rng, -40, 40);
        const Ciphertext ex = encrypt_vector(PlainVec(x), ctx);
        const Ciphertext ey = encrypt_vector(PlainVec(y), ctx);
        const auto add_cc = dec(he_add(ex, ey, ctx, rec), ctx);
        const auto add_pc = dec(he_add(ex, PlainVec(y), ctx, rec), ctx);
        const auto mul_cc = dec(he_mul(ex, ey, ctx, rec), ctx);
        const auto mul_pc = dec(he_mul(ex, PlainVec(y), ctx, rec), ctx);
        const auto rot = dec(he_rotate(ex, r, ctx, rec), ctx);
        const std::vector<double> xs = padded(x, n);
        for (std::size_t i = 0; i < n; ++i) {
            worst = std::max(worst, std::fabs(add_cc[i] - (x[i] + y[i])));
            worst = std::max(worst, std::fabs(add_pc[i] - (x[i] + y[i])));
            worst = std::max(worst, std::fabs(mul_cc[i] - x[i] * y[i]));
            worst = std::max(worst, std::fabs(mul_pc[i] - x[i] * y[i]));
            worst = std::max(worst, std::fabs(rot[i] - xs[(((static_cast<int>(i) + r) % 32) + 32) % 32]));
        }
    }
    EXPECT_EQ(worst, 0.0);
    EXPECT_EQ(rec.totals()[OpKind::AddCC], 1000);
    EXPECT_EQ(rec.totals()[OpKind::AddPC], 1000);
    EXPECT_EQ(rec.totals()[OpKind::MulCC], 1000);
    EXPECT_EQ(rec.totals()[OpKind::MulPC], 1000);
    EXPECT_EQ(rec.totals()[OpKind::Rot], 1000);
}

TEST(Noise, QuantizeRoundsProductsToTheScaleGrid) {
    const double scale = 16.0;
    const HeContext ctx = make_context(8, 3, scale, Scheme::CKKS, NoiseModel::Quantize);
    OpRecorder rec;
    const Ciphertext a = encrypt_vector(PlainVec({0.1, 0.3}), ctx);
    const auto p = dec(he_mul(a, PlainVec({0.7, 0.9}), ctx, rec), ctx);
    EXPECT_DOUBLE_EQ(p[0], std::nearbyint(0.07 * scale) / scale);
    EXPECT_DOUBLE_EQ(p[1], std::nearbyint(0.27 * scale) / scale);
    EXPECT_LE(std::fabs(p[0] - 0.07), 0.5 / scale);
    // Additions are exact.
    const auto s = dec(he_add(a, a, ctx, rec), ctx);
    EXPECT_DOUBLE_EQ(s[0], 0.2);
}

TEST(Noise, ErrorStaysWithinOneGridStepPerMultiplication) {
    std::mt19937_64 rng(3);
    const double scale = std::ldexp(1.0, 20);
    const HeContext ctx = make_context(64, 2, scale, Scheme::CKKS, NoiseModel::Quantize);
    OpRecorder rec;
    for (int t = 0; t < 200; ++t) {
        const auto x = random_reals(rng, 32);
        const auto y = random_reals(rng, 32);
        const auto m = dec(he_mul(encrypt_vector(PlainVec(x), ctx), encrypt_vector(PlainVec(y), ctx), ctx, rec), ctx);
        for (std::size_t i = 0; i < 32; ++i) EXPECT_LE(std::fabs(m[i] - x[i] * y[i]), 1.0 / scale);
    }
}

TEST(Recorder, PerLayerDeltasSumToTotals) {
    const HeContext ctx = make_context(8, 4, 1.0);
    OpRecorder rec;
    const Ciphertext a = encrypt_vector(PlainVec({1, 2}), ctx);
    he_rotate(a, 1, ctx, rec);
    {
        OpRecorder::Scope s(rec, "l1", BranchTag::Cipher);
        he_add(a, a, ctx, rec);
        he_mul(a, PlainVec({2}), ctx, rec, MulRole::Mask);
    }
    {
        OpRecorder::Scope s(rec, "l2", BranchTag::Plain);
        he_mul(a, a, ctx, rec);
    }
    OpCounts sum = rec.unattributed();
    for (const auto& d : rec.per_layer()) sum += d.counts;
    EXPECT_EQ(sum, rec.totals());
    ASSERT_EQ(rec.per_layer().size(), 2u);
    EXPECT_EQ(rec.per_layer()[0].counts[OpKind::MaskMulPC], 1);
    EXPECT_EQ(rec.per_layer()[1].branch, BranchTag::Plain);
    EXPECT_EQ(rec.unattributed()[OpKind::Rot], 1);
}

TEST(Recorder, NestedScopesAreRejected) {
    OpRecorder rec;
    rec.begin_layer("a", BranchTag::Cipher);
    EXPECT_THROW(rec.begin_layer("b", BranchTag::Cipher), UsageError);
    rec.end_layer();
    EXPECT_THROW(rec.end_layer(), UsageError);
}

TEST(Recorder, WorkerMergeIsAttributedToTheOpenLayer) {
    OpRecorder rec;
    OpRecorder::Scope s(rec, "conv", BranchTag::Cipher);
    OpRecorder w1 = rec.fork();
    OpRecorder w2 = rec.fork();
    w1.record(OpKind::MulPC, 3);
    w2.record(OpKind::AddCC, 2);
    EXPECT_EQ(w1.current_layer(), "conv");
    rec.merge(w1);
    rec.merge(w2);
    rec.end_layer();
    ASSERT_EQ(rec.per_layer().size(), 1u);
    EXPECT_EQ(rec.per_layer()[0].counts[OpKind::MulPC], 3);
    EXPECT_EQ(rec.per_layer()[0].counts[OpKind::AddCC], 2);
    EXPECT_EQ(rec.unattributed().heops(), 0);
}

TEST(Symbolic, CountsWithoutSlotData) {
    const HeContext ctx = make_context(1 << 16, 2, 1.0).with_symbolic(true);
    OpRecorder rec;
    const Ciphertext a = encrypt_vector(PlainVec(), ctx);
    const Ciphertext b = he_mul(he_rotate(a, 5, ctx, rec), PlainVec(), ctx, rec);
    EXPECT_EQ(b.level(), 1);
    EXPECT_EQ(rec.totals()[OpKind::Rot], 1);
    EXPECT_EQ(rec.totals()[OpKind::MulPC], 1);
    EXPECT_THROW(decrypt_vector(b, ctx), UsageError);
}

TEST(LatencyTable, CostIsIntegerNanoseconds) {
    const LatencyTable t = LatencyTable::for_scheme(Scheme::CKKS);
    OpCounts c;
    c[OpKind::AddPC] = 100;
    EXPECT_EQ(t.cost_ns(c), 3'900'000);
    c[OpKind::Rot] = 2;
    c[OpKind::ActC] = 50;
    c[OpKind::MaskMulPC] = 50;
    EXPECT_EQ(t.cost_ns(c), 3'900'000 + 2 * 173'000);
    LatencyTable z = t;
    z.set_ms(OpKind::Rot, 0.0);
    EXPECT_EQ(z.cost_ns(c), 3'900'000);
    EXPECT_THROW(z.set_ms(OpKind::ActC, 1.0), ParameterError);
    EXPECT_THROW(z.set_ms(OpKind::AddPC, -1.0), ParameterError);
}
