#include <gtest/gtest.h>

#include "bicrypt/error.hpp"
#include "bicrypt/henn/kernels.hpp"
#include "bicrypt/net/bicrypto.hpp"
#include "unit/util.hpp"

using namespace bicrypt;
using namespace bicrypt::net;
using bicrypt::testing::random_ints;
using ckks::OpKind;
using henn::Matrix;

namespace {

Tensor3 iota(int c, int h, int w) {
    Tensor3 t(c, h, w);
    for (std::size_t i = 0; i < t.size(); ++i) t.data[i] = static_cast<double>(i + 1);
    return t;
}

Matrix random_matrix(std::mt19937_64& rng, int r, int c) {
    Matrix m(r, c);
    m.data = random_ints(rng, m.data.size(), -2, 2);
    return m;
}

HeadWeights random_head(std::mt19937_64& rng, int n_c, int n_p, int half, int n2) {
    HeadWeights h;
    h.W_c1 = random_matrix(rng, n_c, half);
    h.W_p1 = random_matrix(rng, n_p, half);
    h.W_p1_plain = random_matrix(rng, n_p, half);
    h.W_c2 = random_matrix(rng, half, n2);
    h.W_p2 = random_matrix(rng, half, n2);
    h.b1 = random_ints(rng, static_cast<std::size_t>(half), -2, 2);
    h.b1_plain = random_ints(rng, static_cast<std::size_t>(half), -2, 2);
    h.b2 = random_ints(rng, static_cast<std::size_t>(n2), -2, 2);
    return h;
}

}  // namespace

TEST(Decompose, FourByFourWithoutNoise) {
    const Tensor3 x = iota(1, 4, 4);
    const DecomposedInput d = decompose_input(x, 0.0, 1);
    EXPECT_EQ(d.region.row0, 1);
    EXPECT_EQ(d.region.col0, 1);
    EXPECT_EQ(d.sensitive.data, (std::vector<double>{6, 7, 10, 11}));
    Tensor3 want = x;
    for (int i = 1; i < 3; ++i)
        for (int j = 1; j < 3; ++j) want.at(0, i, j) = 0;
    EXPECT_EQ(d.plain_full, want);
}

TEST(Decompose, NoiseIsSeededAndSparesTheCenter) {
    const Tensor3 x = iota(2, 8, 8);
    const auto a = decompose_input(x, 0.1, 9);
    const auto b = decompose_input(x, 0.1, 9);
    const auto c = decompose_input(x, 0.1, 10);
    EXPECT_EQ(a.plain_full, b.plain_full);
    EXPECT_NE(a.plain_full, c.plain_full);
    EXPECT_EQ(a.sensitive, c.sensitive);
    for (int ch = 0; ch < 2; ++ch)
        for (int i = 2; i < 6; ++i)
            for (int j = 2; j < 6; ++j) EXPECT_EQ(a.plain_full.at(ch, i, j), 0.0);
    EXPECT_NE(a.plain_full.at(0, 0, 0), x.at(0, 0, 0));
}

TEST(Decompose, ZeroImageAndErrors) {
    const auto d = decompose_input(Tensor3(1, 6, 6), 0.0, 1);
    EXPECT_EQ(d.sensitive, Tensor3(1, 3, 3));
    EXPECT_EQ(d.plain_full, Tensor3(1, 6, 6));
    EXPECT_THROW(decompose_input(Tensor3(1, 5, 6), 0.0, 1), ShapeError);
    EXPECT_THROW(decompose_input(Tensor3(1, 6, 6), -1.0, 1), ParameterError);
}

TEST(ResizeCrop, CentersWithFloorOffsets) {
    Tensor3 col(1, 4, 1);
    col.data = {0, 1, 2, 3};
    EXPECT_EQ(resize_crop(col, 2, 1).data, (std::vector<double>{1, 2}));
    Tensor3 five(1, 5, 1);
    five.data = {0, 1, 2, 3, 4};
    EXPECT_EQ(resize_crop(five, 2, 1).data, (std::vector<double>{1, 2}));
    const Tensor3 x = iota(2, 3, 3);
    EXPECT_EQ(resize_crop(x, 3, 3), x);
    EXPECT_THROW(resize_crop(x, 4, 3), ShapeError);
    EXPECT_THROW(resize_crop(x, 0, 3), ShapeError);
}

TEST(ChannelRotate, Examples) {
    const Tensor3 y = iota(3, 2, 2);
    Matrix I(3, 3);
    for (int i = 0; i < 3; ++i) I.at(i, i) = 1;
    EXPECT_EQ(channel_rotate(y, I), y);

    Tensor3 two(2, 1, 1);
    two.data = {2, 4};
    Matrix avg(1, 2, 0.5);
    EXPECT_EQ(channel_rotate(two, avg).data, (std::vector<double>{3}));
    EXPECT_THROW(channel_rotate(two, Matrix(1, 3)), ShapeError);
}

TEST(ChannelRotate, MatchesOracleAndIsLinear) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const int cp = bicrypt::testing::random_int(rng, 1, 5);
        const int cc = bicrypt::testing::random_int(rng, 1, 5);
        Tensor3 a(cp, 3, 4), b(cp, 3, 4);
        a.data = random_ints(rng, a.size());
        b.data = random_ints(rng, b.size());
        const Matrix W = random_matrix(rng, cc, cp);
        const Tensor3 z = channel_rotate(a, W);
        for (int i = 0; i < cc; ++i)
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 4; ++c) {
                    double s = 0;
                    for (int j = 0; j < cp; ++j) s += W.at(i, j) * a.at(j, r, c);
                    EXPECT_EQ(z.at(i, r, c), s);
                }
        EXPECT_EQ(channel_rotate(henn::add(a, b), W), henn::add(z, channel_rotate(b, W)));
    }
}

TEST(Connection, AddsOnePlaintextPerCipherChannel) {
    std::mt19937_64 rng(7);
    const auto ctx = ckks::make_context(256, 2, 1.0);
    const henn::SlotTiling t{2, 16};
    std::vector<Tensor3> xc(2, Tensor3(3, 4, 4)), xp(2, Tensor3(2, 8, 8));
    for (auto& v : xc) v.data = random_ints(rng, v.size());
    for (auto& v : xp) v.data = random_ints(rng, v.size());
    const Connection conn{0, 0, 4, 4, 2, 3, "c"};
    const Matrix W = random_matrix(rng, 3, 2);
    ckks::OpRecorder rec;
    const auto g = henn::encrypt_grid(xc, t, ctx);
    const auto y = henn::decrypt_grid(apply_connection(g, xp, conn, W, ctx, rec), ctx);
    EXPECT_EQ(rec.totals()[OpKind::AddPC], 3);
    EXPECT_EQ(rec.totals().all_ops(), 3);
    for (int k = 0; k < 2; ++k) EXPECT_EQ(y[k], henn::add(xc[k], channel_rotate(resize_crop(xp[k], 4, 4), W)));

    const auto same = henn::decrypt_grid(apply_connection(g, xp, conn, Matrix(3, 2), ctx, rec), ctx);
    EXPECT_EQ(same, xc);
    EXPECT_THROW(apply_connection(g, xp, conn, Matrix(2, 3), ctx, rec), ShapeError);
}

TEST(Head, EncryptedHeadMatchesPlainHead) {
    std::mt19937_64 rng(11);
    const auto ctx = ckks::make_context(256, 8, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const HeadWeights h = random_head(rng, 4, 4, 2, 3);
        const int tiles = bicrypt::testing::random_int(rng, 1, 3);
        const henn::SlotTiling t{tiles, 32};
        std::vector<std::vector<double>> xc, xp;
        for (int k = 0; k < tiles; ++k) {
            xc.push_back(random_ints(rng, 4, -2, 2));
            xp.push_back(random_ints(rng, 4, -2, 2));
        }
        ckks::OpRecorder rec;
        const auto out = feature_integrate(henn::encrypt_flat(xc, t, ctx), xp, h, ctx, rec);
        const auto got = henn::decrypt_flat(out, ctx);
        for (int k = 0; k < tiles; ++k) EXPECT_EQ(got[k], feature_integrate_plain(xc[k], xp[k], h));

        // The plaintext neurons issue no homomorphic operations.
        for (const auto& d : rec.per_layer())
            if (d.layer == "head.plain") {
                EXPECT_EQ(d.counts.all_ops(), 0);
            }

        ckks::OpRecorder rec2;
        const auto mis = feature_integrate(henn::encrypt_flat(xc, t, ctx), henn::encrypt_flat(xp, t, ctx, 5), h, ctx, rec2);
        EXPECT_EQ(henn::decrypt_flat(mis, ctx), got);
        EXPECT_GT(rec2.totals()[OpKind::MulPC], rec.totals()[OpKind::MulPC]);
    }
}

TEST(Head, ZeroCipherWeightsLeaveThePlainPath) {
    std::mt19937_64 rng(12);
    HeadWeights h = random_head(rng, 3, 5, 2, 2);
    h.W_c1 = Matrix(3, 2);
    h.W_c2 = Matrix(2, 2);
    const std::vector<double> xc = random_ints(rng, 3), xp = random_ints(rng, 5, -2, 2);
    const std::vector<double> y = feature_integrate_plain(xc, xp, h);
    // out = (W_p2^T (W_p1_plain^T x_p + b1_plain)^2 + b2)^2
    std::vector<double> p1(2);
    for (int j = 0; j < 2; ++j) {
        double s = h.b1_plain[j];
        for (int i = 0; i < 5; ++i) s += xp[i] * h.W_p1_plain.at(i, j);
        p1[j] = s * s;
    }
    for (int j = 0; j < 2; ++j) {
        double s = h.b2[j];
        for (int i = 0; i < 2; ++i) s += p1[i] * h.W_p2.at(i, j);
        EXPECT_EQ(y[j], s * s);
    }
}
