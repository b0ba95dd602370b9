#include "bicrypt/error.hpp"
#include "bicrypt/henn/kernels.hpp"
#include "bicrypt/net/bicrypto.hpp"

namespace bicrypt::net {

namespace {

using ckks::BranchTag;
using Scope = ckks::OpRecorder::Scope;

std::vector<double> affine(const std::vector<double>& x, const henn::Matrix& W, const std::vector<double>& b) {
    std::vector<double> y = henn::matvec_t(x, W);
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += b[j];
    return y;
}

std::vector<double> sq(std::vector<double> v) {
    for (double& e : v) e = e * e;
    return v;
}

}  // namespace

std::vector<double> feature_integrate_plain(const std::vector<double>& x_c, const std::vector<double>& x_p,
                                            const HeadWeights& h) {
    const std::vector<double> p1 = sq(affine(x_p, h.W_p1_plain, h.b1_plain));
    std::vector<double> c1 = affine(x_p, h.W_p1, h.b1);
    const std::vector<double> cc = henn::matvec_t(x_c, h.W_c1);
    for (std::size_t j = 0; j < c1.size(); ++j) c1[j] = cc[j] + c1[j];
    c1 = sq(std::move(c1));
    std::vector<double> out = affine(p1, h.W_p2, h.b2);
    const std::vector<double> co = henn::matvec_t(c1, h.W_c2);
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = co[j] + out[j];
    return sq(std::move(out));
}

CipherFlat feature_integrate(const CipherFlat& x_c, const std::vector<std::vector<double>>& x_p,
                             const HeadWeights& h, const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    if (static_cast<int>(x_p.size()) != x_c.tiling.tiles) throw ShapeError("head needs one plaintext vector per tile");
    henn::TileBias bracket1;
    henn::TileBias bracket2;
    {
        Scope s(rec, "head.plain", BranchTag::Plain);
        for (const auto& xp : x_p) {
            const std::vector<double> p1 = sq(affine(xp, h.W_p1_plain, h.b1_plain));
            bracket1.push_back(affine(xp, h.W_p1, h.b1));
            bracket2.push_back(affine(p1, h.W_p2, h.b2));
        }
    }
    CipherFlat c1;
    {
        Scope s(rec, "head.fc1", BranchTag::Cipher);
        c1 = henn::fc_layer(x_c, h.W_c1, bracket1, ctx, rec, policy);
    }
    {
        Scope s(rec, "head.act1", BranchTag::Cipher);
        c1 = henn::square_act(c1, ctx, rec, policy);
    }
    CipherFlat out;
    {
        Scope s(rec, "head.fc2", BranchTag::Cipher);
        out = henn::fc_layer(c1, h.W_c2, bracket2, ctx, rec, policy);
    }
    {
        Scope s(rec, "head.act2", BranchTag::Cipher);
        out = henn::square_act(out, ctx, rec, policy);
    }
    return out;
}

CipherFlat feature_integrate(const CipherFlat& x_c, const CipherFlat& x_p, const HeadWeights& h,
                             const HeContext& ctx, OpRecorder& rec, ExecPolicy policy) {
    CipherFlat bracket1;
    CipherFlat bracket2;
    {
        Scope s(rec, "head.plain", BranchTag::Plain);
        CipherFlat p1 = henn::fc_layer(x_p, h.W_p1_plain, {h.b1_plain}, ctx, rec, policy);
        p1 = henn::square_act(p1, ctx, rec, policy);
        bracket1 = henn::fc_layer(x_p, h.W_p1, {h.b1}, ctx, rec, policy);
        bracket2 = henn::fc_layer(p1, h.W_p2, {h.b2}, ctx, rec, policy);
    }
    CipherFlat c1;
    {
        Scope s(rec, "head.fc1", BranchTag::Cipher);
        c1 = henn::fc_layer(x_c, h.W_c1, {}, ctx, rec, policy);
        c1 = henn::add_cipher(c1, henn::align_flat(bracket1, c1.offsets.front(), ctx, rec), ctx, rec);
    }
    {
        Scope s(rec, "head.act1", BranchTag::Cipher);
        c1 = henn::square_act(c1, ctx, rec, policy);
    }
    CipherFlat out;
    {
        Scope s(rec, "head.fc2", BranchTag::Cipher);
        out = henn::fc_layer(c1, h.W_c2, {}, ctx, rec, policy);
        out = henn::add_cipher(out, henn::align_flat(bracket2, out.offsets.front(), ctx, rec), ctx, rec);
    }
    {
        Scope s(rec, "head.act2", BranchTag::Cipher);
        out = henn::square_act(out, ctx, rec, policy);
    }
    return out;
}

}  // namespace bicrypt::net
