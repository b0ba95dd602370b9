#include "bicrypt/packing/layout.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "bicrypt/ckks/evaluator.hpp"
#include "bicrypt/error.hpp"

namespace bicrypt::packing {

using ckks::Ciphertext;
using ckks::HeContext;

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Batch: return "batch";
        case Strategy::HW: return "hw";
        case Strategy::BHW: return "bhw";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name) {
    std::string low = name;
    std::transform(low.begin(), low.end(), low.begin(), [](unsigned char ch) { return std::tolower(ch); });
    if (low == "batch") return Strategy::Batch;
    if (low == "hw") return Strategy::HW;
    if (low == "bhw") return Strategy::BHW;
    throw ParameterError("unknown packing strategy '" + name + "'");
}

std::int64_t required_slots(const PackLayout& l) {
    const std::int64_t hw = static_cast<std::int64_t>(l.height) * l.width;
    switch (l.strategy) {
        case Strategy::Batch: return l.batch;
        case Strategy::HW: return hw;
        case Strategy::BHW: return hw * l.batch;
    }
    return 0;
}

void validate(const PackLayout& l) {
    if (l.batch < 1 || l.height < 1 || l.width < 1 || l.channels < 1)
        throw ParameterError("pack layout dimensions must be positive");
    if (l.slot_count < 1) throw ParameterError("pack layout needs a slot count");
    const std::int64_t need = required_slots(l);
    if (need > l.slot_count)
        throw CapacityError(std::string(to_string(l.strategy)) + " packing of " + std::to_string(l.batch) + "x" +
                                std::to_string(l.channels) + "x" + std::to_string(l.height) + "x" +
                                std::to_string(l.width) + " does not fit one ciphertext",
                            need, l.slot_count);
}

std::int64_t ciphertext_count(const PackLayout& l) {
    switch (l.strategy) {
        case Strategy::Batch: return static_cast<std::int64_t>(l.channels) * l.height * l.width;
        case Strategy::HW: return static_cast<std::int64_t>(l.batch) * l.channels;
        case Strategy::BHW: return l.channels;
    }
    return 0;
}

namespace {

void check_coords(int b, int i, int j, const PackLayout& l) {
    if (b < 0 || b >= l.batch || i < 0 || i >= l.height || j < 0 || j >= l.width)
        throw IndexError("coordinate (" + std::to_string(b) + "," + std::to_string(i) + "," + std::to_string(j) +
                         ") outside " + std::to_string(l.batch) + "x" + std::to_string(l.height) + "x" +
                         std::to_string(l.width));
}

}  // namespace

std::int64_t slot_index(int b, int i, int j, const PackLayout& l) {
    check_coords(b, i, j, l);
    switch (l.strategy) {
        case Strategy::Batch: return b;
        case Strategy::HW: return static_cast<std::int64_t>(i) * l.width + j;
        case Strategy::BHW: return (static_cast<std::int64_t>(b) * l.height + i) * l.width + j;
    }
    return 0;
}

std::int64_t ciphertext_index(int b, int ch, int i, int j, const PackLayout& l) {
    check_coords(b, i, j, l);
    if (ch < 0 || ch >= l.channels) throw IndexError("channel " + std::to_string(ch) + " out of range");
    switch (l.strategy) {
        case Strategy::Batch: return (static_cast<std::int64_t>(ch) * l.height + i) * l.width + j;
        case Strategy::HW: return static_cast<std::int64_t>(b) * l.channels + ch;
        case Strategy::BHW: return ch;
    }
    return 0;
}

std::vector<Ciphertext> pack(const std::vector<Tensor3>& batch, const PackLayout& l, const HeContext& ctx) {
    if (l.slot_count != ctx.slot_count()) throw UsageError("layout slot count differs from the context");
    validate(l);
    if (static_cast<int>(batch.size()) != l.batch)
        throw ShapeError("expected " + std::to_string(l.batch) + " images, got " + std::to_string(batch.size()));
    for (const Tensor3& t : batch)
        if (t.c != l.channels || t.h != l.height || t.w != l.width)
            throw ShapeError("image shape does not match the pack layout");

    const std::int64_t count = ciphertext_count(l);
    std::vector<std::vector<double>> slots(static_cast<std::size_t>(count),
                                           std::vector<double>(static_cast<std::size_t>(required_slots(l)), 0.0));
    for (int b = 0; b < l.batch; ++b)
        for (int ch = 0; ch < l.channels; ++ch)
            for (int i = 0; i < l.height; ++i)
                for (int j = 0; j < l.width; ++j)
                    slots[ciphertext_index(b, ch, i, j, l)][slot_index(b, i, j, l)] = batch[b].at(ch, i, j);

    std::vector<Ciphertext> out;
    out.reserve(slots.size());
    for (auto& s : slots) out.push_back(ckks::encrypt_vector(ckks::PlainVec(std::move(s)), ctx));
    return out;
}

std::vector<Tensor3> unpack(const std::vector<Ciphertext>& cts, const PackLayout& l, const HeContext& ctx) {
    if (l.slot_count != ctx.slot_count()) throw UsageError("layout slot count differs from the context");
    validate(l);
    if (static_cast<std::int64_t>(cts.size()) != ciphertext_count(l))
        throw UsageError("expected " + std::to_string(ciphertext_count(l)) + " ciphertexts for this layout, got " +
                         std::to_string(cts.size()));
    std::vector<ckks::PlainVec> plain;
    plain.reserve(cts.size());
    for (const Ciphertext& c : cts) plain.push_back(ckks::decrypt_vector(c, ctx));

    std::vector<Tensor3> out(static_cast<std::size_t>(l.batch), Tensor3(l.channels, l.height, l.width));
    for (int b = 0; b < l.batch; ++b)
        for (int ch = 0; ch < l.channels; ++ch)
            for (int i = 0; i < l.height; ++i)
                for (int j = 0; j < l.width; ++j)
                    out[b].at(ch, i, j) =
                        plain[ciphertext_index(b, ch, i, j, l)][static_cast<std::size_t>(slot_index(b, i, j, l))];
    return out;
}

SlotTiling tiling_for(const PackLayout& l) {
    validate(l);
    switch (l.strategy) {
        case Strategy::HW: return SlotTiling{1, l.slot_count};
        case Strategy::BHW: return SlotTiling{l.batch, static_cast<std::int64_t>(l.height) * l.width};
        case Strategy::Batch: break;
    }
    throw UsageError("batch packing has no per-image slot tiling; use hw or bhw");
}

GridLayout grid_for(const PackLayout& l) {
    return GridLayout{0, l.width, 1, l.height, l.width};
}

}  // namespace bicrypt::packing
