#include "bicrypt/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicrypt/ckks/context.hpp"
#include "bicrypt/cost/cost.hpp"
#include "bicrypt/cost/report.hpp"
#include "bicrypt/error.hpp"
#include "bicrypt/net/bicrypto.hpp"
#include "bicrypt/net/datasets.hpp"
#include "bicrypt/net/weights.hpp"

namespace bicrypt::cli {

namespace {

using cost::Json;

struct RunConfig {
    std::string arch = "cnn3";
    std::string net = "binet";
    std::string weights;
    std::string data;
    std::string pack = "bhw";
    int batch = 1;
    std::string scheme = "ckks";
    std::int64_t poly_degree = 16384;
    std::string noise = "off";
    int log_scale = 40;
    std::uint64_t seed = 1;
    double sigma = 0.1;
    std::string out;
    double threshold = 1e-9;
    int samples = 0;
    bool parallel = false;
    std::string schedule = "interleaved";
};

void add_common(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--arch", c.arch, "cnn3, cnn11, vgg16-cifar or resnet18-cifar")->capture_default_str();
    cmd->add_option("--net", c.net, "binet, backbone or miswired")
        ->check(CLI::IsMember({"binet", "backbone", "miswired"}))
        ->capture_default_str();
    cmd->add_option("--pack", c.pack, "hw, bhw or batch")->capture_default_str();
    cmd->add_option("--batch", c.batch, "Images per ciphertext set")->capture_default_str();
    cmd->add_option("--scheme", c.scheme, "Latency table: ckks, bgv or tfhe")->capture_default_str();
    cmd->add_option("--poly-degree", c.poly_degree, "Ring degree N; N/2 slots")->capture_default_str();
    cmd->add_option("--out", c.out, "Write the JSON report here");
}

void add_run(CLI::App* cmd, RunConfig& c) {
    cmd->add_option("--weights", c.weights, "Tensor archive directory (default: fixture weights from --seed)");
    cmd->add_option("--data", c.data, "IDX directory or CIFAR .bin (default: synthetic images from --seed)");
    cmd->add_option("--noise", c.noise, "off or quantize")->check(CLI::IsMember({"off", "quantize"}))->capture_default_str();
    cmd->add_option("--log-scale", c.log_scale, "log2 of the encoding scale")->capture_default_str();
    cmd->add_option("--seed", c.seed, "Seed for fixture weights, synthetic data and perturbation")->capture_default_str();
    cmd->add_option("--sigma", c.sigma, "Std of the Gaussian perturbation outside the sensitive segment")
        ->capture_default_str();
    cmd->add_option("--samples", c.samples, "Number of images (default: one batch)");
    cmd->add_option("--schedule", c.schedule, "interleaved or plain-first")
        ->check(CLI::IsMember({"interleaved", "plain-first"}))
        ->capture_default_str();
    cmd->add_flag("--parallel", c.parallel, "Use the OpenMP kernels");
}

net::NetworkSpec build_network(const RunConfig& c) {
    const net::Arch arch = net::parse_arch(c.arch);
    if (c.net == "miswired") {
        if (arch != net::Arch::CNN3) throw UsageError("the mis-wired control network exists for cnn3 only");
        return net::make_miswired_cnn3();
    }
    return net::make_network(arch, c.net == "backbone" ? net::NetKind::Backbone : net::NetKind::BiNet);
}

std::string net_label(const net::NetworkSpec& n) {
    return std::string(net::to_string(n.arch)) + "/" + net::to_string(n.kind);
}

ckks::HeContext build_context(const net::NetworkSpec& n, const RunConfig& c, bool symbolic) {
    const ckks::Scheme scheme = ckks::parse_scheme(c.scheme);
    if (c.log_scale < 1 || c.log_scale > 60) throw ParameterError("--log-scale must be in [1, 60]");
    ckks::HeContext ctx =
        ckks::make_context(c.poly_degree, net::network_depth(n) + 1, std::ldexp(1.0, c.log_scale), scheme,
                           c.noise == "quantize" ? ckks::NoiseModel::Quantize : ckks::NoiseModel::Off);
    ctx = ctx.with_latency_table(cost::resolve_latency_table(scheme));
    return symbolic ? ctx.with_symbolic(true) : ctx;
}

packing::PackLayout checked_layout(const net::NetworkSpec& n, const RunConfig& c, const ckks::HeContext& ctx) {
    if (c.batch < 1) throw ParameterError("--batch must be at least 1");
    const packing::Strategy s = packing::parse_strategy(c.pack);
    if (s == packing::Strategy::Batch)
        throw UsageError("batch-axis packing supports pack and unpack only; use --pack hw or bhw for inference");
    packing::PackLayout layout = net::input_layout(n, s, c.batch, ctx.slot_count());
    packing::validate(layout);
    return layout;
}

net::NetworkWeights load_weights(const net::NetworkSpec& n, const RunConfig& c) {
    if (c.weights.empty()) return net::resolve_weights(n, net::make_fixture_weights(n, c.seed));
    const net::TensorArchive ar = net::TensorArchive::load(c.weights);
    const auto& meta = ar.meta();
    if (auto it = meta.find("arch"); it != meta.end() && it->second != net::to_string(n.arch))
        throw IngestionError("archive '" + c.weights + "' holds weights for " + it->second + ", not " +
                             net::to_string(n.arch));
    if (auto it = meta.find("kind"); it != meta.end() && it->second != net::to_string(n.kind))
        throw IngestionError("archive '" + c.weights + "' holds " + it->second + " weights, not " +
                             net::to_string(n.kind));
    return net::resolve_weights(n, ar);
}

net::LabeledImages load_images(const net::NetworkSpec& n, const RunConfig& c, int count) {
    if (!c.data.empty()) {
        net::LabeledImages d = net::load_dataset(c.data, count);
        if (static_cast<int>(d.images.size()) < count)
            throw IngestionError("'" + c.data + "' holds " + std::to_string(d.images.size()) + " samples, " +
                                 std::to_string(count) + " requested");
        const henn::Shape3 want = n.plain.input;
        const Tensor3& im = d.images.front();
        if (im.c != want.c || im.h != want.h || im.w != want.w)
            throw ShapeError("dataset images are " + std::to_string(im.c) + "x" + std::to_string(im.h) + "x" +
                             std::to_string(im.w) + ", the network expects " + std::to_string(want.c) + "x" +
                             std::to_string(want.h) + "x" + std::to_string(want.w));
        return d;
    }
    net::LabeledImages d;
    std::mt19937_64 rng(c.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < count; ++i) {
        Tensor3 im(n.plain.input.c, n.plain.input.h, n.plain.input.w);
        for (double& v : im.data) v = u(rng);
        d.images.push_back(std::move(im));
        d.labels.push_back(-1);
    }
    return d;
}

net::DecomposedInput prepare(const net::NetworkSpec& n, const Tensor3& im, const RunConfig& c, int index) {
    if (n.kind == net::NetKind::Backbone) return net::whole_image_input(im);
    return net::decompose_input(im, c.sigma, c.seed + static_cast<std::uint64_t>(index));
}

int argmax(const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

ckks::OpCounts per_set(const ckks::OpCounts& totals, int sets) {
    ckks::OpCounts r;
    for (ckks::OpKind k : ckks::kAllOpKinds) r[k] = totals[k] / std::max(sets, 1);
    return r;
}

/// Accumulated encrypted run over all requested images.
struct RunResult {
    std::vector<std::vector<double>> logits;
    std::vector<std::vector<double>> reference;
    net::OpReport first;
    ckks::OpCounts totals;
    int sets = 0;
};

RunResult run_batches(const net::NetworkSpec& n, const RunConfig& c, const packing::PackLayout& layout,
                      const net::NetworkWeights& w, const ckks::HeContext& ctx, const net::LabeledImages& data,
                      int count, bool reference) {
    net::ForwardOptions opts;
    opts.policy = c.parallel ? henn::ExecPolicy::Parallel : henn::ExecPolicy::Serial;
    opts.schedule = c.schedule == "plain-first" ? net::Schedule::PlainFirst : net::Schedule::Interleaved;
    RunResult r;
    for (int start = 0; start < count; start += c.batch) {
        if (count - start < c.batch)
            throw UsageError("--samples must be a multiple of --batch (" + std::to_string(count) + " vs " +
                             std::to_string(c.batch) + ")");
        std::vector<net::DecomposedInput> batch;
        for (int i = start; i < start + c.batch; ++i) batch.push_back(prepare(n, data.images[i], c, i));
        const net::ForwardResult fr = net::forward_bicrypto(n, batch, layout, w, ctx, opts);
        for (auto& l : net::decrypt_logits(fr, ctx)) r.logits.push_back(std::move(l));
        if (reference)
            for (const auto& d : batch) r.reference.push_back(net::reference_forward(n, d, w));
        if (start == 0) r.first = fr.report;
        r.totals += fr.report.totals;
        r.sets += fr.report.ciphertext_sets;
    }
    return r;
}

Json config_json(const RunConfig& c, const std::string& command) {
    Json j;
    j["command"] = command;
    j["arch"] = c.arch;
    j["net"] = c.net;
    j["pack"] = c.pack;
    j["batch"] = c.batch;
    j["scheme"] = c.scheme;
    j["poly_degree"] = c.poly_degree;
    j["noise"] = c.noise;
    j["log_scale"] = c.log_scale;
    j["seed"] = c.seed;
    j["sigma"] = c.sigma;
    j["weights"] = c.weights.empty() ? "fixture" : c.weights;
    j["data"] = c.data.empty() ? "synthetic" : c.data;
    return j;
}

Json cost_block(const net::OpReport& report, const ckks::HeContext& ctx, int batch) {
    const bool batched = report.strategy == packing::Strategy::BHW;
    const cost::CountSummary all = cost::count_report(report);
    const cost::CountSummary set = cost::count_report(per_set(report.totals, report.ciphertext_sets));
    const cost::LatencyEstimate est =
        cost::latency_estimate(set, ctx.latency_table(), batched ? batch : 1, batched);
    Json j;
    j["images"] = report.images;
    j["ciphertext_sets"] = report.ciphertext_sets;
    j["levels_used"] = report.levels_used;
    j["counts"] = cost::to_json(all);
    j["counts_per_set"] = cost::to_json(set.totals);
    j["latency"] = cost::to_json(est, ctx.latency_table());
    return j;
}

Json taint_json(const net::TaintVerdict& v) {
    Json j;
    j["verdict"] = v.pass ? "PASS" : "FAIL";
    j["violations"] = v.violations;
    return j;
}

void write_report(const RunConfig& c, const Json& j) {
    if (c.out.empty()) return;
    std::ofstream f(c.out, std::ios::binary | std::ios::trunc);
    if (!f) throw IngestionError("cannot write report '" + c.out + "'");
    f << j.dump(2) << '\n';
}

int cmd_infer(const RunConfig& c, std::ostream& out) {
    const net::NetworkSpec n = build_network(c);
    const ckks::HeContext ctx = build_context(n, c, false);
    const packing::PackLayout layout = checked_layout(n, c, ctx);
    const net::NetworkWeights w = load_weights(n, c);
    const int count = c.samples > 0 ? c.samples : c.batch;
    const net::LabeledImages data = load_images(n, c, count);
    const RunResult r = run_batches(n, c, layout, w, ctx, data, count, false);

    Json j;
    j["config"] = config_json(c, "infer");
    Json preds = Json::array();
    int correct = 0;
    for (int i = 0; i < count; ++i) {
        Json p;
        p["index"] = i;
        p["label"] = data.labels[i];
        p["prediction"] = argmax(r.logits[i]);
        p["logits"] = r.logits[i];
        correct += data.labels[i] == argmax(r.logits[i]);
        preds.push_back(std::move(p));
    }
    j["predictions"] = std::move(preds);
    j["cost"] = cost_block(r.first, ctx, c.batch);
    if (n.kind == net::NetKind::BiNet) j["taint"] = taint_json(net::taint_check(n, r.first));
    write_report(c, j);

    const auto& lat = j["cost"]["latency"];
    out << net_label(n) << "  pack=" << c.pack << " batch=" << c.batch << " images=" << count << '\n';
    if (!c.data.empty()) out << "accuracy " << correct << "/" << count << '\n';
    cost::TableRow row{net_label(n), cost::count_report(per_set(r.first.totals, r.first.ciphertext_sets)), {}};
    row.latency.latency_s = lat["latency_s"].get<double>();
    row.latency.amortized_s = lat["amortized_s"].get<double>();
    out << cost::format_table({row});
    return kOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
    const net::NetworkSpec n = build_network(c);
    const ckks::HeContext ctx = build_context(n, c, false);
    const packing::PackLayout layout = checked_layout(n, c, ctx);
    const net::NetworkWeights w = load_weights(n, c);
    const int count = c.samples > 0 ? c.samples : 100;
    const net::LabeledImages data = load_images(n, c, count);
    const RunResult r = run_batches(n, c, layout, w, ctx, data, count, true);

    double max_diff = 0.0;
    int agree = 0;
    int first_bad = -1;
    for (int i = 0; i < count; ++i) {
        double d = 0.0;
        for (std::size_t k = 0; k < r.logits[i].size(); ++k)
            d = std::max(d, std::fabs(r.logits[i][k] - r.reference[i][k]));
        const bool same = argmax(r.logits[i]) == argmax(r.reference[i]);
        agree += same;
        max_diff = std::max(max_diff, d);
        if (first_bad < 0 && (!same || d > c.threshold)) first_bad = i;
    }
    const bool pass = first_bad < 0;
    Json j;
    j["config"] = config_json(c, "verify");
    j["samples"] = count;
    j["threshold"] = c.threshold;
    j["argmax_agreement"] = agree;
    j["max_logit_diff"] = max_diff;
    j["equivalence"] = pass ? "PASS" : "FAIL";
    if (!pass) j["first_divergent_sample"] = first_bad;
    std::optional<net::TaintVerdict> taint;
    if (n.kind == net::NetKind::BiNet) {
        taint = net::taint_check(n, r.first);
        j["taint"] = taint_json(*taint);
    }
    j["cost"] = cost_block(r.first, ctx, c.batch);
    write_report(c, j);

    out << net_label(n) << "  samples=" << count << " argmax agreement " << agree << "/" << count
        << " max logit diff " << max_diff << " (threshold " << c.threshold << ")\n";
    out << "equivalence: " << (pass ? "PASS" : "FAIL");
    if (!pass) out << " (first divergent sample " << first_bad << ")";
    out << '\n';
    if (taint) {
        out << "taint: " << (taint->pass ? "PASS" : "FAIL") << '\n';
        for (const auto& v : taint->violations) out << "  " << v << '\n';
    } else {
        out << "taint: not applicable (the backbone runs fully encrypted)\n";
    }
    if (!pass) return kVerifyFailed;
    if (taint && !taint->pass) return kTaintFailed;
    return kOk;
}

int cmd_count(const RunConfig& c, bool both, std::ostream& out) {
    std::vector<std::string> kinds = both ? std::vector<std::string>{"binet", "backbone"} : std::vector<std::string>{c.net};
    Json j;
    j["config"] = config_json(c, "count");
    Json runs = Json::array();
    std::vector<cost::TableRow> rows;
    std::vector<std::int64_t> heops;
    for (const auto& kind : kinds) {
        RunConfig k = c;
        k.net = kind;
        const net::NetworkSpec n = build_network(k);
        const ckks::HeContext ctx = build_context(n, k, true);
        packing::PackLayout layout;
        try {
            layout = checked_layout(n, k, ctx);
        } catch (const CapacityError& e) {
            // Only the comparison row may be skipped; a single requested network must fit.
            if (!both || kind == kinds.front()) throw;
            Json r;
            r["net"] = net_label(n);
            r["error"] = e.what();
            runs.push_back(std::move(r));
            out << net_label(n) << ": skipped, " << e.what() << '\n';
            continue;
        }
        const net::NetworkWeights w = net::resolve_weights(n, net::make_zero_weights(n));
        std::vector<net::DecomposedInput> batch;
        const Tensor3 blank(n.plain.input.c, n.plain.input.h, n.plain.input.w);
        for (int i = 0; i < k.batch; ++i)
            batch.push_back(n.kind == net::NetKind::Backbone ? net::whole_image_input(blank)
                                                             : net::decompose_input(blank, 0.0, 0));
        const net::ForwardResult fr = net::forward_bicrypto(n, batch, layout, w, ctx);
        Json r;
        r["net"] = net_label(n);
        r["depth"] = net::network_depth(n);
        Json cb = cost_block(fr.report, ctx, k.batch);
        for (auto it = cb.begin(); it != cb.end(); ++it) r[it.key()] = it.value();
        const cost::CountSummary set = cost::count_report(per_set(fr.report.totals, fr.report.ciphertext_sets));
        cost::TableRow row{net_label(n), set, {}};
        row.latency.latency_s = cb["latency"]["latency_s"].get<double>();
        row.latency.amortized_s = cb["latency"]["amortized_s"].get<double>();
        rows.push_back(row);
        heops.push_back(set.heops);
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    if (heops.size() == 2 && heops[1] > 0)
        j["heop_ratio"] = static_cast<double>(heops[0]) / static_cast<double>(heops[1]);
    j["notes"] = Json::array({"HEOPs = Add_PC + Add_CC + Mul_PC + Mul_CC; Rot is reported separately",
                              "Act_C counts every squaring applied to a ciphertext, head included",
                              "Mask_Mul_PC is the subset of Mul_PC spent on output masks"});
    write_report(c, j);
    out << "pack=" << c.pack << " batch=" << c.batch << " scheme=" << c.scheme << '\n';
    out << cost::format_table(rows);
    if (j.contains("heop_ratio")) out << "HEOPs ratio bi-net/backbone: " << j["heop_ratio"].get<double>() << '\n';
    return kOk;
}

struct SpreadOptions {
    int stack = 0;
    int size = 32;
    int window = 16;
};

int cmd_spread(const RunConfig& c, const SpreadOptions& s, std::ostream& out) {
    Json j;
    j["config"] = config_json(c, "spread");
    auto print = [&](const cost::SpreadState& st) {
        for (std::size_t i = 0; i < st.layers.size(); ++i) {
            const auto& l = st.layers[i];
            char buf[160];
            std::snprintf(buf, sizeof buf, "%3zu  %-28s %-6s %4dx%-5d %7.4f\n", i + 1, l.layer.c_str(),
                          ckks::to_string(l.branch), l.mask.h, l.mask.w, l.fraction);
            out << buf;
        }
        out << (st.full_at ? "fully tainted at layer " + std::to_string(st.full_at) : std::string("never fully tainted")) << '\n';
    };
    if (s.stack > 0) {
        net::Branch b{"stack", ckks::BranchTag::Cipher, {1, s.size, s.size}, {}};
        for (int i = 0; i < s.stack; ++i) b.layers.push_back(henn::conv("conv" + std::to_string(i + 1), 1, 1, 3, 1, 1));
        const cost::SpreadState st = cost::spread_analysis(b, cost::centered_mask(s.size, s.size, s.window, s.window));
        j["stack"] = s.stack;
        j["size"] = s.size;
        j["window"] = s.window;
        j["spread"] = cost::to_json(st);
        write_report(c, j);
        print(st);
        return kOk;
    }
    const net::NetworkSpec n = build_network(c);
    const henn::Shape3 in = n.plain.input;
    const cost::NetworkSpread sp = cost::spread_analysis(n, cost::centered_mask(in.h, in.w, in.h / 2, in.w / 2));
    j["net"] = net_label(n);
    j["spread"] = cost::to_json(sp);
    write_report(c, j);
    if (!sp.cipher.layers.empty()) {
        out << "ciphertext branch\n";
        print(sp.cipher);
    }
    out << (n.kind == net::NetKind::Backbone ? "backbone (centered segment encrypted)\n" : "plaintext branch\n");
    print(sp.plain);
    if (n.kind == net::NetKind::BiNet) out << "head fraction " << sp.head.fraction << '\n';
    return kOk;
}

struct PackDemoOptions {
    int height = 14;
    int width = 14;
    int channels = 1;
};

int cmd_pack_demo(const RunConfig& c, const PackDemoOptions& p, std::ostream& out) {
    packing::PackLayout layout{packing::parse_strategy(c.pack), c.batch, p.height, p.width, p.channels,
                               c.poly_degree / 2};
    packing::validate(layout);
    const ckks::HeContext ctx = ckks::make_context(c.poly_degree, 1, std::ldexp(1.0, 40));
    std::vector<Tensor3> batch;
    std::mt19937_64 rng(c.seed);
    std::uniform_int_distribution<int> u(-50, 50);
    for (int b = 0; b < c.batch; ++b) {
        Tensor3 t(p.channels, p.height, p.width);
        for (double& v : t.data) v = u(rng);
        batch.push_back(std::move(t));
    }
    const auto cts = packing::pack(batch, layout, ctx);
    const bool roundtrip = packing::unpack(cts, layout, ctx) == batch;
    Json j;
    j["config"] = config_json(c, "pack-demo");
    j["height"] = p.height;
    j["width"] = p.width;
    j["channels"] = p.channels;
    j["slot_count"] = layout.slot_count;
    j["required_slots"] = packing::required_slots(layout);
    j["ciphertexts"] = packing::ciphertext_count(layout);
    Json probes = Json::array();
    const int last_b = c.batch - 1;
    for (auto [b, i, jj] : {std::array<int, 3>{0, 0, 0}, {0, p.height - 1, p.width - 1}, {last_b, 0, 1},
                            {last_b, p.height - 1, p.width - 1}}) {
        Json e;
        e["b"] = b;
        e["i"] = i;
        e["j"] = jj;
        e["slot"] = packing::slot_index(b, i, jj, layout);
        e["ciphertext"] = packing::ciphertext_index(b, 0, i, jj, layout);
        probes.push_back(std::move(e));
    }
    j["probes"] = std::move(probes);
    j["roundtrip"] = roundtrip;
    write_report(c, j);
    out << "pack=" << c.pack << " batch=" << c.batch << " image " << p.channels << "x" << p.height << "x" << p.width
        << "  slots " << layout.slot_count << " required " << packing::required_slots(layout) << " ciphertexts "
        << packing::ciphertext_count(layout) << '\n';
    for (const auto& e : j["probes"])
        out << "  (b=" << e["b"] << ", i=" << e["i"] << ", j=" << e["j"] << ") -> ciphertext " << e["ciphertext"]
            << " slot " << e["slot"] << '\n';
    out << "roundtrip " << (roundtrip ? "ok" : "MISMATCH") << '\n';
    return roundtrip ? kOk : kInternal;
}

int exit_code(ErrorCategory cat) {
    switch (cat) {
        case ErrorCategory::Parameter: return kParameter;
        case ErrorCategory::Capacity: return kCapacity;
        case ErrorCategory::Usage: return kUsage;
        case ErrorCategory::DepthBudget: return kDepthBudget;
        case ErrorCategory::Shape: return kShape;
        case ErrorCategory::Index: return kIndex;
        case ErrorCategory::Ingestion: return kIngestion;
    }
    return kInternal;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Encrypted inference for bi-branch networks on a CKKS simulator"};
    app.name("bicrypt");
    app.require_subcommand(1);
    app.footer(
        "Exit codes: 0 ok, 1 verify mismatch, 2 usage, 3 parameter, 4 capacity, 5 depth budget, 6 shape, "
        "7 index, 8 ingestion, 9 taint violation, 70 internal.\n"
        "Set BICRYPT_LATENCY_TABLE to a JSON file to override the per-operation latencies.");

    RunConfig cfg;
    SpreadOptions spread;
    PackDemoOptions demo;

    auto* infer = app.add_subcommand("infer", "Encrypted inference with predictions, op counts and latency");
    add_common(infer, cfg);
    add_run(infer, cfg);

    auto* verify = app.add_subcommand("verify", "Compare encrypted and plain forward passes");
    add_common(verify, cfg);
    add_run(verify, cfg);
    verify->add_option("--threshold", cfg.threshold, "Maximum allowed logit difference")->capture_default_str();

    auto* count = app.add_subcommand("count", "Count HE operations without slot data");
    add_common(count, cfg);
    count->add_option("--seed", cfg.seed, "Recorded in the report")->capture_default_str();

    auto* sp = app.add_subcommand("spread", "Ciphertext spread through the layers");
    add_common(sp, cfg);
    sp->add_option("--stack", spread.stack, "Analyse a stack of this many 3x3 stride-1 convolutions instead");
    sp->add_option("--size", spread.size, "Input size for --stack")->capture_default_str();
    sp->add_option("--window", spread.window, "Centered tainted window for --stack")->capture_default_str();

    auto* pd = app.add_subcommand("pack-demo", "Show where a batch lands in the slots and check the roundtrip");
    add_common(pd, cfg);
    pd->add_option("--height", demo.height)->capture_default_str();
    pd->add_option("--width", demo.width)->capture_default_str();
    pd->add_option("--channels", demo.channels)->capture_default_str();
    pd->add_option("--seed", cfg.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*infer) return cmd_infer(cfg, out);
        if (*verify) return cmd_verify(cfg, out);
        if (*count) return cmd_count(cfg, count->count("--net") == 0, out);
        if (*sp) return cmd_spread(cfg, spread, out);
        if (*pd) return cmd_pack_demo(cfg, demo, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.category()) << "): " << e.what() << '\n';
        return exit_code(e.category());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

}  // namespace bicrypt::cli
