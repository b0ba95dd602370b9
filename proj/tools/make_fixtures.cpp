// Writes the bundled test fixtures: weight archives and an MNIST IDX subset.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bicrypt/error.hpp"
#include "bicrypt/net/datasets.hpp"
#include "bicrypt/net/weights.hpp"

using namespace bicrypt;

namespace {

int write_weights(const std::string& arch, const std::string& kind, std::uint64_t seed, const std::string& out) {
    const net::NetworkSpec n =
        net::make_network(net::parse_arch(arch), kind == "backbone" ? net::NetKind::Backbone : net::NetKind::BiNet);
    net::make_fixture_weights(n, seed).save(out);
    std::cout << "wrote " << out << '\n';
    return 0;
}

// Rows of 784 pixels followed by the label. Takes `per_class` samples of every digit,
// interleaved so that any prefix of 10k samples is class balanced.
int write_mnist(const std::string& csv, int per_class, const std::string& out) {
    std::ifstream in(csv);
    if (!in) throw IngestionError("cannot open '" + csv + "'");
    std::vector<std::vector<std::vector<unsigned char>>> by_class(10);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<unsigned char> px;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) px.push_back(static_cast<unsigned char>(std::stoi(cell)));
        if (px.size() != 785) throw IngestionError("expected 785 columns, got " + std::to_string(px.size()));
        const int label = px.back();
        px.pop_back();
        if (label < 0 || label > 9) throw IngestionError("label out of range");
        if (static_cast<int>(by_class[label].size()) < per_class) by_class[label].push_back(std::move(px));
    }
    std::vector<std::vector<unsigned char>> pixels;
    std::vector<int> labels;
    for (int k = 0; k < per_class; ++k)
        for (int c = 0; c < 10; ++c) {
            if (k >= static_cast<int>(by_class[c].size())) throw IngestionError("not enough samples of digit " + std::to_string(c));
            pixels.push_back(by_class[c][k]);
            labels.push_back(c);
        }
    std::filesystem::create_directories(out);
    net::save_idx(out + "/images.idx3-ubyte", out + "/labels.idx1-ubyte", pixels, 28, 28, labels);
    std::cout << "wrote " << pixels.size() << " samples to " << out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generate test fixtures"};
    app.require_subcommand(1);
    std::string arch = "cnn3", kind = "binet", out, csv;
    std::uint64_t seed = 7;
    int per_class = 20;
    auto* w = app.add_subcommand("weights", "Deterministic fixture weights for a network");
    w->add_option("--arch", arch)->capture_default_str();
    w->add_option("--net", kind)->check(CLI::IsMember({"binet", "backbone"}))->capture_default_str();
    w->add_option("--seed", seed)->capture_default_str();
    w->add_option("--out", out)->required();
    auto* m = app.add_subcommand("mnist", "Class-balanced MNIST subset from a CSV export");
    m->add_option("--csv", csv)->required();
    m->add_option("--per-class", per_class)->capture_default_str();
    m->add_option("--out", out)->required();
    CLI11_PARSE(app, argc, argv);
    try {
        if (*w) return write_weights(arch, kind, seed, out);
        return write_mnist(csv, per_class, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
