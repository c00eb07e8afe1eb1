// Regenerates the shipped polar reliability tables (one index per line, most
// reliable first) from the Gaussian-approximation construction.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ura/polar.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Polar code reliability table generator"};
    int block_length = 256;
    double design_snr_db = 2.0;
    std::string out_path;
    app.add_option("--block-length", block_length, "code length (power of two)")->required();
    app.add_option("--design-snr", design_snr_db, "design Es/N0 in dB");
    app.add_option("--out", out_path, "output path (stdout when omitted)");
    CLI11_PARSE(app, argc, argv);

    if (block_length < 2 || (block_length & (block_length - 1)) != 0) {
        std::cerr << "block length must be a power of two >= 2\n";
        return 1;
    }
    auto order = ura::reliability_order(block_length, design_snr_db);
    if (out_path.empty()) {
        for (int idx : order) std::cout << idx << "\n";
    } else {
        ura::save_reliability_table(out_path, order);
    }
    return 0;
}
