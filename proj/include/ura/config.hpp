#ifndef URA_CONFIG_HPP
#define URA_CONFIG_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ura {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Variant { MsMra, MsMraWopbe, MsugMra, MsSra, MsugSra };

Variant variant_from_string(const std::string& name);
std::string variant_name(Variant v);

inline bool is_sra(Variant v) { return v == Variant::MsSra || v == Variant::MsugSra; }
inline bool is_wopbe(Variant v) { return v == Variant::MsMraWopbe; }

// All scheme parameters. Noise is normalized to sigma_z^2 = 1 and the
// operating point is swept in Eb/N0.
struct SystemConfig {
    Variant variant = Variant::MsMra;
    int B = 100;        // information bits per user
    int r = 11;         // CRC bits (MS-MRA)
    int r1 = 6, r2 = 5; // CRC split for MS-MRA-WOPBE (r1 + r2 = r)
    int J = 2;          // pilot parts
    int Bp = 5;         // pilot bits per part, n_p = 2^Bp
    int nc = 128;       // QPSK symbols in the coded part
    int S = 2;          // slots per (sub-)frame
    int M = 16;         // receive antennas
    int V = 1;          // sub-frame repetitions (SRA variants)
    int G = 1;          // user groups (MSUG variants)
    int Ka = 12;        // active users
    double gamma = 0.1; // Neyman-Pearson false-alarm level
    double phi = 1.0;   // P_p / P_c
    double ebn0_db = 10.0;
    double sigma2 = 1.0;
    int list_size = 64;
    uint64_t seed = 1;
    int trials = 200;
    int threads = 1;
    bool verbose = false;

    int np() const { return 1 << Bp; }
    int L() const { return J * np() + nc; }
    int Bc() const { return B - J * Bp; }
    int n() const { return S * L() * V; }
    int antennas_effective() const { return M * V; }

    // Average transmit power per channel use at the configured Eb/N0.
    double power() const;

    // Throws ConfigError on any inconsistency.
    void validate() const;
};

// Flat key = value config file; unknown keys are an error.
SystemConfig load_config(const std::string& path);
std::string format_config(const SystemConfig& cfg);

}  // namespace ura

#endif
