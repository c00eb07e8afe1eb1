#include "ura/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace ura {

Variant variant_from_string(const std::string& name) {
    if (name == "MS-MRA") return Variant::MsMra;
    if (name == "MS-MRA-WOPBE") return Variant::MsMraWopbe;
    if (name == "MSUG-MRA") return Variant::MsugMra;
    if (name == "MS-SRA") return Variant::MsSra;
    if (name == "MSUG-SRA") return Variant::MsugSra;
    throw ConfigError("unknown variant: " + name);
}

std::string variant_name(Variant v) {
    switch (v) {
        case Variant::MsMra: return "MS-MRA";
        case Variant::MsMraWopbe: return "MS-MRA-WOPBE";
        case Variant::MsugMra: return "MSUG-MRA";
        case Variant::MsSra: return "MS-SRA";
        case Variant::MsugSra: return "MSUG-SRA";
    }
    return "?";
}

double SystemConfig::power() const {
    return std::pow(10.0, ebn0_db / 10.0) * sigma2 * B / (static_cast<double>(V) * L());
}

void SystemConfig::validate() const {
    if (B <= 0) throw ConfigError("B must be positive");
    if (J < 1) throw ConfigError("J must be >= 1");
    if (Bp < 1 || Bp > 16) throw ConfigError("Bp must be in [1,16]");
    if (Bc() <= 0) throw ConfigError("B_c = B - J*Bp must be positive");
    if (nc < 2 || (nc & (nc - 1)) != 0) throw ConfigError("nc must be a power of two >= 2");
    if (S < 1) throw ConfigError("S must be >= 1");
    if (M < 1) throw ConfigError("M must be >= 1");
    if (V < 1) throw ConfigError("V must be >= 1");
    if (!is_sra(variant) && V != 1) throw ConfigError("V > 1 requires an SRA variant");
    if (G < 1) throw ConfigError("G must be >= 1");
    if (variant == Variant::MsMra && G != 1) throw ConfigError("MS-MRA requires G = 1");
    if (Ka < 0) throw ConfigError("Ka must be non-negative");
    if (gamma <= 0.0 || gamma > 1.0) throw ConfigError("gamma must be in (0,1]");
    if (phi <= 0.0) throw ConfigError("phi must be positive");
    if (sigma2 <= 0.0) throw ConfigError("sigma2 must be positive");
    if (list_size < 1) throw ConfigError("list_size must be >= 1");
    if (is_wopbe(variant)) {
        if (r1 < 1 || r2 < 1) throw ConfigError("WOPBE needs r1, r2 >= 1");
        if (r1 + r2 != r) throw ConfigError("WOPBE needs r1 + r2 = r");
        if (Bc() + r1 + r2 > 2 * nc) throw ConfigError("WOPBE payload exceeds block length");
    } else {
        if (r < 1) throw ConfigError("r must be >= 1");
        if (B + r > 2 * nc) throw ConfigError("polar payload B + r exceeds block length 2*nc");
    }
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    SystemConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string key, eq, value;
        std::istringstream ls(line);
        if (!(ls >> key)) continue;  // blank line
        if (!(ls >> eq >> value) || eq != "=")
            throw ConfigError("bad config line " + std::to_string(lineno) + ": " + line);
        if (key == "variant") cfg.variant = variant_from_string(value);
        else if (key == "B") cfg.B = std::stoi(value);
        else if (key == "r") cfg.r = std::stoi(value);
        else if (key == "r1") cfg.r1 = std::stoi(value);
        else if (key == "r2") cfg.r2 = std::stoi(value);
        else if (key == "J") cfg.J = std::stoi(value);
        else if (key == "Bp") cfg.Bp = std::stoi(value);
        else if (key == "nc") cfg.nc = std::stoi(value);
        else if (key == "S") cfg.S = std::stoi(value);
        else if (key == "M") cfg.M = std::stoi(value);
        else if (key == "V") cfg.V = std::stoi(value);
        else if (key == "G") cfg.G = std::stoi(value);
        else if (key == "Ka") cfg.Ka = std::stoi(value);
        else if (key == "gamma") cfg.gamma = std::stod(value);
        else if (key == "phi") cfg.phi = std::stod(value);
        else if (key == "ebn0_db") cfg.ebn0_db = std::stod(value);
        else if (key == "list_size") cfg.list_size = std::stoi(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "trials") cfg.trials = std::stoi(value);
        else if (key == "threads") cfg.threads = std::stoi(value);
        else throw ConfigError("unknown config key: " + key);
    }
    return cfg;
}

std::string format_config(const SystemConfig& cfg) {
    std::ostringstream os;
    os << "variant = " << variant_name(cfg.variant) << "\n"
       << "B = " << cfg.B << "\n"
       << "r = " << cfg.r << "\n";
    if (is_wopbe(cfg.variant)) os << "r1 = " << cfg.r1 << "\nr2 = " << cfg.r2 << "\n";
    os << "J = " << cfg.J << "\n"
       << "Bp = " << cfg.Bp << "\n"
       << "nc = " << cfg.nc << "\n"
       << "S = " << cfg.S << "\n"
       << "M = " << cfg.M << "\n"
       << "V = " << cfg.V << "\n"
       << "G = " << cfg.G << "\n"
       << "Ka = " << cfg.Ka << "\n"
       << "gamma = " << cfg.gamma << "\n"
       << "phi = " << cfg.phi << "\n"
       << "ebn0_db = " << cfg.ebn0_db << "\n"
       << "list_size = " << cfg.list_size << "\n"
       << "seed = " << cfg.seed << "\n"
       << "trials = " << cfg.trials << "\n"
       << "threads = " << cfg.threads << "\n";
    return os.str();
}

}  // namespace ura
