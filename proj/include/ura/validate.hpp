#ifndef URA_VALIDATE_HPP
#define URA_VALIDATE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace ura::validate {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Exact Hadamard row orthogonality in integer arithmetic, n_p up to 1024.
CheckResult hadamard_orthogonality();

// Noise-only false-alarm rate of the energy detector vs the configured gamma.
CheckResult detector_false_alarm(uint64_t seed);

// Single-user detection rate vs the closed-form detection probability.
CheckResult detection_probability_match(uint64_t seed);

// Channel-estimate error variance vs sigma_z^2 / (n_p P_p).
CheckResult channel_estimator_variance(uint64_t seed);

// Collision-count recursion vs a brute-force pilot-draw/removal simulation.
CheckResult collision_recursion(uint64_t seed);

// Measured first-iteration MRC-output SINR vs the simplified formula.
CheckResult sinr_prediction(uint64_t seed);

// Residual orthogonality and idempotence of the least-squares SIC projection.
CheckResult projection_identities(uint64_t seed);

// Noiseless polar/CRC encode-decode loopback.
CheckResult polar_loopback(uint64_t seed);

// Group power allocation: positive, ascending, exact average, equal SINR.
CheckResult power_solver();

std::vector<CheckResult> run_all(uint64_t seed);

}  // namespace ura::validate

#endif
