#ifndef URA_RNG_HPP
#define URA_RNG_HPP

#include <cstdint>
#include <random>

namespace ura {

// splitmix64 step; used to derive independent per-trial and per-group seeds
// from a master seed so trial execution order never matters.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

}  // namespace ura

#endif
