#pragma once

#include <cstdint>

namespace sublevel {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream keyed by a tuple of integers; equal keys give equal streams.
class KeyedStream {
public:
    explicit KeyedStream(std::uint64_t seed) : state_(seed) { next(); }
    KeyedStream& mix(std::uint64_t key) {
        state_ ^= key + 0x632be59bd9b4e019ULL + (state_ << 6) + (state_ >> 2);
        next();
        return *this;
    }
    std::uint64_t next() { return splitmix64(state_); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

}  // namespace sublevel
