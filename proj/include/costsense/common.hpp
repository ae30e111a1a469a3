#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace costsense {

// Error taxonomy shared by every module. The CLI maps these onto exit codes:
// DomainError (and subtypes) -> 1, CapacityError -> 3.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : Error {
    using Error::Error;
};

struct DimensionError : DomainError {
    using DomainError::DomainError;
};

struct CapacityError : Error {
    using Error::Error;
};

// Requested weight function for a generator without a classical second
// derivative (total variation, primitives).
struct UnsupportedGeneratorError : DomainError {
    using DomainError::DomainError;
};

// Quadrature failed to reach tolerance; carries the best estimate so far.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double best_estimate)
        : Error(what), best_estimate_(best_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }

private:
    double best_estimate_;
};

// Fixed-significant-digit formatting. 17 digits round-trips IEEE doubles
// (JSON output); 9 keeps CSV readable.
std::string fmt_sig(double x, int significant_digits);

// Pairwise (cascade) summation in fixed index order; the result does not
// depend on how the work that produced `xs` was scheduled.
double pairwise_sum(const std::vector<double>& xs);

namespace rng {

// Counter-based splittable RNG. Streams are derived by mixing the master
// seed with stream indices, so trial (s, i, t) is reproducible regardless
// of execution order or thread count. std::uniform_real_distribution is
// implementation-defined, which would break the byte-identical output
// contract, hence the explicit generator.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t substream = 0) {
    std::uint64_t x = mix64(seed + 0x9e3779b97f4a7c15ULL);
    x = mix64(x ^ (stream + 0xbf58476d1ce4e5b9ULL));
    x = mix64(x ^ (substream + 0x94d049bb133111ebULL));
    return x;
}

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [lo, hi).
    double next_double(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, bound).
    std::uint64_t next_below(std::uint64_t bound) {
        return next_u64() % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace rng
}  // namespace costsense
