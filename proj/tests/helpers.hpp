#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "costsense/common.hpp"
#include "costsense/distribution.hpp"

namespace testutil {

using costsense::DiscreteDistribution;
using costsense::JointLabelDistribution;
using costsense::rng::SplitMix64;

// Random probability vector over atoms a0..a{k-1}. With allow_zeros, each
// atom independently gets zeroed with probability ~1/4 (at least one stays
// positive) to exercise the absolute-continuity code paths.
inline DiscreteDistribution random_distribution(SplitMix64& gen,
                                                std::size_t support,
                                                bool allow_zeros = true,
                                                double floor = 0.0) {
    std::vector<std::string> atoms;
    std::vector<double> probs(support);
    atoms.reserve(support);
    double total = 0.0;
    while (total == 0.0) {
        total = 0.0;
        for (std::size_t i = 0; i < support; ++i) {
            double w = floor + (1.0 - floor) * gen.next_double();
            if (allow_zeros && gen.next_below(4) == 0) w = 0.0;
            probs[i] = w;
            total += w;
        }
    }
    for (double& p : probs) p /= total;
    for (std::size_t i = 0; i < support; ++i) {
        atoms.push_back("a" + std::to_string(i));
    }
    return DiscreteDistribution(std::move(atoms), std::move(probs));
}

inline std::pair<DiscreteDistribution, DiscreteDistribution> random_pair(
    SplitMix64& gen, std::size_t support, bool allow_zeros = true,
    double floor = 0.0) {
    return {random_distribution(gen, support, allow_zeros, floor),
            random_distribution(gen, support, allow_zeros, floor)};
}

inline JointLabelDistribution random_joint(SplitMix64& gen, std::size_t support) {
    DiscreteDistribution marginal = random_distribution(gen, support);
    std::vector<double> eta(support);
    for (auto& e : eta) e = gen.next_double();
    return JointLabelDistribution(std::move(marginal), std::move(eta));
}

}  // namespace testutil
