#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "costsense/common.hpp"

namespace costsense {

// Absolute tolerance on probability sums. Constructors renormalize inputs
// whose total is within this of 1 and reject anything further off.
inline constexpr double kProbSumTol = 1e-12;

// Probability vector over a finite alphabet of opaque string atoms.
// Atoms with zero probability are kept; the hard-instance construction
// places zero mass off the shattered set and the divergence code has to
// see those atoms.
class DiscreteDistribution {
public:
    DiscreteDistribution(std::vector<std::string> atoms, std::vector<double> probs);

    const std::vector<std::string>& atoms() const noexcept { return atoms_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    double prob(std::size_t i) const { return probs_.at(i); }

    bool same_atoms(const DiscreteDistribution& other) const {
        return atoms_ == other.atoms_;
    }

    // {"atoms":[...],"probs":[...]}, field order fixed.
    std::string to_json() const;
    static DiscreteDistribution from_json(const std::string& text);

private:
    std::vector<std::string> atoms_;
    std::vector<double> probs_;
};

// Joint distribution over (atom, label) factored as marginal times the
// conditional positive-label probability eta.
class JointLabelDistribution {
public:
    JointLabelDistribution(DiscreteDistribution marginal, std::vector<double> eta);

    const DiscreteDistribution& marginal() const noexcept { return marginal_; }
    const std::vector<double>& eta() const noexcept { return eta_; }
    std::size_t size() const noexcept { return eta_.size(); }

    // {"atoms":[...],"marginal":[...],"eta":[...]}, field order fixed.
    std::string to_json() const;
    static JointLabelDistribution from_json(const std::string& text);

private:
    DiscreteDistribution marginal_;
    std::vector<double> eta_;
};

// Sign vector in {-1,+1}^k. Text form is a string of '+'/'-' characters.
class BitString {
public:
    explicit BitString(std::vector<int> bits);
    static BitString parse(const std::string& text);

    const std::vector<int>& bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return bits_.size(); }
    int bit(std::size_t i) const { return bits_.at(i); }

    BitString with_flipped(std::size_t i) const;
    std::string to_string() const;

    bool operator==(const BitString& other) const { return bits_ == other.bits_; }

private:
    std::vector<int> bits_;
};

// Materializes the joint over (x,+1)/(x,-1) pairs so divergences can be
// evaluated on it directly.
DiscreteDistribution flatten(const JointLabelDistribution& j);

// Number of differing coordinates; lengths must match.
int hamming(const BitString& a, const BitString& b);

// Squared Hellinger distance between n-fold products from the single-factor
// value: 1 - He2(P^n,Q^n)/2 = (1 - He2/2)^n exactly.
double product_hellinger_sq(double h2_single, int n);

}  // namespace costsense
