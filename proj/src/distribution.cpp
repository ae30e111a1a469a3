#include "costsense/distribution.hpp"

#include <cmath>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "costsense/json_writer.hpp"

namespace costsense {

DiscreteDistribution::DiscreteDistribution(std::vector<std::string> atoms,
                                           std::vector<double> probs)
    : atoms_(std::move(atoms)), probs_(std::move(probs)) {
    if (atoms_.empty()) {
        throw DomainError("distribution needs at least one atom");
    }
    if (atoms_.size() != probs_.size()) {
        throw DimensionError("atom/prob length mismatch: " +
                             std::to_string(atoms_.size()) + " vs " +
                             std::to_string(probs_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& a : atoms_) {
        if (!seen.insert(a).second) {
            throw DomainError("duplicate atom '" + a + "'");
        }
    }
    double total = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) {
            throw DomainError("negative probability " + fmt_sig(p, 17));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kProbSumTol) {
        throw DomainError("probabilities sum to " + fmt_sig(total, 17) +
                          ", outside 1 +/- 1e-12");
    }
    // Within tolerance: renormalize so downstream identities see an exact-ish
    // unit mass instead of the caller's rounding noise.
    for (double& p : probs_) p /= total;
}

std::string DiscreteDistribution::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("atoms").begin_array();
    for (const auto& a : atoms_) w.value(a);
    w.end_array();
    w.key("probs").begin_array();
    for (double p : probs_) w.value(p);
    w.end_array();
    w.end_object();
    return w.str();
}

DiscreteDistribution DiscreteDistribution::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad distribution JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("atoms") || !j.contains("probs")) {
        throw DomainError("distribution JSON must have \"atoms\" and \"probs\"");
    }
    return DiscreteDistribution(j["atoms"].get<std::vector<std::string>>(),
                                j["probs"].get<std::vector<double>>());
}

JointLabelDistribution::JointLabelDistribution(DiscreteDistribution marginal,
                                               std::vector<double> eta)
    : marginal_(std::move(marginal)), eta_(std::move(eta)) {
    if (eta_.size() != marginal_.size()) {
        throw DimensionError("eta length " + std::to_string(eta_.size()) +
                             " does not match " + std::to_string(marginal_.size()) +
                             " atoms");
    }
    for (double e : eta_) {
        if (!(e >= 0.0 && e <= 1.0)) {
            throw DomainError("eta value " + fmt_sig(e, 17) + " outside [0,1]");
        }
    }
    double joint_total = 0.0;
    for (std::size_t i = 0; i < eta_.size(); ++i) {
        joint_total += marginal_.prob(i) * eta_[i];
        joint_total += marginal_.prob(i) * (1.0 - eta_[i]);
    }
    if (std::abs(joint_total - 1.0) > kProbSumTol) {
        throw DomainError("induced joint mass " + fmt_sig(joint_total, 17) +
                          " not 1 within 1e-12");
    }
}

std::string JointLabelDistribution::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("atoms").begin_array();
    for (const auto& a : marginal_.atoms()) w.value(a);
    w.end_array();
    w.key("marginal").begin_array();
    for (double p : marginal_.probs()) w.value(p);
    w.end_array();
    w.key("eta").begin_array();
    for (double e : eta_) w.value(e);
    w.end_array();
    w.end_object();
    return w.str();
}

JointLabelDistribution JointLabelDistribution::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad joint JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("atoms") || !j.contains("marginal") ||
        !j.contains("eta")) {
        throw DomainError(
            "joint JSON must have \"atoms\", \"marginal\" and \"eta\"");
    }
    DiscreteDistribution marginal(j["atoms"].get<std::vector<std::string>>(),
                                  j["marginal"].get<std::vector<double>>());
    return JointLabelDistribution(std::move(marginal),
                                  j["eta"].get<std::vector<double>>());
}

BitString::BitString(std::vector<int> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) {
        throw DomainError("bit string must be nonempty");
    }
    for (int b : bits_) {
        if (b != 1 && b != -1) {
            throw DomainError("bit string entries must be +1 or -1");
        }
    }
}

BitString BitString::parse(const std::string& text) {
    std::vector<int> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch == '+') {
            bits.push_back(1);
        } else if (ch == '-') {
            bits.push_back(-1);
        } else {
            throw DomainError("bit string characters must be '+' or '-'");
        }
    }
    return BitString(std::move(bits));
}

BitString BitString::with_flipped(std::size_t i) const {
    std::vector<int> bits = bits_;
    bits.at(i) = -bits.at(i);
    return BitString(std::move(bits));
}

std::string BitString::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (int b : bits_) s += (b == 1) ? '+' : '-';
    return s;
}

DiscreteDistribution flatten(const JointLabelDistribution& j) {
    const auto& m = j.marginal();
    std::vector<std::string> atoms;
    std::vector<double> probs;
    atoms.reserve(2 * m.size());
    probs.reserve(2 * m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        atoms.push_back("(" + m.atoms()[i] + ",+1)");
        probs.push_back(m.prob(i) * j.eta()[i]);
        atoms.push_back("(" + m.atoms()[i] + ",-1)");
        probs.push_back(m.prob(i) * (1.0 - j.eta()[i]));
    }
    return DiscreteDistribution(std::move(atoms), std::move(probs));
}

int hamming(const BitString& a, const BitString& b) {
    if (a.size() != b.size()) {
        throw DimensionError("hamming: lengths " + std::to_string(a.size()) +
                             " vs " + std::to_string(b.size()));
    }
    int count = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.bit(i) != b.bit(i)) ++count;
    }
    return count;
}

double product_hellinger_sq(double h2_single, int n) {
    if (n < 1) {
        throw DomainError("product power must be positive");
    }
    // Accept rounding noise just outside [0,2], reject anything real.
    if (h2_single < -1e-12 || h2_single > 2.0 + 1e-12) {
        throw DomainError("squared Hellinger value " + fmt_sig(h2_single, 17) +
                          " outside [0,2]");
    }
    double h2 = std::min(std::max(h2_single, 0.0), 2.0);
    return 2.0 * (1.0 - std::pow(1.0 - h2 / 2.0, n));
}

}  // namespace costsense
