#pragma once

#include <optional>
#include <string>
#include <vector>

#include "costsense/bounds.hpp"
#include "costsense/classifier.hpp"
#include "costsense/distribution.hpp"

namespace costsense {

// The worst-case family {P_b : b in {-1,+1}^(V-1)} over a shattered point
// set x1..xV: per-point mass p on x1..x_{V-1}, the rest on xV, and
// eta(x_i) = c +/- h by the sign of b_i, eta(xV) = 0.
class HardInstanceFamily {
public:
    int V() const noexcept { return V_; }
    int n() const noexcept { return n_; }
    const CostSpec& spec() const noexcept { return spec_; }
    double p() const noexcept { return p_; }
    double effective_h() const noexcept { return effective_h_; }
    double h_star() const noexcept { return h_star_; }
    bool margin_substituted() const noexcept { return margin_substituted_; }
    bool margin_clamped() const noexcept { return margin_clamped_; }
    bool p_clipped() const noexcept { return p_clipped_; }
    const std::vector<std::string>& support() const noexcept { return support_; }

    // The cost spec the construction actually realizes: original c with
    // the effective margin.
    CostSpec effective_spec() const { return CostSpec(spec_.c, effective_h_); }

    std::string to_json() const;

private:
    friend HardInstanceFamily build_family(int V, int n, const CostSpec& spec,
                                           std::optional<double> p_override);

    HardInstanceFamily(int V, int n, CostSpec spec);

    int V_;
    int n_;
    CostSpec spec_;
    double p_ = 0.0;
    double effective_h_ = 0.0;
    double h_star_ = 0.0;
    bool margin_substituted_ = false;
    bool margin_clamped_ = false;
    bool p_clipped_ = false;
    std::vector<std::string> support_;
};

// Builds the family with p = min(c,1-c) / (9 n h^2), substituting the
// margin h~ = sqrt(min(c,1-c) (V-1) / (9n)) when h falls below it and
// clipping p into [0, 1/(V-1)] when the formula overshoots.
HardInstanceFamily build_family(int V, int n, const CostSpec& spec,
                                std::optional<double> p_override = std::nullopt);

// P_b as marginal-times-eta over the support.
JointLabelDistribution joint_for(const HardInstanceFamily& fam, const BitString& b);

// The Bayes classifier of P_b: the bits themselves on x1..x_{V-1}, -1 at xV.
ClassifierTable bayes_for(const HardInstanceFamily& fam, const BitString& b);

// Closed-form He^2(P_b, P_b') =
// 2 p (1 - sqrt(c^2-h^2) - sqrt((1-c)^2-h^2)) * hamming(b, b').
double adjacent_hellinger_sq(const HardInstanceFamily& fam, const BitString& b,
                             const BitString& b2);

// Finite class of +/-1 tables over a shared domain; duplicates are dropped.
class FiniteFunctionClass {
public:
    FiniteFunctionClass(std::vector<std::string> domain,
                        std::vector<std::vector<int>> functions);

    // {"domain":[...],"functions":[[+-1,...],...]}
    static FiniteFunctionClass from_json(const std::string& text);

    const std::vector<std::string>& domain() const noexcept { return domain_; }
    const std::vector<std::vector<int>>& functions() const noexcept {
        return functions_;
    }

private:
    std::vector<std::string> domain_;
    std::vector<std::vector<int>> functions_;
};

// Largest m such that some m-subset of the domain is shattered (all 2^m
// sign patterns realized); 0 when not even one point is. Brute force,
// domain capacity 24 points.
int vc_dimension(const FiniteFunctionClass& fc);

// Max over m-subsets of the number of distinct restrictions.
long long shatter_coefficient(const FiniteFunctionClass& fc, int m);

}  // namespace costsense
