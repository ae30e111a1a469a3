#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "costsense/distribution.hpp"
#include "costsense/divergence.hpp"

namespace costsense {

// Cost parameter with the margin of the generalized Massart noise
// condition; requires 0 <= h <= min(c, 1-c).
struct CostSpec {
    double c;
    double h;

    CostSpec(double c_, double h_);

    double c_bar() const noexcept { return 1.0 - c; }
    double c_min() const noexcept { return c < 1.0 - c ? c : 1.0 - c; }
};

struct FamilyMember {
    std::string param;
    DiscreteDistribution dist;
};

// Finite parameter family {P_theta}; observations are n-fold iid products.
struct FiniteFamily {
    std::vector<FamilyMember> members;
    int n;

    FiniteFamily(std::vector<FamilyMember> members_, int n_);
};

// Pairwise loss rho(theta_i, theta_j) aligned with member order.
using RhoTable = std::vector<std::vector<double>>;

// Symmetry and nonnegativity always; the O(m^3) triangle-inequality scan
// only for m <= 64 members.
void validate_rho(const RhoTable& rho, std::size_t member_count);

// Joint distribution over parameter pairs whose two marginals agree.
struct Coupling {
    struct Entry {
        std::string a;
        std::string b;
        double weight;
    };
    std::vector<Entry> entries;
};

enum class Regime {
    lecam_pair,
    lecam_coupled,
    assouad,
    assouad_practical,
    cost_theorem_large_margin,
    cost_theorem_small_margin,
};

const char* regime_name(Regime regime);

// A computed lower bound: the floored value, which branch produced it, the
// named constants, and an echo of the inputs. Serializes with fixed key
// order {"value","regime","constants","inputs"}.
struct BoundReport {
    double value = 0.0;
    Regime regime = Regime::lecam_pair;
    std::map<std::string, double> constants;
    std::string inputs_json = "{}";

    std::string to_json() const;
};

// How product-family divergences I_{f_c}(P^n, Q^n) are evaluated: exact
// enumeration of the product support (capacity |atoms|^n <= 1e6) or the
// valid-but-weaker replacement by min(c,1-c) * He(P^n,Q^n) with exact
// Hellinger tensorization.
enum class ProductMode { exact, hellinger_bound };

const char* product_mode_name(ProductMode mode);

double primitive_product_exact(double c, const DiscreteDistribution& p,
                               const DiscreteDistribution& q, int n);
double primitive_product_hellinger_bound(double c, const DiscreteDistribution& p,
                                         const DiscreteDistribution& q, int n);

// Two-point bound: sup over parameter pairs of
// rho(theta,theta') * (min(c,1-c) - I_{f_c}(P_theta^n, P_theta'^n)).
BoundReport lecam_pair_bound(const FiniteFamily& fam, const RhoTable& rho,
                             double c, ProductMode mode = ProductMode::exact);

// Coupled-prior form: the expectation of the same expression under a
// coupling whose marginals agree (within 1e-9).
BoundReport lecam_coupled_bound(const FiniteFamily& fam, const RhoTable& rho,
                                const Coupling& mu, double c,
                                ProductMode mode = ProductMode::exact);

// Hypercube bound d * (min(c,1-c) - max over single-bit-flip pairs of
// I_{f_c}); the family's params must be exactly {-1,+1}^d, d <= 16.
BoundReport assouad_bound(const FiniteFamily& fam, double c,
                          ProductMode mode = ProductMode::exact);

// d * min(c,1-c) * (1 - sqrt(alpha n)), floored at 0.
BoundReport assouad_practical_bound(int d, double c, double alpha, int n);

// Main cost-sensitive classification lower bound with its two margin
// regimes split at h* = sqrt(min(c,1-c) (V-1) / (9n)).
BoundReport cost_theorem_bound(const CostSpec& spec, int V, int n);

// 2h^2/min(c,1-c) - (1 - sqrt(c^2-h^2) - sqrt((1-c)^2-h^2)), the auxiliary
// series inequality restated as a nonnegative gap.
double aux_lemma_gap(double c, double h);

// alpha(c) = 4 p h^2 / min(c,1-c), the adjacent-pair Hellinger budget.
double hellinger_alpha(const CostSpec& spec, double p);

}  // namespace costsense
