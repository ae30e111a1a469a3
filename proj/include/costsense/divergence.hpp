#pragma once

#include <string>
#include <utility>
#include <vector>

#include "costsense/distribution.hpp"

namespace costsense {

// One of the named f-divergences or the c-primitive divergence with its
// tent generator f_c(t) = min(1-c, c) - min(1-c, c*t).
class DivergenceKind {
public:
    enum class Tag { kl, tv, chi_sq, hellinger_sq, primitive };

    static DivergenceKind kl() { return DivergenceKind(Tag::kl, 0.0); }
    static DivergenceKind tv() { return DivergenceKind(Tag::tv, 0.0); }
    static DivergenceKind chi_sq() { return DivergenceKind(Tag::chi_sq, 0.0); }
    static DivergenceKind hellinger_sq() {
        return DivergenceKind(Tag::hellinger_sq, 0.0);
    }
    static DivergenceKind primitive(double c);

    // Names used on the CLI: "kl", "tv", "chi2", "hellinger2", "primitive:<c>".
    static DivergenceKind parse(const std::string& name);
    std::string name() const;

    Tag tag() const noexcept { return tag_; }
    double c() const;

private:
    DivergenceKind(Tag tag, double c) : tag_(tag), c_(c) {}

    Tag tag_;
    double c_;
};

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 2000;
    double endpoint_margin = 0.1;

    void validate() const;
};

struct QuadratureResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
    int subdivisions = 0;

    // {"lhs":...,"rhs":...,"rel_err":...,"subdivisions":...}
    std::string to_json() const;
};

// I_f(P,Q) for the requested kind. KL and chi^2 return +infinity when P is
// not absolutely continuous w.r.t. Q. TV is the unhalved integral |dP - dQ|
// in [0,2]; use tv_halved() where the comparison inequalities need the
// halved convention.
double divergence(const DivergenceKind& kind, const DiscreteDistribution& p,
                  const DiscreteDistribution& q);

double tv_halved(const DiscreteDistribution& p, const DiscreteDistribution& q);

// The c-primitive divergence in one of its four equivalent forms:
//   1: generator form sum q_i f_c(p_i/q_i)
//   2: min(c,1-c) - sum min((1-c) q_i, c p_i)
//   3: min(c,1-c) - 1/2 + 1/2 sum |c p_i - (1-c) q_i|
//   4: 1/2 dTV(cP, (1-c)Q) - 1/2 |1-2c|   (dTV of general measures)
double primitive(double c, const DiscreteDistribution& p,
                 const DiscreteDistribution& q, int form);

// Weight gamma_f(c) = c^-3 f''((1-c)/c) of the integral representation.
// Only the twice-differentiable generators (KL, chi^2, He^2) are supported.
double weight(const DivergenceKind& kind, double c);

// Checks the weighted integral representation
//   I_f(P,Q) = integral_0^1 I_{f_c}(P,Q) gamma_f(c) dc
// by adaptive quadrature under the substitution c = sin^2(pi t / 2), which
// removes the integrable endpoint singularities of gamma_f. Requires full
// support so the closed form is finite.
QuadratureResult verify_integral_representation(const DivergenceKind& kind,
                                                const DiscreteDistribution& p,
                                                const DiscreteDistribution& q,
                                                const QuadratureConfig& cfg = {});

// sum_i I(P_i,Q_i) - I(tensor P_i, tensor Q_i), nonnegative for TV and He^2.
// The Hellinger product uses exact tensorization; the TV product enumerates
// the product support explicitly (capacity 1e6).
double subadditivity_gap(
    const DivergenceKind& kind,
    const std::vector<std::pair<DiscreteDistribution, DiscreteDistribution>>& pairs);

}  // namespace costsense
