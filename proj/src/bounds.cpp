#include "costsense/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <utility>

#include "costsense/json_writer.hpp"

namespace costsense {

namespace {

void require_unit_interval(double c) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("cost parameter c = " + fmt_sig(c, 17) +
                          " outside (0,1)");
    }
}

double checked_capacity(std::size_t atom_count, int n) {
    double capacity = 1.0;
    for (int i = 0; i < n; ++i) {
        capacity *= static_cast<double>(atom_count);
        if (capacity > 1e6) {
            throw CapacityError("product support " + std::to_string(atom_count) +
                                "^" + std::to_string(n) + " exceeds 1e6");
        }
    }
    return capacity;
}

// I_{f_c} between the two n-fold products through the pair divergence hook.
double pair_divergence(double c, const DiscreteDistribution& p,
                       const DiscreteDistribution& q, int n, ProductMode mode) {
    return mode == ProductMode::exact
               ? primitive_product_exact(c, p, q, n)
               : primitive_product_hellinger_bound(c, p, q, n);
}

void echo_family(JsonWriter& w, const FiniteFamily& fam) {
    w.key("n").value(fam.n);
    w.key("members").begin_array();
    for (const auto& m : fam.members) {
        w.begin_object();
        w.key("param").value(m.param);
        w.key("dist").raw_value(m.dist.to_json());
        w.end_object();
    }
    w.end_array();
}

BoundReport make_floored_report(double raw, Regime regime,
                                std::map<std::string, double> constants,
                                std::string inputs_json) {
    BoundReport report;
    report.value = std::max(0.0, raw);
    report.regime = regime;
    report.constants = std::move(constants);
    report.constants["raw"] = raw;
    report.inputs_json = std::move(inputs_json);
    return report;
}

}  // namespace

CostSpec::CostSpec(double c_, double h_) : c(c_), h(h_) {
    require_unit_interval(c);
    if (!(h >= 0.0)) {
        throw DomainError("margin h = " + fmt_sig(h, 17) + " must be >= 0");
    }
    if (h > c_min()) {
        throw DomainError("margin h = " + fmt_sig(h, 17) + " exceeds min(c,1-c) = " +
                          fmt_sig(c_min(), 17));
    }
}

FiniteFamily::FiniteFamily(std::vector<FamilyMember> members_, int n_)
    : members(std::move(members_)), n(n_) {
    if (members.empty()) {
        throw DomainError("family needs at least one member");
    }
    if (n < 1) {
        throw DomainError("sample size n must be positive");
    }
    std::unordered_map<std::string, int> seen;
    for (const auto& m : members) {
        if (!seen.emplace(m.param, 1).second) {
            throw DomainError("duplicate family parameter '" + m.param + "'");
        }
        if (!m.dist.same_atoms(members.front().dist)) {
            throw DomainError("family members must share the same atom list");
        }
    }
}

void validate_rho(const RhoTable& rho, std::size_t member_count) {
    if (rho.size() != member_count) {
        throw DomainError("rho table has " + std::to_string(rho.size()) +
                          " rows for " + std::to_string(member_count) + " members");
    }
    for (const auto& row : rho) {
        if (row.size() != member_count) {
            throw DomainError("rho table is not square");
        }
    }
    const double tol = 1e-12;
    for (std::size_t i = 0; i < member_count; ++i) {
        for (std::size_t j = 0; j < member_count; ++j) {
            if (rho[i][j] < -tol) {
                throw DomainError("rho must be nonnegative");
            }
            if (std::abs(rho[i][j] - rho[j][i]) > tol) {
                throw DomainError("rho must be symmetric");
            }
        }
    }
    if (member_count <= 64) {
        for (std::size_t i = 0; i < member_count; ++i) {
            for (std::size_t j = 0; j < member_count; ++j) {
                for (std::size_t k = 0; k < member_count; ++k) {
                    if (rho[i][k] > rho[i][j] + rho[j][k] + tol) {
                        throw DomainError("rho violates the triangle inequality");
                    }
                }
            }
        }
    }
}

const char* regime_name(Regime regime) {
    switch (regime) {
        case Regime::lecam_pair: return "LeCamPair";
        case Regime::lecam_coupled: return "LeCamCoupled";
        case Regime::assouad: return "Assouad";
        case Regime::assouad_practical: return "AssouadPractical";
        case Regime::cost_theorem_large_margin: return "CostTheorem_LargeMargin";
        case Regime::cost_theorem_small_margin: return "CostTheorem_SmallMargin";
    }
    return "?";
}

const char* product_mode_name(ProductMode mode) {
    return mode == ProductMode::exact ? "exact" : "hellinger_bound";
}

std::string BoundReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("value").value(value);
    w.key("regime").value(regime_name(regime));
    w.key("constants").begin_object();
    for (const auto& [name, v] : constants) {
        w.key(name).value(v);
    }
    w.end_object();
    w.key("inputs").raw_value(inputs_json);
    w.end_object();
    return w.str();
}

double primitive_product_exact(double c, const DiscreteDistribution& p,
                               const DiscreteDistribution& q, int n) {
    require_unit_interval(c);
    if (!p.same_atoms(q)) {
        throw DomainError("distributions must share the same atom list");
    }
    if (n < 1) {
        throw DomainError("sample size n must be positive");
    }
    checked_capacity(p.size(), n);

    const double cbar = 1.0 - c;
    const std::size_t k = p.size();
    double sum_min = 0.0;
    // Odometer over tuples with incrementally maintained factor products.
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    std::vector<double> pprod(static_cast<std::size_t>(n) + 1, 1.0);
    std::vector<double> qprod(static_cast<std::size_t>(n) + 1, 1.0);
    for (std::size_t lvl = 0; lvl < static_cast<std::size_t>(n); ++lvl) {
        pprod[lvl + 1] = pprod[lvl] * p.prob(0);
        qprod[lvl + 1] = qprod[lvl] * q.prob(0);
    }
    while (true) {
        sum_min += std::min(c * pprod[n], cbar * qprod[n]);
        std::size_t pos = static_cast<std::size_t>(n);
        while (pos > 0 && idx[pos - 1] + 1 == k) {
            idx[pos - 1] = 0;
            --pos;
        }
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t lvl = pos - 1; lvl < static_cast<std::size_t>(n); ++lvl) {
            pprod[lvl + 1] = pprod[lvl] * p.prob(idx[lvl]);
            qprod[lvl + 1] = qprod[lvl] * q.prob(idx[lvl]);
        }
    }
    return std::min(c, cbar) - sum_min;
}

double primitive_product_hellinger_bound(double c, const DiscreteDistribution& p,
                                         const DiscreteDistribution& q, int n) {
    require_unit_interval(c);
    const double h2_single = divergence(DivergenceKind::hellinger_sq(), p, q);
    const double h2_product = product_hellinger_sq(h2_single, n);
    return std::min(c, 1.0 - c) * std::sqrt(h2_product);
}

BoundReport lecam_pair_bound(const FiniteFamily& fam, const RhoTable& rho,
                             double c, ProductMode mode) {
    require_unit_interval(c);
    validate_rho(rho, fam.members.size());
    const double cmin = std::min(c, 1.0 - c);

    // The sup ranges over ordered pairs; I_{f_c}(P,Q) and I_{f_c}(Q,P)
    // differ for c != 1/2, so both orders are scanned.
    double best_raw = -std::numeric_limits<double>::infinity();
    double best_div = 0.0;
    std::size_t best_i = 0, best_j = 1;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        for (std::size_t j = 0; j < fam.members.size(); ++j) {
            if (i == j) continue;
            const double div = pair_divergence(c, fam.members[i].dist,
                                               fam.members[j].dist, fam.n, mode);
            const double raw = rho[i][j] * (cmin - div);
            if (raw > best_raw) {
                best_raw = raw;
                best_div = div;
                best_i = i;
                best_j = j;
            }
        }
    }
    if (!std::isfinite(best_raw)) {
        throw DomainError("two-point bound needs at least two members");
    }

    JsonWriter inputs;
    inputs.begin_object();
    inputs.key("c").value(c);
    inputs.key("mode").value(product_mode_name(mode));
    echo_family(inputs, fam);
    inputs.key("argmax_pair").begin_array();
    inputs.value(fam.members[best_i].param).value(fam.members[best_j].param);
    inputs.end_array();
    inputs.end_object();

    return make_floored_report(best_raw, Regime::lecam_pair,
                               {{"c_min", cmin}, {"argmax_divergence", best_div}},
                               inputs.str());
}

BoundReport lecam_coupled_bound(const FiniteFamily& fam, const RhoTable& rho,
                                const Coupling& mu, double c, ProductMode mode) {
    require_unit_interval(c);
    validate_rho(rho, fam.members.size());
    if (mu.entries.empty()) {
        throw DomainError("coupling needs at least one pair");
    }

    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        index[fam.members[i].param] = i;
    }

    double weight_total = 0.0;
    std::unordered_map<std::string, double> marginal_a, marginal_b;
    for (const auto& e : mu.entries) {
        if (!index.count(e.a) || !index.count(e.b)) {
            throw DomainError("coupling references unknown parameter");
        }
        if (!(e.weight >= 0.0)) {
            throw DomainError("coupling weights must be nonnegative");
        }
        weight_total += e.weight;
        marginal_a[e.a] += e.weight;
        marginal_b[e.b] += e.weight;
    }
    if (std::abs(weight_total - 1.0) > kProbSumTol) {
        throw DomainError("coupling weights sum to " + fmt_sig(weight_total, 17) +
                          ", not 1 within 1e-12");
    }
    for (const auto& m : fam.members) {
        const double wa = marginal_a.count(m.param) ? marginal_a[m.param] : 0.0;
        const double wb = marginal_b.count(m.param) ? marginal_b[m.param] : 0.0;
        if (std::abs(wa - wb) > 1e-9) {
            throw DomainError("coupling marginals differ at '" + m.param +
                              "' by " + fmt_sig(std::abs(wa - wb), 17));
        }
    }

    const double cmin = std::min(c, 1.0 - c);
    double raw = 0.0;
    for (const auto& e : mu.entries) {
        if (e.weight == 0.0) continue;
        const std::size_t i = index[e.a];
        const std::size_t j = index[e.b];
        const double div =
            i == j ? 0.0
                   : pair_divergence(c, fam.members[i].dist, fam.members[j].dist,
                                     fam.n, mode);
        raw += e.weight * rho[i][j] * (cmin - div);
    }

    JsonWriter inputs;
    inputs.begin_object();
    inputs.key("c").value(c);
    inputs.key("mode").value(product_mode_name(mode));
    echo_family(inputs, fam);
    inputs.key("coupling_pairs").value(static_cast<long long>(mu.entries.size()));
    inputs.end_object();

    return make_floored_report(raw, Regime::lecam_coupled, {{"c_min", cmin}},
                               inputs.str());
}

BoundReport assouad_bound(const FiniteFamily& fam, double c, ProductMode mode) {
    require_unit_interval(c);

    std::vector<BitString> params;
    params.reserve(fam.members.size());
    for (const auto& m : fam.members) {
        params.push_back(BitString::parse(m.param));
        if (params.back().size() != params.front().size()) {
            throw DomainError("hypercube parameters must share one length");
        }
    }
    const std::size_t d = params.front().size();
    if (d > 16) {
        throw CapacityError("hypercube dimension d = " + std::to_string(d) +
                            " exceeds 16");
    }
    const std::size_t expected = std::size_t{1} << d;
    if (fam.members.size() != expected) {
        throw DomainError("family must contain all of {-1,+1}^d (" +
                          std::to_string(expected) + " members, got " +
                          std::to_string(fam.members.size()) + ")");
    }
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        index[fam.members[i].param] = i;
    }

    // Deterministic scan in member order, then flipped-bit order. All
    // ordered adjacent pairs are visited: the theorem's max is over ordered
    // (theta, theta') and the primitive divergence is order-asymmetric.
    double max_div = -1.0;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        for (std::size_t bit = 0; bit < d; ++bit) {
            const std::string other = params[i].with_flipped(bit).to_string();
            const auto it = index.find(other);
            if (it == index.end()) {
                throw DomainError("family must contain all of {-1,+1}^d; '" +
                                  other + "' is missing");
            }
            const double div = pair_divergence(c, fam.members[i].dist,
                                               fam.members[it->second].dist,
                                               fam.n, mode);
            if (div > max_div) max_div = div;
        }
    }

    const double cmin = std::min(c, 1.0 - c);
    const double raw = static_cast<double>(d) * (cmin - max_div);

    JsonWriter inputs;
    inputs.begin_object();
    inputs.key("c").value(c);
    inputs.key("mode").value(product_mode_name(mode));
    inputs.key("d").value(static_cast<long long>(d));
    echo_family(inputs, fam);
    inputs.end_object();

    return make_floored_report(
        raw, Regime::assouad,
        {{"c_min", cmin},
         {"max_adjacent_divergence", max_div},
         {"d", static_cast<double>(d)}},
        inputs.str());
}

BoundReport assouad_practical_bound(int d, double c, double alpha, int n) {
    require_unit_interval(c);
    if (d < 1) {
        throw DomainError("hypercube dimension d must be positive");
    }
    if (!(alpha >= 0.0)) {
        throw DomainError("alpha must be nonnegative");
    }
    if (n < 1) {
        throw DomainError("sample size n must be positive");
    }
    const double cmin = std::min(c, 1.0 - c);
    const double raw = d * cmin * (1.0 - std::sqrt(alpha * n));

    JsonWriter inputs;
    inputs.begin_object();
    inputs.key("d").value(d);
    inputs.key("c").value(c);
    inputs.key("alpha").value(alpha);
    inputs.key("n").value(n);
    inputs.end_object();

    return make_floored_report(raw, Regime::assouad_practical,
                               {{"c_min", cmin},
                                {"sqrt_alpha_n", std::sqrt(alpha * n)},
                                {"floored", raw < 0.0 ? 1.0 : 0.0}},
                               inputs.str());
}

BoundReport cost_theorem_bound(const CostSpec& spec, int V, int n) {
    if (V < 2) {
        throw DomainError("VC dimension V must be at least 2");
    }
    if (n < V) {
        throw DomainError("sample size n must be at least V");
    }
    const double cmin = spec.c_min();
    const double h_star = std::sqrt(cmin * (V - 1) / (9.0 * n));

    double value = 0.0;
    Regime regime;
    if (spec.h >= h_star) {
        // h_star > 0, so this branch never divides by zero.
        value = cmin * cmin * (V - 1) / (54.0 * n * spec.h);
        regime = Regime::cost_theorem_large_margin;
    } else {
        value = std::pow(cmin, 1.5) / 18.0 * std::sqrt((V - 1) / static_cast<double>(n));
        regime = Regime::cost_theorem_small_margin;
    }

    // The min-form with the smaller branch constant, valid in both regimes.
    const double k_const = 1.0 / 54.0;
    const double sqrt_term = std::sqrt(cmin * V / static_cast<double>(n));
    const double ratio_term =
        spec.h > 0.0 ? cmin * V / (n * spec.h)
                     : std::numeric_limits<double>::infinity();
    const double min_form = k_const * cmin * std::min(sqrt_term, ratio_term);

    JsonWriter inputs;
    inputs.begin_object();
    inputs.key("c").value(spec.c);
    inputs.key("h").value(spec.h);
    inputs.key("V").value(V);
    inputs.key("n").value(n);
    inputs.end_object();

    return make_floored_report(value, regime,
                               {{"c_min", cmin},
                                {"h_star", h_star},
                                {"K", k_const},
                                {"min_form", min_form}},
                               inputs.str());
}

double aux_lemma_gap(double c, double h) {
    require_unit_interval(c);
    const double cbar = 1.0 - c;
    const double cmin = std::min(c, cbar);
    if (!(h >= 0.0) || h > cmin) {
        throw DomainError("margin h = " + fmt_sig(h, 17) +
                          " outside [0, min(c,1-c)]");
    }
    // Radicands are >= 0 up to rounding once h <= min(c,1-c).
    const double r1 = std::max(0.0, c * c - h * h);
    const double r2 = std::max(0.0, cbar * cbar - h * h);
    return 2.0 * h * h / cmin - (1.0 - std::sqrt(r1) - std::sqrt(r2));
}

double hellinger_alpha(const CostSpec& spec, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("per-point mass p outside [0,1]");
    }
    return 4.0 * p * spec.h * spec.h / spec.c_min();
}

}  // namespace costsense
