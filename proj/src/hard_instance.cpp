#include "costsense/hard_instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

#include <json.hpp>

#include "costsense/json_writer.hpp"

namespace costsense {

namespace {

void require_param_length(const HardInstanceFamily& fam, const BitString& b) {
    if (b.size() != static_cast<std::size_t>(fam.V() - 1)) {
        throw DimensionError("bit string length " + std::to_string(b.size()) +
                             " does not match V-1 = " +
                             std::to_string(fam.V() - 1));
    }
}

}  // namespace

HardInstanceFamily::HardInstanceFamily(int V, int n, CostSpec spec)
    : V_(V), n_(n), spec_(spec) {}

std::string HardInstanceFamily::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("V").value(V_);
    w.key("n").value(n_);
    w.key("c").value(spec_.c);
    w.key("h").value(spec_.h);
    w.key("p").value(p_);
    w.key("effective_h").value(effective_h_);
    w.key("h_star").value(h_star_);
    w.key("margin_substituted").value(margin_substituted_);
    w.key("margin_clamped").value(margin_clamped_);
    w.key("p_clipped").value(p_clipped_);
    w.key("support").begin_array();
    for (const auto& a : support_) w.value(a);
    w.end_array();
    w.end_object();
    return w.str();
}

HardInstanceFamily build_family(int V, int n, const CostSpec& spec,
                                std::optional<double> p_override) {
    if (V < 2) {
        throw DomainError("V must be at least 2");
    }
    if (n < V) {
        throw DomainError("sample size n must be at least V");
    }

    HardInstanceFamily fam(V, n, spec);
    const double cmin = spec.c_min();
    fam.h_star_ = std::sqrt(cmin * (V - 1) / (9.0 * n));

    const double p_max = 1.0 / (V - 1);
    if (p_override) {
        // An explicit mass is a literal construction: take h as given.
        if (!(*p_override >= 0.0 && *p_override <= p_max)) {
            throw DomainError("p override " + fmt_sig(*p_override, 17) +
                              " outside [0, 1/(V-1)]");
        }
        fam.effective_h_ = spec.h;
        fam.p_ = *p_override;
    } else {
        fam.effective_h_ = spec.h;
        if (spec.h < fam.h_star_) {
            fam.effective_h_ = fam.h_star_;
            fam.margin_substituted_ = true;
        }
        // The substituted margin can exceed min(c,1-c) for extreme (c,V,n);
        // eta must stay inside [0,1], so cap it and flag.
        if (fam.effective_h_ > cmin) {
            fam.effective_h_ = cmin;
            fam.margin_clamped_ = true;
        }
        const double p_formula =
            cmin / (9.0 * n * fam.effective_h_ * fam.effective_h_);
        fam.p_ = std::min(p_formula, p_max);
        fam.p_clipped_ = p_formula > p_max;
    }

    fam.support_.reserve(V);
    for (int i = 1; i <= V; ++i) {
        fam.support_.push_back("x" + std::to_string(i));
    }
    return fam;
}

JointLabelDistribution joint_for(const HardInstanceFamily& fam, const BitString& b) {
    require_param_length(fam, b);
    const int V = fam.V();
    std::vector<double> marginal(static_cast<std::size_t>(V), fam.p());
    marginal.back() = std::max(0.0, 1.0 - (V - 1) * fam.p());
    std::vector<double> eta(static_cast<std::size_t>(V), 0.0);
    for (int i = 0; i < V - 1; ++i) {
        eta[i] = fam.spec().c + fam.effective_h() * b.bit(i);
    }
    return JointLabelDistribution(
        DiscreteDistribution(fam.support(), std::move(marginal)), std::move(eta));
}

ClassifierTable bayes_for(const HardInstanceFamily& fam, const BitString& b) {
    require_param_length(fam, b);
    std::vector<int> values(b.bits());
    values.push_back(-1);
    return ClassifierTable(fam.support(), std::move(values));
}

double adjacent_hellinger_sq(const HardInstanceFamily& fam, const BitString& b,
                             const BitString& b2) {
    require_param_length(fam, b);
    require_param_length(fam, b2);
    const double c = fam.spec().c;
    const double cbar = 1.0 - c;
    const double h = fam.effective_h();
    const double r1 = std::max(0.0, c * c - h * h);
    const double r2 = std::max(0.0, cbar * cbar - h * h);
    const double per_flip =
        2.0 * fam.p() * (1.0 - std::sqrt(r1) - std::sqrt(r2));
    return per_flip * hamming(b, b2);
}

FiniteFunctionClass::FiniteFunctionClass(std::vector<std::string> domain,
                                         std::vector<std::vector<int>> functions)
    : domain_(std::move(domain)) {
    if (domain_.empty()) {
        throw DomainError("function class needs a nonempty domain");
    }
    std::unordered_set<std::string> seen_atoms;
    for (const auto& a : domain_) {
        if (!seen_atoms.insert(a).second) {
            throw DomainError("duplicate domain atom '" + a + "'");
        }
    }
    if (functions.empty()) {
        throw DomainError("function class needs at least one function");
    }
    std::set<std::vector<int>> seen;
    for (auto& f : functions) {
        if (f.size() != domain_.size()) {
            throw DimensionError("function table does not cover the domain");
        }
        for (int v : f) {
            if (v != 1 && v != -1) {
                throw DomainError("function values must be +1 or -1");
            }
        }
        if (seen.insert(f).second) {
            functions_.push_back(std::move(f));
        }
    }
}

FiniteFunctionClass FiniteFunctionClass::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("bad function class JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("domain") || !j.contains("functions")) {
        throw DomainError(
            "function class JSON must have \"domain\" and \"functions\"");
    }
    return FiniteFunctionClass(
        j["domain"].get<std::vector<std::string>>(),
        j["functions"].get<std::vector<std::vector<int>>>());
}

namespace {

// Visits all size-m index subsets of [0, domain_size); calls visit with the
// chosen indices, which returns false to stop early.
template <typename Visit>
void for_each_subset(int domain_size, int m, const Visit& visit) {
    std::vector<int> pick(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pick[i] = i;
    while (true) {
        if (!visit(pick)) return;
        int pos = m - 1;
        while (pos >= 0 && pick[pos] == domain_size - m + pos) --pos;
        if (pos < 0) return;
        ++pick[pos];
        for (int i = pos + 1; i < m; ++i) pick[i] = pick[i - 1] + 1;
    }
}

std::size_t distinct_restrictions(const FiniteFunctionClass& fc,
                                  const std::vector<int>& pick) {
    std::unordered_set<std::uint32_t> patterns;
    for (const auto& f : fc.functions()) {
        std::uint32_t packed = 0;
        for (std::size_t i = 0; i < pick.size(); ++i) {
            if (f[pick[i]] == 1) packed |= (std::uint32_t{1} << i);
        }
        patterns.insert(packed);
    }
    return patterns.size();
}

void require_domain_capacity(const FiniteFunctionClass& fc) {
    if (fc.domain().size() > 24) {
        throw CapacityError("brute-force VC utilities handle at most 24 points");
    }
}

}  // namespace

int vc_dimension(const FiniteFunctionClass& fc) {
    require_domain_capacity(fc);
    const int domain_size = static_cast<int>(fc.domain().size());
    int best = 0;
    for (int m = 1; m <= domain_size; ++m) {
        // A class with fewer than 2^m functions cannot shatter m points.
        if (m >= 63 ||
            fc.functions().size() < (std::size_t{1} << m)) {
            break;
        }
        const std::size_t need = std::size_t{1} << m;
        bool shattered = false;
        for_each_subset(domain_size, m, [&](const std::vector<int>& pick) {
            if (distinct_restrictions(fc, pick) == need) {
                shattered = true;
                return false;
            }
            return true;
        });
        if (!shattered) break;
        best = m;
    }
    return best;
}

long long shatter_coefficient(const FiniteFunctionClass& fc, int m) {
    require_domain_capacity(fc);
    if (m < 1 || m > static_cast<int>(fc.domain().size())) {
        throw DomainError("shatter coefficient needs 1 <= m <= |domain|");
    }
    std::size_t best = 0;
    for_each_subset(static_cast<int>(fc.domain().size()), m,
                    [&](const std::vector<int>& pick) {
                        best = std::max(best, distinct_restrictions(fc, pick));
                        return true;
                    });
    return static_cast<long long>(best);
}

}  // namespace costsense
