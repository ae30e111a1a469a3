#include "costsense/classifier.hpp"

#include <cmath>
#include <utility>

namespace costsense {

namespace {

void require_unit_interval(double c) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("cost parameter c = " + fmt_sig(c, 17) +
                          " outside (0,1)");
    }
}

void require_matching_domain(const ClassifierTable& f,
                             const JointLabelDistribution& j) {
    if (f.domain != j.marginal().atoms()) {
        throw DimensionError("classifier domain does not match distribution atoms");
    }
}

}  // namespace

ClassifierTable::ClassifierTable(std::vector<std::string> domain_,
                                 std::vector<int> values_)
    : domain(std::move(domain_)), values(std::move(values_)) {
    if (domain.size() != values.size()) {
        throw DimensionError("classifier domain/value length mismatch");
    }
    for (int v : values) {
        if (v != 1 && v != -1) {
            throw DomainError("classifier values must be +1 or -1");
        }
    }
}

double cost_error(int y, int yhat, double c) {
    require_unit_interval(c);
    if ((y != 1 && y != -1) || (yhat != 1 && yhat != -1)) {
        throw DomainError("labels must be +1 or -1");
    }
    if (y == yhat) return 0.0;
    return y == 1 ? 1.0 - c : c;
}

double generalization_error(const ClassifierTable& f,
                            const JointLabelDistribution& j, double c) {
    require_unit_interval(c);
    require_matching_domain(f, j);
    const auto& m = j.marginal();
    double err = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double eta = j.eta()[i];
        if (f.values[i] != 1) err += m.prob(i) * (1.0 - c) * eta;
        if (f.values[i] != -1) err += m.prob(i) * c * (1.0 - eta);
    }
    return err;
}

ClassifierTable bayes_classifier(const JointLabelDistribution& j, double c) {
    require_unit_interval(c);
    std::vector<int> values;
    values.reserve(j.size());
    for (double eta : j.eta()) {
        values.push_back(eta >= c ? 1 : -1);
    }
    return ClassifierTable(j.marginal().atoms(), std::move(values));
}

double regret(const ClassifierTable& f, const JointLabelDistribution& j, double c) {
    require_unit_interval(c);
    require_matching_domain(f, j);
    const ClassifierTable best = bayes_classifier(j, c);
    const auto& m = j.marginal();
    double total = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (f.values[i] != best.values[i]) {
            total += m.prob(i) * std::abs(j.eta()[i] - c);
        }
    }
    return total;
}

}  // namespace costsense
