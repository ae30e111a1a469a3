#pragma once

#include <string>
#include <vector>

#include "costsense/distribution.hpp"

namespace costsense {

// A +/-1-valued function on a finite support, stored as parallel vectors.
struct ClassifierTable {
    std::vector<std::string> domain;
    std::vector<int> values;

    ClassifierTable(std::vector<std::string> domain_, std::vector<int> values_);

    std::size_t size() const noexcept { return domain.size(); }
    int value_at(std::size_t i) const { return values.at(i); }

    bool operator==(const ClassifierTable& other) const {
        return domain == other.domain && values == other.values;
    }
};

// Cost-sensitive error of a single prediction: a missed positive costs 1-c,
// a false positive costs c.
double cost_error(int y, int yhat, double c);

// Exact expected cost-sensitive error of f under the joint:
// sum_x M(x) [ (1-c) eta(x) 1{f(x) != 1} + c (1-eta(x)) 1{f(x) != -1} ].
double generalization_error(const ClassifierTable& f,
                            const JointLabelDistribution& j, double c);

// Threshold rule: predict +1 exactly when eta(x) >= c (sign(0) = +1).
ClassifierTable bayes_classifier(const JointLabelDistribution& j, double c);

// Excess error over the Bayes classifier, computed through the margin
// decomposition sum_x M(x) |eta(x) - c| 1{f(x) != f*(x)}; agrees with the
// generalization-error difference to within rounding.
double regret(const ClassifierTable& f, const JointLabelDistribution& j, double c);

}  // namespace costsense
