#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "costsense/bounds.hpp"
#include "costsense/classifier.hpp"
#include "costsense/hard_instance.hpp"

namespace costsense {

// An iid sample of (atom, label) observations.
struct Sample {
    std::vector<std::pair<std::string, int>> items;
};

// n iid draws from the joint; fully determined by the seed (CDF inversion
// over atoms in order, then the label, two uniforms per item).
Sample draw_sample(const JointLabelDistribution& j, int n, std::uint64_t seed);

// Empirical threshold rule: predict +1 where the empirical positive rate
// reaches c; atoms never seen in the sample predict -1.
ClassifierTable plugin_learner(const Sample& s,
                               const std::vector<std::string>& support, double c);

// Empirical cost-sensitive risk minimizer over the class; ties broken by
// the lowest function index.
ClassifierTable erm_learner(const Sample& s, const FiniteFunctionClass& fc,
                            double c);

// All 2^|domain| sign tables, ordered by binary counting (function k maps
// atom i to +1 iff bit i of k is set, so index 0 is the all -1 table).
FiniteFunctionClass exhaustive_class(const std::vector<std::string>& domain);

struct LearnerSpec {
    enum class Kind { plugin, erm };

    static LearnerSpec plugin();
    static LearnerSpec erm(FiniteFunctionClass fc);
    // "plugin" or "erm-exhaustive" (ERM over all tables on the family
    // support, built per family).
    static LearnerSpec parse(const std::string& name);

    Kind kind = Kind::plugin;
    std::optional<FiniteFunctionClass> function_class;
    std::string name = "plugin";
};

struct PerParamStats {
    std::string b;
    double mean_regret = 0.0;
    double std_err = 0.0;
    int trials = 0;
};

// Monte Carlo estimate of the learner's worst-case expected regret over the
// hard-instance family, together with the theorem's lower bound. The
// theorem bounds the best learner, so every simulated learner must sit
// above it: dominance_margin = max_mean_regret - bound.value.
struct SimReport {
    std::vector<PerParamStats> per_b;
    double max_mean_regret = 0.0;
    std::string argmax_b;
    double argmax_std_err = 0.0;
    BoundReport bound;
    double dominance_margin = 0.0;

    std::string to_json() const;
    // Rows "b,mean_regret,std_err,trials".
    void write_csv(std::ostream& os) const;
};

// Runs `trials` sample->learn->exact-regret rounds for every b in
// {-1,+1}^(V-1). Trial (b, t) uses the derived stream (seed, b_index, t),
// and aggregation is pairwise in fixed index order, so the report is
// identical for any thread count.
SimReport estimate_minimax_risk(const HardInstanceFamily& fam,
                                const LearnerSpec& learner, int trials,
                                std::uint64_t seed, int threads = 1);

}  // namespace costsense
