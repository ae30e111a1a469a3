#include "costsense/learnsim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>
#include <unordered_map>
#include <utility>

#include "costsense/json_writer.hpp"

namespace costsense {

Sample draw_sample(const JointLabelDistribution& j, int n, std::uint64_t seed) {
    if (n < 1) {
        throw DomainError("sample size n must be positive");
    }
    rng::SplitMix64 gen(seed);
    const auto& m = j.marginal();
    Sample s;
    s.items.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double u = gen.next_double();
        std::size_t idx = m.size() - 1;  // remainder goes to the last atom
        double cum = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            cum += m.prob(i);
            if (u < cum) {
                idx = i;
                break;
            }
        }
        const int label = gen.next_double() < j.eta()[idx] ? 1 : -1;
        s.items.emplace_back(m.atoms()[idx], label);
    }
    return s;
}

ClassifierTable plugin_learner(const Sample& s,
                               const std::vector<std::string>& support, double c) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("cost parameter c outside (0,1)");
    }
    std::unordered_map<std::string, std::pair<int, int>> counts;  // (seen, pos)
    for (const auto& [atom, label] : s.items) {
        auto& entry = counts[atom];
        ++entry.first;
        if (label == 1) ++entry.second;
    }
    std::vector<int> values;
    values.reserve(support.size());
    for (const auto& atom : support) {
        const auto it = counts.find(atom);
        if (it == counts.end() || it->second.first == 0) {
            values.push_back(-1);
            continue;
        }
        const double eta_hat = static_cast<double>(it->second.second) /
                               static_cast<double>(it->second.first);
        values.push_back(eta_hat >= c ? 1 : -1);
    }
    return ClassifierTable(support, std::move(values));
}

ClassifierTable erm_learner(const Sample& s, const FiniteFunctionClass& fc,
                            double c) {
    if (!(c > 0.0 && c < 1.0)) {
        throw DomainError("cost parameter c outside (0,1)");
    }
    std::unordered_map<std::string, std::size_t> domain_index;
    for (std::size_t i = 0; i < fc.domain().size(); ++i) {
        domain_index[fc.domain()[i]] = i;
    }
    std::vector<std::pair<std::size_t, int>> indexed;
    indexed.reserve(s.items.size());
    for (const auto& [atom, label] : s.items) {
        const auto it = domain_index.find(atom);
        if (it == domain_index.end()) {
            throw DomainError("sample atom '" + atom +
                              "' is outside the class domain");
        }
        indexed.emplace_back(it->second, label);
    }

    std::size_t best = 0;
    double best_risk = std::numeric_limits<double>::infinity();
    for (std::size_t fi = 0; fi < fc.functions().size(); ++fi) {
        const auto& f = fc.functions()[fi];
        double risk = 0.0;
        for (const auto& [idx, label] : indexed) {
            risk += cost_error(label, f[idx], c);
        }
        if (risk < best_risk) {
            best_risk = risk;
            best = fi;
        }
    }
    return ClassifierTable(fc.domain(), fc.functions()[best]);
}

FiniteFunctionClass exhaustive_class(const std::vector<std::string>& domain) {
    if (domain.size() > 20) {
        throw CapacityError("exhaustive class over " +
                            std::to_string(domain.size()) + " atoms is too large");
    }
    const std::size_t count = std::size_t{1} << domain.size();
    std::vector<std::vector<int>> tables;
    tables.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<int> f(domain.size());
        for (std::size_t i = 0; i < domain.size(); ++i) {
            f[i] = (k >> i) & 1 ? 1 : -1;
        }
        tables.push_back(std::move(f));
    }
    return FiniteFunctionClass(domain, std::move(tables));
}

LearnerSpec LearnerSpec::plugin() {
    LearnerSpec spec;
    spec.kind = Kind::plugin;
    spec.name = "plugin";
    return spec;
}

LearnerSpec LearnerSpec::erm(FiniteFunctionClass fc) {
    LearnerSpec spec;
    spec.kind = Kind::erm;
    spec.function_class = std::move(fc);
    spec.name = "erm";
    return spec;
}

LearnerSpec LearnerSpec::parse(const std::string& name) {
    if (name == "plugin") return plugin();
    if (name == "erm-exhaustive") {
        LearnerSpec spec;
        spec.kind = Kind::erm;
        spec.name = "erm-exhaustive";
        return spec;  // class built per family support
    }
    throw DomainError("unknown learner '" + name + "'");
}

std::string SimReport::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("per_b").begin_array();
    for (const auto& stats : per_b) {
        w.begin_object();
        w.key("b").value(stats.b);
        w.key("mean_regret").value(stats.mean_regret);
        w.key("std_err").value(stats.std_err);
        w.key("trials").value(stats.trials);
        w.end_object();
    }
    w.end_array();
    w.key("max_mean_regret").value(max_mean_regret);
    w.key("argmax_b").value(argmax_b);
    w.key("argmax_std_err").value(argmax_std_err);
    w.key("bound").raw_value(bound.to_json());
    w.key("dominance_margin").value(dominance_margin);
    w.end_object();
    return w.str();
}

void SimReport::write_csv(std::ostream& os) const {
    os << "b,mean_regret,std_err,trials\n";
    for (const auto& stats : per_b) {
        os << stats.b << ',' << fmt_sig(stats.mean_regret, 9) << ','
           << fmt_sig(stats.std_err, 9) << ',' << stats.trials << '\n';
    }
}

SimReport estimate_minimax_risk(const HardInstanceFamily& fam,
                                const LearnerSpec& learner, int trials,
                                std::uint64_t seed, int threads) {
    if (trials < 1) {
        throw DomainError("trials must be positive");
    }
    if (threads < 1) {
        throw DomainError("thread count must be positive");
    }
    const int bits = fam.V() - 1;
    if (bits > 8) {
        throw CapacityError("2^(V-1) parameter strings exceed 256");
    }
    const std::size_t b_count = std::size_t{1} << bits;

    // Canonical parameter order: binary counting, bit i of the counter is
    // coordinate i (+1 for a set bit).
    std::vector<BitString> params;
    params.reserve(b_count);
    for (std::size_t k = 0; k < b_count; ++k) {
        std::vector<int> bvec(static_cast<std::size_t>(bits));
        for (int i = 0; i < bits; ++i) {
            bvec[static_cast<std::size_t>(i)] = (k >> i) & 1 ? 1 : -1;
        }
        params.emplace_back(std::move(bvec));
    }

    std::vector<JointLabelDistribution> joints;
    joints.reserve(b_count);
    for (const auto& b : params) joints.push_back(joint_for(fam, b));

    const FiniteFunctionClass* erm_class = nullptr;
    std::optional<FiniteFunctionClass> built_class;
    if (learner.kind == LearnerSpec::Kind::erm) {
        if (learner.function_class) {
            erm_class = &*learner.function_class;
        } else {
            built_class = exhaustive_class(fam.support());
            erm_class = &*built_class;
        }
    }

    const double c = fam.spec().c;
    std::vector<std::vector<double>> regrets(
        b_count, std::vector<double>(static_cast<std::size_t>(trials), 0.0));

    auto run_trial = [&](std::size_t b_idx, int t) {
        const std::uint64_t trial_seed =
            rng::derive_stream(seed, b_idx, static_cast<std::uint64_t>(t));
        const Sample s = draw_sample(joints[b_idx], fam.n(), trial_seed);
        const ClassifierTable f =
            learner.kind == LearnerSpec::Kind::plugin
                ? plugin_learner(s, fam.support(), c)
                : erm_learner(s, *erm_class, c);
        regrets[b_idx][static_cast<std::size_t>(t)] = regret(f, joints[b_idx], c);
    };

    const std::size_t total = b_count * static_cast<std::size_t>(trials);
    if (threads == 1) {
        for (std::size_t w = 0; w < total; ++w) {
            run_trial(w / static_cast<std::size_t>(trials),
                      static_cast<int>(w % static_cast<std::size_t>(trials)));
        }
    } else {
        // Every trial writes its own slot; the block split only affects
        // scheduling, never the numbers.
        std::vector<std::thread> pool;
        const std::size_t chunk = (total + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            const std::size_t lo = w * chunk;
            const std::size_t hi = std::min(total, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, lo, hi] {
                for (std::size_t idx = lo; idx < hi; ++idx) {
                    run_trial(idx / static_cast<std::size_t>(trials),
                              static_cast<int>(idx % static_cast<std::size_t>(trials)));
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    SimReport report;
    report.per_b.reserve(b_count);
    for (std::size_t bi = 0; bi < b_count; ++bi) {
        PerParamStats stats;
        stats.b = params[bi].to_string();
        stats.trials = trials;
        stats.mean_regret = pairwise_sum(regrets[bi]) / trials;
        if (trials > 1) {
            std::vector<double> sq(static_cast<std::size_t>(trials));
            for (int t = 0; t < trials; ++t) {
                const double d = regrets[bi][static_cast<std::size_t>(t)] -
                                 stats.mean_regret;
                sq[static_cast<std::size_t>(t)] = d * d;
            }
            const double var = pairwise_sum(sq) / (trials - 1);
            stats.std_err = std::sqrt(var / trials);
        }
        report.per_b.push_back(std::move(stats));
    }

    report.max_mean_regret = -std::numeric_limits<double>::infinity();
    for (const auto& stats : report.per_b) {
        if (stats.mean_regret > report.max_mean_regret) {
            report.max_mean_regret = stats.mean_regret;
            report.argmax_b = stats.b;
            report.argmax_std_err = stats.std_err;
        }
    }

    report.bound = cost_theorem_bound(fam.spec(), fam.V(), fam.n());
    report.dominance_margin = report.max_mean_regret - report.bound.value;
    return report;
}

}  // namespace costsense
