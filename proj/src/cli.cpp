#include "costsense/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "costsense/bounds.hpp"
#include "costsense/divergence.hpp"
#include "costsense/hard_instance.hpp"
#include "costsense/joint_range.hpp"
#include "costsense/json_writer.hpp"
#include "costsense/learnsim.hpp"

namespace costsense {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitCertification = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitUsage = 64;

// Certification threshold shared by every `certify` target.
constexpr double kCertTol = 1e-12;

std::vector<double> split_doubles(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) {
                throw DomainError("bad number '" + tok + "'");
            }
        } catch (const std::invalid_argument&) {
            throw DomainError("bad number '" + tok + "'");
        } catch (const std::out_of_range&) {
            throw DomainError("number out of range '" + tok + "'");
        }
    }
    if (values.empty()) {
        throw DomainError("expected a comma-separated probability list");
    }
    return values;
}

// "0.3,0.7" -> distribution over auto-generated atoms a0,a1,...
DiscreteDistribution parse_distribution(const std::string& csv) {
    std::vector<double> probs = split_doubles(csv);
    std::vector<std::string> atoms;
    atoms.reserve(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
        atoms.push_back("a" + std::to_string(i));
    }
    return DiscreteDistribution(std::move(atoms), std::move(probs));
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot open '" + path + "'");
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("bad JSON in '" + path + "': " + e.what());
    }
}

FiniteFamily load_family(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_object() || !j.contains("n") || !j.contains("members")) {
        throw DomainError("family file needs \"n\" and \"members\"");
    }
    std::vector<FamilyMember> members;
    for (const auto& m : j["members"]) {
        if (!m.contains("param") || !m.contains("dist")) {
            throw DomainError("family member needs \"param\" and \"dist\"");
        }
        members.push_back(FamilyMember{m["param"].get<std::string>(),
                                       DiscreteDistribution::from_json(
                                           m["dist"].dump())});
    }
    return FiniteFamily(std::move(members), j["n"].get<int>());
}

RhoTable load_rho(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_object() || !j.contains("table")) {
        throw DomainError("rho file needs \"table\"");
    }
    return j["table"].get<RhoTable>();
}

Coupling load_coupling(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    if (!j.is_object() || !j.contains("pairs")) {
        throw DomainError("coupling file needs \"pairs\"");
    }
    Coupling mu;
    for (const auto& e : j["pairs"]) {
        mu.entries.push_back(Coupling::Entry{e.at("a").get<std::string>(),
                                             e.at("b").get<std::string>(),
                                             e.at("weight").get<double>()});
    }
    return mu;
}

// rho(theta,theta') = 1 off the diagonal: the discrete pseudo-metric.
RhoTable unit_rho(std::size_t m) {
    RhoTable rho(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i) rho[i][i] = 0.0;
    return rho;
}

ProductMode parse_mode(const std::string& name) {
    if (name == "exact") return ProductMode::exact;
    if (name == "hellinger") return ProductMode::hellinger_bound;
    throw DomainError("mode must be 'exact' or 'hellinger'");
}

void emit_certification(std::ostream& out, const std::string& which,
                        double max_violation, double argmax_p, double argmax_q,
                        bool with_argmax) {
    JsonWriter w;
    w.begin_object();
    w.key("which").value(which);
    w.key("max_violation").value(max_violation);
    if (with_argmax) {
        w.key("argmax").begin_object();
        w.key("p").value(argmax_p);
        w.key("q").value(argmax_q);
        w.end_object();
    }
    w.key("pass").value(max_violation <= kCertTol);
    w.end_object();
    out << w.str() << '\n';
}

struct CertifyOutcome {
    double max_violation = 0.0;
};

// Violation of the aux-lemma inequality over an interior c grid crossed
// with margins up to min(c,1-c); includes h = 0 and h = min(c,1-c).
CertifyOutcome certify_aux_lemma(int grid) {
    if (grid < 2) {
        throw DomainError("grid must be at least 2");
    }
    double max_violation = -std::numeric_limits<double>::infinity();
    for (int i = 1; i < grid; ++i) {
        const double c = static_cast<double>(i) / grid;
        const double cmin = std::min(c, 1.0 - c);
        for (int j = 0; j < grid; ++j) {
            // j = grid-1 must land exactly on h = cmin.
            const double h = cmin * (static_cast<double>(j) / (grid - 1));
            max_violation = std::max(max_violation, -aux_lemma_gap(c, h));
        }
    }
    return {max_violation};
}

// Random factor lists: both TV and He^2 sub-additivity gaps must be
// nonnegative. Factor count <= 4, support sizes <= 10.
CertifyOutcome certify_subadditivity(int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw DomainError("trials must be positive");
    }
    rng::SplitMix64 gen(seed);
    auto random_dist = [&](std::size_t support) {
        std::vector<std::string> atoms;
        std::vector<double> probs(support);
        double total = 0.0;
        for (std::size_t i = 0; i < support; ++i) {
            atoms.push_back("s" + std::to_string(i));
            probs[i] = -std::log(1.0 - gen.next_double());
            total += probs[i];
        }
        for (double& p : probs) p /= total;
        return DiscreteDistribution(std::move(atoms), std::move(probs));
    };

    double max_violation = -std::numeric_limits<double>::infinity();
    for (int t = 0; t < trials; ++t) {
        const std::size_t k = 1 + gen.next_below(4);
        std::vector<std::pair<DiscreteDistribution, DiscreteDistribution>> pairs;
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t support = 2 + gen.next_below(9);
            pairs.emplace_back(random_dist(support), random_dist(support));
        }
        max_violation = std::max(
            max_violation, -subadditivity_gap(DivergenceKind::tv(), pairs));
        max_violation = std::max(
            max_violation,
            -subadditivity_gap(DivergenceKind::hellinger_sq(), pairs));
    }
    return {max_violation};
}

int cmd_joint_range(std::ostream& out, double c, int grid,
                    const std::string& out_dir) {
    const auto samples = sample_j2(DivergenceKind::hellinger_sq(),
                                   DivergenceKind::primitive(c), grid);
    const Hull2D hull = convex_hull(to_point_set(samples));
    const PlanarPointSet curve = parametric_boundary(c, 512);

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw DomainError("cannot create '" + out_dir + "': " + ec.message());
    }
    const auto write = [&](const std::string& name, const auto& emit) {
        const std::filesystem::path path = std::filesystem::path(out_dir) / name;
        std::ofstream os(path);
        if (!os) {
            throw DomainError("cannot write '" + path.string() + "'");
        }
        emit(os);
    };
    write("j2.csv", [&](std::ostream& os) { write_j2_csv(os, samples); });
    write("hull.csv", [&](std::ostream& os) {
        PlanarPointSet ps;
        ps.points = hull.vertices;
        write_xy_csv(os, ps);
    });
    write("curve.csv", [&](std::ostream& os) { write_xy_csv(os, curve); });

    JsonWriter w;
    w.begin_object();
    w.key("c").value(c);
    w.key("grid").value(grid);
    w.key("samples").value(static_cast<long long>(samples.size()));
    w.key("hull_vertices").value(static_cast<long long>(hull.vertices.size()));
    w.key("files").begin_array();
    w.value("j2.csv").value("hull.csv").value("curve.csv");
    w.end_array();
    w.end_object();
    out << w.str() << '\n';
    return kExitOk;
}

struct SweepConfig {
    std::vector<double> c_values;
    std::vector<int> v_values;
    std::vector<int> n_values;
    std::vector<double> h_values;          // absolute margins
    std::vector<double> h_star_factors;    // margins relative to h*
    std::vector<std::string> learners;
    int trials = 100;
    std::uint64_t seed = 1;
    int threads = 1;
};

SweepConfig load_sweep_config(const std::string& path) {
    const nlohmann::json j = load_json_file(path);
    SweepConfig cfg;
    const auto need = [&](const char* key) {
        if (!j.contains(key)) {
            throw DomainError(std::string("sweep config needs \"") + key + "\"");
        }
    };
    need("c");
    need("V");
    need("n");
    need("learners");
    cfg.c_values = j["c"].get<std::vector<double>>();
    cfg.v_values = j["V"].get<std::vector<int>>();
    cfg.n_values = j["n"].get<std::vector<int>>();
    cfg.learners = j["learners"].get<std::vector<std::string>>();
    if (j.contains("h")) cfg.h_values = j["h"].get<std::vector<double>>();
    if (j.contains("h_star_factors")) {
        cfg.h_star_factors = j["h_star_factors"].get<std::vector<double>>();
    }
    if (cfg.h_values.empty() && cfg.h_star_factors.empty()) {
        throw DomainError("sweep config needs \"h\" or \"h_star_factors\"");
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
    return cfg;
}

int cmd_sweep(std::ostream& out, std::ostream& err, const SweepConfig& cfg,
              const std::string& out_path) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            throw DomainError("cannot write '" + out_path + "'");
        }
        os = &file;
    }
    *os << "c,h,n,V,learner,trials,seed,bound,regime,max_mean_regret,std_err,"
           "dominance_margin\n";
    for (double c : cfg.c_values) {
        for (int V : cfg.v_values) {
            for (int n : cfg.n_values) {
                std::vector<double> margins = cfg.h_values;
                if (!cfg.h_star_factors.empty()) {
                    const double cmin = std::min(c, 1.0 - c);
                    const double h_star = std::sqrt(cmin * (V - 1) / (9.0 * n));
                    for (double factor : cfg.h_star_factors) {
                        margins.push_back(std::min(factor * h_star, cmin));
                    }
                }
                for (double h : margins) {
                    const CostSpec spec(c, h);
                    const HardInstanceFamily fam = build_family(V, n, spec);
                    for (const auto& learner_name : cfg.learners) {
                        const LearnerSpec learner = LearnerSpec::parse(learner_name);
                        const SimReport report = estimate_minimax_risk(
                            fam, learner, cfg.trials, cfg.seed, cfg.threads);
                        *os << fmt_sig(c, 9) << ',' << fmt_sig(h, 9) << ',' << n
                            << ',' << V << ',' << learner_name << ','
                            << cfg.trials << ',' << cfg.seed << ','
                            << fmt_sig(report.bound.value, 9) << ','
                            << regime_name(report.bound.regime) << ','
                            << fmt_sig(report.max_mean_regret, 9) << ','
                            << fmt_sig(report.argmax_std_err, 9) << ','
                            << fmt_sig(report.dominance_margin, 9) << '\n';
                        if (report.dominance_margin < 0.0) {
                            err << "note: mean regret below the bound at c="
                                << fmt_sig(c, 9) << " h=" << fmt_sig(h, 9)
                                << " n=" << n << " V=" << V << " learner="
                                << learner_name << " (within noise?)\n";
                        }
                    }
                }
            }
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"cost-sensitive classification hardness workbench"};
    app.require_subcommand(1);
    // --h is a margin flag on several subcommands, so help is --help only.
    app.set_help_flag("--help", "print help");

    // divergence
    std::string div_kind, div_p, div_q;
    auto* div_cmd = app.add_subcommand(
        "divergence", "evaluate an f-divergence between two distributions");
    div_cmd->add_option("--kind", div_kind,
                        "kl | tv | chi2 | hellinger2 | primitive:<c>")
        ->required();
    div_cmd->add_option("--p", div_p, "comma-separated probabilities")->required();
    div_cmd->add_option("--q", div_q, "comma-separated probabilities")->required();

    // primitive
    double prim_c = 0.5;
    int prim_form = 2;
    std::string prim_p, prim_q;
    auto* prim_cmd = app.add_subcommand(
        "primitive", "evaluate the c-primitive divergence in one of its forms");
    prim_cmd->add_option("--c", prim_c, "cost parameter in (0,1)")->required();
    prim_cmd->add_option("--p", prim_p, "comma-separated probabilities")->required();
    prim_cmd->add_option("--q", prim_q, "comma-separated probabilities")->required();
    prim_cmd->add_option("--form", prim_form, "equivalent form 1..4 (default 2)");

    // verify-integral
    std::string vi_kind, vi_p, vi_q;
    QuadratureConfig vi_cfg;
    auto* vi_cmd = app.add_subcommand(
        "verify-integral",
        "check the weighted integral representation by quadrature");
    vi_cmd->add_option("--kind", vi_kind, "kl | chi2 | hellinger2")->required();
    vi_cmd->add_option("--p", vi_p, "full-support probabilities")->required();
    vi_cmd->add_option("--q", vi_q, "full-support probabilities")->required();
    vi_cmd->add_option("--rel-tol", vi_cfg.rel_tol, "quadrature relative tolerance");
    vi_cmd->add_option("--abs-tol", vi_cfg.abs_tol, "quadrature absolute tolerance");
    vi_cmd->add_option("--max-subdivisions", vi_cfg.max_subdivisions,
                       "adaptive bisection budget");
    vi_cmd->add_option("--endpoint-margin", vi_cfg.endpoint_margin,
                       "initial split point near the endpoints, in (0,0.5)");

    // joint-range
    double jr_c = 0.7;
    int jr_grid = 201;
    std::string jr_out;
    auto* jr_cmd = app.add_subcommand(
        "joint-range",
        "emit J2 samples, their hull and the parametric boundary as CSV: "
        "j2.csv has columns p,q,x,y; hull.csv and curve.csv have x,y");
    jr_cmd->add_option("--c", jr_c, "cost parameter in (0,1)")->required();
    jr_cmd->add_option("--grid", jr_grid, "grid points per axis")->required();
    jr_cmd->add_option("--out", jr_out, "output directory for the CSV files")
        ->required();

    // certify
    std::string cert_which;
    int cert_grid = 201;
    int cert_trials = 1000;
    std::uint64_t cert_seed = 1;
    double cert_c = 0.7;
    auto* cert_cmd = app.add_subcommand(
        "certify", "grid/randomized certification of an inequality (exit 2 on "
                   "violation above 1e-12)");
    cert_cmd
        ->add_option("--which", cert_which,
                     "primitive-hellinger | tv-hellinger | tv-hellinger-unhalved "
                     "| aux-lemma | subadd")
        ->required();
    cert_cmd->add_option("--grid", cert_grid, "grid points per axis");
    cert_cmd->add_option("--c", cert_c, "cost parameter (primitive-hellinger)");
    cert_cmd->add_option("--trials", cert_trials, "random trials (subadd)");
    cert_cmd->add_option("--seed", cert_seed, "random seed (subadd)");

    // bound
    std::string bound_which, bound_family, bound_rho, bound_coupling;
    std::string bound_mode = "exact";
    double bound_c = 0.5, bound_h = 0.0, bound_alpha = 0.0;
    int bound_v = 2, bound_n = 2, bound_d = 1;
    auto* bound_cmd =
        app.add_subcommand("bound", "evaluate a minimax lower bound");
    bound_cmd
        ->add_option("--which", bound_which,
                     "lecam | assouad | assouad-practical | cost-theorem")
        ->required();
    bound_cmd->add_option("--c", bound_c, "cost parameter in (0,1)");
    bound_cmd->add_option("--h", bound_h, "margin (cost-theorem)");
    bound_cmd->add_option("--V", bound_v, "VC dimension (cost-theorem)");
    bound_cmd->add_option("--n", bound_n, "sample size");
    bound_cmd->add_option("--d", bound_d, "hypercube dimension (assouad-practical)");
    bound_cmd->add_option("--alpha", bound_alpha,
                          "adjacent Hellinger budget (assouad-practical)");
    bound_cmd->add_option("--family", bound_family,
                          "family JSON file (lecam, assouad)");
    bound_cmd->add_option("--rho", bound_rho, "rho table JSON file (lecam)");
    bound_cmd->add_option("--coupling", bound_coupling,
                          "coupling JSON file (lecam, switches to the coupled form)");
    bound_cmd->add_option("--mode", bound_mode, "exact | hellinger");

    // hard-instance
    int hi_v = 2, hi_n = 2;
    double hi_c = 0.5, hi_h = 0.0;
    double hi_p = -1.0;
    auto* hi_cmd = app.add_subcommand(
        "hard-instance", "build the worst-case family and print its parameters");
    hi_cmd->add_option("--V", hi_v, "VC dimension")->required();
    hi_cmd->add_option("--n", hi_n, "sample size")->required();
    hi_cmd->add_option("--c", hi_c, "cost parameter")->required();
    hi_cmd->add_option("--h", hi_h, "margin")->required();
    hi_cmd->add_option("--p", hi_p, "per-point mass override");

    // simulate
    int sim_v = 2, sim_n = 2, sim_trials = 100, sim_threads = 1;
    double sim_c = 0.5, sim_h = 0.0, sim_p = -1.0;
    std::uint64_t sim_seed = 1;
    std::string sim_learner = "plugin", sim_format = "json";
    auto* sim_cmd = app.add_subcommand(
        "simulate",
        "Monte Carlo worst-case regret of a learner vs the theorem bound; "
        "--format csv emits rows b,mean_regret,std_err,trials");
    sim_cmd->add_option("--V", sim_v, "VC dimension")->required();
    sim_cmd->add_option("--n", sim_n, "sample size")->required();
    sim_cmd->add_option("--c", sim_c, "cost parameter")->required();
    sim_cmd->add_option("--h", sim_h, "margin")->required();
    sim_cmd->add_option("--learner", sim_learner, "plugin | erm-exhaustive")
        ->required();
    sim_cmd->add_option("--trials", sim_trials, "Monte Carlo trials per b")
        ->required();
    sim_cmd->add_option("--seed", sim_seed, "master seed")->required();
    sim_cmd->add_option("--p", sim_p, "per-point mass override");
    sim_cmd->add_option("--threads", sim_threads, "worker threads");
    sim_cmd->add_option("--format", sim_format, "json | csv");

    // sweep
    std::string sweep_config, sweep_out;
    auto* sweep_cmd = app.add_subcommand(
        "sweep",
        "run a simulation grid from a JSON manifest, emitting one CSV row "
        "per cell: c,h,n,V,learner,trials,seed,bound,regime,max_mean_regret,"
        "std_err,dominance_margin");
    sweep_cmd->add_option("--config", sweep_config, "sweep manifest JSON file")
        ->required();
    sweep_cmd->add_option("--out", sweep_out, "CSV output file (default stdout)");

    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->set_help_flag("--help", "print help");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (div_cmd->parsed()) {
            const double value =
                divergence(DivergenceKind::parse(div_kind),
                           parse_distribution(div_p), parse_distribution(div_q));
            out << fmt_sig(value, 17) << '\n';
            return kExitOk;
        }
        if (prim_cmd->parsed()) {
            const double value = primitive(prim_c, parse_distribution(prim_p),
                                           parse_distribution(prim_q), prim_form);
            out << fmt_sig(value, 17) << '\n';
            return kExitOk;
        }
        if (vi_cmd->parsed()) {
            const QuadratureResult result = verify_integral_representation(
                DivergenceKind::parse(vi_kind), parse_distribution(vi_p),
                parse_distribution(vi_q), vi_cfg);
            out << result.to_json() << '\n';
            return kExitOk;
        }
        if (jr_cmd->parsed()) {
            return cmd_joint_range(out, jr_c, jr_grid, jr_out);
        }
        if (cert_cmd->parsed()) {
            if (cert_which == "primitive-hellinger") {
                const auto r = certify_primitive_hellinger_bound(cert_c, cert_grid);
                emit_certification(out, cert_which, r.max_violation, r.argmax_p,
                                   r.argmax_q, true);
                return r.passes(kCertTol) ? kExitOk : kExitCertification;
            }
            if (cert_which == "tv-hellinger" ||
                cert_which == "tv-hellinger-unhalved") {
                const auto convention = cert_which == "tv-hellinger"
                                            ? TvConvention::halved
                                            : TvConvention::unhalved;
                const auto r = certify_tv_hellinger_bound(cert_grid, convention);
                emit_certification(out, cert_which, r.max_violation, r.argmax_p,
                                   r.argmax_q, true);
                return r.passes(kCertTol) ? kExitOk : kExitCertification;
            }
            if (cert_which == "aux-lemma") {
                const auto r = certify_aux_lemma(cert_grid);
                emit_certification(out, cert_which, r.max_violation, 0, 0, false);
                return r.max_violation <= kCertTol ? kExitOk : kExitCertification;
            }
            if (cert_which == "subadd") {
                const auto r = certify_subadditivity(cert_trials, cert_seed);
                emit_certification(out, cert_which, r.max_violation, 0, 0, false);
                return r.max_violation <= kCertTol ? kExitOk : kExitCertification;
            }
            throw DomainError("unknown certification target '" + cert_which + "'");
        }
        if (bound_cmd->parsed()) {
            BoundReport report;
            if (bound_which == "cost-theorem") {
                report = cost_theorem_bound(CostSpec(bound_c, bound_h), bound_v,
                                            bound_n);
            } else if (bound_which == "assouad-practical") {
                report = assouad_practical_bound(bound_d, bound_c, bound_alpha,
                                                 bound_n);
            } else if (bound_which == "lecam") {
                if (bound_family.empty()) {
                    throw DomainError("lecam bound needs --family");
                }
                const FiniteFamily fam = load_family(bound_family);
                const RhoTable rho = bound_rho.empty()
                                         ? unit_rho(fam.members.size())
                                         : load_rho(bound_rho);
                const ProductMode mode = parse_mode(bound_mode);
                report = bound_coupling.empty()
                             ? lecam_pair_bound(fam, rho, bound_c, mode)
                             : lecam_coupled_bound(fam, rho,
                                                   load_coupling(bound_coupling),
                                                   bound_c, mode);
            } else if (bound_which == "assouad") {
                if (bound_family.empty()) {
                    throw DomainError("assouad bound needs --family");
                }
                report = assouad_bound(load_family(bound_family), bound_c,
                                       parse_mode(bound_mode));
            } else {
                throw DomainError("unknown bound '" + bound_which + "'");
            }
            out << report.to_json() << '\n';
            return kExitOk;
        }
        if (hi_cmd->parsed()) {
            std::optional<double> p_override;
            if (hi_cmd->count("--p") > 0) p_override = hi_p;
            const HardInstanceFamily fam =
                build_family(hi_v, hi_n, CostSpec(hi_c, hi_h), p_override);
            out << fam.to_json() << '\n';
            return kExitOk;
        }
        if (sim_cmd->parsed()) {
            std::optional<double> p_override;
            if (sim_cmd->count("--p") > 0) p_override = sim_p;
            const HardInstanceFamily fam =
                build_family(sim_v, sim_n, CostSpec(sim_c, sim_h), p_override);
            const SimReport report =
                estimate_minimax_risk(fam, LearnerSpec::parse(sim_learner),
                                      sim_trials, sim_seed, sim_threads);
            if (sim_format == "json") {
                out << report.to_json() << '\n';
            } else if (sim_format == "csv") {
                report.write_csv(out);
            } else {
                throw DomainError("format must be 'json' or 'csv'");
            }
            return kExitOk;
        }
        if (sweep_cmd->parsed()) {
            return cmd_sweep(out, err, load_sweep_config(sweep_config), sweep_out);
        }
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    }
    err << "usage error: no subcommand\n";
    return kExitUsage;
}

}  // namespace costsense
