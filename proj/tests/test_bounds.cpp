#include <doctest.h>

#include <cmath>

#include "costsense/bounds.hpp"
#include "costsense/hard_instance.hpp"
#include "helpers.hpp"

using namespace costsense;

namespace {

DiscreteDistribution binary(double p) {
    return DiscreteDistribution({"a0", "a1"}, {p, 1.0 - p});
}

// rho = 1 off the diagonal.
RhoTable unit_rho(std::size_t m) {
    RhoTable rho(m, std::vector<double>(m, 1.0));
    for (std::size_t i = 0; i < m; ++i) rho[i][i] = 0.0;
    return rho;
}

// Explicit product TV between binary n-fold products, used as an
// independent oracle for the c = 1/2 reduction.
double product_tv(const DiscreteDistribution& p, const DiscreteDistribution& q,
                  int n) {
    const std::size_t k = p.size();
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    double tv = 0.0;
    while (true) {
        double pp = 1.0, qq = 1.0;
        for (int i = 0; i < n; ++i) {
            pp *= p.prob(idx[static_cast<std::size_t>(i)]);
            qq *= q.prob(idx[static_cast<std::size_t>(i)]);
        }
        tv += std::abs(pp - qq);
        int pos = 0;
        while (pos < n && ++idx[static_cast<std::size_t>(pos)] == k) {
            idx[static_cast<std::size_t>(pos)] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    return tv;
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("cost spec validation") {
    CHECK_THROWS_AS(CostSpec(0.0, 0.0), DomainError);
    CHECK_THROWS_AS(CostSpec(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(CostSpec(0.3, 0.31), DomainError);
    CHECK_THROWS_AS(CostSpec(0.3, -0.1), DomainError);
    const CostSpec ok(0.3, 0.3);
    CHECK(ok.c_min() == doctest::Approx(0.3));
    CHECK(ok.c_bar() == doctest::Approx(0.7));
}

TEST_CASE("rho validation") {
    RhoTable asym = {{0.0, 1.0}, {0.5, 0.0}};
    CHECK_THROWS_AS(validate_rho(asym, 2), DomainError);
    RhoTable negative = {{0.0, -1.0}, {-1.0, 0.0}};
    CHECK_THROWS_AS(validate_rho(negative, 2), DomainError);
    // rho(a,c) = 5 > rho(a,b) + rho(b,c) = 2.
    RhoTable triangle = {{0.0, 1.0, 5.0}, {1.0, 0.0, 1.0}, {5.0, 1.0, 0.0}};
    CHECK_THROWS_AS(validate_rho(triangle, 3), DomainError);
    CHECK_THROWS_AS(validate_rho(unit_rho(3), 2), DomainError);
    CHECK_NOTHROW(validate_rho(unit_rho(3), 3));
}

TEST_CASE("le cam pair bound on indistinguishable members") {
    for (double c : {0.3, 0.5, 0.8}) {
        FiniteFamily fam({{"A", binary(0.4)}, {"B", binary(0.4)}}, 3);
        const BoundReport r = lecam_pair_bound(fam, unit_rho(2), c);
        CHECK(r.value == doctest::Approx(std::min(c, 1.0 - c)).epsilon(1e-14));
        CHECK(r.regime == Regime::lecam_pair);
    }
}

TEST_CASE("le cam at c = 1/2 recovers the classical two-point bound") {
    testutil::SplitMix64 gen(31);
    for (int t = 0; t < 20; ++t) {
        const auto P = testutil::random_distribution(gen, 2, false);
        const auto Q = testutil::random_distribution(gen, 2, false);
        const int n = 2;
        FiniteFamily fam({{"A", P}, {"B", Q}}, n);
        const BoundReport r = lecam_pair_bound(fam, unit_rho(2), 0.5);
        const double expected = 0.5 - 0.25 * product_tv(P, Q, n);
        CHECK(r.constants.at("raw") == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("le cam on a disjoint pair is vacuous") {
    FiniteFamily fam({{"A", binary(1.0)}, {"B", binary(0.0)}}, 1);
    const BoundReport r = lecam_pair_bound(fam, unit_rho(2), 0.3);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("hellinger-bounded mode never exceeds exact mode") {
    testutil::SplitMix64 gen(32);
    for (int t = 0; t < 30; ++t) {
        const auto P = testutil::random_distribution(gen, 2);
        const auto Q = testutil::random_distribution(gen, 2);
        const int n = 1 + static_cast<int>(gen.next_below(4));
        const double c = 0.05 + 0.9 * gen.next_double();
        FiniteFamily fam({{"A", P}, {"B", Q}}, n);
        const BoundReport exact = lecam_pair_bound(fam, unit_rho(2), c);
        const BoundReport bounded =
            lecam_pair_bound(fam, unit_rho(2), c, ProductMode::hellinger_bound);
        CHECK(bounded.value <= exact.value + 1e-12);
    }
}

TEST_CASE("exact product capacity is enforced") {
    testutil::SplitMix64 gen(33);
    const auto P = testutil::random_distribution(gen, 10, false);
    const auto Q = testutil::random_distribution(gen, 10, false);
    FiniteFamily fam({{"A", P}, {"B", Q}}, 7);  // 10^7 tuples
    CHECK_THROWS_AS(lecam_pair_bound(fam, unit_rho(2), 0.4), CapacityError);
    CHECK_NOTHROW(
        lecam_pair_bound(fam, unit_rho(2), 0.4, ProductMode::hellinger_bound));
}

TEST_CASE("coupled bound equals the pair bound on a symmetrized two-point coupling") {
    // At c = 1/2 the primitive divergence is order-symmetric, so the
    // two-point coupling {(A,B),(B,A)} reproduces the pair bound exactly.
    testutil::SplitMix64 gen(34);
    const auto P = testutil::random_distribution(gen, 3, false);
    const auto Q = testutil::random_distribution(gen, 3, false);
    FiniteFamily fam({{"A", P}, {"B", Q}}, 2);
    Coupling mu{{{"A", "B", 0.5}, {"B", "A", 0.5}}};
    const BoundReport coupled = lecam_coupled_bound(fam, unit_rho(2), mu, 0.5);
    const BoundReport pair = lecam_pair_bound(fam, unit_rho(2), 0.5);
    CHECK(coupled.constants.at("raw") ==
          doctest::Approx(pair.constants.at("raw")).epsilon(1e-12));
}

TEST_CASE("assouad matches its coupling expectation on the hard family") {
    const HardInstanceFamily hard = build_family(3, 30, CostSpec(0.5, 0.1));
    std::vector<FamilyMember> members;
    std::vector<BitString> params;
    for (int mask = 0; mask < 4; ++mask) {
        std::vector<int> bits = {(mask >> 0) & 1 ? 1 : -1,
                                 (mask >> 1) & 1 ? 1 : -1};
        const BitString b(bits);
        params.push_back(b);
        members.push_back(
            {b.to_string(), flatten(joint_for(hard, b))});
    }
    FiniteFamily fam(std::move(members), 2);

    RhoTable rho(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            rho[i][j] = hamming(params[i], params[j]);
        }
    }
    Coupling mu;
    for (int i = 0; i < 4; ++i) {
        for (std::size_t bit = 0; bit < 2; ++bit) {
            mu.entries.push_back({params[i].to_string(),
                                  params[i].with_flipped(bit).to_string(),
                                  1.0 / 8.0});
        }
    }
    // c = 1/2 makes every ordered adjacent divergence equal, so the
    // coupling expectation is exactly the Assouad bound divided by d.
    const BoundReport coupled = lecam_coupled_bound(fam, rho, mu, 0.5);
    const BoundReport assouad = assouad_bound(fam, 0.5);
    CHECK(assouad.constants.at("raw") ==
          doctest::Approx(2.0 * coupled.constants.at("raw")).epsilon(1e-12));
    // For asymmetric costs the max inside Assouad can only lose to the
    // coupling average.
    const BoundReport coupled3 = lecam_coupled_bound(fam, rho, mu, 0.3);
    const BoundReport assouad3 = assouad_bound(fam, 0.3);
    CHECK(assouad3.constants.at("raw") <=
          2.0 * coupled3.constants.at("raw") + 1e-12);
}

TEST_CASE("coupled bound validates marginals and weights") {
    FiniteFamily fam({{"A", binary(0.4)}, {"B", binary(0.6)}}, 1);
    Coupling lopsided{{{"A", "B", 1.0}}};
    CHECK_THROWS_AS(lecam_coupled_bound(fam, unit_rho(2), lopsided, 0.3),
                    DomainError);
    Coupling short_weight{{{"A", "B", 0.25}, {"B", "A", 0.25}}};
    CHECK_THROWS_AS(lecam_coupled_bound(fam, unit_rho(2), short_weight, 0.3),
                    DomainError);
    Coupling unknown{{{"A", "C", 1.0}}};
    CHECK_THROWS_AS(lecam_coupled_bound(fam, unit_rho(2), unknown, 0.3),
                    DomainError);
}

TEST_CASE("uniform coupling over identical members") {
    const double c = 0.3;
    std::vector<FamilyMember> members;
    for (const char* id : {"A", "B", "C"}) {
        members.push_back({id, binary(0.5)});
    }
    FiniteFamily fam(std::move(members), 2);
    Coupling mu;
    for (const char* a : {"A", "B", "C"}) {
        for (const char* b : {"A", "B", "C"}) {
            mu.entries.push_back({a, b, 1.0 / 9.0});
        }
    }
    const BoundReport r = lecam_coupled_bound(fam, unit_rho(3), mu, c);
    // E[rho] = 6/9 over the uniform coupling, zero divergence everywhere.
    CHECK(r.value == doctest::Approx(std::min(c, 1.0 - c) * 6.0 / 9.0)
                          .epsilon(1e-12));
}

TEST_CASE("assouad bound on identical members") {
    std::vector<FamilyMember> members;
    for (int mask = 0; mask < 32; ++mask) {
        std::string param;
        for (int i = 0; i < 5; ++i) param += (mask >> i) & 1 ? '+' : '-';
        members.push_back({param, binary(0.5)});
    }
    FiniteFamily fam(std::move(members), 1);
    const BoundReport r = assouad_bound(fam, 0.5);
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("assouad at c = 1/2 recovers the standard lemma") {
    testutil::SplitMix64 gen(35);
    const auto P = testutil::random_distribution(gen, 2, false);
    const auto Q = testutil::random_distribution(gen, 2, false);
    FiniteFamily fam({{"-", P}, {"+", Q}}, 1);
    const BoundReport r = assouad_bound(fam, 0.5);
    const double tv = divergence(DivergenceKind::tv(), P, Q);
    CHECK(r.constants.at("raw") ==
          doctest::Approx(0.5 * (1.0 - 0.5 * tv)).epsilon(1e-12));
}

TEST_CASE("assouad on a disjoint one-bit family is vacuous") {
    FiniteFamily fam({{"-", binary(1.0)}, {"+", binary(0.0)}}, 1);
    const BoundReport r = assouad_bound(fam, 0.3);
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("assouad validates the hypercube") {
    FiniteFamily incomplete(
        {{"--", binary(0.4)}, {"++", binary(0.5)}, {"+-", binary(0.6)}}, 1);
    CHECK_THROWS_AS(assouad_bound(incomplete, 0.5), DomainError);
    FiniteFamily not_bits({{"A", binary(0.4)}, {"B", binary(0.5)}}, 1);
    CHECK_THROWS_AS(assouad_bound(not_bits, 0.5), DomainError);
}

TEST_CASE("practical assouad examples") {
    CHECK(assouad_practical_bound(4, 0.4, 0.0, 10).value ==
          doctest::Approx(4 * 0.4).epsilon(1e-14));
    CHECK(assouad_practical_bound(3, 0.3, 0.01, 9).value ==
          doctest::Approx(0.63).epsilon(1e-12));
    const BoundReport floored = assouad_practical_bound(3, 0.3, 0.5, 4);
    CHECK(floored.value == 0.0);
    CHECK(floored.constants.at("floored") == 1.0);
    CHECK(floored.constants.at("raw") < 0.0);
}

TEST_CASE("cost theorem branch values") {
    const BoundReport large = cost_theorem_bound(CostSpec(0.5, 0.1), 2, 100);
    CHECK(large.regime == Regime::cost_theorem_large_margin);
    CHECK(large.value == doctest::Approx(0.25 / 540.0).epsilon(1e-14));
    CHECK(std::abs(large.value - 4.62963e-4) <= 1e-9);

    const BoundReport small = cost_theorem_bound(CostSpec(0.5, 0.0), 2, 100);
    CHECK(small.regime == Regime::cost_theorem_small_margin);
    CHECK(small.value ==
          doctest::Approx(std::pow(0.5, 1.5) / 18.0 * 0.1).epsilon(1e-12));
    CHECK(std::abs(small.value - 1.96419e-3) <= 1e-8);

    // Bounds vanish as c -> 0.
    CHECK(cost_theorem_bound(CostSpec(1e-9, 0.0), 2, 100).value < 1e-12);

    CHECK_THROWS_AS(cost_theorem_bound(CostSpec(0.5, 0.0), 1, 100), DomainError);
    CHECK_THROWS_AS(cost_theorem_bound(CostSpec(0.5, 0.0), 5, 4), DomainError);
}

TEST_CASE("cost theorem branches meet at the threshold") {
    testutil::SplitMix64 gen(36);
    for (int t = 0; t < 20; ++t) {
        const double c = 0.05 + 0.9 * gen.next_double();
        const int V = 2 + static_cast<int>(gen.next_below(5));
        const int n = V + static_cast<int>(gen.next_below(400));
        const double cmin = std::min(c, 1.0 - c);
        const double h_star = std::sqrt(cmin * (V - 1) / (9.0 * n));
        if (h_star > cmin) continue;
        const double at_star = cost_theorem_bound(CostSpec(c, h_star), V, n).value;
        const double small_branch = cost_theorem_bound(CostSpec(c, 0.0), V, n).value;
        CHECK(std::abs(at_star - small_branch) <= 1e-12 * small_branch);
    }
}

TEST_CASE("cost theorem is monotone in n and h on a 20x20 grid") {
    const double c = 0.35;
    const int V = 3;
    double values[20][20];
    for (int i = 0; i < 20; ++i) {
        const int n = 10 + 25 * i;
        for (int j = 0; j < 20; ++j) {
            const double h = 0.35 * (static_cast<double>(j) / 19.0);
            values[i][j] = cost_theorem_bound(CostSpec(c, h), V, n).value;
        }
    }
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            if (i > 0) CHECK(values[i][j] <= values[i - 1][j] + 1e-15);
            if (j > 0) CHECK(values[i][j] <= values[i][j - 1] + 1e-15);
        }
    }
}

TEST_CASE("formula bounds are symmetric under c -> 1-c") {
    for (double c : {0.1, 0.25, 0.4}) {
        CHECK(cost_theorem_bound(CostSpec(c, 0.05), 3, 50).value ==
              doctest::Approx(cost_theorem_bound(CostSpec(1.0 - c, 0.05), 3, 50)
                                  .value));
        CHECK(assouad_practical_bound(3, c, 0.01, 9).value ==
              doctest::Approx(assouad_practical_bound(3, 1.0 - c, 0.01, 9).value));
    }
}

TEST_CASE("family bounds are invariant under c -> 1-c") {
    // I_{f_{1-c}}(P,Q) = I_{f_c}(Q,P), and the ordered-pair scans cover both
    // directions, so the values coincide exactly.
    testutil::SplitMix64 gen(37);
    for (int t = 0; t < 10; ++t) {
        const auto P = testutil::random_distribution(gen, 3);
        const auto Q = testutil::random_distribution(gen, 3);
        const double c = 0.05 + 0.9 * gen.next_double();
        FiniteFamily fam({{"-", P}, {"+", Q}}, 2);
        CHECK(lecam_pair_bound(fam, unit_rho(2), c).value ==
              doctest::Approx(lecam_pair_bound(fam, unit_rho(2), 1.0 - c).value)
                  .epsilon(1e-12));
        CHECK(assouad_bound(fam, c).value ==
              doctest::Approx(assouad_bound(fam, 1.0 - c).value).epsilon(1e-12));
    }
}

TEST_CASE("aux lemma gap") {
    CHECK(aux_lemma_gap(0.3, 0.0) == doctest::Approx(0.0));
    CHECK(aux_lemma_gap(0.5, 0.5) == doctest::Approx(0.0));
    CHECK(aux_lemma_gap(0.3, 0.1) > 0.0);
    CHECK_THROWS_AS(aux_lemma_gap(0.3, 0.4), DomainError);
    CHECK_THROWS_AS(aux_lemma_gap(1.2, 0.1), DomainError);
}

TEST_CASE("hellinger alpha dominates the exact adjacent value") {
    CHECK(hellinger_alpha(CostSpec(0.4, 0.0), 0.3) == doctest::Approx(0.0));
    CHECK(hellinger_alpha(CostSpec(0.5, 0.1), 0.3) ==
          doctest::Approx(0.024).epsilon(1e-14));
    CHECK_THROWS_AS(hellinger_alpha(CostSpec(0.5, 0.1), 1.5), DomainError);

    for (double c : {0.2, 0.5, 0.7}) {
        const double cmin = std::min(c, 1.0 - c);
        for (int hi = 0; hi <= 10; ++hi) {
            const double h = cmin * hi / 10.0;
            for (double p : {0.1, 0.5, 1.0}) {
                const double exact =
                    2.0 * p *
                    (1.0 - std::sqrt(c * c - h * h) -
                     std::sqrt((1.0 - c) * (1.0 - c) - h * h));
                CHECK(exact <= hellinger_alpha(CostSpec(c, h), p) + 1e-12);
            }
        }
    }
}

TEST_CASE("bound report serializes with fixed key order") {
    const BoundReport r = assouad_practical_bound(3, 0.3, 0.0, 9);
    const std::string json = r.to_json();
    CHECK(json.rfind("{\"value\":", 0) == 0);
    CHECK(json.find("\"regime\":\"AssouadPractical\"") != std::string::npos);
    CHECK(json.find("\"constants\":{") != std::string::npos);
    CHECK(json.find("\"inputs\":{\"d\":3,") != std::string::npos);
}

}  // TEST_SUITE
