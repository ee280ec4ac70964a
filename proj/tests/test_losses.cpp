#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "arcrank/losses.hpp"
#include "arcrank/random_graphs.hpp"
#include "support/dense_losses.hpp"

using namespace arcrank;
using namespace arcrank::testsupport;

namespace {

WeightedDigraph parse(const std::string& text) {
    std::istringstream in(text);
    return parse_edge_list(in);
}

Ranking ranking_from_order(const std::vector<VertexId>& order) {
    Ranking r;
    r.order = order;
    r.rank.assign(order.size(), 0);
    r.scores.assign(order.size(), 0.0);
    for (std::size_t k = 0; k < order.size(); ++k) {
        r.rank[order[k]] = static_cast<int>(k) + 1;
        r.scores[order[k]] = static_cast<double>(order.size() - k);
    }
    return r;
}

bool close_rel(double a, double b, double tol = 1e-12) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("comparison matrix: entries, support and t") {
    const WeightedDigraph g = parse("a b 3\nb a 1\nb c 2\nc d 2\nd c 2");
    const ComparisonMatrix m(g);
    CHECK(m.size() == 4);
    CHECK(m.at(0, 1) == 3.0);
    CHECK(m.at(1, 0) == 1.0);
    CHECK(m.at(0, 2) == 0.0);
    CHECK(m.at(0, 0) == 0.0);

    // (a,b) differs, (b,c) one-sided, (c,d) balanced anti-parallel drops out
    CHECK(m.comparison_count() == 4);
    CHECK(m.comparison_count() % 2 == 0);
    const auto& support = m.skew_support();
    for (std::size_t k = 0; k + 1 < support.size(); ++k) {
        const bool ordered = support[k].row < support[k + 1].row ||
                             (support[k].row == support[k + 1].row &&
                              support[k].col < support[k + 1].col);
        CHECK(ordered);
    }
}

TEST_CASE("naive loss: perfect agreement and full reversal") {
    const WeightedDigraph g = parse("a b 1");
    const ComparisonMatrix m(g);
    CHECK(loss_naive(m, std::vector<double>{2.0, 1.0}) == 0.0);
    CHECK(loss_naive(m, std::vector<double>{1.0, 2.0}) == 1.0);
}

TEST_CASE("simple loss: agreement and reversal on a single edge") {
    const WeightedDigraph g = parse("a b 1");
    const ComparisonMatrix m(g);
    CHECK(loss_simple(m, std::vector<double>{2.0, 1.0}) == 0.0);
    // both ordered entries differ by 2, squared 4 each, t = 2
    CHECK(loss_simple(m, std::vector<double>{1.0, 2.0}) == 4.0);
}

TEST_CASE("simple loss: only compared pairs contribute, ties cost 1") {
    // c is isolated, so (a,c), (c,a), (b,c), (c,b) lie outside the support
    // and are never penalized, whatever their score gap
    WeightedDigraph g(3);
    g.add_edge(0, 1, 1.0);
    const ComparisonMatrix m(g);
    CHECK(loss_simple(m, std::vector<double>{3.0, 2.0, 1.0}) == 0.0);
    CHECK(loss_naive(m, std::vector<double>{3.0, 2.0, 1.0}) == 0.0);
    // equal scores: the two support entries each give (0 - (+-1))^2 = 1
    CHECK(loss_simple(m, std::vector<double>{1.0, 1.0, 1.0}) == 1.0);
}

TEST_CASE("ratio loss: tied scores on a single comparison") {
    const double eps = 1e-6;
    const WeightedDigraph g = parse("a b 1");
    const ComparisonMatrix m(g);
    const double expected = std::pow(1.0 / (1.0 + eps), 2);
    CHECK(loss_ratio(m, std::vector<double>{1.0, 1.0}, eps) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("ratio loss: score ratios matching weight ratios drive the loss down") {
    const double eps = 1e-6;
    const WeightedDigraph g = parse("a b 3\nb a 1");
    const ComparisonMatrix m(g);
    // (r_a - r_b)/(r_a + r_b + eps) == (3 - 1)/(3 + 1 + eps) at r = (3, 1), up to eps
    const double near_optimal = loss_ratio(m, std::vector<double>{3.0, 1.0}, eps);
    CHECK(near_optimal < 1e-8);
    const double reversed = loss_ratio(m, std::vector<double>{1.0, 3.0}, eps);
    CHECK(reversed > near_optimal);
    CHECK(close_rel(near_optimal,
                    dense_loss_ratio(dense_comparison_matrix(g), {3.0, 1.0}, eps)));
}

TEST_CASE("ratio loss validates epsilon") {
    const WeightedDigraph g = parse("a b 1");
    const ComparisonMatrix m(g);
    CHECK_THROWS_AS(loss_ratio(m, std::vector<double>{1.0, 2.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(loss_ratio(m, std::vector<double>{1.0, 2.0}, -1.0), std::invalid_argument);
}

TEST_CASE("losses are undefined without comparisons (t = 0)") {
    SUBCASE("no edges") {
        const ComparisonMatrix m(WeightedDigraph(3));
        CHECK_THROWS_AS(loss_naive(m, std::vector<double>{3.0, 2.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(loss_simple(m, std::vector<double>{3.0, 2.0, 1.0}), std::domain_error);
        CHECK_THROWS_AS(loss_ratio(m, std::vector<double>{3.0, 2.0, 1.0}, 1e-6),
                        std::domain_error);
    }
    SUBCASE("balanced anti-parallel pair") {
        const WeightedDigraph g = parse("a b 2\nb a 2");
        const ComparisonMatrix m(g);
        CHECK(m.comparison_count() == 0);
        CHECK_THROWS_AS(loss_naive(m, std::vector<double>{2.0, 1.0}), std::domain_error);
    }
}

TEST_CASE("weighted loss: basic cases") {
    SUBCASE("chain respected") {
        const WeightedDigraph g = parse("a b 1\nb c 1");
        CHECK(loss_weighted(g, ranking_from_order({0, 1, 2})) == 0.0);
    }
    SUBCASE("single edge fully reversed") {
        const WeightedDigraph g = parse("a b 1");
        CHECK(loss_weighted(g, ranking_from_order({1, 0})) == 1.0);
    }
    SUBCASE("three-to-one split") {
        const WeightedDigraph g = parse("a b 3\nb a 1");
        CHECK(loss_weighted(g, ranking_from_order({0, 1})) == 0.25);
    }
    SUBCASE("empty graph is undefined") {
        CHECK_THROWS_AS(loss_weighted(WeightedDigraph(2), ranking_from_order({0, 1})),
                        std::domain_error);
    }
}

TEST_CASE("margin loss: basic cases") {
    SUBCASE("consistent ranking") {
        const WeightedDigraph g = parse("a b 1\nb c 1");
        CHECK(loss_margin(g, ranking_from_order({0, 1, 2})) == 0.0);
    }
    SUBCASE("single edge fully reversed") {
        const WeightedDigraph g = parse("a b 1");
        CHECK(loss_margin(g, ranking_from_order({1, 0})) == 1.0);
    }
    SUBCASE("distance-weighted mix") {
        // order c,a,b: a->b respected at gap 1 weight 2; b->c violated at gap 2 weight 1
        const WeightedDigraph g = parse("a b 2\nb c 1");
        CHECK(loss_margin(g, ranking_from_order({2, 0, 1})) == 0.5);
    }
}

TEST_CASE("naive loss is invariant under strictly increasing score transforms") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 40; ++trial) {
        RandomGraphOptions opt;
        opt.n = 2 + rng_util::below(rng, 12);
        opt.edge_prob = 0.4;
        const WeightedDigraph g = random_digraph(opt, rng);
        const ComparisonMatrix m(g);
        if (m.comparison_count() == 0) continue;
        std::vector<double> scores(opt.n);
        for (auto& s : scores) s = rng_util::unit(rng) * 10.0;
        std::vector<double> transformed(scores);
        for (auto& s : transformed) s = std::exp(s) + 3.0;  // strictly increasing
        CHECK(loss_naive(m, scores) == loss_naive(m, transformed));
    }
}

TEST_CASE("naive loss: mirror entries agree, so unordered pairs doubled gives the same value") {
    std::mt19937_64 rng(654);
    for (int trial = 0; trial < 30; ++trial) {
        RandomGraphOptions opt;
        opt.n = 2 + rng_util::below(rng, 15);
        opt.edge_prob = 0.45;
        const WeightedDigraph g = random_digraph(opt, rng);
        const ComparisonMatrix m(g);
        if (m.comparison_count() == 0) continue;
        std::vector<double> scores(opt.n);
        for (auto& s : scores) s = rng_util::unit(rng) * 5.0;

        std::size_t upsets_upper = 0;  // row < col half of the support only
        for (const auto& e : m.skew_support()) {
            if (e.row > e.col) continue;
            const int s1 = (scores[e.row] > scores[e.col]) - (scores[e.row] < scores[e.col]);
            const int s2 = (e.forward > e.backward) - (e.forward < e.backward);
            if (s1 != s2) ++upsets_upper;
        }
        const double doubled = 2.0 * static_cast<double>(upsets_upper) /
                               static_cast<double>(m.comparison_count());
        CHECK(loss_naive(m, scores) == doubled);
    }
}

TEST_CASE("simple loss is zero iff the sign patterns match on the support") {
    const WeightedDigraph g = parse("a b 2\nb c 1");
    const ComparisonMatrix m(g);
    CHECK(loss_simple(m, std::vector<double>{3.0, 2.0, 1.0}) == 0.0);
    // a score tie on the support breaks exact sign agreement
    CHECK(loss_simple(m, std::vector<double>{3.0, 2.0, 2.0}) > 0.0);
    // a reversal does too, at the maximal per-pair cost
    CHECK(loss_simple(m, std::vector<double>{1.0, 2.0, 3.0}) == 4.0);
}

TEST_CASE("simple loss equals four times naive loss for tie-free scores") {
    std::mt19937_64 rng(9090);
    int tested = 0;
    while (tested < 30) {
        RandomGraphOptions opt;
        opt.n = 2 + rng_util::below(rng, 25);
        opt.edge_prob = 0.1 + 0.7 * rng_util::unit(rng);
        const WeightedDigraph g = random_digraph(opt, rng);
        const ComparisonMatrix m(g);
        if (m.comparison_count() == 0) continue;
        ++tested;
        std::vector<double> scores(opt.n);
        for (std::size_t k = 0; k < opt.n; ++k) {
            scores[k] = static_cast<double>(k) + rng_util::unit(rng) * 0.5;  // tie-free
        }
        CHECK(loss_simple(m, scores) == 4.0 * loss_naive(m, scores));
    }
}

TEST_CASE("weighted equals naive for uniform weights without anti-parallel pairs") {
    std::mt19937_64 rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng_util::below(rng, 10);
        WeightedDigraph g(n);
        for (VertexId u = 0; u < n; ++u) {
            for (VertexId v = u + 1; v < n; ++v) {
                const auto coin = rng_util::below(rng, 3);
                if (coin == 0) g.add_edge(u, v, 2.0);
                else if (coin == 1) g.add_edge(v, u, 2.0);
            }
        }
        if (g.edge_count() == 0) continue;
        std::vector<VertexId> order(n);
        for (std::size_t k = 0; k < n; ++k) order[k] = static_cast<VertexId>(k);
        for (std::size_t k = n; k > 1; --k) {
            std::swap(order[k - 1], order[rng_util::below(rng, k)]);
        }
        const Ranking r = ranking_from_order(order);
        const ComparisonMatrix m(g);
        CHECK(loss_weighted(g, r) == doctest::Approx(loss_naive(m, r.scores)).epsilon(1e-12));
    }
}

TEST_CASE("sparse losses match the dense reference on random instances") {
    std::mt19937_64 rng(20240215);
    int tested = 0;
    while (tested < 60) {
        RandomGraphOptions opt;
        opt.n = 2 + rng_util::below(rng, 29);
        opt.edge_prob = 0.05 + 0.8 * rng_util::unit(rng);
        opt.integer_weights = (tested % 2 == 0);
        if (!opt.integer_weights) {
            opt.weight_low = 0.0;
            opt.weight_high = 1.0;
        }
        const WeightedDigraph g = random_digraph(opt, rng);
        const ComparisonMatrix m(g);
        if (m.comparison_count() == 0 || g.edge_count() == 0) continue;
        ++tested;

        std::vector<double> scores(opt.n);
        for (auto& s : scores) {
            // small integer scores every third instance to exercise ties
            s = (tested % 3 == 0) ? static_cast<double>(rng_util::below(rng, 4))
                                  : rng_util::unit(rng) * 20.0;
        }
        std::vector<VertexId> order(opt.n);
        for (std::size_t k = 0; k < opt.n; ++k) order[k] = static_cast<VertexId>(k);
        for (std::size_t k = opt.n; k > 1; --k) {
            std::swap(order[k - 1], order[rng_util::below(rng, k)]);
        }
        const Ranking ranking = ranking_from_order(order);

        const auto A = dense_comparison_matrix(g);
        CHECK(m.comparison_count() == dense_t(A));
        CHECK(close_rel(loss_naive(m, scores), dense_loss_naive(A, scores)));
        CHECK(close_rel(loss_simple(m, scores), dense_loss_simple(A, scores)));
        CHECK(close_rel(loss_ratio(m, scores, 1e-6), dense_loss_ratio(A, scores, 1e-6)));
        CHECK(close_rel(loss_weighted(g, ranking), dense_loss_weighted(A, ranking.rank)));
        CHECK(close_rel(loss_margin(g, ranking), dense_loss_margin(A, ranking.rank)));
    }
}

TEST_CASE("compute_losses assembles the full report") {
    const WeightedDigraph g = parse("a b 3\nb c 2\nc a 1");
    const ComparisonMatrix m(g);
    Ranking r = ranking_from_order({0, 1, 2});
    const LossReport report = compute_losses(g, m, r, 1e-6);
    CHECK(report.t == 6);
    CHECK(report.t % 2 == 0);
    CHECK(report.epsilon == 1e-6);
    CHECK(report.naive == loss_naive(m, r.scores));
    CHECK(report.weighted == loss_weighted(g, r));
    CHECK(report.naive >= 0.0);
    CHECK(report.naive <= 1.0);
    CHECK(report.weighted >= 0.0);
    CHECK(report.weighted <= 1.0);
    CHECK(report.margin >= 0.0);
    CHECK(report.margin <= 1.0);
}
