#include <catch2/catch_amalgamated.hpp>

#include "cscs/orders.hpp"

#include <random>
using namespace cscs;

namespace {
Point fin(long long n) { return n + 1; }  // omega_times_plus_one coding
}

TEST_CASE("one-point order topology is the indiscrete one-point space") {
    auto X = order_topology(finite_order(1));
    REQUIRE(*X->size == 1);
    REQUIRE(X->basis_member(0, interval_index(neg_inf(), pos_inf())));
    Report r = verify(*X, 4);
    REQUIRE(r.all_pass());
}

TEST_CASE("omega order topology is discrete") {
    auto X = order_topology(omega());
    // 0 isolated by ]-inf,1[, n+1 by ]n,n+2[
    REQUIRE(X->basis_member(0, interval_index(neg_inf(), at(1))));
    for (Point n = 0; n < 20; ++n) {
        REQUIRE(X->w.isolated(n).is_true());
        Index i = *certificate_index(X->w.isolated(n).certificate);
        REQUIRE(X->basis_member(n, i));
        for (Point m = 0; m < 30; ++m)
            if (m != n) REQUIRE(!X->basis_member(m, i));
    }
}

TEST_CASE("omega+1 top point is non-isolated at every depth up to 50") {
    auto X = order_topology(omega_plus_one());
    Point top = 0;
    REQUIRE(X->w.isolated(top).is_false());
    // oracle check: no interval with index below 50 isolates the top among
    // the first 50 points
    auto pts = X->front(50);
    for (Index i = 0; i < 50; ++i) {
        if (!X->basis_member(top, i)) continue;
        long long others = 0;
        for (Point p : pts)
            if (p != top && X->basis_member(p, i)) ++others;
        REQUIRE(others > 0);
    }
}

TEST_CASE("upper limit topology on omega is discrete") {
    auto X = upper_limit_topology(omega());
    for (Point n = 0; n < 15; ++n) REQUIRE(X->w.isolated(n).is_true());
    Report r = verify(*X, 15);
    INFO(r.to_string());
    REQUIRE(r.all_pass());
}

TEST_CASE("upper limit topology on omega+1: G gives clopen neighborhoods of the top") {
    auto X = upper_limit_topology(omega_plus_one());
    Report r = verify(*X, 30);
    INFO(r.to_string());
    REQUIRE(r.all_pass());
    Point top = 0;
    REQUIRE(X->w.isolated(top).is_false());
    // ]a, top] never isolates the top
    for (long long a = 0; a < 20; ++a) {
        Index i = interval_index(at(fin(a)), at(top));
        REQUIRE(X->basis_member(top, i));
        REQUIRE(X->basis_member(fin(a + 1), i));
    }
}

TEST_CASE("wozd zero-dimensionality witness sides") {
    auto L = omega_plus_one();
    auto X = upper_limit_topology(L);
    // z <= x: G returns the ]-inf,x] index
    Index i = interval_index(at(fin(4)), at(fin(9)));  // ]4,9]
    Index g = X->w.zero_dim->g(fin(2), i);
    REQUIRE(g == interval_index(neg_inf(), at(fin(4))));
    // z > y: the ]y,z] side
    Index g2 = X->w.zero_dim->g(fin(12), i);
    REQUIRE(g2 == interval_index(at(fin(9)), at(fin(12))));
}

TEST_CASE("sum order omega+omega keeps copies ordered") {
    auto S = sum_orders({omega(), omega()});
    REQUIRE(S->cmp(pair_code(0, 100), pair_code(1, 0)) == Cmp::LT);
    REQUIRE(S->cmp(pair_code(1, 3), pair_code(1, 4)) == Cmp::LT);
    // successor exists within summands, absent across the limit boundary
    REQUIRE(*S->successor(pair_code(0, 5)) == pair_code(0, 6));
    REQUIRE(!S->predecessor(pair_code(1, 0)).has_value());
}

TEST_CASE("dual is an involution pointwise") {
    auto L = sum_orders({finite_order(3), omega()});
    auto D = dual(dual(L));
    auto pts = L->front(20);
    for (Point a : pts)
        for (Point b : pts) REQUIRE(L->cmp(a, b) == D->cmp(a, b));
}

TEST_CASE("sum of five finite orders of sizes 1..5 is a 15-element chain") {
    std::vector<OrderPtr> parts;
    for (long long n = 1; n <= 5; ++n) parts.push_back(finite_order(n));
    auto S = sum_orders(parts);
    REQUIRE(*S->size == 15);
    auto pts = S->front(15);
    REQUIRE(pts.size() == 15);
    // brute force: the chain is total and has a successor structure of length 15
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [&](Point a, Point b) { return S->cmp(a, b) == Cmp::LT; });
    for (size_t i = 0; i + 1 < sorted.size(); ++i) {
        REQUIRE(S->cmp(sorted[i], sorted[i + 1]) == Cmp::LT);
        REQUIRE(*S->successor(sorted[i]) == sorted[i + 1]);
    }
}

TEST_CASE("covering_check spec examples") {
    auto L = omega_plus_one();
    // {]-inf,5[, ]3,+inf[} covers omega+1
    Verdict v1 = covering_check(*L, {Interval{neg_inf(), at(fin(5)), false}, Interval{at(fin(3)), pos_inf(), false}});
    REQUIRE(v1.is_true());
    // {]-inf,5[, ]5,+inf[} misses 5
    Verdict v2 = covering_check(*L, {Interval{neg_inf(), at(fin(5)), false}, Interval{at(fin(5)), pos_inf(), false}});
    REQUIRE(v2.is_false());
    REQUIRE(v2.certificate.find(std::to_string(fin(5))) != std::string::npos);
    // rationals: {]-inf,0[, ]0,+inf[} misses 0
    auto Q = rationals();
    Point zero = rational_code(Rat(0));
    Verdict v3 = covering_check(*Q, {Interval{neg_inf(), at(zero), false}, Interval{at(zero), pos_inf(), false}});
    REQUIRE(v3.is_false());
    REQUIRE(v3.certificate.find(std::to_string(zero)) != std::string::npos);
}

TEST_CASE("covering_check agrees with brute-force coverage on random families") {
    std::mt19937_64 rng(7);
    auto check_one = [&](OrderPtr L, long long pts_to_check) {
        auto pts = L->front(pts_to_check);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<Interval> ivs;
            int k = 1 + static_cast<int>(rng() % 4);
            for (int t = 0; t < k; ++t) {
                Bound lo = neg_inf(), hi = pos_inf();
                if (rng() % 3) lo = at(pts[rng() % pts.size()]);
                if (rng() % 3) hi = at(pts[rng() % pts.size()]);
                ivs.push_back(Interval{lo, hi, false});
            }
            Verdict v = covering_check(*L, ivs);
            // brute force over the enumerated prefix
            std::optional<Point> uncovered;
            for (Point p : pts) {
                bool in = false;
                for (auto& iv : ivs)
                    if (interval_contains(*L, iv, p)) { in = true; break; }
                if (!in) { uncovered = p; break; }
            }
            if (v.is_true()) {
                INFO("claimed cover but " << (uncovered ? std::to_string(*uncovered) : "-") << " uncovered");
                REQUIRE(!uncovered.has_value());
            }
            if (uncovered) REQUIRE(v.is_false());
        }
    };
    check_one(omega_plus_one(), 200);
    check_one(sum_orders({omega(), omega(), finite_order(1)}), 200);
    check_one(rationals(), 100);
}

TEST_CASE("successor extracted from the canonical eT2 witness on omega") {
    auto L = omega();
    auto X = order_topology(L);
    auto s = successor_from_et2(*L, *X->w.et2, 3);
    REQUIRE(s.has_value());
    REQUIRE(*s == 4);
}

TEST_CASE("ordinal_exp comparison follows the Cantor-normal-form rule") {
    auto NL = ordinal_exp(omega(), finite_order(2));
    auto elem = [](std::vector<std::pair<Point, Point>> ts) {
        OrdExpElem e;
        e.terms = std::move(ts);
        return ordexp_code(e);
    };
    // ((1,1)) > ((2,0)): higher exponent dominates
    REQUIRE(NL->cmp(elem({{1, 1}}), elem({{2, 0}})) == Cmp::GT);
    // proper extension is larger
    REQUIRE(NL->cmp(elem({{1, 1}}), elem({{1, 1}, {1, 0}})) == Cmp::LT);
    // empty sequence is minimum
    REQUIRE(NL->cmp(0, elem({{1, 0}})) == Cmp::LT);
    REQUIRE(NL->member(elem({{2, 1}, {3, 0}})));
    REQUIRE(!NL->member(elem({{2, 0}, {3, 1}})));  // exponents must strictly decrease
    REQUIRE(!NL->member(elem({{0, 1}})));          // coefficient away from min W
}

TEST_CASE("ordinal_exp successor and predecessor per the isolated-point analysis") {
    auto NL = ordinal_exp(omega(), finite_order(2));
    auto elem = [](std::vector<std::pair<Point, Point>> ts) {
        OrdExpElem e;
        e.terms = std::move(ts);
        return ordexp_code(e);
    };
    // successor of ((a0,b0),...,(an,0)) bumps the last coefficient
    REQUIRE(*NL->successor(elem({{2, 1}, {3, 0}})) == elem({{2, 1}, {4, 0}}));
    // successor of a limit element appends (1, 0)
    REQUIRE(*NL->successor(elem({{2, 1}})) == elem({{2, 1}, {1, 0}}));
    // predecessor of ((2,1)) is undefined: it is a limit
    REQUIRE(!NL->predecessor(elem({{2, 1}})).has_value());
    REQUIRE(*NL->predecessor(elem({{2, 1}, {1, 0}})) == elem({{2, 1}}));
    REQUIRE(*NL->predecessor(elem({{3, 0}})) == elem({{2, 0}}));
    REQUIRE(!NL->predecessor(0).has_value());
}

TEST_CASE("ordinal_exp cmp totally orders 10^4 elements of N^3") {
    auto N3 = ordinal_exp(omega(), finite_order(3));
    std::vector<Point> pts = N3->front(10000);
    REQUIRE(pts.size() == 10000);
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [&](Point a, Point b) { return N3->cmp(a, b) == Cmp::LT; });
    for (size_t i = 0; i + 1 < sorted.size(); ++i)
        REQUIRE(N3->cmp(sorted[i], sorted[i + 1]) == Cmp::LT);
    // antisymmetry and transitivity on sampled triples
    std::mt19937_64 rng(11);
    for (int t = 0; t < 4000; ++t) {
        Point a = pts[rng() % pts.size()], b = pts[rng() % pts.size()], c = pts[rng() % pts.size()];
        Cmp ab = N3->cmp(a, b), ba = N3->cmp(b, a);
        REQUIRE(((ab == Cmp::LT && ba == Cmp::GT) || (ab == Cmp::GT && ba == Cmp::LT) ||
                 (ab == Cmp::EQ && ba == Cmp::EQ)));
        if (N3->cmp(a, b) == Cmp::LT && N3->cmp(b, c) == Cmp::LT) REQUIRE(N3->cmp(a, c) == Cmp::LT);
    }
    // successor and predecessor are mutually inverse where both defined
    for (int t = 0; t < 500; ++t) {
        Point a = pts[rng() % pts.size()];
        if (auto s = N3->successor(a)) {
            auto p = N3->predecessor(*s);
            REQUIRE(p.has_value());
            REQUIRE(*p == a);
        }
        if (auto p = N3->predecessor(a)) {
            auto s = N3->successor(*p);
            REQUIRE(s.has_value());
            REQUIRE(*s == a);
        }
    }
}

TEST_CASE("half-open ]a,b] equals ]a,b+1[ on well orders with successors") {
    for (auto L : {omega(), sum_orders({omega(), omega()})}) {
        auto UL = upper_limit_topology(L);
        auto OT = order_topology(L);
        auto pts = L->front(40);
        for (int ai = 0; ai < 8; ++ai)
            for (int bi = 0; bi < 8; ++bi) {
                Point a = pts[ai], b = pts[bi];
                auto s = L->successor(b);
                if (!s) continue;
                Index half = interval_index(at(a), at(b));
                Index open = interval_index(at(a), at(*s));
                for (Point p : pts)
                    REQUIRE(UL->basis_member(p, half) == OT->basis_member(p, open));
            }
    }
}

TEST_CASE("subspace topology coincidence on well orders and the rationals") {
    // L = omega+1, S = evens u {top}: the top is a limit both ways
    auto L = omega_plus_one();
    auto in_s = [](Point p) { return p == 0 || (p - 1) % 2 == 0; };
    Verdict v = subspace_topology_coincides(L, in_s, 40, true);
    REQUIRE(v.is_true());

    // S = L
    Verdict v2 = subspace_topology_coincides(L, [](Point) { return true; }, 40, true);
    REQUIRE(v2.is_true());

    // rationals with S = {0} u {1+1/n}: fails at 0
    auto Q = rationals();
    std::set<Point> codes;
    codes.insert(rational_code(Rat(0)));
    for (long long n = 1; n <= 30; ++n) codes.insert(rational_code(Rat(n + 1, n)));
    Verdict v3 = subspace_topology_coincides(
        Q, [codes](Point p) { return codes.count(p) > 0; }, 600, false, 6000);
    REQUIRE(v3.is_false());
    REQUIRE(v3.certificate.find(std::to_string(rational_code(Rat(0)))) != std::string::npos);
}
