#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "spider/errors.hpp"
#include "spider/web.hpp"
#include "test_util.hpp"

using namespace spider;

namespace {

Web theta() { return Web::validate(1, 1, {{0, 0}, {0, 0}, {0, 0}}, 0); }

// brute-force isomorphism over all role-preserving bijections
bool iso_oracle(const Web& a, const Web& b) {
    if (a.sources != b.sources || a.sinks != b.sinks || a.circles != b.circles ||
        a.edges.size() != b.edges.size())
        return false;
    std::vector<int> sp(a.sources), tp(a.sinks);
    std::iota(sp.begin(), sp.end(), 0);
    auto edges_match = [&](const std::vector<int>& spm, const std::vector<int>& tpm) {
        std::vector<WebEdge> mapped;
        for (const auto& e : a.edges) mapped.push_back({spm[e.tail], tpm[e.head]});
        std::sort(mapped.begin(), mapped.end());
        return mapped == b.edges; // b.edges kept sorted by validate
    };
    do {
        std::iota(tp.begin(), tp.end(), 0);
        do {
            if (edges_match(sp, tp)) return true;
        } while (std::next_permutation(tp.begin(), tp.end()));
    } while (std::next_permutation(sp.begin(), sp.end()));
    return false;
}

Web permuted(const Web& w, std::mt19937_64& rng) {
    std::vector<int> sp(w.sources), tp(w.sinks);
    std::iota(sp.begin(), sp.end(), 0);
    std::iota(tp.begin(), tp.end(), 0);
    for (std::size_t i = sp.size(); i > 1; --i)
        std::swap(sp[i - 1], sp[testutil::bounded(rng, i)]);
    for (std::size_t i = tp.size(); i > 1; --i)
        std::swap(tp[i - 1], tp[testutil::bounded(rng, i)]);
    std::vector<WebEdge> edges;
    for (const auto& e : w.edges) edges.push_back({sp[e.tail], tp[e.head]});
    return Web::validate(w.sources, w.sinks, edges, w.circles);
}

// exhaustive enumeration oracle for subgraph containment (pattern <= 6 vertices)
bool subgraph_oracle(const Web& host, const Web& pattern) {
    if (pattern.sources > host.sources || pattern.sinks > host.sinks) return false;
    std::vector<std::vector<int>> hm(host.sources, std::vector<int>(host.sinks, 0));
    std::vector<std::vector<int>> pm(pattern.sources, std::vector<int>(pattern.sinks, 0));
    for (const auto& e : host.edges) ++hm[e.tail][e.head];
    for (const auto& e : pattern.edges) ++pm[e.tail][e.head];
    std::vector<int> simg(host.sources), timg(host.sinks);
    std::iota(simg.begin(), simg.end(), 0);
    do {
        std::iota(timg.begin(), timg.end(), 0);
        do {
            bool ok = true;
            for (int i = 0; ok && i < pattern.sources; ++i)
                for (int j = 0; ok && j < pattern.sinks; ++j)
                    if (hm[simg[i]][timg[j]] < pm[i][j]) ok = false;
            if (ok) return true;
        } while (std::next_permutation(timg.begin(), timg.end()));
    } while (std::next_permutation(simg.begin(), simg.end()));
    return false;
}

} // namespace

TEST_CASE("validate accepts webs and names bad vertices") {
    Web circle = Web::validate(0, 0, {}, 1);
    CHECK(circle.circles == 1);
    CHECK(theta().edges.size() == 3);
    try {
        Web::validate(1, 1, {{0, 0}, {0, 0}}, 0);
        FAIL("degree-2 web accepted");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("source 0") != std::string::npos);
    }
    try {
        Web::validate(2, 2, {{0, 0}, {0, 0}, {0, 0}, {1, 1}, {1, 1}, {1, 0}}, 0);
        FAIL("unbalanced sink accepted");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("sink") != std::string::npos);
    }
    CHECK_THROWS_AS(Web::validate(1, 0, {{0, 0}, {0, 0}, {0, 0}}, 0), ValidationError);
    CHECK_THROWS_AS(Web::validate(0, 0, {}, -1), ValidationError);
}

TEST_CASE("canonical form is relabeling-invariant") {
    std::mt19937_64 rng(424242);
    CanonicalWeb t = canonical_form(theta());
    CHECK(t.to_string() == "circles:0; s1,t1;(0->0)(0->0)(0->0)");
    for (int i = 0; i < 200; ++i) {
        Web w = testutil::random_web(1 + testutil::bounded(rng, 5),
                                     testutil::bounded(rng, 2), rng);
        CHECK(canonical_form(permuted(w, rng)) == canonical_form(w));
    }
}

TEST_CASE("canonical equality matches brute-force isomorphism") {
    std::mt19937_64 rng(777);
    int equal_seen = 0;
    for (int i = 0; i < 300; ++i) {
        int s = 1 + testutil::bounded(rng, 4); // up to 8 vertices
        Web a = testutil::random_web(s, 0, rng);
        Web b = testutil::random_web(s, 0, rng);
        bool canon_eq = canonical_form(a) == canonical_form(b);
        CHECK(canon_eq == iso_oracle(a, b));
        if (canon_eq) ++equal_seen;
    }
    CHECK(equal_seen > 0); // small webs collide often; the oracle must see both sides
}

TEST_CASE("canonical form distinguishes non-isomorphic webs") {
    Web pair = Web::validate(2, 2, {{0, 0}, {0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 1}}, 0);
    CHECK(canonical_form(theta()) != canonical_form(pair));
    // circles count participates
    Web t2 = theta();
    t2.circles = 1;
    CHECK(canonical_form(t2) != canonical_form(theta()));
}

TEST_CASE("web_from_canonical round trips") {
    std::mt19937_64 rng(5150);
    for (int i = 0; i < 100; ++i) {
        Web w = testutil::random_web(1 + testutil::bounded(rng, 5),
                                     testutil::bounded(rng, 3), rng);
        CanonicalWeb cw = canonical_form(w);
        CHECK(canonical_form(web_from_canonical(cw)) == cw);
    }
}

TEST_CASE("find_sites on the basic fixtures") {
    Web circle = Web::validate(0, 0, {}, 1);
    auto sites = find_sites(circle);
    REQUIRE(sites.size() == 1);
    CHECK(sites[0].kind == ReductionSite::Kind::Circle);

    auto tsites = find_sites(theta());
    REQUIRE(tsites.size() == 3); // C(3,2) overlapping bigon pairs
    for (const auto& s : tsites) CHECK(s.kind == ReductionSite::Kind::Bigon);

    // 4-cycle completed to trivalence by external edges to a second square:
    // the cube-style web s0,s1 -> t0,t1 doubled has squares and bigons;
    // instead check the K33-style web: every pair of sources shares sinks
    Web k33 = Web::validate(
        3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}}, 0);
    auto ksites = find_sites(k33);
    int squares = 0;
    for (const auto& s : ksites) {
        CHECK(s.kind == ReductionSite::Kind::Square);
        ++squares;
    }
    CHECK(squares == 9); // 3 source pairs x 3 sink pairs
    CHECK_FALSE(is_irreducible(k33));
}

TEST_CASE("parallel copies multiply square sites on the cube-style web") {
    // square s0->t0<-s1->t1<-s0 whose external edges double two of the
    // cycle edges: 2x1x2x1 copy choices, plus the two parallel pairs
    Web w = Web::validate(2, 2, {{0, 0}, {0, 0}, {0, 1}, {1, 0}, {1, 1}, {1, 1}}, 0);
    int squares = 0, bigons = 0;
    for (const auto& s : find_sites(w)) {
        if (s.kind == ReductionSite::Kind::Square) ++squares;
        if (s.kind == ReductionSite::Kind::Bigon) ++bigons;
    }
    CHECK(squares == 4);
    CHECK(bigons == 2);
}

TEST_CASE("find_sites is complete against exhaustive cycle enumeration") {
    std::mt19937_64 rng(31415);
    for (int i = 0; i < 200; ++i) {
        Web w = testutil::random_web(1 + testutil::bounded(rng, 4),
                                     testutil::bounded(rng, 2), rng);
        auto sites = find_sites(w);
        int circles = 0, bigons = 0, squares = 0;
        for (const auto& s : sites) {
            switch (s.kind) {
                case ReductionSite::Kind::Circle: ++circles; break;
                case ReductionSite::Kind::Bigon: ++bigons; break;
                case ReductionSite::Kind::Square: ++squares; break;
            }
        }
        CHECK(circles == w.circles);
        // oracle: count parallel pairs and edge 4-cycles directly
        int expect_bigons = 0;
        for (std::size_t a = 0; a < w.edges.size(); ++a)
            for (std::size_t b = a + 1; b < w.edges.size(); ++b)
                if (w.edges[a] == w.edges[b]) ++expect_bigons;
        int expect_squares = 0;
        for (std::size_t a = 0; a < w.edges.size(); ++a)
            for (std::size_t b = 0; b < w.edges.size(); ++b)
                for (std::size_t c = 0; c < w.edges.size(); ++c)
                    for (std::size_t e = 0; e < w.edges.size(); ++e) {
                        if (a == b || a == c || a == e || b == c || b == e || c == e)
                            continue;
                        const WebEdge &E1 = w.edges[a], &E2 = w.edges[b], &E3 = w.edges[c],
                                      &E4 = w.edges[e];
                        // cycle s1 ->(E1) t1 <-(E2) s2 ->(E3) t2 <-(E4) s1, s1<s2, t1<t2,
                        // counted once per direction/start: enforce uniqueness
                        if (E1.tail != E4.tail || E2.tail != E3.tail) continue;
                        if (E1.head != E2.head || E3.head != E4.head) continue;
                        if (E1.tail >= E2.tail) continue;
                        if (E1.head >= E3.head) continue;
                        ++expect_squares;
                    }
        // each unordered edge-pair {E1,E2} at a fixed vertex tuple appears
        // once with each labeling of the parallel slots; oracle counts
        // ordered copies exactly as find_sites emits combinations
        CHECK(bigons == expect_bigons);
        CHECK(squares == expect_squares);
    }
}

TEST_CASE("is_irreducible") {
    CHECK(is_irreducible(Web{}));
    CHECK_FALSE(is_irreducible(theta()));
    CHECK_FALSE(is_irreducible(Web::validate(0, 0, {}, 1)));
}

TEST_CASE("contains_subgraph basics") {
    CHECK(contains_subgraph(theta(), Web{}));
    // two of theta's three parallel edges
    Web bigon_pattern;
    bigon_pattern.sources = 1;
    bigon_pattern.sinks = 1;
    bigon_pattern.edges = {{0, 0}, {0, 0}};
    CHECK(contains_subgraph(theta(), bigon_pattern));
    Web quad = Web::validate(
        2, 2, {{0, 0}, {0, 0}, {0, 1}, {1, 1}, {1, 1}, {1, 0}}, 0);
    CHECK_FALSE(contains_subgraph(theta(), quad)); // too many vertices
    Web circle_pattern;
    circle_pattern.circles = 1;
    CHECK_THROWS_AS(contains_subgraph(theta(), circle_pattern), DomainError);
}

TEST_CASE("contains_subgraph agrees with exhaustive enumeration") {
    std::mt19937_64 rng(2718);
    int positives = 0;
    for (int i = 0; i < 150; ++i) {
        Web host = testutil::random_web(1 + testutil::bounded(rng, 4), 0, rng);
        Web pattern = testutil::random_web(1 + testutil::bounded(rng, 3), 0, rng);
        bool got = contains_subgraph(host, pattern);
        CHECK(got == subgraph_oracle(host, pattern));
        if (got) ++positives;
        // a web always embeds in itself and in itself plus extra components
        CHECK(contains_subgraph(host, host));
    }
    CHECK(positives > 0);
}

TEST_CASE("split_components partitions vertices and edges") {
    Web two_thetas = Web::validate(2, 2, {{0, 0}, {0, 0}, {0, 0}, {1, 1}, {1, 1}, {1, 1}}, 2);
    auto comps = split_components(two_thetas);
    REQUIRE(comps.size() == 2);
    for (const auto& c : comps) {
        CHECK(c.sources == 1);
        CHECK(c.sinks == 1);
        CHECK(c.edges.size() == 3);
    }
}
