#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "scn/model.hpp"

using namespace scn;

TEST_SUITE("model") {

TEST_CASE("parameter validation rejects out-of-range values") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());

    auto reject = [](auto mutate) {
        ModelParams q;
        mutate(q);
        CHECK_THROWS_AS(q.validate(), ValidationError);
    };
    reject([](ModelParams& q) { q.n = 0; });
    reject([](ModelParams& q) { q.m = 0; });
    reject([](ModelParams& q) { q.d = 0.0; });
    reject([](ModelParams& q) { q.d = -1.0; });
    reject([](ModelParams& q) { q.lambda = 0.0; });
    reject([](ModelParams& q) { q.lambda = 1.0001; });
    reject([](ModelParams& q) { q.c = -0.1; });
    reject([](ModelParams& q) { q.gamma = -0.1; });

    SUBCASE("lambda = 1 is the accepted degenerate edge") {
        p.lambda = 1.0;
        CHECK_NOTHROW(p.validate());
    }
}

TEST_CASE("tier list must be consistent with n and m") {
    ModelParams p;
    p.tiers = {2, 3, 2};
    CHECK_NOTHROW(p.validate());
    CHECK(p.tier_sizes() == std::vector<int>{2, 3, 2});

    p.tiers = {3, 2};  // first entry contradicts n = 2
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.tiers = {2, 3};  // last entry contradicts m = 2
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.tiers = {2};
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p.tiers = {2, 0, 2};
    CHECK_THROWS_AS(p.validate(), ValidationError);

    p.tiers.clear();
    CHECK(p.tier_sizes() == std::vector<int>{2, 2});
    CHECK(p.delta() == doctest::Approx(2.0));
}

TEST_CASE("per-supplier parameters validate sizes and open-interval probabilities") {
    HeteroParams h;
    h.lambda_sup = {0.8, 0.6};
    h.gamma_sup = {0.0, 0.1};
    CHECK_NOTHROW(h.validate());

    h.lambda_sup = {0.8};
    CHECK_THROWS_AS(h.validate(), ValidationError);
    h.lambda_sup = {0.8, 1.0};  // closed endpoint not allowed here
    CHECK_THROWS_AS(h.validate(), ValidationError);
    h.lambda_sup = {0.8, 0.6};
    h.gamma_sup = {-0.1, 0.0};
    CHECK_THROWS_AS(h.validate(), ValidationError);
    h.gamma_sup = {0.0, 0.1};
    h.lambda_r = 1.0;
    CHECK_THROWS_AS(h.validate(), ValidationError);

    const ModelParams p;
    const HeteroParams hp = HeteroParams::from_homogeneous(p);
    CHECK(hp.lambda_sup == std::vector<double>{0.8, 0.8});
    CHECK(hp.gamma_sup == std::vector<double>{0.0, 0.0});
    CHECK(hp.lambda_r == doctest::Approx(0.8));
}

TEST_CASE("network construction checks shapes and index ranges") {
    CHECK_NOTHROW(Network(2, 2, {{0}, {0, 1}}));
    CHECK_THROWS_AS(Network(2, 2, {{0}}), ValidationError);           // one row per retailer
    CHECK_THROWS_AS(Network(2, 2, {{0}, {2}}), ValidationError);      // supplier out of range
    CHECK_THROWS_AS(Network(2, 2, {{0}, {-1}}), ValidationError);     // negative index
    CHECK_THROWS_AS(Network(2, 2, {{0, 0}, {1}}), ValidationError);   // duplicate link
    CHECK_THROWS_AS(Network(0, 2, {}), ValidationError);

    const Network zee(2, 2, {{0}, {0, 1}});
    CHECK(zee.tier_count() == 2);
    CHECK(zee.retailers() == 2);
    CHECK(zee.suppliers() == 2);
    CHECK(zee.retailer_degree(0) == 1);
    CHECK(zee.retailer_degree(1) == 2);
    CHECK(zee.retailer_active(0));
    CHECK(zee.active_retailer_count() == 2);
    CHECK(zee.overlap(0, 1) == 1);
    CHECK(zee.in_degree(2, 0) == 2);
    CHECK(zee.in_degree(2, 1) == 1);
    CHECK(zee.in_neighbors(2, 0) == std::vector<int>{0, 1});

    const Network empty(2, 2, {{}, {}});
    CHECK(empty.active_retailer_count() == 0);
    CHECK_FALSE(empty.retailer_active(0));
}

TEST_CASE("multi-tier construction and queries") {
    // 2 retailers -> 2 mid -> 2 top
    const Network chain({2, 2, 2}, {{{0}, {0, 1}}, {{0}, {1}}});
    CHECK(chain.tier_count() == 3);
    CHECK(chain.tier_size(2) == 2);
    CHECK(chain.out_neighbors(2, 1) == std::vector<int>{1});
    CHECK(chain.in_degree(3, 0) == 1);
    CHECK_THROWS_AS(Network({2}, {}), ValidationError);
    CHECK_THROWS_AS(Network({2, 2, 2}, {{{0}, {0}}}), ValidationError);
}

TEST_CASE("deviation copies replace exactly one neighborhood") {
    const Network full = make_full_2x2();
    const Network dev = full.with_retailer_links(0, {1});
    CHECK(dev.retailer_links(0) == std::vector<int>{1});
    CHECK(dev.retailer_links(1) == std::vector<int>{0, 1});
    CHECK(full.retailer_links(0) == std::vector<int>{0, 1});
    CHECK(dev == Network(2, 2, {{1}, {0, 1}}));
    CHECK_FALSE(dev == full);
    CHECK_THROWS_AS(full.with_retailer_links(0, {5}), ValidationError);
}

TEST_CASE("the sixteen 2x2 profiles classify into the expected multiset") {
    std::map<NetClass, int> count;
    for (int code = 0; code < 16; ++code) {
        const Network net(2, 2,
                          {test::links_from_mask(code & 3, 2), test::links_from_mask(code >> 2, 2)});
        count[classify_2x2(net).label]++;
    }
    CHECK(count[NetClass::Empty] == 1);
    CHECK(count[NetClass::Cone] == 2);
    CHECK(count[NetClass::Parallel] == 2);
    CHECK(count[NetClass::Zee] == 4);
    CHECK(count[NetClass::Full] == 1);
    CHECK(count[NetClass::Other] == 6);
}

TEST_CASE("classification permutations map onto the canonical shapes") {
    // anti-parallel: retailer 1 on supplier 2 and vice versa
    const Network anti(2, 2, {{1}, {0}});
    const Classification cl = classify_2x2(anti);
    CHECK(cl.label == NetClass::Parallel);
    REQUIRE(cl.supplier_perm.has_value());
    REQUIRE(cl.retailer_perm.has_value());
    // applying the permutations must reproduce the canonical representative
    std::vector<std::vector<int>> remapped(2);
    for (int i = 0; i < 2; ++i)
        for (int j : anti.retailer_links(i))
            remapped[static_cast<size_t>((*cl.retailer_perm)[static_cast<size_t>(i)])]
                .push_back((*cl.supplier_perm)[static_cast<size_t>(j)]);
    CHECK(Network(2, 2, remapped) == make_parallel_2x2());

    CHECK(classify_2x2(make_cone_2x2(1)).label == NetClass::Cone);
    CHECK(classify_2x2(make_zee_2x2()).label == NetClass::Zee);
    CHECK(classify_2x2(make_full_2x2()).label == NetClass::Full);
    CHECK(classify_2x2(make_empty_2x2()).label == NetClass::Empty);
    const Network one_link(2, 2, {{0}, {}});
    CHECK(classify_2x2(one_link).label == NetClass::Other);
}

TEST_CASE("class names round-trip through strings") {
    for (NetClass k : {NetClass::Empty, NetClass::Cone, NetClass::Parallel, NetClass::Zee,
                       NetClass::Full, NetClass::Other}) {
        const auto back = net_class_from_string(to_string(k));
        REQUIRE(back.has_value());
        CHECK(*back == k);
    }
    CHECK_FALSE(net_class_from_string("nonsense").has_value());
}

}  // TEST_SUITE
