#include <gtest/gtest.h>

#include <random>

#include "brute_force.hpp"
#include "scoh/finabel.hpp"

using namespace scoh;
using scoh::testing::ElementSet;

namespace {

FinAbGroup z(std::uint64_t p, std::uint64_t e) { return make_group({{p, e}}); }

Homomorphism mult(const FinAbGroup& g, long k) { return Homomorphism::scalar(g, k); }

}  // namespace

TEST(MakeGroup, EmptyListIsZeroGroup) {
    auto g = make_group({});
    EXPECT_TRUE(g.is_zero());
    EXPECT_EQ(g.cardinality(), 1);
}

TEST(MakeGroup, Cardinalities) {
    EXPECT_EQ(make_group({{2, 3}}).cardinality(), 8);
    auto g = make_group({{2, 2}, {2, 1}, {3, 1}});
    EXPECT_EQ(g.cardinality(), 24);
    EXPECT_EQ(g.to_string(), "Z(4)+Z(2)+Z(3)");
}

TEST(MakeGroup, RejectsBadFactors) {
    EXPECT_THROW(make_group({{4, 1}}), ValidationError);
    EXPECT_THROW(make_group({{2, 0}}), ValidationError);
    try {
        make_group({{2, 1}, {9, 2}});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("factor 1"), std::string::npos);
    }
}

TEST(MakeGroup, HugeOrdersStayExact) {
    auto g = make_group({{1000003, 5}, {999983, 4}});
    EXPECT_EQ(g.cardinality(), ipow(1000003, 5) * ipow(999983, 4));
}

TEST(MakeGroup, NormalizedSortsFactors) {
    auto g = make_group({{3, 1}, {2, 1}, {2, 2}});
    EXPECT_EQ(g.normalized(), make_group({{2, 1}, {2, 2}, {3, 1}}));
}

TEST(ValidateHom, IdentityAndCongruence) {
    auto z8 = z(2, 3);
    EXPECT_EQ(validate_hom({{1}}, z8, z8), Homomorphism::identity(z8));

    try {
        validate_hom({{1}}, z(2, 1), z(2, 2));
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("divisible by 2"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("(0,0)"), std::string::npos);
    }

    auto emb = validate_hom({{2}}, z(2, 1), z(2, 2));
    EXPECT_EQ(emb.apply(GroupElement{{1}}), GroupElement{{2}});
}

TEST(ValidateHom, RejectsShapeMismatch) {
    EXPECT_THROW(validate_hom({{1, 0}}, z(2, 1), z(2, 1)), ValidationError);
    EXPECT_THROW(validate_hom({}, z(2, 1), z(2, 1)), ValidationError);
}

TEST(ValidateHom, ReducesEntries) {
    auto z8 = z(2, 3);
    EXPECT_EQ(validate_hom({{10}}, z8, z8), mult(z8, 2));
    EXPECT_EQ(validate_hom({{-1}}, z8, z8), mult(z8, 7));
}

TEST(Compose, Laws) {
    auto z8 = z(2, 3);
    auto f = mult(z8, 2);
    EXPECT_EQ(compose(Homomorphism::identity(z8), f), f);
    EXPECT_EQ(compose(Homomorphism::zero(z8, z8), f), Homomorphism::zero(z8, z8));
    EXPECT_EQ(compose(f, f), mult(z8, 4));
    EXPECT_THROW(compose(f, Homomorphism::identity(z(2, 2))), ValidationError);
}

TEST(Compose, AgreesWithPointwiseApplication) {
    std::mt19937_64 rng(7);
    auto groups = scoh::testing::all_groups_up_to(24);
    for (int trial = 0; trial < 200; ++trial) {
        const auto& g = groups[rng() % groups.size()];
        auto f = scoh::testing::random_endomorphism(g, rng);
        auto h = scoh::testing::random_endomorphism(g, rng);
        auto fh = compose(f, h);
        for (const auto& x : scoh::testing::all_elements(g)) {
            ASSERT_EQ(fh.apply(x), f.apply(h.apply(x)));
        }
    }
}

TEST(Image, Examples) {
    auto z8 = z(2, 3);
    EXPECT_EQ(image(Homomorphism::identity(z8)), Subgroup::whole(z8));
    auto im2 = image(mult(z8, 2));
    EXPECT_EQ(im2.cardinality(), 4);
    EXPECT_EQ(scoh::testing::element_set(im2), (ElementSet{{0}, {2}, {4}, {6}}));

    // [[2,1],[0,0]] would send the order-2 generator to (1,0), of order 4.
    auto g = make_group({{2, 2}, {2, 1}});
    EXPECT_THROW(validate_hom({{2, 1}, {0, 0}}, g, g), ValidationError);
    // Enumerating the 8 images of [[1,2],[0,0]] gives {(0,0),(1,0),(2,0),(3,0)}.
    auto f = validate_hom({{1, 2}, {0, 0}}, g, g);
    auto im = image(f);
    EXPECT_EQ(im.cardinality(), 4);
    EXPECT_EQ(scoh::testing::element_set(im), scoh::testing::image_set(f, scoh::testing::whole_set(g)));
    EXPECT_EQ(im, Subgroup::generated_by(g, std::vector{GroupElement{{1, 0}}}));
}

TEST(Kernel, Examples) {
    auto z8 = z(2, 3);
    EXPECT_EQ(kernel(Homomorphism::identity(z8)), Subgroup::zero(z8));
    EXPECT_EQ(kernel(Homomorphism::zero(z8, z8)), Subgroup::whole(z8));
    auto k = kernel(mult(z8, 2));
    EXPECT_EQ(k.cardinality(), 2);
    EXPECT_EQ(scoh::testing::element_set(k), (ElementSet{{0}, {4}}));
}

TEST(Kernel, BetweenDifferentGroups) {
    auto src = make_group({{2, 2}, {3, 1}});
    auto tgt = make_group({{2, 1}});
    auto f = validate_hom({{1, 0}}, src, tgt);
    EXPECT_EQ(scoh::testing::element_set(kernel(f)), scoh::testing::kernel_set(f));
    EXPECT_EQ(kernel(f).cardinality(), 6);
}

TEST(SubgroupEqual, Examples) {
    auto z8 = z(2, 3);
    EXPECT_TRUE(subgroup_equal(image(mult(z8, 2)), Subgroup::generated_by(z8, std::vector{GroupElement{{6}}})));
    auto z2 = z(2, 1);
    EXPECT_FALSE(subgroup_equal(Subgroup::whole(z2), Subgroup::zero(z2)));
    auto id = Homomorphism::identity(z8);
    EXPECT_TRUE(subgroup_equal(image(id), image(compose(id, id))));
    EXPECT_THROW(subgroup_equal(Subgroup::whole(z2), Subgroup::whole(z8)), ValidationError);
}

TEST(Subgroup, GeneratorsAreReducedElements) {
    auto g = make_group({{2, 2}, {2, 1}});
    for (const auto& gen : Subgroup::whole(g).generators()) {
        EXPECT_EQ(make_element(g, gen.coords), gen);
    }
}

TEST(StabIndex, Examples) {
    auto z8 = z(2, 3);
    EXPECT_EQ(stab_index(Homomorphism::identity(z8)), 0U);
    EXPECT_EQ(stab_index(Homomorphism::zero(z8, z8)), 1U);
    EXPECT_EQ(stab_index(mult(z8, 2)), scoh::testing::brute_stab_index(mult(z8, 2)));
    EXPECT_EQ(stab_index(mult(z8, 2)), 3U);
    EXPECT_EQ(stab_index(Homomorphism::identity(make_group({}))), 0U);
}

TEST(StabIndex, RejectsNonEndomorphism) {
    EXPECT_THROW(stab_index(validate_hom({{2}}, z(2, 1), z(2, 2))), ValidationError);
}

TEST(StabIndex, ChainCardinalities) {
    auto z8 = z(2, 3);
    std::vector<Integer> cards;
    for (const auto& s : image_chain(mult(z8, 2))) cards.push_back(s.cardinality());
    EXPECT_EQ(cards, (std::vector<Integer>{8, 4, 2, 1, 1}));
}

TEST(SumDecomposition, Examples) {
    auto z8 = z(2, 3);
    EXPECT_TRUE(sum_decomposition_check(Homomorphism::identity(z8), 1));
    EXPECT_FALSE(sum_decomposition_check(mult(z8, 2), 1));
    EXPECT_TRUE(sum_decomposition_check(mult(z8, 2), 3));
}

// Lattice route against explicit element sets, on random maps of every group
// of order <= 24.
TEST(Properties, AgreeWithBruteForce) {
    std::mt19937_64 rng(11);
    for (const auto& g : scoh::testing::all_groups_up_to(24)) {
        for (int trial = 0; trial < 6; ++trial) {
            auto f = scoh::testing::random_endomorphism(g, rng);
            auto whole = scoh::testing::whole_set(g);
            ASSERT_EQ(scoh::testing::element_set(image(f)), scoh::testing::image_set(f, whole)) << f.to_string();
            ASSERT_EQ(scoh::testing::element_set(kernel(f)), scoh::testing::kernel_set(f)) << f.to_string();
            ASSERT_EQ(stab_index(f), scoh::testing::brute_stab_index(f)) << g.to_string() << " " << f.to_string();
        }
    }
}

TEST(Properties, ChainMonotoneAndPersistent) {
    std::mt19937_64 rng(12);
    auto groups = scoh::testing::all_groups_up_to(32);
    for (int trial = 0; trial < 150; ++trial) {
        const auto& g = groups[rng() % groups.size()];
        auto f = scoh::testing::random_endomorphism(g, rng);
        auto chain = image_chain(f);
        const std::size_t s = chain.size() - 2;
        for (std::size_t n = 0; n + 1 < chain.size(); ++n) {
            ASSERT_TRUE(is_contained(chain[n + 1], chain[n]));
            if (n < s) {
                ASSERT_FALSE(chain[n + 1] == chain[n]);
            }
        }
        Subgroup stable = chain[s];
        Subgroup cur = stable;
        for (int k = 0; k < 3; ++k) {
            cur = image_of(f, cur);
            ASSERT_EQ(cur, stable);
        }
    }
}

TEST(Properties, CountDualityAndFitting) {
    std::mt19937_64 rng(13);
    auto groups = scoh::testing::all_groups_up_to(32);
    for (int trial = 0; trial < 150; ++trial) {
        const auto& g = groups[rng() % groups.size()];
        auto f = scoh::testing::random_endomorphism(g, rng);
        ASSERT_EQ(image(f).cardinality() * kernel(f).cardinality(), g.cardinality());

        // f restricted to image(f^s) is injective on that finite set.
        auto stable = image_chain(f)[stab_index(f)];
        ElementSet members = scoh::testing::element_set(stable);
        ASSERT_EQ(scoh::testing::image_set(f, members).size(), members.size());
    }
}

TEST(Properties, SumDecompositionIffStable) {
    std::mt19937_64 rng(14);
    auto groups = scoh::testing::all_groups_up_to(32);
    for (int trial = 0; trial < 80; ++trial) {
        const auto& g = groups[rng() % groups.size()];
        auto f = scoh::testing::random_endomorphism(g, rng);
        const std::size_t s = stab_index(f);
        // n = 0 is excluded: f^0 = id always gives G + 0 = G.
        for (std::size_t n = 1; n <= s + 2; ++n) {
            ASSERT_EQ(sum_decomposition_check(f, n), n >= s) << f.to_string() << " n=" << n;
        }
        ASSERT_TRUE(sum_decomposition_check(f, 0));
    }
}

TEST(Properties, CanonicalFormIsUnique) {
    // Different generating sets of the same subgroup produce the same form.
    std::mt19937_64 rng(15);
    auto groups = scoh::testing::all_groups_up_to(32);
    for (int trial = 0; trial < 100; ++trial) {
        const auto& g = groups[rng() % groups.size()];
        auto f = scoh::testing::random_endomorphism(g, rng);
        auto s = image(f);
        auto regenerated = Subgroup::generated_by(g, s.generators());
        ASSERT_EQ(regenerated, s);
        std::vector<GroupElement> members;
        for (const auto& x : scoh::testing::element_set(s)) members.push_back(GroupElement{x});
        ASSERT_EQ(Subgroup::generated_by(g, members), s);
    }
}
