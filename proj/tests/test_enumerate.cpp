#include <gtest/gtest.h>

#include <random>
#include <set>

#include "brute_force.hpp"
#include "scoh/enumerate.hpp"

using namespace scoh;

TEST(EnumerateEndos, CountsAndUniqueness) {
    auto z2 = make_group({{2, 1}});
    auto range = enumerate_endos(z2, 100);
    std::vector<Homomorphism> all(range.begin(), range.end());
    ASSERT_EQ(all.size(), 2U);
    EXPECT_EQ(all[0], Homomorphism::zero(z2, z2));
    EXPECT_EQ(all[1], Homomorphism::identity(z2));

    // gcd(4,4) * gcd(4,2) * gcd(2,4) * gcd(2,2) = 4 * 2 * 2 * 2
    auto g = make_group({{2, 2}, {2, 1}});
    std::set<IntMatrix> seen;
    for (const auto& f : enumerate_endos(g, 1000)) seen.insert(f.matrix());
    EXPECT_EQ(seen.size(), 32U);
    EXPECT_EQ(endomorphism_count(g), 32);
}

TEST(EnumerateEndos, EveryValidMatrixAppears) {
    // Brute force over all raw matrices with entries below the target order,
    // keeping the well-defined ones.
    auto g = make_group({{2, 2}, {2, 1}, {3, 1}});
    std::set<IntMatrix> valid;
    const std::vector<int> orders{4, 2, 3};
    IntMatrix m(3, std::vector<Integer>(3, 0));
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == 9) {
            try {
                valid.insert(validate_hom(m, g, g).matrix());
            } catch (const ValidationError&) {
            }
            return;
        }
        for (int v = 0; v < orders[pos / 3]; ++v) {
            m[pos / 3][pos % 3] = v;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    std::set<IntMatrix> enumerated;
    for (const auto& f : enumerate_endos(g, 1 << 20)) enumerated.insert(f.matrix());
    EXPECT_EQ(enumerated, valid);
}

TEST(EnumerateEndos, OrderIsLexicographic) {
    auto g = make_group({{2, 2}, {2, 1}});
    std::vector<IntMatrix> order;
    for (const auto& f : enumerate_endos(g, 1000)) order.push_back(f.matrix());
    EXPECT_TRUE(std::is_sorted(order.begin(), order.end()));
}

TEST(EnumerateEndos, RefusesOverCap) {
    try {
        enumerate_endos(make_group({{2, 3}}), 4);
        FAIL();
    } catch (const CapExceeded& e) {
        EXPECT_EQ(e.count(), 8);
    }
}

TEST(MaxStabIndex, Examples) {
    auto z2 = make_group({{2, 1}});
    auto r = max_stab_index(z2, 100);
    EXPECT_EQ(r.index, 1U);
    EXPECT_EQ(r.witness, Homomorphism::zero(z2, z2));

    auto z8 = make_group({{2, 3}});
    r = max_stab_index(z8, 100);
    EXPECT_EQ(r.index, 3U);
    EXPECT_EQ(r.witness, Homomorphism::scalar(z8, 2));
    EXPECT_EQ(r.endomorphisms, 8U);

    r = max_stab_index(make_group({}), 100);
    EXPECT_EQ(r.index, 0U);
    EXPECT_EQ(r.witness.source().factor_count(), 0U);
}

TEST(MaxStabIndex, RefusesOverCap) { EXPECT_THROW(max_stab_index(make_group({{2, 3}}), 4), CapExceeded); }

TEST(MaxStabIndex, MatchesLatticeRouteExhaustively) {
    for (const auto& g : scoh::testing::all_groups_up_to(16)) {
        std::size_t best = 0;
        Homomorphism witness;
        bool first = true;
        for (const auto& f : enumerate_endos(g, 1 << 20)) {
            std::size_t s = stab_index(f);
            if (first || s > best) {
                best = s;
                witness = f;
                first = false;
            }
        }
        auto r = max_stab_index(g, 1 << 20);
        ASSERT_EQ(r.index, best) << g.to_string();
        ASSERT_EQ(r.witness, witness) << g.to_string();
    }
}

TEST(MaxStabIndex, IndependentOfWorkerCount) {
    for (const auto& g : {make_group({{2, 2}, {2, 1}, {2, 1}}), make_group({{3, 1}, {3, 1}}), make_group({{2, 3}, {3, 2}})}) {
        auto base = max_stab_index(g, 1 << 20, 1);
        for (unsigned w : {2U, 3U, 7U}) {
            auto r = max_stab_index(g, 1 << 20, w);
            EXPECT_EQ(r.index, base.index);
            EXPECT_EQ(r.witness_position, base.witness_position);
            EXPECT_EQ(r.witness, base.witness);
        }
    }
}

TEST(DenseEngine, AgreesWithLatticeOnSampledMaps) {
    std::mt19937_64 rng(21);
    for (const auto& g : scoh::testing::all_groups_up_to(64)) {
        for (int trial = 0; trial < 4; ++trial) {
            auto f = scoh::testing::random_endomorphism(g, rng);
            ASSERT_EQ(dense_stab_index(f), stab_index(f)) << g.to_string() << " " << f.to_string();
        }
    }
}

TEST(DenseEngine, LargeMaskPath) {
    // Cardinality above 64 exercises the multi-word masks and, above 256, the
    // digit-wise addition.
    std::mt19937_64 rng(22);
    for (const auto& g : {make_group({{3, 4}}), make_group({{2, 3}, {2, 2}, {3, 1}}), make_group({{2, 5}, {3, 2}}),
                          make_group({{5, 2}, {3, 2}, {2, 2}})}) {
        for (int trial = 0; trial < 10; ++trial) {
            auto f = scoh::testing::random_endomorphism(g, rng);
            ASSERT_EQ(dense_stab_index(f), stab_index(f)) << g.to_string() << " " << f.to_string();
        }
    }
}

TEST(DenseEngine, ScanVisitsPositionsInOrder) {
    auto g = make_group({{2, 2}, {2, 1}});
    EndomorphismSpace space(g);
    DenseGroup dense(g);
    auto states = scan_endomorphisms<std::vector<std::uint64_t>>(
        g, 1000, 3, [&](std::vector<std::uint64_t>& s, std::uint64_t pos, auto& endo) {
            // Table built incrementally by the odometer matches the exact map.
            auto f = space.at(pos);
            for (std::uint32_t x = 0; x < dense.cardinality(); ++x) {
                if (dense.decode(endo.apply(x)) != f.apply(dense.decode(x))) return;
            }
            s.push_back(pos);
        });
    std::vector<std::uint64_t> all;
    for (const auto& s : states) all.insert(all.end(), s.begin(), s.end());
    ASSERT_EQ(all.size(), 32U);
    for (std::uint64_t i = 0; i < all.size(); ++i) EXPECT_EQ(all[i], i);
}

TEST(DenseEngine, SumMismatchScan) {
    for (const auto& g : scoh::testing::all_groups_up_to(16)) {
        auto states = scan_endomorphisms<std::size_t>(g, 1 << 20, 1, [](std::size_t& bad, std::uint64_t, auto& endo) {
            endo.stab_index();
            if (endo.first_sum_mismatch(2) != 0) ++bad;
        });
        EXPECT_EQ(states[0], 0U) << g.to_string();
    }
}
