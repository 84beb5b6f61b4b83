#include <gtest/gtest.h>

#include <random>

#include "descriptor_gen.hpp"
#include "scoh/classify.hpp"
#include "scoh/descriptor_io.hpp"
#include "scoh/oracle.hpp"
#include "scoh/reference.hpp"

using namespace scoh;
using scoh::testgen::DescriptorGen;

namespace {

TorsionDescriptor tail_only(TailRule t, PrimeSelection sel = PrimeSelection::All) { return TorsionDescriptor({}, t, sel); }

TorsionDescriptor finite_torsion(const FinAbGroup& g) {
    std::map<std::uint64_t, std::vector<PrimePower>> by_prime;
    for (const auto& f : g.factors()) by_prime[f.p].push_back(f);
    std::map<std::uint64_t, FinAbGroup> parts;
    for (auto& [p, fs] : by_prime) parts.emplace(p, make_group(fs));
    return TorsionDescriptor(std::move(parts), TailRule::zero());
}

GroupDescriptor ex1() { return build_example(ExampleId::Ex1); }

}  // namespace

TEST(TorsionIsScoh, Examples) {
    auto a = torsion_is_scoh(tail_only(TailRule::constant(1, 1)));
    EXPECT_EQ(a.answer, Answer::Yes);
    EXPECT_EQ(a.fact(rules::kTorsionOrderBound, "e"), "1");
    EXPECT_EQ(torsion_is_scoh(tail_only(TailRule::linear())).answer, Answer::No);
    auto c = torsion_is_scoh(TorsionDescriptor({{2, make_group({{2, 2}, {2, 1}})}}, TailRule::zero()));
    EXPECT_EQ(c.answer, Answer::Yes);
    EXPECT_EQ(c.fact(rules::kTorsionOrderBound, "e"), "3");
}

TEST(TorsionIsScoh, BoundIsMaxOfExplicitAndTail) {
    TorsionDescriptor t({{3, make_group({{3, 1}})}, {7, make_group({{7, 2}, {7, 2}})}}, TailRule::constant(2, 1));
    EXPECT_EQ(t.exponent_bound(), std::optional<std::uint64_t>(4));
    TorsionDescriptor u({{2, make_group({{2, 1}})}}, TailRule::constant(3, 2));
    EXPECT_EQ(u.exponent_bound(), std::optional<std::uint64_t>(6));
}

TEST(TorsionDescriptor, Components) {
    auto even = tail_only(TailRule::linear(), PrimeSelection::EvenPositions);
    EXPECT_EQ(even.component(3), make_group({{3, 1}}));
    EXPECT_EQ(even.component(7), make_group({{7, 2}}));
    EXPECT_TRUE(even.component(5).is_zero());
    EXPECT_EQ(tail_only(TailRule::constant(2, 3)).component(5), make_group({{5, 2}, {5, 2}, {5, 2}}));
    EXPECT_THROW(TorsionDescriptor({{2, make_group({{3, 1}})}}, TailRule::zero()), ValidationError);
    EXPECT_THROW(TorsionDescriptor({{2, FinAbGroup()}}, TailRule::zero()), ValidationError);
    EXPECT_THROW(TorsionDescriptor({{3, make_group({{3, 1}})}}, TailRule::zero(), PrimeSelection::OddPositions),
                 ValidationError);
}

TEST(DivisibleIsScoh, Examples) {
    auto a = divisible_is_scoh({2, 1});
    EXPECT_EQ(a.answer, Answer::Yes);
    EXPECT_EQ(a.fact(rules::kDivisibleRankBound, "n0"), "2");
    EXPECT_EQ(divisible_is_scoh({kInfinite, 0}).answer, Answer::No);
    EXPECT_EQ(divisible_is_scoh({0, kInfinite}).answer, Answer::No);
}

TEST(TorsionFreeIsScoh, Examples) {
    EXPECT_EQ(torsionfree_is_scoh(true, 1).answer, Answer::Yes);
    EXPECT_EQ(torsionfree_is_scoh(false, 1).answer, Answer::No);
    EXPECT_EQ(torsionfree_is_scoh(true, kInfinite).answer, Answer::No);
}

TEST(HomTrivial, Examples) {
    auto reduced_t = GroupDescriptor::torsion(tail_only(TailRule::constant(1, 1)), FlagSet{.reduced = true});
    EXPECT_EQ(hom_trivial(GroupDescriptor::divisible({1, 0}), reduced_t).answer, Answer::Yes);

    auto z2 = GroupDescriptor::torsion(TorsionDescriptor({{2, make_group({{2, 1}})}}, TailRule::zero()));
    auto v = hom_trivial(z2, z2);
    EXPECT_EQ(v.answer, Answer::No);
    EXPECT_EQ(v.fact(rules::kHomWitness, "prime"), "2");
    EXPECT_EQ(v.fact(rules::kHomWitness, "multiplier_exponent"), "0");

    EXPECT_EQ(hom_trivial(ex1(), ex1()).answer, Answer::Unknown);
}

TEST(HomTrivial, WitnessMapIsAWellDefinedNonzeroHom) {
    // Z(2) -> Z(8): generator to 4.
    auto src = GroupDescriptor::torsion(TorsionDescriptor({{2, make_group({{2, 1}})}}, TailRule::zero()));
    auto dst = GroupDescriptor::torsion(TorsionDescriptor({{2, make_group({{2, 3}})}}, TailRule::zero()));
    auto v = hom_trivial(src, dst);
    ASSERT_EQ(v.answer, Answer::No);
    EXPECT_EQ(v.fact(rules::kHomWitness, "multiplier_exponent"), "2");
    auto f = validate_hom({{4}}, make_group({{2, 1}}), make_group({{2, 3}}));
    EXPECT_FALSE(f == Homomorphism::zero(f.source(), f.target()));
}

TEST(HomTrivial, DisjointTorsion) {
    auto odd = GroupDescriptor::torsion(tail_only(TailRule::linear(), PrimeSelection::OddPositions));
    auto even = GroupDescriptor::torsion(tail_only(TailRule::constant(1), PrimeSelection::EvenPositions));
    EXPECT_EQ(hom_trivial(odd, even).answer, Answer::Yes);
    EXPECT_EQ(hom_trivial(even, odd).answer, Answer::Yes);
    auto z3 = GroupDescriptor::torsion(TorsionDescriptor({{3, make_group({{3, 1}})}}, TailRule::zero()));
    EXPECT_EQ(hom_trivial(z3, odd).answer, Answer::Yes);
    EXPECT_EQ(hom_trivial(z3, even).answer, Answer::No);
    // Torsion into a torsion-free group.
    EXPECT_EQ(hom_trivial(z3, GroupDescriptor::torsion_free(false, 2)).answer, Answer::Yes);
}

TEST(HomTrivial, AgreesWithFiniteEnumeration) {
    // For finite torsion groups, hom_trivial must never contradict the
    // count of homomorphisms.
    auto groups = abelian_groups_up_to(12);
    for (const auto& b : groups) {
        for (const auto& a : groups) {
            auto v = hom_trivial(GroupDescriptor::torsion(finite_torsion(b)), GroupDescriptor::torsion(finite_torsion(a)));
            Integer homs = 1;
            for (const auto& oi : a.orders()) {
                for (const auto& oj : b.orders()) homs *= boost::multiprecision::gcd(oi, oj);
            }
            ASSERT_NE(v.answer, Answer::Unknown);
            EXPECT_EQ(v.answer == Answer::Yes, homs == 1) << b.to_string() << " -> " << a.to_string();
        }
    }
}

TEST(GroupIsScoh, Examples) {
    auto ex0 = build_example(ExampleId::Ex0);
    auto v0 = group_is_scoh(ex0);
    EXPECT_EQ(v0.answer, Answer::Yes);
    EXPECT_EQ(v0.certificate.back().rule, rules::kProductOfFinite);
    EXPECT_EQ(group_is_scoh(ex1()).answer, Answer::Yes);
    auto v3 = group_is_scoh(build_example(ExampleId::Ex3));
    EXPECT_EQ(v3.answer, Answer::No);
}

TEST(GroupIsScoh, ExampleVerdictTables) {
    for (auto id : {ExampleId::Ex0, ExampleId::Ex1, ExampleId::Ex3}) {
        auto d = build_example(id);
        for (const auto& ex : expected_verdicts(id)) {
            Answer got = ex.key == "group"      ? group_is_scoh(d).answer
                         : ex.key == "torsion"  ? torsion_verdict(d).answer
                         : ex.key == "quotient" ? quotient_verdict(d).answer
                                                : is_uniformly_scoh_desc(d).answer;
            EXPECT_EQ(got, ex.answer) << to_string(id) << " " << ex.key;
        }
    }
}

TEST(GroupIsScoh, ProductWithUnboundedTorsionIsNot) {
    EXPECT_EQ(group_is_scoh(GroupDescriptor::product(tail_only(TailRule::linear()))).answer, Answer::No);
}

TEST(GroupIsScoh, OpenSquareStaysUnknown) {
    auto v = group_is_scoh(GroupDescriptor::sum(ex1(), ex1()));
    EXPECT_EQ(v.answer, Answer::Unknown);
    EXPECT_FALSE(v.reason.empty());
}

TEST(GroupIsScoh, TorsionAndQuotientRule) {
    // Neither orientation of Hom vanishes by rule, both summands Sco-H,
    // torsion and quotient Sco-H.
    auto a = GroupDescriptor::ering(SpGroupSpec(PrimeSelection::All, TailRule::constant(2)));
    auto b = GroupDescriptor::ering(SpGroupSpec(PrimeSelection::All, TailRule::constant(1)));
    auto v = group_is_scoh(GroupDescriptor::sum(a, b));
    EXPECT_EQ(v.answer, Answer::Yes);
    EXPECT_EQ(v.certificate.back().rule, rules::kTorsionAndQuotient);
}

TEST(GroupIsScoh, AdjustedCotorsionRule) {
    // The quotient has infinite rank, so only the cotorsion rule can decide.
    FlagSet f{.reduced = true, .adjusted_cotorsion = true};
    auto p1 = GroupDescriptor::product(tail_only(TailRule::constant(1)));
    auto p2 = GroupDescriptor::product(tail_only(TailRule::constant(2)));
    auto d = GroupDescriptor::sum(p1, p2, f);
    ASSERT_EQ(quotient_verdict(d).answer, Answer::No);
    auto v = group_is_scoh(d);
    EXPECT_EQ(v.answer, Answer::Yes);
    EXPECT_EQ(v.certificate.back().rule, rules::kReducedAdjustedCotorsion);
    EXPECT_THROW(GroupDescriptor::ering(SpGroupSpec(PrimeSelection::All, TailRule::linear()), f), ValidationError);
}

TEST(FlagValidation, RejectsContradictions) {
    EXPECT_THROW(GroupDescriptor::divisible({1, 0}, FlagSet{.reduced = true}), ValidationError);
    EXPECT_NO_THROW(GroupDescriptor::divisible({0, 0}, FlagSet{.reduced = true}));
    EXPECT_THROW(GroupDescriptor::torsion_free(true, 2, FlagSet{.reduced = true}), ValidationError);
    EXPECT_THROW(GroupDescriptor::sum(GroupDescriptor::divisible({1, 0}), ex1(), FlagSet{.reduced = true}),
                 ValidationError);
    EXPECT_THROW(GroupDescriptor::torsion(tail_only(TailRule::constant(1)), FlagSet{.cotorsion = true}),
                 ValidationError);
    EXPECT_NO_THROW(GroupDescriptor::product(tail_only(TailRule::constant(1)), FlagSet{.cotorsion = true}));
}

TEST(Uniform, Examples) {
    EXPECT_EQ(is_uniformly_scoh_desc(build_example(ExampleId::Ex0)).answer, Answer::Yes);
    EXPECT_EQ(is_uniformly_scoh_desc(ex1()).answer, Answer::No);
    EXPECT_EQ(is_uniformly_scoh_desc(GroupDescriptor::divisible({3, 2})).answer, Answer::Yes);
    EXPECT_EQ(is_uniformly_scoh_desc(GroupDescriptor::torsion_free(false, 1)).answer, Answer::No);
    EXPECT_EQ(is_uniformly_scoh_desc(GroupDescriptor::sum(ex1(), ex1())).answer, Answer::Unknown);
}

TEST(ScohBound, Examples) {
    EXPECT_EQ(scoh_bound(GroupDescriptor::torsion(tail_only(TailRule::constant(1, 1)))), 1U);
    EXPECT_EQ(scoh_bound(GroupDescriptor::torsion_free(true, 3)), 3U);
    // Z(4) (+) Z(27): bounds 2 and 3, no homs either way.
    auto a = GroupDescriptor::torsion(TorsionDescriptor({{2, make_group({{2, 2}})}}, TailRule::zero()));
    auto b = GroupDescriptor::torsion(TorsionDescriptor({{3, make_group({{3, 3}})}}, TailRule::zero()));
    EXPECT_EQ(scoh_bound(GroupDescriptor::sum(a, b)), 5U);
    EXPECT_EQ(scoh_bound(GroupDescriptor::divisible({3, 2})), 6U);
    EXPECT_EQ(scoh_bound(build_example(ExampleId::Ex0)), 1U);
    EXPECT_EQ(scoh_bound(GroupDescriptor::ering(SpGroupSpec(PrimeSelection::All, TailRule::constant(4)))), 4U);
    EXPECT_THROW(scoh_bound(ex1()), PreconditionError);
}

TEST(NecessityCardBound, Examples) {
    EXPECT_EQ(necessity_card_bound(0, 2), 2);
    EXPECT_EQ(necessity_card_bound(2, 2), 512);
    EXPECT_EQ(necessity_card_bound(1, 3), 81);
}

TEST(CotorsionInfer, Examples) {
    auto p = GroupDescriptor::product(tail_only(TailRule::constant(1, 1)), FlagSet{.cotorsion = true});
    auto v = cotorsion_infer(p);
    EXPECT_EQ(v.answer, Answer::Yes);
    EXPECT_EQ(v.certificate.front().rule, rules::kProductCompact);
    EXPECT_EQ(replay(v), Answer::Yes);

    EXPECT_THROW(cotorsion_infer(build_example(ExampleId::Ex0)), PreconditionError);

    auto s = GroupDescriptor::sum(GroupDescriptor::divisible({1, 0}),
                                  GroupDescriptor::product(tail_only(TailRule::constant(1, 1))),
                                  FlagSet{.cotorsion = true});
    ASSERT_EQ(group_is_scoh(s).answer, Answer::Yes);
    EXPECT_EQ(cotorsion_infer(s).answer, Answer::Yes);

    auto bad = GroupDescriptor::product(tail_only(TailRule::linear()), FlagSet{.cotorsion = true});
    EXPECT_THROW(cotorsion_infer(bad), PreconditionError);
}

// ---------------------------------------------------------------------------
// Properties

TEST(Properties, FiniteDescriptorsAreSoundAgainstOracle) {
    for (const auto& g : abelian_groups_up_to(32)) {
        auto d = GroupDescriptor::torsion(finite_torsion(g));
        ASSERT_EQ(group_is_scoh(d).answer, Answer::Yes);
        auto bound = scoh_bound(d);
        ASSERT_TRUE(bound.has_value());
        EXPECT_GE(*bound, max_stab_index(g).index) << g.to_string();
    }
}

TEST(Properties, CertificatesReplay) {
    DescriptorGen gen{std::mt19937_64(11)};
    for (int trial = 0; trial < 400; ++trial) {
        auto d = gen.any();
        for (const auto& v : {group_is_scoh(d), torsion_verdict(d), quotient_verdict(d), is_uniformly_scoh_desc(d)}) {
            if (v.definite()) {
                ASSERT_FALSE(v.certificate.empty());
            } else {
                ASSERT_FALSE(v.reason.empty());
            }
            ASSERT_EQ(replay(v), v.answer);
        }
    }
}

TEST(Properties, TamperedCertificateFailsReplay) {
    auto v = group_is_scoh(build_example(ExampleId::Ex3));
    ASSERT_EQ(v.answer, Answer::No);
    auto flipped = v;
    flipped.answer = Answer::Yes;
    flipped.certificate.back().conclusion = Answer::Yes;
    EXPECT_THROW(replay(flipped), Error);

    auto t = torsion_is_scoh(tail_only(TailRule::linear()));
    t.certificate.back().facts = {{"tail", "const"}};
    EXPECT_THROW(replay(t), Error);
}

TEST(Properties, TorsionAndQuotientYesImpliesYes) {
    DescriptorGen gen{std::mt19937_64(12)};
    int hits = 0;
    for (int trial = 0; trial < 600; ++trial) {
        auto d = gen.any();
        if (!d.as<SumShape>() && !d.as<ERingShape>()) continue;
        if (torsion_verdict(d).answer == Answer::Yes && quotient_verdict(d).answer == Answer::Yes) {
            ++hits;
            EXPECT_EQ(group_is_scoh(d).answer, Answer::Yes) << print_descriptor(d);
        }
    }
    EXPECT_GT(hits, 10);
}

TEST(Properties, SummandClosure) {
    DescriptorGen gen{std::mt19937_64(13)};
    for (int trial = 0; trial < 600; ++trial) {
        auto d = gen.any();
        auto s = d.as<SumShape>();
        if (!s) continue;
        if (group_is_scoh(*s->left).answer == Answer::No || group_is_scoh(*s->right).answer == Answer::No) {
            EXPECT_EQ(group_is_scoh(d).answer, Answer::No);
        }
    }
}

TEST(Properties, UniformImpliesScoh) {
    DescriptorGen gen{std::mt19937_64(14)};
    for (int trial = 0; trial < 600; ++trial) {
        auto d = gen.any();
        if (is_uniformly_scoh_desc(d).answer == Answer::Yes) {
            EXPECT_EQ(group_is_scoh(d).answer, Answer::Yes);
            EXPECT_NO_THROW(scoh_bound(d));
        } else {
            EXPECT_THROW(scoh_bound(d), PreconditionError);
        }
    }
}

TEST(Properties, NecessityCardBoundConsistency) {
    for (const auto& g : p_groups_up_to(2, 32)) {
        auto m = max_stab_index(g).index;
        for (std::uint64_t bound : {0U, 1U}) {
            if (g.cardinality() > necessity_card_bound(bound, 2)) {
                EXPECT_GT(m, bound) << g.to_string();
            }
        }
    }
}
