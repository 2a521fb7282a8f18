#include <gtest/gtest.h>

#include <random>

#include "quinrep/escalation.hpp"

using namespace quinrep;

namespace {

const Escalator& t2()
{
    static const Escalator e(EscalationConfig::theorem2());
    return e;
}

} // namespace

TEST(Config, Lattices)
{
    EXPECT_EQ(EscalationConfig::theorem2().lattice, GramLattice::diagonal({1, 1, 1, 3, 7}));
    EXPECT_EQ(EscalationConfig::theorem3a().lattice, GramLattice::diagonal({1, 1, 2, 3, 5}));
    EXPECT_EQ(EscalationConfig::theorem3b().lattice, GramLattice::diagonal({1, 1, 2, 3, 8}));
    EXPECT_EQ(EscalationConfig::by_id("T3a").id, EscalationConfig::theorem3a().id);
    EXPECT_EQ(EscalationConfig::by_id("t2").id, EscalationConfig::theorem2().id);
    EXPECT_THROW(EscalationConfig::by_id("t4"), std::invalid_argument);
    EXPECT_EQ(auxiliary_k().determinant(), 7);
    EXPECT_EQ(route_name(Route::st_escalation), "st-escalation");
}

TEST(FindSt, WorkedExample)
{
    const auto choice = find_st(Form{34, 7, 35}, EscalationConfig::theorem2().search, RuleBook::load());
    ASSERT_TRUE(choice);
    EXPECT_EQ(choice->s, 2);
    EXPECT_EQ(choice->t, 1);
    EXPECT_EQ(choice->shifted, (Form{6, -7, 28}));
}

TEST(FindSt, ChoicesSatisfyEveryCondition)
{
    const RuleBook book = RuleBook::load();
    for (const EscalationConfig& cfg :
         {EscalationConfig::theorem2(), EscalationConfig::theorem3a(), EscalationConfig::theorem3b()}) {
        int found = 0;
        for (Int a = 30; a <= 60; ++a)
            for (Int c = a; c <= 60; c += 3)
                for (Int b = 0; 2 * b <= a; b += 2) {
                    const Form f{a, b, c};
                    const auto choice = find_st(f, cfg.search, book);
                    if (!choice)
                        continue;
                    ++found;
                    EXPECT_EQ(choice->shifted, transform_st(f, cfg.search.n, choice->s, choice->t));
                    EXPECT_TRUE(is_positive_definite(choice->shifted));
                    EXPECT_EQ(choice->rules.size(), cfg.search.tables.size());
                    for (std::size_t i = 0; i < choice->rules.size(); ++i)
                        EXPECT_FALSE(choice->rules[i].empty());
                }
        EXPECT_GT(found, 100) << cfg.id;
    }
}

TEST(Decide, Examples)
{
    const Decision small = t2().decide(Form{10, 5, 11});
    EXPECT_TRUE(small.represented);
    EXPECT_EQ(small.route, Route::direct_oracle);
    ASSERT_TRUE(small.certificate);

    const Decision miss = t2().decide(Form{10, 5, 47});
    EXPECT_FALSE(miss.represented);
    EXPECT_TRUE(miss.proof);

    const Decision st = t2().decide(Form{34, 7, 35});
    EXPECT_TRUE(st.represented);
    EXPECT_EQ(st.route, Route::st_escalation);

    EXPECT_FALSE(decide(Form{25, 3, 25}, EscalationConfig::theorem3b()).represented);
    EXPECT_THROW(t2().decide(Form{1, 2, 1}), std::invalid_argument);
}

TEST(Decide, ScaledRoute)
{
    for (const Form& f : {Form{42, 7, 77}, Form{56, 21, 70}, Form{70, 0, 84}}) {
        const Decision d = t2().decide(f);
        EXPECT_TRUE(d.represented) << f;
        EXPECT_EQ(d.route, Route::scaled_k_route) << f;
        ASSERT_TRUE(d.certificate);
        EXPECT_TRUE(verify_certificate(t2().config().lattice, f, *d.certificate));
    }
    // K-exceptions scaled by 7 fall back to the oracle on L.
    for (const Form& f : {Form{35, 0, 427}, Form{63, 14, 91}, Form{7, 0, 7}}) {
        const Decision d = t2().decide(f);
        EXPECT_EQ(d.route, Route::direct_oracle) << f;
        EXPECT_EQ(d.represented, t2().oracle().is_represented(f)) << f;
    }
}

TEST(Decide, AgreesWithOracleOnUnreducedInputs)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<Int> e(-3, 3);
    for (const EscalationConfig& cfg :
         {EscalationConfig::theorem2(), EscalationConfig::theorem3a(), EscalationConfig::theorem3b()}) {
        const Escalator esc(cfg);
        for (int i = 0; i < 60; ++i) {
            const Form base{30 + static_cast<Int>(rng() % 40), static_cast<Int>(rng() % 15),
                            70 + static_cast<Int>(rng() % 50)};
            Transform2<Int> t;
            do
                t << e(rng), e(rng), e(rng), e(rng);
            while (std::abs(t(0, 0) * t(1, 1) - t(0, 1) * t(1, 0)) != 1);
            const Form f = congruent_form(base, t);
            const Decision d = esc.decide(f);
            EXPECT_EQ(d.represented, esc.oracle().is_represented(base)) << cfg.id << " " << f;
            EXPECT_EQ(d.reduced, reduced(f));
            if (d.certificate) {
                EXPECT_TRUE(verify_certificate(cfg.lattice, f, *d.certificate)) << f;
            }
        }
    }
}

TEST(Embedding, FixedEmbeddingIsExact)
{
    const EscalationConfig cfg = EscalationConfig::theorem2();
    const Embedding& e = t2().fixed_embedding();
    const Matrix g = GramLattice::orthogonal_sum(auxiliary_k(), GramLattice::diagonal({21})).scaled(7).gram();
    EXPECT_TRUE(verify_embedding(cfg.lattice, g, e));
    EXPECT_EQ(e.map.transpose() * cfg.lattice.gram() * e.map, g);
    EXPECT_EQ(verify_fixed_embedding(cfg).map, e.map);
    EXPECT_THROW(Escalator(EscalationConfig::theorem3a()).fixed_embedding(), std::logic_error);
}

TEST(Embedding, SmallSearches)
{
    const GramLattice l = GramLattice::diagonal({1, 1, 1, 3, 7});
    const RepresentationOracle oracle(l);
    const Matrix id = Matrix::Identity(5, 5);
    const auto self = find_embedding(oracle, l.gram());
    ASSERT_TRUE(self);
    EXPECT_TRUE(verify_embedding(l, l.gram(), *self));
    Matrix seven(1, 1);
    seven << 7;
    const auto e7 = find_embedding(oracle, seven);
    ASSERT_TRUE(e7);
    EXPECT_EQ(l.q(e7->map.col(0)), 7);
    Embedding bad{id};
    bad.map(0, 0) = 2;
    EXPECT_FALSE(verify_embedding(l, l.gram(), bad));
}
