#include <gtest/gtest.h>

#include "quinrep/local.hpp"
#include "quinrep/tables.hpp"

using namespace quinrep;

namespace {

const RuleBook& book()
{
    static const RuleBook b = RuleBook::load();
    return b;
}

} // namespace

TEST(RuleBook, LoadsAllTables)
{
    EXPECT_EQ(book().version(), 1);
    std::vector<std::string> ids;
    for (const RuleTable& t : book().tables())
        ids.push_back(t.id);
    EXPECT_EQ(ids, (std::vector<std::string>{"Thm2-Z2", "Thm2-Z3", "Thm3-Z3", "Thm3-Z2-n5", "Thm3-Z2-n8", "Step3-K-Z2"}));
    EXPECT_EQ(book().table("Thm2-Z2").rules.size(), 8u);
    EXPECT_EQ(book().table("Thm2-Z3").rules.size(), 5u);
    EXPECT_EQ(book().table("Thm3-Z2-n8").rules.size(), 11u);
    EXPECT_TRUE(book().table("Thm2-Z2").assumes_maximal);
    EXPECT_FALSE(book().table("Thm2-Z3").assumes_maximal);
    EXPECT_THROW(book().table("nope"), std::out_of_range);
}

TEST(RuleBook, CheckRuleExamples)
{
    EXPECT_TRUE(book().check_rule("Thm2-Z2", Form{3, 0, 5}, 1, 1));
    EXPECT_TRUE(book().check_rule("Thm2-Z3", Form{2, 0, 2}, 0, 3));
    EXPECT_FALSE(book().check_rule("Thm2-Z2", Form{1, 0, 2}, 1, 0));
    EXPECT_TRUE(book().check_rule("Thm2-Z2", Form{1, 0, 1}, 0, 0));
    EXPECT_THROW(book().check_rule("Thm9", Form{1, 0, 1}, 0, 0), std::out_of_range);
}

TEST(RuleBook, RejectsMalformedInput)
{
    EXPECT_ANY_THROW(RuleBook::from_json_text("not json"));
    EXPECT_ANY_THROW(RuleBook::from_json_text(R"({"format":"quinrep-local-tables","version":2,"tables":[]})"));
    EXPECT_ANY_THROW(RuleBook::from_json_text(
        R"({"format":"quinrep-local-tables","version":1,"tables":[{"id":"x","prime":2,"lattice":[1,1,1,3],"n":7,"assumes":"none","rules":[{"label":"1","any_of":[[{"vars":["q"],"mod":4,"in":[1]}]]}]}]})"));
}

TEST(Coverage, CompleteUnderTheirAssumptions)
{
    for (CoverageFilter f : {CoverageFilter::all, CoverageFilter::primitive, CoverageFilter::maximal}) {
        EXPECT_TRUE(book().coverage_check("Thm2-Z3", f).empty());
        EXPECT_TRUE(book().coverage_check("Thm3-Z3", f).empty());
    }
    EXPECT_TRUE(book().coverage_check("Thm2-Z2", CoverageFilter::maximal).empty());
    EXPECT_TRUE(book().coverage_check("Thm3-Z2-n5", CoverageFilter::maximal).empty());
    EXPECT_TRUE(book().coverage_check("Step3-K-Z2", CoverageFilter::maximal).empty());
    EXPECT_TRUE(book().coverage_check("Thm3-Z2-n8", CoverageFilter::maximal, true).empty());
    EXPECT_EQ(book().coverage_check("Thm3-Z2-n8", CoverageFilter::maximal).size(), 48u);
}

TEST(Coverage, ScalePrimitiveGapIsTheNonMaximalClass)
{
    const auto gaps = book().coverage_check("Thm2-Z2", CoverageFilter::primitive);
    ASSERT_EQ(gaps.size(), 4u);
    for (const ResidueClass& g : gaps) {
        EXPECT_EQ(g.a % 4, 3);
        EXPECT_EQ(g.c % 4, 3);
        EXPECT_EQ(g.b % 2, 1);
        EXPECT_FALSE(is_maximal(Form{g.a, g.b, g.c}, 2));
    }
}

TEST(Rules, SoundAgainstLocalEngine)
{
    struct Case {
        const char* id;
        GramLattice m;
        Int n;
    };
    const GramLattice m7 = GramLattice::diagonal({1, 1, 1, 3});
    const GramLattice m58 = GramLattice::diagonal({1, 1, 2, 3});
    Matrix k(4, 4);
    k << 1, 0, 0, 0, 0, 2, 1, 0, 0, 1, 2, 1, 0, 0, 1, 3;
    const std::vector<Case> cases{{"Thm2-Z2", m7, 7},     {"Thm2-Z3", m7, 7},     {"Thm3-Z3", m58, 5},
                                  {"Thm3-Z3", m58, 8},    {"Thm3-Z2-n5", m58, 5}, {"Thm3-Z2-n8", m58, 8},
                                  {"Step3-K-Z2", GramLattice(k), 21}};
    for (const Case& cs : cases) {
        const RuleTable& table = book().table(cs.id);
        const LiftingSearch lift(cs.m, table.prime);
        for (Int a = 1; a <= 14; ++a)
            for (Int c = 1; c <= 14; ++c)
                for (Int b = -6; b <= 6; ++b) {
                    const Form f{a, b, c};
                    if (table.assumes_maximal && !is_maximal(f, table.prime))
                        continue;
                    for (Int s = 0; s <= 2; ++s)
                        for (Int t = -2; t <= 2; ++t) {
                            if (!table.match(f, s, t))
                                continue;
                            const Form g = transform_st(f, cs.n, s, t);
                            if (discriminant(g) == 0)
                                continue;
                            EXPECT_TRUE(lift.represents(g)) << cs.id << " " << f << " s=" << s << " t=" << t;
                        }
                }
    }
}
