#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "quinrep/io.hpp"

using namespace quinrep;

TEST(LatticeSpec, Diagonal)
{
    EXPECT_EQ(parse_lattice_spec("1,1,1,3,7"), GramLattice::diagonal({1, 1, 1, 3, 7}));
    for (const char* bad : {"", "1,,2", "1,2,", "x", "1;2", "1, 2"})
        EXPECT_THROW(parse_lattice_spec(bad), std::invalid_argument) << bad;
    EXPECT_THROW(parse_lattice_spec("@/nonexistent/file.json"), std::invalid_argument);
}

TEST(LatticeSpec, GramFile)
{
    const std::string path = ::testing::TempDir() + "quinrep_gram.json";
    {
        std::ofstream out(path);
        out << R"({"gram": [[1,0,0,0],[0,2,1,0],[0,1,2,1],[0,0,1,3]]})";
    }
    const GramLattice k = parse_lattice_spec("@" + path);
    EXPECT_EQ(k.determinant(), 7);
    EXPECT_EQ(lattice_from_json(to_json(k)), k);
    std::remove(path.c_str());
}

TEST(Json, RoundTrips)
{
    const GramLattice d = GramLattice::diagonal({1, 1, 2, 3, 8});
    EXPECT_EQ(to_json(d).dump(), R"({"diag":[1,1,2,3,8]})");
    EXPECT_EQ(lattice_from_json(to_json(d)), d);
    EXPECT_EQ(form_from_json(to_json(Form{3, -1, 9})), (Form{3, -1, 9}));
    EXPECT_EQ(form_from_json(Json::parse("[5, 35]")), (Form{5, 0, 35}));
    EXPECT_THROW(form_from_json(Json::parse("[1]")), std::invalid_argument);
    EXPECT_THROW(lattice_from_json(Json::parse("[[1,0],[0]]")), std::invalid_argument);
}

TEST(Json, Results)
{
    const RepresentationOracle o(GramLattice::diagonal({1, 1, 1, 3}));
    const Json yes = to_json(o.represents(Form{3, 1, 9}));
    EXPECT_TRUE(yes.at("represented").get<bool>());
    EXPECT_EQ(yes.at("certificate").at("v1").size(), 4u);
    const Json no = to_json(o.represents(Form{5, 0, 35}));
    EXPECT_FALSE(no.at("represented").get<bool>());
    EXPECT_TRUE(no.contains("exhaustion"));
    EXPECT_EQ(no.at("exhaustion").at("norm_a"), 5);
}
