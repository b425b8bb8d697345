#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "fhlab/config.hpp"

using namespace fhlab;

TEST(Config, ParsesFullSymbol)
{
    const SymbolSpec s = parse_symbol(R"({"beta": [0.3, 0.2], "tau": {"form": "exp_laurent", "coeffs": [[1, 0.4, 0], [-1, -0.25, 0]]}})");
    EXPECT_EQ(s.beta, Complex(0.3, 0.2));
    EXPECT_EQ(s.tau.form, TauForm::exp_laurent);
    EXPECT_EQ(s.tau.poly.coeff(1), Complex(0.4));
    EXPECT_EQ(s.tau.poly.coeff(-1), Complex(-0.25));
}

TEST(Config, DefaultsAndShorthand)
{
    const SymbolSpec s = parse_symbol(R"({"beta": 1.3})");
    EXPECT_EQ(s.beta, Complex(1.3));
    EXPECT_TRUE(s.tau.is_identity());
    const SymbolSpec t = parse_symbol(R"({"beta": [0, 0], "tau": {"form": "laurent", "coeffs": [[0, 1.15, 0], [1, -0.5, 0], [-1, -0.3, 0]]}})");
    EXPECT_EQ(t.tau.form, TauForm::laurent);
    EXPECT_NEAR(std::abs(t.tau(1.0) - 0.35), 0.0, 1e-15);
}

TEST(Config, RoundTrip)
{
    const SymbolSpec s{Complex(0.125, -0.5), TauSpec::polynomial({{-2, Complex(0.1, 0.2)}, {0, 3.0}})};
    const SymbolSpec r = symbol_from_json(symbol_to_json(s));
    EXPECT_EQ(r.beta, s.beta);
    EXPECT_EQ(r.tau.form, s.tau.form);
    EXPECT_EQ(r.tau.poly.terms, s.tau.poly.terms);
}

TEST(Config, Rejections)
{
    EXPECT_THROW(parse_symbol("{"), config_error);
    EXPECT_THROW(parse_symbol("[1, 2]"), config_error);
    EXPECT_THROW(parse_symbol(R"({"tau": {}})"), config_error);
    EXPECT_THROW(parse_symbol(R"({"beta": [1]})"), config_error);
    EXPECT_THROW(parse_symbol(R"({"beta": 0.3, "gamma": 1})"), config_error);
    EXPECT_THROW(parse_symbol(R"({"beta": 0.3, "tau": {"form": "spline"}})"), config_error);
    EXPECT_THROW(parse_symbol(R"({"beta": 0.3, "tau": {"coeffs": [[0.5, 1, 0]]}})"), config_error);
    EXPECT_THROW(parse_symbol(R"({"beta": 0.3, "tau": {"coeffs": [[1, 1, 0], [1, 2, 0]]}})"), config_error);
    EXPECT_THROW(parse_symbol(R"({"beta": 0.3, "tau": {"form": "laurent", "coeffs": []}})"), config_error);
    EXPECT_THROW(load_symbol("/nonexistent/symbol.json"), config_error);
}

TEST(Config, LoadsFromFile)
{
    const std::string path = testing::TempDir() + "fhlab_symbol.json";
    std::ofstream(path) << R"({"beta": [0.45, 0]})";
    EXPECT_EQ(load_symbol(path).beta, Complex(0.45));
    std::remove(path.c_str());
    EXPECT_EQ(load_symbol(R"(  {"beta": 0.1})").beta, Complex(0.1));
}
