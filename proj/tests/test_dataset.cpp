#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "fortrend/dataset.hpp"
#include "fortrend/errors.hpp"

using namespace fortrend;

namespace {

const char* kSampleCsv =
    "name,year,velocity_mps,range_m,mass_kg,rate_per_min\n"
    "# comment lines are ignored\n"
    "M27 assault rifle,2008,900,550,0.0041,700\n"
    "Longbow,1180,47,75,0.1023,5\n";

} // namespace

TEST_CASE("builtin sample matches the published example rows") {
    Dataset d = builtin_sample();
    REQUIRE(d.size() == 8);
    const auto& recs = d.records();
    CHECK(recs[0].name == "Longbow");
    CHECK(recs[0].year == 1180);
    CHECK(recs[0].attributes == std::vector<double>{47, 75, 0.1023, 5});
    const auto& handgonne = recs[2];
    CHECK(handgonne.name == "Handgonne");
    CHECK(handgonne.year == 1350);
    CHECK(handgonne.attributes == std::vector<double>{149, 25, 0.0380, 0.5});
    const auto& m27 = recs[7];
    CHECK(m27.name == "M27 assault rifle");
    CHECK(m27.year == 2008);
    CHECK(m27.attributes == std::vector<double>{900, 550, 0.0041, 700});
    for (std::size_t i = 1; i < recs.size(); ++i)
        CHECK(recs[i - 1].year <= recs[i].year);
}

TEST_CASE("parse_csv sorts rows and skips comments") {
    Dataset d = parse_csv(kSampleCsv, AttributeSchema::small_arms());
    REQUIRE(d.size() == 2);
    CHECK(d.records()[0].name == "Longbow");
    CHECK(d.records()[1].name == "M27 assault rifle");
}

TEST_CASE("empty file with valid header yields an empty dataset") {
    Dataset d = parse_csv("name,year,velocity_mps,range_m,mass_kg,rate_per_min\n",
                          AttributeSchema::small_arms());
    CHECK(d.empty());
}

TEST_CASE("schema errors name the offending column") {
    auto schema = AttributeSchema::small_arms();
    CHECK_THROWS_WITH_AS(
        parse_csv("name,year,velocity_mps,range_m,mass_kg\nX,1500,1,1,1\n",
                  schema),
        doctest::Contains("rate_per_min"), SchemaError);
    CHECK_THROWS_WITH_AS(
        parse_csv("name,year,velocity_mps,range_m,mass_kg,rate_per_min,extra\n",
                  schema),
        doctest::Contains("extra"), SchemaError);
    CHECK_THROWS_AS(
        parse_csv("name,year,velocity_mps,mass_kg,range_m,rate_per_min\n",
                  schema),
        SchemaError);
}

TEST_CASE("non-positive attribute is rejected, naming row and field") {
    std::string csv =
        "name,year,velocity_mps,range_m,mass_kg,rate_per_min\n"
        "Bad,1500,100,50,0.0,1\n";
    CHECK_THROWS_WITH_AS(parse_csv(csv, AttributeSchema::small_arms()),
                         doctest::Contains("mass_kg"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_csv(csv, AttributeSchema::small_arms()),
                         doctest::Contains("Bad"), ValidationError);
}

TEST_CASE("unparseable number reports the line number") {
    std::string csv =
        "name,year,velocity_mps,range_m,mass_kg,rate_per_min\n"
        "Ok,1500,100,50,0.01,1\n"
        "Bad,15x0,100,50,0.01,1\n";
    CHECK_THROWS_WITH_AS(parse_csv(csv, AttributeSchema::small_arms(), "f.csv"),
                         doctest::Contains("f.csv:3"), ParseError);
}

TEST_CASE("filter_years is inclusive on both ends") {
    Dataset d = builtin_sample();
    CHECK(filter_years(d, 1000, 2018).size() == 8);
    Dataset point = filter_years(d, 1180, 1180);
    REQUIRE(point.size() == 1);
    CHECK(point.records()[0].name == "Longbow");
    // truncation-at-or-before used by the backtest protocol
    Dataset upto1800 =
        filter_years(d, -std::numeric_limits<double>::infinity(), 1800);
    REQUIRE(upto1800.size() == 6);
    CHECK(upto1800.records().back().name == "Brown Bess musket");
}

TEST_CASE("filter_years over the whole line is the identity") {
    Dataset d = builtin_sample();
    double inf = std::numeric_limits<double>::infinity();
    Dataset same = filter_years(d, -inf, inf);
    REQUIRE(same.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(same.records()[i].name == d.records()[i].name);
        CHECK(same.records()[i].attributes == d.records()[i].attributes);
    }
    CHECK_THROWS_AS(filter_years(d, 2000, 1000), ValidationError);
}

TEST_CASE("csv round-trip preserves every field at full precision") {
    // randomized datasets; the writer/parser pair must be lossless
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> year(800.0, 2100.0);
    std::uniform_real_distribution<double> mag(-6.0, 6.0);
    auto schema = AttributeSchema::small_arms();
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<TechRecord> recs;
        for (int i = 0; i < 15; ++i) {
            TechRecord r;
            r.name = "item-" + std::to_string(i);
            r.year = year(rng);
            for (int j = 0; j < 4; ++j)
                r.attributes.push_back(std::pow(10.0, mag(rng)));
            recs.push_back(r);
        }
        Dataset d(schema, recs);
        Dataset back = parse_csv(to_csv(d), schema);
        REQUIRE(back.size() == d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(back.records()[i].name == d.records()[i].name);
            CHECK(back.records()[i].year == d.records()[i].year);
            CHECK(back.records()[i].attributes == d.records()[i].attributes);
        }
    }
}

TEST_CASE("constructed datasets enforce positivity and finiteness") {
    auto schema = AttributeSchema::small_arms();
    CHECK_THROWS_AS(Dataset(schema, {{"x", 1500, {1, 2, -3, 4}}}),
                    ValidationError);
    CHECK_THROWS_AS(Dataset(schema, {{"x", 1500, {1, 2, 3}}}), ValidationError);
    CHECK_THROWS_AS(
        Dataset(schema, {{"x", std::nan(""), {1, 2, 3, 4}}}), ValidationError);
    Dataset sample = builtin_sample();
    for (const auto& r : sample.records())
        for (double v : r.attributes) CHECK(v > 0.0);
}

TEST_CASE("duplicate years are kept as independent points") {
    auto schema = AttributeSchema::small_arms();
    Dataset d(schema, {{"a", 1500, {1, 1, 1, 1}}, {"b", 1500, {2, 2, 2, 2}}});
    CHECK(d.size() == 2);
}

TEST_CASE("schema validation rejects duplicates and empties") {
    CHECK_THROWS_AS((AttributeSchema{{"a", "a"}, {}}.validate()), SchemaError);
    CHECK_THROWS_AS((AttributeSchema{{"a", ""}, {}}.validate()), SchemaError);
    CHECK_THROWS_AS((AttributeSchema{{}, {}}.validate()), SchemaError);
}
