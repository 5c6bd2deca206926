#include <gtest/gtest.h>

#include "lipfree/io.hpp"
#include "lipfree/lipfree.hpp"

using namespace lipfree;
using Q = Rational;
using io::Json;

namespace {

std::string location_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ParseError& e) {
        return e.location();
    }
    return "<no error>";
}

}  // namespace

TEST(Io, SpaceRoundTrip) {
    Rng rng(211);
    auto s = random_space<Q>(6, rng);
    auto j = io::to_json(*s);
    auto back = io::space_from_json<Q>(Json::parse(j.dump()));
    EXPECT_TRUE(back->same_as(*s));
    EXPECT_EQ(io::space_hash(*back), io::space_hash(*s));
    EXPECT_EQ(io::space_hash(*s).rfind("fnv1a64:", 0), 0u);
    EXPECT_NE(io::space_hash(*s), io::space_hash(*random_space<Q>(6, rng)));
}

TEST(Io, FunctionRoundTripByHashAndInline) {
    auto s = build_example1_space<Q>(5);
    Rng rng(223);
    auto f = random_unit_function(s, rng);
    auto by_hash = io::lip_function_from_json<Q>(io::to_json(f), s);
    EXPECT_EQ(by_hash, f);
    auto inl = io::lip_function_from_json<Q>(io::to_json(f, true), nullptr);
    EXPECT_EQ(inl.values(), f.values());
    EXPECT_THROW(io::lip_function_from_json<Q>(io::to_json(f), build_example1_space<Q>(6)), ParseError);
}

TEST(Io, FunctionValuesByLabel) {
    auto s = build_half_line<Q>(2);
    auto j = Json::parse(R"({"values": {"0": "0", "1": "1/2", "2": 1}})");
    auto f = io::lip_function_from_json<Q>(j, s);
    EXPECT_EQ(f(1), Q(1, 2));
    EXPECT_EQ(f(2), Q(1));
    auto missing = Json::parse(R"({"values": {"0": "0", "1": "1"}})");
    EXPECT_EQ(location_of([&] { io::lip_function_from_json<Q>(missing, s, "f.json"); }), "f.json.values");
}

TEST(Io, ElementRoundTrip) {
    auto s = build_half_line<Q>(3);
    auto mu = FreeElement<Q>::molecule(s, 3, 1) + Q(1, 3) * FreeElement<Q>::delta(s, 2);
    EXPECT_EQ(io::free_element_from_json<Q>(Json::parse(io::to_json(mu).dump()), s), mu);
    auto bad = Json::parse(R"({"weights": {"9": "1"}})");
    EXPECT_EQ(location_of([&] { io::free_element_from_json<Q>(bad, s, "m"); }), "m.weights.9");
}

TEST(Io, ParseErrorLocations) {
    auto bad_row = Json::parse(R"({"d": [["0", "1"], ["1"]]})");
    EXPECT_EQ(location_of([&] { io::space_from_json<Q>(bad_row, "s.json"); }), "s.json.d[1]");
    auto bad_entry = Json::parse(R"({"d": [["0", "x"], ["1", "0"]]})");
    EXPECT_EQ(location_of([&] { io::space_from_json<Q>(bad_entry, "s.json"); }), "s.json.d[0][1]");
    auto float_entry = Json::parse(R"({"d": [[0, 0.5], [0.5, 0]]})");
    EXPECT_EQ(location_of([&] { io::space_from_json<Q>(float_entry, "s.json"); }), "s.json.d[0][1]");
    EXPECT_NO_THROW(io::space_from_json<double>(float_entry, "s.json"));
    auto bad_base = Json::parse(R"({"d": [["0"]], "base": "z"})");
    EXPECT_EQ(location_of([&] { io::space_from_json<Q>(bad_base, "s.json"); }), "s.json.base");
    EXPECT_EQ(location_of([] { io::parse_json("{\"d\": [", "t.json"); }).rfind("t.json:byte ", 0), 0u);
}

TEST(Io, ReportIsCanonical) {
    ReportBuilder<Q> rb("claim");
    rb.param("n", 3LL);
    rb.compare("half", Q(1, 2), "<", Q(1));
    rb.flag("ok", true);
    auto r = rb.finish();
    auto text = io::dump(io::to_json(r));
    auto j = Json::parse(text);
    EXPECT_EQ(j["claim"], "claim");
    EXPECT_EQ(j["parameters"]["mode"], "exact");
    EXPECT_EQ(j["checks"][0]["slack"], "1/2");
    EXPECT_EQ(j["verified"], true);
    EXPECT_EQ(text.back(), '\n');
    EXPECT_EQ(text, io::dump(io::to_json(r)));
}
