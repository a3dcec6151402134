#include <gtest/gtest.h>

#include "ssm/io.hpp"

using namespace ssm;

TEST(GraphJson, RoundTripWithFields) {
  Graph g = complete_graph(3);
  g.set_fields({ExactComplex(Rational(1, 2)), ExactComplex(Rational(-3), Rational(2, 7)), ExactComplex(4)});
  const Json j = graph_to_json(g);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_EQ(graph_from_json(j).fields(), g.fields());
}

TEST(GraphJson, IntegerOrStringFields) {
  const Graph g = parse_graph(R"({"n":2,"edges":[[0,1]],"fields":[[1,2,0,1],["3","1","-1","4"]]})");
  EXPECT_EQ(g.fields()[0], ExactComplex(Rational(1, 2)));
  EXPECT_EQ(g.fields()[1], ExactComplex(Rational(3), Rational(-1, 4)));
  EXPECT_THROW(parse_graph(R"({"n":1,"edges":[],"fields":[[1,0,0,1]]})"), InputError);
  EXPECT_THROW(parse_graph(R"({"n":2,"edges":[],"fields":[[1,1,0,1]]})"), InputError);
}

TEST(PinningJson, RoundTrip) {
  const Pinning p{{0, Spin::Plus}, {7, Spin::Minus}};
  EXPECT_EQ(pinning_from_json(pinning_to_json(p)), p);
  EXPECT_THROW(pinning_from_json(Json::parse(R"({"pins":{"x":"+"}})")), InputError);
  EXPECT_THROW(pinning_from_json(Json::parse(R"({"pins":{"1":"0"}})")), InputError);
  EXPECT_THROW(pinning_from_json(Json::parse(R"({"nopins":{}})")), InputError);
}

TEST(ComplexJson, Forms) {
  EXPECT_EQ(complex_from_json(Json("3/4")), ExactComplex(Rational(3, 4)));
  EXPECT_EQ(complex_from_json(Json(5)), ExactComplex(5));
  EXPECT_EQ(complex_from_json(Json::parse(R"({"re":"1/2","im":"-1/3"})")), ExactComplex(Rational(1, 2), Rational(-1, 3)));
  const ExactComplex z(Rational(-2, 3), Rational(5));
  EXPECT_EQ(complex_from_json(complex_to_json(z)), z);
  EXPECT_THROW(complex_from_json(Json::parse("[1]")), InputError);
  EXPECT_THROW(complex_from_json(Json("1/0")), InputError);
}

TEST(Flags, ComplexFlag) {
  EXPECT_EQ(parse_complex_flag("2/1"), ExactComplex(2));
  EXPECT_EQ(parse_complex_flag("1/2,-1/3"), ExactComplex(Rational(1, 2), Rational(-1, 3)));
  EXPECT_THROW(parse_complex_flag("two"), InputError);
  EXPECT_EQ(complex_flag(ExactComplex(Rational(1, 2), Rational(-1, 3))), "1/2,-1/3");
}

TEST(Flags, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}
