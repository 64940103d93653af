#include <gtest/gtest.h>

#include <cmath>

#include "siegel/errors.hpp"
#include "siegel/serialize.hpp"

using namespace siegel;

namespace {

const Complex I(0.0, 1.0);

void expect_round_trip(const MapDescriptor& f) {
    const Json j = to_json(f);
    EXPECT_EQ(to_json(map_from_json(Json::parse(j.dump()))).dump(), j.dump());
}

} // namespace

TEST(Serialize, FormatDoubleRoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 5.0000000025e-10, -1e300, 2.0}) EXPECT_EQ(std::stod(format_double(x)), x);
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_TRUE(number(INFINITY).is_string());
}

TEST(Serialize, MapDescriptorsRoundTrip) {
    expect_round_trip(MapDescriptor::quadratic(2.0, 1.0 + 0.5 * I, 0.25 * I));
    expect_round_trip(lift_one_dim(HalfPlaneAffine{2.0, 0.5 * I}));
    expect_round_trip(MapDescriptor::diagonal_linear(2.0, CVector{std::polar(std::sqrt(2.0), 0.7)}));
    expect_round_trip(MapDescriptor::ball_product({BlaschkeDeg2{0.5}, DiskScale{0.5}}));
    expect_round_trip(MapDescriptor::conjugated(MapDescriptor::quadratic(2.0, 1.0, 1.0),
                                                SiegelAutomorphism::translation(1.0, CVector{1.0})));
}

TEST(Serialize, DocumentedQuadraticSchemaParses) {
    const Json j = Json::parse(R"({"family":"quadratic","A":2,"B":{"re":1,"im":0},"C":{"re":1,"im":0}})");
    const MapDescriptor f = map_from_json(j);
    const auto& q = std::get<QuadraticSiegel>(f.variant());
    EXPECT_EQ(q.A, 2.0);
    EXPECT_EQ(q.B, Complex(1.0));
}

TEST(Serialize, MalformedDescriptorsAreRejected) {
    for (const char* text : {R"({})", R"({"family":"cubic"})", R"({"family":"quadratic","A":"x","B":0,"C":0})",
                             R"({"family":"lifted","phi":{"kind":"half_plane_linear","c":1}})",
                             R"({"family":"ball_product","components":{}})", R"({"family":3})"})
        EXPECT_THROW(map_from_json(Json::parse(text)), InvalidDescriptor) << text;
}

TEST(Serialize, BoundaryPoints) {
    const BoundaryPoint inf = boundary_from_json(Json::parse(R"({"at_infinity":true,"dim":2})"));
    EXPECT_TRUE(inf.at_infinity());
    const BoundaryPoint q = boundary_from_json(Json::parse(R"({"re":[1,1]})"));
    EXPECT_EQ(q.v()[1], Complex(1.0));
    EXPECT_THROW(boundary_from_json(Json::parse(R"({"re":[1,0]})")), InvalidDescriptor);
    EXPECT_THROW(boundary_from_json(Json::parse(R"({"model":"ball","at_infinity":true,"dim":2})")),
                 InvalidDescriptor);
}

TEST(Serialize, OrbitUsesStringsForExactFields) {
    BackwardOrbit o;
    o.points = {SiegelPoint(1.0, CVector{0.0}), SiegelPoint(0.5, CVector{0.0})};
    o.steps = {1.0 / 3.0};
    o.defects = {1.0, 0.5};
    const Json j = to_json(o);
    EXPECT_EQ(j["steps"][0], "0.33333333333333331");
    EXPECT_EQ(j["defects"][1], "0.5");
}

TEST(Serialize, CsvLayout) {
    const std::string csv = orbit_csv({SiegelPoint(1.0, CVector{0.0}), SiegelPoint(0.5, CVector{0.0})}, {1.0 / 3.0});
    EXPECT_EQ(csv, "n,re_z,im_z,re_w1,im_w1,t_n,d_n\n0,1,0,0,0,1,0.33333333333333331\n1,0.5,0,0,0,0.5,\n");
}
