#pragma once

#include <string>

#include <json.hpp>

#include "siegel/conjugation.hpp"
#include "siegel/dynamics.hpp"
#include "siegel/maps.hpp"
#include "siegel/numeric_policy.hpp"

namespace siegel {

using Json = nlohmann::ordered_json;

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double x);
/// Finite values as numbers; inf / nan as the strings "inf", "-inf", "nan".
Json number(double x);

Json to_json(Complex c);
Json to_json(const CVector& v);
Json to_json(const SiegelPoint& p);
Json to_json(const BoundaryPoint& p);
Json to_json(const SiegelAutomorphism& a);
Json to_json(const OneDimMap& m);
Json to_json(const MapDescriptor& f);
Json to_json(const FixedPointSet& s);
Json to_json(const ClassificationReport& r);
Json to_json(const ForwardOrbit& o);
Json to_json(const BackwardOrbit& o);
Json to_json(const ConjugationRun& run);
Json to_json(const NumericPolicy& p);

/// Parsers throw InvalidDescriptor on malformed input.
Complex complex_from_json(const Json& j);
CVector cvector_from_json(const Json& j);
BoundaryPoint boundary_from_json(const Json& j);
SiegelAutomorphism automorphism_from_json(const Json& j);
OneDimMap one_dim_from_json(const Json& j);
MapDescriptor map_from_json(const Json& j);
/// Coefficients of a quadratic descriptor without the self-map validation,
/// so that non-self-maps can still be classified.
QuadraticSiegel quadratic_coefficients_from_json(const Json& j);

/// CSV: n, Re z, Im z, Re w_j, Im w_j, t_n, d_n (d_n empty on the last row).
std::string orbit_csv(const std::vector<SiegelPoint>& points, const std::vector<double>& steps);

} // namespace siegel
