#include "siegel/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "siegel/errors.hpp"

namespace siegel {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw InvalidDescriptor(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

double real_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number()) throw InvalidDescriptor(std::string("field \"") + key + "\" must be a number");
    return v.get<double>();
}

Json strings(const std::vector<double>& v) {
    Json a = Json::array();
    for (double x : v) a.push_back(format_double(x));
    return a;
}


} // namespace

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    // snprintf honours LC_NUMERIC; the C locale is never changed here, but be explicit.
    for (char* c = buf; *c; ++c)
        if (*c == ',') *c = '.';
    return buf;
}

Json number(double x) {
    if (std::isfinite(x)) return x;
    return format_double(x);
}

// ---- values ------------------------------------------------------------------

Json to_json(Complex c) { return Json{{"re", number(c.real())}, {"im", number(c.imag())}}; }

Json to_json(const CVector& v) {
    Json re = Json::array(), im = Json::array();
    for (const auto& c : v) {
        re.push_back(number(c.real()));
        im.push_back(number(c.imag()));
    }
    return Json{{"re", re}, {"im", im}};
}

Json to_json(const SiegelPoint& p) { return to_json(p.coords()); }

Json to_json(const BoundaryPoint& p) {
    Json j{{"model", p.model() == Model::ball ? "ball" : "siegel"}, {"at_infinity", p.at_infinity()}};
    if (!p.at_infinity()) {
        const Json c = to_json(p.v());
        j["re"] = c["re"];
        j["im"] = c["im"];
    } else {
        j["dim"] = p.dim();
    }
    return j;
}

Json to_json(const SiegelAutomorphism& a) {
    Json chain = Json::array();
    for (const auto& prim : a.chain()) {
        chain.push_back(std::visit(overloaded{
                                       [](const Translation& t) {
                                           return Json{{"kind", "translation"}, {"y", number(t.y)}, {"w0", to_json(t.w0)}};
                                       },
                                       [](const Dilation& d) { return Json{{"kind", "dilation"}, {"t", number(d.t)}}; },
                                       [](const Rotation& r) { return Json{{"kind", "rotation"}, {"omega", to_json(r.omega)}}; },
                                       [](const LinearDiag& l) {
                                           return Json{{"kind", "linear_diag"}, {"alpha", number(l.alpha)}, {"lambda", to_json(l.lambda)}};
                                       },
                                   },
                                   prim));
    }
    return Json{{"chain", chain}};
}

Json to_json(const OneDimMap& m) {
    return std::visit(overloaded{
                          [](const HalfPlaneLinear& p) { return Json{{"kind", "half_plane_linear"}, {"c", p.c}}; },
                          [](const HalfPlaneAffine& p) {
                              return Json{{"kind", "half_plane_affine"}, {"c", p.c}, {"b", to_json(p.b)}};
                          },
                          [](const BlaschkeDeg2& p) { return Json{{"kind", "blaschke2"}, {"a", p.a}}; },
                          [](const DiskScale& p) { return Json{{"kind", "disk_scale"}, {"s", to_json(p.s)}}; },
                      },
                      m);
}

Json to_json(const MapDescriptor& f) {
    return std::visit(overloaded{
                          [](const QuadraticSiegel& q) {
                              return Json{{"family", "quadratic"}, {"A", q.A}, {"B", to_json(q.B)}, {"C", to_json(q.C)}};
                          },
                          [](const Lifted& l) { return Json{{"family", "lifted"}, {"phi", to_json(l.phi)}}; },
                          [](const DiagonalLinear& d) {
                              return Json{{"family", "diagonal_linear"}, {"alpha", d.alpha}, {"lambda", to_json(d.lambda)}};
                          },
                          [](const Conjugated& c) {
                              return Json{{"family", "conjugated"}, {"base", to_json(*c.base)}, {"by", to_json(c.by)}};
                          },
                          [](const BallProduct& b) {
                              Json comps = Json::array();
                              for (const auto& c : b.components) comps.push_back(to_json(c));
                              return Json{{"family", "ball_product"}, {"components", comps}};
                          },
                      },
                      f.variant());
}

Json to_json(const FixedPointSet& s) {
    Json j{{"kind", to_string(s.kind)}};
    if (s.kind == FixedPointSet::Kind::boundary_curve) {
        j["form"] = "(i*y0 + r^2, r*u), r real";
        j["y0"] = number(s.y0);
        j["u"] = to_json(s.direction);
    }
    return j;
}

Json to_json(const ClassificationReport& r) {
    Json j;
    j["is_self_map"] = r.is_self_map;
    j["type"] = r.type ? Json(to_string(*r.type)) : Json(nullptr);
    j["denjoy_wolff"] = r.denjoy_wolff ? to_json(*r.denjoy_wolff) : Json(nullptr);
    j["interior_fixed_point"] = r.interior_fixed_point ? to_json(*r.interior_fixed_point) : Json(nullptr);
    j["multiplier_at_dw"] = r.multiplier_at_dw ? number(*r.multiplier_at_dw) : Json(nullptr);
    j["brfp"] = r.brfp ? to_json(*r.brfp) : Json(nullptr);
    j["brfp_multiplier"] = r.brfp_multiplier ? number(*r.brfp_multiplier) : Json(nullptr);
    j["fixed_point_set"] = to_json(r.fixed_point_set);
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const ForwardOrbit& o) {
    Json pts = Json::array();
    std::vector<double> defects;
    for (const auto& p : o.points) {
        pts.push_back(to_json(p));
        defects.push_back(p.defect());
    }
    Json j;
    j["direction"] = "forward";
    j["points"] = pts;
    j["defects"] = strings(defects);
    j["steps"] = strings(o.steps);
    j["converged"] = o.converged;
    j["dw_estimate"] = o.dw_estimate ? to_json(*o.dw_estimate) : Json(nullptr);
    j["interior_limit"] = o.interior_limit ? to_json(*o.interior_limit) : Json(nullptr);
    return j;
}

Json to_json(const BackwardOrbit& o) {
    Json pts = Json::array();
    for (const auto& p : o.points) pts.push_back(to_json(p));
    Json j;
    j["direction"] = "backward";
    j["status"] = to_string(o.status);
    if (!o.status_message.empty()) j["status_message"] = o.status_message;
    j["step_bound"] = number(o.step_bound);
    j["points"] = pts;
    j["defects"] = strings(o.defects);
    j["steps"] = strings(o.steps);
    j["limit"] = o.limit ? to_json(*o.limit) : Json(nullptr);
    j["limit_ball"] = o.limit_ball ? to_json(*o.limit_ball) : Json(nullptr);
    j["multiplier_estimate"] = number(o.multiplier_estimate);
    j["koranyi_certificate"] = number(o.koranyi_certificate);
    return j;
}

Json to_json(const ConjugationRun& run) {
    Json j;
    j["alpha"] = number(run.model.alpha);
    j["variant"] = to_string(run.model.variant);
    j["L"] = run.model.L;
    j["omega"] = to_json(run.model.omega);
    j["map"] = to_json(run.f);
    j["recenter"] = to_json(run.recenter);
    j["residuals"] = strings(run.residuals);
    j["interp_errors"] = strings(run.interp_errors);
    j["g_errors"] = strings(run.g_errors);
    Json grid = Json::array();
    for (const auto& z : run.grid) grid.push_back(to_json(z));
    j["grid"] = grid;
    Json psi = Json::array();
    if (!run.psi_samples.empty())
        for (const auto& [in, out] : run.psi_samples.back()) psi.push_back(Json::array({to_json(in), to_json(out)}));
    j["psi"] = psi;
    return j;
}

Json to_json(const NumericPolicy& p) {
    return Json{{"validity_tol", p.validity_tol},
                {"isometry_tol", p.isometry_tol},
                {"orbit_exactness_tol", p.orbit_exactness_tol},
                {"iterate_tol", p.iterate_tol}};
}

// ---- parsing -----------------------------------------------------------------

Complex complex_from_json(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_object()) {
        const double re = real_field(j, "re");
        const double im = j.contains("im") ? real_field(j, "im") : 0.0;
        return {re, im};
    }
    throw InvalidDescriptor("complex value must be a number or {\"re\", \"im\"}");
}

CVector cvector_from_json(const Json& j) {
    const Json& re = field(j, "re");
    if (!re.is_array()) throw InvalidDescriptor("\"re\" must be an array");
    const Json im = j.contains("im") ? j.at("im") : Json::array();
    if (!im.is_array() || (!im.empty() && im.size() != re.size()))
        throw InvalidDescriptor("\"im\" must be an array of the same length as \"re\"");
    CVector v(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (!re[i].is_number() || (!im.empty() && !im[i].is_number()))
            throw InvalidDescriptor("coordinates must be numbers");
        v[i] = Complex(re[i].get<double>(), im.empty() ? 0.0 : im[i].get<double>());
    }
    return v;
}

BoundaryPoint boundary_from_json(const Json& j) {
    const std::string model = j.value("model", "siegel");
    if (j.value("at_infinity", false)) {
        if (model != "siegel") throw InvalidDescriptor("only Siegel boundary points can be at infinity");
        return BoundaryPoint::siegel_infinity(static_cast<std::size_t>(real_field(j, "dim")));
    }
    const CVector v = cvector_from_json(j);
    try {
        if (model == "ball") return BoundaryPoint::ball(v);
        if (model == "siegel") return BoundaryPoint::siegel(v);
    } catch (const Error& e) {
        throw InvalidDescriptor(std::string("boundary point: ") + e.what());
    }
    throw InvalidDescriptor("boundary point model must be \"ball\" or \"siegel\"");
}

SiegelAutomorphism automorphism_from_json(const Json& j) {
    const Json& chain = field(j, "chain");
    if (!chain.is_array()) throw InvalidDescriptor("\"chain\" must be an array");
    std::vector<Primitive> prims;
    for (const auto& p : chain) {
        const std::string kind = field(p, "kind").get<std::string>();
        if (kind == "translation")
            prims.push_back(Translation{real_field(p, "y"), cvector_from_json(field(p, "w0"))});
        else if (kind == "dilation")
            prims.push_back(Dilation{real_field(p, "t")});
        else if (kind == "rotation")
            prims.push_back(Rotation{cvector_from_json(field(p, "omega"))});
        else if (kind == "linear_diag")
            prims.push_back(LinearDiag{real_field(p, "alpha"), cvector_from_json(field(p, "lambda"))});
        else
            throw InvalidDescriptor("unknown automorphism primitive \"" + kind + "\"");
    }
    try {
        return automorphism_from_chain(prims);
    } catch (const InvalidDescriptor&) {
        throw;
    } catch (const Error& e) {
        throw InvalidDescriptor(std::string("automorphism: ") + e.what());
    }
}

OneDimMap one_dim_from_json(const Json& j) {
    const std::string kind = field(j, "kind").get<std::string>();
    OneDimMap m;
    if (kind == "half_plane_linear")
        m = HalfPlaneLinear{real_field(j, "c")};
    else if (kind == "half_plane_affine")
        m = HalfPlaneAffine{real_field(j, "c"), j.contains("b") ? complex_from_json(j.at("b")) : Complex(0.0)};
    else if (kind == "blaschke2")
        m = BlaschkeDeg2{real_field(j, "a")};
    else if (kind == "disk_scale")
        m = DiskScale{complex_from_json(field(j, "s"))};
    else
        throw InvalidDescriptor("unknown one-dimensional map kind \"" + kind + "\"");
    validate_one_dim(m);
    return m;
}

QuadraticSiegel quadratic_coefficients_from_json(const Json& j) {
    if (field(j, "family").get<std::string>() != "quadratic") throw InvalidDescriptor("not a quadratic descriptor");
    return QuadraticSiegel{real_field(j, "A"), complex_from_json(field(j, "B")), complex_from_json(field(j, "C"))};
}

MapDescriptor map_from_json(const Json& j) {
    try {
        const Json& fam = field(j, "family");
        if (!fam.is_string()) throw InvalidDescriptor("\"family\" must be a string");
        const std::string family = fam.get<std::string>();
        if (family == "quadratic") {
            const QuadraticSiegel q = quadratic_coefficients_from_json(j);
            return MapDescriptor::quadratic(q.A, q.B, q.C);
        }
        if (family == "lifted") return lift_one_dim(one_dim_from_json(field(j, "phi")));
        if (family == "diagonal_linear")
            return MapDescriptor::diagonal_linear(real_field(j, "alpha"), cvector_from_json(field(j, "lambda")));
        if (family == "conjugated")
            return MapDescriptor::conjugated(map_from_json(field(j, "base")), automorphism_from_json(field(j, "by")));
        if (family == "ball_product") {
            const Json& comps = field(j, "components");
            if (!comps.is_array()) throw InvalidDescriptor("\"components\" must be an array");
            std::vector<OneDimMap> cs;
            for (const auto& c : comps) cs.push_back(one_dim_from_json(c));
            return MapDescriptor::ball_product(std::move(cs));
        }
        throw InvalidDescriptor("unknown map family \"" + family + "\"");
    } catch (const Json::exception& e) {
        throw InvalidDescriptor(std::string("malformed map descriptor: ") + e.what());
    }
}

std::string orbit_csv(const std::vector<SiegelPoint>& points, const std::vector<double>& steps) {
    std::ostringstream out;
    const std::size_t dim = points.empty() ? 1 : points.front().dim();
    out << "n,re_z,im_z";
    for (std::size_t j = 1; j < dim; ++j) out << ",re_w" << j << ",im_w" << j;
    out << ",t_n,d_n\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
        const auto& p = points[k];
        out << k << ',' << format_double(p.z().real()) << ',' << format_double(p.z().imag());
        for (const auto& w : p.w()) out << ',' << format_double(w.real()) << ',' << format_double(w.imag());
        out << ',' << format_double(p.defect()) << ',';
        if (k < steps.size()) out << format_double(steps[k]);
        out << '\n';
    }
    return out.str();
}

} // namespace siegel
