#include "flatflight/aircraft_io.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace flatflight {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw Error(Error::Kind::config, where + ": unknown key '" + key + "'");
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw Error(Error::Kind::config, where + ": missing numeric field '" + key + "'");
    return obj[key].get<double>();
}

double unit_factor(const std::string& where, const std::string& quantity,
                   const std::string& unit) {
    if (quantity == "mass") {
        if (unit == "kg") return 1.0;
        if (unit == "lb") return units::lb;
        if (unit == "slug") return 14.59390294;
    } else if (quantity == "length") {
        if (unit == "m") return 1.0;
        if (unit == "ft") return units::ft;
    } else if (quantity == "area") {
        if (unit == "m^2") return 1.0;
        if (unit == "ft^2") return units::ft2;
    } else if (quantity == "inertia") {
        if (unit == "kg*m^2") return 1.0;
        if (unit == "slug*ft^2") return units::slug_ft2;
    } else if (quantity == "angle") {
        if (unit == "rad") return 1.0;
        if (unit == "deg") return units::deg;
    }
    throw Error(Error::Kind::config, where + ": unsupported " + quantity + " unit '" + unit + "'");
}

const std::array<const char*, 8> kExponentKeys = {"alpha", "beta", "ptilde", "qtilde",
                                                  "rtilde", "dl",   "dm",    "dn"};

std::vector<GnaTerm> parse_channel(const json& arr, const std::string& where) {
    if (!arr.is_array())
        throw Error(Error::Kind::config, where + ": expected an array of terms");
    std::vector<GnaTerm> terms;
    terms.reserve(arr.size());
    for (const auto& item : arr) {
        require_keys(item, where, {"theta", "exponents"});
        GnaTerm t;
        t.theta = get_number(item, where, "theta");
        if (item.contains("exponents")) {
            const json& ex = item["exponents"];
            require_keys(ex, where + ".exponents",
                         {kExponentKeys.begin(), kExponentKeys.end()});
            for (size_t i = 0; i < kExponentKeys.size(); ++i) {
                if (ex.contains(kExponentKeys[i])) {
                    int e = ex[kExponentKeys[i]].get<int>();
                    if (e < 0 || e > 8)
                        throw Error(Error::Kind::config, where + ": exponent out of range");
                    t.expo[i] = e;
                }
            }
        }
        terms.push_back(t);
    }
    return terms;
}

} // namespace

AircraftParams load_aircraft(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(Error::Kind::config, "cannot open aircraft file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const std::exception& e) {
        throw Error(Error::Kind::config, "aircraft file " + path + ": " + e.what());
    }

    require_keys(doc, path, {"name", "units", "mass", "inertia", "geometry", "environment", "gna"});

    AircraftParams pr;
    pr.name = doc.value("name", std::string("unnamed"));

    double f_mass = 1.0, f_len = 1.0, f_area = 1.0, f_inertia = 1.0, f_angle = 1.0;
    if (doc.contains("units")) {
        const json& u = doc["units"];
        require_keys(u, path + ".units", {"mass", "length", "area", "inertia", "angle"});
        if (u.contains("mass")) f_mass = unit_factor(path, "mass", u["mass"].get<std::string>());
        if (u.contains("length")) f_len = unit_factor(path, "length", u["length"].get<std::string>());
        if (u.contains("area")) f_area = unit_factor(path, "area", u["area"].get<std::string>());
        if (u.contains("inertia"))
            f_inertia = unit_factor(path, "inertia", u["inertia"].get<std::string>());
        if (u.contains("angle")) f_angle = unit_factor(path, "angle", u["angle"].get<std::string>());
    }

    pr.m = get_number(doc, path, "mass") * f_mass;

    const json& inert = doc.at("inertia");
    require_keys(inert, path + ".inertia", {"Ixx", "Iyy", "Izz", "Ixz"});
    pr.inertia.Ixx = get_number(inert, path, "Ixx") * f_inertia;
    pr.inertia.Iyy = get_number(inert, path, "Iyy") * f_inertia;
    pr.inertia.Izz = get_number(inert, path, "Izz") * f_inertia;
    pr.inertia.Ixz = get_number(inert, path, "Ixz") * f_inertia;

    const json& geom = doc.at("geometry");
    require_keys(geom, path + ".geometry", {"S", "a", "b", "y_p", "eps"});
    pr.S = get_number(geom, path, "S") * f_area;
    pr.a = get_number(geom, path, "a") * f_len;
    pr.b = get_number(geom, path, "b") * f_len;
    pr.y_p = get_number(geom, path, "y_p") * f_len;
    pr.eps = get_number(geom, path, "eps") * f_angle;

    const json& env = doc.at("environment");
    require_keys(env, path + ".environment", {"rho", "g"});
    pr.rho = get_number(env, path, "rho"); // kg/m^3
    pr.g = get_number(env, path, "g");     // m/s^2

    const json& gna = doc.at("gna");
    require_keys(gna, path + ".gna", {"CD", "Cy", "CL", "Cl", "Cm", "Cn"});
    pr.gna.CD = parse_channel(gna.at("CD"), path + ".gna.CD");
    pr.gna.Cy = parse_channel(gna.at("Cy"), path + ".gna.Cy");
    pr.gna.CL = parse_channel(gna.at("CL"), path + ".gna.CL");
    pr.gna.Cl = parse_channel(gna.at("Cl"), path + ".gna.Cl");
    pr.gna.Cm = parse_channel(gna.at("Cm"), path + ".gna.Cm");
    pr.gna.Cn = parse_channel(gna.at("Cn"), path + ".gna.Cn");

    pr.validate();
    return pr;
}

} // namespace flatflight
