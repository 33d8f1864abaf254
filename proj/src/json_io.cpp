#include <sis/json_io.hpp>

#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace sis {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::set<std::string>& ignored,
                         const std::string& where) {
    for (const auto& item : obj.items()) {
        if (known.count(item.key()) || ignored.count(item.key())) continue;
        throw std::invalid_argument("config: unknown key \"" + item.key() +
                                    "\" in " + where);
    }
}

double num_or(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw std::invalid_argument("config: \"" + std::string(key) +
                                    "\" must be a number");
    return v.get<double>();
}

std::complex<double> complex_from(const json& v, const char* key) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
        !v[1].is_number())
        throw std::invalid_argument("config: \"" + std::string(key) +
                                    "\" must be [re, im]");
    return {v[0].get<double>(), v[1].get<double>()};
}

FamilyConfig family_from(const json& fam) {
    if (!fam.is_object())
        throw std::invalid_argument("config: \"family\" must be an object");
    reject_unknown_keys(
        fam, {"kind", "a1", "beta", "gamma", "delta", "lambda", "q", "rscale"},
        {}, "family");
    if (!fam.contains("kind") || !fam.at("kind").is_string())
        throw std::invalid_argument("config: family.kind string is required");
    const FamilyKind kind =
        family_kind_from_token(fam.at("kind").get<std::string>());
    return make_family(kind, num_or(fam, "a1", 0.0), num_or(fam, "beta", 0.0),
                       num_or(fam, "gamma", 0.0), num_or(fam, "delta", 0.0),
                       num_or(fam, "lambda", 0.0), num_or(fam, "q", 0.0),
                       num_or(fam, "rscale", 0.0));
}

ZSpec zspec_from(const json& zs, double alpha, const FamilyConfig& cfg) {
    if (!zs.is_object())
        throw std::invalid_argument("config: \"zspec\" must be an object");
    reject_unknown_keys(zs, {"variant", "c", "sigma"}, {}, "zspec");
    if (!zs.contains("variant") || !zs.at("variant").is_string())
        throw std::invalid_argument("config: zspec.variant string is required");
    const ZVariant v =
        z_variant_from_token(zs.at("variant").get<std::string>());
    ZSpec out = make_zspec(v, alpha, num_or(zs, "c", 0.0),
                           num_or(zs, "sigma", 0.0));
    validate_pairing(out, cfg);
    return out;
}

json family_to_json(const FamilyConfig& cfg) {
    json fam;
    fam["kind"] = family_kind_token(cfg.kind);
    fam["a1"] = cfg.a1;
    fam["beta"] = cfg.beta;
    fam["gamma"] = cfg.gamma;
    fam["delta"] = cfg.delta;
    fam["lambda"] = cfg.lambda;
    fam["q"] = cfg.q;
    fam["rscale"] = cfg.r_scale;
    return fam;
}

json run_config_to_json(const RunConfig& rc) {
    json j;
    j["family"] = family_to_json(rc.family);
    json zs;
    zs["variant"] = z_variant_token(rc.zspec.variant);
    zs["c"] = rc.zspec.c;
    zs["sigma"] = rc.zspec.sigma;
    j["zspec"] = zs;
    j["alpha"] = rc.zspec.alpha;
    j["z"] = json::array({rc.z.real(), rc.z.imag()});
    j["nmax"] = rc.nmax;
    j["tol"] = rc.tol;
    j["output"] = rc.output;
    if (!rc.out_path.empty()) j["out_path"] = rc.out_path;
    return j;
}

}  // namespace

std::string family_kind_token(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::TypeA: return "typeA";
        case FamilyKind::TypeB: return "typeB";
        case FamilyKind::TypeC: return "typeC";
        case FamilyKind::TypeD: return "typeD";
        case FamilyKind::TypeE: return "typeE";
        case FamilyKind::TypeF: return "typeF";
        case FamilyKind::SelfSimilar: return "selfSimilar";
    }
    throw std::invalid_argument("family_kind_token: unknown kind");
}

FamilyKind family_kind_from_token(const std::string& token) {
    if (token == "typeA") return FamilyKind::TypeA;
    if (token == "typeB") return FamilyKind::TypeB;
    if (token == "typeC") return FamilyKind::TypeC;
    if (token == "typeD") return FamilyKind::TypeD;
    if (token == "typeE") return FamilyKind::TypeE;
    if (token == "typeF") return FamilyKind::TypeF;
    if (token == "selfSimilar") return FamilyKind::SelfSimilar;
    throw std::invalid_argument("config: unknown family kind \"" + token +
                                "\"");
}

std::string z_variant_token(ZVariant v) {
    switch (v) {
        case ZVariant::Const: return "const";
        case ZVariant::TypeC_G: return "typeC_G";
        case ZVariant::TypeA_PT1: return "typeA_PT1";
        case ZVariant::TypeA_BG: return "typeA_BG";
        case ZVariant::TypeA_Whittaker: return "typeA_Whittaker";
        case ZVariant::SS_R: return "ss_R";
        case ZVariant::SS_Ramanujan: return "ss_Ramanujan";
    }
    throw std::invalid_argument("z_variant_token: unknown variant");
}

ZVariant z_variant_from_token(const std::string& token) {
    if (token == "const") return ZVariant::Const;
    if (token == "typeC_G") return ZVariant::TypeC_G;
    if (token == "typeA_PT1") return ZVariant::TypeA_PT1;
    if (token == "typeA_BG") return ZVariant::TypeA_BG;
    if (token == "typeA_Whittaker") return ZVariant::TypeA_Whittaker;
    if (token == "ss_R") return ZVariant::SS_R;
    if (token == "ss_Ramanujan") return ZVariant::SS_Ramanujan;
    throw std::invalid_argument("config: unknown zspec variant \"" + token +
                                "\"");
}

RunConfig parse_run_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: JSON parse error: ") +
                                    e.what());
    }
    if (!j.is_object())
        throw std::invalid_argument("config: top level must be an object");
    reject_unknown_keys(
        j,
        {"family", "zspec", "z", "alpha", "nmax", "tol", "output", "out_path"},
        {"coefficients", "norm_factor", "tail", "meta"}, "the top level");

    RunConfig rc;
    if (!j.contains("family"))
        throw std::invalid_argument("config: \"family\" block is required");
    rc.family = family_from(j.at("family"));

    const double alpha = num_or(j, "alpha", 0.0);
    if (j.contains("zspec")) {
        rc.zspec = zspec_from(j.at("zspec"), alpha, rc.family);
    } else if (rc.family.kind == FamilyKind::SelfSimilar) {
        // scaling ladders have no constant gap; default to the plain
        // scaling functional instead
        rc.zspec = make_zspec(ZVariant::SS_R, alpha);
        validate_pairing(rc.zspec, rc.family);
    } else {
        rc.zspec = make_zspec(ZVariant::Const, alpha,
                              std::sqrt(gamma_const(rc.family)));
        validate_pairing(rc.zspec, rc.family);
    }

    if (j.contains("z")) rc.z = complex_from(j.at("z"), "z");

    if (j.contains("nmax")) {
        if (!j.at("nmax").is_number_integer() || j.at("nmax").get<long>() < 1)
            throw std::invalid_argument(
                "config: \"nmax\" must be a positive integer");
        rc.nmax = j.at("nmax").get<long>();
    }
    rc.tol = num_or(j, "tol", 1e-8);
    if (!(rc.tol > 0.0))
        throw std::invalid_argument("config: \"tol\" must be positive");

    if (j.contains("output")) {
        if (!j.at("output").is_string())
            throw std::invalid_argument("config: \"output\" must be a string");
        rc.output = j.at("output").get<std::string>();
    }
    if (rc.output != "json" && rc.output != "csv")
        throw std::invalid_argument(
            "config: \"output\" must be \"json\" or \"csv\"");

    if (j.contains("out_path")) {
        if (!j.at("out_path").is_string())
            throw std::invalid_argument(
                "config: \"out_path\" must be a string");
        rc.out_path = j.at("out_path").get<std::string>();
    }
    return rc;
}

std::string serialize_run_config(const RunConfig& rc) {
    return run_config_to_json(rc).dump(2) + "\n";
}

std::string serialize_state(const CoherentState& s, const RunConfig& rc) {
    RunConfig echo = rc;
    echo.family = s.cfg;
    echo.zspec = s.zs;
    echo.z = s.z;
    echo.nmax = s.nmax;
    json j = run_config_to_json(echo);
    long last = 0;
    for (long n = 0; n <= s.nmax; ++n)
        if (s.c[n] != std::complex<double>{0.0, 0.0}) last = n;
    json coeff = json::array();
    for (long n = 0; n <= last; ++n)
        coeff.push_back(json::array({s.c[n].real(), s.c[n].imag()}));
    j["coefficients"] = coeff;
    j["norm_factor"] = s.norm_factor;
    j["tail"] = s.tail;
    return j.dump(2) + "\n";
}

}  // namespace sis
