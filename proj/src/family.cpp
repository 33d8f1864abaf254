#include "sis/family.hpp"

#include <cmath>
#include <stdexcept>

namespace sis {

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::TypeA: return "TypeA";
        case FamilyKind::TypeB: return "TypeB";
        case FamilyKind::TypeC: return "TypeC";
        case FamilyKind::TypeD: return "TypeD";
        case FamilyKind::TypeE: return "TypeE";
        case FamilyKind::TypeF: return "TypeF";
        case FamilyKind::SelfSimilar: return "SelfSimilar";
    }
    return "Unknown";
}

void validate_family(const FamilyConfig& cfg) {
    switch (cfg.kind) {
        case FamilyKind::TypeB:
        case FamilyKind::TypeE:
        case FamilyKind::TypeF:
            throw std::invalid_argument(
                family_kind_name(cfg.kind) +
                " is outside the supported catalog: its ladder structure is "
                "deferred and no remainder sequence is wired up for it");
        case FamilyKind::TypeA: {
            if (!(cfg.beta > 0.0))
                throw std::invalid_argument("TypeA requires beta > 0");
            const double rho = (cfg.a1 + cfg.gamma) / eta;
            if (!(rho > 0.0))
                throw std::invalid_argument(
                    "TypeA requires (a1 + gamma)/eta > 0; got " +
                    std::to_string(rho));
            break;
        }
        case FamilyKind::TypeC:
        case FamilyKind::TypeD:
            if (!(cfg.beta > 0.0))
                throw std::invalid_argument(family_kind_name(cfg.kind) +
                                            " requires beta > 0");
            break;
        case FamilyKind::SelfSimilar:
            if (!(cfg.q > 0.0 && cfg.q < 1.0))
                throw std::invalid_argument(
                    "SelfSimilar requires 0 < q < 1; got q = " +
                    std::to_string(cfg.q));
            if (!(cfg.r_scale > 0.0))
                throw std::invalid_argument("SelfSimilar requires r_scale > 0");
            if (!(cfg.r_scale * cfg.a1 > 0.0))
                throw std::invalid_argument(
                    "SelfSimilar requires r_scale * a1 > 0 so the remainder "
                    "sequence is positive");
            break;
    }
}

FamilyConfig make_family(FamilyKind kind, double a1, double beta, double gamma,
                         double delta, double lambda, double q,
                         double r_scale) {
    FamilyConfig cfg;
    cfg.kind = kind;
    cfg.a1 = (kind == FamilyKind::TypeD) ? beta : a1;
    cfg.beta = beta;
    cfg.gamma = gamma;
    cfg.delta = delta;
    cfg.lambda = lambda;
    cfg.q = q;
    cfg.r_scale = r_scale;
    validate_family(cfg);
    return cfg;
}

bool operator==(const FamilyConfig& a, const FamilyConfig& b) {
    return a.kind == b.kind && a.a1 == b.a1 && a.beta == b.beta &&
           a.gamma == b.gamma && a.delta == b.delta && a.lambda == b.lambda &&
           a.q == b.q && a.r_scale == b.r_scale;
}

double gamma_const(const FamilyConfig& cfg) {
    return std::numbers::sqrt2 * cfg.beta;
}

double rho_translation(const FamilyConfig& cfg) {
    return (cfg.a1 + cfg.gamma) / eta;
}

double orbit_point(const FamilyConfig& cfg, long k) {
    if (k < 0) throw std::invalid_argument("orbit index must be >= 0");
    switch (cfg.kind) {
        case FamilyKind::TypeA:
            return cfg.a1 + static_cast<double>(k - 1) * eta;
        case FamilyKind::TypeC:
            return cfg.a1 - static_cast<double>(k - 1) * eta;
        case FamilyKind::TypeD:
            return cfg.beta;
        case FamilyKind::SelfSimilar:
            return cfg.a1 * std::pow(cfg.q, static_cast<double>(k - 1));
        default:
            throw std::invalid_argument("orbit undefined for " +
                                        family_kind_name(cfg.kind));
    }
}

std::vector<double> parameter_orbit(const FamilyConfig& cfg, long count) {
    if (count < 0) throw std::invalid_argument("orbit count must be >= 0");
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(count));
    for (long k = 1; k <= count; ++k) pts.push_back(orbit_point(cfg, k));
    return pts;
}

double remainder_at(const FamilyConfig& cfg, long k) {
    if (k < 0) throw std::invalid_argument("remainder index must be >= 0");
    switch (cfg.kind) {
        case FamilyKind::TypeA: {
            const double ak = orbit_point(cfg, k);
            return cfg.beta * cfg.beta * eta *
                   (2.0 * (ak + cfg.gamma) + eta);
        }
        case FamilyKind::TypeC:
        case FamilyKind::TypeD:
            return gamma_const(cfg);
        case FamilyKind::SelfSimilar:
            return cfg.r_scale * cfg.a1 *
                   std::pow(cfg.q, static_cast<double>(k - 1));
        default:
            throw std::invalid_argument("remainder undefined for " +
                                        family_kind_name(cfg.kind));
    }
}

namespace {

// TypeA lives on beta*(x+lambda) in (0, pi), TypeC on x > 0.
void check_position_domain(const FamilyConfig& cfg, double x) {
    if (cfg.kind == FamilyKind::TypeA) {
        const double u = cfg.beta * (x + cfg.lambda);
        if (!(u > 0.0 && u < std::numbers::pi))
            throw std::domain_error(
                "TypeA superpotential requires beta*(x+lambda) in (0, pi)");
    } else if (cfg.kind == FamilyKind::TypeC) {
        if (!(x > 0.0))
            throw std::domain_error("TypeC superpotential requires x > 0");
    }
}

}  // namespace

double superpotential(const FamilyConfig& cfg, double x, double a) {
    check_position_domain(cfg, x);
    switch (cfg.kind) {
        case FamilyKind::TypeA: {
            const double u = cfg.beta * (x + cfg.lambda);
            return cfg.beta * (a + cfg.gamma) * (std::cos(u) / std::sin(u)) +
                   cfg.delta / std::sin(u);
        }
        case FamilyKind::TypeC:
            return (a + cfg.delta) / x + 0.5 * cfg.beta * x;
        case FamilyKind::TypeD:
            return cfg.beta * x + cfg.delta;
        default:
            throw std::invalid_argument("no closed superpotential for " +
                                        family_kind_name(cfg.kind));
    }
}

double superpotential_derivative(const FamilyConfig& cfg, double x, double a) {
    check_position_domain(cfg, x);
    switch (cfg.kind) {
        case FamilyKind::TypeA: {
            const double u = cfg.beta * (x + cfg.lambda);
            const double s = std::sin(u);
            const double csc2 = 1.0 / (s * s);
            return -cfg.beta * cfg.beta * (a + cfg.gamma) * csc2 -
                   cfg.delta * cfg.beta * (std::cos(u) / (s * s));
        }
        case FamilyKind::TypeC:
            return -(a + cfg.delta) / (x * x) + 0.5 * cfg.beta;
        case FamilyKind::TypeD:
            return cfg.beta;
        default:
            throw std::invalid_argument("no closed superpotential for " +
                                        family_kind_name(cfg.kind));
    }
}

std::pair<double, double> partner_potentials(const FamilyConfig& cfg, double x,
                                             double a) {
    const double w = superpotential(cfg, x, a);
    const double wp = superpotential_derivative(cfg, x, a);
    return {w * w - eta * wp, w * w + eta * wp};
}

}  // namespace sis
