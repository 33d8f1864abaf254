#pragma once

#include <complex>
#include <string>

#include <sis/coherent.hpp>
#include <sis/family.hpp>
#include <sis/functional.hpp>

namespace sis {

// One fully specified run: which family, which functional, which label, and
// how to emit results.
struct RunConfig {
    FamilyConfig family;
    ZSpec zspec;
    std::complex<double> z{0.0, 0.0};
    long nmax = 64;
    double tol = 1e-8;
    std::string output = "json";  // "json" | "csv"
    std::string out_path;         // empty writes to stdout
};

// Wire tokens ("typeA", "typeC", "typeD", "selfSimilar"); throws
// std::invalid_argument for tokens outside the catalog.
std::string family_kind_token(FamilyKind kind);
FamilyKind family_kind_from_token(const std::string& token);

// Functional tokens ("const", "typeC_G", "typeA_PT1", "typeA_BG",
// "typeA_Whittaker", "ss_R", "ss_Ramanujan").
std::string z_variant_token(ZVariant v);
ZVariant z_variant_from_token(const std::string& token);

// Strict schema parse: unknown keys are rejected, except the output-only
// keys a state dump adds (coefficients, norm_factor, tail, meta), which are
// ignored so every dump re-ingests as a config.  Defaults: nmax=64,
// tol=1e-8, output=json, z=0, alpha=0; an omitted zspec block falls back to
// the constant functional with c = sqrt(gamma_const), or to the plain
// scaling functional for selfSimilar families.  Throws
// std::invalid_argument with a diagnostic.
RunConfig parse_run_config(const std::string& text);

// Canonical JSON (sorted keys, shortest round-trip numbers).
std::string serialize_run_config(const RunConfig& rc);

// Config plus coefficients, norm_factor, and tail; parses back into the
// same RunConfig.  Exact trailing zero coefficients are trimmed.
std::string serialize_state(const CoherentState& s, const RunConfig& rc);

}  // namespace sis
