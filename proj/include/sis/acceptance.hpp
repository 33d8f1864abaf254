#pragma once

#include <string>
#include <utility>
#include <vector>

#include <sis/family.hpp>
#include <sis/functional.hpp>
#include <sis/measure.hpp>

namespace sis {

// Outcome of one verification criterion: the binding metric (the part that
// came closest to its threshold) plus a one-line account of what was run.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double metric = 0.0;
    double threshold = 0.0;
    std::string detail;
};

// Deliberate corruption hooks for exercising the failure path end to end.
struct FaultInjection {
    bool wrong_measure_constant = false;
};

// The canonical family/functional pairing behind each measure-catalog entry,
// at the parameters the verification suite pins down.
std::pair<FamilyConfig, ZSpec> reference_pairing(MeasureKind kind);

// Run the numbered criteria; `only` filters by group token ("oscillator",
// "products", "normalization", "measures", "temporal", "action",
// "annihilation", "position", "uncertainty", "radius") or by number, empty
// meaning all.  Results come back ordered by id.
std::vector<CriterionResult> run_acceptance(
    const std::vector<std::string>& only = {},
    const FaultInjection& fault = {});

}  // namespace sis
