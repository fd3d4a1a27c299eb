#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "scut/decomposition.hpp"
#include "scut/oracle.hpp"
#include "scut/rounding.hpp"

namespace scut {

// Runtime failure tagged with the pipeline phase that produced it.
struct PhasedError : std::runtime_error {
    std::string phase;
    bool guard;
    PhasedError(std::string ph, const std::string& msg, bool g)
        : std::runtime_error(msg), phase(std::move(ph)), guard(g) {}
};

struct SolveOptions {
    enum class Mode { Exact, Randomized, Derandomized };
    Mode mode = Mode::Derandomized;
    std::optional<TreeDecomposition> td; // user-supplied, validated before use
    int ell = 0;                         // 0 derives it from the node count
    uint64_t seed = 0;
    int samples = 64; // randomized-mode draws, also the rescue budget
    bool force_lp = false;
    bool float_backend = false;
    bool parallel = true;
    long long guard = Relaxation::kDefaultVariableGuard;
};

struct DecompositionSummary {
    int width = 0;
    int depth = 0;
    int bags = 0;
    int max_adhesion = 0;
};

struct SolveReport {
    Cut cut;
    std::optional<Rat> opt_lp;
    bool approx_certificate = false; // phi(cut) <= 2 opt_lp (LP path) or exactness (oracle path)
    bool fallback = false;           // rounding produced no proper cut, rescue search used
    std::string mode;                // "exact" | "randomized" | "derandomized"
    int ell_used = 0;                // 0 on the oracle path
    uint64_t seed = 0;
    std::optional<DecompositionSummary> decomposition;
    std::optional<LpStats> lp;
    double timing_seconds = 0;
};

// Small instances go to the exhaustive oracle unless force_lp asks for the
// relaxation; mode Exact forces the oracle at any size its guard accepts.
SolveReport run_solve(const Instance& inst, const SolveOptions& opt);

// Sorted-key JSON. timing_seconds is the only field that varies between
// identical runs on the same input and seed.
std::string report_json(const SolveReport& rep);

} // namespace scut
