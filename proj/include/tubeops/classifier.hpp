#pragma once

#include <string>
#include <vector>

#include "tubeops/exponents.hpp"
#include "tubeops/operators.hpp"

namespace tubeops {

enum class Boundedness { bounded, unbounded, outside_coverage, inadmissible_weights };
enum class OperatorKind { T, S };

std::string to_string(Boundedness s);

/// A named theorem condition with the amount by which it holds
/// (negative when violated; the critical-line entry reports tolerance
/// minus deviation).
struct ConditionEval {
    std::string name;
    bool ok = false;
    double margin = 0.0;
};

/// Outcome of the exact boundedness classification.  The theorem table
/// asserts S bounded <=> T bounded <=> parameter conditions, so the
/// operator kind is recorded for reporting only and never changes the
/// verdict.
struct BoundednessVerdict {
    Boundedness status = Boundedness::outside_coverage;
    OperatorKind kind = OperatorKind::T;
    std::string theorem;                  // "6.1".."6.13", or a corollary id
    bool has_lambda = false;
    RealPair lambda{0.0, 0.0};
    RealPair critical_c{0.0, 0.0};        // the c that would be bounded, when pinned
    std::vector<ConditionEval> conditions;
    std::vector<std::string> failed_conditions;

    std::string to_json() const;          // stable shape, see External Interfaces
};

/// Dispatch over the thirteen characterizations.  Total: anything outside
/// every hypothesis is reported outside_coverage; weights that the regime
/// actually uses must exceed -1 or the verdict is inadmissible_weights.
/// The critical-line equality c_i = n+1+a_i+b_i+lambda_i is tested with
/// absolute tolerance 1e-9 (the mathematical condition is exact equality).
BoundednessVerdict classify(int n, const MixedExponents& p, const MixedExponents& q,
                            const OperatorParams& params,
                            OperatorKind kind = OperatorKind::T);

/// Corollary-form entry points for the three special operators.  Each
/// delegates to classify with the corresponding parameter triple and
/// re-derives the corollary's own conditions as a cross-check; regimes
/// whose corollary conditions force a weight equal to -(n+1) (outside the
/// admissible range) are reported inadmissible_weights.
BoundednessVerdict classify_projection(int n, const MixedExponents& p,
                                       const MixedExponents& q, RealPair gamma,
                                       RealPair alpha, RealPair beta);

BoundednessVerdict classify_berezin(int n, const MixedExponents& p,
                                    const MixedExponents& q, RealPair gamma,
                                    RealPair alpha, RealPair beta);

BoundednessVerdict classify_Tc(int n, const MixedExponents& p, const MixedExponents& q,
                               RealPair c, RealPair gamma, RealPair beta);

}  // namespace tubeops
