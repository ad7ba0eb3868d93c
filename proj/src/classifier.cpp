#include "tubeops/classifier.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace tubeops {

namespace {

constexpr double kCriticalTol = 1e-9;

enum class SlotKind { one, finite_gt1, infinite };

SlotKind slot_kind(const Exponent& e) {
    if (e.is_inf()) return SlotKind::infinite;
    if (e.is_one()) return SlotKind::one;
    return SlotKind::finite_gt1;
}

struct SlotRule {
    double lambda = 0.0;
    bool alpha_used = false;
    bool beta_used = false;
    std::vector<ConditionEval> conditions;

    void add(std::string name, double margin) {
        conditions.push_back({std::move(name), margin > 0.0, margin});
    }
    void add_closed(std::string name, double margin) {  // non-strict inequality
        conditions.push_back({std::move(name), margin >= 0.0, margin});
    }
};

std::string slot_name(const char* base, int i) {
    return std::string(base) + std::to_string(i + 1);
}

/// Source-side conditions and lambda contribution for slot i, q_i finite.
SlotRule finite_target_rule(int n, int i, const Exponent& pi, double qi,
                            const OperatorParams& pp) {
    SlotRule r;
    r.alpha_used = true;
    r.beta_used = true;
    const double np1 = n + 1.0;
    r.add(slot_name("beta", i) + "_range", pp.beta[i] + 1.0 + qi * pp.a[i]);
    if (pi.is_one()) {
        r.add(slot_name("alpha", i) + "_range", pp.b[i] - pp.alpha[i]);
        r.lambda = (np1 + pp.beta[i]) / qi - (np1 + pp.alpha[i]);
    } else {
        const double p = pi.value();
        r.add(slot_name("alpha", i) + "_range",
              p * (pp.b[i] + 1.0) - (pp.alpha[i] + 1.0));
        r.lambda = (np1 + pp.beta[i]) / qi - (np1 + pp.alpha[i]) / p;
    }
    return r;
}

/// Source-side conditions and lambda contribution for slot i, q_i = inf.
SlotRule infinite_target_rule(int n, int i, const Exponent& pi,
                              const OperatorParams& pp) {
    SlotRule r;
    const double np1 = n + 1.0;
    switch (slot_kind(pi)) {
        case SlotKind::finite_gt1: {
            const double p = pi.value();
            r.alpha_used = true;
            r.add(slot_name("a", i) + "_positive", pp.a[i]);
            r.add(slot_name("alpha", i) + "_range",
                  p * (pp.b[i] + 1.0) - (pp.alpha[i] + 1.0));
            r.lambda = -(np1 + pp.alpha[i]) / p;
            break;
        }
        case SlotKind::one:
            r.alpha_used = true;
            r.add_closed(slot_name("a", i) + "_nonnegative", pp.a[i]);
            r.add_closed(slot_name("alpha", i) + "_range", pp.b[i] - pp.alpha[i]);
            r.lambda = -(np1 + pp.alpha[i]);
            break;
        case SlotKind::infinite:
            r.add(slot_name("a", i) + "_positive", pp.a[i]);
            r.add(slot_name("b", i) + "_range", pp.b[i] + 1.0);
            r.lambda = 0.0;
            break;
    }
    return r;
}

std::string theorem_id_finite_q(SlotKind k1, SlotKind k2) {
    if (k1 == SlotKind::finite_gt1 && k2 == SlotKind::finite_gt1) return "6.1";
    if (k1 == SlotKind::one && k2 == SlotKind::one) return "6.2";
    if (k1 == SlotKind::finite_gt1 && k2 == SlotKind::one) return "6.3";
    return "6.4";
}

std::string theorem_id_inf_q(SlotKind k1, SlotKind k2) {
    if (k1 == SlotKind::finite_gt1 && k2 == SlotKind::finite_gt1) return "6.5";
    if (k1 == SlotKind::one && k2 == SlotKind::one) return "6.6";
    if (k1 == SlotKind::one && k2 == SlotKind::finite_gt1) return "6.7";
    if (k1 == SlotKind::finite_gt1 && k2 == SlotKind::one) return "6.8";
    if (k1 == SlotKind::infinite && k2 == SlotKind::infinite) return "6.9";
    if (k1 == SlotKind::one && k2 == SlotKind::infinite) return "6.10";
    if (k1 == SlotKind::infinite && k2 == SlotKind::one) return "6.11";
    if (k1 == SlotKind::infinite && k2 == SlotKind::finite_gt1) return "6.12";
    return "6.13";  // (finite>1, inf)
}

BoundednessVerdict outside(OperatorKind kind) {
    BoundednessVerdict v;
    v.status = Boundedness::outside_coverage;
    v.kind = kind;
    return v;
}

}  // namespace

std::string to_string(Boundedness s) {
    switch (s) {
        case Boundedness::bounded: return "bounded";
        case Boundedness::unbounded: return "unbounded";
        case Boundedness::outside_coverage: return "outside_coverage";
        case Boundedness::inadmissible_weights: return "inadmissible_weights";
    }
    return "outside_coverage";
}

std::string BoundednessVerdict::to_json() const {
    nlohmann::ordered_json j;
    j["status"] = to_string(status);
    if (theorem.empty())
        j["theorem"] = nullptr;
    else
        j["theorem"] = theorem;
    if (has_lambda) {
        j["lambda"] = {lambda[0], lambda[1]};
        j["critical_c"] = {critical_c[0], critical_c[1]};
    } else {
        j["lambda"] = nullptr;
        j["critical_c"] = nullptr;
    }
    j["failed"] = failed_conditions;
    return j.dump();
}

BoundednessVerdict classify(int n, const MixedExponents& p, const MixedExponents& q,
                            const OperatorParams& params, OperatorKind kind) {
    const SlotKind pk[2] = {slot_kind(p.p1), slot_kind(p.p2)};

    BoundednessVerdict v;
    v.kind = kind;
    SlotRule rules[2];

    if (q.both_finite()) {
        // The finite-target characterizations all sit inside p+ <= q-,
        // with p_i = 1 slots trivially below any q.  Any infinite p entry
        // or a finite p exceeding q- is uncovered.
        if (p.p1.is_inf() || p.p2.is_inf()) return outside(kind);
        const double qmin = q.minus().value();
        for (int i = 0; i < 2; ++i) {
            const Exponent& pi = p.at(i);
            if (!pi.is_one() && pi.value() > qmin) return outside(kind);
        }
        v.theorem = theorem_id_finite_q(pk[0], pk[1]);
        for (int i = 0; i < 2; ++i)
            rules[i] = finite_target_rule(n, i, p.at(i), q.at(i).value(), params);
    } else if (q.both_inf()) {
        v.theorem = theorem_id_inf_q(pk[0], pk[1]);
        for (int i = 0; i < 2; ++i)
            rules[i] = infinite_target_rule(n, i, p.at(i), params);
    } else {
        // Exactly one infinite target exponent: no theorem applies.
        return outside(kind);
    }

    // Weights the regime actually reads must lie in the admissible range.
    for (int i = 0; i < 2; ++i) {
        if (rules[i].alpha_used && !(params.alpha[i] > -1.0))
            v.failed_conditions.push_back(slot_name("alpha", i) + "_admissible");
        if (rules[i].beta_used && !(params.beta[i] > -1.0))
            v.failed_conditions.push_back(slot_name("beta", i) + "_admissible");
    }
    if (!v.failed_conditions.empty()) {
        v.status = Boundedness::inadmissible_weights;
        return v;
    }

    v.has_lambda = true;
    for (int i = 0; i < 2; ++i) {
        v.lambda[i] = rules[i].lambda;
        v.critical_c[i] = n + 1.0 + params.a[i] + params.b[i] + rules[i].lambda;
        for (ConditionEval& cond : rules[i].conditions) {
            if (!cond.ok) v.failed_conditions.push_back(cond.name);
            v.conditions.push_back(std::move(cond));
        }
        ConditionEval crit;
        crit.name = slot_name("c", i) + "_critical";
        crit.margin = kCriticalTol - std::abs(params.c[i] - v.critical_c[i]);
        crit.ok = crit.margin >= 0.0;
        if (!crit.ok) v.failed_conditions.push_back(crit.name);
        v.conditions.push_back(std::move(crit));
    }
    v.status = v.failed_conditions.empty() ? Boundedness::bounded
                                           : Boundedness::unbounded;
    return v;
}

namespace {

/// Statuses predicted by a corollary's own condition set, used to
/// cross-check the delegated verdict.  disagree() throws: a mismatch
/// means the dispatch logic contradicts the corollary it specializes.
void require_agreement(const BoundednessVerdict& delegated, Boundedness predicted,
                       const char* corollary) {
    if (delegated.status != predicted)
        throw std::logic_error(std::string("corollary ") + corollary +
                               " disagrees with the delegated classification");
}

bool approx_eq(double a, double b) { return std::abs(a - b) <= kCriticalTol; }

}  // namespace

BoundednessVerdict classify_Tc(int n, const MixedExponents& p, const MixedExponents& q,
                               RealPair c, RealPair gamma, RealPair beta) {
    OperatorParams params = make_Tc(c, gamma);
    params.beta = beta;
    params.formal = true;
    BoundednessVerdict v = classify(n, p, q, params, OperatorKind::T);
    if (v.status == Boundedness::outside_coverage ||
        v.status == Boundedness::inadmissible_weights)
        return v;
    const double np1 = n + 1.0;

    if (q.both_finite() && !p.p1.is_one() && !p.p2.is_one()) {
        // Bounded iff beta_i > -1 and c_i sits on the critical line.
        bool ok = true;
        for (int i = 0; i < 2; ++i) {
            const double lam = (np1 + beta[i]) / q.at(i).value() -
                               (np1 + gamma[i]) / p.at(i).value();
            ok = ok && beta[i] > -1.0 && approx_eq(c[i], np1 + gamma[i] + lam);
        }
        require_agreement(v, ok ? Boundedness::bounded : Boundedness::unbounded, "7.1");
        v.theorem = "7.1";
    } else if (p.p1.is_one() && p.p2.is_one() && q.both_inf()) {
        const bool ok = approx_eq(c[0], 0.0) && approx_eq(c[1], 0.0);
        require_agreement(v, ok ? Boundedness::bounded : Boundedness::unbounded, "7.2");
        v.theorem = "7.2";
    } else if ((q.both_finite() && (p.p1.is_one() || p.p2.is_one())) ||
               (q.both_inf() && !(p.p1.is_one() && p.p2.is_one()))) {
        // The unbounded cases: any p_i = 1 slot with a finite target forces
        // gamma_i < gamma_i, and an infinite target needs a_i > 0 while
        // a = 0; either way no admissible choice of c helps.
        require_agreement(v, Boundedness::unbounded, "7.3");
        v.theorem = "7.3";
    }
    return v;
}

BoundednessVerdict classify_projection(int n, const MixedExponents& p,
                                       const MixedExponents& q, RealPair gamma,
                                       RealPair alpha, RealPair beta) {
    OperatorParams params = make_projection(n, gamma);
    params.alpha = alpha;
    params.beta = beta;
    params.formal = true;

    const bool p_is_11 = p.p1.is_one() && p.p2.is_one();
    if (p_is_11 && q.both_inf()) {
        // The characterization needs alpha_i = -(n+1), outside the
        // admissible weight range; boundedness is unreachable here.
        BoundednessVerdict v;
        v.status = Boundedness::inadmissible_weights;
        v.theorem = "7.9";
        for (int i = 0; i < 2; ++i)
            v.failed_conditions.push_back(slot_name("alpha", i) + "_admissible");
        return v;
    }

    BoundednessVerdict v = classify(n, p, q, params, OperatorKind::T);
    if (v.status == Boundedness::outside_coverage ||
        v.status == Boundedness::inadmissible_weights)
        return v;
    const double np1 = n + 1.0;

    if (q.both_finite()) {
        bool ok = true;
        for (int i = 0; i < 2; ++i) {
            const double qi = q.at(i).value();
            if (p.at(i).is_one())
                ok = ok && gamma[i] > alpha[i] &&
                     approx_eq(np1 + beta[i], qi * (np1 + alpha[i]));
            else {
                const double pi = p.at(i).value();
                ok = ok && pi * (gamma[i] + 1.0) > alpha[i] + 1.0 &&
                     approx_eq(pi * (np1 + beta[i]), qi * (np1 + alpha[i]));
            }
        }
        const char* id = p_is_11 ? "7.5"
                         : (p.p1.is_one() || p.p2.is_one())
                             ? (p.p2.is_one() ? "7.6" : "7.7")
                             : "7.4";
        require_agreement(v, ok ? Boundedness::bounded : Boundedness::unbounded, id);
        v.theorem = id;
    } else if (q.both_inf()) {
        // p != (1,1) here; always unbounded.
        require_agreement(v, Boundedness::unbounded, "7.10");
        v.theorem = "7.10";
    }
    return v;
}

BoundednessVerdict classify_berezin(int n, const MixedExponents& p,
                                    const MixedExponents& q, RealPair gamma,
                                    RealPair alpha, RealPair beta) {
    OperatorParams params = make_berezin(n, gamma);
    params.alpha = alpha;
    params.beta = beta;
    params.formal = true;

    if (q.both_inf() && !p.both_inf()) {
        // Every characterization with an infinite target and a non-sup
        // source slot needs alpha_i = -(n+1): unreachable for admissible
        // weights.  Ids follow the corollary order for the source pattern.
        BoundednessVerdict v;
        v.status = Boundedness::inadmissible_weights;
        const SlotKind k1 = slot_kind(p.p1), k2 = slot_kind(p.p2);
        if (k1 == SlotKind::finite_gt1 && k2 == SlotKind::finite_gt1)
            v.theorem = "7.16";
        else if (k1 == SlotKind::one && k2 == SlotKind::one)
            v.theorem = "7.17";
        else if (k1 == SlotKind::one && k2 == SlotKind::finite_gt1)
            v.theorem = "7.18";
        else if (k1 == SlotKind::finite_gt1 && k2 == SlotKind::one)
            v.theorem = "7.19";
        else if (k1 == SlotKind::one || k2 == SlotKind::one)
            v.theorem = "7.21";
        else
            v.theorem = "7.22";
        for (int i = 0; i < 2; ++i)
            v.failed_conditions.push_back(slot_name("alpha", i) + "_admissible");
        return v;
    }

    BoundednessVerdict v = classify(n, p, q, params, OperatorKind::S);
    if (v.status == Boundedness::outside_coverage ||
        v.status == Boundedness::inadmissible_weights)
        return v;
    const double np1 = n + 1.0;

    if (q.both_finite()) {
        bool ok = true;
        for (int i = 0; i < 2; ++i) {
            const double qi = q.at(i).value();
            ok = ok && -qi * (np1 + gamma[i]) < beta[i] + 1.0;
            if (p.at(i).is_one())
                ok = ok && alpha[i] < gamma[i] &&
                     approx_eq(np1 + beta[i], qi * (np1 + alpha[i]));
            else {
                const double pi = p.at(i).value();
                ok = ok && alpha[i] + 1.0 < pi * (gamma[i] + 1.0) &&
                     approx_eq(pi * (np1 + beta[i]), qi * (np1 + alpha[i]));
            }
        }
        const bool p11 = p.p1.is_one() && p.p2.is_one();
        const char* id = p11 ? "7.13"
                         : (p.p1.is_one() || p.p2.is_one())
                             ? (p.p2.is_one() ? "7.14" : "7.15")
                             : "7.12";
        require_agreement(v, ok ? Boundedness::bounded : Boundedness::unbounded, id);
        v.theorem = id;
    } else if (q.both_inf()) {
        // p = (inf, inf): always bounded.
        require_agreement(v, Boundedness::bounded, "7.20");
        v.theorem = "7.20";
    }
    return v;
}

}  // namespace tubeops
