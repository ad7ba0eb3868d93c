// Command-line front end: exact classification, certificate construction,
// identity checks, norm sweeps and operator evaluation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tubeops/classifier.hpp"
#include "tubeops/geometry.hpp"
#include "tubeops/integration.hpp"
#include "tubeops/operators.hpp"
#include "tubeops/schur.hpp"
#include "tubeops/selftest.hpp"
#include "tubeops/witnesses.hpp"

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct GlobalOpts {
    std::uint64_t seed = 0;
    double rel_tol = 1e-3;
    long max_evals = 4'000'000;
    std::string format = "human";
    std::string output;
    std::string config_path;

    tubeops::QuadratureConfig quad() const {
        tubeops::QuadratureConfig qc;
        qc.rel_tol = rel_tol;
        qc.max_evals = max_evals;
        qc.seed = seed;
        return qc;
    }
};

struct ParamOpts {
    int n = 1;
    std::string p1 = "2", p2 = "2", q1 = "2", q2 = "2";
    double a1 = 0, a2 = 0, b1 = 0, b2 = 0, c1 = 0, c2 = 0;
    double alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
    double gamma1 = 0, gamma2 = 0;
    std::string op = "T";
    bool formal = false;

    tubeops::MixedExponents p() const {
        return {tubeops::Exponent::parse(p1), tubeops::Exponent::parse(p2)};
    }
    tubeops::MixedExponents q() const {
        return {tubeops::Exponent::parse(q1), tubeops::Exponent::parse(q2)};
    }
    tubeops::OperatorParams params() const {
        tubeops::OperatorParams P;
        P.a = {a1, a2};
        P.b = {b1, b2};
        P.c = {c1, c2};
        P.alpha = {alpha1, alpha2};
        P.beta = {beta1, beta2};
        P.formal = formal;
        return P;
    }
};

void add_param_flags(CLI::App* cmd, ParamOpts& o, bool with_operator) {
    cmd->add_option("--n", o.n, "tube dimension (1 uses deterministic quadrature)");
    cmd->add_option("--p1", o.p1, "source exponent, slot 1 (number or inf)");
    cmd->add_option("--p2", o.p2, "source exponent, slot 2");
    cmd->add_option("--q1", o.q1, "target exponent, slot 1 (number or inf)");
    cmd->add_option("--q2", o.q2, "target exponent, slot 2");
    cmd->add_option("--a1", o.a1, "outer power, slot 1");
    cmd->add_option("--a2", o.a2, "outer power, slot 2");
    cmd->add_option("--b1", o.b1, "inner power, slot 1");
    cmd->add_option("--b2", o.b2, "inner power, slot 2");
    cmd->add_option("--c1", o.c1, "kernel power, slot 1");
    cmd->add_option("--c2", o.c2, "kernel power, slot 2");
    cmd->add_option("--alpha1", o.alpha1, "source weight, slot 1");
    cmd->add_option("--alpha2", o.alpha2, "source weight, slot 2");
    cmd->add_option("--beta1", o.beta1, "target weight, slot 1");
    cmd->add_option("--beta2", o.beta2, "target weight, slot 2");
    cmd->add_option("--gamma1", o.gamma1, "weight parameter for the named operators");
    cmd->add_option("--gamma2", o.gamma2, "weight parameter for the named operators");
    cmd->add_flag("--formal", o.formal,
                  "allow weights <= -1 for classification-only queries");
    if (with_operator)
        cmd->add_option("--operator", o.op, "T | S | projection | berezin | tc")
            ->check(CLI::IsMember({"T", "S", "projection", "berezin", "tc"}));
}

/// Source weights <= -1 are a usage error unless --formal asks for a
/// formal classification.
void require_source_weights(const ParamOpts& o) {
    if (o.formal) return;
    const bool tc_like = o.op == "tc";
    const double w1 = tc_like ? o.gamma1 : o.alpha1;
    const double w2 = tc_like ? o.gamma2 : o.alpha2;
    if (!(w1 > -1.0) || !(w2 > -1.0))
        throw CLI::ValidationError(
            "source weight <= -1; pass --formal for a formal classification");
}

std::ostream& out_stream(const GlobalOpts& g, std::ofstream& file) {
    if (g.output.empty()) return std::cout;
    file.open(g.output);
    if (!file) throw CLI::ValidationError("cannot open output file " + g.output);
    return file;
}

int status_code(tubeops::Boundedness s) {
    switch (s) {
        case tubeops::Boundedness::bounded: return 0;
        case tubeops::Boundedness::unbounded: return 1;
        case tubeops::Boundedness::outside_coverage: return 2;
        case tubeops::Boundedness::inadmissible_weights: return 3;
    }
    return 2;
}

int run_classify(const GlobalOpts& g, const ParamOpts& o) {
    require_source_weights(o);
    tubeops::BoundednessVerdict v;
    if (o.op == "projection")
        v = tubeops::classify_projection(o.n, o.p(), o.q(), {o.gamma1, o.gamma2},
                                         {o.alpha1, o.alpha2}, {o.beta1, o.beta2});
    else if (o.op == "berezin")
        v = tubeops::classify_berezin(o.n, o.p(), o.q(), {o.gamma1, o.gamma2},
                                      {o.alpha1, o.alpha2}, {o.beta1, o.beta2});
    else if (o.op == "tc")
        v = tubeops::classify_Tc(o.n, o.p(), o.q(), {o.c1, o.c2}, {o.gamma1, o.gamma2},
                                 {o.beta1, o.beta2});
    else
        v = tubeops::classify(o.n, o.p(), o.q(), o.params(),
                              o.op == "S" ? tubeops::OperatorKind::S
                                          : tubeops::OperatorKind::T);

    std::ofstream file;
    std::ostream& out = out_stream(g, file);
    if (g.format == "json") {
        out << v.to_json() << "\n";
    } else if (g.format == "csv") {
        out << "key,value\n";
        out << "status," << tubeops::to_string(v.status) << "\n";
        out << "theorem," << (v.theorem.empty() ? "-" : v.theorem) << "\n";
        if (v.has_lambda) {
            out << "lambda1," << num(v.lambda[0]) << "\n";
            out << "lambda2," << num(v.lambda[1]) << "\n";
            out << "critical_c1," << num(v.critical_c[0]) << "\n";
            out << "critical_c2," << num(v.critical_c[1]) << "\n";
        }
        for (const auto& c : v.conditions)
            out << "cond:" << c.name << "," << (c.ok ? "ok" : "violated") << ":"
                << num(c.margin) << "\n";
    } else {
        out << "status: " << tubeops::to_string(v.status) << "\n";
        if (!v.theorem.empty()) out << "regime: " << v.theorem << "\n";
        if (v.has_lambda) {
            out << "lambda: (" << num(v.lambda[0]) << ", " << num(v.lambda[1]) << ")\n";
            out << "critical c: (" << num(v.critical_c[0]) << ", "
                << num(v.critical_c[1]) << ")\n";
        }
        for (const auto& c : v.conditions)
            out << "  " << (c.ok ? "[ok]      " : "[violated]") << " " << c.name
                << "  margin " << num(c.margin) << "\n";
        if (!v.failed_conditions.empty()) {
            out << "failed:";
            for (const auto& f : v.failed_conditions) out << " " << f;
            out << "\n";
        }
    }
    return status_code(v.status);
}

int run_verify_identity(const GlobalOpts& g, int n, const std::string& which, double r,
                        double s, double t, double zx, double zy, double ux, double uy) {
    const auto qc = g.quad();
    std::ofstream file;
    std::ostream& out = out_stream(g, file);
    if (which == "first") {
        const auto rep = tubeops::verify_identity_first(
            n, r, s, t, tubeops::TubePoint::half_plane(zx, zy),
            tubeops::TubePoint::half_plane(ux, uy), qc);
        if (g.format == "json") {
            ordered_json j;
            j["identity"] = "first";
            j["lhs"] = {rep.lhs.real(), rep.lhs.imag()};
            j["rhs"] = {rep.rhs.real(), rep.rhs.imag()};
            j["rel_err"] = rep.rel_err;
            j["converged"] = rep.converged;
            j["evals"] = rep.evals;
            out << j.dump() << "\n";
        } else {
            out << "lhs: " << num(rep.lhs.real()) << " + " << num(rep.lhs.imag())
                << "i\n";
            out << "rhs: " << num(rep.rhs.real()) << " + " << num(rep.rhs.imag())
                << "i\n";
            out << "rel_err: " << num(rep.rel_err) << "\n";
            out << "converged: " << (rep.converged ? "yes" : "no") << "\n";
        }
        return rep.converged ? 0 : 1;
    }
    std::vector<tubeops::TubePoint> zs;
    for (double h : {0.4, 0.8, 1.0, 2.5, 5.0})
        zs.push_back(tubeops::TubePoint::half_plane(0.3 * h, h));
    const auto rep = tubeops::verify_identity_second(n, s, t, zs, qc);
    if (g.format == "json") {
        ordered_json j;
        j["identity"] = "second";
        j["constant_estimate"] = rep.constant_estimate;
        j["homogeneity_spread"] = rep.homogeneity_spread;
        j["divergent"] = rep.divergent;
        j["converged"] = rep.converged;
        j["scaled_values"] = rep.scaled_values;
        out << j.dump() << "\n";
    } else {
        out << "constant estimate: " << num(rep.constant_estimate) << "\n";
        out << "homogeneity spread: " << num(rep.homogeneity_spread) << "\n";
        out << "divergent: " << (rep.divergent ? "yes" : "no") << "\n";
        out << "converged: " << (rep.converged ? "yes" : "no") << "\n";
    }
    return (rep.converged || rep.divergent) ? 0 : 1;
}

int run_certificate(const GlobalOpts& g, const ParamOpts& o, int verify_samples) {
    require_source_weights(o);
    std::ofstream file;
    std::ostream& out = out_stream(g, file);
    try {
        const auto cert =
            tubeops::build_certificate(o.n, o.p(), o.q(), o.params());
        if (g.format == "json") {
            out << cert.to_json() << "\n";
        } else {
            out << "regime: " << cert.regime << "\n";
            for (int i = 0; i < 2; ++i) {
                out << "slot " << i + 1 << ": tau " << num(cert.tau[i]) << "  r "
                    << num(cert.r[i]) << " in (" << num(cert.r_interval[i].lo) << ", "
                    << num(cert.r_interval[i].hi) << ")  s " << num(cert.s[i])
                    << " in (" << num(cert.s_interval[i].lo) << ", "
                    << num(cert.s_interval[i].hi) << ")\n";
                out << "        gamma " << num(cert.gamma[i]) << "  delta "
                    << num(cert.delta[i]) << "  margin " << num(cert.margins[i])
                    << "\n";
            }
        }
        if (verify_samples > 0) {
            const auto ver =
                tubeops::verify_schur_conditions(cert, verify_samples, g.quad());
            out << "verification max spread: " << num(ver.max_spread)
                << (ver.converged ? "" : " (not converged)") << "\n";
            return ver.passed(5e-2) ? 0 : 1;
        }
        return 0;
    } catch (const tubeops::InfeasibleError& e) {
        out << "infeasible: " << e.what() << "\n";
        return 1;
    }
}

int run_sweep(const GlobalOpts& g, const ParamOpts& o, const std::string& scales_csv) {
    require_source_weights(o);
    std::vector<double> scales;
    std::stringstream ss(scales_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) scales.push_back(std::stod(tok));
    if (scales.size() < 2) throw CLI::ValidationError("need at least two --scales");
    const auto res =
        tubeops::blowup_sweep(o.n, o.p(), o.q(), o.params(), scales, g.quad());
    std::ofstream file;
    std::ostream& out = out_stream(g, file);
    if (g.format == "json") {
        ordered_json j;
        j["slope"] = res.slope;
        j["predicted_slope"] = res.predicted_slope;
        j["divergent"] = res.divergent;
        auto pts = ordered_json::array();
        for (const auto& pt : res.points)
            pts.push_back({{"scale", pt.scale}, {"ratio", pt.ratio}});
        j["points"] = pts;
        out << j.dump() << "\n";
    } else {
        out << res.csv();
    }
    return res.divergent ? 1 : 0;
}

int run_apply(const GlobalOpts& g, const ParamOpts& o, double cx1, double cy1,
              double cx2, double cy2, double halfwidth, double zx, double zy,
              double wx, double wy) {
    const auto f = tubeops::make_bump(tubeops::TubePoint::half_plane(cx1, cy1),
                                      tubeops::TubePoint::half_plane(cx2, cy2),
                                      halfwidth);
    const auto z = tubeops::TubePoint::half_plane(zx, zy);
    const auto w = tubeops::TubePoint::half_plane(wx, wy);
    const auto qc = g.quad();
    tubeops::IntegralResult res;
    if (o.op == "S")
        res = tubeops::apply_S(o.params(), f, z, w, o.n, qc);
    else if (o.op == "Tstar")
        res = tubeops::apply_T_adjoint(o.params(), f, z, w, o.n, qc);
    else
        res = tubeops::apply_T(o.params(), f, z, w, o.n, qc);
    std::ofstream file;
    std::ostream& out = out_stream(g, file);
    if (g.format == "json") {
        ordered_json j;
        j["value"] = {res.value.real(), res.value.imag()};
        j["est_error"] = res.est_error;
        j["evals"] = res.evals;
        j["converged"] = res.converged;
        j["divergent"] = res.divergent;
        out << j.dump() << "\n";
    } else {
        out << "value: " << num(res.value.real()) << " + " << num(res.value.imag())
            << "i\n";
        out << "est_error: " << num(res.est_error) << "\n";
        out << "evals: " << res.evals << "\n";
        out << "converged: " << (res.converged ? "yes" : "no") << "\n";
    }
    return res.converged ? 0 : 1;
}

int run_selftest(const GlobalOpts& g, bool quick) {
    std::ofstream file;
    std::ostream& out = out_stream(g, file);
    const auto results = tubeops::run_acceptance(quick, nullptr);
    for (const auto& res : results) {
        out << (res.passed ? "PASS" : "FAIL") << "  " << res.name << "  " << res.detail
            << "\n";
        std::fprintf(stderr, "%-40s %.1fs\n", res.name.c_str(), res.seconds);
    }
    out << (tubeops::all_passed(results) ? "all checks passed"
                                         : "some checks FAILED")
        << "\n";
    return tubeops::all_passed(results) ? 0 : 1;
}

/// Loads --config (flat JSON object) and appends any option not already
/// given on the command line, so explicit flags win.
std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file " + path);
    json j = json::parse(in);
    if (!j.is_object()) throw std::runtime_error("config file must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        const std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back(flag);
        } else if (value.is_string()) {
            args.push_back(flag);
            args.push_back(value.get<std::string>());
        } else {
            args.push_back(flag);
            args.push_back(value.dump());
        }
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for two-slot kernel operators on tube domains"};
    app.fallthrough();

    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed for sampling and Monte Carlo");
    app.add_option("--rel-tol", g.rel_tol, "quadrature relative tolerance");
    app.add_option("--max-evals", g.max_evals, "quadrature evaluation budget");
    app.add_option("--format", g.format, "json | csv | human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    app.add_option("--output", g.output, "write results to this file instead of stdout");
    app.add_option("--config", g.config_path,
                   "JSON file of option defaults; explicit flags override");
    app.require_subcommand(1);

    ParamOpts po;

    auto* c_classify = app.add_subcommand("classify", "exact boundedness verdict");
    add_param_flags(c_classify, po, true);

    auto* c_ident = app.add_subcommand("verify-identity", "quadrature identity checks");
    int vi_n = 1;
    std::string vi_which = "first";
    double vi_r = 2, vi_s = 2, vi_t = 0, vi_zx = 0, vi_zy = 1, vi_ux = 0, vi_uy = 2;
    c_ident->add_option("--which", vi_which, "first | second")
        ->check(CLI::IsMember({"first", "second"}));
    c_ident->add_option("--n", vi_n, "tube dimension");
    c_ident->add_option("--r", vi_r, "first kernel power");
    c_ident->add_option("--s", vi_s, "second kernel power / modulus power");
    c_ident->add_option("--t", vi_t, "boundary-distance power");
    c_ident->add_option("--zx", vi_zx, "evaluation point, real part");
    c_ident->add_option("--zy", vi_zy, "evaluation point, imaginary part");
    c_ident->add_option("--ux", vi_ux, "second point, real part");
    c_ident->add_option("--uy", vi_uy, "second point, imaginary part");

    auto* c_cert = app.add_subcommand("certificate", "Schur test certificate");
    add_param_flags(c_cert, po, false);
    int cert_verify = 0;
    c_cert->add_option("--verify", cert_verify,
                       "also verify the Schur conditions at this many samples");

    auto* c_sweep = app.add_subcommand("sweep", "norm-ratio sweep along the vertical ray");
    add_param_flags(c_sweep, po, false);
    std::string sweep_scales = "1,2,4,8,16,32,64";
    c_sweep->add_option("--scales", sweep_scales, "comma-separated anchor heights");

    auto* c_apply = app.add_subcommand("apply", "evaluate the operator on a bump");
    add_param_flags(c_apply, po, true);
    double ap_cx1 = 0, ap_cy1 = 1.5, ap_cx2 = 0, ap_cy2 = 1.5, ap_hw = 0.6;
    double ap_zx = 0, ap_zy = 1, ap_wx = 0, ap_wy = 1;
    c_apply->add_option("--cx1", ap_cx1, "bump center, slot 1, real part");
    c_apply->add_option("--cy1", ap_cy1, "bump center, slot 1, imaginary part");
    c_apply->add_option("--cx2", ap_cx2, "bump center, slot 2, real part");
    c_apply->add_option("--cy2", ap_cy2, "bump center, slot 2, imaginary part");
    c_apply->add_option("--halfwidth", ap_hw, "bump halfwidth");
    c_apply->add_option("--zx", ap_zx, "evaluation point, slot 1, real part");
    c_apply->add_option("--zy", ap_zy, "evaluation point, slot 1, imaginary part");
    c_apply->add_option("--wx", ap_wx, "evaluation point, slot 2, real part");
    c_apply->add_option("--wy", ap_wy, "evaluation point, slot 2, imaginary part");

    auto* c_self = app.add_subcommand("selftest", "run the acceptance checks");
    bool quick = false;
    c_self->add_flag("--quick", quick, "smaller sample counts");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        args = merge_config(args);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    }
    // CLI11 consumes reversed argument vectors.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (*c_classify) return run_classify(g, po);
        if (*c_ident)
            return run_verify_identity(g, vi_n, vi_which, vi_r, vi_s, vi_t, vi_zx,
                                       vi_zy, vi_ux, vi_uy);
        if (*c_cert) return run_certificate(g, po, cert_verify);
        if (*c_sweep) return run_sweep(g, po, sweep_scales);
        if (*c_apply)
            return run_apply(g, po, ap_cx1, ap_cy1, ap_cx2, ap_cy2, ap_hw, ap_zx, ap_zy,
                             ap_wx, ap_wy);
        if (*c_self) return run_selftest(g, quick);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 64;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 70;
    }
    return 64;
}
