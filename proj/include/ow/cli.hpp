#pragma once

// Front end for the orbit-wigner binary. Header-only so the CLI tests can
// drive parsing and the command implementations in-process.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ow/acceptance.hpp"
#include "ow/validation.hpp"

namespace ow::cli {

enum class Command { eval, grid, scaling, pointwise, weak_limit, projector, selftest };

inline const char* command_name(Command c) {
    switch (c) {
        case Command::eval: return "eval";
        case Command::grid: return "grid";
        case Command::scaling: return "scaling";
        case Command::pointwise: return "pointwise";
        case Command::weak_limit: return "weak-limit";
        case Command::projector: return "projector";
        case Command::selftest: return "selftest";
    }
    return "?";
}

inline Command command_from(const std::string& s) {
    for (Command c : {Command::eval, Command::grid, Command::scaling,
                      Command::pointwise, Command::weak_limit, Command::projector,
                      Command::selftest})
        if (s == command_name(c)) return c;
    throw domain_error("unknown command: " + s);
}

struct RunConfig {
    Command command = Command::eval;
    int N = 10;
    int d = 2;
    double E = 1.0;
    std::string method = "exact";  // exact | oracle
    int m = -1;                    // quadrature order; -1 resolves to N + 4
    std::vector<double> point;     // 2d reals, x block then xi block
    std::string plane = "orbit";   // orbit | normal | "v1;v2" with 2d reals each
    double extent = 2.0;
    int res = 64;
    double u_min = -0.4;
    double u_max = 0.4;
    double w_max = 0.0;
    int steps = 40;
    long K = 1024;
    std::string regime = "on-orbit";
    std::string observable = "gaussian";
    int criterion = 0;  // selftest: 0 runs the whole gate
    std::string out = "-";
    std::string format = "csv";

    bool operator==(const RunConfig&) const = default;
};

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = nlohmann::json{{"command", command_name(c.command)},
                       {"N", c.N},
                       {"d", c.d},
                       {"E", c.E},
                       {"method", c.method},
                       {"m", c.m},
                       {"point", c.point},
                       {"plane", c.plane},
                       {"extent", c.extent},
                       {"res", c.res},
                       {"u_min", c.u_min},
                       {"u_max", c.u_max},
                       {"w_max", c.w_max},
                       {"steps", c.steps},
                       {"K", c.K},
                       {"regime", c.regime},
                       {"observable", c.observable},
                       {"criterion", c.criterion},
                       {"out", c.out},
                       {"format", c.format}};
}

inline void from_json(const nlohmann::json& j, RunConfig& c) {
    c.command = command_from(j.at("command").get<std::string>());
    j.at("N").get_to(c.N);
    j.at("d").get_to(c.d);
    j.at("E").get_to(c.E);
    j.at("method").get_to(c.method);
    j.at("m").get_to(c.m);
    j.at("point").get_to(c.point);
    j.at("plane").get_to(c.plane);
    j.at("extent").get_to(c.extent);
    j.at("res").get_to(c.res);
    j.at("u_min").get_to(c.u_min);
    j.at("u_max").get_to(c.u_max);
    j.at("w_max").get_to(c.w_max);
    j.at("steps").get_to(c.steps);
    j.at("K").get_to(c.K);
    j.at("regime").get_to(c.regime);
    j.at("observable").get_to(c.observable);
    j.at("criterion").get_to(c.criterion);
    j.at("out").get_to(c.out);
    j.at("format").get_to(c.format);
}

namespace detail {

inline std::string g17(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

// payload to --out ("-" means stdout); one-line summary when writing a file
inline void emit(const RunConfig& cfg, std::string payload,
                 const std::string& summary) {
    if (!payload.empty() && payload.back() != '\n') payload += '\n';
    if (cfg.out == "-") {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw domain_error("cannot write output path: " + cfg.out);
    f << payload;
    if (!f) throw domain_error("write failed: " + cfg.out);
    std::printf("%s\n", summary.c_str());
}

inline PhasePoint point_from(const std::vector<double>& flat, int d) {
    if (static_cast<int>(flat.size()) != 2 * d)
        throw domain_error("point needs exactly 2d comma-separated reals (x then xi)");
    return PhasePoint(std::vector<double>(flat.begin(), flat.begin() + d),
                      std::vector<double>(flat.begin() + d, flat.end()));
}

inline std::vector<double> parse_reals(const std::string& txt) {
    std::vector<double> v;
    size_t pos = 0;
    while (pos <= txt.size()) {
        const size_t comma = std::min(txt.find(',', pos), txt.size());
        try {
            size_t used = 0;
            const std::string tok = txt.substr(pos, comma - pos);
            v.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw domain_error("bad numeric list: " + txt);
        }
        pos = comma + 1;
    }
    return v;
}

inline GridSlice slice_from(const RunConfig& cfg) {
    GridSlice s;
    s.origin = PhasePoint::zero(cfg.d);
    s.extent1 = s.extent2 = cfg.extent;
    const double r = std::sqrt(0.5);
    if (cfg.plane == "orbit") {
        if (cfg.d != 2) throw domain_error("named planes are planar (d = 2)");
        s.span1 = PhasePoint({r, 0.0}, {0.0, r});
        s.span2 = PhasePoint({0.0, r}, {-r, 0.0});
    } else if (cfg.plane == "normal") {
        if (cfg.d != 2) throw domain_error("named planes are planar (d = 2)");
        s.span1 = PhasePoint({1.0, 0.0}, {0.0, 0.0});
        s.span2 = PhasePoint({0.0, 1.0}, {0.0, 0.0});
    } else {
        const size_t semi = cfg.plane.find(';');
        if (semi == std::string::npos)
            throw domain_error(
                "plane must be 'orbit', 'normal' or two ';'-separated 2d-vectors");
        s.span1 = point_from(parse_reals(cfg.plane.substr(0, semi)), cfg.d);
        s.span2 = point_from(parse_reals(cfg.plane.substr(semi + 1)), cfg.d);
    }
    return s;
}

}  // namespace detail

inline int run_eval(const RunConfig& cfg) {
    const QuantumNumbers qn(cfg.N, cfg.d, cfg.E);
    const PhasePoint p = detail::point_from(cfg.point, cfg.d);
    const int m = cfg.m < 0 ? cfg.N + 4 : cfg.m;
    double W = 0;
    if (cfg.method == "exact") {
        WignerEvaluator ev(qn, m);
        W = wigner_d(ev, p);
    } else if (cfg.d == 2) {
        W = wigner_gamma0_direct(qn, p, 1e-9);
    } else if (cfg.d == 3) {
        W = wigner_d_direct(qn, p, 64);
    } else {
        throw domain_error("the direct oracle supports d = 2 and d = 3 only");
    }

    std::string payload;
    if (cfg.format == "csv") {
        payload = "N,d,E,method,m";
        for (int a = 1; a <= cfg.d; ++a) payload += ",x" + std::to_string(a);
        for (int a = 1; a <= cfg.d; ++a) payload += ",xi" + std::to_string(a);
        payload += ",W\n" + std::to_string(cfg.N) + ',' + std::to_string(cfg.d) +
                   ',' + detail::g17(cfg.E) + ',' + cfg.method + ',' +
                   std::to_string(m);
        for (double v : p.x) payload += ',' + detail::g17(v);
        for (double v : p.xi) payload += ',' + detail::g17(v);
        payload += ',' + detail::g17(W) + '\n';
    } else {
        nlohmann::json j{{"N", cfg.N},       {"d", cfg.d},
                         {"E", cfg.E},       {"method", cfg.method},
                         {"m", m},           {"point", {{"x", p.x}, {"xi", p.xi}}},
                         {"W", W}};
        payload = j.dump();
    }
    detail::emit(cfg, payload,
                 "W = " + detail::g17(W) + " (N=" + std::to_string(cfg.N) +
                     ", d=" + std::to_string(cfg.d) + ", E=" + detail::g17(cfg.E) +
                     ", method=" + cfg.method + ", m=" + std::to_string(m) + ")");
    return 0;
}

inline int run_grid(const RunConfig& cfg) {
    const QuantumNumbers qn(cfg.N, cfg.d, cfg.E);
    const int m = cfg.m < 0 ? cfg.N + 4 : cfg.m;
    const WignerMethod method = cfg.method == "exact"
                                    ? WignerMethod::contour_shifted_exact
                                    : WignerMethod::direct_oracle;
    WignerEvaluator ev(qn, m, method);
    const WignerField field = wigner_grid(ev, detail::slice_from(cfg), cfg.res, cfg.res);
    detail::emit(cfg, cfg.format == "csv" ? field.to_csv() : field.to_json(),
                 "grid " + std::to_string(cfg.res) + "x" + std::to_string(cfg.res) +
                     " (N=" + std::to_string(cfg.N) + ", plane=" + cfg.plane + ")");
    return 0;
}

inline int run_scaling(const RunConfig& cfg) {
    const QuantumNumbers qn(cfg.N, 2, cfg.E);
    if (cfg.steps < 1) throw domain_error("steps must be positive");
    std::vector<double> ug;
    for (int i = 0; i < cfg.steps; ++i)
        ug.push_back(cfg.steps == 1 ? cfg.u_min
                                    : cfg.u_min + (cfg.u_max - cfg.u_min) * i /
                                                      (cfg.steps - 1.0));
    const std::vector<std::array<double, 2>> w0{{0.0, 0.0}};
    std::vector<ScalingRow> rows = scaling_scan(qn, ug, w0);
    if (cfg.w_max > 0) {
        const std::vector<double> u0{0.0};
        std::vector<std::array<double, 2>> wg;
        for (int i = 0; i < cfg.steps; ++i)
            wg.push_back({cfg.steps == 1 ? cfg.w_max
                                         : cfg.w_max * i / (cfg.steps - 1.0),
                          0.0});
        const auto extra = scaling_scan(qn, u0, wg);
        rows.insert(rows.end(), extra.begin(), extra.end());
    }

    std::string payload;
    if (cfg.format == "csv") {
        payload = scaling_csv(rows);
    } else {
        nlohmann::json jr = nlohmann::json::array();
        for (const auto& row : rows)
            jr.push_back({{"u", row.u},
                          {"w", {row.w[0], row.w[1]}},
                          {"exact", row.exact},
                          {"predicted", row.predicted},
                          {"error_scale", row.error_scale}});
        payload = nlohmann::json{{"N", cfg.N}, {"E", cfg.E}, {"rows", jr}}.dump();
    }
    detail::emit(cfg, payload,
                 std::to_string(rows.size()) + " scaling rows (N=" +
                     std::to_string(cfg.N) + ", E=" + detail::g17(cfg.E) + ")");
    return 0;
}

inline int run_pointwise(const RunConfig& cfg) {
    std::vector<QuantumNumbers> qns;
    Regime regime;
    std::string claim;
    double target = 0;
    if (cfg.regime == "on-orbit") {
        regime = Regime::on_orbit;
        claim = "on-orbit deviation from the edge constant";
        target = -2.0 / 3.0;
        for (int N : {25, 50, 100, 200})
            if (N <= cfg.N) qns.emplace_back(N, 2, cfg.E);
    } else if (cfg.regime == "interior") {
        regime = Regime::interior;
        claim = "interior envelope decay";
        target = -1.0 / 6.0;
        for (int N = 25; N <= cfg.N; ++N) qns.emplace_back(N, 2, cfg.E);
    } else if (cfg.regime == "off-shell") {
        regime = Regime::off_shell;
        claim = "off-shell decay";
        target = -4.0;
        for (int N : {20, 40, 60, 80})
            if (N <= cfg.N) qns.emplace_back(N, 2, cfg.E);
    } else {
        throw domain_error("regime must be on-orbit, interior or off-shell");
    }

    const ConvergenceReport rep = pointwise_scan(qns, regime);
    bool pass = false;
    if (regime == Regime::on_orbit)
        pass = rep.fitted_exponent >= -0.85 && rep.fitted_exponent <= -0.5 &&
               rep.residual <= 0.15;
    else if (regime == Regime::interior)
        pass = rep.fitted_exponent <= -0.10;
    else
        pass = rep.fitted_exponent <= -4.0;

    detail::emit(cfg,
                 cfg.format == "csv" ? rep.to_csv()
                                     : rep.to_json(claim, target, pass),
                 "fitted exponent " + detail::g17(rep.fitted_exponent) + " (" +
                     claim + (pass ? ": pass)" : ": FAIL)"));
    if (cfg.out == "-")
        std::printf("# fitted exponent %.6f, %s\n", rep.fitted_exponent,
                    pass ? "pass" : "FAIL");
    return pass ? 0 : 2;
}

inline int run_weak_limit(const RunConfig& cfg) {
    const QuantumNumbers qn(cfg.N, 2, cfg.E);
    Observable obs;
    if (cfg.observable == "unit")
        obs = Observable::one();
    else if (cfg.observable == "energy")
        obs = Observable::energy();
    else if (cfg.observable == "gaussian")
        obs = Observable::gaussian(0.7 * std::sqrt(cfg.E), gamma0(0.0, cfg.E));
    else
        throw domain_error("observable must be unit, energy or gaussian");

    const WeakLimitResult r = weak_limit_test(obs, qn);
    std::string payload;
    if (cfg.format == "csv") {
        payload = "N,E,observable,lhs,rhs,error\n" + std::to_string(cfg.N) + ',' +
                  detail::g17(cfg.E) + ',' + cfg.observable + ',' +
                  detail::g17(r.lhs) + ',' + detail::g17(r.rhs) + ',' +
                  detail::g17(r.error) + '\n';
    } else {
        payload = nlohmann::json{{"N", cfg.N},
                                 {"E", cfg.E},
                                 {"observable", cfg.observable},
                                 {"lhs", r.lhs},
                                 {"rhs", r.rhs},
                                 {"error", r.error}}
                      .dump();
    }
    detail::emit(cfg, payload,
                 "moment " + detail::g17(r.lhs) + " vs orbit average " +
                     detail::g17(r.rhs) + " (error " + detail::g17(r.error) + ")");
    return 0;
}

inline int run_projector(const RunConfig& cfg) {
    const QuantumNumbers qn(cfg.N, 2, cfg.E);
    const PhasePoint p = cfg.point.empty() ? PhasePoint::zero(2)
                                           : detail::point_from(cfg.point, 2);
    const ProjectorEstimate e = projector_average_est(p, qn, cfg.K);
    std::string payload;
    if (cfg.format == "csv") {
        payload = "N,E,K,x1,x2,xi1,xi2,value,value_half,est_error\n" +
                  std::to_string(cfg.N) + ',' + detail::g17(cfg.E) + ',' +
                  std::to_string(cfg.K);
        for (double v : p.x) payload += ',' + detail::g17(v);
        for (double v : p.xi) payload += ',' + detail::g17(v);
        payload += ',' + detail::g17(e.value) + ',' + detail::g17(e.value_half) +
                   ',' + detail::g17(e.est_error) + '\n';
    } else {
        payload = nlohmann::json{{"N", cfg.N},
                                 {"E", cfg.E},
                                 {"K", cfg.K},
                                 {"point", {{"x", p.x}, {"xi", p.xi}}},
                                 {"value", e.value},
                                 {"value_half", e.value_half},
                                 {"est_error", e.est_error}}
                      .dump();
    }
    detail::emit(cfg, payload,
                 "projector value " + detail::g17(e.value) + " +/- " +
                     detail::g17(e.est_error) + " (K=" + std::to_string(cfg.K) + ")");
    return 0;
}

inline int run_selftest(const RunConfig& cfg) {
    int failures = 0, ran = 0;
    auto report = [&](const CriterionResult& r) {
        std::printf("[%s] criterion %d: %s (%s)\n", r.pass ? "PASS" : "FAIL", r.id,
                    r.name.c_str(), r.detail.c_str());
        std::fflush(stdout);
        ++ran;
        if (!r.pass) ++failures;
    };
    if (cfg.criterion) {
        report(run_criterion(cfg.criterion));
    } else {
        for (int id = 1; id <= criterion_count(); ++id) report(run_criterion(id));
    }
    std::printf("acceptance: %d/%d criteria green\n", ran - failures, ran);
    return failures ? 2 : 0;
}

inline int execute(const RunConfig& cfg) {
    try {
        switch (cfg.command) {
            case Command::eval: return run_eval(cfg);
            case Command::grid: return run_grid(cfg);
            case Command::scaling: return run_scaling(cfg);
            case Command::pointwise: return run_pointwise(cfg);
            case Command::weak_limit: return run_weak_limit(cfg);
            case Command::projector: return run_projector(cfg);
            case Command::selftest: return run_selftest(cfg);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}

struct ParseOutcome {
    RunConfig cfg;
    int exit_code = -1;  // -1: proceed to execute(); otherwise exit now
};

// args in natural order, without the program name
inline ParseOutcome parse_args(const std::vector<std::string>& args) {
    ParseOutcome out;
    RunConfig& cfg = out.cfg;

    CLI::App app{"exact Wigner distributions of oscillator orbit states, with "
                 "their scaling, weak-limit and projector checks",
                 "orbit-wigner"};
    app.require_subcommand(1);
    app.footer(
        "flags by command:\n"
        "  eval       --N --d --E --method --m --point --out --format\n"
        "  grid       --N --d --E --method --m --plane --extent --res --out --format\n"
        "  scaling    --N --E --u-min --u-max --w-max --steps --out --format\n"
        "  pointwise  [regime] --N --E --out --format\n"
        "  weak-limit [observable] --N --E --out --format\n"
        "  projector  --N --E --K --point --out --format\n"
        "  selftest   --criterion\n"
        "ORBIT_WIGNER_THREADS caps worker threads.");

    const std::string neval = "level N";
    const std::string nd = "spatial dimension d";
    const std::string ne = "orbit energy E";
    const std::string nmeth = "evaluator backend";
    const std::string nm = "quadrature order per axis (default N + 4)";
    const std::string nout = "output path; '-' writes the payload to stdout";
    const std::string nfmt = "output format";

    auto add_io = [&](CLI::App* c) {
        c->add_option("--out", cfg.out, nout);
        c->add_option("--format", cfg.format, nfmt)
            ->check(CLI::IsMember({"csv", "json"}));
    };

    CLI::App* ev = app.add_subcommand("eval", "evaluate W at one phase-space point");
    ev->add_option("--N", cfg.N, neval);
    ev->add_option("--d", cfg.d, nd);
    ev->add_option("--E", cfg.E, ne);
    ev->add_option("--method", cfg.method, nmeth)
        ->check(CLI::IsMember({"exact", "oracle"}));
    ev->add_option("--m", cfg.m, nm);
    ev->add_option("--point", cfg.point,
                   "2d comma-separated reals, x block then xi block")
        ->delimiter(',')
        ->required();
    add_io(ev);

    CLI::App* gr = app.add_subcommand("grid", "sample W on a plane through the origin");
    gr->add_option("--N", cfg.N, neval);
    gr->add_option("--d", cfg.d, nd);
    gr->add_option("--E", cfg.E, ne);
    gr->add_option("--method", cfg.method, nmeth)
        ->check(CLI::IsMember({"exact", "oracle"}));
    gr->add_option("--m", cfg.m, nm);
    gr->add_option("--plane", cfg.plane,
                   "orbit, normal, or two ';'-separated 2d-vectors");
    gr->add_option("--extent", cfg.extent, "half-width of the sampled square");
    gr->add_option("--res", cfg.res, "lattice points per side");
    add_io(gr);

    CLI::App* sc = app.add_subcommand(
        "scaling", "exact vs predicted profile across the energy surface");
    sc->add_option("--N", cfg.N, neval);
    sc->add_option("--E", cfg.E, ne);
    sc->add_option("--u-min", cfg.u_min, "normal-coordinate scan start");
    sc->add_option("--u-max", cfg.u_max, "normal-coordinate scan end");
    sc->add_option("--w-max", cfg.w_max,
                   "if positive, also scan the transverse coordinate at u = 0");
    sc->add_option("--steps", cfg.steps, "points per scan");
    add_io(sc);

    CLI::App* pw = app.add_subcommand("pointwise", "decay-rate scan for one regime");
    pw->add_option("regime", cfg.regime, "on-orbit | interior | off-shell")
        ->check(CLI::IsMember({"on-orbit", "interior", "off-shell"}));
    pw->add_option("--N", cfg.N, "largest level to include (default 200)");
    pw->add_option("--E", cfg.E, ne);
    add_io(pw);

    CLI::App* wl = app.add_subcommand("weak-limit",
                                      "phase-space moment vs classical orbit average");
    wl->add_option("observable", cfg.observable, "unit | energy | gaussian")
        ->check(CLI::IsMember({"unit", "energy", "gaussian"}));
    wl->add_option("--N", cfg.N, "level N (default 16, capped at 20)");
    wl->add_option("--E", cfg.E, ne);
    add_io(wl);

    CLI::App* pj = app.add_subcommand("projector",
                                      "orbit-averaged Wigner value at one point");
    pj->add_option("--N", cfg.N, "level N (default 50)");
    pj->add_option("--E", cfg.E, ne);
    pj->add_option("--K", cfg.K, "sample count on the orbit space");
    pj->add_option("--point", cfg.point,
                   "4 comma-separated reals, x block then xi block (default origin)")
        ->delimiter(',');
    add_io(pj);

    CLI::App* st = app.add_subcommand("selftest", "run the acceptance gate");
    st->add_option("--criterion", cfg.criterion, "run a single criterion (1..17)")
        ->check(CLI::Range(1, 17));

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        out.exit_code = code == 0 ? 0 : 1;
        return out;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = command_from(sub->get_name());
    // per-command level defaults where 10 would be unhelpfully small
    if (cfg.command == Command::pointwise && !sub->count("--N")) cfg.N = 200;
    if (cfg.command == Command::weak_limit && !sub->count("--N")) cfg.N = 16;
    if (cfg.command == Command::projector && !sub->count("--N")) cfg.N = 50;
    return out;
}

inline int run(int argc, char** argv) {
    const ParseOutcome po = parse_args(std::vector<std::string>(argv + 1, argv + argc));
    if (po.exit_code >= 0) return po.exit_code;
    return execute(po.cfg);
}

}  // namespace ow::cli
