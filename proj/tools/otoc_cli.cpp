// Command-line front end: reproducible OTOC experiments with CSV/JSON
// outputs. Exit codes: 0 ok, 2 bad configuration, 3 resource guard,
// 4 numerical-integrity failure.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "otoc/analysis.hpp"
#include "otoc/montecarlo.hpp"
#include "otoc/propagator.hpp"
#include "otoc/spectral.hpp"
#include "otoc/u4_exact.hpp"
#include "otoc/version.hpp"

using namespace otoc;

namespace {

std::string g_cmdline;

std::map<std::string, std::string> base_meta() {
    return {{"cmd", g_cmdline}, {"tool_version", kVersion}};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

Protocol make_protocol(const std::string& proto, const std::string& bc_text, int n,
                       const std::string& order_text) {
    const Boundary bc = bc_text == "pbc" ? Boundary::pbc : Boundary::obc;
    if (proto == "bw") return Protocol::brickwall(n, bc);
    if (proto == "s") return Protocol::staircase(n, bc);
    if (proto == "rnn") return Protocol::rnn(n, bc);
    if (proto == "a2a") return Protocol::all_to_all(n);
    if (proto == "custom") {
        std::vector<SitePair> order;
        std::istringstream in(order_text);
        std::string tok;
        while (std::getline(in, tok, ';')) {
            const auto comma = tok.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("custom order format: \"p,q;p,q;...\"");
            order.push_back({std::stoi(tok.substr(0, comma)), std::stoi(tok.substr(comma + 1))});
        }
        return Protocol::custom(n, bc, order);
    }
    throw std::invalid_argument("unknown protocol \"" + proto + "\" (bw|s|custom|rnn|a2a)");
}

SpectralResult reference_lambda2(const Protocol& proto, const GateKernel& k) {
    if (proto.n <= 10) return lambda2_dense(proto, k);
    MatrixFreeOptions opt;
    opt.max_iters = proto.n <= 22 ? 120 : 60;
    if (proto.n > 24) opt.method = SpectralMethod::difference_ratio;
    return lambda2_matrix_free(proto, k, opt);
}

void write_rate_csv(const std::string& path, const RateSeries& r,
                    const std::map<std::string, std::string>& meta) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& [key, val] : meta) out << "# " << key << "=" << val << "\n";
    out << "t,rate,defined\n";
    for (std::size_t k = 0; k < r.times.size(); ++k)
        out << r.times[k] << "," << r.rates[k] << "," << (r.defined[k] ? 1 : 0) << "\n";
    write_text(path, out.str());
}

int cmd_relax(const std::string& gate_text, const std::string& proto_text,
              const std::string& bc_text, int n, int i, std::vector<int> js, long horizon,
              int ref_n, const std::string& order, const std::string& out_prefix) {
    const GateSpec gate = parse_gate_spec(gate_text);
    Protocol proto = make_protocol(proto_text, bc_text, n, order);
    if (horizon <= 0) horizon = 2 * n;
    if (js.empty()) js = {std::min(n, 7)};

    auto series = evolve(proto, gate.kernel, i, horizon * proto.ticks_per_period());
    series.gate = gate_text;
    {
        std::ostringstream out;
        write_series_csv(out, series, base_meta());
        write_text(out_prefix + "_series.csv", out.str());
    }

    if (gate.cls == GateClass::swap) {
        std::cerr << "warning: SWAP gate gives trivial single-cell dynamics; "
                     "no relaxation analysis emitted\n";
        return 0;
    }

    // lambda2 references at the largest affordable size
    if (ref_n <= 0) ref_n = std::min(n, 20);
    std::vector<LambdaRef> refs;
    nlohmann::json refjson = nlohmann::json::array();
    for (const auto& [name, p] :
         {std::pair<std::string, Protocol>{"bw_pbc", Protocol::brickwall(ref_n, Boundary::pbc)},
          {"bw_obc", Protocol::brickwall(ref_n, Boundary::obc)},
          {"s_pbc", Protocol::staircase(ref_n, Boundary::pbc)}}) {
        const auto res = reference_lambda2(p, gate.kernel);
        refs.push_back({name, res.lambda2_abs, ref_n});
        auto jj = nlohmann::json::parse(spectral_result_json(res, gate_text));
        jj["role"] = name;
        refjson.push_back(jj);
    }
    write_text(out_prefix + "_lambda2.json", refjson.dump(2));

    for (int j : js) {
        const auto rate = rate_series(series, j);
        auto meta = base_meta();
        meta["j"] = std::to_string(j);
        write_rate_csv(out_prefix + "_rate_j" + std::to_string(j) + ".csv", rate, meta);

        const auto pred = predict_transition_time(n, i, j, gate.cls);
        double tc;
        if (pred) {
            tc = *pred;
        } else {
            // wrap/reflection arrival as the window split for generic gates
            const int dj = std::abs(j - i);
            tc = (proto.boundary == Boundary::pbc) ? (dj / 2.0 + n / 2.0) : (n - (dj - 1) / 2.0);
        }
        try {
            const auto rep = phantom_report(series, j, refs, tc);
            write_text(out_prefix + "_phantom_j" + std::to_string(j) + ".json",
                       phantom_report_json(rep));
        } catch (const std::runtime_error& e) {
            std::cerr << "warning: phantom fit skipped for j=" << j << ": " << e.what() << "\n";
        }
    }
    return 0;
}

int cmd_lightcone(const std::string& gate_text, const std::string& bc_text, int n, int i,
                  long horizon, const std::string& out_prefix) {
    const GateSpec gate = parse_gate_spec(gate_text);
    const Boundary bc = bc_text == "pbc" ? Boundary::pbc : Boundary::obc;
    Protocol proto = Protocol::brickwall(n, bc);
    if (horizon <= 0) horizon = n;

    auto series = evolve(proto, gate.kernel, i, horizon * 2);
    series.gate = gate_text;
    {
        std::ostringstream out;
        write_series_csv(out, series, base_meta());
        write_text(out_prefix + "_grid.csv", out.str());
    }

    const auto s = gate.kernel.scalars;
    std::ostringstream out;
    out.precision(17);
    for (const auto& [key, val] : base_meta()) out << "# " << key << "=" << val << "\n";
    out << "t,j,branch,sim,formula,inside_validity\n";
    for (long t = 1; t <= horizon; ++t) {
        struct Branch {
            long dj;
            const char* name;
        };
        const std::vector<Branch> branches =
            (i % 2 == 1) ? std::vector<Branch>{{2 * t, "cminus"}, {-(2 * t - 1), "cplus"}}
                         : std::vector<Branch>{{-2 * t, "cminus"}, {2 * t - 1, "cplus"}};
        for (const auto& b : branches) {
            const long jraw = i + b.dj;
            int j;
            bool exists = true;
            if (bc == Boundary::pbc) {
                j = int(((jraw - 1) % n + n) % n + 1);
            } else {
                exists = jraw >= 1 && jraw <= n;
                j = int(jraw);
            }
            if (!exists) continue;
            const bool valid = (bc == Boundary::pbc) ? (4 * t < n + 2) : true;
            out << t << "," << j << "," << b.name << "," << series.at_tick(2 * t, j) << ","
                << lightcone_value(s, i, int(jraw), t) << "," << (valid ? 1 : 0) << "\n";
        }
    }
    write_text(out_prefix + "_boundary.csv", out.str());
    return 0;
}

int cmd_spectrum(const std::string& gate_text, const std::string& proto_text,
                 const std::string& bc_text, int n, const std::string& method, int iters,
                 double tol, const std::string& order, const std::string& out_path) {
    const GateSpec gate = parse_gate_spec(gate_text);
    Protocol proto = make_protocol(proto_text, bc_text, n, order);
    SpectralResult res;
    if (method == "dense" || (method == "auto" && n <= 10)) {
        res = lambda2_dense(proto, gate.kernel);
    } else {
        MatrixFreeOptions opt;
        if (iters > 0) opt.max_iters = iters;
        if (tol > 0) opt.tol = tol;
        opt.method =
            (method == "ratio") ? SpectralMethod::difference_ratio : SpectralMethod::arnoldi;
        res = lambda2_matrix_free(proto, gate.kernel, opt);
    }
    if (!res.converged)
        throw std::runtime_error("lambda2 computation did not converge (last value " +
                                 std::to_string(res.lambda2_abs) + ", residual " +
                                 std::to_string(res.residual) + ")");
    auto j = nlohmann::json::parse(spectral_result_json(res, gate_text));
    j["cmd"] = g_cmdline;
    j["tool_version"] = kVersion;
    const std::string text = j.dump(2);
    std::cout << text << "\n";
    if (!out_path.empty()) write_text(out_path, text);
    return 0;
}

int cmd_u4(std::vector<int> qs, int n, int i, int j, int taumax, const std::string& bc_text,
           const std::string& out_path) {
    const Boundary bc = bc_text == "pbc" ? Boundary::pbc : Boundary::obc;
    if (taumax <= 0) taumax = 2 * n;
    if (qs.empty()) qs = {2};
    std::ostringstream out;
    out.precision(17);
    for (const auto& [key, val] : base_meta()) out << "# " << key << "=" << val << "\n";
    out << "# time convention: tau counts gate rows, t = tau/2 periods\n";
    out << "tau,t,j,q,value,method\n";
    const char* method = bc == Boundary::pbc ? "dw_pbc_wall_dp" : "dw_obc_config_dp";
    for (int q : qs) {
        for (int tau = 1; tau <= taumax; ++tau) {
            const double v = dw_otoc(n, i, j, tau, q, bc);
            out << tau << "," << tau / 2.0 << "," << j << "," << q << "," << v << "," << method
                << "\n";
        }
    }
    write_text(out_path, out.str());
    return 0;
}

int cmd_selfavg(const std::string& gate_text, const std::string& scen_text, int n, int i, int j,
                long horizon, int seeds, std::uint64_t seed0, const std::string& out_prefix) {
    const GateSpec gate = parse_gate_spec(gate_text);
    if (!gate.gate) throw std::invalid_argument("selfavg needs an explicit canonical gate");
    const auto scen = RandomnessScenario::parse(scen_text);
    Protocol proto = Protocol::brickwall(n, Boundary::pbc);
    if (horizon <= 0) horizon = 2 * n;

    std::ostringstream out;
    out.precision(17);
    for (const auto& [key, val] : base_meta()) out << "# " << key << "=" << val << "\n";
    out << "t,j,otoc,seed,scenario\n";
    const long ticks = horizon * proto.ticks_per_period();
    for (int s = 0; s < seeds; ++s) {
        const auto series = run_realization(proto, *gate.gate, scen, i, ticks, seed0 + s);
        for (std::size_t r = 0; r < series.rows(); ++r) {
            if (series.ticks[r] % series.ticks_per_period != 0) continue;
            const double t = series.time_of(r);
            out << t << "," << j << "," << series.values[r][j - 1] << "," << (seed0 + s) << ","
                << scen.name() << "\n";
        }
    }
    write_text(out_prefix + "_realizations.csv", out.str());

    // averaged-dynamics reference for the same geometry
    auto markov = evolve(proto, gate.kernel, i, ticks);
    markov.gate = gate_text;
    std::ostringstream ref;
    write_series_csv(ref, markov, base_meta());
    write_text(out_prefix + "_markov.csv", ref.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ostringstream cmd;
    for (int a = 0; a < argc; ++a) cmd << (a ? " " : "") << argv[a];
    g_cmdline = cmd.str();

    CLI::App app{"average-OTOC dynamics in random quantum circuits"};
    app.set_config("--config", "", "TOML/INI config file mirroring the flags");
    int threads = 0;
    app.add_option("--threads", threads, "worker thread count (0 = library default)");

    std::string gate = "0.5,0.3,0.1", proto = "bw", bc = "pbc", order, method = "auto";
    std::string scenario = "diffx_difft", out;
    int n = 12, i = 1, j = 0, ref_n = 0, iters = 0, taumax = 0, seeds = 1;
    std::vector<int> js, qs;
    long horizon = 0;
    double tol = 0, az = -1;
    std::uint64_t seed0 = 1;

    auto add_common = [&](CLI::App* sub, bool with_proto) {
        sub->add_option("--gate", gate, "ax,ay,az or swap|xy|u4");
        if (with_proto) sub->add_option("--proto", proto, "bw|s|custom|rnn|a2a");
        sub->add_option("--bc", bc, "obc|pbc");
        sub->add_option("--n", n, "qubit count");
        sub->add_option("--i", i, "initial operator site");
        sub->add_option("--horizon", horizon, "time horizon in periods (0 = default)");
        sub->add_option("--out", out, "output path or prefix");
    };

    auto* relax = app.add_subcommand("relax", "OTOC series, rates and phantom report");
    add_common(relax, true);
    relax->add_option("--j", js, "probe sites (repeatable)");
    relax->add_option("--ref-n", ref_n, "system size for lambda2 references");
    relax->add_option("--order", order, "custom protocol gate order p,q;p,q;...");

    auto* lc = app.add_subcommand("lightcone", "full (j,t) grid plus boundary closed form");
    add_common(lc, false);

    auto* spec = app.add_subcommand("spectrum", "subleading eigenvalue of the period map");
    add_common(spec, true);
    spec->add_option("--method", method, "auto|dense|arnoldi|ratio");
    spec->add_option("--iters", iters, "matrix-free iteration/Krylov budget");
    spec->add_option("--tol", tol, "matrix-free tolerance");
    spec->add_option("--order", order, "custom protocol gate order");

    auto* u4 = app.add_subcommand("u4", "exact Haar-U(q^2) OTOC from the domain-wall sum");
    u4->add_option("--q", qs, "local dimensions (repeatable)");
    u4->add_option("--n", n, "qudit count (even)");
    u4->add_option("--i", i, "initial site");
    u4->add_option("--j", j, "probe site")->required();
    u4->add_option("--taumax", taumax, "last gate row (0 = 2n)");
    u4->add_option("--bc", bc, "obc|pbc");
    u4->add_option("--out", out, "output csv path");

    auto* sa = app.add_subcommand("selfavg", "single-realization runs vs the averaged chain");
    add_common(sa, false);
    sa->add_option("--az", az, "dual-unitary a_z shorthand for --gate 1,1,az");
    sa->add_option("--scenario", scenario,
                   "diffx_difft|diffx_homt|homx_difft|homx_homt|homx_difft_step");
    sa->add_option("--j", j, "probe site")->required();
    sa->add_option("--seeds", seeds, "number of realizations");
    sa->add_option("--seed0", seed0, "base seed");

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#endif

    try {
        if (relax->parsed()) {
            if (out.empty()) out = "otoc_relax";
            return cmd_relax(gate, proto, bc, n, i, js, horizon, ref_n, order, out);
        }
        if (lc->parsed()) {
            if (out.empty()) out = "otoc_lightcone";
            return cmd_lightcone(gate, bc, n, i, horizon, out);
        }
        if (spec->parsed()) {
            return cmd_spectrum(gate, proto, bc, n, method, iters, tol, order, out);
        }
        if (u4->parsed()) {
            if (out.empty()) out = "otoc_u4.csv";
            return cmd_u4(qs, n, i, j, taumax, bc, out);
        }
        if (sa->parsed()) {
            if (az >= 0) gate = "1,1," + std::to_string(az);
            if (out.empty()) out = "otoc_selfavg";
            return cmd_selfavg(gate, scenario, n, i, j, horizon, seeds, seed0, out);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical-integrity failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
