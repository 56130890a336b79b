// Command-line driver: verification suites, end-to-end demo pipelines, and
// artifact dumps in the library's external formats.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "qheis/qheis.hpp"

namespace {

using namespace qheis;

RunConfig load_config(const std::string& path, const std::vector<std::string>& grid_kv,
                      int fock_degree, long long seed, double tol_scale,
                      const std::string& out) {
    RunConfig cfg;
    if (!path.empty()) {
        std::ifstream is(path);
        if (!is) throw ConfigError("cannot open config " + path);
        nlohmann::json j;
        is >> j;
        cfg = RunConfig::from_json(j);
    }
    if (!grid_kv.empty()) {
        if (grid_kv.size() != 2) throw ConfigError("--grid expects nx,nt");
        cfg.grid.n_x = std::stoi(grid_kv[0]);
        cfg.grid.n_t = std::stoi(grid_kv[1]);
    }
    if (fock_degree >= 0) cfg.fock_degree = fock_degree;
    if (seed >= 0) cfg.seed = std::uint64_t(seed);
    if (tol_scale > 0) cfg.tol_scale = tol_scale;
    if (!out.empty()) cfg.out_path = out;
    cfg.validate();
    return cfg;
}

void emit_report(const Report& rep, const std::string& out_path) {
    std::string json_text = rep.to_json().dump(2) + "\n";
    if (!out_path.empty()) {
        write_text(out_path, json_text);
        std::string csv_path = out_path;
        auto dot = csv_path.rfind('.');
        csv_path = (dot == std::string::npos ? csv_path : csv_path.substr(0, dot)) + ".csv";
        write_text(csv_path, rep.to_csv());
        std::cout << "report written to " << out_path << " and " << csv_path << "\n";
    } else {
        std::cout << json_text;
    }
    for (const auto& r : rep.records)
        if (!r.pass)
            std::cout << "FAIL " << r.name << " measured=" << r.measured
                      << " expected=" << r.expected << " tol=" << r.tolerance << "\n";
}

int cmd_selftest(const RunConfig& cfg, const std::string& suite) {
    Report rep = suites::run_suites(cfg, {suite});
    emit_report(rep, cfg.out_path);
    std::cout << (rep.all_pass() ? "selftest PASS" : "selftest FAIL") << " ("
              << rep.records.size() << " checks)\n";
    return rep.all_pass() ? 0 : 1;
}

int cmd_radon_demo(RunConfig cfg, bool refined, bool nonbanded) {
    cfg.validate();
    GridSpec g = refined ? suites::radon_fine_grid(cfg) : suites::radon_grid(cfg);
    int m = refined ? std::max(cfg.oversample, 4) : cfg.oversample;
    TestFunction tf = nonbanded ? make_gaussian(g, {1.0, 0.125})
                                : make_lizorkin(g, {1.0, 0.42, 0.92, 1.0});
    Report rep;
    rep.config_echo = cfg.to_json();
    suites::Timer tm;

    auto gate = lizorkin_gate(tf.field, 0.42);
    rep.records.push_back({"demo.gate.low-frequency-energy", "central-gate", gate.fraction,
                           0.0, nonbanded ? 0.0 : 1e-6, !gate.flagged});
    if (gate.flagged)
        std::cout << "warning: input carries " << gate.fraction
                  << " of its central energy at |a| <= 0.42; inversion is out of contract\n";

    RadonResult R = radon_fft(tf.field, m);
    Field i7 = inv_radon_mixing(R.field, m);
    Field i11 = inv_radon_lrl(R.field, 1.0, 1.0, m);
    Field i20 = inv_radon_lrl(R.field, 2.0, 0.0, m);
    Field i02 = inv_radon_lrl(R.field, 0.0, 2.0, m);
    double tol = refined ? 0.05 : 0.1;
    auto add = [&](const std::string& n, const Field& f) {
        double e = suites::rel_l2(f, tf.field);
        rep.records.push_back(
            {"demo.roundtrip." + n, "radon-inversion", e, 0.0, tol * cfg.tol_scale,
             nonbanded ? true : e <= tol * cfg.tol_scale});
        std::cout << "  route " << n << ": rel L2 error " << e << "\n";
    };
    std::cout << "radon demo on " << g.n_x << "^4 x " << g.n_t << "^3 grid\n";
    add("mixing", i7);
    add("multiplier-1-1", i11);
    add("multiplier-2-0", i20);
    add("multiplier-0-2", i02);
    rep.timings["radon-demo"] = tm.seconds();

    if (!cfg.out_path.empty()) {
        std::filesystem::create_directories(cfg.out_path);
        save_field(tf.field, cfg.out_path + "/input.qhf");
        save_field(R.field, cfg.out_path + "/radon.qhf");
        save_field(i11, cfg.out_path + "/inverted.qhf");
        write_text(cfg.out_path + "/report.json", rep.to_json().dump(2) + "\n");
        write_text(cfg.out_path + "/report.csv", rep.to_csv());
        std::cout << "fields and report written to " << cfg.out_path << "\n";
    } else {
        std::cout << rep.to_json().dump(2) << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_wavelet_demo(RunConfig cfg) {
    cfg.validate();
    const GridSpec g = cfg.grid;
    Report rep;
    rep.config_echo = cfg.to_json();
    suites::Timer tm;
    GftOptions opt;
    opt.ngh = cfg.gh_nodes;
    opt.oversample = cfg.oversample;

    auto prof = std::make_shared<RadialProfile>(make_profile(ProfileKind::PolyExp, {.k = 1}));
    std::cout << "profile r e^{-r}: C = " << prof->C << " (pi = " << kPi << "), m4 = " << prof->m4
              << "\n";
    rep.records.push_back({"demo.calderon", "calderon", prof->C, kPi, 1e-6 * cfg.tol_scale,
                           std::abs(prof->C - kPi) <= 1e-6 * cfg.tol_scale});
    Wavelet w = build_phi_eta(prof, cfg.fock_degree);
    Field phi_f = sample(w.evaluator(), g);
    double n2 = suites::field_norm2(phi_f);
    std::cout << "||phi||^2 = " << n2 << " (expected " << prof->m4 / 45.0 << ")\n";
    rep.records.push_back({"demo.phi-norm", "phi-norm", n2, prof->m4 / 45.0,
                           0.02 * prof->m4 / 45.0 * cfg.tol_scale,
                           std::abs(n2 - prof->m4 / 45.0) <= 0.02 * prof->m4 / 45.0 * cfg.tol_scale});

    TestFunction tf = make_lizorkin(g, {0.5, 0.42, 0.92, 1.0});
    RhoDesign rho = RhoDesign::for_band(*prof, 0.40, 1.0, cfg.fock_degree, cfg.rho_nodes);
    double kappa = calibrate_kappa(tf.field, w, rho, opt);
    std::cout << "kappa = " << kappa << " (4 pi kappa = " << 4 * kPi * kappa << ")\n";
    rep.records.push_back({"demo.kappa", "reproducing-constant", kappa * 4 * kPi, 1.0,
                           5e-2 * cfg.tol_scale, std::abs(kappa * 4 * kPi - 1) <= 5e-2 * cfg.tol_scale});

    WaveletCoefficients coeffs = analyze(tf.field, w, rho);
    Field rec = reconstruct(coeffs, w, kappa, opt);
    double err = suites::rel_l2(rec, tf.field);
    std::cout << "reconstruction rel L2 error = " << err << "\n";
    rep.records.push_back({"demo.reconstruction", "inverse-transform", err, 0.0,
                           0.1 * cfg.tol_scale, err <= 0.1 * cfg.tol_scale});
    rep.timings["wavelet-demo"] = tm.seconds();

    if (!cfg.out_path.empty()) {
        std::filesystem::create_directories(cfg.out_path);
        save_field(tf.field, cfg.out_path + "/input.qhf");
        save_field(rec, cfg.out_path + "/reconstructed.qhf");
        write_text(cfg.out_path + "/report.json", rep.to_json().dump(2) + "\n");
        write_text(cfg.out_path + "/report.csv", rep.to_csv());
        std::cout << "fields and report written to " << cfg.out_path << "\n";
    } else {
        std::cout << rep.to_json().dump(2) << "\n";
    }
    return rep.all_pass() ? 0 : 1;
}

int cmd_dump(RunConfig cfg, const std::string& what, const std::string& path) {
    cfg.validate();
    const GridSpec g = cfg.grid;
    if (what == "field") {
        TestFunction tf = make_lizorkin(g, {1.0, 0.42, 0.92, 1.0});
        save_field(tf.field, path);
        std::cout << "field written to " << path << "\n";
        return 0;
    }
    if (what == "spectrum") {
        TestFunction tf = make_gaussian(g, {0.5, 0.125});
        GftOptions opt;
        opt.ngh = cfg.gh_nodes;
        RadialDesign rd = RadialDesign::logspaced(0.15, 2.0, 24);
        GroupSpectrum sp = gft_spectrum(rd, Vec3{1, 0, 0}, cfg.fock_degree,
                                        [&](const Vec3& a) { return gft_matrix(tf, a, cfg.fock_degree, opt); });
        write_text(path, spectrum_to_json(sp).dump() + "\n");
        std::cout << "spectrum written to " << path << "\n";
        return 0;
    }
    if (what == "coeffs") {
        TestFunction tf = make_lizorkin(g, {0.5, 0.42, 0.92, 1.0});
        auto prof = std::make_shared<RadialProfile>(make_profile(ProfileKind::PolyExp, {.k = 1}));
        Wavelet w = build_phi_eta(prof, cfg.fock_degree);
        RhoDesign rho = RhoDesign::logspaced(0.3, 3.0, 8);
        std::vector<std::pair<GroupPoint, double>> pts;
        std::mt19937_64 rng(cfg.seed);
        std::normal_distribution<double> nd;
        for (int i = 0; i < 16; ++i)
            pts.push_back({GroupPoint{Quat{nd(rng), nd(rng), nd(rng), nd(rng)},
                                      Vec3{nd(rng), nd(rng), nd(rng)}},
                           rho.rho[rng() % rho.rho.size()]});
        WaveletCoefficients cf = analyze(tf.field, w, rho, pts);
        nlohmann::json j = nlohmann::json::array();
        for (const auto& s : cf.samples)
            j.push_back({{"y", {s.p.x.w, s.p.x.x, s.p.x.y, s.p.x.z}},
                         {"s", {s.p.t.x, s.p.t.y, s.p.t.z}},
                         {"rho", s.rho},
                         {"re", s.value.real()},
                         {"im", s.value.imag()}});
        write_text(path, j.dump(2) + "\n");
        std::cout << "coefficients written to " << path << "\n";
        return 0;
    }
    std::cerr << "unknown dump target '" << what << "' (field|spectrum|coeffs)\n";
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"harmonic analysis on the quaternion Heisenberg group"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite = "all", what, dump_path;
    std::vector<std::string> grid_kv;
    int fock_degree = -1;
    long long seed = -1;
    double tol_scale = -1.0;
    bool refined = false, nonbanded = false;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--grid", grid_kv, "grid counts nx,nt")->delimiter(',');
    app.add_option("--fock-degree", fock_degree, "truncation degree L");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--tol-scale", tol_scale, "scale all tolerances");
    app.add_option("--out", out_path, "output path");

    auto* st = app.add_subcommand("selftest", "run verification suites");
    st->add_option("suite", suite, "algebra|fourier|gft|radon|wavelet|all");

    auto* rd = app.add_subcommand("radon-demo", "end-to-end Radon inversion demo");
    rd->add_flag("--refined", refined, "finer resampling lattice");
    rd->add_flag("--non-lizorkin", nonbanded, "run on a plain Gaussian to see the gate fire");

    auto* wd = app.add_subcommand("wavelet-demo", "wavelet calibration and reconstruction demo");
    (void)wd;

    auto* dp = app.add_subcommand("dump", "write artifacts in the external formats");
    dp->add_option("what", what, "field|spectrum|coeffs")->required();
    dp->add_option("path", dump_path, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = load_config(config_path, grid_kv, fock_degree, seed, tol_scale, out_path);
        if (st->parsed()) return cmd_selftest(cfg, suite);
        if (rd->parsed()) return cmd_radon_demo(cfg, refined, nonbanded);
        if (wd->parsed()) return cmd_wavelet_demo(cfg);
        if (dp->parsed()) return cmd_dump(cfg, what, dump_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
