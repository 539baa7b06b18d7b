#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "phaseless/io.hpp"
#include "phaseless/kernels.hpp"

namespace fs = std::filesystem;
using namespace phaseless;
using nlohmann::ordered_json;

namespace {

struct CliState {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol = 0.0;
    bool tol_set = false;
    bool quiet = false;
};

RunConfig load_config(const CliState& st, bool required) {
    RunConfig cfg;
    if (!st.config_path.empty())
        cfg = RunConfig::from_file(st.config_path);
    else if (required)
        throw ConfigError("this command needs --config");
    if (!st.out_dir.empty()) cfg.out_dir = st.out_dir;
    if (st.seed_set) cfg.seed = st.seed;
    if (st.tol_set) cfg.line_tol = st.tol;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

std::vector<double> line_x_samples(const RunConfig& cfg) {
    std::vector<double> xs(static_cast<std::size_t>(cfg.lines.x_count));
    const double lo = cfg.rectangle.x_lo, hi = cfg.rectangle.x_hi;
    for (int i = 0; i < cfg.lines.x_count; ++i)
        xs[static_cast<std::size_t>(i)] =
            cfg.lines.x_count == 1
                ? lo
                : lo + (hi - lo) * static_cast<double>(i) / (cfg.lines.x_count - 1);
    return xs;
}

void write_manifest(const RunConfig& cfg, const std::string& command,
                    const ordered_json& summary, const std::vector<std::string>& outputs) {
    ordered_json doc;
    doc["version"] = kLibraryVersion;
    doc["command"] = command;
    doc["kernels"] = kernels::ops().name;
    doc["config"] = cfg.echo();
    doc["summary"] = summary;
    doc["outputs"] = outputs;
    const std::string path = (fs::path(cfg.out_dir) / "manifest.json").string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << doc.dump(2) << "\n";
}

void say(const CliState& st, const std::string& line) {
    if (!st.quiet) std::cout << line << "\n";
}

CounterexamplePair make_pair(const RunConfig& cfg) {
    const SIConfig si(cfg.make_window(), cfg.step, FrftOrder(cfg.theta), cfg.shift,
                      cfg.truncation_budget);
    const HermiteBasis basis(cfg.make_grid(), cfg.basis_order);
    return build_pair(si, cfg.coeffs, basis);
}

int cmd_synth(const CliState& st) {
    const RunConfig cfg = load_config(st, true);
    const CounterexamplePair pair = make_pair(cfg);
    const std::string path = (fs::path(cfg.out_dir) / "signals.csv").string();
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot write '" + path + "'");
    std::fputs("t,re_f1,im_f1,re_f2,im_f2\n", fp);
    const Grid grid = pair.f1.grid();
    for (std::size_t j = 0; j < grid.n; ++j)
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g,%.17g\n", grid.point(j), pair.f1[j].real(),
                     pair.f1[j].imag(), pair.f2[j].real(), pair.f2[j].imag());
    std::fclose(fp);
    ordered_json summary;
    summary["line_family"] = {{"theta", pair.line_family.theta},
                              {"spacing", pair.line_family.spacing},
                              {"shift", {pair.line_family.shift[0], pair.line_family.shift[1]}}};
    if (!pair.warning.empty()) summary["warning"] = pair.warning;
    write_manifest(cfg, "synth", summary, {"signals.csv"});
    say(st, "wrote " + path);
    return 0;
}

int cmd_spectrogram(const CliState& st) {
    const RunConfig cfg = load_config(st, true);
    const CounterexamplePair pair = make_pair(cfg);
    const Window g = cfg.make_window();
    std::vector<TFPoint> pts;
    const RectangleSpec& r = cfg.rectangle;
    for (int iy = 0; iy < r.ny; ++iy)
        for (int ix = 0; ix < r.nx; ++ix)
            pts.push_back(TFPoint{r.x_lo + (r.x_hi - r.x_lo) * ix / double(r.nx - 1),
                                  r.omega_lo + (r.omega_hi - r.omega_lo) * iy / double(r.ny - 1)});
    const auto v1 = stft_batch(pair.f1, g, pts);
    const auto v2 = stft_batch(pair.f2, g, pts);
    const std::string path = (fs::path(cfg.out_dir) / "spectrogram.csv").string();
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot write '" + path + "'");
    std::fputs("x,omega,absV1,absV2\n", fp);
    for (std::size_t i = 0; i < pts.size(); ++i)
        std::fprintf(fp, "%.17g,%.17g,%.17g,%.17g\n", pts[i].x, pts[i].omega, v1.values[i],
                     v2.values[i]);
    std::fclose(fp);
    write_manifest(cfg, "spectrogram", ordered_json::object(), {"spectrogram.csv"});
    say(st, "wrote " + path);
    return 0;
}

int cmd_verify_lines(const CliState& st) {
    const RunConfig cfg = load_config(st, true);
    const CounterexamplePair pair = make_pair(cfg);
    const ToleranceProfile tol(0.0, cfg.line_tol);
    const VerificationReport rep =
        verify_pair(pair, line_x_samples(cfg), cfg.lines.n_min, cfg.lines.n_max, tol,
                    cfg.noneq_threshold, cfg.control_floor);
    emit_report_json(rep, (fs::path(cfg.out_dir) / "report.json").string());
    ordered_json summary;
    summary["passed"] = rep.passed;
    summary["max_residual"] = rep.max_residual();
    summary["notes"] = rep.notes;
    write_manifest(cfg, "verify-lines", summary, {"report.json"});
    say(st, std::string(rep.passed ? "PASS" : "FAIL") + " verify-lines: " + rep.notes);
    return rep.passed ? 0 : 1;
}

int cmd_verify_lattice(const CliState& st) {
    const RunConfig cfg = load_config(st, true);
    if (!cfg.lattice) throw ConfigError("verify-lattice needs a lattice");
    const Lattice& lat = cfg.lattice->lattice;
    const LineFamily fam = lattice_in_line_family(lat);
    if (fam.spacing == 0.0) throw ConfigError("degenerate lattice: spacing 0 family");

    RunConfig derived = cfg;
    derived.theta = fam.theta;
    derived.step = 1.0 / fam.spacing;
    derived.shift = fam.shift;
    const CounterexamplePair pair = make_pair(derived);

    const auto pts = lattice_points_in_box(lat, cfg.lattice->box);
    const ToleranceProfile tol(0.0, cfg.line_tol);
    VerificationReport rep = verify_equal_on_points(pair.f1, pair.f2, pair.config.window,
                                                    pts.points, tol);
    const PhaseDistance pd = phase_distance(pair.f1, pair.f2);
    const double rel = pd.distance / std::max(l2_norm(pair.f1), 1e-300);
    rep.claim_id = "lattice_sampling_violation_witness";
    rep.add("equivalence_violation", rel > cfg.noneq_threshold ? 0.0 : 1.0);
    rep.notes += " phase_distance_rel=" + std::to_string(rel) +
                 " lattice_points=" + std::to_string(pts.points.size()) +
                 (pts.degenerate ? " (degenerate lattice)" : "");
    rep.finalize();
    emit_report_json(rep, (fs::path(cfg.out_dir) / "report.json").string());
    ordered_json summary;
    summary["passed"] = rep.passed;
    summary["family"] = {{"theta", fam.theta}, {"spacing", fam.spacing}};
    write_manifest(cfg, "verify-lattice", summary, {"report.json"});
    say(st, std::string(rep.passed ? "PASS" : "FAIL") + " verify-lattice: " + rep.notes);
    return rep.passed ? 0 : 1;
}

int cmd_real_pair(const CliState& st) {
    const RunConfig cfg = load_config(st, true);
    const Window g = cfg.make_window();
    const HermiteBasis basis(cfg.make_grid(), cfg.basis_order);
    const CounterexamplePair pair = build_real_pair(g, cfg.alpha, cfg.beta, basis);

    double im_max = 0.0, sup = 0.0;
    for (const Signal* f : {&pair.f1, &pair.f2})
        for (const cplx& v : f->values()) {
            im_max = std::max(im_max, std::abs(v.imag()));
            sup = std::max(sup, std::abs(v));
        }

    const Lattice lat = Lattice::rectangular(cfg.alpha, cfg.beta);
    const Box box{cfg.rectangle.x_lo, cfg.rectangle.x_hi, cfg.rectangle.omega_lo,
                  cfg.rectangle.omega_hi};
    const auto pts = lattice_points_in_box(lat, box);
    const ToleranceProfile tol(0.0, cfg.line_tol);
    VerificationReport rep = verify_equal_on_points(pair.f1, pair.f2, g, pts.points, tol);
    const PhaseDistance pd = phase_distance(pair.f1, pair.f2);
    const double rel = pd.distance / std::max(l2_norm(pair.f1), 1e-300);
    rep.claim_id = "real_valued_pair_witness";
    rep.add("imag_violation", im_max <= 1e-8 * std::max(sup, 1e-300) ? 0.0 : 1.0);
    rep.add("equivalence_violation", rel > cfg.noneq_threshold ? 0.0 : 1.0);
    rep.notes += " phase_distance_rel=" + std::to_string(rel) +
                 " lattice_points=" + std::to_string(pts.points.size());
    rep.finalize();
    emit_report_json(rep, (fs::path(cfg.out_dir) / "report.json").string());
    ordered_json summary;
    summary["passed"] = rep.passed;
    summary["max_imag"] = im_max;
    write_manifest(cfg, "real-pair", summary, {"report.json"});
    say(st, std::string(rep.passed ? "PASS" : "FAIL") + " real-pair: " + rep.notes);
    return rep.passed ? 0 : 1;
}

int cmd_gauss_oracle(const CliState& st) {
    const RunConfig cfg = load_config(st, false);
    const CounterexamplePair pair = gaussian_oracle_pair(cfg.beta, cfg.make_grid());
    const ToleranceProfile tol(0.0, cfg.line_tol);
    const VerificationReport rep =
        verify_pair(pair, line_x_samples(cfg), cfg.lines.n_min, cfg.lines.n_max, tol,
                    cfg.noneq_threshold, cfg.control_floor);
    emit_report_json(rep, (fs::path(cfg.out_dir) / "report.json").string());
    ordered_json summary;
    summary["passed"] = rep.passed;
    summary["notes"] = rep.notes;
    write_manifest(cfg, "gauss-oracle", summary, {"report.json"});
    say(st, std::string(rep.passed ? "PASS" : "FAIL") + " gauss-oracle: " + rep.notes);
    return rep.passed ? 0 : 1;
}

int cmd_props(const CliState& st) {
    const RunConfig cfg = load_config(st, false);
    const ToleranceProfile tol(0.0, 1e-6);
    const VerificationReport rep = operator_identity_suite(cfg.seed, tol);
    emit_report_json(rep, (fs::path(cfg.out_dir) / "report.json").string());
    ordered_json summary;
    summary["passed"] = rep.passed;
    summary["max_margin"] = rep.max_residual();
    write_manifest(cfg, "props", summary, {"report.json"});
    for (const auto& [name, value] : rep.residuals)
        say(st, std::string(value <= rep.threshold ? "PASS " : "FAIL ") + name +
                    " margin=" + std::to_string(value));
    return rep.passed ? 0 : 1;
}

int cmd_field(const CliState& st) {
    const RunConfig cfg = load_config(st, true);
    const CounterexamplePair pair = make_pair(cfg);
    const FieldOutput field =
        compute_q_field(pair.f1, pair.f2, pair.config.window, cfg.rectangle);
    const std::string csv = (fs::path(cfg.out_dir) / "field.csv").string();
    const std::string pgm = (fs::path(cfg.out_dir) / "field.pgm").string();
    emit_field_csv(field, csv);
    emit_heatmap_pgm(field, pgm, cfg.pgm_gamma);
    ordered_json summary;
    summary["max_q"] = field.max_q();
    summary["line_family"] = {{"theta", pair.line_family.theta},
                              {"spacing", pair.line_family.spacing}};
    write_manifest(cfg, "field", summary, {"field.csv", "field.pgm"});
    say(st, "wrote " + csv + " and " + pgm + " (max Q " + std::to_string(field.max_q()) + ")");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"counterexample constructions for spectrogram sampling on lattices"};
    app.require_subcommand(1);
    CliState st;

    std::map<std::string, int (*)(const CliState&)> handlers{
        {"synth", cmd_synth},
        {"spectrogram", cmd_spectrogram},
        {"verify-lines", cmd_verify_lines},
        {"verify-lattice", cmd_verify_lattice},
        {"real-pair", cmd_real_pair},
        {"gauss-oracle", cmd_gauss_oracle},
        {"props", cmd_props},
        {"field", cmd_field}};
    std::vector<CLI::Option*> seed_opts, tol_opts;
    for (const auto& [name, fn] : handlers) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", st.config_path, "JSON run configuration");
        sub->add_option("--out", st.out_dir, "output directory (overrides config)");
        seed_opts.push_back(sub->add_option("--seed", st.seed, "RNG seed (overrides config)"));
        tol_opts.push_back(
            sub->add_option("--tol", st.tol, "line tolerance (overrides config)"));
        sub->add_flag("--quiet", st.quiet, "suppress status lines");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    for (const auto* opt : seed_opts) st.seed_set = st.seed_set || opt->count() > 0;
    for (const auto* opt : tol_opts) st.tol_set = st.tol_set || opt->count() > 0;

    try {
        for (const auto& [name, fn] : handlers)
            if (app.got_subcommand(name)) return fn(st);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
}
