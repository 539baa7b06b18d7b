#include "phaseless/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

namespace phaseless {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

WindowSpec window_from_json(const json& w) {
    const std::string kind = w.value("kind", "gaussian");
    if (kind == "gaussian") return WindowSpec::gaussian();
    if (kind == "exp_abs") return WindowSpec::exp_abs();
    if (kind == "cauchy_mix") return WindowSpec::cauchy_mix();
    if (kind == "hermite") return WindowSpec::hermite(w.value("order", 0u));
    if (kind == "hermite_sum") {
        std::vector<double> coeffs = w.value("coeffs", std::vector<double>{});
        if (coeffs.empty()) throw ConfigError("hermite_sum window needs coeffs");
        return WindowSpec::hermite_sum(std::move(coeffs));
    }
    throw ConfigError("unknown window kind '" + kind + "'");
}

json window_to_json(const WindowSpec& spec) {
    json w;
    switch (spec.kind) {
        case WindowKind::Gaussian: w["kind"] = "gaussian"; break;
        case WindowKind::ExpAbs: w["kind"] = "exp_abs"; break;
        case WindowKind::CauchyMix: w["kind"] = "cauchy_mix"; break;
        case WindowKind::Hermite:
            w["kind"] = "hermite";
            w["order"] = spec.hermite_order;
            break;
        case WindowKind::HermiteSum:
            w["kind"] = "hermite_sum";
            w["coeffs"] = spec.hermite_coeffs;
            break;
        case WindowKind::Table: w["kind"] = "table"; break;
    }
    return w;
}

CoefficientSequence coeffs_from_json(const json& c) {
    const long long k_min = c.value("k_min", -1);
    std::vector<cplx> values;
    for (const auto& entry : c.at("values")) {
        if (!entry.is_array() || entry.size() != 2)
            throw ConfigError("coefficients.values entries must be [re, im]");
        values.emplace_back(entry[0].get<double>(), entry[1].get<double>());
    }
    if (values.empty()) throw ConfigError("coefficients.values must be non-empty");
    return CoefficientSequence(k_min, std::move(values));
}

Rational rational_from_json(const json& r) {
    if (!r.is_array() || r.size() != 2) throw ConfigError("rational entries must be [num, den]");
    const long long den = r[1].get<long long>();
    if (den == 0) throw ConfigError("rational denominator is zero");
    return Rational(r[0].get<long long>(), den);
}

LatticeSpec lattice_from_json(const json& l) {
    LatticeSpec spec;
    if (l.contains("rational")) {
        const auto& g = l.at("rational");
        std::array<std::array<Rational, 2>, 2> gen;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) gen[r][c] = rational_from_json(g.at(r).at(c));
        spec.lattice = Lattice::from_exact(gen);
    } else if (l.contains("generator")) {
        const auto& g = l.at("generator");
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                spec.lattice.generator[r][c] = g.at(r).at(c).get<double>();
    } else {
        throw ConfigError("lattice needs 'generator' or 'rational'");
    }
    if (l.contains("shift")) {
        spec.lattice.shift = {l["shift"].at(0).get<double>(), l["shift"].at(1).get<double>()};
    }
    if (l.contains("box")) {
        const auto& b = l.at("box");
        spec.box = Box{b.at(0).get<double>(), b.at(1).get<double>(), b.at(2).get<double>(),
                       b.at(3).get<double>()};
    }
    return spec;
}

}  // namespace

Window RunConfig::make_window() const {
    const Grid grid = make_grid();
    if (!window_projection) return Window(window, grid);
    const Window raw(window, grid);
    const HermiteBasis proj_basis(grid, *window_projection);
    const auto an = proj_basis.analyze(raw.samples());
    std::vector<double> coeffs(an.coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) coeffs[n] = an.coeffs[n].real();
    return Window(WindowSpec::hermite_sum(std::move(coeffs)), grid);
}

RunConfig RunConfig::from_json(const json& doc) {
    RunConfig cfg;
    try {
        cfg.command = doc.value("command", "");
        if (doc.contains("grid")) {
            const auto& g = doc.at("grid");
            cfg.t_max = g.value("t_max", cfg.t_max);
            cfg.dt = g.value("dt", cfg.dt);
        }
        if (doc.contains("window")) cfg.window = window_from_json(doc.at("window"));
        if (doc.contains("window_projection"))
            cfg.window_projection = doc.at("window_projection").get<unsigned>();
        if (doc.contains("coefficients")) cfg.coeffs = coeffs_from_json(doc.at("coefficients"));
        cfg.step = doc.value("step", cfg.step);
        if (!(cfg.step > 0.0)) throw ConfigError("step must be positive");
        cfg.theta = doc.value("theta", cfg.theta);
        if (doc.contains("shift"))
            cfg.shift = {doc["shift"].at(0).get<double>(), doc["shift"].at(1).get<double>()};
        cfg.basis_order = doc.value("basis_order", cfg.basis_order);
        cfg.truncation_budget = doc.value("truncation_budget", cfg.truncation_budget);
        if (doc.contains("rectangle")) {
            const auto& r = doc.at("rectangle");
            cfg.rectangle.x_lo = r.at("x").at(0).get<double>();
            cfg.rectangle.x_hi = r.at("x").at(1).get<double>();
            cfg.rectangle.omega_lo = r.at("omega").at(0).get<double>();
            cfg.rectangle.omega_hi = r.at("omega").at(1).get<double>();
            cfg.rectangle.nx = r.value("nx", cfg.rectangle.nx);
            cfg.rectangle.ny = r.value("ny", cfg.rectangle.ny);
            if (cfg.rectangle.nx < 2 || cfg.rectangle.ny < 2)
                throw ConfigError("rectangle needs nx, ny >= 2");
        }
        if (doc.contains("lines")) {
            const auto& l = doc.at("lines");
            cfg.lines.x_count = l.value("x_count", cfg.lines.x_count);
            cfg.lines.n_min = l.value("n_min", cfg.lines.n_min);
            cfg.lines.n_max = l.value("n_max", cfg.lines.n_max);
            if (cfg.lines.x_count < 1 || cfg.lines.n_min > cfg.lines.n_max)
                throw ConfigError("bad lines spec");
        }
        if (doc.contains("lattice")) cfg.lattice = lattice_from_json(doc.at("lattice"));
        if (doc.contains("tolerances")) {
            const auto& t = doc.at("tolerances");
            cfg.line_tol = t.value("line_tol", cfg.line_tol);
            cfg.noneq_threshold = t.value("noneq_threshold", cfg.noneq_threshold);
            cfg.control_floor = t.value("control_floor", cfg.control_floor);
        }
        cfg.alpha = doc.value("alpha", cfg.alpha);
        cfg.beta = doc.value("beta", cfg.beta);
        cfg.resolution = doc.value("resolution", cfg.resolution);
        cfg.pgm_gamma = doc.value("pgm_gamma", cfg.pgm_gamma);
        cfg.seed = doc.value("seed", cfg.seed);
        if (doc.contains("output")) cfg.out_dir = doc.at("output").value("dir", cfg.out_dir);
        if (!(cfg.dt > 0.0) || !(cfg.t_max > 0.0)) throw ConfigError("grid needs positive t_max, dt");
        if (!(cfg.line_tol > 0.0)) throw ConfigError("line_tol must be positive");
    } catch (const json::exception& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed JSON in '") + path + "': " + e.what());
    }
    return from_json(doc);
}

ordered_json RunConfig::echo() const {
    ordered_json doc;
    doc["command"] = command;
    doc["grid"] = {{"t_max", t_max}, {"dt", dt}};
    doc["window"] = window_to_json(window);
    if (window_projection) doc["window_projection"] = *window_projection;
    ordered_json cj;
    cj["k_min"] = coeffs.k_min();
    ordered_json vals = ordered_json::array();
    for (const cplx& v : coeffs.coeffs()) vals.push_back({v.real(), v.imag()});
    cj["values"] = vals;
    doc["coefficients"] = cj;
    doc["step"] = step;
    doc["theta"] = theta;
    doc["shift"] = {shift[0], shift[1]};
    doc["basis_order"] = basis_order;
    doc["truncation_budget"] = truncation_budget;
    doc["rectangle"] = {{"x", {rectangle.x_lo, rectangle.x_hi}},
                        {"omega", {rectangle.omega_lo, rectangle.omega_hi}},
                        {"nx", rectangle.nx},
                        {"ny", rectangle.ny}};
    doc["lines"] = {{"x_count", lines.x_count}, {"n_min", lines.n_min}, {"n_max", lines.n_max}};
    if (lattice) {
        ordered_json l;
        if (lattice->lattice.exact) {
            ordered_json rows = ordered_json::array();
            for (int r = 0; r < 2; ++r) {
                ordered_json row = ordered_json::array();
                for (int c = 0; c < 2; ++c) {
                    const Rational& q = (*lattice->lattice.exact)[r][c];
                    row.push_back({q.numerator(), q.denominator()});
                }
                rows.push_back(row);
            }
            l["rational"] = rows;
        } else {
            l["generator"] = {{lattice->lattice.generator[0][0], lattice->lattice.generator[0][1]},
                              {lattice->lattice.generator[1][0], lattice->lattice.generator[1][1]}};
        }
        l["shift"] = {lattice->lattice.shift[0], lattice->lattice.shift[1]};
        l["box"] = {lattice->box.x_lo, lattice->box.x_hi, lattice->box.omega_lo,
                    lattice->box.omega_hi};
        doc["lattice"] = l;
    }
    doc["tolerances"] = {{"line_tol", line_tol},
                         {"noneq_threshold", noneq_threshold},
                         {"control_floor", control_floor}};
    doc["alpha"] = alpha;
    doc["beta"] = beta;
    doc["resolution"] = resolution;
    doc["pgm_gamma"] = pgm_gamma;
    doc["seed"] = seed;
    return doc;
}

double FieldOutput::max_q() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, v);
    return m;
}

double FieldOutput::x_at(int ix) const {
    return rect.x_lo + (rect.x_hi - rect.x_lo) * static_cast<double>(ix) /
                           static_cast<double>(rect.nx - 1);
}

double FieldOutput::omega_at(int iy) const {
    return rect.omega_lo + (rect.omega_hi - rect.omega_lo) * static_cast<double>(iy) /
                               static_cast<double>(rect.ny - 1);
}

FieldOutput compute_q_field(const Signal& f1, const Signal& f2, const Window& g,
                            const RectangleSpec& rect, QuadratureOrder q) {
    FieldOutput out;
    out.rect = rect;
    std::vector<TFPoint> pts;
    pts.reserve(static_cast<std::size_t>(rect.nx) * rect.ny);
    for (int iy = 0; iy < rect.ny; ++iy)
        for (int ix = 0; ix < rect.nx; ++ix)
            pts.push_back(TFPoint{out.x_at(ix), out.omega_at(iy)});
    const auto v1 = stft_values(f1, g, pts, q);
    const auto v2 = stft_values(f2, g, pts, q);
    out.values.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        out.values[i] = std::abs(std::norm(v1[i]) - std::norm(v2[i]));
    return out;
}

void emit_field_csv(const FieldOutput& field, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot write '" + path + "'");
    std::fputs("x,omega,Q\n", fp);
    for (int iy = 0; iy < field.rect.ny; ++iy)
        for (int ix = 0; ix < field.rect.nx; ++ix) {
            const double q = field.values[static_cast<std::size_t>(iy) * field.rect.nx + ix];
            std::fprintf(fp, "%.17g,%.17g,%.17g\n", field.x_at(ix), field.omega_at(iy), q);
        }
    if (std::fclose(fp) != 0) throw IoError("close failed for '" + path + "'");
}

void emit_heatmap_pgm(const FieldOutput& field, const std::string& path, double gamma) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw IoError("cannot write '" + path + "'");
    const double qmax = field.max_q();
    std::fprintf(fp, "P5\n# Qmax=%.17g gamma=%.17g\n%d %d\n65535\n", qmax, gamma, field.rect.nx,
                 field.rect.ny);
    for (int iy = 0; iy < field.rect.ny; ++iy)
        for (int ix = 0; ix < field.rect.nx; ++ix) {
            const double q = field.values[static_cast<std::size_t>(iy) * field.rect.nx + ix];
            const double unit = qmax > 0.0 ? std::pow(q / qmax, gamma) : 0.0;
            const unsigned v = static_cast<unsigned>(std::lround(unit * 65535.0));
            const unsigned char hi = static_cast<unsigned char>((v >> 8) & 0xFF);
            const unsigned char lo = static_cast<unsigned char>(v & 0xFF);
            std::fputc(hi, fp);
            std::fputc(lo, fp);
        }
    if (std::fclose(fp) != 0) throw IoError("close failed for '" + path + "'");
}

ordered_json report_to_json(const VerificationReport& rep) {
    ordered_json doc;
    doc["claim_id"] = rep.claim_id;
    ordered_json res;
    for (const auto& [name, value] : rep.residuals) res[name] = value;
    doc["residuals"] = res;
    doc["threshold"] = rep.threshold;
    doc["max_residual"] = rep.max_residual();
    doc["passed"] = rep.passed;
    doc["sample_points"] = rep.sample_points;
    doc["notes"] = rep.notes;
    return doc;
}

void emit_report_json(const VerificationReport& rep, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << report_to_json(rep).dump(2) << "\n";
    if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace phaseless
