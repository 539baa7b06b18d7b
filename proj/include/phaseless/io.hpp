#pragma once
#include <json.hpp>

#include <optional>
#include <string>

#include "phaseless/verify.hpp"

namespace phaseless {

inline constexpr const char* kLibraryVersion = "phaseless 1.0.0";

struct RectangleSpec {
    double x_lo = -2.0, x_hi = 2.0;
    double omega_lo = -1.5, omega_hi = 1.5;
    int nx = 129, ny = 97;
};

struct LinesSpec {
    int x_count = 33;       // samples along each line, spread over the x range
    long long n_min = -2;
    long long n_max = 2;
};

struct LatticeSpec {
    Lattice lattice;
    Box box{-2.0, 2.0, -2.0, 2.0};
};

/// One run, parseable from a single JSON document.
struct RunConfig {
    std::string command;
    double t_max = 8.0;
    double dt = 1.0 / 128.0;
    WindowSpec window = WindowSpec::gaussian();
    std::optional<unsigned> window_projection;  // Hermite-truncate the window
    CoefficientSequence coeffs{-1, {cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 1.0}}};
    double step = 1.0;
    double theta = 0.0;
    std::array<double, 2> shift{0.0, 0.0};
    unsigned basis_order = kDefaultHermiteOrder;
    double truncation_budget = kDefaultTruncationBudget;
    RectangleSpec rectangle;
    LinesSpec lines;
    std::optional<LatticeSpec> lattice;
    double line_tol = 1e-6;
    double noneq_threshold = 1e-3;
    double control_floor = 1e-3;
    double alpha = 1.0, beta = 1.0;  // real-pair lattice / oracle parameter
    int resolution = 4096;           // periodization fold
    double pgm_gamma = 0.25;
    std::uint64_t seed = 0;
    std::string out_dir = ".";

    Grid make_grid() const { return Grid::symmetric(t_max, dt); }

    /// The run's window, Hermite-projected when window_projection is set.
    Window make_window() const;

    static RunConfig from_json(const nlohmann::json& doc);
    static RunConfig from_file(const std::string& path);
    nlohmann::ordered_json echo() const;  // round-trippable config echo
};

/// Q = | |V_g f1|^2 - |V_g f2|^2 | on a rectangle grid, row-major with omega
/// varying across rows (row iy holds omega_iy, columns sweep x).
struct FieldOutput {
    RectangleSpec rect;
    std::vector<double> values;

    double max_q() const;
    double x_at(int ix) const;
    double omega_at(int iy) const;
};

FieldOutput compute_q_field(const Signal& f1, const Signal& f2, const Window& g,
                            const RectangleSpec& rect,
                            QuadratureOrder q = QuadratureOrder::Trapezoid);

/// Header x,omega,Q then one row per grid point, >= 12 significant digits;
/// byte-identical across runs for identical inputs.
void emit_field_csv(const FieldOutput& field, const std::string& path);

/// 16-bit binary PGM, intensity (Q/Qmax)^gamma, Qmax recorded in a comment.
void emit_heatmap_pgm(const FieldOutput& field, const std::string& path, double gamma);

nlohmann::ordered_json report_to_json(const VerificationReport& rep);
void emit_report_json(const VerificationReport& rep, const std::string& path);

}  // namespace phaseless
