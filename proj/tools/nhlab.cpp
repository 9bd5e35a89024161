// nhlab command-line front end: builds the lattice models, runs the
// experiments, and writes CSV / JSON / SVG artifacts.
//
// Exit codes: 0 success, 2 usage, 3 numerical failure, 4 refused physical
// precondition.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nhlab/analytic.hpp"
#include "nhlab/dynamics.hpp"
#include "nhlab/eigen.hpp"
#include "nhlab/lattice.hpp"
#include "nhlab/recursion.hpp"

using json = nlohmann::json;
using namespace nhlab;

namespace {

constexpr const char* kVersion = "0.1.0";

// Tabular result: `#`-prefixed metadata lines, a header row, then data rows.
// Cells are json values so CSV and JSON emission share one representation
// and round-trip losslessly.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;

    void meta(const std::string& k, const std::string& v) { metadata.emplace_back(k, v); }
    void meta(const std::string& k, double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        metadata.emplace_back(k, buf);
    }
};

struct OutputOptions {
    std::string out;  // empty = stdout
    std::string format = "csv";
    bool deterministic = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& o) {
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_flag("--deterministic", o.deterministic,
                  "suppress the timestamp metadata line");
}

std::string cell_to_csv(const json& v) {
    if (v.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    return v.get<std::string>();
}

void write_csv(std::ostream& os, const Table& t) {
    for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (size_t i = 0; i < row.size(); ++i)
            os << cell_to_csv(row[i]) << (i + 1 < row.size() ? "," : "\n");
}

void write_json(std::ostream& os, const Table& t) {
    json j;
    j["metadata"] = json::object();
    for (const auto& [k, v] : t.metadata) j["metadata"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    os << j.dump(2) << "\n";
}

// Minimal static scatter plot: data points from columns (xcol, ycol), with
// optional polyline overlays (e.g. the PBC loop).
void write_svg(std::ostream& os, const Table& t, int xcol, int ycol,
               const std::vector<std::vector<complexd>>& overlays,
               std::optional<int> color_col = std::nullopt) {
    const int w = 640, h = 640, pad = 40;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    auto grow = [&](double x, double y) {
        xmin = std::min(xmin, x), xmax = std::max(xmax, x);
        ymin = std::min(ymin, y), ymax = std::max(ymax, y);
    };
    for (const auto& r : t.rows) grow(r[xcol].get<double>(), r[ycol].get<double>());
    for (const auto& loop : overlays)
        for (const auto& e : loop) grow(e.real(), e.imag());
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    auto px = [&](double x) { return pad + (x - xmin) / (xmax - xmin) * (w - 2 * pad); };
    auto py = [&](double y) { return h - pad - (y - ymin) / (ymax - ymin) * (h - 2 * pad); };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
       << h << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& [k, v] : t.metadata)
        os << "<!-- " << k << " = " << v << " -->\n";
    for (const auto& r : t.rows) {
        std::string fill = "steelblue";
        if (color_col) {
            const std::string v = r[*color_col].get<std::string>();
            fill = v == "bounded" ? "steelblue"
                 : v == "divergent" ? "lightcoral"
                                    : "lightgray";
        }
        os << "<circle cx=\"" << px(r[xcol].get<double>()) << "\" cy=\""
           << py(r[ycol].get<double>()) << "\" r=\"2.5\" fill=\"" << fill << "\"/>\n";
    }
    for (const auto& loop : overlays) {
        os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
        for (const auto& e : loop) os << px(e.real()) << "," << py(e.imag()) << " ";
        if (!loop.empty()) os << px(loop[0].real()) << "," << py(loop[0].imag());
        os << "\"/>\n";
    }
    os << "</svg>\n";
}

void emit(const Table& t, const OutputOptions& o, int svg_xcol = 0, int svg_ycol = 1,
          const std::vector<std::vector<complexd>>& overlays = {},
          std::optional<int> svg_color_col = std::nullopt) {
    Table out = t;
    if (!o.deterministic) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[64];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out.metadata.insert(out.metadata.begin(), {"timestamp", buf});
    }
    out.metadata.insert(out.metadata.begin(), {"nhlab_version", kVersion});

    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!o.out.empty()) {
        file.open(o.out);
        if (!file) throw std::runtime_error("cannot open output file: " + o.out);
        os = &file;
    }
    if (o.format == "csv")
        write_csv(*os, out);
    else if (o.format == "json")
        write_json(*os, out);
    else
        write_svg(*os, out, svg_xcol, svg_ycol, overlays, svg_color_col);
}

struct ModelFlags {
    std::string model = "hatano";
    int n = 40;
    double gamma = 0.5;
    double v0 = 0.0;
    double delta = 0.0;
    std::string bc = "obc";
};

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool with_bc = false) {
    cmd->add_option("--model", m.model, "lattice model")
        ->check(CLI::IsMember({"hatano", "gainloss", "ssh"}));
    cmd->add_option("--n", m.n, "number of sites")->check(CLI::PositiveNumber);
    cmd->add_option("--gamma", m.gamma, "non-Hermitian degree in [0,1]");
    cmd->add_option("--v0", m.v0, "gain/loss strength");
    cmd->add_option("--delta", m.delta, "dimerization in (-1,1)");
    if (with_bc)
        cmd->add_option("--bc", m.bc, "boundary condition")
            ->check(CLI::IsMember({"obc", "pbc"}));
}

ModelSpec to_spec(const ModelFlags& m) {
    ModelSpec s;
    s.kind = m.model == "hatano" ? ModelKind::HatanoNelson
           : m.model == "gainloss" ? ModelKind::GainLoss
                                   : ModelKind::NonReciprocalSSH;
    s.n = m.n;
    s.gamma = m.gamma;
    s.v0 = m.v0;
    s.delta = m.delta;
    s.bc = m.bc == "pbc" ? Boundary::PBC : Boundary::OBC;
    s.validate();
    return s;
}

void add_model_meta(Table& t, const ModelFlags& m) {
    t.meta("model", m.model);
    t.meta("n", std::to_string(m.n));
    t.meta("gamma", m.gamma);
    if (m.model == "gainloss") t.meta("v0", m.v0);
    if (m.model == "ssh") t.meta("delta", m.delta);
}

const char* method_name(SpectrumMethod m) {
    switch (m) {
        case SpectrumMethod::Analytic: return "analytic";
        case SpectrumMethod::QR: return "qr";
        case SpectrumMethod::GaugedQR: return "gauged-qr";
        case SpectrumMethod::Bloch: return "bloch";
    }
    return "?";
}

// ---- subcommands ----------------------------------------------------------

int cmd_spectrum(const ModelFlags& m, const std::string& method, int num_k,
                 const OutputOptions& o) {
    const ModelSpec spec = to_spec(m);
    Spectrum s;
    if (spec.bc == Boundary::PBC) {
        s = pbc_spectrum(spec, num_k);
    } else if (method == "qr") {
        s = eigenvalues_qr(build_hamiltonian(spec));
    } else if (method == "analytic") {
        if (spec.kind == ModelKind::HatanoNelson) {
            const auto e = hatano_obc_eigs(spec.n, spec.gamma);
            s.eigenvalues = {e.begin(), e.end()};
            s.method = SpectrumMethod::Analytic;
        } else if (spec.kind == ModelKind::GainLoss && spec.gamma == 0.0) {
            s = obc_spectrum(spec);
        } else {
            throw std::invalid_argument("--method analytic requires a closed form "
                                        "(hatano, or gainloss with gamma=0)");
        }
    } else {
        s = obc_spectrum(spec);
    }

    Table t;
    add_model_meta(t, m);
    t.meta("bc", m.bc);
    t.meta("method", method_name(s.method));
    if (!s.conditioning_note.empty()) t.meta("conditioning_note", s.conditioning_note);
    t.columns = {"index", "re", "im", "method"};
    for (size_t i = 0; i < s.eigenvalues.size(); ++i)
        t.rows.push_back({static_cast<long long>(i), s.eigenvalues[i].real(),
                          s.eigenvalues[i].imag(), method_name(s.method)});
    emit(t, o, 1, 2);
    return 0;
}

int cmd_band(const ModelFlags& m, int grid, std::vector<double> window, int num_k,
             const OutputOptions& o) {
    if (window.size() != 4)
        throw std::invalid_argument("--window needs RE_MIN,RE_MAX,IM_MIN,IM_MAX");
    ModelSpec spec = to_spec(m);
    const GridSpec g{window[0], window[1], window[2], window[3], grid, grid};
    const auto scan = band_scan(spec, g, num_k);
    spec.bc = Boundary::PBC;
    const auto poly = pbc_loop_polygon(spec, num_k);

    Table t;
    add_model_meta(t, m);
    t.meta("grid", std::to_string(grid));
    t.columns = {"re_E", "im_E", "growth_verdict", "winding_verdict", "decay_rate"};
    auto gname = [](Growth v) {
        return v == Growth::Bounded ? "bounded"
             : v == Growth::Divergent ? "divergent"
                                      : "indeterminate";
    };
    auto wname = [](Winding v) {
        return v == Winding::Inside ? "inside"
             : v == Winding::Outside ? "outside"
                                     : "near-boundary";
    };
    for (const auto& p : scan)
        t.rows.push_back({p.energy.real(), p.energy.imag(), gname(p.growth.verdict),
                          wname(p.winding), p.growth.decay_rate});
    emit(t, o, 0, 1, poly.loops, 2);
    return 0;
}

int cmd_sweep_delta(const ModelFlags& m, double dmin, double dmax, double dstep,
                    const OutputOptions& o) {
    if (dstep <= 0.0) throw std::invalid_argument("--dstep must be positive");
    const auto [lo, hi] = ssh_zero_mode_domain(m.gamma);

    Table t;
    t.meta("model", "ssh");
    t.meta("n", std::to_string(m.n));
    t.meta("gamma", m.gamma);
    t.meta("quasi_window_lo", lo);
    t.meta("quasi_window_hi", 0.0);
    t.columns = {"delta", "index", "re", "im", "quasi_window"};
    for (double d = dmin; d <= dmax + 1e-12; d += dstep) {
        ModelSpec spec{ModelKind::NonReciprocalSSH, m.n, m.gamma, 0.0, d};
        const Spectrum s = obc_spectrum(spec);
        const long long in_window = (d > lo && d < 0.0) ? 1 : 0;
        for (size_t i = 0; i < s.eigenvalues.size(); ++i)
            t.rows.push_back({d, static_cast<long long>(i), s.eigenvalues[i].real(),
                              s.eigenvalues[i].imag(), in_window});
    }
    emit(t, o, 0, 2);
    return 0;
}

int cmd_recurse(const ModelFlags& m, double ere, double eim, const std::string& seed,
                int j_max, const OutputOptions& o) {
    const ModelSpec spec = to_spec(m);
    const complexd energy{ere, eim};
    const complexd psi1 = seed == "paper" ? energy : complexd{1.0, 0.0};
    const int jm = j_max > 0 ? j_max : spec.n + 1;
    const auto tr = recurse(spec, energy, psi1, jm);

    Table t;
    add_model_meta(t, m);
    t.meta("energy_re", ere);
    t.meta("energy_im", eim);
    t.meta("seed", seed);
    t.meta("residual", tr.residual);
    t.meta("boundary_log_abs", tr.log_abs.back());
    t.columns = {"j", "re", "im", "log_abs"};
    for (size_t j = 0; j < tr.psi.size(); ++j)
        t.rows.push_back({static_cast<long long>(j), tr.psi[j].real(), tr.psi[j].imag(),
                          tr.log_abs[j]});
    emit(t, o, 0, 3);
    if (!o.out.empty())
        std::printf("boundary amplitude |psi_%d| = %.6e\n", jm,
                    std::exp(tr.log_abs.back()));
    return 0;
}

int cmd_evolve(const ModelFlags& m, double t_final, double tol, int samples,
               const std::string& init, double ere, double eim, double eps_life,
               const OutputOptions& o) {
    const ModelSpec spec = to_spec(m);
    const auto h = build_hamiltonian(spec);
    std::vector<complexd> psi0;
    if (init == "zeromode") {
        if (spec.kind != ModelKind::NonReciprocalSSH)
            throw std::domain_error("--init zeromode requires the ssh model");
        psi0 = ssh_zero_mode(spec.n, spec.gamma, spec.delta).amplitudes;
    } else if (init == "qstat") {
        psi0 = quasi_stationary_state(spec, {ere, eim}).psi;
    } else {  // site1
        psi0.assign(spec.n, complexd{0.0, 0.0});
        psi0[0] = 1.0;
    }
    const auto res = evolve(h, psi0, t_final, tol, samples, eps_life);

    Table t;
    add_model_meta(t, m);
    t.meta("init", init);
    t.meta("t_final", t_final);
    t.meta("tol", tol);
    t.meta("eps_life", eps_life);
    if (res.lifetime)
        t.meta("lifetime", *res.lifetime);
    else
        t.meta("lifetime", "none");
    t.columns = {"t", "deviation", "lognorm"};
    for (size_t i = 0; i < res.times.size(); ++i)
        t.rows.push_back({res.times[i], res.deviation[i], res.lognorm[i]});
    emit(t, o, 0, 1);
    return 0;
}

int cmd_disorder(const ModelFlags& m, double fwidth, double gwidth, int realizations,
                 std::uint64_t seed, const OutputOptions& o) {
    ModelSpec spec = to_spec(m);
    spec.kind = ModelKind::NonReciprocalSSH;
    const DisorderSpec d{fwidth, gwidth, seed, realizations};
    const auto rep = disorder_robustness(spec, d);

    Table t;
    add_model_meta(t, m);
    t.meta("fwidth", fwidth);
    t.meta("gwidth", gwidth);
    t.meta("seed", std::to_string(seed));
    t.meta("realizations", std::to_string(realizations));
    t.meta("zero_energy_spread", rep.zero_energy_spread);
    t.meta("verdict", rep.verdict == RobustnessVerdict::Robust ? "robust" : "fragile");
    t.meta("overlap_min", rep.thresholds.overlap_min);
    t.meta("spread_max", rep.thresholds.spread_max);
    t.meta("probe_time", rep.thresholds.probe_time);
    t.columns = {"realization", "nearest_eig_re", "nearest_eig_im", "overlap"};
    for (int i = 0; i < rep.realizations; ++i)
        t.rows.push_back({static_cast<long long>(i), rep.nearest_eigs[i].real(),
                          rep.nearest_eigs[i].imag(), rep.survival_overlap[i]});
    emit(t, o, 1, 2);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nhlab: non-Hermitian tight-binding lattice laboratory"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    ModelFlags m;
    OutputOptions o;

    auto* sp = app.add_subcommand("spectrum", "eigenvalues of a finite chain");
    add_model_flags(sp, m, true);
    std::string method = "auto";
    int num_k = 256;
    sp->add_option("--method", method, "solver selection")
        ->check(CLI::IsMember({"analytic", "qr", "auto"}));
    sp->add_option("--num-k", num_k, "k-grid size for pbc");
    add_output_flags(sp, o);

    auto* bd = app.add_subcommand("band", "continuum-band membership map");
    add_model_flags(bd, m);
    int grid = 101;
    std::vector<double> window = {-2.0, 2.0, -2.0, 2.0};
    bd->add_option("--grid", grid, "grid resolution per axis");
    bd->add_option("--window", window, "RE_MIN,RE_MAX,IM_MIN,IM_MAX")
        ->delimiter(',')
        ->expected(4);
    bd->add_option("--num-k", num_k, "PBC loop sampling");
    add_output_flags(bd, o);

    auto* sw = app.add_subcommand("sweep-delta", "OBC spectrum vs dimerization");
    add_model_flags(sw, m);
    double dmin = -0.95, dmax = 0.95, dstep = 0.05;
    sw->add_option("--dmin", dmin);
    sw->add_option("--dmax", dmax);
    sw->add_option("--dstep", dstep);
    add_output_flags(sw, o);

    auto* rc = app.add_subcommand("recurse", "forward recursion at a trial energy");
    add_model_flags(rc, m);
    double ere = 0.0, eim = 0.0;
    std::string seed_conv = "unit";
    int j_max = 0;
    rc->add_option("--energy", ere, "trial energy, real part");
    rc->add_option("--energy-im", eim, "trial energy, imaginary part");
    rc->add_option("--seed", seed_conv, "seed convention: psi_1 = 1 or psi_1 = E")
        ->check(CLI::IsMember({"unit", "paper"}));
    rc->add_option("--j", j_max, "last recursion index (default n+1)");
    add_output_flags(rc, o);

    auto* ev = app.add_subcommand("evolve", "time evolution of an initial state");
    add_model_flags(ev, m);
    double t_final = 40.0, tol = 1e-9, eps_life = 0.01;
    int samples = 201;
    std::string init = "zeromode";
    ev->add_option("--t", t_final, "final time");
    ev->add_option("--tol", tol, "integrator tolerance");
    ev->add_option("--samples", samples, "output samples");
    ev->add_option("--init", init, "initial state")
        ->check(CLI::IsMember({"zeromode", "qstat", "site1"}));
    ev->add_option("--energy", ere, "trial energy for --init qstat");
    ev->add_option("--energy-im", eim);
    ev->add_option("--eps-life", eps_life, "lifetime crossing threshold");
    add_output_flags(ev, o);

    auto* di = app.add_subcommand("disorder", "hopping-disorder Monte Carlo (ssh)");
    add_model_flags(di, m);
    double fwidth = 0.05, gwidth = 0.0;
    int realizations = 100;
    std::uint64_t rng_seed = 1;
    di->add_option("--fwidth", fwidth, "forward hopping half-width");
    di->add_option("--gwidth", gwidth, "relative gamma half-width");
    di->add_option("--realizations", realizations)->check(CLI::PositiveNumber);
    di->add_option("--rng-seed", rng_seed, "disorder stream seed");
    add_output_flags(di, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sp->parsed()) return cmd_spectrum(m, method, num_k, o);
        if (bd->parsed()) return cmd_band(m, grid, window, num_k, o);
        if (sw->parsed()) return cmd_sweep_delta(m, dmin, dmax, dstep, o);
        if (rc->parsed()) return cmd_recurse(m, ere, eim, seed_conv, j_max, o);
        if (ev->parsed())
            return cmd_evolve(m, t_final, tol, samples, init, ere, eim, eps_life, o);
        if (di->parsed()) return cmd_disorder(m, fwidth, gwidth, realizations, rng_seed, o);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
