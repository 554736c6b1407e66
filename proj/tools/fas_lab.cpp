// fas_lab: command-line front end of the fluid-antenna error-probability
// laboratory. Three subcommands cover the workflow: `spectrum` dumps a
// correlation eigenspectrum with its rank report, `ser` runs a Monte Carlo
// error-rate sweep (optionally with the matching asymptote), and `figures`
// regenerates the canned experiment presets. Everything is CSV on disk and
// deterministic given the flag set, including --seed.
#include <CLI11.hpp>

#include "fas/channel.hpp"
#include "fas/cli_support.hpp"
#include "fas/correlation.hpp"
#include "fas/csv.hpp"
#include "fas/errors.hpp"
#include "fas/modulation.hpp"
#include "fas/rank.hpp"
#include "fas/ser_analysis.hpp"
#include "fas/ser_sim.hpp"

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using fas::csv::format_double;
using fas::csv::format_double_sci;

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

// Raised while interpreting command-line values; maps to the usage exit
// code, unlike domain errors thrown later from the numerics.
struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string thread_echo(int threads_flag) {
    return threads_flag > 0 ? std::to_string(threads_flag) : std::string("auto");
}

// "0.5" -> "0p5" for file names.
std::string w_tag(double w) {
    std::string s = format_double(w);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

std::string opt_int(const std::optional<int>& v) {
    return v ? std::to_string(*v) : std::string();
}

void write_rank_row(fas::csv::Writer& w, double width, int ports,
                    const fas::RankReport& report) {
    w.header({"w", "n", "n_eff1", "n_eff2", "n_eff3", "theoretical",
              "entropy_rank", "energy_at_n_eff1"});
    w.row({format_double(width), std::to_string(ports), opt_int(report.n_eff1),
           opt_int(report.n_eff2), opt_int(report.n_eff3),
           format_double(report.theoretical), format_double(report.entropy_rank),
           report.energy_at_n_eff1 ? format_double(*report.energy_at_n_eff1)
                                   : std::string()});
}

void write_spectrum_files(const fs::path& out, const fas::CorrelationSpectrum& spec,
                          const std::vector<std::string>& echo) {
    fas::csv::Writer w(out);
    for (const auto& line : echo) w.comment(line);
    w.header({"index", "eigenvalue"});
    for (int i = 0; i < spec.ports(); ++i) {
        w.row({std::to_string(i + 1), format_double_sci(spec.eigenvalues()(i))});
    }
    w.close();

    fs::path sidecar = out;
    sidecar.replace_extension(".rank.csv");
    fas::csv::Writer r(sidecar);
    for (const auto& line : echo) r.comment(line);
    write_rank_row(r, spec.geometry().width, spec.ports(), fas::effective_ranks(spec));
    r.close();
}

void write_ser_curve(const fs::path& out, const fas::SerCurve& curve,
                     const std::vector<std::string>& echo) {
    fas::csv::Writer w(out);
    for (const auto& line : echo) w.comment(line);
    w.header({"snr_db", "ser", "ci_half_width", "trials"});
    for (const auto& pt : curve.points) {
        w.row({format_double(pt.snr_db), format_double_sci(pt.ser),
               format_double_sci(pt.ci_half_width), std::to_string(pt.trials)});
    }
    w.close();
}

void write_asymptote(const fs::path& out, const fas::AsymptoticModel& model,
                     const std::vector<double>& grid,
                     const std::vector<std::string>& echo) {
    fas::csv::Writer w(out);
    for (const auto& line : echo) w.comment(line);
    w.header({"snr_db", "asymptotic_ser"});
    for (double s : grid) {
        w.row({format_double(s), format_double_sci(model.evaluate_db(s))});
    }
    w.close();
}

// ---------------------------------------------------------------------------
// spectrum subcommand

struct SpectrumArgs {
    int ports = 1;
    double width = 0.0;
    std::string out;
};

void run_spectrum(const SpectrumArgs& a, int threads_flag) {
    fas::ApertureGeometry geom{a.ports, a.width};
    try {
        geom.validate();
    } catch (const std::domain_error& e) {
        throw usage_error(e.what());
    }
    const auto spec = fas::build_correlation(geom);
    std::ostringstream cfg;
    cfg << "ports=" << a.ports << " width=" << format_double(a.width)
        << " threads=" << thread_echo(threads_flag);
    write_spectrum_files(a.out, spec, {"fas_lab spectrum", cfg.str()});
}

// ---------------------------------------------------------------------------
// ser subcommand

struct SerArgs {
    std::string mod = "bpsk";
    int ports = 1;
    double width = 0.0;
    std::string snr = "0:5:30";
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t chunk = 65'536;
    int truncate = 0;  // 0 = no truncation
    bool asymptotic = false;
    std::string method = "semi";
    std::string out;
};

void run_ser(const SerArgs& a, int threads_flag) {
    fas::SimConfig cfg;
    try {
        cfg.geometry = {a.ports, a.width};
        cfg.scheme = fas::parse_scheme(a.mod);
        cfg.snr_grid_db = fas::parse_snr_grid(a.snr);
        cfg.trials = a.trials;
        cfg.seed = a.seed;
        cfg.chunk_size = a.chunk;
        if (a.truncate > 0) cfg.truncation_k = a.truncate;
        if (a.method == "semi") {
            cfg.method = fas::SimMethod::semi_analytic;
        } else if (a.method == "symbol") {
            cfg.method = fas::SimMethod::symbol_level;
        } else {
            throw usage_error("unknown --method (expected semi or symbol): " + a.method);
        }
        cfg.threads = fas::resolve_threads(threads_flag);
        cfg.validate();
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception& e) {
        throw usage_error(e.what());
    }

    std::ostringstream echo;
    echo << "mod=" << cfg.scheme.name() << " ports=" << a.ports
         << " width=" << format_double(a.width) << " snr_db=" << a.snr
         << " trials=" << a.trials << " seed=" << a.seed << " chunk=" << a.chunk
         << " method=" << a.method << " truncate="
         << (a.truncate > 0 ? std::to_string(a.truncate) : std::string("none"))
         << " threads=" << thread_echo(threads_flag);
    std::vector<std::string> comments = {"fas_lab ser", echo.str()};

    const fas::SerCurve curve = fas::simulate_ser(cfg);

    if (a.asymptotic) {
        const auto spec = fas::build_correlation(cfg.geometry);
        const int n_ports = spec.ports();
        const bool clean_full = spec.positive_count() == n_ports &&
                                spec.eigenvalues()(n_ports - 1) > 1e-12;
        // Diversity order of the asymptote: the truncation rank when one is
        // requested (and realizable), the full port count on a clean
        // spectrum, else the geometric effective rank of region 1.
        int asym_n;
        if (a.truncate > 0 && a.truncate <= spec.positive_count()) {
            asym_n = a.truncate;
        } else if (!cfg.truncation_k && clean_full) {
            asym_n = n_ports;
        } else {
            const auto report = fas::effective_ranks(spec);
            asym_n = report.n_eff1.value_or(spec.positive_count());
        }
        const auto model = fas::make_asymptotic_model(spec, cfg.scheme, asym_n);
        std::ostringstream note;
        note << "asymptote_form=" << (asym_n == n_ports ? "full" : "effective")
             << " asymptote_n=" << asym_n;
        comments.push_back(note.str());

        fs::path asym_path(a.out);
        asym_path.replace_extension(".asymptote.csv");
        write_asymptote(asym_path, model, cfg.snr_grid_db, comments);
    }

    write_ser_curve(a.out, curve, comments);
}

// ---------------------------------------------------------------------------
// figures subcommand

struct FigureContext {
    fs::path dir;
    std::uint64_t seed = 0;
    int threads_flag = 0;
    std::vector<std::string> written;  // relative names, for the plot stub

    std::vector<std::string> echo(const std::string& preset) const {
        std::ostringstream cfg;
        cfg << "preset=" << preset << " seed=" << seed
            << " threads=" << thread_echo(threads_flag);
        return {"fas_lab figures", cfg.str()};
    }

    fs::path file(const std::string& name) {
        written.push_back(name);
        return dir / name;
    }
};

fas::SimConfig bpsk_config(int ports, double width, const std::string& grid,
                           std::uint64_t trials, const FigureContext& ctx) {
    fas::SimConfig cfg;
    cfg.geometry = {ports, width};
    cfg.scheme = fas::parse_scheme("bpsk");
    cfg.snr_grid_db = fas::parse_snr_grid(grid);
    cfg.trials = trials;
    cfg.seed = ctx.seed;
    cfg.threads = fas::resolve_threads(ctx.threads_flag);
    return cfg;
}

void preset_fig2(FigureContext& ctx) {
    for (double w : {0.5, 1.0, 2.0, 4.0}) {
        const auto spec = fas::build_correlation({100, w});
        auto echo = ctx.echo("fig2");
        echo.push_back("ports=100 width=" + format_double(w));
        write_spectrum_files(ctx.file("fig2_spectrum_w" + w_tag(w) + ".csv"),
                             spec, echo);
        ctx.written.push_back("fig2_spectrum_w" + w_tag(w) + ".rank.csv");
    }
}

void preset_fig3(FigureContext& ctx) {
    const std::vector<int> ks = {1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 30, 57, 100};
    fas::csv::Writer w(ctx.file("fig3_truncation.csv"));
    auto echo = ctx.echo("fig3");
    echo.push_back("mod=bpsk ports=100 width=1 snr_db={10,20} trials=100000");
    for (const auto& line : echo) w.comment(line);
    w.header({"truncation_k", "snr_db", "ser", "ci_half_width", "trials"});
    for (int k : ks) {
        auto cfg = bpsk_config(100, 1.0, "10:10:20", 100'000, ctx);
        cfg.truncation_k = k;
        const auto curve = fas::simulate_ser(cfg);
        for (const auto& pt : curve.points) {
            w.row({std::to_string(k), format_double(pt.snr_db),
                   format_double_sci(pt.ser), format_double_sci(pt.ci_half_width),
                   std::to_string(pt.trials)});
        }
    }
    w.close();
}

void preset_fig4(FigureContext& ctx) {
    fas::csv::Writer w(ctx.file("fig4_rank_n40.csv"));
    for (const auto& line : ctx.echo("fig4")) w.comment(line);
    w.header({"w", "n", "n_eff1", "n_eff2", "n_eff3", "theoretical",
              "entropy_rank", "energy_at_n_eff1"});
    for (double width = 0.5; width <= 8.01; width += 0.5) {
        const auto spec = fas::build_correlation({40, width});
        const auto report = fas::effective_ranks(spec);
        w.row({format_double(width), "40", opt_int(report.n_eff1),
               opt_int(report.n_eff2), opt_int(report.n_eff3),
               format_double(report.theoretical), format_double(report.entropy_rank),
               report.energy_at_n_eff1 ? format_double(*report.energy_at_n_eff1)
                                       : std::string()});
    }
    w.close();
}

void preset_fig5(FigureContext& ctx) {
    for (int n : {1, 2, 3, 4, 5}) {
        const double width = n == 1 ? 0.0 : 1.0;
        auto cfg = bpsk_config(n, width, "0:2.5:35", 1'000'000, ctx);
        auto echo = ctx.echo("fig5");
        echo.push_back("mod=bpsk ports=" + std::to_string(n) +
                       " width=" + format_double(width) +
                       " snr_db=0:2.5:35 trials=1000000");
        write_ser_curve(ctx.file("fig5_bpsk_n" + std::to_string(n) + ".csv"),
                        fas::simulate_ser(cfg), echo);

        const auto spec = fas::build_correlation(cfg.geometry);
        const auto model = fas::make_asymptotic_model(spec, cfg.scheme, n);
        write_asymptote(ctx.file("fig5_asymptote_n" + std::to_string(n) + ".csv"),
                        model, cfg.snr_grid_db, echo);
    }
}

void preset_fig6(FigureContext& ctx) {
    const std::vector<std::string> mods = {"bpsk", "psk4",  "psk8",  "psk16", "pam4",
                                           "pam8", "pam16", "qam4",  "qam16", "qam64"};
    const auto spec = fas::build_correlation({3, 1.0});
    for (const auto& mod : mods) {
        auto cfg = bpsk_config(3, 1.0, "0:2.5:35", 1'000'000, ctx);
        cfg.scheme = fas::parse_scheme(mod);
        auto echo = ctx.echo("fig6");
        echo.push_back("mod=" + mod + " ports=3 width=1 snr_db=0:2.5:35 trials=1000000");
        write_ser_curve(ctx.file("fig6_" + mod + ".csv"), fas::simulate_ser(cfg),
                        echo);
        const auto model = fas::make_asymptotic_model(spec, cfg.scheme, 3);
        write_asymptote(ctx.file("fig6_asymptote_" + mod + ".csv"), model,
                        cfg.snr_grid_db, echo);
    }
}

void preset_fig7(FigureContext& ctx) {
    // Fixed one-wavelength aperture; denser ports shrink the spacing:
    // N=3 -> 0.5, N=6 -> 0.2, N=11 -> 0.1 wavelengths.
    for (int n : {3, 6, 11}) {
        auto cfg = bpsk_config(n, 1.0, "0:2.5:35", 1'000'000, ctx);
        auto echo = ctx.echo("fig7");
        echo.push_back("mod=bpsk ports=" + std::to_string(n) +
                       " width=1 snr_db=0:2.5:35 trials=1000000");
        write_ser_curve(ctx.file("fig7_n" + std::to_string(n) + ".csv"),
                        fas::simulate_ser(cfg), echo);
    }
}

void preset_fig8(FigureContext& ctx) {
    fas::csv::Writer w(ctx.file("fig8_ber_vs_width.csv"));
    auto echo = ctx.echo("fig8");
    echo.push_back("mod=bpsk snr_db=10 trials=30000 n={10,50,100} w=0.5:0.5:6");
    for (const auto& line : echo) w.comment(line);
    w.header({"w", "n", "snr_db", "ser", "ci_half_width", "trials"});
    for (int n : {10, 50, 100}) {
        for (double width = 0.5; width <= 6.01; width += 0.5) {
            auto cfg = bpsk_config(n, width, "10", 30'000, ctx);
            const auto pt = fas::simulate_ser(cfg).points[0];
            w.row({format_double(width), std::to_string(n), format_double(pt.snr_db),
                   format_double_sci(pt.ser), format_double_sci(pt.ci_half_width),
                   std::to_string(pt.trials)});
        }
    }
    w.close();
}

void preset_fig9(FigureContext& ctx) {
    for (double width : {1.0, 4.0}) {
        auto cfg = bpsk_config(100, width, "0:2.5:30", 100'000, ctx);
        auto echo = ctx.echo("fig9");
        echo.push_back("mod=bpsk ports=100 width=" + format_double(width) +
                       " snr_db=0:2.5:30 trials=100000");
        echo.push_back("note=emits exact and proposed curves only; the external "
                       "benchmark formula is out of scope");
        write_ser_curve(ctx.file("fig9_exact_w" + w_tag(width) + ".csv"),
                        fas::simulate_ser(cfg), echo);

        const auto spec = fas::build_correlation(cfg.geometry);
        const int n_eff = fas::theoretical_rank_rounded(width);
        const auto model = fas::make_asymptotic_model(spec, cfg.scheme, n_eff);
        auto prop_echo = echo;
        prop_echo.push_back("asymptote_form=effective asymptote_n=" +
                            std::to_string(n_eff));
        write_asymptote(ctx.file("fig9_proposed_w" + w_tag(width) + ".csv"),
                        model, cfg.snr_grid_db, prop_echo);
    }
}

void preset_fig10(FigureContext& ctx) {
    const auto spec = fas::build_correlation({100, 1.0});
    const auto report = fas::effective_ranks(spec);
    std::vector<int> ks;
    if (report.n_eff1) {
        ks.push_back(*report.n_eff1);
        ks.push_back(*report.n_eff1 + 1);
    }
    if (report.n_eff2) ks.push_back(*report.n_eff2);
    if (report.n_eff3) ks.push_back(*report.n_eff3);
    for (int k : ks) {
        auto cfg = bpsk_config(100, 1.0, "0:2.5:30", 200'000, ctx);
        cfg.truncation_k = k;
        auto echo = ctx.echo("fig10");
        echo.push_back("mod=bpsk ports=100 width=1 truncate=" + std::to_string(k) +
                       " snr_db=0:2.5:30 trials=200000");
        write_ser_curve(ctx.file("fig10_k" + std::to_string(k) + ".csv"),
                        fas::simulate_ser(cfg), echo);
    }
}

void preset_fig11(FigureContext& ctx) {
    fas::csv::Writer w(ctx.file("fig11_rank_surface.csv"));
    for (const auto& line : ctx.echo("fig11")) w.comment(line);
    w.header({"n", "w", "geometric_rank", "theoretical_rank"});
    for (int n = 10; n <= 100; n += 10) {
        for (double width = 0.5; width <= 8.01; width += 0.5) {
            const auto report = fas::effective_ranks(fas::build_correlation({n, width}));
            w.row({std::to_string(n), format_double(width), opt_int(report.n_eff1),
                   std::to_string(report.theoretical_rounded)});
        }
    }
    w.close();
}

struct Preset {
    std::string description;
    std::function<void(FigureContext&)> run;
};

const std::vector<std::pair<std::string, Preset>>& preset_table() {
    static const std::vector<std::pair<std::string, Preset>> table = {
        {"fig2", {"eigenvalue spectra with rank sidecars, N=100, W in {0.5,1,2,4}",
                  preset_fig2}},
        {"fig3", {"BER vs truncation rank, N=100, W=1, BPSK at 10 and 20 dB",
                  preset_fig3}},
        {"fig4", {"geometric vs theoretical rank table, N=40, W=0.5..8", preset_fig4}},
        {"fig5", {"BPSK BER curves with asymptotes, W=1, N=1..5", preset_fig5}},
        {"fig6", {"modulation family sweep at N=3, W=1 (BPSK, PSK, PAM, QAM)",
                  preset_fig6}},
        {"fig7", {"BER for N in {3,6,11} on a one-wavelength aperture "
                  "(0.5/0.2/0.1-wavelength spacing)",
                  preset_fig7}},
        {"fig8", {"BER vs aperture width at 10 dB for N in {10,50,100}", preset_fig8}},
        {"fig9", {"exact curve vs proposed effective-rank asymptote, N=100, "
                  "W in {1,4} (external benchmark omitted)",
                  preset_fig9}},
        {"fig10", {"BER under truncation at the turning-point ranks, N=100, W=1",
                   preset_fig10}},
        {"fig11", {"effective-rank surface over the N x W grid", preset_fig11}},
    };
    return table;
}

std::string preset_listing() {
    std::ostringstream out;
    out << "Presets:\n";
    for (const auto& [name, preset] : preset_table()) {
        out << "  " << name << "  " << preset.description << "\n";
    }
    return out.str();
}

void write_gnuplot_stub(const FigureContext& ctx, const std::string& preset) {
    std::ofstream out(ctx.dir / (preset + ".gp"), std::ios::binary | std::ios::trunc);
    if (!out) throw fas::io_error("cannot write plot stub in " + ctx.dir.string());
    out << "# gnuplot stub for preset " << preset << "\n"
        << "set datafile separator ','\n"
        << "set datafile commentschars '#'\n"
        << "set logscale y\n";
    bool first = true;
    for (const auto& name : ctx.written) {
        out << (first ? "plot " : "replot ") << '"' << name
            << "\" using 1:2 with linespoints title \"" << name << "\"\n";
        first = false;
    }
    out << "pause -1\n";
    if (!out.flush()) throw fas::io_error("write failure on plot stub");
}

struct FiguresArgs {
    std::string preset;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    bool gnuplot_stub = false;
};

void run_figures(const FiguresArgs& a, int threads_flag) {
    const auto& table = preset_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const auto& p) { return p.first == a.preset; });
    if (it == table.end()) throw usage_error("unknown preset: " + a.preset);

    std::error_code ec;
    fs::create_directories(a.out_dir, ec);
    if (ec) throw fas::io_error("cannot create output directory: " + a.out_dir);

    FigureContext ctx;
    ctx.dir = a.out_dir;
    ctx.seed = a.seed;
    ctx.threads_flag = threads_flag;
    it->second.run(ctx);
    if (a.gnuplot_stub) write_gnuplot_stub(ctx, a.preset);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fas_lab: fluid-antenna error-probability laboratory.\n"
                 "Correlated-channel Monte Carlo, asymptotic SER, and\n"
                 "effective-rank analysis, emitted as deterministic CSV."};
    app.set_config("--config", "", "key=value config file; flags override its values");
    app.footer(preset_listing());
    app.require_subcommand(1);

    int threads_flag = 0;
    app.add_option("--threads", threads_flag,
                   "worker threads (default: FAS_LAB_THREADS, else hardware)");

    SpectrumArgs sp;
    auto* spectrum = app.add_subcommand(
        "spectrum", "eigenvalue spectrum CSV plus a .rank.csv sidecar");
    spectrum->add_option("--ports", sp.ports, "number of ports N")->required();
    spectrum->add_option("--width", sp.width, "aperture width W in wavelengths")
        ->required();
    spectrum->add_option("--out", sp.out, "output CSV path")->required();

    SerArgs se;
    auto* ser = app.add_subcommand(
        "ser", "Monte Carlo symbol-error-rate sweep over an SNR grid");
    ser->add_option("--mod", se.mod, "scheme: bpsk, psk<M>, pam<M>, qam<M>")
        ->required();
    ser->add_option("--ports", se.ports, "number of ports N")->required();
    ser->add_option("--width", se.width, "aperture width W in wavelengths")
        ->required();
    ser->add_option("--snr-db", se.snr, "grid A:STEP:B (inclusive) or single value")
        ->required();
    ser->add_option("--trials", se.trials, "Monte Carlo trials (>= 10000)");
    ser->add_option("--seed", se.seed, "master RNG seed");
    ser->add_option("--chunk", se.chunk, "trials per deterministic chunk");
    ser->add_option("--truncate", se.truncate,
                    "synthesize from the leading K eigenmodes only");
    ser->add_flag("--asymptotic", se.asymptotic,
                  "also write <out>.asymptote.csv over the same grid");
    ser->add_option("--method", se.method, "semi (default) or symbol");
    ser->add_option("--out", se.out, "output CSV path")->required();

    FiguresArgs fg;
    auto* figures = app.add_subcommand("figures", "regenerate a canned experiment");
    figures->add_option("--preset", fg.preset, "preset name (see list below)")
        ->required();
    figures->add_option("--out", fg.out_dir, "output directory (created if absent)");
    figures->add_option("--seed", fg.seed, "master RNG seed");
    figures->add_flag("--gnuplot-stub", fg.gnuplot_stub,
                      "also emit a <preset>.gp plotting script");
    figures->footer(preset_listing());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (spectrum->parsed()) run_spectrum(sp, threads_flag);
        if (ser->parsed()) run_ser(se, threads_flag);
        if (figures->parsed()) run_figures(fg, threads_flag);
    } catch (const usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const fas::io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
