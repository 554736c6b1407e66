// Benchmark of the OpenMP simulation engine against the serial reference.
// Runs the same configuration through both paths, reports wall-clock times,
// and verifies the results are bit-identical (which the engine guarantees by
// reducing fixed-size chunks in a fixed order).
#include "fas/cli_support.hpp"
#include "fas/modulation.hpp"
#include "fas/ser_sim.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

int main(int argc, char** argv) {
    // bench_ser [ports] [width] [trials] [threads]
    fas::SimConfig cfg;
    cfg.geometry = {argc > 1 ? std::atoi(argv[1]) : 16,
                    argc > 2 ? std::atof(argv[2]) : 2.0};
    cfg.scheme = fas::parse_scheme("bpsk");
    cfg.snr_grid_db = fas::parse_snr_grid("0:5:30");
    cfg.trials = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 2'000'000;
    cfg.seed = 12345;
    cfg.threads = fas::resolve_threads(argc > 4 ? std::atoi(argv[4]) : 0);

    try {
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "bad configuration: " << e.what() << "\n";
        return 2;
    }

    std::cout << "ports=" << cfg.geometry.ports << " width=" << cfg.geometry.width
              << " trials=" << cfg.trials << " grid=" << cfg.snr_grid_db.size()
              << " points threads=" << cfg.threads << "\n";

    auto t0 = std::chrono::steady_clock::now();
    const fas::SerCurve serial = fas::simulate_ser_serial(cfg);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const fas::SerCurve parallel = fas::simulate_ser(cfg);
    const double t_parallel = seconds_since(t0);

    bool identical = true;
    for (std::size_t i = 0; i < serial.points.size(); ++i) {
        if (serial.points[i].ser != parallel.points[i].ser ||
            serial.points[i].ci_half_width != parallel.points[i].ci_half_width) {
            identical = false;
        }
    }

    std::cout.precision(3);
    std::cout << "serial:   " << t_serial << " s\n"
              << "parallel: " << t_parallel << " s  (speedup "
              << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x)\n"
              << "bit-identical: " << (identical ? "yes" : "NO") << "\n";
    if (!identical) {
        std::cerr << "parallel output diverged from the serial reference\n";
        return 1;
    }
    return 0;
}
