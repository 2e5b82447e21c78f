// bench_sweep.cpp: serial vs OpenMP timings for the two parallel kernels:
// the fig2 grid sweep and the oracle's sector matrix assembly.
//
//   bench_sweep [repeats]

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <limits>

#include <omp.h>

#include "qheat/oracle.hpp"
#include "qheat/sweep.hpp"

namespace {

template <class F>
double best_of(int repeats, F&& f)
{
    double best = std::numeric_limits<double>::max();
    for (int k = 0; k < repeats; ++k) {
        const auto start = std::chrono::steady_clock::now();
        f();
        const auto stop = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(stop - start).count());
    }
    return best;
}

} // namespace

int main(int argc, char** argv)
{
    const int repeats = argc > 1 ? std::max(1, std::atoi(argv[1])) : 3;
    std::cout << "threads: " << omp_get_max_threads() << "\n";

    const auto spec = qheat::sweep::preset_fig2();
    std::size_t rows = 0;
    const double serial = best_of(repeats, [&] { rows = qheat::sweep::evaluate_serial(spec).size(); });
    const double parallel = best_of(repeats, [&] { rows = qheat::sweep::evaluate_parallel(spec).size(); });
    std::cout << "fig2 sweep (" << rows << " rows): serial " << serial << " ms, parallel " << parallel
              << " ms, speedup " << serial / parallel << "\n";

    const qheat::NetworkParams p{.omega_h = 10.0, .omega_c = 5.0, .epsilon = 1e-2,
                                 .T_h = 12.0, .T_c = 10.0, .kappa = 1e-4};
    const auto liou = qheat::oracle::build(p, qheat::oracle::Approach::GlobalGen, 24);
    const auto gen = liou.total();
    const auto sector = liou.zero_coherence_sector();
    const double block_serial = best_of(repeats, [&] { (void)gen.sector_matrix_serial(sector); });
    const double block_parallel = best_of(repeats, [&] { (void)gen.sector_matrix(sector); });
    std::cout << "oracle sector matrix n_max=24 (" << sector.size() << " elements): serial " << block_serial
              << " ms, parallel " << block_parallel << " ms, speedup " << block_serial / block_parallel
              << "\n";
    return 0;
}
