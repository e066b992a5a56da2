// Compares the OpenMP kernels against their serial reference
// implementations: LHV strategy enumeration and dense channel application.

#include <omp.h>

#include <cstdio>
#include <cstdlib>

#include "ghznl/ghz.hpp"
#include "ghznl/lhv_oracle.hpp"
#include "ghznl/loss.hpp"
#include "ghznl/tensor.hpp"

using namespace ghznl;

namespace {

double time_once(double (*fn)(int, Selector), int sites, Selector sel, double* result) {
    const double start = omp_get_wtime();
    *result = fn(sites, sel);
    return omp_get_wtime() - start;
}

DenseState make_dense_ghz(int sites) {
    GhzSpec spec;
    spec.sites = sites;
    spec.r = sites;
    spec.encoding = Encoding::DualRail;
    return to_dense(build_ghz(spec)).to_density();
}

}  // namespace

int main(int argc, char** argv) {
    const int max_sites = argc > 1 ? std::atoi(argv[1]) : 11;
    std::printf("threads: %d\n\n", omp_get_max_threads());

    std::printf("lhv_max (Re selector), 4^N strategies\n");
    std::printf("%4s %14s %14s %10s %8s\n", "N", "serial [s]", "openmp [s]", "speedup", "match");
    for (int n = 8; n <= max_sites && n <= kLhvSiteCap; ++n) {
        double serial_value = 0.0, parallel_value = 0.0;
        const double t_serial = time_once(&lhv_max_serial, n, Selector::Re, &serial_value);
        const double t_parallel = time_once(&lhv_max, n, Selector::Re, &parallel_value);
        std::printf("%4d %14.4f %14.4f %9.2fx %8s\n", n, t_serial, t_parallel,
                    t_serial / t_parallel, serial_value == parallel_value ? "yes" : "NO");
    }

    std::printf("\napply_channel_dense (dual-rail loss, density matrix)\n");
    std::printf("%4s %8s %14s %14s %10s\n", "N", "dim", "serial [s]", "openmp [s]", "speedup");
    for (int n = 5; n <= 7; ++n) {
        const DenseState rho = make_dense_ghz(n);
        const KrausSet kraus = dual_rail_loss_kraus(0.75);
        double t_serial = omp_get_wtime();
        DenseState a = apply_channel_dense_serial(rho, 0, kraus);
        t_serial = omp_get_wtime() - t_serial;
        double t_parallel = omp_get_wtime();
        DenseState b = apply_channel_dense(rho, 0, kraus);
        t_parallel = omp_get_wtime() - t_parallel;
        std::printf("%4d %8ld %14.4f %14.4f %9.2fx\n", n, rho.total_dim(), t_serial, t_parallel,
                    t_serial / t_parallel);
        if ((a.rho - b.rho).cwiseAbs().maxCoeff() > 0.0) {
            std::printf("  MISMATCH between serial and parallel kernels\n");
            return 1;
        }
    }
    return 0;
}
