// Timing comparison of the box-minimization kernels: the serial rational
// reference against the OpenMP integer-scaled kernel, on -2 chains of
// growing length and box height. Results must agree exactly; the table
// reports wall times and speedup.

#include <omp.h>

#include <cstdio>
#include <string>

#include "singlat/cycle_search.hpp"
#include "singlat/enumerate.hpp"

using namespace singlat;

namespace {

ResolutionGraph chain(int n, long long euler) {
    ResolutionGraph g;
    for (int v = 0; v < n; ++v) {
        g.ids.push_back("v" + std::to_string(v));
        g.euler.push_back(euler);
    }
    for (int v = 0; v + 1 < n; ++v) g.edges.emplace_back(v, v + 1);
    return g;
}

} // namespace

int main(int argc, char** argv) {
    int max_vertices = argc > 1 ? std::atoi(argv[1]) : 7;
    long long height = argc > 2 ? std::atoll(argv[2]) : 8;

    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%8s %10s %12s %12s %9s\n", "vertices", "points", "serial[s]",
                "openmp[s]", "speedup");

    for (int n = 4; n <= max_vertices; ++n) {
        Lattice lat(chain(n, -2));
        RatCycle offset(n, Rat(0));
        IntCycle lo(n, 0), hi(n, height);

        double t0 = omp_get_wtime();
        BoxMin serial = min_chi_over_box_reference(lat, offset, lo, hi, false, 1ull << 40);
        double t1 = omp_get_wtime();
        BoxMin parallel = min_chi_over_box(lat, offset, lo, hi, false, 1ull << 40);
        double t2 = omp_get_wtime();

        if (serial.min_chi != parallel.min_chi || serial.argmins != parallel.argmins) {
            std::fprintf(stderr, "kernel mismatch at %d vertices\n", n);
            return 1;
        }
        double ts = t1 - t0, tp = t2 - t1;
        std::printf("%8d %10llu %12.3f %12.3f %8.2fx\n", n,
                    static_cast<unsigned long long>(serial.points), ts, tp,
                    tp > 0 ? ts / tp : 0.0);
    }
    return 0;
}
