// Benchmark comparing the serial reference kernels against the OpenMP ones.

#include <chrono>
#include <cstdio>

#include "slstar/sweeps.hpp"

using namespace slstar;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_pair_sweep(const char* desc) {
    const Ring& R = ring_for(desc);
    std::printf("pair sweep over %s\n", desc);

    auto t0 = Clock::now();
    PairSweepResult ref = sweep_divide_pairs_reference(R);
    double t_ref = seconds_since(t0);

    t0 = Clock::now();
    PairSweepResult ser = sweep_divide_pairs(R, false);
    double t_ser = seconds_since(t0);

    t0 = Clock::now();
    PairSweepResult par = sweep_divide_pairs(R, true);
    double t_par = seconds_since(t0);

    bool agree = ref.pairs_valid == ser.pairs_valid && ser.pairs_valid == par.pairs_valid &&
                 ref.steps_verified == ser.steps_verified &&
                 ser.steps_verified == par.steps_verified;
    std::printf("  reference        %8.3fs  (%llu valid, %llu verified)\n", t_ref,
                (unsigned long long)ref.pairs_valid, (unsigned long long)ref.steps_verified);
    std::printf("  kernel, serial   %8.3fs\n", t_ser);
    std::printf("  kernel, OpenMP   %8.3fs  speedup vs serial kernel: %.2fx\n", t_par,
                t_par > 0 ? t_ser / t_par : 0.0);
    std::printf("  results agree:   %s\n\n", agree ? "yes" : "NO");
}

void bench_group(const char* desc) {
    const Ring& A = ring_for(desc);
    std::printf("group enumeration and closure over %s\n", desc);

    auto t0 = Clock::now();
    GroupSet es = enumerate_sl_star_packed(A, 10000000, false);
    double t_es = seconds_since(t0);
    t0 = Clock::now();
    GroupSet ep = enumerate_sl_star_packed(A, 10000000, true);
    double t_ep = seconds_since(t0);
    t0 = Clock::now();
    GroupSet cs = closure_bfs_packed(A, 10000000, false);
    double t_cs = seconds_since(t0);
    t0 = Clock::now();
    GroupSet cp = closure_bfs_packed(A, 10000000, true);
    double t_cp = seconds_since(t0);

    std::printf("  enumerate serial %8.3fs  OpenMP %8.3fs  order %llu  agree: %s\n", t_es,
                t_ep, (unsigned long long)es.elems.size(),
                es.elems == ep.elems ? "yes" : "NO");
    std::printf("  closure   serial %8.3fs  OpenMP %8.3fs  order %llu  agree: %s\n\n", t_cs,
                t_cp, (unsigned long long)cs.elems.size(),
                cs.elems == cp.elems ? "yes" : "NO");
}

}  // namespace

int main() {
    bench_pair_sweep("Mat(2,Z/(9))");
    bench_pair_sweep("Mat(2,GF(4))");
    bench_group("SplitQuat(GF(3))");
    bench_group("Mat(2,GF(2))");
    return 0;
}
