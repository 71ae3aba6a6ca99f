// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits nonzero if any fails.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "slstar/experiments.hpp"

int main(int argc, char** argv) {
    uint64_t seed = 42;
    bool parallel = true;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--seed") == 0 && i + 1 < argc) seed = std::atoll(argv[++i]);
        if (std::strcmp(argv[i], "--serial") == 0) parallel = false;
    }
    auto results = slstar::run_acceptance(seed, parallel);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : " -- ", r.detail.c_str());
        std::fflush(stdout);
        if (!r.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failures,
                results.size());
    return failures == 0 ? 0 : 1;
}
