#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dualgeo {

struct SelftestOptions {
    std::uint64_t seed = 0x5eed2026ULL;
    int scale = 1;  // multiplies every suite's trial count
    // Test-only negative control: sabotages the incidence suite so the
    // harness itself can be shown to catch a broken transform.
    bool corrupt_incidence = false;
};

struct SuiteResult {
    std::string name;
    int trials = 0;
    int failures = 0;
    bool passed = false;
};

struct SelftestReport {
    std::uint64_t seed = 0;
    std::vector<SuiteResult> suites;
    bool all_passed = false;
};

// Runs every module's invariant suite with seeded generators. The verdict
// is reproducible from the seed; the samples vary with it, the pass/fail
// outcome must not.
SelftestReport run_selftest(const SelftestOptions& options = {});

}  // namespace dualgeo
