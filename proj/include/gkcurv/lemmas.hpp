#pragma once
// Seeded exact property suite for the spinor identities behind the
// moment-map computation. Every check compares canonical forms: a single
// nonzero difference is a failure.

#include <cstdint>
#include <string>
#include <vector>

namespace gkcurv {

struct LemmaResult {
    std::string name;
    int dim = 0;  // real dimension of the chart
    int instances = 0;
    int failures = 0;
    std::string note;
    std::string first_failure;
};

/// Runs each identity `instances` times in real dimensions 2 and 4.
std::vector<LemmaResult> run_lemma_suite(uint64_t seed, int instances = 100);

}  // namespace gkcurv
