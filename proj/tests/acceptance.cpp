// One line per criterion; the exit status is nonzero when any criterion fails.
// Thresholds and budgets are pinned in src/replicate.cpp.

#include <iostream>

#include "hyperseq/replicate.hpp"

int main(int argc, char** argv) {
    hyperseq::ReplicateOptions opts;
    if (argc > 1) opts.artifact_dir = argv[1];
    hyperseq::ReplicationReport rep = hyperseq::replicate(opts);
    for (const auto& e : rep.entries) std::cout << hyperseq::summary_line(e) << "\n";
    std::cout << (rep.all_pass() ? "ALL PASS" : "FAILURES PRESENT") << "  total " << rep.seconds << "s\n";
    return rep.all_pass() ? 0 : 1;
}
