#pragma once

#include <string>
#include <vector>

#include "hyperseq/json_io.hpp"

namespace hyperseq {

struct CriterionResult {
    int number = 0;
    std::string id;       // stable claim identifier
    std::string claim;    // what is established
    std::string locus;    // which result of the theory it mechanizes
    bool pass = false;
    bool bounded = false;  // evidence is exhaustive only up to a bound
    std::string detail;
    std::string evidence;  // file written, or a description of the evidence
    double seconds = 0;
    double budget_seconds = 0;
    json data;  // measured numbers
};

struct ReplicateOptions {
    std::string data_dir;      // shipped derivations; empty: the compiled-in default
    std::string artifact_dir;  // where evidence files go; empty: none written
    std::vector<int> only;     // criterion numbers to run; empty: all
    int jobs = 0;              // 0: HYPERSEQ_JOBS or hardware concurrency
};

struct ReplicationReport {
    std::vector<CriterionResult> entries;
    double seconds = 0;
    bool all_pass() const;
    json to_json() const;
};

// Default location of data/ in the source tree.
std::string default_data_dir();

ReplicationReport replicate(const ReplicateOptions& opts = {});

// Single-line summary, e.g. "PASS  6 RS4-cut-free-incompleteness ...".
std::string summary_line(const CriterionResult& r);

}  // namespace hyperseq
