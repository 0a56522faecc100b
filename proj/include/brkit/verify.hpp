#ifndef BRKIT_VERIFY_HPP
#define BRKIT_VERIFY_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "brkit/recognize.hpp"

namespace brkit {

struct SuiteConfig {
    std::string suite = "all"; // formulas | urk | maximality | convexity |
                               // extraction | schur | sharpness | roundtrip |
                               // agreement | dichotomy | char2 | all
    std::uint64_t seed = 1;
    std::uint64_t budget = 10'000'000; // enumeration guard
    int jobs = 1;
    int trials = 0; // 0 = per-suite default
};

struct CheckRecord {
    std::string id;
    std::string params;  // JSON text
    bool pass = false;
    std::string witness; // JSON text, non-empty only on failure
    double ms = 0;       // excluded from the machine-readable report
};

struct Report {
    std::vector<CheckRecord> records;
    bool all_pass() const {
        for (const auto& r : records)
            if (!r.pass)
                return false;
        return true;
    }
};

// seeded d-dimensional subspace of the model, conjugated by a random
// invertible matrix; ground_truth (when given) receives the certificate
// that undoes the conjugation
MatSpace sample_bounded_space(const CompressionModel& model, int d,
                              const Field& F, std::uint64_t seed,
                              CongruenceCert* ground_truth = nullptr);

Report run_suite(const SuiteConfig& config); // ConfigError on a bad name

// one JSON object per line, deterministic for a fixed config
void write_report_jsonl(const Report& report, std::ostream& os);
// human summary with timing
void print_report_summary(const Report& report, std::ostream& os);

std::vector<std::string> suite_names();

} // namespace brkit

#endif
