#ifndef BRKIT_RECOGNIZE_HPP
#define BRKIT_RECOGNIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "brkit/models.hpp"
#include "brkit/space.hpp"

namespace brkit {

// Invertible P with P S P^T inside the model pattern.
struct CongruenceCert {
    Mat P;
    CompressionModel model;
};

// Nested pair z (dim n-s-t) inside z_prime (dim n-s), stored as RREF row
// bases. X^T M Y = 0 for all X in z, Y in z_prime, M in S is equivalent to
// congruence into the model pattern.
struct Flag {
    Mat z;
    Mat z_prime;
};

enum class Verdict { Certified, NotContained, Stalled };

struct RecogStats {
    std::uint64_t hyperplanes_scanned = 0;
    std::uint64_t flags_tested = 0;
};

struct RecognitionOutcome {
    Verdict verdict = Verdict::Stalled;
    std::optional<CongruenceCert> cert;
    std::vector<CompressionModel> not_contained;
    std::string stall_reason;
    std::vector<std::string> trace;
    RecogStats stats;
};

bool verify_cert(const MatSpace& S, const CongruenceCert& cert);

// true iff X^T M Y = 0 for all rows X of z, rows Y of z_prime, basis M of S
bool flag_condition(const MatSpace& S, const Flag& flag);
// the standard flag of a model: z' = span(e_{s+1..n}), z = span(e_{s+t+1..n})
Flag standard_flag(const CompressionModel& m, const Field& F);
// basis completion: rows of P are (K^n completion | z'-extension | z-basis)
Mat cert_matrix_from_flag(const Field& F, int n, const Flag& flag);

struct OracleOptions {
    std::uint64_t flag_budget = 100'000'000;
    int jobs = 1;
};

// exhaustive flag search; Certified with a basis-completion certificate or
// NotContained on exhaustion
RecognitionOutcome oracle_recognize(const MatSpace& S,
                                    const CompressionModel& model,
                                    const OracleOptions& opts = {});

struct GuidedOptions {
    std::uint64_t urk_budget = 20'000;      // exact rank scan cap
    int urk_trials = 128;                   // sampled rank scan
    std::uint64_t rank1_budget = 1'000'000; // adaptedness enumeration cap
    std::uint64_t seed = 0;
    int jobs = 1;
};

RecognitionOutcome guided_recognize_alt(const MatSpace& S, int r,
                                        const GuidedOptions& opts = {});
RecognitionOutcome guided_recognize_sym(const MatSpace& S, int r,
                                        const GuidedOptions& opts = {});
RecognitionOutcome recognize_small_rank(const MatSpace& S, int r,
                                        const GuidedOptions& opts = {});

// Lifting of the first kind: compress_p(S) lies in the standard
// W_{n-1,0,*} pattern; verifies the tail map vanishes, solves for the local
// vector and clears the last column.
std::optional<CongruenceCert> lift_kind1_alt(const MatSpace& S, int r);
std::optional<CongruenceCert> lift_kind1_sym(const MatSpace& S, int r);

// Lifting of the second kind: compress_p(S) lies in the standard
// W_{n-1,s,eps} pattern; solves the common-annihilator system and, for
// symmetric targets, fixes the trailing block.
std::optional<CongruenceCert> lift_kind2(const MatSpace& S,
                                         const CompressionModel& target);

enum class RecogMode { guided, oracle, automatic };

// candidate outcome models of the classification for the given parameters
std::vector<CompressionModel> candidate_models(SpaceKind kind, bool char2,
                                               int n, int r);

// guided with oracle fallback (mode automatic), or either alone
RecognitionOutcome recognize(const MatSpace& S, int r, RecogMode mode,
                             const GuidedOptions& gopts = {},
                             const OracleOptions& oopts = {});

} // namespace brkit

#endif
