#ifndef BRKIT_MODELS_HPP
#define BRKIT_MODELS_HPP

#include <string>

#include "brkit/space.hpp"

namespace brkit {

// WS_{n,s,t} / WA_{n,s,t}: entry (i,j) allowed iff i < s, or j < s, or both
// i and j lie in [s, s+t) (0-based).
struct CompressionModel {
    SpaceKind kind = SpaceKind::sym; // sym or alt
    int n = 0, s = 0, t = 0;

    bool operator==(const CompressionModel& o) const {
        return kind == o.kind && n == o.n && s == o.s && t == o.t;
    }
    std::string str() const;
};

void check_model(const CompressionModel& m); // InvalidModel

bool pattern_allows(const CompressionModel& m, int i, int j);
// zero outside the pattern and of the right form kind
bool in_pattern(const CompressionModel& m, const Mat& M);

// basis of all allowed elementary pattern matrices
MatSpace model_space(const CompressionModel& m, const Field& F);

// s_{n,s,t} = C(s+1,2) + C(t+1,2) + s(n-s); a_{n,s,t} = C(s,2) + C(t,2) + s(n-s)
long long model_dim(const CompressionModel& m);
long long sym_dim(int n, int s, int t);
long long alt_dim(int n, int s, int t);

struct ModelUrk {
    int value = 0;
    bool exact = true; // false for alternating models with even t > 0
    Mat witness;
};

// upper-rank of the model with an explicit witness; for alternating models
// the stated value is 2s+t-1 when t is odd, otherwise the structural bound
// 2s+t is reported with exact=false
ModelUrk model_urk(const CompressionModel& m, const Field& F);

struct ThresholdInfo {
    long long new_thm = 0;     // strict lower bound on dim S
    long long old_thm_max = 0; // critical dimension of the equality theorems
};

ThresholdInfo thresholds(SpaceKind kind, int n, int r); // InvalidParams

// both dimension sequences in s have all second differences equal to 3
bool convexity_check(SpaceKind kind, int n, int r);

} // namespace brkit

#endif
