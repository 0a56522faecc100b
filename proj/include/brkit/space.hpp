#ifndef BRKIT_SPACE_HPP
#define BRKIT_SPACE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "brkit/matrix.hpp"
#include "brkit/rng.hpp"

namespace brkit {

enum class SpaceKind { sym, alt, rect };

std::string kind_name(SpaceKind k);
SpaceKind kind_from_name(const std::string& s);

// dimension of the ambient coordinate space for one matrix kind
int ambient_dim(SpaceKind kind, int n, int p);

// Linear subspace of matrices, held as a canonical reduced basis in a fixed
// vectorization order (sym: (i,j) i<=j lex; alt: i<j lex; rect: row-major).
// Space equality is a byte compare of the coordinate basis.
class MatSpace {
public:
    static MatSpace make(const Field& F, SpaceKind kind, int n, int p,
                         const std::vector<Mat>& generators);
    static MatSpace make(const Field& F, SpaceKind kind, int n,
                         const std::vector<Mat>& generators) {
        return make(F, kind, n, kind == SpaceKind::rect ? n : n, generators);
    }
    static MatSpace zero(const Field& F, SpaceKind kind, int n, int p = -1);
    // rows of `coords` must already be independent; they get re-reduced
    static MatSpace from_coords(const Field& F, SpaceKind kind, int n, int p,
                                const Mat& coords);

    const Field& field() const { return *f_; }
    SpaceKind kind() const { return kind_; }
    int n() const { return n_; }
    int p() const { return p_; }
    int dim() const { return coords_.rows(); }
    int ambient() const { return coords_.cols(); }
    const Mat& coords() const { return coords_; }

    Vec vectorize(const Mat& M) const;
    Mat unvectorize(std::span<const elem> v) const;
    Mat basis_mat(int i) const;
    std::vector<Mat> basis() const;
    Mat member_from_coeffs(std::span<const elem> c) const;
    bool contains(const Mat& M) const;

    bool operator==(const MatSpace& o) const;
    bool operator!=(const MatSpace& o) const { return !(*this == o); }

private:
    MatSpace() = default;
    const Field* f_ = nullptr;
    SpaceKind kind_ = SpaceKind::rect;
    int n_ = 0, p_ = 0;
    Mat coords_; // dim x ambient, RREF rows
};

// --- hyperplanes ------------------------------------------------------------

// ker(phi) with phi normalized so that its first nonzero coordinate is 1
struct Hyperplane {
    Vec phi;
    static Hyperplane normalized(const Field& F, Vec phi);
};

// basis of ker(phi) as rows of a (n-1) x n matrix
Mat hyperplane_basis(const Field& F, const Hyperplane& H);

std::uint64_t hyperplane_count(int q, int n);

// visits all hyperplanes of F^n in lexicographic order of the normalized
// functional; fn may return false to stop early
void for_each_hyperplane(const Field& F, int n,
                         const std::function<bool(const Hyperplane&)>& fn);
// the i-th hyperplane in that order
Hyperplane hyperplane_at(const Field& F, int n, std::uint64_t index);

// --- operations -------------------------------------------------------------

struct UrkPolicy {
    bool exact = true;
    std::uint64_t budget = 10'000'000; // enumerated members (exact mode)
    int trials = 200;                  // sampled mode
    std::uint64_t seed = 0;
};

struct UrkResult {
    int value = 0;
    bool exact = true;
    Mat witness; // first member attaining the reported value
};

// max rank over the space; exact enumerates q^dim members (projective
// representatives), sampled reports a seeded lower bound
UrkResult urk(const MatSpace& S, const UrkPolicy& policy);

// {M in S : X^T M Y = 0 for all X, Y in H}
MatSpace s_sub_h(const MatSpace& S, const Hyperplane& H);
int dim_s_sub_h(const MatSpace& S, const Hyperplane& H);

// S-adapted: S_H has no rank-1 member, and in characteristic 2 some member of
// S has a non-vanishing quadratic form on H (checked through the square-rooted
// diagonal functional). Kind must be sym.
bool is_adapted(const MatSpace& S, const Hyperplane& H,
                std::uint64_t rank1_budget = 1'000'000);

struct MinShResult {
    Hyperplane h;
    int m = 0;
    std::uint64_t hyperplanes_scanned = 0;
};

// dim S_H for every hyperplane, indexed by enumeration order
std::vector<int> sh_dimension_profile(const MatSpace& S, int jobs = 1);

// minimizes dim S_H over all hyperplanes (adapted ones only when
// adapted_only); ties broken by the lexicographically smallest functional
MinShResult min_dim_sh(const MatSpace& S, bool adapted_only = false,
                       std::uint64_t rank1_budget = 1'000'000, int jobs = 1);

// image of S under deleting the last row and column
MatSpace compress_p(const MatSpace& S);
// image of S under deleting rows and columns i and j (0-based)
MatSpace compress_k(const MatSpace& S, int i, int j);

// nonzero X with N X = 0 for every basis matrix N; first vector of the
// reduced kernel basis
std::optional<Vec> common_right_annihilator(const MatSpace& T);

// Y with N_i Y = targets[i] for every basis matrix N_i, when consistent
std::optional<Vec> solve_local_map(const MatSpace& V,
                                   const std::vector<Vec>& targets);
std::optional<Vec> solve_local_map(const std::vector<Mat>& mats,
                                   const std::vector<Vec>& targets);

// P S P^T, re-canonicalized
MatSpace congruence_space(const Mat& P, const MatSpace& S);

// true iff some member has rank exactly 1 (projective enumeration)
bool has_rank_one_member(const MatSpace& S, std::uint64_t budget);

// random member / random invertible matrix helpers (seeded)
Mat random_member(const MatSpace& S, Rng& rng);
Mat random_invertible(const Field& F, int n, Rng& rng);

// enumerates coefficient vectors of length d over GF(q) whose first nonzero
// entry is 1 (one representative per projective class)
class ProjectiveIter {
public:
    ProjectiveIter(int q, int d);
    bool next(Vec& out); // false when exhausted
private:
    int q_, d_, lead_;
    Vec cur_;
    bool done_ = false;
};

std::uint64_t projective_count(int q, int d);

} // namespace brkit

#endif
