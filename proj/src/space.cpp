#include "brkit/space.hpp"

#include <algorithm>
#include <thread>

namespace brkit {

std::string kind_name(SpaceKind k) {
    switch (k) {
    case SpaceKind::sym: return "sym";
    case SpaceKind::alt: return "alt";
    case SpaceKind::rect: return "rect";
    }
    return "?";
}

SpaceKind kind_from_name(const std::string& s) {
    if (s == "sym")
        return SpaceKind::sym;
    if (s == "alt")
        return SpaceKind::alt;
    if (s == "rect")
        return SpaceKind::rect;
    throw InvalidParams("unknown space kind '" + s + "'");
}

int ambient_dim(SpaceKind kind, int n, int p) {
    switch (kind) {
    case SpaceKind::sym: return n * (n + 1) / 2;
    case SpaceKind::alt: return n * (n - 1) / 2;
    case SpaceKind::rect: return n * p;
    }
    return 0;
}

// --- MatSpace ---------------------------------------------------------------

MatSpace MatSpace::make(const Field& F, SpaceKind kind, int n, int p,
                        const std::vector<Mat>& generators) {
    if (kind != SpaceKind::rect)
        p = n;
    MatSpace S;
    S.f_ = &F;
    S.kind_ = kind;
    S.n_ = n;
    S.p_ = p;
    int amb = ambient_dim(kind, n, p);
    std::vector<Vec> rows;
    rows.reserve(generators.size());
    for (const Mat& M : generators) {
        if (M.rows() != n || M.cols() != p)
            throw KindMismatch("generator shape does not match the space");
        if (kind == SpaceKind::sym && M != M.transpose())
            throw KindMismatch("generator is not symmetric");
        if (kind == SpaceKind::alt &&
            classify_form(M) != FormKind::alternating)
            throw KindMismatch("generator is not alternating");
        rows.push_back(S.vectorize(M));
    }
    Mat stacked = rows.empty() ? Mat(F, 0, amb) : Mat::from_rows(F, rows);
    S.coords_ = rref(stacked).R;
    return S;
}

MatSpace MatSpace::zero(const Field& F, SpaceKind kind, int n, int p) {
    if (p < 0)
        p = n;
    return make(F, kind, n, p, {});
}

MatSpace MatSpace::from_coords(const Field& F, SpaceKind kind, int n, int p,
                               const Mat& coords) {
    if (kind != SpaceKind::rect)
        p = n;
    MatSpace S;
    S.f_ = &F;
    S.kind_ = kind;
    S.n_ = n;
    S.p_ = p;
    if (coords.cols() != ambient_dim(kind, n, p))
        throw InvalidParams("coordinate width mismatch");
    S.coords_ = rref(coords).R;
    return S;
}

Vec MatSpace::vectorize(const Mat& M) const {
    Vec v;
    v.reserve(static_cast<size_t>(ambient_dim(kind_, n_, p_)));
    switch (kind_) {
    case SpaceKind::sym:
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                v.push_back(M(i, j));
        break;
    case SpaceKind::alt:
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                v.push_back(M(i, j));
        break;
    case SpaceKind::rect:
        v.assign(M.data().begin(), M.data().end());
        break;
    }
    return v;
}

Mat MatSpace::unvectorize(std::span<const elem> v) const {
    Mat M(*f_, n_, p_);
    size_t k = 0;
    switch (kind_) {
    case SpaceKind::sym:
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                M.set(i, j, v[k]);
                M.set(j, i, v[k]);
                ++k;
            }
        break;
    case SpaceKind::alt:
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j) {
                M.set(i, j, v[k]);
                M.set(j, i, f_->neg(v[k]));
                ++k;
            }
        break;
    case SpaceKind::rect:
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < p_; ++j)
                M.set(i, j, v[k++]);
        break;
    }
    return M;
}

Mat MatSpace::basis_mat(int i) const { return unvectorize(coords_.row(i)); }

std::vector<Mat> MatSpace::basis() const {
    std::vector<Mat> b;
    b.reserve(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i)
        b.push_back(basis_mat(i));
    return b;
}

Mat MatSpace::member_from_coeffs(std::span<const elem> c) const {
    Vec w = vec_mat(c, coords_);
    return unvectorize(w);
}

bool MatSpace::contains(const Mat& M) const {
    if (M.rows() != n_ || M.cols() != p_)
        return false;
    if (kind_ == SpaceKind::sym && M != M.transpose())
        return false;
    if (kind_ == SpaceKind::alt && classify_form(M) != FormKind::alternating)
        return false;
    Echelon E;
    E.R = coords_;
    for (int i = 0; i < coords_.rows(); ++i)
        for (int j = 0; j < coords_.cols(); ++j)
            if (coords_(i, j) != 0) {
                E.pivots.push_back(j);
                break;
            }
    Vec v = vectorize(M);
    return in_row_space(E, v);
}

bool MatSpace::operator==(const MatSpace& o) const {
    return f_ == o.f_ && kind_ == o.kind_ && n_ == o.n_ && p_ == o.p_ &&
           coords_ == o.coords_;
}

// --- hyperplanes ------------------------------------------------------------

Hyperplane Hyperplane::normalized(const Field& F, Vec phi) {
    int lead = -1;
    for (size_t i = 0; i < phi.size(); ++i)
        if (phi[i] != 0) {
            lead = static_cast<int>(i);
            break;
        }
    if (lead < 0)
        throw InvalidParams("hyperplane functional is zero");
    elem ip = F.inv(phi[lead]);
    for (auto& x : phi)
        x = F.mul(x, ip);
    return Hyperplane{std::move(phi)};
}

Mat hyperplane_basis(const Field& F, const Hyperplane& H) {
    Mat phi_row =
        Mat::from_rows(F, {H.phi});
    return kernel_basis(phi_row);
}

std::uint64_t hyperplane_count(int q, int n) {
    std::uint64_t c = 0, pw = 1;
    for (int i = 0; i < n; ++i) {
        c += pw;
        pw *= static_cast<std::uint64_t>(q);
    }
    return c;
}

void for_each_hyperplane(const Field& F, int n,
                         const std::function<bool(const Hyperplane&)>& fn) {
    int q = F.q();
    for (int lead = n - 1; lead >= 0; --lead) {
        Vec phi(n, 0);
        phi[lead] = 1;
        while (true) {
            if (!fn(Hyperplane{phi}))
                return;
            int j = n - 1;
            for (; j > lead; --j) {
                if (phi[j] + 1 < q) {
                    ++phi[j];
                    for (int k = j + 1; k < n; ++k)
                        phi[k] = 0;
                    break;
                }
            }
            if (j == lead)
                break;
        }
    }
}

Hyperplane hyperplane_at(const Field& F, int n, std::uint64_t index) {
    std::uint64_t q = static_cast<std::uint64_t>(F.q());
    for (int lead = n - 1; lead >= 0; --lead) {
        std::uint64_t block = 1;
        for (int i = lead + 1; i < n; ++i)
            block *= q;
        if (index < block) {
            Vec phi(n, 0);
            phi[lead] = 1;
            for (int i = n - 1; i > lead; --i) {
                phi[i] = static_cast<elem>(index % q);
                index /= q;
            }
            return Hyperplane{phi};
        }
        index -= block;
    }
    throw IndexOutOfRange("hyperplane index out of range");
}

// --- member enumeration -----------------------------------------------------

ProjectiveIter::ProjectiveIter(int q, int d) : q_(q), d_(d), lead_(d - 1) {
    if (d <= 0) {
        done_ = true;
    } else {
        cur_.assign(d, 0);
        cur_[lead_] = 1;
    }
}

bool ProjectiveIter::next(Vec& out) {
    if (done_)
        return false;
    out = cur_;
    int j = d_ - 1;
    for (; j > lead_; --j) {
        if (cur_[j] + 1 < q_) {
            ++cur_[j];
            for (int k = j + 1; k < d_; ++k)
                cur_[k] = 0;
            break;
        }
    }
    if (j == lead_) {
        --lead_;
        if (lead_ < 0) {
            done_ = true;
        } else {
            cur_.assign(d_, 0);
            cur_[lead_] = 1;
        }
    }
    return true;
}

std::uint64_t projective_count(int q, int d) {
    return hyperplane_count(q, d);
}

// --- urk ---------------------------------------------------------------------

UrkResult urk(const MatSpace& S, const UrkPolicy& policy) {
    const Field& F = S.field();
    int maxr = std::min(S.n(), S.p());
    UrkResult res;
    res.witness = Mat(F, S.n(), S.p());
    if (S.dim() == 0) {
        res.exact = true;
        return res;
    }
    if (policy.exact) {
        long double total = 1;
        for (int i = 0; i < S.dim(); ++i)
            total *= F.q();
        if (total > static_cast<long double>(policy.budget))
            throw BudgetExceeded("exact urk would enumerate " +
                                 std::to_string(static_cast<double>(total)) +
                                 " members");
        ProjectiveIter it(F.q(), S.dim());
        Vec c;
        while (it.next(c)) {
            Mat M = S.member_from_coeffs(c);
            int r = rank(M);
            if (r > res.value) {
                res.value = r;
                res.witness = M;
                if (res.value == maxr)
                    break;
            }
        }
        res.exact = true;
        return res;
    }
    Rng rng(policy.seed);
    res.exact = false;
    for (int t = 0; t < policy.trials; ++t) {
        Mat M = random_member(S, rng);
        int r = rank(M);
        if (r > res.value) {
            res.value = r;
            res.witness = M;
            if (res.value == maxr)
                break;
        }
    }
    return res;
}

// --- S_H ---------------------------------------------------------------------

namespace {

// condition matrix whose kernel (in basis coefficients) is S_H
Mat sh_conditions(const MatSpace& S, const std::vector<Mat>& basis,
                  const Mat& U) {
    const Field& F = S.field();
    int hb = U.rows(); // n-1
    int d = S.dim();
    bool include_diag = S.kind() != SpaceKind::alt;
    int npairs = include_diag ? hb * (hb + 1) / 2 : hb * (hb - 1) / 2;
    Mat C(F, npairs, d);
    // W_k = M_k U^T, so that entry((a,b),k) = u_a . (W_k col b)
    std::vector<Mat> W;
    W.reserve(static_cast<size_t>(d));
    Mat Ut = U.transpose();
    for (int k = 0; k < d; ++k)
        W.push_back(basis[static_cast<size_t>(k)] * Ut);
    int row = 0;
    for (int a = 0; a < hb; ++a) {
        for (int b = include_diag ? a : a + 1; b < hb; ++b) {
            for (int k = 0; k < d; ++k) {
                elem acc = 0;
                for (int i = 0; i < U.cols(); ++i) {
                    elem ua = U(a, i);
                    if (ua != 0)
                        acc = F.add(acc, F.mul(ua, W[static_cast<size_t>(k)](i, b)));
                }
                C.set(row, k, acc);
            }
            ++row;
        }
    }
    return C;
}

} // namespace

MatSpace s_sub_h(const MatSpace& S, const Hyperplane& H) {
    if (S.kind() == SpaceKind::rect)
        throw KindMismatch("S_H requires a square space kind");
    const Field& F = S.field();
    if (S.dim() == 0)
        return S;
    Mat U = hyperplane_basis(F, H);
    Mat C = sh_conditions(S, S.basis(), U);
    Mat K = kernel_basis(C); // rows: coefficient vectors
    std::vector<Mat> gens;
    for (int i = 0; i < K.rows(); ++i)
        gens.push_back(S.member_from_coeffs(K.row(i)));
    return MatSpace::make(F, S.kind(), S.n(), S.p(), gens);
}

int dim_s_sub_h(const MatSpace& S, const Hyperplane& H) {
    if (S.dim() == 0)
        return 0;
    Mat U = hyperplane_basis(S.field(), H);
    Mat C = sh_conditions(S, S.basis(), U);
    return S.dim() - rank(C);
}

// --- adaptedness -------------------------------------------------------------

namespace {

bool is_rank_one(const Mat& M) {
    const Field& F = M.field();
    int i0 = -1, j0 = -1;
    for (int i = 0; i < M.rows() && i0 < 0; ++i)
        for (int j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0) {
                i0 = i;
                j0 = j;
                break;
            }
    if (i0 < 0)
        return false; // zero matrix
    elem ip = F.inv(M(i0, j0));
    for (int i = 0; i < M.rows(); ++i) {
        if (i == i0)
            continue;
        elem lam = F.mul(M(i, j0), ip);
        for (int j = 0; j < M.cols(); ++j)
            if (M(i, j) != F.mul(lam, M(i0, j)))
                return false;
    }
    return true;
}

// sqrt of the diagonal, as a functional (characteristic 2 only)
Vec sqrt_diag(const Mat& M) {
    const Field& F = M.field();
    Vec v(static_cast<size_t>(M.rows()), 0);
    for (int i = 0; i < M.rows(); ++i)
        v[static_cast<size_t>(i)] = F.sqrt(M(i, i));
    return v;
}

bool proportional(const Field& F, const Vec& a, const Vec& b) {
    // is a = c*b for some scalar c (including c = 0)?
    int lead = -1;
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i] != 0) {
            lead = static_cast<int>(i);
            break;
        }
    if (lead < 0) { // b = 0: only a = 0 qualifies
        for (elem x : a)
            if (x != 0)
                return false;
        return true;
    }
    elem c = F.mul(a[static_cast<size_t>(lead)],
                   F.inv(b[static_cast<size_t>(lead)]));
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != F.mul(c, b[i]))
            return false;
    return true;
}

} // namespace

bool has_rank_one_member(const MatSpace& S, std::uint64_t budget) {
    if (S.dim() == 0)
        return false;
    const Field& F = S.field();
    long double total = 1;
    for (int i = 0; i < S.dim(); ++i)
        total *= F.q();
    if (total > static_cast<long double>(budget))
        throw BudgetExceeded("rank-1 detection budget exceeded");
    ProjectiveIter it(F.q(), S.dim());
    Vec c;
    while (it.next(c)) {
        if (is_rank_one(S.member_from_coeffs(c)))
            return true;
    }
    return false;
}

bool is_adapted(const MatSpace& S, const Hyperplane& H,
                std::uint64_t rank1_budget) {
    if (S.kind() != SpaceKind::sym)
        throw KindMismatch("adaptedness is defined for symmetric spaces");
    const Field& F = S.field();
    MatSpace SH = s_sub_h(S, H);
    if (has_rank_one_member(SH, rank1_budget))
        return false;
    if (!F.char2())
        return true;
    // condition (b): X^T M X = (sum_i sqrt(m_ii) x_i)^2 in characteristic 2,
    // so some basis matrix must have its square-rooted diagonal outside
    // span(phi)
    for (int k = 0; k < S.dim(); ++k) {
        Vec l = sqrt_diag(S.basis_mat(k));
        if (!proportional(F, l, H.phi))
            return true;
    }
    return false;
}

// --- min over hyperplanes ----------------------------------------------------

std::vector<int> sh_dimension_profile(const MatSpace& S, int jobs) {
    if (S.kind() == SpaceKind::rect)
        throw KindMismatch("hyperplane profile requires a square space kind");
    const Field& F = S.field();
    int n = S.n();
    std::uint64_t count = hyperplane_count(F.q(), n);
    std::vector<int> dims(count, 0);
    std::vector<Mat> basis = S.basis();

    auto compute_range = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i < hi; ++i) {
            if (S.dim() == 0) {
                dims[i] = 0;
                continue;
            }
            Hyperplane H = hyperplane_at(F, n, i);
            Mat U = hyperplane_basis(F, H);
            Mat C = sh_conditions(S, basis, U);
            dims[i] = S.dim() - rank(C);
        }
    };

    if (jobs <= 1 || count < 64) {
        compute_range(0, count);
    } else {
        std::uint64_t nt = std::min<std::uint64_t>(jobs, count);
        std::vector<std::thread> threads;
        std::uint64_t chunk = (count + nt - 1) / nt;
        for (std::uint64_t t = 0; t < nt; ++t) {
            std::uint64_t lo = t * chunk, hi = std::min(count, lo + chunk);
            if (lo < hi)
                threads.emplace_back(compute_range, lo, hi);
        }
        for (auto& th : threads)
            th.join();
    }
    return dims;
}

MinShResult min_dim_sh(const MatSpace& S, bool adapted_only,
                       std::uint64_t rank1_budget, int jobs) {
    const Field& F = S.field();
    int n = S.n();
    std::vector<int> dims = sh_dimension_profile(S, jobs);
    std::uint64_t count = dims.size();

    if (!adapted_only) {
        std::uint64_t best = 0;
        for (std::uint64_t i = 1; i < count; ++i)
            if (dims[i] < dims[best])
                best = i;
        return MinShResult{hyperplane_at(F, n, best), dims[best], count};
    }

    int lo = *std::min_element(dims.begin(), dims.end());
    int hi = *std::max_element(dims.begin(), dims.end());
    for (int m = lo; m <= hi; ++m) {
        for (std::uint64_t i = 0; i < count; ++i) {
            if (dims[i] != m)
                continue;
            Hyperplane H = hyperplane_at(F, n, i);
            if (is_adapted(S, H, rank1_budget))
                return MinShResult{H, m, count};
        }
    }
    throw NoAdaptedHyperplane("no adapted hyperplane exists");
}

// --- compressions ------------------------------------------------------------

MatSpace compress_p(const MatSpace& S) {
    if (S.kind() == SpaceKind::rect)
        throw KindMismatch("compress_p requires a square space kind");
    std::vector<Mat> gens;
    for (int i = 0; i < S.dim(); ++i)
        gens.push_back(delete_rows_cols(S.basis_mat(i), {S.n() - 1}));
    return MatSpace::make(S.field(), S.kind(), S.n() - 1, gens);
}

MatSpace compress_k(const MatSpace& S, int i, int j) {
    if (S.kind() == SpaceKind::rect)
        throw KindMismatch("compress_k requires a square space kind");
    if (i == j)
        throw InvalidParams("compress_k requires distinct indices");
    std::vector<Mat> gens;
    for (int k = 0; k < S.dim(); ++k)
        gens.push_back(delete_rows_cols(S.basis_mat(k), {i, j}));
    return MatSpace::make(S.field(), S.kind(), S.n() - 2, gens);
}

// --- solves -------------------------------------------------------------------

std::optional<Vec> common_right_annihilator(const MatSpace& T) {
    const Field& F = T.field();
    Mat stacked(F, T.dim() * T.n(), T.p());
    for (int k = 0; k < T.dim(); ++k) {
        Mat N = T.basis_mat(k);
        for (int i = 0; i < N.rows(); ++i)
            for (int j = 0; j < N.cols(); ++j)
                stacked.set(k * T.n() + i, j, N(i, j));
    }
    Mat K = kernel_basis(stacked);
    if (K.rows() == 0)
        return std::nullopt;
    return K.row(0);
}

std::optional<Vec> solve_local_map(const std::vector<Mat>& mats,
                                   const std::vector<Vec>& targets) {
    if (targets.size() != mats.size())
        throw InvalidParams("one target per matrix required");
    if (mats.empty())
        return Vec{};
    const Field& F = mats[0].field();
    int rows = mats[0].rows(), cols = mats[0].cols();
    Mat A(F, static_cast<int>(mats.size()) * rows, cols);
    Vec b(mats.size() * static_cast<size_t>(rows), 0);
    for (size_t k = 0; k < mats.size(); ++k) {
        const Mat& N = mats[k];
        if (static_cast<int>(targets[k].size()) != rows)
            throw InvalidParams("target length mismatch");
        for (int i = 0; i < rows; ++i) {
            for (int j = 0; j < cols; ++j)
                A.set(static_cast<int>(k) * rows + i, j, N(i, j));
            b[k * static_cast<size_t>(rows) + static_cast<size_t>(i)] =
                targets[k][static_cast<size_t>(i)];
        }
    }
    return solve_linear(A, b);
}

std::optional<Vec> solve_local_map(const MatSpace& V,
                                   const std::vector<Vec>& targets) {
    if (static_cast<int>(targets.size()) != V.dim())
        throw InvalidParams("one target per basis matrix required");
    if (V.dim() == 0)
        return Vec(static_cast<size_t>(V.p()), 0);
    return solve_local_map(V.basis(), targets);
}

MatSpace congruence_space(const Mat& P, const MatSpace& S) {
    if (S.kind() == SpaceKind::rect)
        throw KindMismatch("congruence_space requires a square space kind");
    if (!try_inverse(P))
        throw SingularBlock("congruence by a singular matrix");
    Mat Pt = P.transpose();
    std::vector<Mat> gens;
    for (int i = 0; i < S.dim(); ++i)
        gens.push_back(P * S.basis_mat(i) * Pt);
    return MatSpace::make(S.field(), S.kind(), S.n(), gens);
}

Mat random_member(const MatSpace& S, Rng& rng) {
    const Field& F = S.field();
    Vec c(static_cast<size_t>(S.dim()));
    for (auto& x : c)
        x = static_cast<elem>(rng.uniform(F.q()));
    return S.member_from_coeffs(c);
}

Mat random_invertible(const Field& F, int n, Rng& rng) {
    while (true) {
        Mat M(F, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                M.set(i, j, static_cast<elem>(rng.uniform(F.q())));
        if (rank(M) == n)
            return M;
    }
}

} // namespace brkit
