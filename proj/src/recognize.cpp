#include "brkit/recognize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace brkit {

// --- certificates and flags ---------------------------------------------------

bool verify_cert(const MatSpace& S, const CongruenceCert& cert) {
    if (cert.model.n != S.n() || !S.field().q())
        return false;
    if (cert.P.rows() != S.n() || cert.P.cols() != S.n())
        return false;
    if (!try_inverse(cert.P))
        return false;
    Mat Pt = cert.P.transpose();
    for (int i = 0; i < S.dim(); ++i)
        if (!in_pattern(cert.model, cert.P * S.basis_mat(i) * Pt))
            return false;
    return true;
}

bool flag_condition(const MatSpace& S, const Flag& flag) {
    for (int k = 0; k < S.dim(); ++k) {
        Mat M = S.basis_mat(k);
        for (int a = 0; a < flag.z.rows(); ++a) {
            Vec X = flag.z.row(a);
            for (int b = 0; b < flag.z_prime.rows(); ++b) {
                Vec Y = flag.z_prime.row(b);
                if (form_eval(M, X, Y) != 0)
                    return false;
            }
        }
    }
    return true;
}

Flag standard_flag(const CompressionModel& m, const Field& F) {
    check_model(m);
    int n = m.n;
    Mat zp(F, n - m.s, n), z(F, n - m.s - m.t, n);
    for (int i = 0; i < n - m.s; ++i)
        zp.set(i, m.s + i, 1);
    for (int i = 0; i < n - m.s - m.t; ++i)
        z.set(i, m.s + m.t + i, 1);
    return Flag{z, zp};
}

Mat cert_matrix_from_flag(const Field& F, int n, const Flag& flag) {
    // rows of z, extended inside z', extended to F^n; the certificate rows
    // are laid out in reverse block order (completion | z'-extension | z)
    std::vector<Vec> zrows;
    for (int i = 0; i < flag.z.rows(); ++i)
        zrows.push_back(flag.z.row(i));
    std::vector<Vec> chain = zrows;
    Echelon E = rref(flag.z);
    std::vector<Vec> ext;
    for (int i = 0; i < flag.z_prime.rows(); ++i) {
        Vec v = flag.z_prime.row(i);
        if (!in_row_space(E, v)) {
            chain.push_back(v);
            ext.push_back(v);
            E = rref(Mat::from_rows(F, chain));
        }
    }
    std::vector<Vec> full = complete_basis(F, chain, n);
    std::vector<Vec> rows;
    for (size_t i = chain.size(); i < full.size(); ++i)
        rows.push_back(full[i]); // completion of z'
    for (const Vec& v : ext)
        rows.push_back(v);
    for (const Vec& v : zrows)
        rows.push_back(v);
    return Mat::from_rows(F, rows);
}

// --- subspace enumeration (RREF canonical forms) -------------------------------

namespace {

long double gauss_binomial_ld(int q, int n, int k) {
    if (k < 0 || k > n)
        return 0;
    long double res = 1;
    for (int i = 0; i < k; ++i) {
        long double num = std::pow(static_cast<long double>(q), n - i) - 1;
        long double den = std::pow(static_cast<long double>(q), i + 1) - 1;
        res *= num / den;
    }
    return res;
}

// k-dimensional subspaces of F^n as k x n RREF matrices; pivot columns run
// over ascending combinations, free entries over an odometer
class SubspaceIter {
public:
    SubspaceIter(const Field& F, int n, int k)
        : f_(&F), n_(n), k_(k), comb_(static_cast<size_t>(k)) {
        for (int i = 0; i < k; ++i)
            comb_[static_cast<size_t>(i)] = i;
        if (k > n)
            done_ = true;
        setup_free();
    }

    bool next(Mat& out) {
        if (done_)
            return false;
        build(out);
        advance();
        return true;
    }

    void skip() {
        if (!done_)
            advance();
    }

    bool done() const { return done_; }

private:
    void setup_free() {
        free_slots_.clear();
        std::vector<bool> is_piv(static_cast<size_t>(n_), false);
        for (int c : comb_)
            is_piv[static_cast<size_t>(c)] = true;
        for (int i = 0; i < k_; ++i)
            for (int j = comb_[static_cast<size_t>(i)] + 1; j < n_; ++j)
                if (!is_piv[static_cast<size_t>(j)])
                    free_slots_.push_back({i, j});
        free_vals_.assign(free_slots_.size(), 0);
    }

    void build(Mat& out) const {
        out = Mat(*f_, k_, n_);
        for (int i = 0; i < k_; ++i)
            out.set(i, comb_[static_cast<size_t>(i)], 1);
        for (size_t s = 0; s < free_slots_.size(); ++s)
            out.set(free_slots_[s].first, free_slots_[s].second,
                    free_vals_[s]);
    }

    void advance() {
        int q = f_->q();
        for (size_t s = free_vals_.size(); s-- > 0;) {
            if (free_vals_[s] + 1 < q) {
                ++free_vals_[s];
                for (size_t r = s + 1; r < free_vals_.size(); ++r)
                    free_vals_[r] = 0;
                return;
            }
        }
        // next pivot combination
        int i = k_ - 1;
        for (; i >= 0; --i)
            if (comb_[static_cast<size_t>(i)] < n_ - k_ + i)
                break;
        if (i < 0) {
            done_ = true;
            return;
        }
        ++comb_[static_cast<size_t>(i)];
        for (int j = i + 1; j < k_; ++j)
            comb_[static_cast<size_t>(j)] = comb_[static_cast<size_t>(i)] + (j - i);
        setup_free();
    }

    const Field* f_;
    int n_, k_;
    std::vector<int> comb_;
    std::vector<std::pair<int, int>> free_slots_;
    Vec free_vals_;
    bool done_ = false;
};

// incremental rank tracker for small row vectors
class RankAccum {
public:
    RankAccum(const Field& F, int width) : f_(&F), width_(width) {}

    // returns the rank after inserting v
    int insert(Vec v) {
        const Field& F = *f_;
        for (const auto& [lead, row] : rows_) {
            elem c = v[static_cast<size_t>(lead)];
            if (c == 0)
                continue;
            for (int j = 0; j < width_; ++j)
                v[static_cast<size_t>(j)] =
                    F.sub(v[static_cast<size_t>(j)],
                          F.mul(c, row[static_cast<size_t>(j)]));
        }
        int lead = -1;
        for (int j = 0; j < width_; ++j)
            if (v[static_cast<size_t>(j)] != 0) {
                lead = j;
                break;
            }
        if (lead >= 0) {
            elem ip = F.inv(v[static_cast<size_t>(lead)]);
            for (int j = 0; j < width_; ++j)
                v[static_cast<size_t>(j)] = F.mul(v[static_cast<size_t>(j)], ip);
            rows_.push_back({lead, std::move(v)});
        }
        return static_cast<int>(rows_.size());
    }

private:
    const Field* f_;
    int width_;
    std::vector<std::pair<int, Vec>> rows_;
};

} // namespace

// --- oracle ---------------------------------------------------------------------

RecognitionOutcome oracle_recognize(const MatSpace& S,
                                    const CompressionModel& model,
                                    const OracleOptions& opts) {
    check_model(model);
    if (S.kind() == SpaceKind::rect)
        throw KindMismatch("oracle requires a square space kind");
    if (S.n() != model.n)
        throw InvalidParams("model size does not match the space");
    const Field& F = S.field();
    int n = model.n, s = model.s, t = model.t;
    int zpdim = n - s, zdim = n - s - t;

    RecognitionOutcome out;
    auto certified = [&](const Flag& flag) {
        Mat P = cert_matrix_from_flag(F, n, flag);
        CongruenceCert cert{P, model};
        if (!verify_cert(S, cert))
            return false;
        out.verdict = Verdict::Certified;
        out.cert = cert;
        return true;
    };

    if (S.dim() == 0) {
        CongruenceCert cert{Mat::identity(F, n), model};
        out.verdict = Verdict::Certified;
        out.cert = cert;
        out.trace.push_back("zero space: identity certificate");
        return out;
    }

    if (zdim == 0) {
        // pattern imposes no constraint
        out.stats.flags_tested = 1;
        if (certified(standard_flag(model, F)))
            return out;
    }

    long double est = gauss_binomial_ld(F.q(), n, zpdim) *
                      gauss_binomial_ld(F.q(), zpdim, zdim);
    if (est > static_cast<long double>(opts.flag_budget))
        throw BudgetExceeded("flag enumeration beyond budget");

    std::vector<Mat> basis = S.basis();

    if (s == 0) {
        // z' = F^n; z must annihilate every member on the left
        Mat stacked(F, S.dim() * n, n);
        for (int k = 0; k < S.dim(); ++k) {
            Mat Mt = basis[static_cast<size_t>(k)].transpose();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    stacked.set(k * n + i, j, Mt(i, j));
        }
        Mat K0 = kernel_basis(stacked);
        out.stats.flags_tested = 1;
        if (K0.rows() >= zdim) {
            std::vector<Vec> zr;
            for (int i = 0; i < zdim; ++i)
                zr.push_back(K0.row(i));
            Flag flag{Mat::from_rows(F, zr), Mat::identity(F, n)};
            if (certified(flag))
                return out;
        }
        out.verdict = Verdict::NotContained;
        out.not_contained = {model};
        return out;
    }

    // scan z' candidates; per candidate the admissible z are exactly the
    // zdim-subspaces of the common left kernel of the Gram matrices
    int cap = zpdim - zdim; // rank of stacked Gram columns must stay <= cap
    std::uint64_t tested = 0;
    std::optional<Flag> found;

    auto scan = [&](std::uint64_t lo, std::uint64_t hi, std::uint64_t& local_n,
                    std::optional<std::pair<std::uint64_t, Flag>>& hit) {
        SubspaceIter it(F, n, zpdim);
        for (std::uint64_t idx = 0; idx < lo && !it.done(); ++idx)
            it.skip();
        Mat Zp;
        for (std::uint64_t idx = lo; idx < hi && it.next(Zp); ++idx) {
            ++local_n;
            Mat Zpt = Zp.transpose();
            RankAccum acc(F, zpdim);
            bool ok = true;
            std::vector<Mat> grams;
            grams.reserve(basis.size());
            for (const Mat& M : basis) {
                Mat G = (Zp * M) * Zpt;
                grams.push_back(G);
                for (int j = 0; j < zpdim && ok; ++j)
                    if (acc.insert(G.col(j)) > cap)
                        ok = false;
                if (!ok)
                    break;
            }
            if (!ok)
                continue;
            // common left kernel of the Grams
            Mat stacked(F, static_cast<int>(grams.size()) * zpdim, zpdim);
            for (size_t k = 0; k < grams.size(); ++k) {
                Mat Gt = grams[k].transpose();
                for (int i = 0; i < zpdim; ++i)
                    for (int j = 0; j < zpdim; ++j)
                        stacked.set(static_cast<int>(k) * zpdim + i, j,
                                    Gt(i, j));
            }
            Mat LK = kernel_basis(stacked);
            if (LK.rows() < zdim)
                continue;
            std::vector<Vec> zr;
            for (int i = 0; i < zdim; ++i)
                zr.push_back(vec_mat(LK.row(i), Zp));
            Mat Z = rref(Mat::from_rows(F, zr)).R;
            hit = {idx, Flag{Z, Zp}};
            return;
        }
    };

    std::uint64_t total =
        static_cast<std::uint64_t>(gauss_binomial_ld(F.q(), n, zpdim) + 0.5L);
    if (opts.jobs <= 1 || total < 256) {
        std::optional<std::pair<std::uint64_t, Flag>> hit;
        scan(0, ~0ULL, tested, hit);
        if (hit)
            found = hit->second;
    } else {
        int nt = opts.jobs;
        std::uint64_t chunk = (total + nt - 1) / nt;
        std::vector<std::uint64_t> counts(static_cast<size_t>(nt), 0);
        std::vector<std::optional<std::pair<std::uint64_t, Flag>>> hits(
            static_cast<size_t>(nt));
        std::vector<std::thread> threads;
        for (int tt = 0; tt < nt; ++tt) {
            std::uint64_t lo = static_cast<std::uint64_t>(tt) * chunk;
            std::uint64_t hi = lo + chunk;
            threads.emplace_back([&, tt, lo, hi] {
                scan(lo, hi, counts[static_cast<size_t>(tt)],
                     hits[static_cast<size_t>(tt)]);
            });
        }
        for (auto& th : threads)
            th.join();
        for (auto& c : counts)
            tested += c;
        std::optional<std::pair<std::uint64_t, Flag>> best;
        for (auto& h : hits)
            if (h && (!best || h->first < best->first))
                best = h;
        if (best)
            found = best->second;
    }

    out.stats.flags_tested += tested;
    if (found && certified(*found))
        return out;
    out.verdict = Verdict::NotContained;
    out.not_contained = {model};
    return out;
}

// --- congruence normalizations ---------------------------------------------------

namespace {

// P whose first n-1 rows span ker(phi): S_H becomes S'_{ker x_n}
Mat hyperplane_normalizer(const Field& F, int n, const Hyperplane& H) {
    Mat U = hyperplane_basis(F, H);
    std::vector<Vec> rows;
    for (int i = 0; i < U.rows(); ++i)
        rows.push_back(U.row(i));
    rows = complete_basis(F, rows, n);
    return Mat::from_rows(F, rows);
}

// P with P A P^T = diag(invertible, 0): rows are a complement of ker A
// followed by a basis of ker A
Mat anchor_normalizer(const Field& F, int n, const Mat& A) {
    Mat K = kernel_basis(A);
    std::vector<Vec> krows;
    for (int i = 0; i < K.rows(); ++i)
        krows.push_back(K.row(i));
    std::vector<Vec> full = complete_basis(F, krows, n);
    std::vector<Vec> rows;
    for (size_t i = krows.size(); i < full.size(); ++i)
        rows.push_back(full[i]);
    for (const Vec& v : krows)
        rows.push_back(v);
    return Mat::from_rows(F, rows);
}

// identity with block Q at offset
Mat diag_embed(const Field& F, int n, const Mat& Q, int off) {
    Mat P = Mat::identity(F, n);
    for (int i = 0; i < Q.rows(); ++i)
        for (int j = 0; j < Q.cols(); ++j)
            P.set(off + i, off + j, Q(i, j));
    return P;
}

// P preserving ker x_n that takes the rank-2 matrix N of S_{ker x_n} to
// E_{1,n} -+ E_{n,1} (+ a E_{n,n} in the symmetric case): rows are
// [X | basis of ker N | w] with X^T N w = 1
std::optional<Mat> pair_normalizer(const Field& F, int n, const Mat& N,
                                   const Vec& X) {
    Mat G = kernel_basis(N);
    if (G.rows() != n - 2)
        return std::nullopt;
    Vec rho = vec_mat(X, N);
    int j0 = -1;
    for (int j = 0; j < n; ++j)
        if (rho[static_cast<size_t>(j)] != 0) {
            j0 = j;
            break;
        }
    if (j0 < 0)
        return std::nullopt;
    Vec w(static_cast<size_t>(n), 0);
    w[static_cast<size_t>(j0)] = F.inv(rho[static_cast<size_t>(j0)]);
    std::vector<Vec> rows;
    rows.push_back(X);
    for (int i = 0; i < G.rows(); ++i)
        rows.push_back(G.row(i));
    rows.push_back(w);
    Mat P = Mat::from_rows(F, rows);
    if (!try_inverse(P))
        return std::nullopt;
    return P;
}

std::uint64_t pow_capped(int q, int d, std::uint64_t cap) {
    std::uint64_t v = 1;
    for (int i = 0; i < d; ++i) {
        if (v > cap / static_cast<std::uint64_t>(q))
            return cap + 1;
        v *= static_cast<std::uint64_t>(q);
    }
    return v;
}

// deterministic max-rank member scan; exact within budget, sampled beyond
struct RankScan {
    int value = 0;
    bool exact = true;
    std::optional<Mat> witness; // absent when no qualifying member was seen
};

RankScan max_rank_member(const MatSpace& S, const GuidedOptions& opts,
                         bool require_nonalternating) {
    const Field& F = S.field();
    RankScan res;
    if (S.dim() == 0)
        return res;
    std::uint64_t total = pow_capped(F.q(), S.dim(), opts.urk_budget);
    int maxr = std::min(S.n(), S.p());
    auto consider = [&](const Mat& M) {
        if (require_nonalternating &&
            classify_form(M) == FormKind::alternating)
            return false;
        int r = rank(M);
        if (r > res.value || !res.witness) {
            res.value = r;
            res.witness = M;
        }
        return res.value == maxr;
    };
    if (total <= opts.urk_budget) {
        ProjectiveIter it(F.q(), S.dim());
        Vec c;
        while (it.next(c))
            if (consider(S.member_from_coeffs(c)))
                break;
        res.exact = true;
    } else {
        res.exact = false;
        // basis matrices first, then seeded samples
        for (int i = 0; i < S.dim(); ++i)
            if (consider(S.basis_mat(i)))
                return res;
        Rng rng(opts.seed);
        for (int t = 0; t < opts.urk_trials; ++t)
            if (consider(random_member(S, rng)))
                break;
    }
    return res;
}

Vec sqrt_diag_vec(const Mat& M) {
    const Field& F = M.field();
    Vec v(static_cast<size_t>(M.rows()), 0);
    for (int i = 0; i < M.rows(); ++i)
        v[static_cast<size_t>(i)] = F.sqrt(M(i, i));
    return v;
}

Hyperplane last_coord_hyperplane(const Field& F, int n) {
    Vec phi(static_cast<size_t>(n), 0);
    phi[static_cast<size_t>(n - 1)] = 1;
    return Hyperplane{phi};
}

Hyperplane coord_hyperplane(const Field& F, int n, int c) {
    Vec phi(static_cast<size_t>(n), 0);
    phi[static_cast<size_t>(c)] = 1;
    return Hyperplane{phi};
}

} // namespace

// --- lifting of the first kind ----------------------------------------------------

namespace {

std::optional<CongruenceCert> lift_kind1(const MatSpace& S, int pat,
                                         const CompressionModel& target) {
    const Field& F = S.field();
    int n = S.n();
    if (pat > n - 1)
        return std::nullopt;
    MatSpace PS = compress_p(S);
    if (PS.dim() != S.dim())
        return std::nullopt; // the last-column map is not a function
    // dim V > C(r,2)+2 in both variants, with r = pat for sym and
    // r = pat-1 for alt
    long long r_eff = target.kind == SpaceKind::alt ? pat - 1 : pat;
    long long need = r_eff * (r_eff - 1) / 2 + 2;
    if (PS.dim() <= need)
        throw DimensionTooSmall("lifting needs dim > C(r,2)+2");

    std::vector<Mat> blocks;
    std::vector<Vec> targets;
    for (int k = 0; k < S.dim(); ++k) {
        Mat M = S.basis_mat(k);
        // P(M) must be supported on the leading pat x pat block
        for (int i = 0; i < n - 1; ++i)
            for (int j = 0; j < n - 1; ++j)
                if ((i >= pat || j >= pat) && M(i, j) != 0)
                    return std::nullopt;
        // C2 = 0
        for (int i = pat; i < n - 1; ++i)
            if (M(i, n - 1) != 0)
                return std::nullopt;
        Mat N(F, pat, pat);
        for (int i = 0; i < pat; ++i)
            for (int j = 0; j < pat; ++j)
                N.set(i, j, M(i, j));
        Vec c(static_cast<size_t>(pat), 0);
        for (int i = 0; i < pat; ++i)
            c[static_cast<size_t>(i)] = M(i, n - 1);
        blocks.push_back(std::move(N));
        targets.push_back(std::move(c));
    }
    auto Y = solve_local_map(blocks, targets);
    if (!Y)
        return std::nullopt;
    Mat E = Mat::identity(F, n);
    for (int j = 0; j < pat; ++j)
        E.set(n - 1, j, F.neg((*Y)[static_cast<size_t>(j)]));
    CongruenceCert cert{E, target};
    if (!verify_cert(S, cert))
        return std::nullopt;
    return cert;
}

} // namespace

std::optional<CongruenceCert> lift_kind1_alt(const MatSpace& S, int r) {
    if (S.kind() != SpaceKind::alt)
        throw KindMismatch("lift_kind1_alt requires an alternating space");
    CompressionModel target{SpaceKind::alt, S.n(), 0, r + 1};
    return lift_kind1(S, r + 1, target);
}

std::optional<CongruenceCert> lift_kind1_sym(const MatSpace& S, int r) {
    if (S.kind() != SpaceKind::sym)
        throw KindMismatch("lift_kind1_sym requires a symmetric space");
    if (S.field().q() <= 2)
        throw UnsupportedField("symmetric lifting requires more than 2 elements");
    CompressionModel target{SpaceKind::sym, S.n(), 0, r};
    return lift_kind1(S, r, target);
}

// --- lifting of the second kind ----------------------------------------------------

std::optional<CongruenceCert> lift_kind2(const MatSpace& S,
                                         const CompressionModel& target) {
    check_model(target);
    const Field& F = S.field();
    int n = target.n, s = target.s, t = target.t;
    if (S.kind() != target.kind || S.n() != n)
        throw KindMismatch("lift_kind2 target does not match the space");
    if (target.kind == SpaceKind::alt && t != 1)
        throw InvalidParams("alternating second-kind lifting targets t = 1");
    if (target.kind == SpaceKind::sym && t > 1)
        throw InvalidParams("symmetric second-kind lifting targets t <= 1");
    if (target.kind == SpaceKind::sym && F.q() <= 2)
        throw UnsupportedField("symmetric lifting requires more than 2 elements");
    if (s < 1)
        throw InvalidParams("second-kind lifting requires s >= 1");

    CompressionModel pm{target.kind, n - 1, s, t};
    MatSpace PS = compress_p(S);
    for (int k = 0; k < PS.dim(); ++k)
        if (!in_pattern(pm, PS.basis_mat(k)))
            return std::nullopt;

    long long dp = PS.dim();
    bool sym_odd = target.kind == SpaceKind::sym && t == 1;
    if (s >= 2) {
        long long bound;
        if (target.kind == SpaceKind::alt)
            bound = alt_dim(n - 1, s, 1) - (n - s - 3);
        else if (!sym_odd)
            bound = sym_dim(n - 1, s, 0) - (n - s - 3);
        else
            bound = sym_dim(n - 1, s, 1) - (n - s - 5);
        if (dp <= bound)
            throw DimensionTooSmall("compressed dimension below the lifting bound");
    } else {
        long long bound = target.kind == SpaceKind::alt ? 1 : (sym_odd ? 5 : 2);
        if (dp <= bound)
            throw DimensionTooSmall("compressed dimension below the lifting bound");
    }

    int row_lo = sym_odd ? s + 1 : s; // B/C rows
    int nrows = (n - 1) - row_lo;
    if (nrows <= 0)
        return std::nullopt;

    std::vector<Mat> bc;
    for (int k = 0; k < S.dim(); ++k) {
        Mat M = S.basis_mat(k);
        Mat T(F, nrows, s + 1);
        for (int i = 0; i < nrows; ++i) {
            for (int j = 0; j < s; ++j)
                T.set(i, j, M(row_lo + i, j));
            T.set(i, s, M(row_lo + i, n - 1));
        }
        bc.push_back(std::move(T));
    }
    MatSpace Tspace =
        MatSpace::make(F, SpaceKind::rect, nrows, s + 1, bc);
    Mat stacked(F, Tspace.dim() * nrows, s + 1);
    for (int k = 0; k < Tspace.dim(); ++k) {
        Mat N = Tspace.basis_mat(k);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < s + 1; ++j)
                stacked.set(k * nrows + i, j, N(i, j));
    }
    Mat K = kernel_basis(stacked);
    if (K.rows() == 0)
        return std::nullopt;
    int pick = -1;
    for (int i = 0; i < K.rows(); ++i)
        if (K(i, s) != 0) {
            pick = i;
            break;
        }
    if (pick < 0)
        throw AnnihilatorDegenerate(
            "only annihilators with zero last entry exist");
    Vec X = K.row(pick);
    elem scale = F.neg(F.inv(X[static_cast<size_t>(s)])); // last entry -> -1
    Vec Y(static_cast<size_t>(s), 0);
    for (int j = 0; j < s; ++j)
        Y[static_cast<size_t>(j)] = F.mul(X[static_cast<size_t>(j)], scale);

    Mat E = Mat::identity(F, n);
    for (int j = 0; j < s; ++j)
        E.set(n - 1, j, F.neg(Y[static_cast<size_t>(j)]));
    MatSpace S2 = congruence_space(E, S);
    Mat Ptotal = E;

    if (sym_odd) {
        // trailing 2x2 block on coordinates (s, n-1) goes to span(E_{1,1})
        std::vector<Vec> jrows;
        for (int k = 0; k < S2.dim(); ++k) {
            Mat M = S2.basis_mat(k);
            jrows.push_back({M(s, s), M(s, n - 1), M(n - 1, n - 1)});
        }
        Mat Jspan = rref(Mat::from_rows(F, jrows)).R;
        if (Jspan.rows() > 1)
            return std::nullopt;
        if (Jspan.rows() == 1) {
            elem a = Jspan(0, 0), b = Jspan(0, 1), c = Jspan(0, 2);
            if (F.mul(a, c) != F.mul(b, b))
                return std::nullopt; // rank-2 trailing block
            Mat G(F, 2, 2);
            if (a != 0) {
                G.set(0, 0, 1);
                G.set(1, 0, F.neg(F.mul(b, F.inv(a))));
                G.set(1, 1, 1);
            } else if (c != 0) { // then b = 0
                G.set(0, 1, 1);
                G.set(1, 0, 1);
            } else {
                G = Mat::identity(F, 2);
            }
            Mat P3 = Mat::identity(F, n);
            P3.set(s, s, G(0, 0));
            P3.set(s, n - 1, G(0, 1));
            P3.set(n - 1, s, G(1, 0));
            P3.set(n - 1, n - 1, G(1, 1));
            S2 = congruence_space(P3, S2);
            Ptotal = P3 * Ptotal;
        }
    } else if (target.kind == SpaceKind::sym) {
        // even case: the corner must vanish
        for (int k = 0; k < S2.dim(); ++k)
            if (S2.basis_mat(k)(n - 1, n - 1) != 0)
                return std::nullopt;
    }

    CongruenceCert cert{Ptotal, target};
    if (!verify_cert(S, cert))
        return std::nullopt;
    return cert;
}

// --- guided recognizers -----------------------------------------------------------

namespace {

struct Attempt {
    std::optional<CongruenceCert> cert;
    std::string note;
};

void merge_sub(RecognitionOutcome& out, const RecognitionOutcome& sub,
               const std::string& prefix) {
    out.stats.hyperplanes_scanned += sub.stats.hyperplanes_scanned;
    out.stats.flags_tested += sub.stats.flags_tested;
    for (const auto& line : sub.trace)
        out.trace.push_back(prefix + line);
}

// rank-bound verification shared by the guided entry points
void check_rank_bound(const MatSpace& S, int r, const GuidedOptions& opts,
                      RecognitionOutcome& out) {
    const Field& F = S.field();
    std::uint64_t total = pow_capped(F.q(), S.dim(), opts.urk_budget);
    UrkPolicy pol;
    if (total <= opts.urk_budget) {
        pol.exact = true;
        pol.budget = opts.urk_budget;
    } else {
        pol.exact = false;
        pol.trials = opts.urk_trials;
        pol.seed = opts.seed;
    }
    UrkResult u = urk(S, pol);
    if (u.value > r)
        throw RankBoundViolated("member of rank " + std::to_string(u.value) +
                                " exceeds the bound " + std::to_string(r));
    out.trace.push_back(std::string("rank bound ") +
                        (u.exact ? "verified exactly" : "sampled") + ": max " +
                        std::to_string(u.value) + " <= " + std::to_string(r));
}

// full-model construction when no hyperplane has a small S_H (the model is
// then congruent to the whole compression space)
std::optional<CongruenceCert> construct_full_alt(const MatSpace& S,
                                                 const CompressionModel& target,
                                                 const GuidedOptions& opts,
                                                 RecognitionOutcome& out) {
    const Field& F = S.field();
    int n = S.n();
    RankScan scan = max_rank_member(S, opts, false);
    if (!scan.witness || scan.value == 0 || scan.value % 2 != 0)
        return std::nullopt;
    int rA = scan.value, sA = rA / 2;
    if (rA >= n)
        return std::nullopt;
    Mat P1 = anchor_normalizer(F, n, *scan.witness);
    MatSpace S1 = congruence_space(P1, S);
    MatSpace SH = s_sub_h(S1, coord_hyperplane(F, n, rA));
    std::vector<Vec> vrows;
    for (int k = 0; k < SH.dim(); ++k) {
        Mat N = SH.basis_mat(k);
        Vec col(static_cast<size_t>(rA), 0);
        for (int i = 0; i < rA; ++i)
            col[static_cast<size_t>(i)] = N(i, rA);
        vrows.push_back(std::move(col));
    }
    Mat V = vrows.empty() ? Mat(F, 0, rA)
                          : rref(Mat::from_rows(F, vrows)).R;
    if (V.rows() != sA) {
        out.trace.push_back("full-model: T_H dimension " +
                            std::to_string(V.rows()) + " != " +
                            std::to_string(sA));
        return std::nullopt;
    }
    Mat P2 = Mat::identity(F, n);
    if (sA > 0) {
        std::vector<Vec> vb;
        for (int i = 0; i < V.rows(); ++i)
            vb.push_back(V.row(i));
        std::vector<Vec> full = complete_basis(F, vb, rA);
        Mat B(F, rA, rA);
        for (int j = 0; j < rA; ++j)
            for (int i = 0; i < rA; ++i)
                B.set(i, j, full[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        P2 = diag_embed(F, n, inverse(B), 0);
    }
    Mat Ptot = P2 * P1;
    CongruenceCert cert{Ptot, target};
    if (!verify_cert(S, cert))
        return std::nullopt;
    out.trace.push_back("full-model construction succeeded (anchor rank " +
                        std::to_string(rA) + ")");
    return cert;
}

std::optional<CongruenceCert> construct_full_sym(const MatSpace& S,
                                                 const CompressionModel& target,
                                                 const GuidedOptions& opts,
                                                 RecognitionOutcome& out) {
    const Field& F = S.field();
    int n = S.n();
    RankScan scan = max_rank_member(S, opts, true);
    if (!scan.witness || scan.value == 0)
        return std::nullopt;
    int rA = scan.value, sA = rA / 2, eA = rA % 2;
    if (rA >= n)
        return std::nullopt;
    Mat P1 = anchor_normalizer(F, n, *scan.witness);
    MatSpace S1 = congruence_space(P1, S);
    MatSpace SH = s_sub_h(S1, coord_hyperplane(F, n, rA));
    std::vector<Vec> vrows;
    for (int k = 0; k < SH.dim(); ++k) {
        Mat N = SH.basis_mat(k);
        Vec col(static_cast<size_t>(rA), 0);
        for (int i = 0; i < rA; ++i)
            col[static_cast<size_t>(i)] = N(i, rA);
        vrows.push_back(std::move(col));
    }
    Mat V = vrows.empty() ? Mat(F, 0, rA)
                          : rref(Mat::from_rows(F, vrows)).R;
    if (V.rows() != sA) {
        out.trace.push_back("full-model: T_H dimension " +
                            std::to_string(V.rows()) + " != " +
                            std::to_string(sA));
        return std::nullopt;
    }
    Mat P2 = Mat::identity(F, n);
    if (sA > 0) {
        std::vector<Vec> vb;
        for (int i = 0; i < V.rows(); ++i)
            vb.push_back(V.row(i));
        std::vector<Vec> full = complete_basis(F, vb, rA);
        Mat B(F, rA, rA);
        for (int j = 0; j < rA; ++j)
            for (int i = 0; i < rA; ++i)
                B.set(i, j, full[static_cast<size_t>(j)][static_cast<size_t>(i)]);
        P2 = diag_embed(F, n, inverse(B), 0);
    }
    MatSpace S2 = congruence_space(P2, S1);
    Mat Ptot = P2 * P1;

    if (eA == 1) {
        // trailing block must span a single rank-1 form
        int m = n - sA;
        std::vector<Vec> jrows;
        MatSpace Jprobe = MatSpace::zero(F, SpaceKind::sym, m);
        for (int k = 0; k < S2.dim(); ++k) {
            Mat M = S2.basis_mat(k);
            Mat J(F, m, m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    J.set(i, j, M(sA + i, sA + j));
            jrows.push_back(Jprobe.vectorize(J));
        }
        Mat Jspan = rref(Mat::from_rows(F, jrows)).R;
        if (Jspan.rows() > 1)
            return std::nullopt;
        if (Jspan.rows() == 1) {
            Mat U = Jprobe.unvectorize(Jspan.row(0));
            // U = lambda v v^T; rows 2.. of the frame span ker(v . )
            int i0 = -1;
            for (int i = 0; i < m && i0 < 0; ++i)
                for (int j = 0; j < m; ++j)
                    if (U(i, j) != 0) {
                        i0 = i;
                        break;
                    }
            if (i0 >= 0) {
                Vec v = U.row(i0);
                Mat W = kernel_basis(Mat::from_rows(F, {v}));
                int j0 = -1;
                for (int j = 0; j < m; ++j)
                    if (v[static_cast<size_t>(j)] != 0) {
                        j0 = j;
                        break;
                    }
                std::vector<Vec> grows;
                Vec g0(static_cast<size_t>(m), 0);
                g0[static_cast<size_t>(j0)] = 1;
                grows.push_back(g0);
                for (int i = 0; i < W.rows(); ++i)
                    grows.push_back(W.row(i));
                Mat G = Mat::from_rows(F, grows);
                if (!try_inverse(G))
                    return std::nullopt;
                Mat P3 = diag_embed(F, n, G, sA);
                Ptot = P3 * Ptot;
            }
        }
    }
    CongruenceCert cert{Ptot, target};
    if (!verify_cert(S, cert))
        return std::nullopt;
    out.trace.push_back("full-model construction succeeded (anchor rank " +
                        std::to_string(rA) + ")");
    return cert;
}

} // namespace

// forward declarations of the mutually recursive drivers
static std::optional<CongruenceCert>
case1_alt(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out);
static std::optional<CongruenceCert>
case2_alt(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out);
static std::optional<CongruenceCert>
case1_sym(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out);
static std::optional<CongruenceCert>
case2_sym(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out);

namespace {

RecognitionOutcome certify(RecognitionOutcome out, const MatSpace& S,
                           CongruenceCert cert) {
    if (!verify_cert(S, cert))
        throw Error("internal: certificate failed verification");
    out.verdict = Verdict::Certified;
    out.cert = std::move(cert);
    return out;
}

// first hyperplane index (enumeration order) whose S_H dimension lies in
// [lo, hi] and, for symmetric spaces, is adapted; -1 when none
std::int64_t find_hyperplane(const MatSpace& S, const std::vector<int>& dims,
                             int lo, int hi, bool need_adapted,
                             const GuidedOptions& opts) {
    const Field& F = S.field();
    for (int m = lo; m <= hi; ++m) {
        for (std::uint64_t i = 0; i < dims.size(); ++i) {
            if (dims[i] != m)
                continue;
            if (!need_adapted)
                return static_cast<std::int64_t>(i);
            Hyperplane H = hyperplane_at(F, S.n(), i);
            if (is_adapted(S, H, opts.rank1_budget))
                return static_cast<std::int64_t>(i);
        }
    }
    return -1;
}

} // namespace

// --- alternating driver --------------------------------------------------------

RecognitionOutcome recognize_small_rank(const MatSpace& S, int r,
                                        const GuidedOptions& opts);

RecognitionOutcome guided_recognize_alt(const MatSpace& S, int r,
                                        const GuidedOptions& opts) {
    if (S.kind() != SpaceKind::alt)
        throw KindMismatch("guided_recognize_alt requires an alternating space");
    if (r <= 0 || r % 2 != 0)
        throw InvalidParams("alternating recognition requires positive even r");
    int n = S.n();
    if (r >= n)
        throw InvalidParams("recognition requires r < n");

    RecognitionOutcome out;
    check_rank_bound(S, r, opts, out);

    if (r == 2) {
        RecognitionOutcome sub = recognize_small_rank(S, 2, opts);
        merge_sub(out, sub, "");
        out.verdict = sub.verdict;
        out.cert = sub.cert;
        out.stall_reason = sub.stall_reason;
        return out;
    }

    int s = r / 2;
    ThresholdInfo th = thresholds(SpaceKind::alt, n, r);
    if (S.dim() <= th.new_thm)
        throw ThresholdNotMet("dim " + std::to_string(S.dim()) +
                              " <= threshold " + std::to_string(th.new_thm));
    out.trace.push_back("threshold passed: dim " + std::to_string(S.dim()) +
                        " > " + std::to_string(th.new_thm));

    if (r == n - 1) {
        out.trace.push_back("r = n-1: immediate containment in the full "
                            "alternating space");
        return certify(std::move(out), S,
                       {Mat::identity(S.field(), n),
                        {SpaceKind::alt, n, 0, r + 1}});
    }

    std::vector<int> dims = sh_dimension_profile(S, opts.jobs);
    out.stats.hyperplanes_scanned += dims.size();
    int m = *std::min_element(dims.begin(), dims.end());
    out.trace.push_back("min dim S_H = " + std::to_string(m));
    const Field& F = S.field();

    std::vector<std::string> reasons;
    auto attempt_case1 = [&]() -> std::optional<CongruenceCert> {
        std::int64_t i = find_hyperplane(S, dims, 0, 0, false, opts);
        if (i < 0)
            return std::nullopt;
        return case1_alt(S, hyperplane_at(F, n, static_cast<std::uint64_t>(i)),
                         r, opts, out);
    };
    auto attempt_case2 = [&]() -> std::optional<CongruenceCert> {
        std::int64_t i = find_hyperplane(S, dims, std::max(1, m), s - 1, false,
                                         opts);
        if (i < 0)
            return std::nullopt;
        return case2_alt(S, hyperplane_at(F, n, static_cast<std::uint64_t>(i)),
                         r, opts, out);
    };
    auto attempt_full = [&]() -> std::optional<CongruenceCert> {
        return construct_full_alt(S, {SpaceKind::alt, n, s, 1}, opts, out);
    };

    std::vector<std::pair<const char*,
                          std::function<std::optional<CongruenceCert>()>>>
        plan;
    if (m >= s) {
        plan = {{"full-model", attempt_full}};
    } else if (m == 0) {
        plan = {{"case 1 (P-compression)", attempt_case1},
                {"case 2 (K-compression)", attempt_case2},
                {"full-model", attempt_full}};
    } else {
        plan = {{"case 2 (K-compression)", attempt_case2},
                {"full-model", attempt_full}};
    }

    for (auto& [name, fn] : plan) {
        try {
            auto cert = fn();
            if (cert) {
                out.trace.push_back(std::string(name) + ": certified into " +
                                    cert->model.str());
                return certify(std::move(out), S, std::move(*cert));
            }
            reasons.push_back(std::string(name) + " failed");
        } catch (const Error& e) {
            reasons.push_back(std::string(name) + ": " + e.what());
        }
    }
    out.verdict = Verdict::Stalled;
    out.stall_reason = "all guided branches stalled";
    for (const auto& rr : reasons)
        out.trace.push_back("stall: " + rr);
    return out;
}

static std::optional<CongruenceCert>
case1_alt(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out) {
    const Field& F = S.field();
    int n = S.n(), s = r / 2;
    Mat P1 = hyperplane_normalizer(F, n, H);
    MatSpace S1 = congruence_space(P1, S);
    MatSpace PS = compress_p(S1);
    if (PS.dim() != S1.dim())
        return std::nullopt;
    RecognitionOutcome sub = (r == 2) ? recognize_small_rank(PS, 2, opts)
                                      : guided_recognize_alt(PS, r, opts);
    merge_sub(out, sub, "  [n-1] ");
    if (sub.verdict != Verdict::Certified)
        return std::nullopt;
    Mat Q = diag_embed(F, n, sub.cert->P, 0);
    MatSpace S2 = congruence_space(Q, S1);
    std::optional<CongruenceCert> lifted;
    if (sub.cert->model.s == s && sub.cert->model.t == 1)
        lifted = lift_kind2(S2, {SpaceKind::alt, n, s, 1});
    else if (sub.cert->model.s == 0)
        lifted = lift_kind1_alt(S2, r);
    if (!lifted)
        return std::nullopt;
    return CongruenceCert{lifted->P * Q * P1, lifted->model};
}

static std::optional<CongruenceCert>
case2_alt(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out) {
    const Field& F = S.field();
    int n = S.n(), s = r / 2;
    Mat P1 = hyperplane_normalizer(F, n, H);
    MatSpace S1 = congruence_space(P1, S);
    MatSpace SH = s_sub_h(S1, last_coord_hyperplane(F, n));
    if (SH.dim() == 0)
        return std::nullopt;
    Mat N = SH.basis_mat(0);
    // any X in ker x_n with N X != 0
    Vec X;
    {
        ProjectiveIter it(F.q(), n - 1);
        Vec c;
        while (it.next(c)) {
            Vec v(static_cast<size_t>(n), 0);
            for (int i = 0; i < n - 1; ++i)
                v[static_cast<size_t>(i)] = c[static_cast<size_t>(i)];
            Vec Nv = mat_vec(N, v);
            bool nz = false;
            for (elem x : Nv)
                if (x != 0) {
                    nz = true;
                    break;
                }
            if (nz) {
                X = v;
                break;
            }
        }
    }
    if (X.empty())
        return std::nullopt;
    auto P2o = pair_normalizer(F, n, N, X);
    if (!P2o)
        return std::nullopt;
    MatSpace S2 = congruence_space(*P2o, S1);
    MatSpace K = compress_k(S2, 0, n - 1);
    RecognitionOutcome sub = (r - 2 == 2)
                                 ? recognize_small_rank(K, 2, opts)
                                 : guided_recognize_alt(K, r - 2, opts);
    merge_sub(out, sub, "  [n-2] ");
    if (sub.verdict != Verdict::Certified)
        return std::nullopt;
    if (!(sub.cert->model.s == s - 1 && sub.cert->model.t == 1)) {
        out.trace.push_back("case 2: inner space certified into " +
                            sub.cert->model.str() +
                            "; no constructive lift for this branch");
        return std::nullopt;
    }
    Mat Q = diag_embed(F, n, sub.cert->P, 1);
    MatSpace S3 = congruence_space(Q, S2);
    auto lifted = lift_kind2(S3, {SpaceKind::alt, n, s, 1});
    if (!lifted)
        return std::nullopt;
    return CongruenceCert{lifted->P * Q * (*P2o) * P1, lifted->model};
}

// --- symmetric driver ------------------------------------------------------------

namespace {

bool all_alternating(const MatSpace& S) {
    for (int k = 0; k < S.dim(); ++k)
        if (classify_form(S.basis_mat(k)) != FormKind::alternating)
            return false;
    return true;
}

// delegation for symmetric spaces of alternating matrices in characteristic 2
std::optional<RecognitionOutcome>
char2_alternating_escape(const MatSpace& S, int r, const GuidedOptions& opts,
                         RecognitionOutcome& out) {
    const Field& F = S.field();
    if (!F.char2() || !all_alternating(S))
        return std::nullopt;
    int n = S.n();
    out.trace.push_back("characteristic 2 and S is alternating: delegating");
    MatSpace Salt = MatSpace::make(F, SpaceKind::alt, n, S.basis());
    int r_alt = r - (r % 2);
    RecognitionOutcome sub;
    try {
        sub = (r_alt == 2) ? recognize_small_rank(Salt, 2, opts)
                           : guided_recognize_alt(Salt, r_alt, opts);
    } catch (const Error& e) {
        out.verdict = Verdict::Stalled;
        out.stall_reason = std::string("alternating delegation failed: ") +
                           e.what();
        return out;
    }
    merge_sub(out, sub, "  [alt] ");
    if (sub.verdict != Verdict::Certified) {
        out.verdict = Verdict::Stalled;
        out.stall_reason = "alternating delegation stalled";
        out.trace.push_back(out.stall_reason);
        return out;
    }
    CompressionModel target;
    if (sub.cert->model.s > 0) {
        target = {SpaceKind::sym, n, r / 2, r % 2}; // outcome (ii)
    } else if (r % 2 == 0) {
        target = {SpaceKind::alt, n, 0, r + 1}; // outcome (iii)
    } else {
        target = {SpaceKind::sym, n, 0, r}; // outcome (i)
    }
    CongruenceCert cert{sub.cert->P, target};
    if (!verify_cert(S, cert)) {
        out.verdict = Verdict::Stalled;
        out.stall_reason = "delegated certificate does not transfer";
        return out;
    }
    return certify(std::move(out), S, std::move(cert));
}

} // namespace

RecognitionOutcome guided_recognize_sym(const MatSpace& S, int r,
                                        const GuidedOptions& opts) {
    if (S.kind() != SpaceKind::sym)
        throw KindMismatch("guided_recognize_sym requires a symmetric space");
    const Field& F = S.field();
    if (F.q() <= 2)
        throw UnsupportedField(
            "symmetric recognition over GF(2) is out of scope");
    int n = S.n();
    if (r <= 1 || r >= n)
        throw InvalidParams("symmetric recognition requires 1 < r < n");

    RecognitionOutcome out;
    check_rank_bound(S, r, opts, out);

    if (auto esc = char2_alternating_escape(S, r, opts, out))
        return *esc;

    if (r <= 3) {
        RecognitionOutcome sub = recognize_small_rank(S, r, opts);
        merge_sub(out, sub, "");
        out.verdict = sub.verdict;
        out.cert = sub.cert;
        out.stall_reason = sub.stall_reason;
        return out;
    }

    int s = r / 2, eps = r % 2;
    ThresholdInfo th = thresholds(SpaceKind::sym, n, r);
    if (S.dim() <= th.new_thm)
        throw ThresholdNotMet("dim " + std::to_string(S.dim()) +
                              " <= threshold " + std::to_string(th.new_thm));
    out.trace.push_back("threshold passed: dim " + std::to_string(S.dim()) +
                        " > " + std::to_string(th.new_thm));

    std::vector<int> dims = sh_dimension_profile(S, opts.jobs);
    out.stats.hyperplanes_scanned += dims.size();

    std::int64_t best = find_hyperplane(S, dims, 0, S.dim(), true, opts);
    int m = best < 0 ? -1 : dims[static_cast<std::uint64_t>(best)];
    out.trace.push_back(best < 0 ? "no adapted hyperplane"
                                 : "min adapted dim S_H = " +
                                       std::to_string(m));

    std::vector<std::string> reasons;
    auto attempt_case1 = [&]() -> std::optional<CongruenceCert> {
        std::int64_t i = find_hyperplane(S, dims, 0, 0, true, opts);
        if (i < 0)
            return std::nullopt;
        return case1_sym(S, hyperplane_at(F, n, static_cast<std::uint64_t>(i)),
                         r, opts, out);
    };
    auto attempt_case2 = [&]() -> std::optional<CongruenceCert> {
        int hi = (r == n - 1) ? n - 3 : s - 1;
        std::int64_t i = find_hyperplane(S, dims, 1, hi, true, opts);
        if (i < 0)
            return std::nullopt;
        return case2_sym(S, hyperplane_at(F, n, static_cast<std::uint64_t>(i)),
                         r, opts, out);
    };
    auto attempt_full = [&]() -> std::optional<CongruenceCert> {
        return construct_full_sym(S, {SpaceKind::sym, n, s, eps}, opts, out);
    };

    std::vector<std::pair<const char*,
                          std::function<std::optional<CongruenceCert>()>>>
        plan;
    if (best < 0 || m >= s) {
        plan = {{"full-model", attempt_full},
                {"case 2 (K-compression)", attempt_case2},
                {"case 1 (P-compression)", attempt_case1}};
    } else if (m == 0) {
        plan = {{"case 1 (P-compression)", attempt_case1},
                {"case 2 (K-compression)", attempt_case2},
                {"full-model", attempt_full}};
    } else {
        plan = {{"case 2 (K-compression)", attempt_case2},
                {"full-model", attempt_full}};
    }

    for (auto& [name, fn] : plan) {
        try {
            auto cert = fn();
            if (cert) {
                out.trace.push_back(std::string(name) + ": certified into " +
                                    cert->model.str());
                return certify(std::move(out), S, std::move(*cert));
            }
            reasons.push_back(std::string(name) + " failed");
        } catch (const Error& e) {
            reasons.push_back(std::string(name) + ": " + e.what());
        }
    }
    out.verdict = Verdict::Stalled;
    out.stall_reason = "all guided branches stalled";
    for (const auto& rr : reasons)
        out.trace.push_back("stall: " + rr);
    return out;
}

static std::optional<CongruenceCert>
case1_sym(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out) {
    const Field& F = S.field();
    int n = S.n(), s = r / 2, eps = r % 2;
    Mat P1 = hyperplane_normalizer(F, n, H);
    MatSpace S1 = congruence_space(P1, S);
    MatSpace PS = compress_p(S1);
    if (PS.dim() != S1.dim())
        return std::nullopt;

    if (r == n - 1) {
        // P(S) lies in Mats_{n-1} = the full (0,r) pattern
        auto lifted = lift_kind1_sym(S1, r);
        if (!lifted)
            return std::nullopt;
        return CongruenceCert{lifted->P * P1, lifted->model};
    }

    RecognitionOutcome sub = (r <= 3) ? recognize_small_rank(PS, r, opts)
                                      : guided_recognize_sym(PS, r, opts);
    merge_sub(out, sub, "  [n-1] ");
    if (sub.verdict != Verdict::Certified)
        return std::nullopt;
    if (sub.cert->model.kind != SpaceKind::sym) {
        out.trace.push_back("case 1: inner certificate is alternating; no "
                            "constructive lift");
        return std::nullopt;
    }
    Mat Q = diag_embed(F, n, sub.cert->P, 0);
    MatSpace S2 = congruence_space(Q, S1);
    std::optional<CongruenceCert> lifted;
    if (sub.cert->model.s == s && sub.cert->model.t == eps)
        lifted = lift_kind2(S2, {SpaceKind::sym, n, s, eps});
    else if (sub.cert->model.s == 0)
        lifted = lift_kind1_sym(S2, r);
    if (!lifted)
        return std::nullopt;
    return CongruenceCert{lifted->P * Q * P1, lifted->model};
}

static std::optional<CongruenceCert>
case2_sym(const MatSpace& S, const Hyperplane& H, int r,
          const GuidedOptions& opts, RecognitionOutcome& out) {
    const Field& F = S.field();
    int n = S.n(), s = r / 2, eps = r % 2;
    Mat P1 = hyperplane_normalizer(F, n, H);
    MatSpace S1 = congruence_space(P1, S);
    MatSpace SH = s_sub_h(S1, last_coord_hyperplane(F, n));
    if (SH.dim() == 0)
        return std::nullopt;
    Mat N = SH.basis_mat(0);
    if (rank(N) != 2)
        return std::nullopt; // adaptedness should exclude rank 1

    // X in ker x_n with N X != 0, and with a non-vanishing quadratic form
    // in characteristic 2
    std::vector<Vec> diag_functionals;
    if (F.char2())
        for (int k = 0; k < S1.dim(); ++k)
            diag_functionals.push_back(sqrt_diag_vec(S1.basis_mat(k)));
    Vec X;
    {
        ProjectiveIter it(F.q(), n - 1);
        Vec c;
        while (it.next(c)) {
            Vec v(static_cast<size_t>(n), 0);
            for (int i = 0; i < n - 1; ++i)
                v[static_cast<size_t>(i)] = c[static_cast<size_t>(i)];
            Vec Nv = mat_vec(N, v);
            bool nz = false;
            for (elem x : Nv)
                if (x != 0) {
                    nz = true;
                    break;
                }
            if (!nz)
                continue;
            if (F.char2()) {
                bool quad = false;
                for (const Vec& l : diag_functionals)
                    if (dot(F, l, v) != 0) {
                        quad = true;
                        break;
                    }
                if (!quad)
                    continue;
            }
            X = v;
            break;
        }
    }
    if (X.empty())
        return std::nullopt;
    auto P2o = pair_normalizer(F, n, N, X);
    if (!P2o)
        return std::nullopt;
    MatSpace S2 = congruence_space(*P2o, S1);
    MatSpace K = compress_k(S2, 0, n - 1);
    int r2 = r - 2;
    RecognitionOutcome sub = (r2 <= 3) ? recognize_small_rank(K, r2, opts)
                                       : guided_recognize_sym(K, r2, opts);
    merge_sub(out, sub, "  [n-2] ");
    if (sub.verdict != Verdict::Certified)
        return std::nullopt;
    if (!(sub.cert->model.kind == SpaceKind::sym &&
          sub.cert->model.s == s - 1 && sub.cert->model.t == eps)) {
        out.trace.push_back("case 2: inner space certified into " +
                            sub.cert->model.str() +
                            "; no constructive lift for this branch");
        return std::nullopt;
    }
    Mat Q = diag_embed(F, n, sub.cert->P, 1);
    MatSpace S3 = congruence_space(Q, S2);
    auto lifted = lift_kind2(S3, {SpaceKind::sym, n, s, eps});
    if (!lifted)
        return std::nullopt;
    return CongruenceCert{lifted->P * Q * (*P2o) * P1, lifted->model};
}

// --- small upper-rank recognizers ---------------------------------------------------

namespace {

RecognitionOutcome small_alt2(const MatSpace& S, const GuidedOptions& opts) {
    const Field& F = S.field();
    int n = S.n();
    RecognitionOutcome out;
    check_rank_bound(S, 2, opts, out);
    if (S.dim() <= 3)
        throw ThresholdNotMet("rank-2 recognition requires dim > 3");

    std::vector<int> dims = sh_dimension_profile(S, opts.jobs);
    out.stats.hyperplanes_scanned += dims.size();
    int m = *std::min_element(dims.begin(), dims.end());
    out.trace.push_back("min dim S_H = " + std::to_string(m));

    std::vector<std::string> reasons;
    if (m >= 1) {
        try {
            auto cert =
                construct_full_alt(S, {SpaceKind::alt, n, 1, 1}, opts, out);
            if (cert)
                return certify(std::move(out), S, std::move(*cert));
            reasons.push_back("full-model failed");
        } catch (const Error& e) {
            reasons.push_back(std::string("full-model: ") + e.what());
        }
    } else {
        try {
            std::int64_t i = find_hyperplane(S, dims, 0, 0, false, opts);
            Hyperplane H = hyperplane_at(F, n, static_cast<std::uint64_t>(i));
            Mat P1 = hyperplane_normalizer(F, n, H);
            MatSpace S1 = congruence_space(P1, S);
            MatSpace PS = compress_p(S1);
            if (PS.dim() == S1.dim()) {
                RecognitionOutcome sub = small_alt2(PS, opts);
                merge_sub(out, sub, "  [n-1] ");
                if (sub.verdict == Verdict::Certified) {
                    Mat Q = diag_embed(F, n, sub.cert->P, 0);
                    MatSpace S2 = congruence_space(Q, S1);
                    auto lifted = lift_kind2(S2, {SpaceKind::alt, n, 1, 1});
                    if (lifted)
                        return certify(std::move(out), S,
                                       {lifted->P * Q * P1, lifted->model});
                }
            }
            reasons.push_back("P-compression failed");
        } catch (const Error& e) {
            reasons.push_back(std::string("P-compression: ") + e.what());
        }
        try {
            auto cert =
                construct_full_alt(S, {SpaceKind::alt, n, 1, 1}, opts, out);
            if (cert)
                return certify(std::move(out), S, std::move(*cert));
            reasons.push_back("full-model failed");
        } catch (const Error& e) {
            reasons.push_back(std::string("full-model: ") + e.what());
        }
    }
    out.verdict = Verdict::Stalled;
    out.stall_reason = "small-rank alternating recognition stalled";
    for (const auto& rr : reasons)
        out.trace.push_back("stall: " + rr);
    return out;
}

RecognitionOutcome small_sym(const MatSpace& S, int r,
                             const GuidedOptions& opts) {
    const Field& F = S.field();
    int n = S.n();
    if (F.q() <= 2)
        throw UnsupportedField(
            "symmetric recognition over GF(2) is out of scope");
    RecognitionOutcome out;
    check_rank_bound(S, r, opts, out);
    long long need = r == 2 ? 3 : 6;
    if (S.dim() <= need)
        throw ThresholdNotMet("dim must exceed " + std::to_string(need));

    if (auto esc = char2_alternating_escape(S, r, opts, out))
        return *esc;

    CompressionModel target{SpaceKind::sym, n, 1, r - 2};

    std::vector<int> dims = sh_dimension_profile(S, opts.jobs);
    out.stats.hyperplanes_scanned += dims.size();
    std::int64_t best = find_hyperplane(S, dims, 0, S.dim(), true, opts);
    int m = best < 0 ? -1 : dims[static_cast<std::uint64_t>(best)];
    out.trace.push_back(best < 0 ? "no adapted hyperplane"
                                 : "min adapted dim S_H = " +
                                       std::to_string(m));

    std::vector<std::string> reasons;
    auto try_full = [&]() -> std::optional<CongruenceCert> {
        return construct_full_sym(S, target, opts, out);
    };
    auto try_case1 = [&]() -> std::optional<CongruenceCert> {
        std::int64_t i = find_hyperplane(S, dims, 0, 0, true, opts);
        if (i < 0)
            return std::nullopt;
        Hyperplane H = hyperplane_at(F, n, static_cast<std::uint64_t>(i));
        Mat P1 = hyperplane_normalizer(F, n, H);
        MatSpace S1 = congruence_space(P1, S);
        MatSpace PS = compress_p(S1);
        if (PS.dim() != S1.dim())
            return std::nullopt;
        RecognitionOutcome sub = small_sym(PS, r, opts);
        merge_sub(out, sub, "  [n-1] ");
        if (sub.verdict != Verdict::Certified)
            return std::nullopt;
        if (sub.cert->model.kind != SpaceKind::sym)
            return std::nullopt;
        Mat Q = diag_embed(F, n, sub.cert->P, 0);
        MatSpace S2 = congruence_space(Q, S1);
        auto lifted = lift_kind2(S2, target);
        if (!lifted)
            return std::nullopt;
        return CongruenceCert{lifted->P * Q * P1, lifted->model};
    };

    std::vector<std::function<std::optional<CongruenceCert>()>> plan;
    if (best < 0 || m >= 1)
        plan = {try_full, try_case1};
    else
        plan = {try_case1, try_full};

    for (auto& fn : plan) {
        try {
            auto cert = fn();
            if (cert)
                return certify(std::move(out), S, std::move(*cert));
            reasons.push_back("branch failed");
        } catch (const Error& e) {
            reasons.push_back(e.what());
        }
    }
    out.verdict = Verdict::Stalled;
    out.stall_reason = "small-rank symmetric recognition stalled";
    for (const auto& rr : reasons)
        out.trace.push_back("stall: " + rr);
    return out;
}

} // namespace

RecognitionOutcome recognize_small_rank(const MatSpace& S, int r,
                                        const GuidedOptions& opts) {
    if (S.kind() == SpaceKind::alt) {
        if (r != 2)
            throw InvalidParams("alternating small-rank recognition takes r = 2");
        return small_alt2(S, opts);
    }
    if (S.kind() == SpaceKind::sym) {
        if (r != 2 && r != 3)
            throw InvalidParams("symmetric small-rank recognition takes r in {2,3}");
        return small_sym(S, r, opts);
    }
    throw KindMismatch("small-rank recognition requires a square space kind");
}

// --- dispatch ----------------------------------------------------------------------

std::vector<CompressionModel> candidate_models(SpaceKind kind, bool char2,
                                               int n, int r) {
    std::vector<CompressionModel> models;
    if (kind == SpaceKind::alt) {
        int s = r / 2;
        models.push_back({SpaceKind::alt, n, s, 1});
        if (r + 1 <= n)
            models.push_back({SpaceKind::alt, n, 0, r + 1});
    } else {
        int s = r / 2, eps = r % 2;
        models.push_back({SpaceKind::sym, n, s, eps});
        models.push_back({SpaceKind::sym, n, 0, r});
        if (char2 && r % 2 == 0 && r + 1 <= n)
            models.push_back({SpaceKind::alt, n, 0, r + 1});
    }
    return models;
}

RecognitionOutcome recognize(const MatSpace& S, int r, RecogMode mode,
                             const GuidedOptions& gopts,
                             const OracleOptions& oopts) {
    const Field& F = S.field();
    auto run_oracle = [&](RecognitionOutcome base) {
        std::vector<CompressionModel> cands =
            candidate_models(S.kind(), F.char2(), S.n(), r);
        for (const auto& m : cands) {
            RecognitionOutcome sub = oracle_recognize(S, m, oopts);
            base.stats.flags_tested += sub.stats.flags_tested;
            if (sub.verdict == Verdict::Certified) {
                base.verdict = Verdict::Certified;
                base.cert = sub.cert;
                base.trace.push_back("oracle certified into " + m.str());
                return base;
            }
            base.trace.push_back("oracle: not contained in " + m.str());
        }
        base.verdict = Verdict::NotContained;
        base.not_contained = cands;
        return base;
    };

    if (mode == RecogMode::oracle)
        return run_oracle(RecognitionOutcome{});

    RecognitionOutcome guided;
    if (S.kind() == SpaceKind::alt)
        guided = (r == 2) ? recognize_small_rank(S, 2, gopts)
                          : guided_recognize_alt(S, r, gopts);
    else if (r <= 3)
        guided = recognize_small_rank(S, r, gopts);
    else
        guided = guided_recognize_sym(S, r, gopts);

    if (guided.verdict == Verdict::Certified || mode == RecogMode::guided)
        return guided;
    guided.trace.push_back("guided path stalled; falling back to the oracle");
    return run_oracle(std::move(guided));
}

} // namespace brkit
