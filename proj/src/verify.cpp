#include "brkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "brkit/io.hpp"

namespace brkit {

using nlohmann::json;

namespace {

double now_ms() {
    using namespace std::chrono;
    return duration<double, std::milli>(
               steady_clock::now().time_since_epoch())
        .count();
}

json space_witness(const MatSpace& S) {
    return json::parse(space_to_json(S));
}

json mat_witness(const Mat& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j)
            row.push_back(static_cast<int>(M(i, j)));
        rows.push_back(row);
    }
    return rows;
}

// deterministic trial sharding: results land in a preallocated slot per index
void parallel_trials(int count, int jobs,
                     const std::function<void(int)>& body) {
    if (jobs <= 1 || count < 4) {
        for (int i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> threads;
    int nt = std::min(jobs, count);
    for (int t = 0; t < nt; ++t)
        threads.emplace_back([&, t] {
            for (int i = t; i < count; i += nt)
                body(i);
        });
    for (auto& th : threads)
        th.join();
}

struct SuiteCtx {
    const SuiteConfig& cfg;
    Report& rep;

    void add(CheckRecord rec) { rep.records.push_back(std::move(rec)); }
};

int default_trials(const SuiteConfig& cfg, int dflt) {
    return cfg.trials > 0 ? cfg.trials : dflt;
}

// ---------------------------------------------------------------- formulas --

void suite_formulas(SuiteCtx& ctx) {
    for (SpaceKind kind : {SpaceKind::sym, SpaceKind::alt}) {
        for (int q : {2, 3, 4, 5}) {
            double t0 = now_ms();
            const Field& F = Field::make(q);
            CheckRecord rec;
            rec.id = "formulas/" + kind_name(kind) + "/q" + std::to_string(q);
            rec.pass = true;
            int cases = 0;
            for (int n = 1; n <= 12 && rec.pass; ++n)
                for (int s = 0; 2 * s <= n && rec.pass; ++s)
                    for (int t = 0; 2 * s + t <= n && rec.pass; ++t) {
                        CompressionModel m{kind, n, s, t};
                        ++cases;
                        if (model_space(m, F).dim() != model_dim(m)) {
                            rec.pass = false;
                            rec.witness =
                                json({{"n", n}, {"s", s}, {"t", t}}).dump();
                        }
                    }
            rec.params = json({{"cases", cases}}).dump();
            rec.ms = now_ms() - t0;
            ctx.add(std::move(rec));
        }
    }
}

// --------------------------------------------------------------------- urk --

void suite_urk(SuiteCtx& ctx) {
    for (SpaceKind kind : {SpaceKind::sym, SpaceKind::alt}) {
        for (int q : {2, 3, 4, 5}) {
            double t0 = now_ms();
            const Field& F = Field::make(q);
            CheckRecord rec;
            rec.id = "urk/" + kind_name(kind) + "/q" + std::to_string(q);
            rec.pass = true;
            int cases = 0, enumerated = 0;
            for (int n = 1; n <= 8 && rec.pass; ++n)
                for (int s = 0; 2 * s <= n && rec.pass; ++s)
                    for (int t = 0; 2 * s + t <= n && rec.pass; ++t) {
                        CompressionModel m{kind, n, s, t};
                        MatSpace W = model_space(m, F);
                        ModelUrk mu = model_urk(m, F);
                        ++cases;
                        auto fail = [&](const char* why) {
                            rec.pass = false;
                            rec.witness = json({{"n", n},
                                                {"s", s},
                                                {"t", t},
                                                {"why", why}})
                                              .dump();
                        };
                        if (rank(mu.witness) != mu.value) {
                            fail("witness rank mismatch");
                            continue;
                        }
                        if (!W.contains(mu.witness)) {
                            fail("witness outside the model");
                            continue;
                        }
                        if (mu.value > 2 * s + t) {
                            fail("structural bound violated");
                            continue;
                        }
                        long double sz = 1;
                        for (int i = 0; i < W.dim(); ++i)
                            sz *= q;
                        if (sz <= 1'000'000.0L) {
                            ++enumerated;
                            UrkPolicy pol;
                            pol.exact = true;
                            pol.budget = 1'000'000;
                            UrkResult u = urk(W, pol);
                            if (u.value != mu.value)
                                fail("enumerated maximum differs");
                        }
                    }
            rec.params =
                json({{"cases", cases}, {"enumerated", enumerated}}).dump();
            rec.ms = now_ms() - t0;
            ctx.add(std::move(rec));
        }
    }
}

// -------------------------------------------------------------- maximality --

namespace {

// search for a member of rank > bound in span(model, extra)
bool find_rank_witness(const MatSpace& T, int bound, std::uint64_t seed) {
    const Field& F = T.field();
    long double sz = 1;
    for (int i = 0; i < T.dim(); ++i)
        sz *= F.q();
    if (sz <= 131072.0L) {
        ProjectiveIter it(F.q(), T.dim());
        Vec c;
        while (it.next(c))
            if (!rank_at_most(T.member_from_coeffs(c), bound))
                return true;
        return false;
    }
    Rng rng(seed);
    for (int trial = 0; trial < 4000; ++trial)
        if (!rank_at_most(random_member(T, rng), bound))
            return true;
    return false;
}

} // namespace

void suite_maximality(SuiteCtx& ctx) {
    for (SpaceKind kind : {SpaceKind::sym, SpaceKind::alt}) {
        for (int q : {2, 3}) {
            double t0 = now_ms();
            const Field& F = Field::make(q);
            CheckRecord rec;
            rec.id =
                "maximality/" + kind_name(kind) + "/q" + std::to_string(q);
            rec.pass = true;
            int cases = 0;
            for (int n = 2; n <= 6 && rec.pass; ++n)
                for (int s = 0; 2 * s <= n && rec.pass; ++s)
                    for (int t = 0; 2 * s + t <= n && rec.pass; ++t) {
                        // maximality holds for 2s+t < n (sym) and odd t with
                        // 2s+t-1 below the largest even rank (alt)
                        if (kind == SpaceKind::sym) {
                            if (2 * s + t >= n)
                                continue;
                        } else {
                            if (t % 2 == 0)
                                continue;
                            if (n % 2 == 1 && 2 * s + t >= n)
                                continue;
                        }
                        CompressionModel m{kind, n, s, t};
                        MatSpace W = model_space(m, F);
                        int urk0 = model_urk(m, F).value;
                        for (int i = 0; i < n && rec.pass; ++i)
                            for (int j = i; j < n && rec.pass; ++j) {
                                if (pattern_allows(m, i, j))
                                    continue;
                                if (i == j && kind == SpaceKind::alt)
                                    continue;
                                Mat E = Mat::unit(F, n, n, i, j);
                                Mat Et = Mat::unit(F, n, n, j, i);
                                Mat ext;
                                if (i == j)
                                    ext = E;
                                else
                                    ext = kind == SpaceKind::sym ? E + Et
                                                                 : E - Et;
                                std::vector<Mat> gens = W.basis();
                                gens.push_back(ext);
                                MatSpace T =
                                    MatSpace::make(F, kind, n, gens);
                                ++cases;
                                std::uint64_t seed = Rng::mix(
                                    ctx.cfg.seed,
                                    static_cast<std::uint64_t>(cases) * 977 +
                                        n * 31 + i * 7 + j);
                                if (!find_rank_witness(T, urk0, seed)) {
                                    rec.pass = false;
                                    rec.witness = json({{"n", n},
                                                        {"s", s},
                                                        {"t", t},
                                                        {"i", i + 1},
                                                        {"j", j + 1}})
                                                      .dump();
                                }
                            }
                    }
            rec.params = json({{"cases", cases}}).dump();
            rec.ms = now_ms() - t0;
            ctx.add(std::move(rec));
        }
    }
}

// -------------------------------------------------------------- convexity --

void suite_convexity(SuiteCtx& ctx) {
    double t0 = now_ms();
    CheckRecord rec;
    rec.id = "convexity";
    rec.pass = true;
    int cases = 0;
    for (SpaceKind kind : {SpaceKind::sym, SpaceKind::alt})
        for (int n = 0; n <= 30 && rec.pass; ++n)
            for (int r = 0; r <= n && rec.pass; ++r) {
                ++cases;
                if (!convexity_check(kind, n, r)) {
                    rec.pass = false;
                    rec.witness = json({{"kind", kind_name(kind)},
                                        {"n", n},
                                        {"r", r}})
                                      .dump();
                }
            }
    rec.params = json({{"cases", cases}}).dump();
    rec.ms = now_ms() - t0;
    ctx.add(std::move(rec));
}

// -------------------------------------------------------------- extraction --

void suite_extraction(SuiteCtx& ctx) {
    int trials = default_trials(ctx.cfg, 1000);
    for (int q : {2, 3, 4, 5}) {
        double t0 = now_ms();
        const Field& F = Field::make(q);
        CheckRecord rec;
        rec.id = "extraction/q" + std::to_string(q);
        rec.pass = true;
        std::vector<int> bad(static_cast<size_t>(trials), -1);
        auto body = [&](int trial) {
            Rng rng(Rng::mix(ctx.cfg.seed, 5000 + q * 100000 + trial));
            SpaceKind kind = (q == 2 || trial % 2 == 0) ? SpaceKind::alt
                                                        : SpaceKind::sym;
            for (int attempt = 0; attempt < 64; ++attempt) {
                int n = 3 + static_cast<int>(rng.uniform(4)); // 3..6
                int s = static_cast<int>(rng.uniform(n / 2 + 1));
                int t = static_cast<int>(rng.uniform(n - 2 * s + 1));
                CompressionModel m{kind, n, s, t};
                std::vector<std::pair<int, int>> pairs;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (pattern_allows(m, i, j))
                            pairs.push_back({i, j});
                if (pairs.empty())
                    continue;
                auto [i, j] = pairs[rng.uniform(pairs.size())];
                MatSpace W = model_space(m, F);
                Mat M = random_member(W, rng);
                int r = model_urk(m, F).value;
                Mat sub = delete_rows_cols(M, {i, j});
                if (!rank_at_most(sub, r - 2))
                    bad[static_cast<size_t>(trial)] = trial;
                return;
            }
        };
        parallel_trials(trials, ctx.cfg.jobs, body);
        for (int t = 0; t < trials; ++t)
            if (bad[static_cast<size_t>(t)] >= 0) {
                rec.pass = false;
                rec.witness = json({{"trial", t}}).dump();
                break;
            }
        rec.params = json({{"trials", trials}}).dump();
        rec.ms = now_ms() - t0;
        ctx.add(std::move(rec));
    }
}

// ------------------------------------------------------------------- schur --

void suite_schur(SuiteCtx& ctx) {
    int trials = default_trials(ctx.cfg, 1000);
    for (int q : {2, 3, 4, 5, 7}) {
        double t0 = now_ms();
        const Field& F = Field::make(q);
        CheckRecord rec;
        rec.id = "schur/q" + std::to_string(q);
        rec.pass = true;
        std::vector<int> bad(static_cast<size_t>(trials), -1);
        auto body = [&](int trial) {
            Rng rng(Rng::mix(ctx.cfg.seed, 9000 + q * 100000 + trial));
            int n = 2 + static_cast<int>(rng.uniform(7)); // 2..8
            int r = 1 + static_cast<int>(rng.uniform(n - 1));
            Mat A = random_invertible(F, r, rng);
            auto rand_mat = [&](int rows, int cols) {
                Mat M(F, rows, cols);
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j)
                        M.set(i, j, static_cast<elem>(rng.uniform(q)));
                return M;
            };
            Mat B = rand_mat(n - r, r), C = rand_mat(r, n - r),
                D = rand_mat(n - r, n - r);
            Mat block(F, n, n);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    block.set(i, j, A(i, j));
            for (int i = 0; i < n - r; ++i)
                for (int j = 0; j < r; ++j)
                    block.set(r + i, j, B(i, j));
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < n - r; ++j)
                    block.set(i, r + j, C(i, j));
            for (int i = 0; i < n - r; ++i)
                for (int j = 0; j < n - r; ++j)
                    block.set(r + i, r + j, D(i, j));
            if (rank(block) != r + rank(schur_complement(A, B, C, D)))
                bad[static_cast<size_t>(trial)] = trial;
        };
        parallel_trials(trials, ctx.cfg.jobs, body);
        for (int t = 0; t < trials; ++t)
            if (bad[static_cast<size_t>(t)] >= 0) {
                rec.pass = false;
                rec.witness = json({{"trial", t}}).dump();
                break;
            }
        rec.params = json({{"trials", trials}}).dump();
        rec.ms = now_ms() - t0;
        ctx.add(std::move(rec));
    }
}

// --------------------------------------------------------------- sharpness --

void suite_sharpness(SuiteCtx& ctx) {
    double t0 = now_ms();
    const Field& F = Field::make(2);
    MatSpace S = model_space({SpaceKind::alt, 6, 1, 3}, F);
    for (CompressionModel m : {CompressionModel{SpaceKind::alt, 6, 2, 1},
                               CompressionModel{SpaceKind::alt, 6, 0, 5}}) {
        CheckRecord rec;
        rec.id = "sharpness/" + m.str();
        OracleOptions oo;
        oo.jobs = ctx.cfg.jobs;
        RecognitionOutcome out = oracle_recognize(S, m, oo);
        rec.pass = out.verdict == Verdict::NotContained;
        if (!rec.pass)
            rec.witness = json({{"verdict", "unexpected"}}).dump();
        rec.params =
            json({{"dim", S.dim()},
                  {"flags_tested", out.stats.flags_tested}})
                .dump();
        rec.ms = now_ms() - t0;
        t0 = now_ms();
        ctx.add(std::move(rec));
    }
}

// ------------------------------------------------- roundtrip and agreement --

struct RoundtripConfig {
    SpaceKind kind;
    int q, n, r;
    std::vector<std::pair<CompressionModel, int>> sources; // (model, dim)
};

std::vector<RoundtripConfig> roundtrip_configs() {
    std::vector<RoundtripConfig> configs;
    auto add = [&](SpaceKind kind, int q, int n, int r) {
        RoundtripConfig c{kind, q, n, r, {}};
        ThresholdInfo th = thresholds(kind, n, r);
        for (const CompressionModel& m :
             candidate_models(kind, Field::make(q).char2(), n, r)) {
            if (m.kind != kind)
                continue; // char-2 crossover handled by the char2 suite
            long long md = model_dim(m);
            if (md <= th.new_thm)
                continue;
            c.sources.push_back({m, static_cast<int>(th.new_thm + 1)});
            if (md > th.new_thm + 1)
                c.sources.push_back({m, static_cast<int>(md)});
        }
        if (!c.sources.empty())
            configs.push_back(std::move(c));
    };
    for (int q : {2, 3, 4}) {
        for (int n : {5, 6})
            add(SpaceKind::alt, q, n, 2);
        for (int n : {5, 6})
            add(SpaceKind::alt, q, n, 4);
    }
    for (int q : {3, 4}) {
        for (int n : {4, 5, 6})
            add(SpaceKind::sym, q, n, 2);
        add(SpaceKind::sym, q, 6, 3);
        for (int n : {5, 6})
            add(SpaceKind::sym, q, n, 4);
    }
    return configs;
}

void suite_roundtrip(SuiteCtx& ctx, bool agreement) {
    int trials = default_trials(ctx.cfg, agreement ? 50 : 200);
    for (const RoundtripConfig& cfg : roundtrip_configs()) {
        double t0 = now_ms();
        const Field& F = Field::make(cfg.q);
        CheckRecord rec;
        rec.id = std::string(agreement ? "agreement/" : "roundtrip/") +
                 kind_name(cfg.kind) + "/q" + std::to_string(cfg.q) + "/n" +
                 std::to_string(cfg.n) + "/r" + std::to_string(cfg.r);
        std::vector<int> auto_ok(static_cast<size_t>(trials), 0);
        std::vector<int> guided_ok(static_cast<size_t>(trials), 0);
        std::vector<int> agree_ok(static_cast<size_t>(trials), 1);
        auto body = [&](int trial) {
            const auto& [model, d] =
                cfg.sources[static_cast<size_t>(trial) % cfg.sources.size()];
            std::uint64_t seed = Rng::mix(
                ctx.cfg.seed, 31'000 + static_cast<std::uint64_t>(cfg.q) *
                                  1'000'000 +
                                  cfg.n * 10'000 + cfg.r * 100 + trial);
            MatSpace S = sample_bounded_space(model, d, F, seed);
            GuidedOptions go;
            go.seed = seed;
            RecognitionOutcome guided =
                recognize(S, cfg.r, RecogMode::guided, go);
            if (guided.verdict == Verdict::Certified &&
                verify_cert(S, *guided.cert))
                guided_ok[static_cast<size_t>(trial)] = 1;
            if (agreement) {
                // the oracle must confirm containment in the guided model
                if (guided.verdict == Verdict::Certified) {
                    RecognitionOutcome or_out =
                        oracle_recognize(S, guided.cert->model);
                    agree_ok[static_cast<size_t>(trial)] =
                        or_out.verdict == Verdict::Certified ? 1 : 0;
                }
                return;
            }
            if (guided.verdict == Verdict::Certified) {
                auto_ok[static_cast<size_t>(trial)] = 1;
            } else {
                RecognitionOutcome full =
                    recognize(S, cfg.r, RecogMode::automatic, go);
                if (full.verdict == Verdict::Certified &&
                    verify_cert(S, *full.cert))
                    auto_ok[static_cast<size_t>(trial)] = 1;
            }
        };
        parallel_trials(trials, ctx.cfg.jobs, body);
        int sum_auto = 0, sum_guided = 0, sum_agree = 0;
        for (int t = 0; t < trials; ++t) {
            sum_auto += auto_ok[static_cast<size_t>(t)];
            sum_guided += guided_ok[static_cast<size_t>(t)];
            sum_agree += agree_ok[static_cast<size_t>(t)];
        }
        if (agreement) {
            rec.pass = sum_agree == trials;
            rec.params = json({{"instances", trials},
                               {"guided_certified", sum_guided},
                               {"agreed", sum_agree}})
                             .dump();
        } else {
            double stall_rate =
                1.0 - static_cast<double>(sum_guided) / trials;
            rec.pass = sum_auto == trials &&
                       sum_guided * 100 >= trials * 95;
            rec.params = json({{"instances", trials},
                               {"auto_certified", sum_auto},
                               {"guided_certified", sum_guided},
                               {"stall_rate", stall_rate}})
                             .dump();
        }
        if (!rec.pass)
            rec.witness = rec.params;
        rec.ms = now_ms() - t0;
        ctx.add(std::move(rec));
    }
}

// --------------------------------------------------------------- dichotomy --

void suite_dichotomy(SuiteCtx& ctx) {
    int trials = default_trials(ctx.cfg, 50);
    // (a) full models WA_{n,s,1}: every hyperplane has dim S_H >= s
    for (int q : {2, 3}) {
        const Field& F = Field::make(q);
        for (int n = 3; n <= 6; ++n) {
            for (int s = 1; 2 * s + 1 <= n; ++s) {
                double t0 = now_ms();
                CheckRecord rec;
                rec.id = "dichotomy/full/q" + std::to_string(q) + "/n" +
                         std::to_string(n) + "/s" + std::to_string(s);
                std::vector<int> ok(static_cast<size_t>(trials), 0);
                auto body = [&](int trial) {
                    Rng rng(Rng::mix(ctx.cfg.seed,
                                     41'000 + q * 100'000 + n * 1000 +
                                         s * 100 + trial));
                    MatSpace W =
                        model_space({SpaceKind::alt, n, s, 1}, F);
                    Mat P = random_invertible(F, n, rng);
                    MatSpace S = congruence_space(P, W);
                    MinShResult r = min_dim_sh(S);
                    ok[static_cast<size_t>(trial)] = r.m >= s ? 1 : 0;
                };
                parallel_trials(trials, ctx.cfg.jobs, body);
                int sum = 0;
                for (int v : ok)
                    sum += v;
                rec.pass = sum == trials;
                rec.params = json({{"instances", trials}, {"ok", sum}}).dump();
                if (!rec.pass)
                    rec.witness = rec.params;
                rec.ms = now_ms() - t0;
                ctx.add(std::move(rec));
            }
        }
    }
    // (b) large subspaces of WA_{n,0,2s+1}: some hyperplane has dim S_H < s
    for (int q : {2, 3}) {
        const Field& F = Field::make(q);
        for (int n = 3; n <= 6; ++n) {
            for (int s = 2; 2 * s < n - 1; ++s) {
                CompressionModel big{SpaceKind::alt, n, 0, 2 * s + 1};
                ThresholdInfo th = thresholds(SpaceKind::alt, n, 2 * s);
                long long md = model_dim(big);
                if (md <= th.new_thm)
                    continue;
                double t0 = now_ms();
                CheckRecord rec;
                rec.id = "dichotomy/sub/q" + std::to_string(q) + "/n" +
                         std::to_string(n) + "/s" + std::to_string(s);
                std::vector<int> ok(static_cast<size_t>(trials), 0);
                auto body = [&](int trial) {
                    std::uint64_t seed =
                        Rng::mix(ctx.cfg.seed, 43'000 + q * 100'000 +
                                                   n * 1000 + s * 100 + trial);
                    int d = static_cast<int>(
                        th.new_thm + 1 +
                        (trial % (md - th.new_thm)));
                    MatSpace S = sample_bounded_space(big, d, F, seed);
                    MinShResult r = min_dim_sh(S);
                    ok[static_cast<size_t>(trial)] = r.m < s ? 1 : 0;
                };
                parallel_trials(trials, ctx.cfg.jobs, body);
                int sum = 0;
                for (int v : ok)
                    sum += v;
                rec.pass = sum == trials;
                rec.params = json({{"instances", trials}, {"ok", sum}}).dump();
                if (!rec.pass)
                    rec.witness = rec.params;
                rec.ms = now_ms() - t0;
                ctx.add(std::move(rec));
            }
        }
    }
}

// ------------------------------------------------------------------- char2 --

void suite_char2(SuiteCtx& ctx) {
    int trials = default_trials(ctx.cfg, 50);
    const Field& F = Field::make(4);
    struct Src {
        int n, d;
    };
    std::vector<Src> sources = {{5, 9}, {5, 10}, {6, 10}};
    double t0 = now_ms();
    CheckRecord rec;
    rec.id = "char2/outcome-iii/q4";
    std::vector<int> ok(static_cast<size_t>(trials), 0);
    auto body = [&](int trial) {
        Src src = sources[static_cast<size_t>(trial) % sources.size()];
        CompressionModel alt_model{SpaceKind::alt, src.n, 0, 5};
        std::uint64_t seed = Rng::mix(ctx.cfg.seed, 47'000 + trial);
        MatSpace Salt = sample_bounded_space(alt_model, src.d, F, seed);
        MatSpace Ssym =
            MatSpace::make(F, SpaceKind::sym, src.n, Salt.basis());
        GuidedOptions go;
        go.seed = seed;
        RecognitionOutcome out =
            recognize(Ssym, 4, RecogMode::automatic, go);
        ok[static_cast<size_t>(trial)] =
            (out.verdict == Verdict::Certified &&
             out.cert->model.kind == SpaceKind::alt &&
             verify_cert(Ssym, *out.cert))
                ? 1
                : 0;
    };
    parallel_trials(trials, ctx.cfg.jobs, body);
    int sum = 0;
    for (int v : ok)
        sum += v;
    rec.pass = sum == trials;
    rec.params = json({{"instances", trials}, {"ok", sum}}).dump();
    if (!rec.pass)
        rec.witness = rec.params;
    rec.ms = now_ms() - t0;
    ctx.add(std::move(rec));
}

} // namespace

// ------------------------------------------------------------------ driver --

MatSpace sample_bounded_space(const CompressionModel& model, int d,
                              const Field& F, std::uint64_t seed,
                              CongruenceCert* ground_truth) {
    check_model(model);
    MatSpace W = model_space(model, F);
    if (d < 0 || d > W.dim())
        throw InvalidParams("sample dimension exceeds the model dimension");
    Rng rng(seed);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::vector<Mat> gens;
        Mat coords(F, d, W.dim());
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < W.dim(); ++j)
                coords.set(i, j, static_cast<elem>(rng.uniform(F.q())));
        if (rank(coords) != d)
            continue;
        for (int i = 0; i < d; ++i)
            gens.push_back(W.member_from_coeffs(coords.row(i)));
        MatSpace sub = MatSpace::make(F, model.kind, model.n, gens);
        Mat P = random_invertible(F, model.n, rng);
        MatSpace S = congruence_space(P, sub);
        if (ground_truth) {
            ground_truth->P = inverse(P);
            ground_truth->model = model;
        }
        return S;
    }
    throw InvalidParams("could not sample a subspace of the requested dimension");
}

std::vector<std::string> suite_names() {
    return {"formulas",  "urk",       "maximality", "convexity",
            "extraction", "schur",    "sharpness",  "roundtrip",
            "agreement", "dichotomy", "char2"};
}

Report run_suite(const SuiteConfig& config) {
    Report rep;
    SuiteCtx ctx{config, rep};
    auto want = [&](const char* name) {
        return config.suite == "all" || config.suite == name;
    };
    bool known = config.suite == "all";
    for (const auto& nm : suite_names())
        if (config.suite == nm)
            known = true;
    if (!known)
        throw ConfigError("unknown suite '" + config.suite + "'");

    if (want("formulas"))
        suite_formulas(ctx);
    if (want("urk"))
        suite_urk(ctx);
    if (want("maximality"))
        suite_maximality(ctx);
    if (want("convexity"))
        suite_convexity(ctx);
    if (want("extraction"))
        suite_extraction(ctx);
    if (want("schur"))
        suite_schur(ctx);
    if (want("sharpness"))
        suite_sharpness(ctx);
    if (want("roundtrip"))
        suite_roundtrip(ctx, false);
    if (want("agreement"))
        suite_roundtrip(ctx, true);
    if (want("dichotomy"))
        suite_dichotomy(ctx);
    if (want("char2"))
        suite_char2(ctx);
    return rep;
}

void write_report_jsonl(const Report& report, std::ostream& os) {
    for (const auto& r : report.records) {
        json j;
        j["check"] = r.id;
        j["params"] = r.params.empty() ? json::object() : json::parse(r.params);
        j["pass"] = r.pass;
        if (!r.witness.empty())
            j["witness"] = json::parse(r.witness);
        os << j.dump() << '\n';
    }
}

void print_report_summary(const Report& report, std::ostream& os) {
    int passed = 0;
    for (const auto& r : report.records) {
        os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.params
           << "  (" << static_cast<long long>(r.ms) << " ms)\n";
        if (r.pass)
            ++passed;
    }
    os << passed << "/" << report.records.size() << " checks passed\n";
}

} // namespace brkit
