#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "brkit/io.hpp"
#include "brkit/verify.hpp"

using namespace brkit;

namespace {

Vec parse_phi(const std::string& text, const Field& F) {
    Vec phi;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        int v = std::stoi(tok);
        if (v < 0 || v >= F.q())
            throw InvalidParams("functional entry out of range");
        phi.push_back(static_cast<elem>(v));
    }
    return phi;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    os << text;
}

int cmd_model(const std::string& kind, int n, int s, int t, int q,
              const std::string& out) {
    CompressionModel m{kind_from_name(kind), n, s, t};
    const Field& F = Field::make(q);
    MatSpace W = model_space(m, F);
    if (out.empty()) {
        write_space_text(W, std::cout);
    } else {
        write_space_file(W, out);
    }
    std::cerr << m.str() << " over GF(" << q << "): dim " << W.dim() << "\n";
    return 0;
}

int cmd_dims(const std::string& kind, int nmax, const std::string& out) {
    std::ostringstream os;
    os << "kind\tn\ts\tt\tdim\turk\n";
    const Field& F2 = Field::make(2);
    std::vector<SpaceKind> kinds;
    if (kind == "both") {
        kinds = {SpaceKind::sym, SpaceKind::alt};
    } else {
        kinds = {kind_from_name(kind)};
    }
    for (SpaceKind k : kinds)
        for (int n = 1; n <= nmax; ++n)
            for (int s = 0; 2 * s <= n; ++s)
                for (int t = 0; 2 * s + t <= n; ++t) {
                    CompressionModel m{k, n, s, t};
                    os << kind_name(k) << '\t' << n << '\t' << s << '\t' << t
                       << '\t' << model_dim(m) << '\t'
                       << model_urk(m, F2).value << '\n';
                }
    emit(os.str(), out);
    return 0;
}

int cmd_urk(const std::string& path, bool sampled, std::uint64_t budget,
            int trials, std::uint64_t seed) {
    MatSpace S = read_space_file(path);
    UrkPolicy pol;
    pol.exact = !sampled;
    pol.budget = budget;
    pol.trials = trials;
    pol.seed = seed;
    UrkResult u = urk(S, pol);
    std::cout << u.value << (u.exact ? " exact" : " sampled-lower-bound")
              << "\n";
    return 0;
}

int cmd_sh(const std::string& path, const std::string& phi_text, bool min_mode,
           bool adapted_only, const std::string& out, int jobs) {
    MatSpace S = read_space_file(path);
    const Field& F = S.field();
    if (min_mode) {
        MinShResult r = min_dim_sh(S, adapted_only, 1'000'000, jobs);
        std::cout << "m " << r.m << "\nphi";
        for (elem v : r.h.phi)
            std::cout << ' ' << static_cast<int>(v);
        std::cout << "\nscanned " << r.hyperplanes_scanned << "\n";
        if (!out.empty())
            write_space_file(s_sub_h(S, r.h), out);
        return 0;
    }
    Hyperplane H = Hyperplane::normalized(F, parse_phi(phi_text, F));
    MatSpace SH = s_sub_h(S, H);
    std::cout << "dim " << SH.dim() << "\n";
    if (!out.empty())
        write_space_file(SH, out);
    else if (SH.dim() > 0)
        write_space_text(SH, std::cout);
    return 0;
}

int cmd_adapted(const std::string& path, const std::string& phi_text) {
    MatSpace S = read_space_file(path);
    Hyperplane H =
        Hyperplane::normalized(S.field(), parse_phi(phi_text, S.field()));
    std::cout << (is_adapted(S, H) ? "true" : "false") << "\n";
    return 0;
}

int cmd_recognize(const std::string& path, int r, const std::string& mode,
                  std::uint64_t seed, int jobs, const std::string& out,
                  const std::string& cert_out) {
    MatSpace S = read_space_file(path);
    if (S.kind() == SpaceKind::sym && S.field().q() == 2)
        throw UnsupportedField(
            "symmetric recognition over GF(2) is out of scope (the "
            "classification requires more than 2 field elements)");
    RecogMode m = RecogMode::automatic;
    if (mode == "guided")
        m = RecogMode::guided;
    else if (mode == "oracle")
        m = RecogMode::oracle;
    else if (mode != "auto")
        throw InvalidParams("mode must be guided, oracle, or auto");
    GuidedOptions go;
    go.seed = seed;
    go.jobs = jobs;
    OracleOptions oo;
    oo.jobs = jobs;
    RecognitionOutcome outc = recognize(S, r, m, go, oo);
    emit(outcome_to_json(outc), out);
    if (!cert_out.empty() && outc.cert)
        write_cert_file(*outc.cert, S.field(), cert_out);
    return outc.verdict == Verdict::Certified ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials,
               int jobs, std::uint64_t budget, const std::string& out) {
    SuiteConfig cfg;
    cfg.suite = suite;
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.jobs = jobs;
    cfg.budget = budget;
    Report rep = run_suite(cfg);
    if (!out.empty()) {
        std::ofstream os(out, std::ios::binary);
        if (!os)
            throw IoError("cannot open '" + out + "' for writing");
        write_report_jsonl(rep, os);
    } else {
        write_report_jsonl(rep, std::cout);
    }
    print_report_summary(rep, std::cerr);
    return rep.all_pass() ? 0 : 1;
}

int cmd_sample(const std::string& kind, int n, int s, int t, int q, int d,
               std::uint64_t seed, const std::string& out,
               const std::string& cert_out) {
    CompressionModel m{kind_from_name(kind), n, s, t};
    const Field& F = Field::make(q);
    CongruenceCert gt;
    MatSpace S = sample_bounded_space(m, d, F, seed, &gt);
    if (out.empty())
        write_space_text(S, std::cout);
    else
        write_space_file(S, out);
    if (!cert_out.empty())
        write_cert_file(gt, F, cert_out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bounded-rank matrix space toolkit"};
    app.require_subcommand(1);

    // model
    auto* model = app.add_subcommand("model", "write a compression model space");
    std::string m_kind = "alt", m_out;
    int m_n = 0, m_s = 0, m_t = 0, m_q = 2;
    model->add_option("--kind", m_kind)->required();
    model->add_option("--n", m_n)->required();
    model->add_option("--s", m_s)->required();
    model->add_option("--t", m_t)->required();
    model->add_option("--q", m_q)->required();
    model->add_option("-o,--out", m_out);

    // dims
    auto* dims = app.add_subcommand("dims", "dimension/upper-rank table (TSV)");
    std::string d_kind = "both", d_out;
    int d_nmax = 8;
    dims->add_option("--kind", d_kind);
    dims->add_option("--nmax", d_nmax);
    dims->add_option("-o,--out", d_out);

    // urk
    auto* urkc = app.add_subcommand("urk", "upper-rank of a space");
    std::string u_path;
    bool u_sampled = false;
    std::uint64_t u_budget = 10'000'000, u_seed = 0;
    int u_trials = 200;
    urkc->add_option("file", u_path)->required();
    urkc->add_flag("--sampled", u_sampled);
    urkc->add_option("--budget", u_budget);
    urkc->add_option("--trials", u_trials);
    urkc->add_option("--seed", u_seed);

    // sh
    auto* sh = app.add_subcommand("sh", "S_H subspace for a hyperplane");
    std::string s_path, s_phi, s_out;
    bool s_min = false, s_adapted = false;
    int s_jobs = 1;
    sh->add_option("file", s_path)->required();
    sh->add_option("--phi", s_phi);
    sh->add_flag("--min", s_min);
    sh->add_flag("--adapted", s_adapted);
    sh->add_option("--jobs", s_jobs);
    sh->add_option("-o,--out", s_out);

    // adapted
    auto* adapted = app.add_subcommand("adapted", "test S-adaptedness");
    std::string a_path, a_phi;
    adapted->add_option("file", a_path)->required();
    adapted->add_option("--phi", a_phi)->required();

    // recognize
    auto* rec = app.add_subcommand("recognize", "bounded-rank recognition");
    std::string r_path, r_mode = "auto", r_out, r_cert;
    int r_r = 0, r_jobs = 1;
    std::uint64_t r_seed = 0;
    rec->add_option("file", r_path)->required();
    rec->add_option("--r", r_r)->required();
    rec->add_option("--mode", r_mode);
    rec->add_option("--seed", r_seed);
    rec->add_option("--jobs", r_jobs);
    rec->add_option("-o,--out", r_out);
    rec->add_option("--cert-out", r_cert);

    // verify
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite = "all", v_out;
    std::uint64_t v_seed = 1, v_budget = 10'000'000;
    int v_trials = 0, v_jobs = 1;
    ver->add_option("--suite", v_suite);
    ver->add_option("--seed", v_seed);
    ver->add_option("--trials", v_trials);
    ver->add_option("--jobs", v_jobs);
    ver->add_option("--budget", v_budget);
    ver->add_option("-o,--out", v_out);

    // sample
    auto* samp = app.add_subcommand("sample", "seeded bounded-rank instance");
    std::string p_kind = "alt", p_out, p_cert;
    int p_n = 0, p_s = 0, p_t = 0, p_q = 2, p_d = 0;
    std::uint64_t p_seed = 0;
    samp->add_option("--kind", p_kind)->required();
    samp->add_option("--n", p_n)->required();
    samp->add_option("--s", p_s)->required();
    samp->add_option("--t", p_t)->required();
    samp->add_option("--q", p_q)->required();
    samp->add_option("--d", p_d)->required();
    samp->add_option("--seed", p_seed);
    samp->add_option("-o,--out", p_out);
    samp->add_option("--cert-out", p_cert);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }

    try {
        if (model->parsed())
            return cmd_model(m_kind, m_n, m_s, m_t, m_q, m_out);
        if (dims->parsed())
            return cmd_dims(d_kind, d_nmax, d_out);
        if (urkc->parsed())
            return cmd_urk(u_path, u_sampled, u_budget, u_trials, u_seed);
        if (sh->parsed())
            return cmd_sh(s_path, s_phi, s_min, s_adapted, s_out, s_jobs);
        if (adapted->parsed())
            return cmd_adapted(a_path, a_phi);
        if (rec->parsed())
            return cmd_recognize(r_path, r_r, r_mode, r_seed, r_jobs, r_out,
                                 r_cert);
        if (ver->parsed())
            return cmd_verify(v_suite, v_seed, v_trials, v_jobs, v_budget,
                              v_out);
        if (samp->parsed())
            return cmd_sample(p_kind, p_n, p_s, p_t, p_q, p_d, p_seed, p_out,
                              p_cert);
    } catch (const ThresholdNotMet& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const RankBoundViolated& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
