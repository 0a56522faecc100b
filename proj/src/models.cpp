#include "brkit/models.hpp"

#include <algorithm>

namespace brkit {

std::string CompressionModel::str() const {
    return (kind == SpaceKind::sym ? "WS(" : "WA(") + std::to_string(n) + "," +
           std::to_string(s) + "," + std::to_string(t) + ")";
}

void check_model(const CompressionModel& m) {
    if (m.kind == SpaceKind::rect)
        throw InvalidModel("model kind must be sym or alt");
    if (m.n < 0 || m.s < 0 || m.t < 0 || 2 * m.s + m.t > m.n)
        throw InvalidModel("model requires 2s+t <= n, all non-negative");
}

bool pattern_allows(const CompressionModel& m, int i, int j) {
    if (i < m.s || j < m.s)
        return true;
    return i < m.s + m.t && j < m.s + m.t;
}

bool in_pattern(const CompressionModel& m, const Mat& M) {
    if (M.rows() != m.n || M.cols() != m.n)
        return false;
    if (m.kind == SpaceKind::sym) {
        if (M != M.transpose())
            return false;
    } else {
        if (classify_form(M) != FormKind::alternating)
            return false;
    }
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (M(i, j) != 0 && !pattern_allows(m, i, j))
                return false;
    return true;
}

MatSpace model_space(const CompressionModel& m, const Field& F) {
    check_model(m);
    std::vector<Mat> gens;
    for (int i = 0; i < m.n; ++i) {
        for (int j = i; j < m.n; ++j) {
            if (!pattern_allows(m, i, j))
                continue;
            if (i == j) {
                if (m.kind == SpaceKind::sym)
                    gens.push_back(Mat::unit(F, m.n, m.n, i, i));
            } else {
                Mat E = Mat::unit(F, m.n, m.n, i, j);
                Mat Et = Mat::unit(F, m.n, m.n, j, i);
                gens.push_back(m.kind == SpaceKind::sym ? E + Et
                                                        : E - Et);
            }
        }
    }
    return MatSpace::make(F, m.kind, m.n, gens);
}

namespace {
long long choose2(long long k) { return k * (k - 1) / 2; }
} // namespace

long long sym_dim(int n, int s, int t) {
    return choose2(s + 1) + choose2(t + 1) +
           static_cast<long long>(s) * (n - s);
}

long long alt_dim(int n, int s, int t) {
    return choose2(s) + choose2(t) + static_cast<long long>(s) * (n - s);
}

long long model_dim(const CompressionModel& m) {
    check_model(m);
    return m.kind == SpaceKind::sym ? sym_dim(m.n, m.s, m.t)
                                    : alt_dim(m.n, m.s, m.t);
}

ModelUrk model_urk(const CompressionModel& m, const Field& F) {
    check_model(m);
    ModelUrk res;
    Mat W(F, m.n, m.n);
    if (m.kind == SpaceKind::sym) {
        // identity on [0, s+t) plus the coupling of the first s rows with
        // the trailing block
        for (int i = 0; i < m.s + m.t; ++i)
            W.set(i, i, 1);
        for (int i = 0; i < m.s; ++i) {
            W.set(i, m.s + m.t + i, 1);
            W.set(m.s + m.t + i, i, 1);
        }
        res.value = 2 * m.s + m.t;
        res.exact = true;
    } else {
        // s couplings plus floor(t/2) rotation blocks inside the middle block
        for (int i = 0; i < m.s; ++i) {
            W.set(i, m.s + m.t + i, 1);
            W.set(m.s + m.t + i, i, F.neg(1));
        }
        for (int i = 0; 2 * i + 1 < m.t; ++i) {
            int a = m.s + 2 * i, b = m.s + 2 * i + 1;
            W.set(a, b, 1);
            W.set(b, a, F.neg(1));
        }
        if (m.t % 2 == 1) {
            res.value = 2 * m.s + m.t - 1;
            res.exact = true;
        } else {
            res.value = 2 * m.s + m.t; // structural bound; witness attains it
            res.exact = false;
        }
    }
    res.witness = W;
    return res;
}

ThresholdInfo thresholds(SpaceKind kind, int n, int r) {
    if (kind == SpaceKind::rect)
        throw InvalidParams("thresholds require sym or alt");
    if (r <= 0 || r >= n)
        throw InvalidParams("thresholds require 0 < r < n");
    ThresholdInfo out;
    if (kind == SpaceKind::alt) {
        if (r % 2 != 0)
            throw InvalidParams("alternating thresholds require even r");
        int s = r / 2;
        out.old_thm_max = std::max(alt_dim(n, 0, 2 * s + 1), alt_dim(n, s, 1));
        if (s == 1)
            out.new_thm = 3; // rank <= 2 proposition
        else
            out.new_thm =
                std::max(alt_dim(n, 1, r - 1), alt_dim(n, s - 1, 3));
    } else {
        int s = r / 2, eps = r % 2;
        out.old_thm_max =
            std::max(sym_dim(n, 0, r), sym_dim(n, s, eps));
        if (r == 2)
            out.new_thm = 3;
        else if (r == 3)
            out.new_thm = 6;
        else
            out.new_thm =
                std::max(sym_dim(n, 1, r - 2), sym_dim(n, s - 1, 2 + eps));
    }
    return out;
}

bool convexity_check(SpaceKind kind, int n, int r) {
    if (r < 0 || r > n)
        return false;
    std::vector<long long> seq;
    if (kind == SpaceKind::sym) {
        for (int s = 0; 2 * s <= r; ++s)
            seq.push_back(sym_dim(n, s, r - 2 * s));
    } else {
        for (int s = 0; 2 * s <= r + 1; ++s)
            seq.push_back(alt_dim(n, s, r + 1 - 2 * s));
    }
    for (size_t i = 0; i + 2 < seq.size(); ++i)
        if (seq[i + 2] - 2 * seq[i + 1] + seq[i] != 3)
            return false;
    return true;
}

} // namespace brkit
