#include "brkit/matrix.hpp"

namespace brkit {

Mat Mat::identity(const Field& F, int n) {
    Mat m(F, n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, 1);
    return m;
}

Mat Mat::unit(const Field& F, int rows, int cols, int i, int j) {
    if (i < 0 || i >= rows || j < 0 || j >= cols)
        throw IndexOutOfRange("unit matrix index out of range");
    Mat m(F, rows, cols);
    m.set(i, j, 1);
    return m;
}

Mat Mat::from_rows(const Field& F, const std::vector<Vec>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Mat m(F, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw InvalidParams("ragged row list");
        for (int j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

Vec Mat::row(int i) const {
    Vec v(cols_);
    for (int j = 0; j < cols_; ++j)
        v[j] = (*this)(i, j);
    return v;
}

Vec Mat::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

bool Mat::is_zero() const {
    for (elem v : e_)
        if (v != 0)
            return false;
    return true;
}

Mat Mat::operator+(const Mat& o) const {
    Mat m(*f_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i)
        m.e_[i] = f_->add(e_[i], o.e_[i]);
    return m;
}

Mat Mat::operator-(const Mat& o) const {
    Mat m(*f_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i)
        m.e_[i] = f_->sub(e_[i], o.e_[i]);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_)
        throw InvalidParams("shape mismatch in matrix product");
    Mat m(*f_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            elem a = (*this)(i, k);
            if (a == 0)
                continue;
            for (int j = 0; j < o.cols_; ++j) {
                elem p = f_->mul(a, o(k, j));
                if (p != 0)
                    m.set(i, j, f_->add(m(i, j), p));
            }
        }
    return m;
}

Mat Mat::scaled(elem c) const {
    Mat m(*f_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i)
        m.e_[i] = f_->mul(e_[i], c);
    return m;
}

Mat Mat::transpose() const {
    Mat m(*f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            m.set(j, i, (*this)(i, j));
    return m;
}

namespace {

// in-place elimination; returns rank, stops when rank exceeds cap (if >= 0)
int eliminate(Mat& A, int cap) {
    const Field& F = A.field();
    int rows = A.rows(), cols = A.cols();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (A(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            for (int j = c; j < cols; ++j) {
                elem t = A(r, j);
                A.set(r, j, A(piv, j));
                A.set(piv, j, t);
            }
        elem ip = F.inv(A(r, c));
        for (int j = c; j < cols; ++j)
            A.set(r, j, F.mul(A(r, j), ip));
        for (int i = r + 1; i < rows; ++i) {
            elem v = A(i, c);
            if (v == 0)
                continue;
            for (int j = c; j < cols; ++j)
                A.set(i, j, F.sub(A(i, j), F.mul(v, A(r, j))));
        }
        ++r;
        if (cap >= 0 && r > cap)
            return r;
    }
    return r;
}

} // namespace

int rank(const Mat& M) {
    Mat A = M;
    return eliminate(A, -1);
}

bool rank_at_most(const Mat& M, int r) {
    if (r < 0)
        return M.is_zero();
    Mat A = M;
    return eliminate(A, r) <= r;
}

std::optional<Mat> try_inverse(const Mat& M) {
    if (!M.is_square())
        throw InvalidParams("inverse of a non-square matrix");
    const Field& F = M.field();
    int n = M.rows();
    Mat A(F, n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            A.set(i, j, M(i, j));
        A.set(i, n + i, 1);
    }
    // Gauss-Jordan
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (A(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            return std::nullopt;
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) {
                elem t = A(c, j);
                A.set(c, j, A(piv, j));
                A.set(piv, j, t);
            }
        elem ip = F.inv(A(c, c));
        for (int j = 0; j < 2 * n; ++j)
            A.set(c, j, F.mul(A(c, j), ip));
        for (int i = 0; i < n; ++i) {
            if (i == c)
                continue;
            elem v = A(i, c);
            if (v == 0)
                continue;
            for (int j = 0; j < 2 * n; ++j)
                A.set(i, j, F.sub(A(i, j), F.mul(v, A(c, j))));
        }
    }
    Mat R(F, n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            R.set(i, j, A(i, n + j));
    return R;
}

Mat inverse(const Mat& M) {
    auto r = try_inverse(M);
    if (!r)
        throw SingularBlock("matrix is not invertible");
    return *r;
}

Mat congruence(const Mat& P, const Mat& M) {
    if (!P.is_square() || !M.is_square() || P.rows() != M.rows())
        throw InvalidParams("congruence shape mismatch");
    if (!try_inverse(P))
        throw SingularBlock("congruence by a singular matrix");
    return P * M * P.transpose();
}

Mat schur_complement(const Mat& A, const Mat& B, const Mat& C, const Mat& D) {
    int r = A.rows();
    if (!A.is_square() || B.cols() != r || C.rows() != r ||
        D.rows() != B.rows() || D.cols() != C.cols())
        throw InvalidParams("schur complement shape mismatch");
    auto Ainv = try_inverse(A);
    if (!Ainv)
        throw SingularBlock("leading block is not invertible");
    return D - B * (*Ainv) * C;
}

FormKind classify_form(const Mat& M) {
    if (!M.is_square())
        return FormKind::general;
    const Field& F = M.field();
    int n = M.rows();
    bool sym = true, skew = true, diag0 = true;
    for (int i = 0; i < n; ++i) {
        if (M(i, i) != 0)
            diag0 = false;
        for (int j = i + 1; j < n; ++j) {
            if (M(i, j) != M(j, i))
                sym = false;
            if (M(i, j) != F.neg(M(j, i)))
                skew = false;
        }
    }
    if (skew && diag0)
        return FormKind::alternating;
    if (sym)
        return FormKind::symmetric_nonalternating;
    return FormKind::general;
}

Mat delete_rows_cols(const Mat& M, const std::vector<int>& idx) {
    std::vector<bool> drop_r(M.rows(), false), drop_c(M.cols(), false);
    for (int i : idx) {
        if (i < 0 || i >= M.rows() || i >= M.cols())
            throw IndexOutOfRange("delete_rows_cols index out of range");
        drop_r[i] = true;
        drop_c[i] = true;
    }
    std::vector<int> keep_r, keep_c;
    for (int i = 0; i < M.rows(); ++i)
        if (!drop_r[i])
            keep_r.push_back(i);
    for (int j = 0; j < M.cols(); ++j)
        if (!drop_c[j])
            keep_c.push_back(j);
    Mat R(M.field(), static_cast<int>(keep_r.size()),
          static_cast<int>(keep_c.size()));
    for (size_t i = 0; i < keep_r.size(); ++i)
        for (size_t j = 0; j < keep_c.size(); ++j)
            R.set(static_cast<int>(i), static_cast<int>(j),
                  M(keep_r[i], keep_c[j]));
    return R;
}

elem form_eval(const Mat& M, std::span<const elem> X, std::span<const elem> Y) {
    const Field& F = M.field();
    elem acc = 0;
    for (int i = 0; i < M.rows(); ++i) {
        if (X[i] == 0)
            continue;
        elem rowacc = 0;
        for (int j = 0; j < M.cols(); ++j)
            if (Y[j] != 0)
                rowacc = F.add(rowacc, F.mul(M(i, j), Y[j]));
        acc = F.add(acc, F.mul(X[i], rowacc));
    }
    return acc;
}

Vec mat_vec(const Mat& M, std::span<const elem> x) {
    const Field& F = M.field();
    Vec y(M.rows(), 0);
    for (int i = 0; i < M.rows(); ++i) {
        elem acc = 0;
        for (int j = 0; j < M.cols(); ++j)
            if (x[j] != 0)
                acc = F.add(acc, F.mul(M(i, j), x[j]));
        y[i] = acc;
    }
    return y;
}

Vec vec_mat(std::span<const elem> x, const Mat& M) {
    const Field& F = M.field();
    Vec y(M.cols(), 0);
    for (int i = 0; i < M.rows(); ++i) {
        if (x[i] == 0)
            continue;
        for (int j = 0; j < M.cols(); ++j)
            y[j] = F.add(y[j], F.mul(x[i], M(i, j)));
    }
    return y;
}

elem dot(const Field& F, std::span<const elem> a, std::span<const elem> b) {
    elem acc = 0;
    for (size_t i = 0; i < a.size(); ++i)
        acc = F.add(acc, F.mul(a[i], b[i]));
    return acc;
}

Echelon rref(const Mat& M) {
    const Field& F = M.field();
    Mat A = M;
    int rows = A.rows(), cols = A.cols();
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (A(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) {
                elem t = A(r, j);
                A.set(r, j, A(piv, j));
                A.set(piv, j, t);
            }
        elem ip = F.inv(A(r, c));
        for (int j = 0; j < cols; ++j)
            A.set(r, j, F.mul(A(r, j), ip));
        for (int i = 0; i < rows; ++i) {
            if (i == r)
                continue;
            elem v = A(i, c);
            if (v == 0)
                continue;
            for (int j = 0; j < cols; ++j)
                A.set(i, j, F.sub(A(i, j), F.mul(v, A(r, j))));
        }
        pivots.push_back(c);
        ++r;
    }
    Mat R(F, r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < cols; ++j)
            R.set(i, j, A(i, j));
    return Echelon{std::move(R), std::move(pivots)};
}

Mat kernel_basis(const Mat& M) {
    const Field& F = M.field();
    Echelon E = rref(M);
    int cols = M.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : E.pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c])
            continue;
        Vec v(cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < E.pivots.size(); ++i)
            v[E.pivots[i]] = F.neg(E.R(static_cast<int>(i), c));
        basis.push_back(std::move(v));
    }
    // canonicalize as a row space
    if (basis.empty())
        return Mat(F, 0, cols);
    return rref(Mat::from_rows(F, basis)).R;
}

std::optional<Vec> solve_linear(const Mat& A, std::span<const elem> b) {
    const Field& F = A.field();
    Mat aug(F, A.rows(), A.cols() + 1);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j)
            aug.set(i, j, A(i, j));
        aug.set(i, A.cols(), b[i]);
    }
    Echelon E = rref(aug);
    for (int c : E.pivots)
        if (c == A.cols())
            return std::nullopt; // inconsistent
    Vec x(A.cols(), 0);
    for (size_t i = 0; i < E.pivots.size(); ++i)
        x[E.pivots[i]] = E.R(static_cast<int>(i), A.cols());
    return x;
}

bool in_row_space(const Echelon& E, std::span<const elem> v) {
    const Field& F = E.R.field();
    Vec w(v.begin(), v.end());
    for (size_t i = 0; i < E.pivots.size(); ++i) {
        elem c = w[E.pivots[i]];
        if (c == 0)
            continue;
        for (int j = 0; j < E.R.cols(); ++j)
            w[j] = F.sub(w[j], F.mul(c, E.R(static_cast<int>(i), j)));
    }
    for (elem x : w)
        if (x != 0)
            return false;
    return true;
}

std::vector<Vec> complete_basis(const Field& F, std::vector<Vec> rows, int n) {
    Mat cur = rows.empty() ? Mat(F, 0, n) : Mat::from_rows(F, rows);
    Echelon E = rref(cur);
    int have = E.R.rows();
    if (have != static_cast<int>(rows.size()))
        throw InvalidParams("complete_basis: rows are dependent");
    for (int j = 0; j < n && have < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        if (!in_row_space(E, e)) {
            rows.push_back(e);
            E = rref(Mat::from_rows(F, rows));
            ++have;
        }
    }
    return rows;
}

} // namespace brkit
