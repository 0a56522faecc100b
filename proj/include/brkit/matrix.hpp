#ifndef BRKIT_MATRIX_HPP
#define BRKIT_MATRIX_HPP

#include <optional>
#include <span>
#include <vector>

#include "brkit/errors.hpp"
#include "brkit/field.hpp"

namespace brkit {

using Vec = std::vector<elem>;

// Dense exact matrix over a small finite field, row-major.
class Mat {
public:
    Mat() = default;
    Mat(const Field& F, int rows, int cols)
        : f_(&F), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows) * cols, 0) {}

    static Mat identity(const Field& F, int n);
    // E_{i,j} (0-based) in the given shape
    static Mat unit(const Field& F, int rows, int cols, int i, int j);
    static Mat from_rows(const Field& F, const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    const Field& field() const { return *f_; }

    elem operator()(int i, int j) const {
        return e_[static_cast<size_t>(i) * cols_ + j];
    }
    void set(int i, int j, elem v) {
        e_[static_cast<size_t>(i) * cols_ + j] = v;
    }

    const std::vector<elem>& data() const { return e_; }
    std::vector<elem>& data() { return e_; }

    Vec row(int i) const;
    Vec col(int j) const;

    bool is_zero() const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat scaled(elem c) const;
    Mat transpose() const;
    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

private:
    const Field* f_ = nullptr;
    int rows_ = 0, cols_ = 0;
    std::vector<elem> e_;
};

enum class FormKind { symmetric_nonalternating, alternating, general };

int rank(const Mat& M);
// true iff rank(M) <= r; bails out of the elimination early
bool rank_at_most(const Mat& M, int r);

std::optional<Mat> try_inverse(const Mat& M);
Mat inverse(const Mat& M); // SingularBlock when singular

// P * M * P^T. SingularBlock when P is not invertible.
Mat congruence(const Mat& P, const Mat& M);

// D - B A^{-1} C. SingularBlock when A is not invertible.
Mat schur_complement(const Mat& A, const Mat& B, const Mat& C, const Mat& D);

// alternating iff M^T = -M with zero diagonal (every characteristic)
FormKind classify_form(const Mat& M);

// submatrix on the complementary rows and columns, order preserved (0-based)
Mat delete_rows_cols(const Mat& M, const std::vector<int>& idx);

elem form_eval(const Mat& M, std::span<const elem> X, std::span<const elem> Y);

Vec mat_vec(const Mat& M, std::span<const elem> x);
Vec vec_mat(std::span<const elem> x, const Mat& M);
elem dot(const Field& F, std::span<const elem> a, std::span<const elem> b);

// --- echelon-form toolkit -------------------------------------------------

struct Echelon {
    Mat R;                   // reduced row-echelon form, zero rows dropped
    std::vector<int> pivots; // pivot column per row
};

Echelon rref(const Mat& M);
// rows form the canonical reduced basis of the kernel {x : M x = 0}
Mat kernel_basis(const Mat& M);
// particular solution of A x = b with free variables set to 0
std::optional<Vec> solve_linear(const Mat& A, std::span<const elem> b);
bool in_row_space(const Echelon& E, std::span<const elem> v);
// extends the given independent rows to a basis of F^n using standard vectors
std::vector<Vec> complete_basis(const Field& F, std::vector<Vec> rows, int n);

} // namespace brkit

#endif
