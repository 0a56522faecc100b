#include <doctest.h>

#include "brkit/matrix.hpp"
#include "brkit/rng.hpp"
#include "brkit/space.hpp"

using namespace brkit;

namespace {

Mat rand_mat(const Field& F, int rows, int cols, Rng& rng) {
    Mat M(F, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            M.set(i, j, static_cast<elem>(rng.uniform(F.q())));
    return M;
}

Mat assemble_block(const Mat& A, const Mat& B, const Mat& C, const Mat& D) {
    const Field& F = A.field();
    int r = A.rows(), n = r + B.rows();
    Mat M(F, n, n);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            M.set(i, j, A(i, j));
    for (int i = 0; i < n - r; ++i)
        for (int j = 0; j < r; ++j)
            M.set(r + i, j, B(i, j));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n - r; ++j)
            M.set(i, r + j, C(i, j));
    for (int i = 0; i < n - r; ++i)
        for (int j = 0; j < n - r; ++j)
            M.set(r + i, r + j, D(i, j));
    return M;
}

} // namespace

TEST_CASE("rank examples") {
    const Field& F2 = Field::make(2);
    const Field& F3 = Field::make(3);
    CHECK(rank(Mat::identity(F2, 3)) == 3);

    Mat ones(F2, 2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            ones.set(i, j, 1);
    CHECK(rank(ones) == 1);

    Mat e12(F3, 3, 3);
    e12.set(0, 1, 1);
    e12.set(1, 0, 1);
    CHECK(rank(e12) == 2);
}

TEST_CASE("schur complement examples") {
    const Field& F2 = Field::make(2);
    Mat A = Mat::identity(F2, 2), Z(F2, 2, 2);
    Mat sc = schur_complement(A, Z, Z, Z);
    CHECK(sc.is_zero());
    CHECK(rank(assemble_block(A, Z, Z, Z)) == 2);

    const Field& F5 = Field::make(5);
    Mat a(F5, 1, 1), b(F5, 1, 1), c(F5, 1, 1), d(F5, 1, 1);
    a.set(0, 0, 1);
    b.set(0, 0, 2);
    c.set(0, 0, 2);
    d.set(0, 0, 4);
    Mat s = schur_complement(a, b, c, d);
    CHECK(s(0, 0) == 0);
    CHECK(rank(assemble_block(a, b, c, d)) == 1);

    Mat sing(F5, 2, 2);
    sing.set(0, 0, 1);
    CHECK_THROWS_AS(schur_complement(sing, Z, Z, Z), SingularBlock);
}

TEST_CASE("schur identity on random blocks over GF(3)") {
    const Field& F = Field::make(3);
    Rng rng(2024);
    int n = 5, r = 2;
    for (int trial = 0; trial < 1000; ++trial) {
        Mat A = random_invertible(F, r, rng);
        Mat B = rand_mat(F, n - r, r, rng);
        Mat C = rand_mat(F, r, n - r, rng);
        Mat D = rand_mat(F, n - r, n - r, rng);
        CHECK(rank(assemble_block(A, B, C, D)) ==
              r + rank(schur_complement(A, B, C, D)));
    }
}

TEST_CASE("congruence examples and invariants") {
    const Field& F3 = Field::make(3);
    Rng rng0(1);
    Mat M = rand_mat(F3, 4, 4, rng0);
    CHECK(congruence(Mat::identity(F3, 4), M) == M);

    Mat P(F3, 2, 2);
    P.set(0, 1, 1);
    P.set(1, 0, 1);
    CHECK(congruence(P, Mat::unit(F3, 2, 2, 0, 0)) ==
          Mat::unit(F3, 2, 2, 1, 1));

    Mat sing(F3, 4, 4);
    CHECK_THROWS_AS(congruence(sing, M), SingularBlock);

    Rng rng(7);
    for (int t = 0; t < 200; ++t) {
        Mat A(F3, 4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                elem v = static_cast<elem>(rng.uniform(3));
                A.set(i, j, v);
                A.set(j, i, F3.neg(v));
            }
        Mat Q = random_invertible(F3, 4, rng);
        Mat B = congruence(Q, A);
        CHECK(classify_form(B) == FormKind::alternating);
        CHECK(rank(B) == rank(A));
        CHECK(classify_form(B) == classify_form(A));
    }
}

TEST_CASE("classify_form examples") {
    const Field& F3 = Field::make(3);
    const Field& F2 = Field::make(2);

    Mat alt3(F3, 3, 3);
    alt3.set(0, 1, 1);
    alt3.set(1, 0, 2);
    CHECK(classify_form(alt3) == FormKind::alternating);

    Mat sp2(F2, 2, 2);
    sp2.set(0, 1, 1);
    sp2.set(1, 0, 1);
    CHECK(classify_form(sp2) == FormKind::alternating);

    CHECK(classify_form(Mat::unit(F2, 2, 2, 0, 0)) ==
          FormKind::symmetric_nonalternating);

    Mat gen(F3, 2, 2);
    gen.set(0, 1, 1);
    CHECK(classify_form(gen) == FormKind::general);
}

TEST_CASE("delete_rows_cols examples") {
    const Field& F3 = Field::make(3);
    Rng rng(11);
    Mat M = rand_mat(F3, 5, 5, rng);

    Mat center = delete_rows_cols(M, {0, 4});
    CHECK(center.rows() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(center(i, j) == M(i + 1, j + 1));

    CHECK(delete_rows_cols(M, {}) == M);
    CHECK_THROWS_AS(delete_rows_cols(M, {7}), IndexOutOfRange);
}

TEST_CASE("deleting the coupled rows of a one-row pattern leaves zero") {
    // members of the WA_{5,1,1} pattern live in row/column 1 only
    const Field& F2 = Field::make(2);
    Rng rng(3);
    for (int t = 0; t < 50; ++t) {
        Mat M(F2, 5, 5);
        for (int j = 1; j < 5; ++j) {
            elem v = static_cast<elem>(rng.uniform(2));
            M.set(0, j, v);
            M.set(j, 0, v); // -v = v over GF(2)
        }
        CHECK(delete_rows_cols(M, {0, 4}).is_zero());
    }
}

TEST_CASE("form_eval examples") {
    const Field& F2 = Field::make(2);
    const Field& F3 = Field::make(3);

    Vec e1 = {1, 0};
    CHECK(form_eval(Mat::identity(F2, 2), e1, e1) == 1);

    Mat A(F3, 3, 3);
    A.set(0, 1, 1);
    A.set(1, 0, 2);
    Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        Vec X = {static_cast<elem>(rng.uniform(3)),
                 static_cast<elem>(rng.uniform(3)),
                 static_cast<elem>(rng.uniform(3))};
        CHECK(form_eval(A, X, X) == 0);
    }

    Vec ones = {1, 1};
    CHECK(form_eval(Mat::unit(F2, 2, 2, 0, 0), ones, ones) == 1);
}

TEST_CASE("alternating matrices have even rank") {
    for (int q : {2, 3}) {
        const Field& F = Field::make(q);
        for (int n = 2; n <= 4; ++n) {
            std::vector<Mat> gens;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    gens.push_back(Mat::unit(F, n, n, i, j) -
                                   Mat::unit(F, n, n, j, i));
            MatSpace full = MatSpace::make(F, SpaceKind::alt, n, gens);
            ProjectiveIter it(q, full.dim());
            Vec c;
            while (it.next(c))
                CHECK(rank(full.member_from_coeffs(c)) % 2 == 0);
        }
    }
}

TEST_CASE("echelon toolkit") {
    const Field& F3 = Field::make(3);
    Mat A = Mat::from_rows(F3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 0}});
    Echelon E = rref(A);
    CHECK(E.R.rows() == 2);
    CHECK(E.pivots == std::vector<int>{0, 1});

    Mat K = kernel_basis(A);
    CHECK(K.rows() == 1);
    CHECK(mat_vec(A, K.row(0)) == Vec{0, 0, 0});

    auto x = solve_linear(A, Vec{0, 0, 1});
    CHECK(!x.has_value());
    auto y = solve_linear(A, Vec{1, 2, 0});
    REQUIRE(y.has_value());
    CHECK(mat_vec(A, *y) == Vec{1, 2, 0});

    auto basis = complete_basis(F3, {{1, 1, 1}}, 3);
    CHECK(basis.size() == 3);
    CHECK(rank(Mat::from_rows(F3, basis)) == 3);
}
