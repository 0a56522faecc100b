#include "brkit/field.hpp"

namespace brkit {

namespace {

// GF(4) as bit pairs (b,a) for b*w + a; addition is xor,
// multiplication expands (b1 w + a1)(b2 w + a2) with w^2 = w+1.
elem gf4_mul(elem x, elem y) {
    int a1 = x & 1, b1 = (x >> 1) & 1;
    int a2 = y & 1, b2 = (y >> 1) & 1;
    int c = (a1 & a2) ^ (b1 & b2);          // constant term
    int b = (a1 & b2) ^ (a2 & b1) ^ (b1 & b2); // w term
    return static_cast<elem>((b << 1) | c);
}

} // namespace

Field::Field(int q) : q_(q) {
    switch (q) {
    case 2: p_ = 2; k_ = 1; break;
    case 3: p_ = 3; k_ = 1; break;
    case 4: p_ = 2; k_ = 2; break;
    case 5: p_ = 5; k_ = 1; break;
    case 7: p_ = 7; k_ = 1; break;
    default:
        throw UnsupportedCardinality("unsupported field cardinality " +
                                     std::to_string(q));
    }

    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (q == 4) {
                add_[a][b] = static_cast<elem>(a ^ b);
                mul_[a][b] =
                    gf4_mul(static_cast<elem>(a), static_cast<elem>(b));
            } else {
                add_[a][b] = static_cast<elem>((a + b) % q);
                mul_[a][b] = static_cast<elem>((a * b) % q);
            }
        }
    }
    for (int a = 0; a < q; ++a) {
        for (int b = 0; b < q; ++b) {
            if (add_[a][b] == 0)
                neg_[a] = static_cast<elem>(b);
            if (a != 0 && mul_[a][b] == 1)
                inv_[a] = static_cast<elem>(b);
            if (p_ == 2 && mul_[b][b] == a)
                sqrt_[a] = static_cast<elem>(b);
        }
    }
}

const Field& Field::make(int q) {
    switch (q) {
    case 2: { static const Field f(2); return f; }
    case 3: { static const Field f(3); return f; }
    case 4: { static const Field f(4); return f; }
    case 5: { static const Field f(5); return f; }
    case 7: { static const Field f(7); return f; }
    default:
        throw UnsupportedCardinality("unsupported field cardinality " +
                                     std::to_string(q));
    }
}

} // namespace brkit
