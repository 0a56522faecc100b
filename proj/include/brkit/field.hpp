#ifndef BRKIT_FIELD_HPP
#define BRKIT_FIELD_HPP

#include <array>
#include <cstdint>

#include "brkit/errors.hpp"

namespace brkit {

// Field element, encoded as an integer in [0, q-1].
// For GF(4): 0 -> 0, 1 -> 1, 2 -> w, 3 -> w+1 with w^2 = w+1.
using elem = std::uint8_t;

// Exact arithmetic for GF(q), q in {2,3,4,5,7}. All operations are table
// lookups; instances are immutable singletons.
class Field {
public:
    static const Field& make(int q); // UnsupportedCardinality otherwise

    int q() const { return q_; }
    int characteristic() const { return p_; }
    int degree() const { return k_; }
    bool char2() const { return p_ == 2; }

    elem add(elem a, elem b) const { return add_[a][b]; }
    elem sub(elem a, elem b) const { return add_[a][neg_[b]]; }
    elem mul(elem a, elem b) const { return mul_[a][b]; }
    elem neg(elem a) const { return neg_[a]; }

    elem inv(elem a) const {
        if (a == 0)
            throw DivisionByZero("inv(0) in GF(" + std::to_string(q_) + ")");
        return inv_[a];
    }

    // Inverse of the Frobenius square; defined since GF(2) and GF(4) are
    // perfect. Only meaningful in characteristic 2.
    elem sqrt(elem a) const {
        if (p_ != 2)
            throw InvalidParams("sqrt is only provided in characteristic 2");
        return sqrt_[a];
    }

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

private:
    explicit Field(int q);

    int q_, p_, k_;
    std::array<std::array<elem, 8>, 8> add_{};
    std::array<std::array<elem, 8>, 8> mul_{};
    std::array<elem, 8> neg_{};
    std::array<elem, 8> inv_{};
    std::array<elem, 8> sqrt_{};
};

} // namespace brkit

#endif
