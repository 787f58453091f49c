#pragma once

/**
 * @file quadfield.hpp
 * @brief Elements x + y*sqrt(d) of Z[sqrt(d)] and their images in F_ell.
 *
 * Only split primes are supported: an embedding of Z[sqrt(d)] into F_ell is a
 * choice of square root of d mod ell. Inert primes would need F_(ell^2) and
 * are rejected with errc::inert.
 */

#include <string>
#include <utility>

#include "galcert/arith.hpp"

namespace galcert {

constexpr bool is_square_free(i64 n) {
    if (n < 0) n = -n;
    if (n == 0) return false;
    for (i64 q = 2; q <= n / q; ++q) {
        if (n % (q * q) == 0) return false;
    }
    return true;
}

/// Coefficient ring descriptor: Z (rational) or Z[sqrt(d)] with d square-free, d > 1.
class CoefficientField {
public:
    static constexpr CoefficientField rational() { return CoefficientField(0); }

    static constexpr CoefficientField quadratic(i64 d) {
        if (d <= 1 || !is_square_free(d))
            throw error(errc::invalid_argument, "quadratic field requires square-free d > 1, got " + std::to_string(d));
        return CoefficientField(d);
    }

    constexpr bool is_rational() const { return d_ == 0; }
    /// Radicand; 0 for the rational field.
    constexpr i64 d() const { return d_; }

    friend constexpr bool operator==(CoefficientField, CoefficientField) = default;

private:
    explicit constexpr CoefficientField(i64 d) : d_(d) {}
    i64 d_;
};

class QuadInt {
public:
    /// Rational integer.
    constexpr QuadInt(i64 x = 0) : x_(x), y_(0), field_(CoefficientField::rational()) {}

    constexpr QuadInt(i64 x, i64 y, CoefficientField field) : x_(x), y_(y), field_(field) {
        if (field.is_rational() && y != 0)
            throw error(errc::field_mismatch, "rational value with nonzero sqrt(d) part");
    }

    constexpr i64 x() const { return x_; }
    constexpr i64 y() const { return y_; }
    constexpr CoefficientField field() const { return field_; }
    constexpr bool is_rational_value() const { return y_ == 0; }

    QuadInt operator+(const QuadInt& rhs) const {
        const auto f = common_field(rhs);
        return {checked_add(x_, rhs.x_), checked_add(y_, rhs.y_), f};
    }

    QuadInt operator-(const QuadInt& rhs) const {
        const auto f = common_field(rhs);
        return {checked_sub(x_, rhs.x_), checked_sub(y_, rhs.y_), f};
    }

    QuadInt operator*(const QuadInt& rhs) const {
        const auto f = common_field(rhs);
        // (x + y s)(u + v s) = (xu + yv d) + (xv + yu) s
        const i128 xx = i128{x_} * rhs.x_ + i128{y_} * rhs.y_ * f.d();
        const i128 yy = i128{x_} * rhs.y_ + i128{y_} * rhs.x_;
        return {checked_narrow(xx), checked_narrow(yy), f};
    }

    friend constexpr bool operator==(const QuadInt&, const QuadInt&) = default;

private:
    CoefficientField common_field(const QuadInt& rhs) const {
        if (field_ == rhs.field_) return field_;
        // A rational integer lives in every Z[sqrt(d)].
        if (y_ == 0 && field_.is_rational()) return rhs.field_;
        if (rhs.y_ == 0 && rhs.field_.is_rational()) return field_;
        throw error(errc::field_mismatch, "arithmetic across different quadratic fields");
    }

    i64 x_;
    i64 y_;
    CoefficientField field_;
};

/// A square root of d mod ell; fixes one of the two primes above a split ell.
class EmbeddingChoice {
public:
    constexpr EmbeddingChoice(PrimeModulus ell, i64 d, i64 root) : ell_(ell), d_(d), root_(root) {
        if (root < 0 || root >= ell.value() || ell.mul(root, root) != ell.reduce(d))
            throw error(errc::invalid_argument,
                        "root " + std::to_string(root) + " is not a square root of " + std::to_string(d) + " mod " +
                            std::to_string(ell.value()));
    }

    constexpr PrimeModulus ell() const { return ell_; }
    constexpr i64 d() const { return d_; }
    constexpr i64 root() const { return root_; }

    friend constexpr bool operator==(const EmbeddingChoice&, const EmbeddingChoice&) = default;

private:
    PrimeModulus ell_;
    i64 d_;
    i64 root_;
};

/// True iff ell splits in Q(sqrt(d)); ramified ell (ell | d) is an error.
inline bool splits(i64 d, PrimeModulus ell) {
    if (ell.reduce(d) == 0)
        throw error(errc::ramified, "ramified: " + std::to_string(ell.value()) + " divides " + std::to_string(d));
    return legendre(d, ell) == 1;
}

inline bool splits(i64 d, i64 ell) { return splits(d, PrimeModulus(ell)); }

/// Both roots of d mod ell, smaller first, by exhaustive search.
inline std::pair<EmbeddingChoice, EmbeddingChoice> embedding_choices(i64 d, PrimeModulus ell) {
    if (!splits(d, ell))
        throw error(errc::inert, "no rational embedding: " + std::to_string(ell.value()) + " is inert in Q(sqrt(" +
                                     std::to_string(d) + "))");
    const i64 target = ell.reduce(d);
    for (i64 r = 1; r < ell.value(); ++r) {
        if (ell.mul(r, r) == target) return {EmbeddingChoice(ell, d, r), EmbeddingChoice(ell, d, ell.value() - r)};
    }
    throw error(errc::inert, "no square root found"); // unreachable for split ell
}

inline std::pair<EmbeddingChoice, EmbeddingChoice> embedding_choices(i64 d, i64 ell) {
    return embedding_choices(d, PrimeModulus(ell));
}

/// Image of v under the embedding: (x + y*root) mod ell.
inline Residue reduce(const QuadInt& v, const EmbeddingChoice& e) {
    if (!v.field().is_rational() && v.field().d() != e.d())
        throw error(errc::field_mismatch, "embedding is for sqrt(" + std::to_string(e.d()) + "), value lives in sqrt(" +
                                              std::to_string(v.field().d()) + ")");
    const PrimeModulus ell = e.ell();
    return Residue(ell.reduce(v.x()), ell) + Residue(ell.mul(ell.reduce(v.y()), e.root()), ell);
}

/// Reduction of a rational value; values with a sqrt(d) part need an embedding.
inline Residue reduce(const QuadInt& v, PrimeModulus ell) {
    if (!v.is_rational_value())
        throw error(errc::field_mismatch, "value has a sqrt(d) part; supply an embedding");
    return Residue(v.x(), ell);
}

/// a_p^2 - 4 p^(k-1) as a rational integer. a_p^2 must be rational, which
/// holds when a_p is rational or a pure multiple of sqrt(d).
inline i64 norm_discriminant(const QuadInt& a, i64 p, int weight) {
    if (weight < 2) throw error(errc::invalid_argument, "weight must be at least 2");
    i64 square = 0;
    if (a.y() == 0) {
        square = checked_mul(a.x(), a.x());
    } else if (a.x() == 0) {
        square = checked_mul(checked_mul(a.y(), a.y()), a.field().d());
    } else {
        throw error(errc::not_rational, "discriminant not rational; supply embedding first");
    }
    return checked_sub(square, checked_mul(4, checked_pow(p, weight - 1)));
}

} // namespace galcert
