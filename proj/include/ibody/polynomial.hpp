#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ibody/linalg.hpp"

namespace ibody {

// Exponent vector; length = number of variables.
using Monomial = std::vector<std::uint32_t>;

// Graded lexicographic with x1 > x2 > ... > xd, largest term first. The one
// monomial order used everywhere, so every polynomial has a single canonical
// text form and a well-defined leading coefficient.
struct GradedLexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint64_t da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da > db;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] > b[i];
        }
        return false;
    }
};

// Sparse exact multivariate polynomial over the rationals.
class Poly {
public:
    using TermMap = std::map<Monomial, Rat, GradedLexDescending>;

    Poly() = default; // zero polynomial in zero variables
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rat& c);
    static Poly variable(std::size_t nvars, std::size_t index);
    // <coeffs, x> as a degree-1 polynomial.
    static Poly linear_form(const RatVec& coeffs);

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    // += c * x^m; erases the term if the sum cancels.
    void add_term(const Monomial& m, const Rat& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    bool operator==(const Poly& o) const {
        return nvars_ == o.nvars_ && terms_ == o.terms_;
    }

    Rat evaluate(const RatVec& x) const;

    // Common total degree when every monomial shares it (0 for the zero
    // polynomial), absent otherwise.
    std::optional<unsigned> homogeneous_degree() const;
    unsigned total_degree() const; // 0 for the zero polynomial

private:
    std::size_t nvars_ = 0;
    TermMap terms_;
};

// Exact determinant of a polynomial matrix by Laplace expansion with
// memoization on column subsets (minors shared across cofactors). Matrices
// whose entries are all homogeneous linear forms — the only shape the main
// pipeline produces — take a dense fixed-degree fast path.
Poly poly_det(const std::vector<std::vector<Poly>>& m);

// g with p = f*g exactly, or absent when f does not divide p. Multivariate
// division under the graded-lex order with a remainder-is-zero check.
std::optional<Poly> exact_divide(const Poly& p, const Poly& f);

// (c*p, c) for the unique scale c making all coefficients integral and
// globally coprime with positive graded-lex leading coefficient.
std::pair<Poly, Rat> normalize(const Poly& p);

// One common scale for a numerator/denominator pair, preserving their ratio:
// all coefficients of both integral with joint content 1, sign fixed so the
// denominator is positive at sign_point. Numerator may be zero; denominator
// must not vanish at sign_point.
std::pair<Poly, Poly> normalize_pair(const Poly& p, const Poly& q,
                                     const RatVec& sign_point);

// "x", "y", "z", "w" for up to 4 variables, else "x1".."xd".
std::string variable_name(std::size_t nvars, std::size_t index);

// Canonical text: graded-lex order, e.g. "3*x*y*z - x^2 - 2*x*y".
std::string poly_to_string(const Poly& p);

// Inverse of poly_to_string (accepts any sum of rational-coefficient
// monomial terms in the same syntax).
Poly parse_poly(const std::string& text, std::size_t nvars);

} // namespace ibody
