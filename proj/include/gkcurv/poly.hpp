#pragma once
// Laurent polynomials over Q(i) in coordinates x_j and phases E_j = exp(i x_j).
//
// A term is c * x^a * E^k with a >= 0 and k in Z. Since x and exp(ix) are
// algebraically independent, two such polynomials define the same function
// iff their term lists agree, which is what makes equality decidable.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gkcurv/gauss.hpp"

namespace gkcurv {

inline constexpr int kMaxCoords = 8;
inline constexpr int kSlots = 2 * kMaxCoords;  // x_0..x_7, then E_0..E_7

inline constexpr int xslot(int j) { return j; }
inline constexpr int eslot(int j) { return kMaxCoords + j; }

struct Mono {
    std::array<int16_t, kSlots> e{};

    int total() const {
        int s = 0;
        for (auto v : e) s += v;
        return s;
    }
    bool is_one() const {
        for (auto v : e)
            if (v != 0) return false;
        return true;
    }
    Mono operator*(const Mono& o) const {
        Mono r;
        for (int s = 0; s < kSlots; ++s) r.e[s] = static_cast<int16_t>(e[s] + o.e[s]);
        return r;
    }
    Mono operator/(const Mono& o) const {
        Mono r;
        for (int s = 0; s < kSlots; ++s) r.e[s] = static_cast<int16_t>(e[s] - o.e[s]);
        return r;
    }
    bool divisible_by(const Mono& o) const {
        for (int s = 0; s < kSlots; ++s)
            if (e[s] < o.e[s]) return false;
        return true;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.e == b.e; }
    friend bool operator!=(const Mono& a, const Mono& b) { return a.e != b.e; }
};

/// Graded lexicographic: compare signed total degree, then slots left to right.
/// Translation invariant, so it is a monomial order on the polynomial part.
inline int mono_cmp(const Mono& a, const Mono& b) {
    int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb ? -1 : 1;
    for (int s = 0; s < kSlots; ++s)
        if (a.e[s] != b.e[s]) return a.e[s] < b.e[s] ? -1 : 1;
    return 0;
}

struct Term {
    Mono m;
    GaussRat c;
};

class Poly {
public:
    Poly() = default;
    explicit Poly(const GaussRat& c);
    static Poly term(const Mono& m, const GaussRat& c);
    static Poly var_x(int j);
    /// E_j^k
    static Poly phase(int j, int k);

    const std::vector<Term>& terms() const { return t_; }
    size_t size() const { return t_.size(); }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    bool is_monomial() const { return t_.size() == 1; }
    GaussRat constant_value() const;  // precondition: is_constant()
    const Term& lead() const { return t_.front(); }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const GaussRat& c) const;
    Poly shifted(const Mono& m) const;  // multiply by a (Laurent) monomial
    Poly pow(unsigned k) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    /// Deterministic total order on polynomials (used for canonical sorting).
    friend int poly_cmp(const Poly& a, const Poly& b);

    /// Slotwise minimum exponent over all terms (zero polynomial: all zeros).
    Mono min_exponents() const;
    int max_exp(int slot) const;
    bool uses_slot(int slot) const;
    /// Coordinates whose x-slot or E-slot appears.
    unsigned coord_mask() const;

    /// Complex conjugate as a function of real coordinates: c -> conj(c), E -> E^{-1}.
    Poly conj() const;
    /// d/dx_j, using d(E_j)/dx_j = i E_j.
    Poly partial(int j) const;
    Poly monic() const;  // leading coefficient 1

    /// Substitute x_j -> xs[j], E_j -> es[j]; es entries must be invertible.
    GaussRat eval(const std::vector<GaussRat>& xs, const std::vector<GaussRat>& es) const;

    /// Coefficients with respect to slot `s`: result[d] has the s-exponent removed.
    /// Requires nonnegative exponents in s.
    std::vector<Poly> coeffs_in(int s) const;

    static Poly from_terms(std::vector<Term> terms);  // sorts and merges

private:
    std::vector<Term> t_;  // strictly decreasing monomials, nonzero coefficients
    friend class PolyBuilder;
};

/// Exact quotient a/b when b divides a in the polynomial ring (both with
/// nonnegative exponents); nullopt otherwise.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
/// Monic gcd of two polynomials with nonnegative exponents.
Poly poly_gcd(const Poly& a, const Poly& b);
/// gcd of Laurent polynomials: each is shifted to clear monomial factors first.
Poly laurent_gcd(const Poly& a, const Poly& b);
/// a / g in the Laurent ring where g has nonnegative exponents and divides a.
Poly laurent_divide(const Poly& a, const Poly& g);

}  // namespace gkcurv
