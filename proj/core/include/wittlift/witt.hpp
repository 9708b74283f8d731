#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "wittlift/errors.hpp"

namespace wittlift {

/// Base-ring parameters. The base is the unramified ring of p-adic
/// integers, so the ramification index is 1 and the uniformizer is p
/// itself; only the prime varies.
struct RingParams {
    explicit RingParams(std::uint32_t prime);

    std::uint32_t p;
    static constexpr std::uint32_t ramification_index = 1;
    std::uint32_t uniformizer() const { return p; }

    bool operator==(const RingParams&) const = default;
};

bool is_prime(std::uint64_t n);

/// p^m as uint64, throwing if the modulus would exceed 2^32 (products of
/// residues must fit in uint64, and uint128 paths assume the same bound).
std::uint64_t prime_power(std::uint32_t p, std::uint32_t m);

/// (a*b) mod n without overflow.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n);

/// An exact residue in W_m = Z/p^m, tagged with its modulus.
class WittInt {
  public:
    WittInt(std::uint32_t p, std::uint32_t m, std::uint64_t value);

    std::uint64_t value() const { return value_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t modulus() const { return pm_; }
    bool is_zero() const { return value_ == 0; }

    /// p-adic valuation; nullopt encodes "at least m" (the value 0).
    std::optional<std::uint32_t> ord() const;

    /// Multiplicative inverse mod p^m; requires ord() == 0.
    WittInt unit_inverse() const;

    WittInt operator-() const;
    friend WittInt operator+(const WittInt& a, const WittInt& b);
    friend WittInt operator-(const WittInt& a, const WittInt& b);
    friend WittInt operator*(const WittInt& a, const WittInt& b);
    bool operator==(const WittInt&) const = default;

  private:
    std::uint64_t value_;
    std::uint32_t p_;
    std::uint32_t m_;
    std::uint64_t pm_;
};

/// ord_p(n!) by Legendre's formula (n - digit sum base p) / (p - 1).
std::uint64_t factorial_valuation(std::uint32_t p, std::uint64_t n);

/// The unit u with n! = p^{ord_p(n!)} u, reduced mod p^m. Exact
/// big-integer division, no modular inverse involved.
WittInt factorial_unit_part(std::uint32_t p, std::uint64_t n, std::uint32_t m);

/// C(a, b) mod p^m, exact big-integer intermediate.
WittInt binomial_mod(std::uint32_t p, std::uint64_t a, std::uint64_t b, std::uint32_t m);

/// (n a)! / (n! (a!)^n) mod p^m, the constant governing composed divided
/// powers gamma^n(gamma^a(x)). The quotient is an integer; computed by
/// exact big-integer division.
WittInt pd_composition_constant(std::uint32_t p, std::uint64_t n, std::uint64_t a,
                                std::uint32_t m);

/// Rectangular matrix over a single modulus p^m.
class ZpMatrix {
  public:
    ZpMatrix(std::uint32_t p, std::uint32_t m, std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t modulus() const { return pm_; }

    std::uint64_t at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, std::uint64_t v);

    WittInt entry(std::size_t r, std::size_t c) const;

    bool operator==(const ZpMatrix&) const = default;

  private:
    std::uint32_t p_, m_;
    std::uint64_t pm_;
    std::size_t rows_, cols_;
    std::vector<std::uint64_t> data_;
};

/// One solution of A x = b together with a generating set of ker A as a
/// Z/p^m-module.
struct LinearSolution {
    std::vector<std::uint64_t> x;
    std::vector<std::vector<std::uint64_t>> kernel_basis;
};

/// Inconsistency witness: a row combination c with c^T A = 0 but
/// c^T b != 0 mod p^m.
struct NoSolutionCertificate {
    std::vector<std::uint64_t> combination;
    std::uint64_t residual; // c^T b, nonzero
};

using LinearOutcome = std::variant<LinearSolution, NoSolutionCertificate>;

/// Solve A x = b over Z/p^m by valuation-pivoted elimination. Among
/// remaining entries the pivot is one of minimal valuation, ties broken
/// by lowest row index, then lowest column index, so results are
/// deterministic. Unsolvability is a value, not an error.
LinearOutcome solve_linear(const ZpMatrix& A, const std::vector<WittInt>& b);

/// Same solver on raw residues, modulus passed explicitly.
LinearOutcome solve_linear_raw(std::uint32_t p, std::uint32_t m,
                               const std::vector<std::vector<std::uint64_t>>& A,
                               const std::vector<std::uint64_t>& b);

} // namespace wittlift
