#include "wittlift/witt.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>

namespace wittlift {

using boost::multiprecision::cpp_int;

namespace {

// Valuation of a canonical residue; m encodes ">= m" (only the residue 0).
std::uint32_t val_of(std::uint64_t v, std::uint32_t p, std::uint32_t m) {
    if (v == 0)
        return m;
    std::uint32_t k = 0;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    return k;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1)
        throw NonUnitError("element is not invertible modulo p^m");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(n) : t);
}

cpp_int factorial_big(std::uint64_t n) {
    cpp_int f = 1;
    for (std::uint64_t i = 2; i <= n; ++i)
        f *= i;
    return f;
}

std::uint64_t to_residue(const cpp_int& v, std::uint64_t pm) {
    cpp_int r = v % pm;
    if (r < 0)
        r += pm;
    return r.convert_to<std::uint64_t>();
}

} // namespace

RingParams::RingParams(std::uint32_t prime) : p(prime) {
    if (!is_prime(prime))
        throw Error("p must be prime");
}

bool is_prime(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::uint64_t prime_power(std::uint32_t p, std::uint32_t m) {
    if (p < 2)
        throw Error("p must be at least 2");
    if (m == 0)
        throw Error("precision exponent must be at least 1");
    std::uint64_t r = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        r *= p;
        if (r > 0xFFFFFFFFull)
            throw Error("modulus p^m exceeds the supported range (2^32)");
    }
    return r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
}

WittInt::WittInt(std::uint32_t p, std::uint32_t m, std::uint64_t value)
    : p_(p), m_(m), pm_(prime_power(p, m)) {
    value_ = value % pm_;
}

std::optional<std::uint32_t> WittInt::ord() const {
    std::uint32_t v = val_of(value_, p_, m_);
    if (v >= m_)
        return std::nullopt;
    return v;
}

WittInt WittInt::unit_inverse() const {
    if (value_ % p_ == 0)
        throw NonUnitError("unit_inverse: element has positive valuation");
    return WittInt(p_, m_, inverse_mod(value_, pm_));
}

WittInt WittInt::operator-() const {
    return WittInt(p_, m_, value_ == 0 ? 0 : pm_ - value_);
}

namespace {
void check_same_modulus(const WittInt& a, const WittInt& b) {
    if (a.p() != b.p() || a.m() != b.m())
        throw ModulusMismatchError("operands live over different moduli");
}
} // namespace

WittInt operator+(const WittInt& a, const WittInt& b) {
    check_same_modulus(a, b);
    return WittInt(a.p(), a.m(), (a.value() + b.value()) % a.modulus());
}

WittInt operator-(const WittInt& a, const WittInt& b) {
    check_same_modulus(a, b);
    return WittInt(a.p(), a.m(), (a.value() + a.modulus() - b.value()) % a.modulus());
}

WittInt operator*(const WittInt& a, const WittInt& b) {
    check_same_modulus(a, b);
    return WittInt(a.p(), a.m(), mul_mod(a.value(), b.value(), a.modulus()));
}

std::uint64_t factorial_valuation(std::uint32_t p, std::uint64_t n) {
    std::uint64_t digit_sum = 0;
    for (std::uint64_t k = n; k > 0; k /= p)
        digit_sum += k % p;
    return (n - digit_sum) / (p - 1);
}

WittInt factorial_unit_part(std::uint32_t p, std::uint64_t n, std::uint32_t m) {
    std::uint64_t pm = prime_power(p, m);
    cpp_int f = factorial_big(n);
    std::uint64_t v = factorial_valuation(p, n);
    for (std::uint64_t i = 0; i < v; ++i)
        f /= p;
    return WittInt(p, m, to_residue(f, pm));
}

WittInt binomial_mod(std::uint32_t p, std::uint64_t a, std::uint64_t b, std::uint32_t m) {
    if (b > a)
        throw Error("binomial_mod: require b <= a");
    std::uint64_t pm = prime_power(p, m);
    cpp_int num = 1;
    for (std::uint64_t i = 0; i < b; ++i)
        num *= a - i;
    num /= factorial_big(b);
    return WittInt(p, m, to_residue(num, pm));
}

WittInt pd_composition_constant(std::uint32_t p, std::uint64_t n, std::uint64_t a,
                                std::uint32_t m) {
    std::uint64_t pm = prime_power(p, m);
    cpp_int num = factorial_big(n * a);
    cpp_int den = factorial_big(n);
    cpp_int fa = factorial_big(a);
    for (std::uint64_t i = 0; i < n; ++i)
        den *= fa;
    cpp_int q = num / den;
    if (q * den != num)
        throw Error("pd_composition_constant: quotient is not integral");
    return WittInt(p, m, to_residue(q, pm));
}

ZpMatrix::ZpMatrix(std::uint32_t p, std::uint32_t m, std::size_t rows, std::size_t cols)
    : p_(p), m_(m), pm_(prime_power(p, m)), rows_(rows), cols_(cols),
      data_(rows * cols, 0) {}

std::uint64_t ZpMatrix::at(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
}

void ZpMatrix::set(std::size_t r, std::size_t c, std::uint64_t v) {
    data_[r * cols_ + c] = v % pm_;
}

WittInt ZpMatrix::entry(std::size_t r, std::size_t c) const {
    return WittInt(p_, m_, at(r, c));
}

namespace {

struct Eliminator {
    std::uint32_t p, m;
    std::uint64_t pm;
    std::size_t R, C;
    std::vector<std::vector<std::uint64_t>> M; // U * A * V
    std::vector<std::vector<std::uint64_t>> U; // row transform, R x R
    std::vector<std::vector<std::uint64_t>> V; // column transform, C x C
    std::vector<std::uint32_t> pivot_vals;
    std::size_t rank = 0;

    Eliminator(std::uint32_t p_, std::uint32_t m_,
               const std::vector<std::vector<std::uint64_t>>& A)
        : p(p_), m(m_), pm(prime_power(p_, m_)), R(A.size()),
          C(R ? A[0].size() : 0), M(A) {
        for (auto& row : M)
            for (auto& x : row)
                x %= pm;
        U.assign(R, std::vector<std::uint64_t>(R, 0));
        for (std::size_t i = 0; i < R; ++i)
            U[i][i] = 1;
        V.assign(C, std::vector<std::uint64_t>(C, 0));
        for (std::size_t j = 0; j < C; ++j)
            V[j][j] = 1;
    }

    void row_scale(std::size_t i, std::uint64_t f) {
        for (std::size_t j = 0; j < C; ++j)
            M[i][j] = mul_mod(M[i][j], f, pm);
        for (std::size_t j = 0; j < R; ++j)
            U[i][j] = mul_mod(U[i][j], f, pm);
    }

    void row_axpy(std::size_t dst, std::size_t src, std::uint64_t f) {
        // row_dst -= f * row_src
        for (std::size_t j = 0; j < C; ++j)
            M[dst][j] = (M[dst][j] + pm - mul_mod(f, M[src][j], pm)) % pm;
        for (std::size_t j = 0; j < R; ++j)
            U[dst][j] = (U[dst][j] + pm - mul_mod(f, U[src][j], pm)) % pm;
    }

    void col_axpy(std::size_t dst, std::size_t src, std::uint64_t f) {
        // col_dst -= f * col_src; variables satisfy x = V y
        for (std::size_t i = 0; i < R; ++i)
            M[i][dst] = (M[i][dst] + pm - mul_mod(f, M[i][src], pm)) % pm;
        for (std::size_t i = 0; i < C; ++i)
            V[i][dst] = (V[i][dst] + pm - mul_mod(f, V[i][src], pm)) % pm;
    }

    void run() {
        std::size_t steps = std::min(R, C);
        for (std::size_t k = 0; k < steps; ++k) {
            // minimal-valuation pivot, ties by lowest row then column index
            std::uint32_t best = m;
            std::size_t bi = k, bj = k;
            for (std::size_t i = k; i < R; ++i)
                for (std::size_t j = k; j < C; ++j) {
                    std::uint32_t v = val_of(M[i][j], p, m);
                    if (v < best) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            if (best >= m)
                break; // remaining submatrix is zero
            std::swap(M[k], M[bi]);
            std::swap(U[k], U[bi]);
            if (bj != k) {
                for (std::size_t i = 0; i < R; ++i)
                    std::swap(M[i][k], M[i][bj]);
                for (std::size_t i = 0; i < C; ++i)
                    std::swap(V[i][k], V[i][bj]);
            }
            std::uint64_t pv = 1;
            for (std::uint32_t i = 0; i < best; ++i)
                pv *= p;
            std::uint64_t unit = M[k][k] / pv;
            row_scale(k, inverse_mod(unit, pm));
            // every remaining entry has valuation >= best, so the
            // canonical representative divides exactly
            for (std::size_t i = k + 1; i < R; ++i)
                if (M[i][k] != 0)
                    row_axpy(i, k, M[i][k] / pv);
            for (std::size_t j = k + 1; j < C; ++j)
                if (M[k][j] != 0)
                    col_axpy(j, k, M[k][j] / pv);
            pivot_vals.push_back(best);
            ++rank;
        }
    }

    std::vector<std::uint64_t> apply_U(const std::vector<std::uint64_t>& b) const {
        std::vector<std::uint64_t> c(R, 0);
        for (std::size_t i = 0; i < R; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < R; ++j)
                acc = (acc + mul_mod(U[i][j], b[j] % pm, pm)) % pm;
            c[i] = acc;
        }
        return c;
    }

    std::vector<std::uint64_t> apply_V(const std::vector<std::uint64_t>& y) const {
        std::vector<std::uint64_t> x(C, 0);
        for (std::size_t i = 0; i < C; ++i) {
            std::uint64_t acc = 0;
            for (std::size_t j = 0; j < C; ++j)
                acc = (acc + mul_mod(V[i][j], y[j], pm)) % pm;
            x[i] = acc;
        }
        return x;
    }
};

} // namespace

LinearOutcome solve_linear_raw(std::uint32_t p, std::uint32_t m,
                               const std::vector<std::vector<std::uint64_t>>& A,
                               const std::vector<std::uint64_t>& b) {
    Eliminator e(p, m, A);
    if (b.size() != e.R)
        throw Error("solve_linear: dimension mismatch between matrix and rhs");
    e.run();
    std::vector<std::uint64_t> c = e.apply_U(b);

    std::vector<std::uint64_t> y(e.C, 0);
    for (std::size_t k = 0; k < e.rank; ++k) {
        std::uint64_t pv = 1;
        for (std::uint32_t i = 0; i < e.pivot_vals[k]; ++i)
            pv *= p;
        if (c[k] % pv != 0) {
            std::uint64_t scale = e.pm / pv; // p^{m - v_k}
            NoSolutionCertificate cert;
            cert.combination.resize(e.R, 0);
            for (std::size_t j = 0; j < e.R; ++j)
                cert.combination[j] = mul_mod(scale, e.U[k][j], e.pm);
            cert.residual = mul_mod(scale, c[k], e.pm);
            return cert;
        }
        y[k] = c[k] / pv;
    }
    for (std::size_t k = e.rank; k < e.R; ++k) {
        if (c[k] != 0) {
            NoSolutionCertificate cert;
            cert.combination = e.U[k];
            cert.residual = c[k];
            return cert;
        }
    }

    LinearSolution sol;
    sol.x = e.apply_V(y);
    for (std::size_t k = 0; k < e.rank; ++k) {
        if (e.pivot_vals[k] == 0)
            continue;
        std::uint64_t ann = e.pm;
        for (std::uint32_t i = 0; i < e.pivot_vals[k]; ++i)
            ann /= p;
        std::vector<std::uint64_t> gen(e.C, 0);
        for (std::size_t i = 0; i < e.C; ++i)
            gen[i] = mul_mod(ann, e.V[i][k], e.pm);
        sol.kernel_basis.push_back(std::move(gen));
    }
    for (std::size_t k = e.rank; k < e.C; ++k) {
        std::vector<std::uint64_t> gen(e.C, 0);
        for (std::size_t i = 0; i < e.C; ++i)
            gen[i] = e.V[i][k];
        sol.kernel_basis.push_back(std::move(gen));
    }
    return sol;
}

LinearOutcome solve_linear(const ZpMatrix& A, const std::vector<WittInt>& b) {
    if (b.size() != A.rows())
        throw Error("solve_linear: dimension mismatch between matrix and rhs");
    std::vector<std::vector<std::uint64_t>> rows(A.rows(),
                                                 std::vector<std::uint64_t>(A.cols(), 0));
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j)
            rows[i][j] = A.at(i, j);
    std::vector<std::uint64_t> rhs(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].p() != A.p() || b[i].m() != A.m())
            throw ModulusMismatchError("solve_linear: rhs modulus differs from matrix");
        rhs[i] = b[i].value();
    }
    return solve_linear_raw(A.p(), A.m(), rows, rhs);
}

} // namespace wittlift
