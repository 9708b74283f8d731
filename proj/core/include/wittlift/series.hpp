#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittlift/pd_rings.hpp"
#include "wittlift/witt.hpp"

namespace wittlift {

/// Shared truncation data: prime, coefficient precision p^m, total-degree
/// cap D, and the variable names.
struct SeriesContext {
    SeriesContext(RingParams params_, std::uint32_t precision_, std::uint32_t degree_cap_,
                  std::vector<std::string> vars_);

    RingParams params;
    std::uint32_t precision;
    std::uint32_t degree_cap;
    std::shared_ptr<const std::vector<std::string>> vars;

    std::size_t nvars() const { return vars->size(); }
    std::uint64_t modulus() const { return prime_power(params.p, precision); }
    bool compatible(const SeriesContext& o) const;
};

/// Multivariate formal power series over W, truncated at total degree
/// < degree_cap with coefficients mod p^m. No zero coefficients and no
/// terms of degree >= degree_cap are ever stored.
class TruncatedSeries {
  public:
    using Monomial = std::vector<std::uint32_t>;

    explicit TruncatedSeries(SeriesContext ctx);

    const SeriesContext& context() const { return ctx_; }
    const std::map<Monomial, std::uint64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Adds c * T^expts (reducing, dropping capped or cancelled terms).
    void add_term(const Monomial& expts, std::uint64_t c);

    std::uint64_t coefficient(const Monomial& expts) const;
    /// Coefficient of the degree-1 term in variable i.
    WittInt linear_coefficient(std::size_t var) const;
    std::uint64_t constant_term() const;

    /// Smallest total degree of a stored term; nullopt encodes
    /// ">= degree_cap" (the zero representation).
    std::optional<std::uint32_t> ord() const;

    TruncatedSeries scaled(std::uint64_t c) const;
    /// Formal partial derivative with respect to variable i.
    TruncatedSeries derivative(std::size_t var) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    bool operator==(const TruncatedSeries& o) const;

    std::string to_string() const;

    static TruncatedSeries constant(SeriesContext ctx, std::uint64_t c);
    static TruncatedSeries variable(SeriesContext ctx, std::size_t var);

  private:
    SeriesContext ctx_;
    std::map<Monomial, std::uint64_t> terms_;
};

/// f(images). Every image must have a constant term in pW (substituting a
/// unit constant is an error). With at least one variable, all images
/// must share one context with f's prime/precision/cap; the result lives
/// in the images' variable set.
TruncatedSeries compose(const TruncatedSeries& f, const std::vector<TruncatedSeries>& images);

/// Value of f at a constant point (coordinates mod p^m), on the stored
/// representation.
std::uint64_t evaluate_at_point(const TruncatedSeries& f, const std::vector<std::uint64_t>& point);

/// Value of the continuous W-algebra map determined by variable |-> image
/// (images in the maximal ideal). Terms of total degree >= the ring's
/// nilpotency bound contribute nothing.
RingElem evaluate(const TruncatedSeries& f, const RingPtr& ring,
                  const std::vector<RingElem>& images);

/// A presentation R = W[[T_1..T_r]] / (generators).
struct Presentation {
    Presentation(SeriesContext ctx_, std::vector<TruncatedSeries> generators_);

    SeriesContext ctx;
    std::vector<TruncatedSeries> generators;

    std::size_t nvars() const { return ctx.nvars(); }
};

/// Move the origin to a claimed common zero (coordinates in pW_m);
/// generators become g(T + a) and all have ord >= 1. Throws
/// PointNotAZeroError naming the first failing generator.
Presentation translate_to_point(const Presentation& pres,
                                const std::vector<std::uint64_t>& point);

struct EliminationStep {
    std::string var;                // eliminated variable
    std::size_t generator_index;    // generator used for the elimination
    TruncatedSeries substitution;   // its value in the remaining variables
};

struct MinimizationResult {
    Presentation presentation;
    std::vector<EliminationStep> steps;
};

/// Repeatedly eliminates a variable whose linear coefficient in some
/// generator is a unit (lowest generator index, then lowest variable
/// index), substituting the implicit-series solution and re-truncating.
/// The result has no generator with a unit linear coefficient.
MinimizationResult minimize_presentation(const Presentation& pres);

struct GeneratorDiagnostics {
    std::vector<WittInt> linear; // one coefficient per variable
    std::optional<std::uint32_t> ord;
};

struct LinearDiagnostics {
    std::vector<GeneratorDiagnostics> per_generator;
    /// Minimum valuation among all nonzero linear coefficients; nullopt
    /// when every linear coefficient vanishes at this precision.
    std::optional<std::uint32_t> m_star;
    bool has_unit_linear = false;
};

LinearDiagnostics linear_diagnostics(const Presentation& pres);

/// Entry (j, i) is the partial derivative of generator j by variable i.
std::vector<std::vector<TruncatedSeries>> jacobian(const Presentation& pres);

} // namespace wittlift
