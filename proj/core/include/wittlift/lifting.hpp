#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wittlift/pd_rings.hpp"
#include "wittlift/series.hpp"

namespace wittlift {

/// A verified W-algebra map R -> A: variable images in the maximal ideal
/// annihilating every generator. Construct through check_well_defined.
struct AlgebraMap {
    Presentation pres;
    RingPtr target;
    std::vector<RingElem> images;
};

struct WellDefinedFailure {
    /// Generators with nonzero values, in index order.
    std::vector<std::pair<std::size_t, RingElem>> violations;
};

using WellDefinedResult = std::variant<AlgebraMap, WellDefinedFailure>;

WellDefinedResult check_well_defined(const Presentation& pres, const RingPtr& target,
                                     const std::vector<RingElem>& images);

/// A square-zero lifting problem: base map into A', surjection A -> A'
/// with self-annihilating kernel.
struct LiftProblem {
    AlgebraMap base;
    TruncationMap surjection;
};

/// Inconsistent linear system over Z/p^M presented as a certificate:
/// combination^T * matrix = 0 while combination^T * rhs = residual != 0.
struct NoLiftCertificate {
    std::vector<std::vector<std::uint64_t>> matrix;
    std::vector<std::uint64_t> rhs;
    std::vector<std::uint64_t> combination;
    std::uint64_t residual = 0;
    std::uint32_t modulus_exponent = 1;
    /// (generator index, source coordinate name) per row.
    std::vector<std::pair<std::size_t, std::string>> row_labels;
};

struct Lifted {
    AlgebraMap map;
};
struct NoLift {
    NoLiftCertificate certificate;
};
struct PrecisionLimited {
    std::string reason;
};

struct LiftReport {
    std::variant<PrecisionLimited, Lifted, NoLift> verdict;
    std::size_t unknowns = 0;
    std::size_t equations = 0;

    bool lifted() const { return std::holds_alternative<Lifted>(verdict); }
    bool refuted() const { return std::holds_alternative<NoLift>(verdict); }
};

/// Pick the coordinate-wise canonical lift of the base images, expand
/// f(x + delta) = f(x) + J(x) delta over the square-zero kernel, and
/// solve the linear system. For square-zero kernels the reduction is
/// exact, so NoLift means no lift exists at the stated precision.
LiftReport lift_square_zero(const LiftProblem& problem);

// --------------------------------------------------------------------------
// Smoothness conditions

struct WPoint {
    std::vector<std::uint64_t> coordinates; // in pW_m
};
struct WPointUnknown {
    std::string reason;
};
using PointSearchResult = std::variant<WPoint, WPointUnknown>;

/// Condition (i): a W-point of the presentation, at precision m. Verifies
/// a candidate if given, otherwise tries the origin and then Newton
/// lifting from the residue solution along a unit Jacobian minor.
/// Unknown never claims nonexistence.
PointSearchResult find_w_point(const Presentation& pres,
                               const std::optional<std::vector<std::uint64_t>>& candidate);

enum class CellStatus { Passed, Refuted, BudgetExhausted, PrecisionLimited };

struct Witness {
    std::string condition; // "ii", "iii" or "curve"
    std::uint32_t m;
    std::uint32_t d;
    RingDescriptor target;          // ring the witness maps into
    std::vector<RingElem> images;   // one per variable
    NoLiftCertificate certificate;
};

struct ConditionReport {
    CellStatus status;
    std::uint64_t candidates_evaluated = 0;
    std::uint64_t well_defined_count = 0;
    double total_candidates = 0;
    std::optional<Witness> witness;
    std::string note;
};

/// Condition (ii) at one precision: enumerate maps into
/// W_{m+1}[eps]/(p^m eps), lift along W_{m+1}[eps]. The budget counts
/// evaluated candidate tuples; exhausting it yields BudgetExhausted with
/// coverage, never a silent pass.
ConditionReport condition_eps_lift(const Presentation& pres, std::uint32_t m,
                                   std::uint64_t budget);

/// Condition (iii) at one grid cell: enumerate maps into W_{m,d}, lift
/// along W_{m,d+1} -> W_{m,d}.
ConditionReport condition_pd_lift(const Presentation& pres, std::uint32_t m,
                                  std::uint32_t d, std::uint64_t budget);

/// Curve-criterion cell: maps into W[[T]]/(p - g T^n, T^d), lifted along
/// the d+1 truncation. Heuristic over F_p (see probe caveats).
ConditionReport condition_curve_lift(const Presentation& pres, std::uint32_t n,
                                     const std::optional<std::vector<std::uint32_t>>& g,
                                     std::uint32_t d, std::uint64_t budget);

// --------------------------------------------------------------------------
// Probes

struct ProbeBounds {
    std::uint32_t m_max = 4;
    std::uint32_t d_max = 4;
    std::uint64_t budget = 1'000'000; // per grid cell, in candidate maps
};

enum class ProbeVerdict { RefutedWithWitness, NoObstructionFound, PrecisionLimited };

struct GridCell {
    std::string condition;
    std::uint32_t m;
    std::uint32_t d;
    ConditionReport report;
};

struct ProbeReport {
    ProbeVerdict verdict = ProbeVerdict::PrecisionLimited;
    PointSearchResult point = WPointUnknown{"not attempted"};
    bool translated = false;
    std::vector<std::string> eliminated_vars;
    std::vector<std::string> remaining_vars;
    std::size_t generators_remaining = 0;
    std::optional<std::uint32_t> m_star;
    std::vector<GridCell> cells;
    std::optional<Witness> witness;
    std::vector<std::string> caveats;
};

/// The full pipeline: W-point search, translation, minimization, linear
/// diagnostics, then the lifting grid. A refutation is sound (the algebra
/// is not smooth); NoObstructionFound is a bounded-search outcome only.
ProbeReport probe_smoothness(const Presentation& pres, const ProbeBounds& bounds,
                             const std::optional<std::vector<std::uint64_t>>& candidate_point =
                                 std::nullopt);

/// Scan of the curve criterion over d = 1..d_max. Refutations are sound;
/// passes are heuristic because the residue field is not algebraically
/// closed.
ProbeReport curve_criterion_probe(const Presentation& pres, std::uint32_t n,
                                  const std::optional<std::vector<std::uint32_t>>& g,
                                  std::uint32_t d_max, std::uint64_t budget);

// --------------------------------------------------------------------------
// First-order deformations of representable functors

/// A first-order class: the eps-coefficients of a deformation
/// X + eps * delta, one element of the base ring A per variable.
struct T1Class {
    std::vector<RingElem> eps_parts;
};

struct T1Module {
    RingPtr eps_ring; // A[eps]-flavor extension used to present classes
    std::vector<T1Class> generators;
};

/// T^1(X/A) for the representable functor of the presentation: solutions
/// delta of J(x) delta = 0 with delta in A eps, described by generators
/// of the solution module (via solve_linear).
T1Module t1_module(const AlgebraMap& X);

enum class T1LiftStatus { Surjective, NotSurjective, PrecisionLimited };

struct T1LiftingOutcome {
    T1LiftStatus status;
    std::optional<T1Class> witness; // unliftable class of X'
    std::size_t classes_checked = 0;
    std::string note;
};

/// Checks surjectivity of T^1(X/A) -> T^1(X'/A') along a supported
/// truncation (PD(m,d) -> PD(m,d-1) with d >= 2, or Wm(m+1) -> Wm(m)) by
/// gluing each generator class with X over the fiber product and lifting
/// across the eps extension.
T1LiftingOutcome t1_lifting_check(const AlgebraMap& X, const AlgebraMap& Xprime,
                                  const TruncationMap& surjection);

// --------------------------------------------------------------------------
// Bundled counterexample

struct DeligneReport {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::uint64_t lambda = 0;
    std::uint64_t modulus = 0;

    std::uint64_t p_lambda_p = 1;     // p lambda^p mod p^m, must be 0
    std::uint64_t p2_lambda_pm1 = 0;  // p^2 lambda^{p-1} mod p^m, must be nonzero
    bool s_power_zero = false;        // s^p = 0 in W_{m,p+1}
    bool rprime_power_zero = false;   // (r')^p = 0 in W_{m,p}[eps]
    std::uint64_t r_coefficient = 0;  // coefficient of eps gamma^p in r^p
    bool x_independent = false;       // r^p has no symbolic-x dependence
    bool t1_refuted = false;          // t1_lifting_check agrees
    std::vector<std::string> chain;   // printable derivation

    bool ok() const {
        return p_lambda_p == 0 && p2_lambda_pm1 != 0 && s_power_zero &&
               rprime_power_zero && r_coefficient != 0 && x_independent && t1_refuted;
    }
};

/// The p-torsion functor {a : a^p = 0} represented by W[T]/(T^p): at
/// m = 2p+1, lambda = p^2, first-order deformations over W_{m,p} exist
/// whose lifts to W_{m,p+1}[eps] all hit the nonzero obstruction
/// p^2 lambda^{p-1} (p-1)! eps gamma^p(T), independently of the symbolic
/// gamma^p coordinate.
DeligneReport deligne_example(std::uint32_t p);

} // namespace wittlift
