#include "wittlift/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wittlift {

namespace {

std::uint32_t max_mod_exp(const ArtinTestRing& ring) {
    std::uint32_t m = 1;
    for (const auto& s : ring.basis())
        m = std::max(m, s.mod_exp);
    return m;
}

} // namespace

WellDefinedResult check_well_defined(const Presentation& pres, const RingPtr& target,
                                     const std::vector<RingElem>& images) {
    if (images.size() != pres.nvars())
        throw SeriesContextMismatchError("check_well_defined: one image per variable");
    for (const auto& im : images)
        if (!target->max_ideal_contains(im))
            throw ImageNotInMaxIdealError(
                "check_well_defined: image outside the maximal ideal");
    WellDefinedFailure failure;
    for (std::size_t j = 0; j < pres.generators.size(); ++j) {
        RingElem v = evaluate(pres.generators[j], target, images);
        if (!v.is_zero())
            failure.violations.emplace_back(j, v);
    }
    if (!failure.violations.empty())
        return failure;
    return AlgebraMap{pres, target, images};
}

LiftReport lift_square_zero(const LiftProblem& problem) {
    const TruncationMap& surj = problem.surjection;
    if (!surj.square_zero())
        throw Error("lift_square_zero: surjection kernel is not square-zero");
    if (!problem.base.target->same_structure(*surj.target()))
        throw RingMismatchError("lift_square_zero: base target differs from surjection target");

    const RingPtr& A = surj.source();
    const Presentation& pres = problem.base.pres;
    std::size_t r = pres.nvars();
    const auto& kernel = surj.kernel_basis();
    std::size_t s = kernel.size();
    std::uint32_t p = A->prime();
    std::uint32_t M = max_mod_exp(*A);
    std::uint64_t pM = prime_power(p, M);

    std::vector<RingElem> lifts;
    lifts.reserve(r);
    for (const auto& im : problem.base.images)
        lifts.push_back(surj.canonical_lift(im));

    LiftReport report;
    report.unknowns = r * s;

    std::vector<RingElem> fvals;
    std::vector<std::vector<RingElem>> jel; // [gen][var]
    try {
        for (const auto& g : pres.generators)
            fvals.push_back(evaluate(g, A, lifts));
        auto jser = jacobian(pres);
        for (std::size_t l = 0; l < pres.generators.size(); ++l) {
            std::vector<RingElem> row;
            for (std::size_t i = 0; i < r; ++i)
                row.push_back(evaluate(jser[l][i], A, lifts));
            jel.push_back(std::move(row));
        }
    } catch (const InsufficientPrecisionError& e) {
        report.verdict = PrecisionLimited{e.what()};
        return report;
    }

    if (pres.generators.empty()) {
        report.verdict = Lifted{AlgebraMap{pres, A, lifts}};
        return report;
    }

    // rows: one congruence per (generator, source coordinate), scaled from
    // p^{m_c} to the uniform modulus p^M
    std::size_t dim = A->dim();
    std::vector<std::vector<std::uint64_t>> rows;
    std::vector<std::uint64_t> rhs;
    std::vector<std::pair<std::size_t, std::string>> labels;
    for (std::size_t l = 0; l < pres.generators.size(); ++l) {
        std::vector<std::vector<std::uint64_t>> cols; // per unknown: coords of J_i k_j
        cols.reserve(r * s);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < s; ++j)
                cols.push_back((jel[l][i] * kernel[j]).coords());
        RingElem negf = -fvals[l];
        for (std::size_t c = 0; c < dim; ++c) {
            std::uint64_t scale = pM / A->coord_modulus(c);
            std::vector<std::uint64_t> row(r * s, 0);
            bool nonzero = false;
            for (std::size_t u = 0; u < r * s; ++u) {
                row[u] = mul_mod(scale, cols[u][c], pM);
                nonzero = nonzero || row[u] != 0;
            }
            std::uint64_t b = mul_mod(scale, negf.coords()[c], pM);
            if (!nonzero && b == 0)
                continue; // trivially satisfied
            rows.push_back(std::move(row));
            rhs.push_back(b);
            labels.emplace_back(l, A->basis()[c].name);
        }
    }
    report.equations = rows.size();

    if (rows.empty()) {
        // f already vanishes at the canonical lift and nothing constrains
        // the correction; take delta = 0
        report.verdict = Lifted{AlgebraMap{pres, A, lifts}};
        return report;
    }

    LinearOutcome outcome = solve_linear_raw(p, M, rows, rhs);
    if (const auto* sol = std::get_if<LinearSolution>(&outcome)) {
        std::vector<RingElem> lifted;
        for (std::size_t i = 0; i < r; ++i) {
            RingElem x = lifts[i];
            for (std::size_t j = 0; j < s; ++j)
                x = x + kernel[j].scaled(sol->x[i * s + j]);
            lifted.push_back(std::move(x));
        }
        for (const auto& g : pres.generators)
            if (!evaluate(g, A, lifted).is_zero())
                throw Error("internal: computed lift fails a generator");
        for (std::size_t i = 0; i < r; ++i)
            if (!(surj.apply(lifted[i]) == problem.base.images[i]))
                throw Error("internal: computed lift does not restrict to the base map");
        report.verdict = Lifted{AlgebraMap{pres, A, std::move(lifted)}};
        return report;
    }

    const auto& cert = std::get<NoSolutionCertificate>(outcome);
    NoLiftCertificate out;
    out.matrix = std::move(rows);
    out.rhs = std::move(rhs);
    out.combination = cert.combination;
    out.residual = cert.residual;
    out.modulus_exponent = M;
    out.row_labels = std::move(labels);
    report.verdict = NoLift{std::move(out)};
    return report;
}

// ---------------------------------------------------------------------------
// Condition (i)

PointSearchResult find_w_point(const Presentation& pres,
                               const std::optional<std::vector<std::uint64_t>>& candidate) {
    std::uint32_t p = pres.ctx.params.p;
    std::uint64_t pm = pres.ctx.modulus();
    std::size_t r = pres.nvars();

    if (candidate) {
        if (candidate->size() != r)
            throw Error("find_w_point: candidate has wrong coordinate count");
        std::vector<std::uint64_t> pt;
        for (auto a : *candidate)
            pt.push_back(a % pm);
        for (auto a : pt)
            if (a % p != 0)
                return WPointUnknown{"candidate point does not lie in pW"};
        for (std::size_t j = 0; j < pres.generators.size(); ++j)
            if (evaluate_at_point(pres.generators[j], pt) != 0)
                return WPointUnknown{"candidate point fails generator " +
                                     std::to_string(j) + " at precision m"};
        return WPoint{pt};
    }

    std::vector<std::uint64_t> origin(r, 0);
    bool origin_ok = true;
    for (const auto& g : pres.generators)
        if (g.constant_term() != 0) {
            origin_ok = false;
            break;
        }
    if (origin_ok)
        return WPoint{origin};

    // residue solutions all sit at the origin; without a vanishing residue
    // there is nothing to lift from
    for (const auto& g : pres.generators)
        if (g.constant_term() % p != 0)
            return WPointUnknown{"some generator has a unit constant term; no point found"};

    // select a unit square minor of the Jacobian at the origin mod p
    std::size_t ngen = pres.generators.size();
    std::vector<std::vector<std::uint64_t>> j0(ngen, std::vector<std::uint64_t>(r, 0));
    for (std::size_t l = 0; l < ngen; ++l)
        for (std::size_t i = 0; i < r; ++i)
            j0[l][i] = pres.generators[l].linear_coefficient(i).value() % p;

    std::vector<std::size_t> piv_rows, piv_cols;
    {
        auto work = j0;
        std::vector<bool> used_row(ngen, false);
        for (std::size_t col = 0; col < r; ++col) {
            std::size_t pivot = ngen;
            for (std::size_t row = 0; row < ngen; ++row)
                if (!used_row[row] && work[row][col] % p != 0) {
                    pivot = row;
                    break;
                }
            if (pivot == ngen)
                continue;
            used_row[pivot] = true;
            piv_rows.push_back(pivot);
            piv_cols.push_back(col);
            std::uint64_t inv = WittInt(p, 1, work[pivot][col]).unit_inverse().value();
            for (std::size_t row = 0; row < ngen; ++row) {
                if (row == pivot || work[row][col] == 0)
                    continue;
                std::uint64_t f = mul_mod(work[row][col], inv, p);
                for (std::size_t c2 = 0; c2 < r; ++c2)
                    work[row][c2] = (work[row][c2] + p - mul_mod(f, work[pivot][c2], p)) % p;
            }
        }
    }
    if (piv_rows.empty())
        return WPointUnknown{"no unit Jacobian minor at the residue point; no point found"};

    std::size_t rho = piv_rows.size();
    std::vector<std::vector<std::uint64_t>> jsub(rho, std::vector<std::uint64_t>(rho, 0));
    for (std::size_t a = 0; a < rho; ++a)
        for (std::size_t b = 0; b < rho; ++b)
            jsub[a][b] = j0[piv_rows[a]][piv_cols[b]];

    std::vector<std::uint64_t> point(r, 0);
    std::uint64_t pk = 1;
    for (std::uint32_t k = 1; k < pres.ctx.precision; ++k) {
        pk *= p;
        std::vector<std::uint64_t> rhs(rho, 0);
        for (std::size_t a = 0; a < rho; ++a) {
            std::uint64_t v = evaluate_at_point(pres.generators[piv_rows[a]], point);
            if (v % pk != 0)
                return WPointUnknown{"Newton iteration lost the congruence invariant"};
            rhs[a] = (p - (v / pk) % p) % p;
        }
        LinearOutcome step = solve_linear_raw(p, 1, jsub, rhs);
        const auto* sol = std::get_if<LinearSolution>(&step);
        if (!sol)
            return WPointUnknown{"Newton step became unsolvable"};
        for (std::size_t b = 0; b < rho; ++b)
            point[piv_cols[b]] = (point[piv_cols[b]] + pk * sol->x[b]) % pm;
    }
    for (std::size_t j = 0; j < ngen; ++j)
        if (evaluate_at_point(pres.generators[j], point) != 0)
            return WPointUnknown{"Newton point fails generator " + std::to_string(j) +
                                 " at precision m; no point found"};
    return WPoint{point};
}

// ---------------------------------------------------------------------------
// Enumerate-and-lift cells

namespace {

ConditionReport run_lift_cell(const Presentation& pres, const TruncationMap& trunc,
                              std::uint64_t budget, const std::string& condition,
                              std::uint32_t m, std::uint32_t d) {
    ConditionReport rep{CellStatus::Passed, 0, 0, 0.0, std::nullopt, ""};
    std::size_t r = pres.nvars();
    MaxIdealRange ideal = enumerate_max_ideal(trunc.target());
    rep.total_candidates = std::pow(static_cast<double>(ideal.size()),
                                    static_cast<double>(r));

    if (pres.generators.empty()) {
        rep.note = "free presentation: every map lifts trivially";
        return rep;
    }

    const ArtinTestRing& src = *trunc.source();
    if (pres.ctx.precision < src.scalar_precision()) {
        rep.status = CellStatus::PrecisionLimited;
        rep.note = "series precision " + std::to_string(pres.ctx.precision) +
                   " below required " + std::to_string(src.scalar_precision()) + " for " +
                   src.descriptor().name();
        return rep;
    }
    if (pres.ctx.degree_cap < src.nilpotency_bound()) {
        rep.status = CellStatus::PrecisionLimited;
        rep.note = "series degree cap below the nilpotency bound of " +
                   src.descriptor().name();
        return rep;
    }

    std::vector<std::uint64_t> idx(r, 0);
    for (;;) {
        if (rep.candidates_evaluated >= budget) {
            rep.status = CellStatus::BudgetExhausted;
            rep.note = "budget exhausted";
            return rep;
        }
        std::vector<RingElem> images;
        images.reserve(r);
        for (std::size_t i = 0; i < r; ++i)
            images.push_back(ideal.at(idx[i]));
        ++rep.candidates_evaluated;

        WellDefinedResult wd = check_well_defined(pres, trunc.target(), images);
        if (auto* map = std::get_if<AlgebraMap>(&wd)) {
            ++rep.well_defined_count;
            LiftReport lift = lift_square_zero(LiftProblem{*map, trunc});
            if (const auto* nolift = std::get_if<NoLift>(&lift.verdict)) {
                rep.status = CellStatus::Refuted;
                rep.witness = Witness{condition, m,     d, trunc.target()->descriptor(),
                                      map->images,      nolift->certificate};
                return rep;
            }
            if (const auto* pl = std::get_if<PrecisionLimited>(&lift.verdict)) {
                rep.status = CellStatus::PrecisionLimited;
                rep.note = pl->reason;
                return rep;
            }
        }

        // odometer: last variable fastest, so tuples ascend lexicographically
        std::size_t pos = r;
        while (pos > 0) {
            --pos;
            if (++idx[pos] < ideal.size())
                break;
            idx[pos] = 0;
            if (pos == 0)
                return rep; // wrapped: full coverage, no witness
        }
        if (r == 0)
            return rep; // the single empty tuple has been checked
    }
}

} // namespace

ConditionReport condition_eps_lift(const Presentation& pres, std::uint32_t m,
                                   std::uint64_t budget) {
    if (m < 1)
        throw Error("condition_eps_lift: need m >= 1");
    const RingParams& P = pres.ctx.params;
    TruncationMap trunc = make_truncation(RingDescriptor::wm_eps(P, m + 1),
                                          RingDescriptor::wm_mixed_eps(P, m));
    return run_lift_cell(pres, trunc, budget, "ii", m, 0);
}

ConditionReport condition_pd_lift(const Presentation& pres, std::uint32_t m,
                                  std::uint32_t d, std::uint64_t budget) {
    if (m < 1 || d < 1)
        throw Error("condition_pd_lift: need m >= 1 and d >= 1");
    const RingParams& P = pres.ctx.params;
    TruncationMap trunc = make_truncation(RingDescriptor::pd(P, m, d + 1),
                                          RingDescriptor::pd(P, m, d));
    return run_lift_cell(pres, trunc, budget, "iii", m, d);
}

ConditionReport condition_curve_lift(const Presentation& pres, std::uint32_t n,
                                     const std::optional<std::vector<std::uint32_t>>& g,
                                     std::uint32_t d, std::uint64_t budget) {
    if (d < 1)
        throw Error("condition_curve_lift: need d >= 1");
    const RingParams& P = pres.ctx.params;
    TruncationMap trunc = make_truncation(RingDescriptor::ramified(P, n, g, d + 1),
                                          RingDescriptor::ramified(P, n, g, d));
    return run_lift_cell(pres, trunc, budget, "curve", 0, d);
}

// ---------------------------------------------------------------------------
// Probes

ProbeReport probe_smoothness(const Presentation& pres, const ProbeBounds& bounds,
                             const std::optional<std::vector<std::uint64_t>>& candidate_point) {
    ProbeReport rep;
    rep.caveats.push_back("a no-obstruction verdict reflects a bounded search over the "
                          "grid; it is not a smoothness certificate");
    rep.caveats.push_back("orders and vanishing are decided at precision p^m; "
                          "coefficients divisible by p^m are indistinguishable from zero");
    rep.caveats.push_back("condition (iii) cells scan d >= 2; the d = 1 stage carries no "
                          "information because W_{m,1} includes into W_{m,2}");

    rep.point = find_w_point(pres, candidate_point);
    Presentation current = pres;
    bool point_known = std::holds_alternative<WPoint>(rep.point);
    if (point_known) {
        const auto& pt = std::get<WPoint>(rep.point).coordinates;
        if (std::any_of(pt.begin(), pt.end(), [](std::uint64_t a) { return a != 0; })) {
            current = translate_to_point(current, pt);
            rep.translated = true;
        }
    } else {
        rep.caveats.push_back("condition (i) is undecided at this precision: " +
                              std::get<WPointUnknown>(rep.point).reason);
    }

    bool can_minimize = true;
    for (const auto& g : current.generators)
        if (auto o = g.ord(); o && *o == 0)
            can_minimize = false;
    MinimizationResult min = can_minimize
                                 ? minimize_presentation(current)
                                 : MinimizationResult{current, {}};
    if (!can_minimize)
        rep.caveats.push_back("generators have nonzero constant terms; "
                              "minimization was skipped");
    for (const auto& step : min.steps)
        rep.eliminated_vars.push_back(step.var);
    rep.remaining_vars = *min.presentation.ctx.vars;
    rep.generators_remaining = min.presentation.generators.size();

    LinearDiagnostics diag = linear_diagnostics(min.presentation);
    rep.m_star = diag.m_star;

    bool refuted = false;
    auto run = [&](const std::string& cond, std::uint32_t m, std::uint32_t d) {
        ConditionReport cell = cond == "ii" ? condition_eps_lift(min.presentation, m, bounds.budget)
                                            : condition_pd_lift(min.presentation, m, d, bounds.budget);
        if (cell.status == CellStatus::Refuted) {
            refuted = true;
            rep.witness = cell.witness;
        }
        rep.cells.push_back(GridCell{cond, m, d, std::move(cell)});
    };

    // linear diagnostics steer condition (ii) to the critical precision first
    std::optional<std::uint32_t> targeted;
    if (diag.m_star && *diag.m_star >= 1 && *diag.m_star <= bounds.m_max) {
        targeted = diag.m_star;
        run("ii", *diag.m_star, 0);
    }
    for (std::uint32_t d = 2; !refuted && d <= bounds.d_max; ++d)
        for (std::uint32_t m = 1; !refuted && m <= bounds.m_max; ++m)
            run("iii", m, d);
    for (std::uint32_t m = 1; !refuted && m <= bounds.m_max; ++m) {
        if (targeted && *targeted == m)
            continue;
        run("ii", m, 0);
    }

    if (refuted) {
        rep.verdict = ProbeVerdict::RefutedWithWitness;
    } else {
        bool limited = !point_known;
        for (const auto& cell : rep.cells)
            if (cell.report.status == CellStatus::BudgetExhausted ||
                cell.report.status == CellStatus::PrecisionLimited)
                limited = true;
        rep.verdict = limited ? ProbeVerdict::PrecisionLimited
                              : ProbeVerdict::NoObstructionFound;
    }
    return rep;
}

ProbeReport curve_criterion_probe(const Presentation& pres, std::uint32_t n,
                                  const std::optional<std::vector<std::uint32_t>>& g,
                                  std::uint32_t d_max, std::uint64_t budget) {
    ProbeReport rep;
    rep.caveats.push_back("heuristic: the residue field F_p is not algebraically closed, "
                          "so passing the curve criterion is inconclusive; refutations "
                          "remain sound");
    rep.point = WPointUnknown{"curve probe does not search for W-points"};
    rep.remaining_vars = *pres.ctx.vars;
    rep.generators_remaining = pres.generators.size();

    bool refuted = false;
    for (std::uint32_t d = 1; !refuted && d <= d_max; ++d) {
        ConditionReport cell = condition_curve_lift(pres, n, g, d, budget);
        if (cell.status == CellStatus::Refuted) {
            refuted = true;
            rep.witness = cell.witness;
        }
        rep.cells.push_back(GridCell{"curve", 0, d, std::move(cell)});
    }
    if (refuted) {
        rep.verdict = ProbeVerdict::RefutedWithWitness;
    } else {
        bool limited = false;
        for (const auto& cell : rep.cells)
            if (cell.report.status != CellStatus::Passed)
                limited = true;
        rep.verdict = limited ? ProbeVerdict::PrecisionLimited
                              : ProbeVerdict::NoObstructionFound;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// T^1 for representable functors

namespace {

// coordinate inclusion A -> A[eps] by basis-symbol identity
RingElem include_elem(const RingElem& x, const RingPtr& eps_ring) {
    const auto& from = x.ring()->basis();
    const auto& to = eps_ring->basis();
    std::vector<std::uint64_t> coords(to.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (x.coords()[i] == 0)
            continue;
        bool placed = false;
        for (std::size_t j = 0; j < to.size(); ++j)
            if (to[j].gamma_index == from[i].gamma_index && to[j].eps == from[i].eps &&
                to[j].t_power == from[i].t_power) {
                coords[j] = x.coords()[i] % eps_ring->coord_modulus(j);
                placed = true;
                break;
            }
        if (!placed)
            throw RingMismatchError("include_elem: no matching basis symbol");
    }
    return RingElem(eps_ring, std::move(coords));
}

RingDescriptor eps_extension_of(const RingDescriptor& desc) {
    switch (desc.family) {
    case RingFamily::Wm:
        return RingDescriptor::wm_eps(desc.params, desc.m);
    case RingFamily::PD:
        return RingDescriptor::pd_eps(desc.params, desc.m, desc.d);
    default:
        throw Error("t1_module: unsupported target family " + family_name(desc.family));
    }
}

} // namespace

T1Module t1_module(const AlgebraMap& X) {
    const RingPtr& A = X.target;
    RingPtr E = make_ring(eps_extension_of(A->descriptor()));
    std::size_t r = X.pres.nvars();
    std::uint32_t p = A->prime();
    std::uint32_t M = max_mod_exp(*E);
    std::uint64_t pM = prime_power(p, M);

    std::vector<RingElem> images;
    for (const auto& im : X.images)
        images.push_back(include_elem(im, E));

    // eps-line coordinates of E, in basis order
    std::vector<std::size_t> eps_idx;
    for (std::size_t i = 0; i < E->dim(); ++i)
        if (E->basis()[i].eps)
            eps_idx.push_back(i);
    std::size_t ecount = eps_idx.size();

    auto jser = jacobian(X.pres);
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t l = 0; l < X.pres.generators.size(); ++l) {
        std::vector<std::vector<std::uint64_t>> cols;
        cols.reserve(r * ecount);
        std::vector<RingElem> jl;
        for (std::size_t i = 0; i < r; ++i)
            jl.push_back(evaluate(jser[l][i], E, images));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t c = 0; c < ecount; ++c)
                cols.push_back((jl[i] * E->basis_element(eps_idx[c])).coords());
        for (std::size_t cc = 0; cc < E->dim(); ++cc) {
            std::uint64_t scale = pM / E->coord_modulus(cc);
            std::vector<std::uint64_t> row(r * ecount, 0);
            bool nonzero = false;
            for (std::size_t u = 0; u < r * ecount; ++u) {
                row[u] = mul_mod(scale, cols[u][cc], pM);
                nonzero = nonzero || row[u] != 0;
            }
            if (nonzero)
                rows.push_back(std::move(row));
        }
    }

    T1Module out{E, {}};
    if (rows.empty() && r * ecount > 0)
        rows.push_back(std::vector<std::uint64_t>(r * ecount, 0)); // unconstrained
    LinearOutcome sol = solve_linear_raw(p, M, rows,
                                         std::vector<std::uint64_t>(rows.size(), 0));
    const auto& solution = std::get<LinearSolution>(sol);
    for (const auto& gen : solution.kernel_basis) {
        T1Class cls;
        bool nonzero = false;
        for (std::size_t i = 0; i < r; ++i) {
            std::vector<std::uint64_t> coords(A->dim(), 0);
            for (std::size_t c = 0; c < ecount; ++c) {
                // eps symbol c corresponds to the A basis symbol with the
                // same gamma index
                const BasisSymbol& sym = E->basis()[eps_idx[c]];
                for (std::size_t a = 0; a < A->dim(); ++a)
                    if (A->basis()[a].gamma_index == sym.gamma_index &&
                        !A->basis()[a].eps) {
                        coords[a] = gen[i * ecount + c] % A->coord_modulus(a);
                        nonzero = nonzero || coords[a] != 0;
                        break;
                    }
            }
            cls.eps_parts.push_back(RingElem(A, std::move(coords)));
        }
        if (nonzero)
            out.generators.push_back(std::move(cls));
    }
    return out;
}

T1LiftingOutcome t1_lifting_check(const AlgebraMap& X, const AlgebraMap& Xprime,
                                  const TruncationMap& surjection) {
    const RingDescriptor& sd = surjection.source()->descriptor();
    const RingDescriptor& td = surjection.target()->descriptor();
    if (!X.target->same_structure(*surjection.source()) ||
        !Xprime.target->same_structure(*surjection.target()))
        throw RingMismatchError("t1_lifting_check: maps do not match the surjection");
    for (std::size_t i = 0; i < X.images.size(); ++i)
        if (!(surjection.apply(X.images[i]) == Xprime.images[i]))
            throw Error("t1_lifting_check: X does not restrict to X'");

    RingDescriptor glue_desc = sd;   // placeholder, replaced below
    RingDescriptor eps_src = sd;
    if (sd.family == RingFamily::PD && td.family == RingFamily::PD && sd.m == td.m &&
        sd.d == td.d + 1 && sd.d >= 2) {
        glue_desc = RingDescriptor::pd_eps_quot(sd.params, sd.m, sd.d);
        eps_src = RingDescriptor::pd_eps(sd.params, sd.m, sd.d);
    } else if (sd.family == RingFamily::Wm && td.family == RingFamily::Wm &&
               sd.m == td.m + 1) {
        glue_desc = RingDescriptor::wm_mixed_eps(sd.params, td.m);
        eps_src = RingDescriptor::wm_eps(sd.params, sd.m);
    } else {
        throw Error("t1_lifting_check: unsupported surjection " + sd.name() + " -> " +
                    td.name());
    }

    TruncationMap eps_surj = make_truncation(eps_src, glue_desc);
    const RingPtr& G = eps_surj.target();

    T1Module t1 = t1_module(Xprime);
    T1LiftingOutcome out{T1LiftStatus::Surjective, std::nullopt, 0, ""};
    for (const T1Class& cls : t1.generators) {
        ++out.classes_checked;
        // glue: unit coordinates from X, eps coordinates from the class
        std::vector<RingElem> glue_images;
        for (std::size_t i = 0; i < X.images.size(); ++i) {
            RingElem g = include_elem(X.images[i], G);
            std::vector<std::uint64_t> coords = g.coords();
            const auto& aprime = *Xprime.target;
            for (std::size_t a = 0; a < aprime.dim(); ++a) {
                if (cls.eps_parts[i].coords()[a] == 0)
                    continue;
                bool placed = false;
                for (std::size_t j = 0; j < G->dim(); ++j)
                    if (G->basis()[j].eps &&
                        G->basis()[j].gamma_index == aprime.basis()[a].gamma_index) {
                        coords[j] = cls.eps_parts[i].coords()[a] % G->coord_modulus(j);
                        placed = true;
                        break;
                    }
                if (!placed)
                    throw Error("t1_lifting_check: class coordinate without glue symbol");
            }
            glue_images.push_back(RingElem(G, std::move(coords)));
        }
        WellDefinedResult wd = check_well_defined(X.pres, G, glue_images);
        auto* map = std::get_if<AlgebraMap>(&wd);
        if (!map)
            throw Error("internal: glued first-order map is not well defined");
        LiftReport lift = lift_square_zero(LiftProblem{*map, eps_surj});
        if (lift.refuted()) {
            out.status = T1LiftStatus::NotSurjective;
            out.witness = cls;
            return out;
        }
        if (const auto* pl = std::get_if<PrecisionLimited>(&lift.verdict)) {
            out.status = T1LiftStatus::PrecisionLimited;
            out.note = pl->reason;
            return out;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bundled counterexample

namespace {

// polynomial in one central indeterminate over a test ring, degree-capped
struct RingPoly {
    RingPtr ring;
    std::uint32_t cap;
    std::vector<RingElem> c;

    static RingPoly zero(RingPtr r, std::uint32_t cap) {
        RingPoly p{std::move(r), cap, {}};
        p.c.assign(cap + 1, p.ring->zero());
        return p;
    }

    RingPoly mul(const RingPoly& o) const {
        RingPoly out = zero(ring, cap);
        for (std::uint32_t i = 0; i <= cap; ++i) {
            if (c[i].is_zero())
                continue;
            for (std::uint32_t j = 0; i + j <= cap; ++j)
                out.c[i + j] = out.c[i + j] + c[i] * o.c[j];
        }
        return out;
    }

    RingPoly pow(std::uint32_t e) const {
        RingPoly acc = zero(ring, cap);
        acc.c[0] = ring->one();
        for (std::uint32_t i = 0; i < e; ++i)
            acc = acc.mul(*this);
        return acc;
    }
};

std::size_t basis_index(const RingPtr& ring, std::uint32_t gamma_index, bool eps) {
    for (std::size_t i = 0; i < ring->dim(); ++i)
        if (ring->basis()[i].gamma_index == gamma_index && ring->basis()[i].eps == eps)
            return i;
    throw Error("basis symbol not found");
}

} // namespace

DeligneReport deligne_example(std::uint32_t p) {
    RingParams params(p);
    DeligneReport rep;
    rep.p = p;
    rep.m = 2 * p + 1;
    std::uint64_t pm = prime_power(p, rep.m);
    rep.modulus = pm;
    rep.lambda = static_cast<std::uint64_t>(p) * p;

    std::ostringstream line;
    line << "p = " << p << ", m = 2p+1 = " << rep.m << ", lambda = p^2 = " << rep.lambda
         << ", modulus p^m = " << pm;
    rep.chain.push_back(line.str());

    std::uint64_t lam_p = 1, lam_pm1 = 1;
    for (std::uint32_t i = 0; i < p; ++i)
        lam_p = mul_mod(lam_p, rep.lambda, pm);
    for (std::uint32_t i = 0; i + 1 < p; ++i)
        lam_pm1 = mul_mod(lam_pm1, rep.lambda, pm);
    rep.p_lambda_p = mul_mod(p, lam_p, pm);
    rep.p2_lambda_pm1 = mul_mod(mul_mod(p, p, pm), lam_pm1, pm);
    rep.chain.push_back("p*lambda^p = " + std::to_string(rep.p_lambda_p) + " (must be 0 mod p^m)");
    rep.chain.push_back("p^2*lambda^(p-1) = " + std::to_string(rep.p2_lambda_pm1) +
                        " (must be nonzero mod p^m)");

    // (b) s = lambda gamma^1(T), s^p = 0 in W_{m,p+1}
    RingPtr Apd = make_ring(RingDescriptor::pd(params, rep.m, p + 1));
    RingElem s = Apd->basis_element(basis_index(Apd, 1, false)).scaled(rep.lambda);
    rep.s_power_zero = s.pow(p).is_zero();
    rep.chain.push_back(std::string("s = lambda*g1 in ") + Apd->descriptor().name() +
                        ": s^p " + (rep.s_power_zero ? "= 0" : "!= 0"));

    // (c) r' = (lambda + eps) gamma^1(T), (r')^p = 0 in W_{m,p}[eps]
    RingPtr Beps = make_ring(RingDescriptor::pd_eps(params, rep.m, p));
    RingElem rprime = Beps->basis_element(basis_index(Beps, 1, false)).scaled(rep.lambda) +
                      Beps->basis_element(basis_index(Beps, 1, true));
    rep.rprime_power_zero = rprime.pow(p).is_zero();
    rep.chain.push_back(std::string("r' = (lambda + eps)*g1 in ") +
                        Beps->descriptor().name() + ": r'^p " +
                        (rep.rprime_power_zero ? "= 0" : "!= 0"));

    // (d) r = (lambda + eps) gamma^1(T) + x gamma^p(T), symbolic x capped
    // at degree p
    RingPtr Ceps = make_ring(RingDescriptor::pd_eps(params, rep.m, p + 1));
    RingPoly r = RingPoly::zero(Ceps, p);
    r.c[0] = Ceps->basis_element(basis_index(Ceps, 1, false)).scaled(rep.lambda) +
             Ceps->basis_element(basis_index(Ceps, 1, true));
    r.c[1] = Ceps->basis_element(basis_index(Ceps, p, false));
    RingPoly rp = r.pow(p);

    rep.x_independent = true;
    for (std::uint32_t k = 1; k <= p; ++k)
        if (!rp.c[k].is_zero())
            rep.x_independent = false;
    std::size_t eps_gp = basis_index(Ceps, p, true);
    bool clean = true;
    for (std::size_t i = 0; i < Ceps->dim(); ++i)
        if (i != eps_gp && rp.c[0].coords()[i] != 0)
            clean = false;
    rep.r_coefficient = clean ? rp.c[0].coords()[eps_gp] : 0;
    std::uint64_t fact = 1;
    for (std::uint32_t i = 2; i < p; ++i)
        fact = mul_mod(fact, i, pm);
    std::uint64_t expected = mul_mod(rep.p2_lambda_pm1, fact, pm);
    if (rep.r_coefficient != expected)
        throw Error("deligne_example: r^p coefficient disagrees with the closed form");
    line.str("");
    line << "r = (lambda + eps)*g1 + x*g" << p << " in " << Ceps->descriptor().name()
         << "[x]: r^p = " << rep.r_coefficient << "*eps*g" << p
         << (rep.x_independent ? " independent of x" : " WITH x dependence");
    rep.chain.push_back(line.str());
    line.str("");
    line << "coefficient p^2*lambda^(p-1)*(p-1)! = " << expected << " != 0 mod " << pm;
    rep.chain.push_back(line.str());

    // (e) the same failure through the T^1 machinery
    SeriesContext ctx(params, rep.m, rep.m + p + 1, {"T"});
    TruncatedSeries tp = TruncatedSeries::variable(ctx, 0);
    TruncatedSeries gen = TruncatedSeries::constant(ctx, 1);
    for (std::uint32_t i = 0; i < p; ++i)
        gen = gen * tp;
    Presentation pres(ctx, {gen});

    TruncationMap trunc = make_truncation(RingDescriptor::pd(params, rep.m, p + 1),
                                          RingDescriptor::pd(params, rep.m, p));
    RingElem image = trunc.source()->basis_element(basis_index(trunc.source(), 1, false))
                         .scaled(rep.lambda);
    auto wdX = check_well_defined(pres, trunc.source(), {image});
    auto* X = std::get_if<AlgebraMap>(&wdX);
    if (!X)
        throw Error("deligne_example: base map is not well defined");
    auto wdXp = check_well_defined(pres, trunc.target(), {trunc.apply(image)});
    auto* Xp = std::get_if<AlgebraMap>(&wdXp);
    if (!Xp)
        throw Error("deligne_example: restricted map is not well defined");
    T1LiftingOutcome t1 = t1_lifting_check(*X, *Xp, trunc);
    rep.t1_refuted = t1.status == T1LiftStatus::NotSurjective;
    if (t1.witness) {
        line.str("");
        line << "T^1 restriction " << trunc.source()->descriptor().name() << " -> "
             << trunc.target()->descriptor().name()
             << " is not surjective; unliftable class: eps*("
             << t1.witness->eps_parts[0].to_string() << ") over T -> "
             << Xp->images[0].to_string();
        rep.chain.push_back(line.str());
    } else {
        rep.chain.push_back("T^1 lifting check unexpectedly " +
                            std::string(rep.t1_refuted ? "refuted" : "passed"));
    }
    return rep;
}

} // namespace wittlift
