#include "wittlift/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace wittlift {

namespace {

std::uint32_t total_degree(const TruncatedSeries::Monomial& m) {
    return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

} // namespace

SeriesContext::SeriesContext(RingParams params_, std::uint32_t precision_,
                             std::uint32_t degree_cap_, std::vector<std::string> vars_)
    : params(params_), precision(precision_), degree_cap(degree_cap_),
      vars(std::make_shared<const std::vector<std::string>>(std::move(vars_))) {
    if (precision < 1)
        throw Error("series precision must be at least 1");
    if (degree_cap < 1)
        throw Error("series degree cap must be at least 1");
    prime_power(params.p, precision); // range check
    for (std::size_t i = 0; i < vars->size(); ++i)
        for (std::size_t j = i + 1; j < vars->size(); ++j)
            if ((*vars)[i] == (*vars)[j])
                throw Error("variable names must be distinct");
}

bool SeriesContext::compatible(const SeriesContext& o) const {
    return params == o.params && precision == o.precision && degree_cap == o.degree_cap &&
           (vars == o.vars || *vars == *o.vars);
}

TruncatedSeries::TruncatedSeries(SeriesContext ctx) : ctx_(std::move(ctx)) {}

void TruncatedSeries::add_term(const Monomial& expts, std::uint64_t c) {
    if (expts.size() != ctx_.nvars())
        throw SeriesContextMismatchError("monomial has wrong variable count");
    if (total_degree(expts) >= ctx_.degree_cap)
        return;
    std::uint64_t mod = ctx_.modulus();
    auto it = terms_.find(expts);
    std::uint64_t v = ((it == terms_.end() ? 0 : it->second) + c % mod) % mod;
    if (v == 0) {
        if (it != terms_.end())
            terms_.erase(it);
    } else {
        terms_[expts] = v;
    }
}

std::uint64_t TruncatedSeries::coefficient(const Monomial& expts) const {
    auto it = terms_.find(expts);
    return it == terms_.end() ? 0 : it->second;
}

WittInt TruncatedSeries::linear_coefficient(std::size_t var) const {
    Monomial m(ctx_.nvars(), 0);
    m.at(var) = 1;
    return WittInt(ctx_.params.p, ctx_.precision, coefficient(m));
}

std::uint64_t TruncatedSeries::constant_term() const {
    return coefficient(Monomial(ctx_.nvars(), 0));
}

std::optional<std::uint32_t> TruncatedSeries::ord() const {
    std::optional<std::uint32_t> best;
    for (const auto& [mono, c] : terms_) {
        (void)c;
        std::uint32_t deg = total_degree(mono);
        if (!best || deg < *best)
            best = deg;
    }
    return best;
}

TruncatedSeries TruncatedSeries::scaled(std::uint64_t c) const {
    TruncatedSeries out(ctx_);
    std::uint64_t mod = ctx_.modulus();
    for (const auto& [mono, v] : terms_)
        out.add_term(mono, mul_mod(v, c % mod, mod));
    return out;
}

TruncatedSeries TruncatedSeries::derivative(std::size_t var) const {
    TruncatedSeries out(ctx_);
    std::uint64_t mod = ctx_.modulus();
    for (const auto& [mono, v] : terms_) {
        if (mono[var] == 0)
            continue;
        Monomial m = mono;
        std::uint64_t e = m[var]--;
        out.add_term(m, mul_mod(v, e % mod, mod));
    }
    return out;
}

namespace {
void check_ctx(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!a.context().compatible(b.context()))
        throw SeriesContextMismatchError("series contexts differ");
}
} // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_ctx(a, b);
    TruncatedSeries out = a;
    for (const auto& [mono, v] : b.terms())
        out.add_term(mono, v);
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_ctx(a, b);
    TruncatedSeries out = a;
    std::uint64_t mod = a.context().modulus();
    for (const auto& [mono, v] : b.terms())
        out.add_term(mono, mod - v);
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    check_ctx(a, b);
    TruncatedSeries out(a.context());
    std::uint64_t mod = a.context().modulus();
    std::uint32_t cap = a.context().degree_cap;
    for (const auto& [ma, va] : a.terms()) {
        std::uint32_t da = total_degree(ma);
        for (const auto& [mb, vb] : b.terms()) {
            if (da + total_degree(mb) >= cap)
                continue;
            TruncatedSeries::Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i)
                m[i] = ma[i] + mb[i];
            out.add_term(m, mul_mod(va, vb, mod));
        }
    }
    return out;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return ctx_.compatible(o.ctx_) && terms_ == o.terms_;
}

std::string TruncatedSeries::to_string() const {
    if (terms_.empty())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
        if (!first)
            out << " + ";
        first = false;
        bool has_vars = total_degree(mono) > 0;
        bool coeff_shown = !has_vars || c != 1;
        if (coeff_shown)
            out << c;
        bool need_star = coeff_shown;
        for (std::size_t i = 0; i < mono.size(); ++i) {
            if (mono[i] == 0)
                continue;
            if (need_star)
                out << "*";
            need_star = true;
            out << (*ctx_.vars)[i];
            if (mono[i] > 1)
                out << "^" << mono[i];
        }
    }
    return out.str();
}

TruncatedSeries TruncatedSeries::constant(SeriesContext ctx, std::uint64_t c) {
    TruncatedSeries s(std::move(ctx));
    s.add_term(Monomial(s.ctx_.nvars(), 0), c);
    return s;
}

TruncatedSeries TruncatedSeries::variable(SeriesContext ctx, std::size_t var) {
    TruncatedSeries s(std::move(ctx));
    Monomial m(s.ctx_.nvars(), 0);
    m.at(var) = 1;
    s.add_term(m, 1);
    return s;
}

TruncatedSeries compose(const TruncatedSeries& f,
                        const std::vector<TruncatedSeries>& images) {
    if (images.size() != f.context().nvars())
        throw SeriesContextMismatchError("compose: one image per variable required");
    if (images.empty())
        return f;
    const SeriesContext& tgt = images[0].context();
    if (tgt.params != f.context().params || tgt.precision != f.context().precision ||
        tgt.degree_cap != f.context().degree_cap)
        throw SeriesContextMismatchError("compose: image context mismatch");
    for (const auto& im : images) {
        if (!im.context().compatible(tgt))
            throw SeriesContextMismatchError("compose: images disagree on context");
        if (im.constant_term() % tgt.params.p != 0)
            throw UnitSubstitutionError("compose: image has a unit constant term");
    }

    // powers[i][k] = images[i]^k, grown on demand
    std::vector<std::vector<TruncatedSeries>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(TruncatedSeries::constant(tgt, 1));
    auto power = [&](std::size_t i, std::uint32_t k) -> const TruncatedSeries& {
        while (powers[i].size() <= k)
            powers[i].push_back(powers[i].back() * images[i]);
        return powers[i][k];
    };

    TruncatedSeries out(tgt);
    for (const auto& [mono, c] : f.terms()) {
        TruncatedSeries term = TruncatedSeries::constant(tgt, c);
        for (std::size_t i = 0; i < mono.size(); ++i)
            if (mono[i] > 0)
                term = term * power(i, mono[i]);
        out = out + term;
    }
    return out;
}

std::uint64_t evaluate_at_point(const TruncatedSeries& f,
                                const std::vector<std::uint64_t>& point) {
    if (point.size() != f.context().nvars())
        throw SeriesContextMismatchError("evaluate_at_point: wrong coordinate count");
    std::uint64_t mod = f.context().modulus();
    std::uint64_t acc = 0;
    for (const auto& [mono, c] : f.terms()) {
        std::uint64_t t = c;
        for (std::size_t i = 0; i < mono.size(); ++i)
            for (std::uint32_t e = 0; e < mono[i]; ++e)
                t = mul_mod(t, point[i] % mod, mod);
        acc = (acc + t) % mod;
    }
    return acc;
}

RingElem evaluate(const TruncatedSeries& f, const RingPtr& ring,
                  const std::vector<RingElem>& images) {
    if (images.size() != f.context().nvars())
        throw SeriesContextMismatchError("evaluate: one image per variable required");
    if (f.context().params.p != ring->prime())
        throw InsufficientPrecisionError("evaluate: series prime differs from ring prime");
    if (f.context().precision < ring->scalar_precision())
        throw InsufficientPrecisionError(
            "evaluate: series precision below the ring's coefficient precision");
    std::uint32_t nilp = ring->nilpotency_bound();
    if (f.context().degree_cap < nilp)
        throw InsufficientPrecisionError(
            "evaluate: series degree cap below the ring's nilpotency bound");
    for (const auto& im : images) {
        if (!im.ring()->same_structure(*ring))
            throw RingMismatchError("evaluate: image lives in a different ring");
        if (!ring->max_ideal_contains(im))
            throw ImageNotInMaxIdealError("evaluate: image outside the maximal ideal");
    }

    std::vector<std::vector<RingElem>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i)
        powers[i].push_back(ring->one());
    auto power = [&](std::size_t i, std::uint32_t k) -> const RingElem& {
        while (powers[i].size() <= k)
            powers[i].push_back(powers[i].back() * images[i]);
        return powers[i][k];
    };

    RingElem acc = ring->zero();
    for (const auto& [mono, c] : f.terms()) {
        if (total_degree(mono) >= nilp)
            continue; // annihilated by nilpotency
        RingElem t = ring->from_scalar(c);
        for (std::size_t i = 0; i < mono.size(); ++i)
            if (mono[i] > 0)
                t = t * power(i, mono[i]);
        acc = acc + t;
    }
    return acc;
}

Presentation::Presentation(SeriesContext ctx_, std::vector<TruncatedSeries> generators_)
    : ctx(std::move(ctx_)), generators(std::move(generators_)) {
    for (const auto& g : generators)
        if (!g.context().compatible(ctx))
            throw SeriesContextMismatchError("presentation generators disagree on context");
}

Presentation translate_to_point(const Presentation& pres,
                                const std::vector<std::uint64_t>& point) {
    if (point.size() != pres.nvars())
        throw SeriesContextMismatchError("translate_to_point: wrong coordinate count");
    for (auto a : point)
        if (a % pres.ctx.params.p != 0)
            throw Error("translate_to_point: point coordinates must lie in pW");
    for (std::size_t j = 0; j < pres.generators.size(); ++j) {
        std::uint64_t v = evaluate_at_point(pres.generators[j], point);
        if (v != 0)
            throw PointNotAZeroError("generator " + std::to_string(j) +
                                         " does not vanish at the point",
                                     j, v);
    }
    std::vector<TruncatedSeries> images;
    for (std::size_t i = 0; i < pres.nvars(); ++i) {
        TruncatedSeries im = TruncatedSeries::variable(pres.ctx, i);
        im.add_term(TruncatedSeries::Monomial(pres.nvars(), 0), point[i]);
        images.push_back(std::move(im));
    }
    std::vector<TruncatedSeries> gens;
    for (const auto& g : pres.generators)
        gens.push_back(compose(g, images));
    return Presentation(pres.ctx, std::move(gens));
}

namespace {

// drop variable slot `var` from a series all of whose terms avoid it
TruncatedSeries drop_variable(const TruncatedSeries& f, std::size_t var,
                              const SeriesContext& reduced) {
    TruncatedSeries out(reduced);
    for (const auto& [mono, c] : f.terms()) {
        if (mono[var] != 0)
            throw Error("internal: residual dependence on an eliminated variable");
        TruncatedSeries::Monomial m;
        m.reserve(mono.size() - 1);
        for (std::size_t i = 0; i < mono.size(); ++i)
            if (i != var)
                m.push_back(mono[i]);
        out.add_term(m, c);
    }
    return out;
}

} // namespace

MinimizationResult minimize_presentation(const Presentation& pres) {
    for (const auto& g : pres.generators)
        if (auto o = g.ord(); o && *o == 0)
            throw Error("minimize_presentation: generators must have ord >= 1");

    Presentation current = pres;
    std::vector<EliminationStep> steps;

    for (;;) {
        std::size_t gen_idx = current.generators.size();
        std::size_t var_idx = 0;
        for (std::size_t j = 0; j < current.generators.size() && gen_idx == current.generators.size(); ++j)
            for (std::size_t i = 0; i < current.nvars(); ++i)
                if (current.generators[j].linear_coefficient(i).ord() ==
                    std::optional<std::uint32_t>{0}) {
                    gen_idx = j;
                    var_idx = i;
                    break;
                }
        if (gen_idx == current.generators.size())
            break;

        const TruncatedSeries& f = current.generators[gen_idx];
        WittInt lambda = f.linear_coefficient(var_idx);
        std::uint64_t lambda_inv = lambda.unit_inverse().value();
        std::uint64_t mod = current.ctx.modulus();

        TruncatedSeries rest = f; // f - lambda T_j
        {
            TruncatedSeries::Monomial m(current.nvars(), 0);
            m[var_idx] = 1;
            rest.add_term(m, mod - lambda.value());
        }

        // fixed point s = -lambda^{-1} rest(..., s, ...); each pass gains
        // one degree of accuracy, so degree_cap passes suffice
        TruncatedSeries s(current.ctx);
        std::vector<TruncatedSeries> images;
        for (std::size_t i = 0; i < current.nvars(); ++i)
            images.push_back(TruncatedSeries::variable(current.ctx, i));
        bool converged = false;
        for (std::uint32_t it = 0; it <= current.ctx.degree_cap + 1; ++it) {
            images[var_idx] = s;
            TruncatedSeries next = compose(rest, images).scaled(mod - lambda_inv);
            if (next == s) {
                converged = true;
                break;
            }
            s = std::move(next);
        }
        if (!converged)
            throw Error("minimize_presentation: substitution did not stabilize");

        images[var_idx] = s;
        std::vector<std::string> reduced_vars;
        for (std::size_t i = 0; i < current.nvars(); ++i)
            if (i != var_idx)
                reduced_vars.push_back((*current.ctx.vars)[i]);
        SeriesContext reduced(current.ctx.params, current.ctx.precision,
                              current.ctx.degree_cap, std::move(reduced_vars));

        std::vector<TruncatedSeries> new_gens;
        for (std::size_t j = 0; j < current.generators.size(); ++j) {
            TruncatedSeries g = compose(current.generators[j], images);
            if (j == gen_idx && !g.is_zero())
                throw Error("minimize_presentation: eliminated generator did not vanish");
            if (g.is_zero())
                continue;
            new_gens.push_back(drop_variable(g, var_idx, reduced));
        }
        steps.push_back(EliminationStep{(*current.ctx.vars)[var_idx], gen_idx,
                                        drop_variable(s, var_idx, reduced)});
        current = Presentation(reduced, std::move(new_gens));
    }
    return MinimizationResult{std::move(current), std::move(steps)};
}

LinearDiagnostics linear_diagnostics(const Presentation& pres) {
    LinearDiagnostics out;
    for (const auto& g : pres.generators) {
        GeneratorDiagnostics gd{.linear = {}, .ord = g.ord()};
        for (std::size_t i = 0; i < pres.nvars(); ++i) {
            WittInt c = g.linear_coefficient(i);
            auto v = c.ord();
            if (v) {
                if (*v == 0)
                    out.has_unit_linear = true;
                if (!out.m_star || *v < *out.m_star)
                    out.m_star = *v;
            }
            gd.linear.push_back(c);
        }
        out.per_generator.push_back(std::move(gd));
    }
    return out;
}

std::vector<std::vector<TruncatedSeries>> jacobian(const Presentation& pres) {
    std::vector<std::vector<TruncatedSeries>> out;
    for (const auto& g : pres.generators) {
        std::vector<TruncatedSeries> row;
        for (std::size_t i = 0; i < pres.nvars(); ++i)
            row.push_back(g.derivative(i));
        out.push_back(std::move(row));
    }
    return out;
}

} // namespace wittlift
