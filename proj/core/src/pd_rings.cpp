#include "wittlift/pd_rings.hpp"

#include <algorithm>
#include <sstream>

namespace wittlift {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    unsigned __int128 r = static_cast<unsigned __int128>(a) * b;
    if (r > 0xFFFFFFFFFFFFFFFFull)
        throw Error(std::string(what) + ": size exceeds 64-bit range");
    return static_cast<std::uint64_t>(r);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    base %= n;
    while (e) {
        if (e & 1)
            r = mul_mod(r, base, n);
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    return r;
}

} // namespace

std::string family_name(RingFamily f) {
    switch (f) {
    case RingFamily::Wm: return "Wm";
    case RingFamily::WmEps: return "WmEps";
    case RingFamily::WmMixedEps: return "WmMixedEps";
    case RingFamily::PD: return "PD";
    case RingFamily::PDEps: return "PDEps";
    case RingFamily::PDEpsQuot: return "PDEpsQuot";
    case RingFamily::Ramified: return "Ramified";
    case RingFamily::ResidueSeries: return "ResidueSeries";
    }
    return "?";
}

bool RingDescriptor::operator==(const RingDescriptor& o) const {
    return family == o.family && params == o.params && m == o.m && d == o.d &&
           n == o.n && g == o.g;
}

std::string RingDescriptor::name() const {
    std::ostringstream out;
    switch (family) {
    case RingFamily::Wm:
        out << "W_" << m;
        break;
    case RingFamily::WmEps:
        out << "W_" << m << "[eps]";
        break;
    case RingFamily::WmMixedEps:
        out << "W_" << (m + 1) << "[eps]/(p^" << m << " eps)";
        break;
    case RingFamily::PD:
        out << "W_{" << m << "," << d << "}";
        break;
    case RingFamily::PDEps:
        out << "W_{" << m << "," << d << "}[eps]";
        break;
    case RingFamily::PDEpsQuot:
        out << "W_{" << m << "," << d << "}[eps]/(g" << (d - 1) << " eps)";
        break;
    case RingFamily::Ramified:
        out << "W[[T]]/(p - g T^" << n << ", T^" << d << ")";
        break;
    case RingFamily::ResidueSeries:
        out << "F_" << params.p << "[T]/(T^" << d << ")";
        break;
    }
    return out.str();
}

RingDescriptor RingDescriptor::wm(RingParams params, std::uint32_t m) {
    return {RingFamily::Wm, params, m, 0, 0, std::nullopt};
}
RingDescriptor RingDescriptor::wm_eps(RingParams params, std::uint32_t m) {
    return {RingFamily::WmEps, params, m, 0, 0, std::nullopt};
}
RingDescriptor RingDescriptor::wm_mixed_eps(RingParams params, std::uint32_t m) {
    return {RingFamily::WmMixedEps, params, m, 0, 0, std::nullopt};
}
RingDescriptor RingDescriptor::pd(RingParams params, std::uint32_t m, std::uint32_t d) {
    return {RingFamily::PD, params, m, d, 0, std::nullopt};
}
RingDescriptor RingDescriptor::pd_eps(RingParams params, std::uint32_t m, std::uint32_t d) {
    return {RingFamily::PDEps, params, m, d, 0, std::nullopt};
}
RingDescriptor RingDescriptor::pd_eps_quot(RingParams params, std::uint32_t m,
                                           std::uint32_t d) {
    return {RingFamily::PDEpsQuot, params, m, d, 0, std::nullopt};
}
RingDescriptor RingDescriptor::ramified(RingParams params, std::uint32_t n,
                                        std::optional<std::vector<std::uint32_t>> g,
                                        std::uint32_t d) {
    if (g) {
        for (auto& c : *g)
            c %= params.p;
        while (!g->empty() && g->back() == 0)
            g->pop_back();
        if (g->empty())
            throw InvalidDescriptorError(
                "Ramified: g reduced to zero; use the zero flag instead");
        if ((*g)[0] == 0)
            throw InvalidDescriptorError("Ramified: g must have a unit constant term");
    }
    return {RingFamily::Ramified, params, 0, d, n, std::move(g)};
}
RingDescriptor RingDescriptor::residue_series(RingParams params, std::uint32_t d) {
    return {RingFamily::ResidueSeries, params, 0, d, 0, std::nullopt};
}

// ---------------------------------------------------------------------------
// RingElem

RingElem::RingElem(RingPtr ring, std::vector<std::uint64_t> coords)
    : ring_(std::move(ring)), coords_(std::move(coords)) {
    if (coords_.size() != ring_->dim())
        throw RingMismatchError("coordinate vector has wrong length");
}

bool RingElem::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(),
                       [](std::uint64_t c) { return c == 0; });
}

std::string RingElem::to_string() const {
    std::ostringstream out;
    bool first = true;
    const auto& basis = ring_->basis();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i] == 0)
            continue;
        if (!first)
            out << " + ";
        first = false;
        if (basis[i].name == "1")
            out << coords_[i];
        else if (coords_[i] == 1)
            out << basis[i].name;
        else
            out << coords_[i] << "*" << basis[i].name;
    }
    if (first)
        out << "0";
    return out.str();
}

bool RingElem::operator==(const RingElem& o) const {
    return ring_->same_structure(*o.ring_) && coords_ == o.coords_;
}

namespace {
void check_same_ring(const RingElem& a, const RingElem& b) {
    if (a.ring().get() != b.ring().get() && !a.ring()->same_structure(*b.ring()))
        throw RingMismatchError("elements belong to different rings");
}
} // namespace

RingElem operator+(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b);
    const ArtinTestRing& r = *a.ring();
    std::vector<std::int64_t> raw(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i)
        raw[i] = static_cast<std::int64_t>(a.coords()[i]) +
                 static_cast<std::int64_t>(b.coords()[i]);
    return RingElem(a.ring(), r.normalize(std::move(raw)));
}

RingElem operator-(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b);
    const ArtinTestRing& r = *a.ring();
    std::vector<std::int64_t> raw(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i)
        raw[i] = static_cast<std::int64_t>(a.coords()[i]) -
                 static_cast<std::int64_t>(b.coords()[i]);
    return RingElem(a.ring(), r.normalize(std::move(raw)));
}

RingElem RingElem::operator-() const {
    std::vector<std::int64_t> raw(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i)
        raw[i] = -static_cast<std::int64_t>(coords_[i]);
    return RingElem(ring_, ring_->normalize(std::move(raw)));
}

RingElem operator*(const RingElem& a, const RingElem& b) {
    check_same_ring(a, b);
    const ArtinTestRing& r = *a.ring();
    std::size_t dim = r.dim();
    if (r.descriptor().family == RingFamily::Ramified ||
        r.descriptor().family == RingFamily::ResidueSeries) {
        // digit convolution; normalize() propagates the p = g T^n carries
        std::vector<std::int64_t> raw(dim, 0);
        for (std::size_t i = 0; i < dim; ++i) {
            if (a.coords()[i] == 0)
                continue;
            for (std::size_t j = 0; i + j < dim; ++j)
                raw[i + j] += static_cast<std::int64_t>(a.coords()[i] * b.coords()[j]);
        }
        return RingElem(a.ring(), r.normalize(std::move(raw)));
    }
    std::vector<std::uint64_t> res(dim, 0);
    for (std::size_t i = 0; i < dim; ++i) {
        if (a.coords()[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim; ++j) {
            if (b.coords()[j] == 0)
                continue;
            unsigned __int128 ab =
                static_cast<unsigned __int128>(a.coords()[i]) * b.coords()[j];
            const std::uint64_t* sc = r.product(i, j);
            for (std::size_t c = 0; c < dim; ++c) {
                if (sc[c] == 0)
                    continue;
                std::uint64_t mod = r.coord_modulus(c);
                std::uint64_t t = mul_mod(static_cast<std::uint64_t>(ab % mod), sc[c], mod);
                res[c] = (res[c] + t) % mod;
            }
        }
    }
    return RingElem(a.ring(), std::move(res));
}

RingElem RingElem::scaled(std::uint64_t c) const {
    const ArtinTestRing& r = *ring_;
    if (r.descriptor().family == RingFamily::Ramified ||
        r.descriptor().family == RingFamily::ResidueSeries) {
        std::uint64_t cc = c % prime_power(r.prime(), r.scalar_precision());
        std::vector<std::int64_t> raw(coords_.size());
        for (std::size_t i = 0; i < coords_.size(); ++i)
            raw[i] = static_cast<std::int64_t>(cc * coords_[i]);
        return RingElem(ring_, r.normalize(std::move(raw)));
    }
    std::vector<std::uint64_t> res(coords_.size());
    for (std::size_t i = 0; i < coords_.size(); ++i)
        res[i] = mul_mod(c % r.coord_modulus(i), coords_[i], r.coord_modulus(i));
    return RingElem(ring_, std::move(res));
}

RingElem RingElem::pow(std::uint64_t e) const {
    RingElem acc = ring_->one();
    RingElem base = *this;
    while (e) {
        if (e & 1)
            acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// ArtinTestRing construction

void ArtinTestRing::build() {
    const RingParams& P = desc_.params;
    std::uint32_t p = P.p;
    basis_.clear();

    switch (desc_.family) {
    case RingFamily::Wm:
        if (desc_.m < 1)
            throw InvalidDescriptorError("Wm: need m >= 1");
        basis_.push_back({"1", desc_.m, 0, false, 0});
        nilpotency_bound_ = desc_.m;
        break;
    case RingFamily::WmEps:
        if (desc_.m < 1)
            throw InvalidDescriptorError("WmEps: need m >= 1");
        basis_.push_back({"1", desc_.m, 0, false, 0});
        basis_.push_back({"eps", desc_.m, 0, true, 0});
        nilpotency_bound_ = desc_.m + 1;
        break;
    case RingFamily::WmMixedEps:
        if (desc_.m < 1)
            throw InvalidDescriptorError("WmMixedEps: need m >= 1");
        basis_.push_back({"1", desc_.m + 1, 0, false, 0});
        basis_.push_back({"eps", desc_.m, 0, true, 0});
        nilpotency_bound_ = desc_.m + 1;
        break;
    case RingFamily::PD:
        if (desc_.m < 1 || desc_.d < 1)
            throw InvalidDescriptorError("PD: need m >= 1 and d >= 1");
        for (std::uint32_t k = 0; k < desc_.d; ++k)
            basis_.push_back({k == 0 ? "1" : "g" + std::to_string(k), desc_.m, k, false, 0});
        nilpotency_bound_ = desc_.m + desc_.d - 1;
        break;
    case RingFamily::PDEps:
        if (desc_.m < 1 || desc_.d < 1)
            throw InvalidDescriptorError("PDEps: need m >= 1 and d >= 1");
        for (std::uint32_t k = 0; k < desc_.d; ++k)
            basis_.push_back({k == 0 ? "1" : "g" + std::to_string(k), desc_.m, k, false, 0});
        for (std::uint32_t k = 0; k < desc_.d; ++k)
            basis_.push_back(
                {k == 0 ? "eps" : "eps*g" + std::to_string(k), desc_.m, k, true, 0});
        nilpotency_bound_ = desc_.m + desc_.d;
        break;
    case RingFamily::PDEpsQuot:
        if (desc_.m < 1 || desc_.d < 1)
            throw InvalidDescriptorError("PDEpsQuot: need m >= 1 and d >= 1");
        for (std::uint32_t k = 0; k < desc_.d; ++k)
            basis_.push_back({k == 0 ? "1" : "g" + std::to_string(k), desc_.m, k, false, 0});
        for (std::uint32_t k = 0; k + 1 < desc_.d; ++k)
            basis_.push_back(
                {k == 0 ? "eps" : "eps*g" + std::to_string(k), desc_.m, k, true, 0});
        nilpotency_bound_ = desc_.m + desc_.d - 1;
        break;
    case RingFamily::Ramified:
        if (desc_.n < 1 || desc_.d < 1)
            throw InvalidDescriptorError("Ramified: need n >= 1 and d >= 1");
        for (std::uint32_t k = 0; k < desc_.d; ++k)
            basis_.push_back(
                {k == 0 ? "1" : (k == 1 ? "T" : "T^" + std::to_string(k)), 1, 0, false, k});
        nilpotency_bound_ = desc_.d;
        break;
    case RingFamily::ResidueSeries:
        if (desc_.d < 1)
            throw InvalidDescriptorError("ResidueSeries: need d >= 1");
        for (std::uint32_t k = 0; k < desc_.d; ++k)
            basis_.push_back(
                {k == 0 ? "1" : (k == 1 ? "T" : "T^" + std::to_string(k)), 1, 0, false, k});
        nilpotency_bound_ = desc_.d;
        break;
    }

    coord_mod_.clear();
    for (const auto& s : basis_)
        coord_mod_.push_back(prime_power(p, s.mod_exp));

    // scalar precision: additive order exponent of 1
    switch (desc_.family) {
    case RingFamily::WmMixedEps:
        scalar_precision_ = desc_.m + 1;
        break;
    case RingFamily::Ramified:
        scalar_precision_ = desc_.g ? (desc_.d + desc_.n - 1) / desc_.n : 1;
        break;
    case RingFamily::ResidueSeries:
        scalar_precision_ = 1;
        break;
    default:
        scalar_precision_ = desc_.m;
        break;
    }
    prime_power(p, scalar_precision_); // range check

    // structure constants
    std::size_t dim = basis_.size();
    products_.assign(dim * dim, std::vector<std::uint64_t>(dim, 0));
    bool t_family = desc_.family == RingFamily::Ramified ||
                    desc_.family == RingFamily::ResidueSeries;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            auto& out = products_[i * dim + j];
            if (t_family) {
                std::uint32_t k = basis_[i].t_power + basis_[j].t_power;
                if (k < desc_.d)
                    out[k] = 1;
                continue;
            }
            if (basis_[i].eps && basis_[j].eps)
                continue; // eps^2 = 0
            std::uint32_t a = basis_[i].gamma_index, b = basis_[j].gamma_index;
            bool eps = basis_[i].eps || basis_[j].eps;
            for (std::size_t c = 0; c < dim; ++c) {
                if (basis_[c].gamma_index == a + b && basis_[c].eps == eps) {
                    out[c] = binomial_mod(p, a + b, a, basis_[c].mod_exp).value();
                    break;
                }
            }
        }
    }

    verify_axioms();

    // maximal ideal generators
    max_ideal_gens_.clear();
    RingPtr self = shared_from_this();
    auto unit_vec = [&](std::size_t idx, std::uint64_t val) {
        std::vector<std::uint64_t> c(dim, 0);
        c[idx] = val;
        return RingElem(self, c);
    };
    if (t_family) {
        if (desc_.d >= 2)
            max_ideal_gens_.push_back(unit_vec(1, 1)); // T
    } else {
        if (coord_mod_[0] > p)
            max_ideal_gens_.push_back(unit_vec(0, p)); // p * 1
        for (std::size_t i = 1; i < dim; ++i)
            if (!basis_[i].eps)
                max_ideal_gens_.push_back(unit_vec(i, 1));
        for (std::size_t i = 0; i < dim; ++i)
            if (basis_[i].eps && basis_[i].gamma_index == 0)
                max_ideal_gens_.push_back(unit_vec(i, 1)); // eps
    }
}

void ArtinTestRing::verify_axioms() const {
    std::size_t dim = basis_.size();
    RingPtr self = shared_from_this();
    auto e = [&](std::size_t i) {
        std::vector<std::uint64_t> c(dim, 0);
        c[i] = 1;
        return RingElem(self, c);
    };
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(e(0) * e(i) == e(i)))
            throw Error("structure constants are not unital");
        for (std::size_t j = i; j < dim; ++j) {
            if (!(e(i) * e(j) == e(j) * e(i)))
                throw Error("structure constants are not commutative");
            for (std::size_t k = j; k < dim; ++k)
                if (!((e(i) * e(j)) * e(k) == e(i) * (e(j) * e(k))))
                    throw Error("structure constants are not associative");
        }
    }
}

RingPtr make_ring(const RingDescriptor& desc) {
    auto ring = std::shared_ptr<ArtinTestRing>(new ArtinTestRing());
    ring->desc_ = desc;
    ring->build();
    return ring;
}

RingElem ArtinTestRing::zero() const {
    return RingElem(shared_from_this(), std::vector<std::uint64_t>(dim(), 0));
}

RingElem ArtinTestRing::one() const {
    std::vector<std::uint64_t> c(dim(), 0);
    c[0] = 1;
    return RingElem(shared_from_this(), c);
}

RingElem ArtinTestRing::basis_element(std::size_t i) const {
    std::vector<std::uint64_t> c(dim(), 0);
    c.at(i) = 1;
    return RingElem(shared_from_this(), c);
}

RingElem ArtinTestRing::from_coords(std::vector<std::uint64_t> coords) const {
    if (coords.size() != dim())
        throw RingMismatchError("from_coords: wrong coordinate count");
    std::vector<std::int64_t> raw(coords.begin(), coords.end());
    return RingElem(shared_from_this(), normalize(std::move(raw)));
}

RingElem ArtinTestRing::from_scalar(std::uint64_t c) const {
    std::vector<std::int64_t> raw(dim(), 0);
    raw[0] = static_cast<std::int64_t>(c % prime_power(prime(), scalar_precision_));
    return RingElem(shared_from_this(), normalize(std::move(raw)));
}

std::uint64_t ArtinTestRing::order() const {
    std::uint64_t n = 1;
    for (auto m : coord_mod_)
        n = checked_mul(n, m, "ring order");
    return n;
}

bool ArtinTestRing::is_pd_family() const {
    switch (desc_.family) {
    case RingFamily::Ramified:
    case RingFamily::ResidueSeries:
        return false;
    default:
        return true;
    }
}

bool ArtinTestRing::pd_ideal_contains(const RingElem& x) const {
    return is_pd_family() && x.coords()[0] % prime() == 0;
}

bool ArtinTestRing::max_ideal_contains(const RingElem& x) const {
    return x.coords()[0] % prime() == 0;
}

std::vector<std::uint64_t>
ArtinTestRing::normalize(std::vector<std::int64_t> raw) const {
    std::size_t dim = basis_.size();
    std::vector<std::uint64_t> out(dim);
    if (desc_.family == RingFamily::Ramified && desc_.g) {
        std::int64_t p = prime();
        const auto& g = *desc_.g;
        // ascending carry pass: p T^i = g(T) T^{n+i}
        std::vector<__int128> w(raw.begin(), raw.end());
        for (std::size_t i = 0; i < dim; ++i) {
            __int128 q = w[i] >= 0 ? w[i] / p : -((-w[i] + p - 1) / p);
            w[i] -= q * p;
            if (q != 0)
                for (std::size_t k = 0; k < g.size(); ++k) {
                    std::size_t idx = i + desc_.n + k;
                    if (idx < dim)
                        w[idx] += q * static_cast<std::int64_t>(g[k]);
                }
        }
        for (std::size_t i = 0; i < dim; ++i)
            out[i] = static_cast<std::uint64_t>(w[i]);
        return out;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        std::int64_t mod = static_cast<std::int64_t>(coord_mod_[i]);
        std::int64_t v = raw[i] % mod;
        if (v < 0)
            v += mod;
        out[i] = static_cast<std::uint64_t>(v);
    }
    return out;
}

bool ArtinTestRing::same_structure(const ArtinTestRing& o) const {
    return desc_ == o.desc_;
}

// ---------------------------------------------------------------------------
// Divided powers

std::vector<RingElem> divided_power_vector(const RingElem& x, std::uint64_t n) {
    const ArtinTestRing& r = *x.ring();
    if (!r.is_pd_family())
        throw NotInPDIdealError("divided powers: ring has no divided-power structure");
    if (!r.pd_ideal_contains(x))
        throw NotInPDIdealError(
            "divided powers: element has a unit component outside the PD ideal");
    std::uint32_t p = r.prime();
    RingPtr ring = x.ring();
    std::size_t dim = r.dim();

    // canonical parts: p * c' on the unit symbol, one part per gamma
    // symbol, and the whole eps component as one square-zero part
    struct Part {
        std::vector<RingElem> dp;
    };
    std::vector<Part> parts;

    std::uint64_t c0 = x.coords()[0];
    if (c0 != 0) {
        std::uint64_t cprime = c0 / p;
        std::uint32_t sp = r.scalar_precision();
        std::uint64_t pm = prime_power(p, sp);
        Part part;
        for (std::uint64_t j = 0; j <= n; ++j) {
            if (j == 0) {
                part.dp.push_back(ring->one());
                continue;
            }
            // gamma^j(p c') = (p^j / j!) c'^j
            std::uint64_t vj = factorial_valuation(p, j);
            if (j - vj >= sp) {
                part.dp.push_back(ring->zero());
                continue;
            }
            std::uint64_t s = prime_power(p, static_cast<std::uint32_t>(j - vj));
            std::uint64_t u = factorial_unit_part(p, j, sp).unit_inverse().value();
            std::uint64_t val = mul_mod(mul_mod(s, u, pm), pow_mod(cprime, j, pm), pm);
            part.dp.push_back(ring->from_scalar(val));
        }
        parts.push_back(std::move(part));
    }

    for (std::size_t i = 1; i < dim; ++i) {
        const BasisSymbol& s = r.basis()[i];
        if (s.eps || x.coords()[i] == 0)
            continue;
        std::uint32_t a = s.gamma_index;
        std::uint64_t ca = x.coords()[i];
        std::uint64_t mod = r.coord_modulus(i);
        Part part;
        part.dp.push_back(ring->one());
        for (std::uint64_t j = 1; j <= n; ++j) {
            // gamma^j(c gamma^a) = c^j C_{j,a} gamma^{ja}
            std::size_t target = dim;
            for (std::size_t t = 0; t < dim; ++t)
                if (!r.basis()[t].eps && r.basis()[t].gamma_index == j * a) {
                    target = t;
                    break;
                }
            if (target == dim) {
                part.dp.push_back(ring->zero());
                continue;
            }
            std::uint64_t cc =
                mul_mod(pow_mod(ca, j, mod),
                        pd_composition_constant(p, j, a, s.mod_exp).value(), mod);
            std::vector<std::uint64_t> coords(dim, 0);
            coords[target] = cc;
            part.dp.push_back(RingElem(ring, std::move(coords)));
        }
        parts.push_back(std::move(part));
    }

    {
        std::vector<std::uint64_t> eps_coords(dim, 0);
        bool has_eps = false;
        for (std::size_t i = 0; i < dim; ++i)
            if (r.basis()[i].eps && x.coords()[i] != 0) {
                eps_coords[i] = x.coords()[i];
                has_eps = true;
            }
        if (has_eps) {
            Part part;
            part.dp.push_back(ring->one());
            if (n >= 1)
                part.dp.push_back(RingElem(ring, std::move(eps_coords)));
            for (std::uint64_t j = 2; j <= n; ++j)
                part.dp.push_back(ring->zero()); // square-zero component
            parts.push_back(std::move(part));
        }
    }

    std::vector<RingElem> dp;
    dp.push_back(ring->one());
    for (std::uint64_t j = 1; j <= n; ++j)
        dp.push_back(ring->zero());
    for (const Part& part : parts) {
        std::vector<RingElem> next;
        for (std::uint64_t t = 0; t <= n; ++t) {
            RingElem acc = ring->zero();
            for (std::uint64_t i = 0; i <= t; ++i)
                acc = acc + dp[i] * part.dp[t - i];
            next.push_back(std::move(acc));
        }
        dp = std::move(next);
    }
    return dp;
}

RingElem gamma(const RingElem& x, std::uint64_t n) {
    if (n == 0)
        return x.ring()->one();
    return divided_power_vector(x, n)[n];
}

// ---------------------------------------------------------------------------
// Ring maps

RingElem RingHom::apply(const RingElem& x) const {
    if (!x.ring()->same_structure(*source))
        throw RingMismatchError("RingHom::apply: element not in the source ring");
    RingElem acc = target->zero();
    for (std::size_t i = 0; i < x.coords().size(); ++i)
        if (x.coords()[i] != 0)
            acc = acc + basis_images[i].scaled(x.coords()[i]);
    return acc;
}

bool RingHom::homomorphism_on_basis() const {
    std::size_t dim = source->dim();
    if (!(apply(source->one()) == target->one()))
        return false;
    for (std::size_t i = 0; i < dim; ++i) {
        // additive well-definedness: p^{m_i} e_i = 0 must map to 0
        std::uint64_t ann = source->coord_modulus(i);
        if (!basis_images[i].scaled(ann).is_zero())
            return false;
        for (std::size_t j = 0; j < dim; ++j) {
            RingElem lhs = apply(source->basis_element(i) * source->basis_element(j));
            RingElem rhs = basis_images[i] * basis_images[j];
            if (!(lhs == rhs))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Truncation surjections

namespace {

// key identifying a basis symbol across rings of the same flavor
struct SymbolKey {
    std::uint32_t gamma_index;
    bool eps;
    std::uint32_t t_power;
    bool operator==(const SymbolKey&) const = default;
};

SymbolKey key_of(const BasisSymbol& s) {
    return {s.gamma_index, s.eps, s.t_power};
}

bool truncation_pair_supported(const RingDescriptor& s, const RingDescriptor& t) {
    if (s.params != t.params)
        return false;
    using F = RingFamily;
    if (s.family == F::PD && t.family == F::PD)
        return t.m >= 1 && t.d >= 1 &&
               ((s.m == t.m && s.d == t.d + 1) || (s.d == t.d && s.m > t.m));
    if (s.family == F::Wm && t.family == F::Wm)
        return t.m >= 1 && s.m > t.m;
    if (s.family == F::WmEps && t.family == F::WmMixedEps)
        return t.m >= 1 && s.m == t.m + 1;
    if (s.family == F::WmEps && t.family == F::WmEps)
        return t.m >= 1 && s.m > t.m;
    if (s.family == F::PDEps && t.family == F::PDEpsQuot)
        return s.m == t.m && s.d == t.d;
    if (s.family == F::PDEpsQuot && t.family == F::PDEps)
        return t.d >= 1 && s.m == t.m && s.d == t.d + 1;
    if (s.family == F::PDEps && t.family == F::PDEps)
        return t.m >= 1 && s.d == t.d && s.m > t.m;
    if (s.family == F::Ramified && t.family == F::Ramified)
        return t.d >= 1 && s.n == t.n && s.g == t.g && s.d == t.d + 1;
    if (s.family == F::ResidueSeries && t.family == F::ResidueSeries)
        return t.d >= 1 && s.d == t.d + 1;
    return false;
}

} // namespace

RingElem TruncationMap::apply(const RingElem& x) const {
    if (!x.ring()->same_structure(*source_))
        throw RingMismatchError("TruncationMap::apply: element not in the source ring");
    std::vector<std::uint64_t> out(target_->dim(), 0);
    for (std::size_t i = 0; i < coord_map_.size(); ++i)
        if (coord_map_[i])
            out[*coord_map_[i]] = x.coords()[i] % target_->coord_modulus(*coord_map_[i]);
    return RingElem(target_, std::move(out));
}

RingElem TruncationMap::canonical_lift(const RingElem& y) const {
    if (!y.ring()->same_structure(*target_))
        throw RingMismatchError("canonical_lift: element not in the target ring");
    std::vector<std::uint64_t> out(source_->dim(), 0);
    for (std::size_t i = 0; i < coord_map_.size(); ++i)
        if (coord_map_[i])
            out[i] = y.coords()[*coord_map_[i]];
    return RingElem(source_, std::move(out));
}

std::vector<RingElem> TruncationMap::kernel_elements() const {
    std::vector<std::uint64_t> radix(source_->dim());
    std::vector<std::uint64_t> step(source_->dim());
    for (std::size_t i = 0; i < source_->dim(); ++i) {
        if (coord_map_[i]) {
            std::uint64_t tmod = target_->coord_modulus(*coord_map_[i]);
            radix[i] = source_->coord_modulus(i) / tmod;
            step[i] = tmod;
        } else {
            radix[i] = source_->coord_modulus(i);
            step[i] = 1;
        }
    }
    std::uint64_t total = 1;
    for (auto r : radix)
        total = checked_mul(total, r, "kernel size");
    std::vector<RingElem> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        std::vector<std::uint64_t> coords(source_->dim(), 0);
        for (std::size_t i = source_->dim(); i-- > 0;) {
            coords[i] = (rest % radix[i]) * step[i];
            rest /= radix[i];
        }
        out.push_back(RingElem(source_, std::move(coords)));
    }
    return out;
}

TruncationMap make_truncation(const RingDescriptor& source, const RingDescriptor& target) {
    if (!truncation_pair_supported(source, target))
        throw UnsupportedTruncationError("unsupported truncation pair " + source.name() +
                                         " -> " + target.name());
    TruncationMap map;
    map.source_ = make_ring(source);
    map.target_ = make_ring(target);

    const auto& sb = map.source_->basis();
    const auto& tb = map.target_->basis();
    map.coord_map_.assign(sb.size(), std::nullopt);
    std::vector<bool> hit(tb.size(), false);
    for (std::size_t i = 0; i < sb.size(); ++i)
        for (std::size_t j = 0; j < tb.size(); ++j)
            if (key_of(sb[i]) == key_of(tb[j])) {
                map.coord_map_[i] = j;
                if (hit[j])
                    throw Error("truncation: duplicate coordinate image");
                hit[j] = true;
                break;
            }
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; }))
        throw Error("truncation: target coordinate without preimage");

    // kernel generators: killed symbols and modulus drops
    for (std::size_t i = 0; i < sb.size(); ++i) {
        std::vector<std::uint64_t> coords(sb.size(), 0);
        if (!map.coord_map_[i]) {
            coords[i] = 1;
        } else {
            std::uint64_t smod = map.source_->coord_modulus(i);
            std::uint64_t tmod = map.target_->coord_modulus(*map.coord_map_[i]);
            if (tmod == smod)
                continue;
            coords[i] = tmod;
        }
        map.kernel_basis_.push_back(RingElem(map.source_, std::move(coords)));
    }

    // verify ring homomorphism on all basis products
    for (std::size_t i = 0; i < sb.size(); ++i)
        for (std::size_t j = 0; j < sb.size(); ++j) {
            RingElem lhs = map.apply(map.source_->basis_element(i) *
                                     map.source_->basis_element(j));
            RingElem rhs = map.apply(map.source_->basis_element(i)) *
                           map.apply(map.source_->basis_element(j));
            if (!(lhs == rhs))
                throw Error("truncation is not a ring homomorphism on basis products");
        }

    map.square_zero_ = true;
    for (const RingElem& a : map.kernel_basis_)
        for (const RingElem& b : map.kernel_basis_)
            if (!(a * b).is_zero())
                map.square_zero_ = false;
    return map;
}

RingHom shift_substitution(const RingParams& params, std::uint32_t m, std::uint32_t d) {
    if (m < 1 || d < 1)
        throw InvalidDescriptorError("shift_substitution: need m >= 1 and d >= 1");
    RingHom hom;
    hom.source = make_ring(RingDescriptor::pd(params, m, d + 1));
    hom.target = make_ring(RingDescriptor::pd_eps(params, m, d));
    const auto& tb = hom.target->basis();
    auto image_of = [&](std::uint32_t k) {
        std::vector<std::uint64_t> coords(tb.size(), 0);
        for (std::size_t t = 0; t < tb.size(); ++t) {
            if (!tb[t].eps && tb[t].gamma_index == k)
                coords[t] = 1; // gamma^k survives when k < d
            if (tb[t].eps && k >= 1 && tb[t].gamma_index == k - 1)
                coords[t] = 1; // gamma^{k-1} eps
        }
        return RingElem(hom.target, std::move(coords));
    };
    for (std::uint32_t k = 0; k <= d; ++k)
        hom.basis_images.push_back(image_of(k));
    if (!hom.homomorphism_on_basis())
        throw Error("shift substitution failed the homomorphism check");
    return hom;
}

// ---------------------------------------------------------------------------
// Enumeration

MaxIdealRange::MaxIdealRange(RingPtr ring) : ring_(std::move(ring)) {
    radix_.resize(ring_->dim());
    radix_[0] = ring_->coord_modulus(0) / ring_->prime();
    for (std::size_t i = 1; i < ring_->dim(); ++i)
        radix_[i] = ring_->coord_modulus(i);
    size_ = 1;
    for (auto r : radix_)
        size_ = checked_mul(size_, r, "maximal ideal size");
}

RingElem MaxIdealRange::at(std::uint64_t index) const {
    std::vector<std::uint64_t> coords(ring_->dim(), 0);
    std::uint64_t rest = index;
    for (std::size_t i = ring_->dim(); i-- > 0;) {
        std::uint64_t digit = rest % radix_[i];
        rest /= radix_[i];
        coords[i] = (i == 0) ? digit * ring_->prime() : digit;
    }
    return RingElem(ring_, std::move(coords));
}

MaxIdealRange enumerate_max_ideal(RingPtr ring) {
    return MaxIdealRange(std::move(ring));
}

std::vector<RingElem> enumerate_all_elements(const RingPtr& ring) {
    std::uint64_t total = ring->order();
    std::vector<RingElem> out;
    out.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        std::vector<std::uint64_t> coords(ring->dim(), 0);
        for (std::size_t i = ring->dim(); i-- > 0;) {
            coords[i] = rest % ring->coord_modulus(i);
            rest /= ring->coord_modulus(i);
        }
        out.push_back(RingElem(ring, std::move(coords)));
    }
    return out;
}

} // namespace wittlift
