#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wittlift/witt.hpp"

namespace wittlift {

/// The built-in families of finite local test algebras over W = Z_p.
///
///   Wm(m)            W_m = Z/p^m
///   WmEps(m)         W_m[eps],  eps^2 = 0
///   WmMixedEps(m)    W_{m+1}[eps]/(p^m eps)
///   PD(m, d)         W_{m,d} = W_m<T>/(gamma^d(T), gamma^{d+1}(T), ...)
///   PDEps(m, d)      W_{m,d}[eps]
///   PDEpsQuot(m, d)  W_{m,d}[eps]/(gamma^{d-1}(T) eps)
///   Ramified(n,g,d)  W[[T]]/(p - g(T) T^n, T^d), g a unit polynomial or 0
///   ResidueSeries(d) k[T]/(T^d)
enum class RingFamily {
    Wm,
    WmEps,
    WmMixedEps,
    PD,
    PDEps,
    PDEpsQuot,
    Ramified,
    ResidueSeries,
};

std::string family_name(RingFamily f);

struct RingDescriptor {
    RingFamily family;
    RingParams params;
    std::uint32_t m = 0;
    std::uint32_t d = 0;
    std::uint32_t n = 0;
    /// Ramified only: coefficients of g mod p, constant term a unit;
    /// nullopt means g = 0 (the equal-characteristic ring k[T]/(T^d)).
    std::optional<std::vector<std::uint32_t>> g;

    std::string name() const;
    bool operator==(const RingDescriptor&) const;

    static RingDescriptor wm(RingParams params, std::uint32_t m);
    static RingDescriptor wm_eps(RingParams params, std::uint32_t m);
    static RingDescriptor wm_mixed_eps(RingParams params, std::uint32_t m);
    static RingDescriptor pd(RingParams params, std::uint32_t m, std::uint32_t d);
    static RingDescriptor pd_eps(RingParams params, std::uint32_t m, std::uint32_t d);
    static RingDescriptor pd_eps_quot(RingParams params, std::uint32_t m, std::uint32_t d);
    static RingDescriptor ramified(RingParams params, std::uint32_t n,
                                   std::optional<std::vector<std::uint32_t>> g,
                                   std::uint32_t d);
    static RingDescriptor residue_series(RingParams params, std::uint32_t d);
};

/// One module-basis symbol together with its coefficient modulus p^{mod_exp}.
/// gamma_index, eps and t_power record what the symbol denotes so that
/// divided powers and substitutions can act structurally.
struct BasisSymbol {
    std::string name;
    std::uint32_t mod_exp;
    std::uint32_t gamma_index = 0; // k for gamma^k(T); 0 for the unit symbol
    bool eps = false;
    std::uint32_t t_power = 0; // k for T^k in the Ramified/ResidueSeries families
};

class ArtinTestRing;
using RingPtr = std::shared_ptr<const ArtinTestRing>;

/// Element of an ArtinTestRing: a coefficient vector over the module
/// basis, coordinate i reduced mod p^{m_i}. Immutable in practice; all
/// arithmetic returns new values.
class RingElem {
  public:
    RingElem(RingPtr ring, std::vector<std::uint64_t> coords);

    const RingPtr& ring() const { return ring_; }
    const std::vector<std::uint64_t>& coords() const { return coords_; }
    bool is_zero() const;
    std::string to_string() const;

    friend RingElem operator+(const RingElem& a, const RingElem& b);
    friend RingElem operator-(const RingElem& a, const RingElem& b);
    friend RingElem operator*(const RingElem& a, const RingElem& b);
    RingElem operator-() const;
    bool operator==(const RingElem& o) const;

    RingElem scaled(std::uint64_t c) const;
    RingElem pow(std::uint64_t e) const;

  private:
    RingPtr ring_;
    std::vector<std::uint64_t> coords_;
};

/// A finite local test algebra, held by immutable shared pointer.
/// Construction (make_ring) populates the basis, verifies the structure
/// constants (commutativity, associativity, unitality on all basis
/// pairs/triples), and records the maximal-ideal generators and a
/// nilpotency bound N with (max ideal)^N = 0.
class ArtinTestRing : public std::enable_shared_from_this<ArtinTestRing> {
  public:
    const RingDescriptor& descriptor() const { return desc_; }
    const std::vector<BasisSymbol>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    std::uint32_t prime() const { return desc_.params.p; }
    std::uint32_t nilpotency_bound() const { return nilpotency_bound_; }

    /// Smallest e with p^e * 1 = 0; equals max mod_exp except for the
    /// Ramified family, where carries give 1 additive order p^ceil(d/n).
    std::uint32_t scalar_precision() const { return scalar_precision_; }

    const std::vector<RingElem>& max_ideal_generators() const { return max_ideal_gens_; }
    const std::vector<std::vector<std::uint64_t>>& product_table() const {
        return products_;
    }
    /// Coordinates of basis_i * basis_j.
    const std::uint64_t* product(std::size_t i, std::size_t j) const {
        return products_[i * basis_.size() + j].data();
    }

    RingElem zero() const;
    RingElem one() const;
    RingElem basis_element(std::size_t i) const;
    RingElem from_coords(std::vector<std::uint64_t> coords) const;
    /// c * 1 for an integer scalar c.
    RingElem from_scalar(std::uint64_t c) const;

    std::uint64_t coord_modulus(std::size_t i) const { return coord_mod_[i]; }

    /// Total number of elements (product of the coordinate moduli).
    std::uint64_t order() const;

    bool is_pd_family() const;
    /// Membership in the divided-power ideal (p) + (gamma^i(T)) + (eps).
    bool pd_ideal_contains(const RingElem& x) const;
    /// Membership in the maximal ideal (residue of the unit coordinate is 0).
    bool max_ideal_contains(const RingElem& x) const;

    /// Reduce raw signed coordinates to canonical form. For the Ramified
    /// family this propagates p-overflow through p = g(T) T^n; for all
    /// other families it reduces coordinate-wise.
    std::vector<std::uint64_t> normalize(std::vector<std::int64_t> raw) const;

    bool same_structure(const ArtinTestRing& o) const;

    friend RingPtr make_ring(const RingDescriptor& desc);

  private:
    ArtinTestRing() : desc_{RingFamily::Wm, RingParams(2), 1, 0, 0, std::nullopt} {}

    RingDescriptor desc_{RingFamily::Wm, RingParams(2), 1, 0, 0, std::nullopt};
    std::vector<BasisSymbol> basis_;
    std::vector<std::uint64_t> coord_mod_;
    std::vector<std::vector<std::uint64_t>> products_; // [i*dim+j] -> coords
    std::vector<RingElem> max_ideal_gens_;
    std::uint32_t nilpotency_bound_ = 1;
    std::uint32_t scalar_precision_ = 1;

    friend class RingElem;
    void build();
    void verify_axioms() const;
};

RingPtr make_ring(const RingDescriptor& desc);

/// gamma^n(x) for x in the divided-power ideal of a PD-capable family.
/// Computed from the canonical decomposition of x into a p-multiple of 1,
/// gamma^a(T) components and a square-zero eps component, folded together
/// with the addition law gamma^n(x+y) = sum gamma^i(x) gamma^{n-i}(y).
RingElem gamma(const RingElem& x, std::uint64_t n);

/// The vector (gamma^0(x), ..., gamma^n(x)).
std::vector<RingElem> divided_power_vector(const RingElem& x, std::uint64_t n);

/// A ring map given by basis images (used for truncations and the
/// T -> T + eps substitution).
struct RingHom {
    RingPtr source;
    RingPtr target;
    std::vector<RingElem> basis_images;

    RingElem apply(const RingElem& x) const;
    /// Checks apply(e_i e_j) = apply(e_i) apply(e_j) on all basis pairs
    /// together with apply(1) = 1.
    bool homomorphism_on_basis() const;
};

/// A declared truncation surjection between two supported descriptors,
/// with explicit kernel basis and a verified square-zero flag.
class TruncationMap {
  public:
    const RingPtr& source() const { return source_; }
    const RingPtr& target() const { return target_; }
    const std::vector<RingElem>& kernel_basis() const { return kernel_basis_; }
    bool square_zero() const { return square_zero_; }

    /// Image of source basis i in the target (nullopt when killed).
    const std::vector<std::optional<std::size_t>>& coordinate_action() const {
        return coord_map_;
    }

    RingElem apply(const RingElem& x) const;

    /// The coordinate-wise section: same coefficients on shared basis
    /// symbols, zero on the rest. A set-theoretic lift, not a ring map.
    RingElem canonical_lift(const RingElem& target_elem) const;

    /// All elements mapping to zero (the kernel as a set), enumerated
    /// deterministically. Intended for small rings.
    std::vector<RingElem> kernel_elements() const;

    friend TruncationMap make_truncation(const RingDescriptor& source,
                                         const RingDescriptor& target);

  private:
    TruncationMap() = default;
    RingPtr source_;
    RingPtr target_;
    std::vector<std::optional<std::size_t>> coord_map_;
    std::vector<RingElem> kernel_basis_;
    bool square_zero_ = false;
};

/// Supported pairs:
///   PD(m,d+1)        -> PD(m,d)
///   PD(m,d)          -> PD(m',d)          m' < m
///   Wm(m)            -> Wm(m')            m' < m
///   WmEps(m+1)       -> WmMixedEps(m)
///   WmEps(m)         -> WmEps(m')         m' < m
///   PDEps(m,d)       -> PDEpsQuot(m,d)
///   PDEpsQuot(m,d)   -> PDEps(m,d-1)
///   PDEps(m,d)       -> PDEps(m',d)       m' < m
///   Ramified(n,g,d+1)-> Ramified(n,g,d)
///   ResidueSeries(d+1) -> ResidueSeries(d)
TruncationMap make_truncation(const RingDescriptor& source, const RingDescriptor& target);

/// The substitution T -> T + eps as a ring map PD(m,d+1) -> PDEps(m,d):
/// gamma^k(T) -> gamma^k(T) + gamma^{k-1}(T) eps, with the gamma^d image
/// collapsing to gamma^{d-1}(T) eps. Verified to be a homomorphism on
/// construction.
RingHom shift_substitution(const RingParams& params, std::uint32_t m, std::uint32_t d);

/// Deterministic, restartable enumeration of the maximal ideal. Elements
/// come out in ascending lexicographic coordinate order.
class MaxIdealRange {
  public:
    explicit MaxIdealRange(RingPtr ring);
    std::uint64_t size() const { return size_; }
    RingElem at(std::uint64_t index) const;

  private:
    RingPtr ring_;
    std::vector<std::uint64_t> radix_; // coordinate value counts
    std::uint64_t size_;
};

MaxIdealRange enumerate_max_ideal(RingPtr ring);

/// All ring elements in ascending lexicographic coordinate order
/// (intended for small rings and exhaustive tests).
std::vector<RingElem> enumerate_all_elements(const RingPtr& ring);

} // namespace wittlift
