#pragma once

#include <optional>
#include <vector>

#include "eternalbar/algebra.hpp"
#include "eternalbar/rational.hpp"

namespace eternalbar {

// Free homotopy class of loops on the torus: an integer vector.
using LatticeClass = std::vector<Int>;

// A sphere-optimization result.  tol == 0 means certified exact; otherwise
// the true value lies within [value - tol, value + tol].
struct SphereValue {
    Rational value;
    Rational tol;
    bool exact() const { return tol == 0; }
};

// Rigorous enclosure of sqrt(s) for s >= 0; exact when s is a perfect square
// of a rational.
SphereValue sqrt_value(const Rational& s);

// A 1-homogeneous Hamiltonian H(p) = |p| H(p/|p|) given by its restriction to
// the unit sphere.  Three representations:
//   Linear   -- H(u) = a.u, any dimension, closed-form optimization;
//   PL       -- rational unit vertex directions with rational values,
//               interpolated along cells (n = 1 is the two-point sphere);
//   Samples  -- a dense table of rational unit directions at resolution eps.
class SphereHamiltonian {
public:
    enum class Kind { Linear, PL, Samples };

    static SphereHamiltonian linear(std::vector<Rational> coeffs);
    static SphereHamiltonian zero(int n);
    // n = 1: dirs must be {(1)},{(-1)}; cells ignored.  n = 2: cells are arcs
    // (counterclockwise vertex index pairs subtending less than pi); when
    // empty, consecutive-by-angle arcs covering the circle are formed.
    static SphereHamiltonian piecewise_linear(int n,
                                              std::vector<std::vector<Rational>> dirs,
                                              std::vector<Rational> values,
                                              std::vector<std::vector<size_t>> cells = {});
    static SphereHamiltonian samples(int n, std::vector<std::vector<Rational>> dirs,
                                     std::vector<Rational> values, Rational resolution,
                                     std::optional<Rational> lipschitz = std::nullopt);

    Kind kind() const { return kind_; }
    int dimension() const { return n_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    const std::vector<std::vector<Rational>>& dirs() const { return dirs_; }
    const std::vector<Rational>& values() const { return values_; }
    const std::vector<std::vector<size_t>>& cells() const { return cells_; }
    const Rational& resolution() const { return resolution_; }
    // Lipschitz bound used for sampled-data tolerances (provided or estimated).
    Rational lipschitz_bound() const;

    bool is_zero() const;
    // Exact value at a represented direction (Linear: any unit rational u).
    Rational value_at(const std::vector<Rational>& u) const;

    friend SphereHamiltonian operator-(const SphereHamiltonian& h);
    friend SphereHamiltonian operator+(const SphereHamiltonian& a, const SphereHamiltonian& b);
    friend bool operator==(const SphereHamiltonian& a, const SphereHamiltonian& b);

private:
    Kind kind_ = Kind::Linear;
    int n_ = 1;
    std::vector<Rational> coeffs_;              // Linear
    std::vector<std::vector<Rational>> dirs_;   // PL / Samples
    std::vector<Rational> values_;              // PL / Samples
    std::vector<std::vector<size_t>> cells_;    // PL, n >= 2
    Rational resolution_;                       // Samples
    std::optional<Rational> lipschitz_;         // Samples
};

// max_{|u|=1} H(u).
SphereValue shape_spectral(const SphereHamiltonian& H);

// max H - min H over the sphere.
SphereValue oscillation_exact(const SphereHamiltonian& H);

// max_{|u|=1} (k.u + H(u)); reduces to shape_spectral at k = 0 and to the
// flat systole |k| at H = 0.
SphereValue class_spectral(const SphereHamiltonian& H, const LatticeClass& k);

// Critical values of u -> k.u + H(u) on the sphere.  Throws
// ResolutionTooCoarse when the data cannot certify criticality separation.
std::vector<SphereValue> spectrum(const SphereHamiltonian& H, const LatticeClass& k);

// sys_k = |k| for k != 0; minimal systole (k unspecified) is 1 for the unit
// flat torus.  Throws ContractibleClass for k = 0.
SphereValue systole(int n, const std::optional<LatticeClass>& k);

struct SystolicReport {
    bool ok = false;
    Rational c;      // c(1; phi^k) = shape_spectral(k * H)
    Rational gamma;  // oscillation of phi^k
    Rational sys;    // sys_k
    Rational margin; // c - sys
};

// n = 1 loop H = p: checks c(1; phi^k) >= sys_k and gamma >= sys_k + sys_{-k}.
SystolicReport check_systolic_bound(const Int& k);

// Pointwise order on represented directions, cross-checked against
// shape_spectral(H - G) <= 0.  Throws Inconsistent on disagreement beyond
// resolution.
bool order_leq(const SphereHamiltonian& H, const SphereHamiltonian& G);

// Assembles the torus-model persistence algebra: one bar [c_k, inf) per
// class, unit the k = 0 bar of the zero label, product (k-bar of H)(l-bar of
// G) = (k+l)-bar of H+G.  Throws ClosureViolation when the zero Hamiltonian,
// the zero class, or a negation is missing.
PersistenceAlgebra build_algebra(const std::vector<SphereHamiltonian>& hams,
                                 const std::vector<LatticeClass>& classes);

std::string class_str(const LatticeClass& k);

} // namespace eternalbar
