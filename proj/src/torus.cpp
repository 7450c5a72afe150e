#include "eternalbar/torus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eternalbar/errors.hpp"

namespace eternalbar {

namespace {

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<Rational> to_rational_vec(const LatticeClass& k) {
    std::vector<Rational> out(k.size());
    for (size_t i = 0; i < k.size(); ++i) out[i] = Rational(k[i]);
    return out;
}

Rational norm_sq(const std::vector<Rational>& v) { return dot(v, v); }

bool is_unit(const std::vector<Rational>& u) { return norm_sq(u) == 1; }

double angle_of(const std::vector<Rational>& u) {
    return std::atan2(to_double(u[1]), to_double(u[0]));
}

// 2D cross product, exact.
Rational cross(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// Exact solve of M x = rhs by Gaussian elimination; nullopt when singular.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> M,
                                                 std::vector<Rational> rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(M[piv], M[col]);
        std::swap(rhs[piv], rhs[col]);
        for (size_t r = 0; r < n; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<Rational> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = rhs[i] / M[i][i];
    return x;
}

// Upper bound for |v| (value + tol of the enclosure).
Rational norm_upper(const std::vector<Rational>& v) {
    SphereValue s = sqrt_value(norm_sq(v));
    return s.value + s.tol;
}

// Merge candidate enclosures: result value is the max central value, tol
// covers every candidate's upper reach.
SphereValue max_of(const std::vector<SphereValue>& cands) {
    SphereValue best = cands.front();
    for (const auto& c : cands)
        if (c.value > best.value) best = c;
    Rational upper = best.value + best.tol;
    for (const auto& c : cands) upper = std::max(upper, Rational(c.value + c.tol));
    return {best.value, upper - best.value};
}

} // namespace

SphereValue sqrt_value(const Rational& s) {
    if (s < 0) throw std::invalid_argument("sqrt of negative rational");
    if (s == 0) return {Rational(0), Rational(0)};
    Int num = boost::multiprecision::numerator(s);
    Int den = boost::multiprecision::denominator(s);
    Int rn = boost::multiprecision::sqrt(num);
    Int rd = boost::multiprecision::sqrt(den);
    if (rn * rn == num && rd * rd == den) return {Rational(rn, rd), Rational(0)};
    // sqrt(num/den) = sqrt(num*den)/den; bracket by the integer sqrt of the
    // 4^m-scaled radicand.
    const unsigned m = 48;
    Int scaled = (num * den) << (2 * m);
    Int r = boost::multiprecision::sqrt(scaled);
    Rational lo(r, den << m), hi(r + 1, den << m);
    return {(lo + hi) / 2, (hi - lo) / 2};
}

// ---------------------------------------------------------------------------
// SphereHamiltonian construction

SphereHamiltonian SphereHamiltonian::linear(std::vector<Rational> coeffs) {
    if (coeffs.empty()) throw MalformedInput("linear Hamiltonian needs at least one coefficient");
    SphereHamiltonian h;
    h.kind_ = Kind::Linear;
    h.n_ = static_cast<int>(coeffs.size());
    h.coeffs_ = std::move(coeffs);
    return h;
}

SphereHamiltonian SphereHamiltonian::zero(int n) {
    return linear(std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
}

SphereHamiltonian SphereHamiltonian::piecewise_linear(
    int n, std::vector<std::vector<Rational>> dirs, std::vector<Rational> values,
    std::vector<std::vector<size_t>> cells) {
    if (n < 1) throw MalformedInput("dimension must be >= 1");
    if (dirs.size() != values.size() || dirs.empty())
        throw MalformedInput("piecewise-linear data needs matching dirs and values");
    for (const auto& u : dirs) {
        if (static_cast<int>(u.size()) != n) throw MalformedInput("direction dimension mismatch");
        if (!is_unit(u)) throw MalformedInput("direction is not an exact unit vector");
    }
    SphereHamiltonian h;
    h.kind_ = Kind::PL;
    h.n_ = n;
    if (n == 1) {
        if (dirs.size() != 2 || dirs[0][0] * dirs[1][0] != -1)
            throw MalformedInput("the 0-sphere has exactly the directions +1 and -1");
        if (dirs[0][0] != 1) { std::swap(dirs[0], dirs[1]); std::swap(values[0], values[1]); }
        h.dirs_ = std::move(dirs);
        h.values_ = std::move(values);
        return h;
    }
    if (n == 2) {
        // Normalize to angle order so arcs and adjacency are canonical.
        std::vector<size_t> order(dirs.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return angle_of(dirs[a]) < angle_of(dirs[b]);
        });
        std::vector<std::vector<Rational>> d2;
        std::vector<Rational> v2;
        std::vector<size_t> place(dirs.size());
        for (size_t i = 0; i < order.size(); ++i) {
            d2.push_back(dirs[order[i]]);
            v2.push_back(values[order[i]]);
            place[order[i]] = i;
        }
        for (size_t i = 0; i + 1 < d2.size(); ++i)
            if (d2[i] == d2[i + 1]) throw MalformedInput("duplicate direction");
        if (cells.empty()) {
            if (d2.size() < 3)
                throw MalformedInput("need at least 3 circle directions to form arcs");
            for (size_t i = 0; i < d2.size(); ++i)
                cells.push_back({i, (i + 1) % d2.size()});
        } else {
            for (auto& c : cells) {
                if (c.size() != 2 || c[0] >= dirs.size() || c[1] >= dirs.size())
                    throw MalformedInput("bad arc cell");
                c[0] = place[c[0]];
                c[1] = place[c[1]];
            }
        }
        for (auto& c : cells) {
            if (cross(d2[c[0]], d2[c[1]]) < 0) std::swap(c[0], c[1]);
            if (cross(d2[c[0]], d2[c[1]]) <= 0)
                throw MalformedInput("arc cell must subtend less than pi");
        }
        h.dirs_ = std::move(d2);
        h.values_ = std::move(v2);
        h.cells_ = std::move(cells);
        return h;
    }
    for (const auto& c : cells) {
        if (c.size() != static_cast<size_t>(n)) throw MalformedInput("cell arity mismatch");
        std::vector<std::vector<Rational>> M;
        std::vector<Rational> rhs;
        for (size_t idx : c) {
            if (idx >= dirs.size()) throw MalformedInput("cell references unknown vertex");
            M.push_back(dirs[idx]);
            rhs.push_back(values[idx]);
        }
        if (!solve_linear(std::move(M), std::move(rhs)))
            throw MalformedInput("degenerate simplicial cell");
    }
    h.dirs_ = std::move(dirs);
    h.values_ = std::move(values);
    h.cells_ = std::move(cells);
    return h;
}

SphereHamiltonian SphereHamiltonian::samples(int n, std::vector<std::vector<Rational>> dirs,
                                             std::vector<Rational> values, Rational resolution,
                                             std::optional<Rational> lipschitz) {
    if (dirs.size() != values.size() || dirs.empty())
        throw MalformedInput("sample table needs matching dirs and values");
    if (resolution <= 0) throw MalformedInput("sample resolution must be > 0");
    for (const auto& u : dirs) {
        if (static_cast<int>(u.size()) != n) throw MalformedInput("direction dimension mismatch");
        if (!is_unit(u)) throw MalformedInput("direction is not an exact unit vector");
    }
    SphereHamiltonian h;
    h.kind_ = Kind::Samples;
    h.n_ = n;
    if (n == 2) {
        std::vector<size_t> order(dirs.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            return angle_of(dirs[a]) < angle_of(dirs[b]);
        });
        std::vector<std::vector<Rational>> d2;
        std::vector<Rational> v2;
        for (size_t i : order) { d2.push_back(dirs[i]); v2.push_back(values[i]); }
        h.dirs_ = std::move(d2);
        h.values_ = std::move(v2);
    } else {
        h.dirs_ = std::move(dirs);
        h.values_ = std::move(values);
    }
    h.resolution_ = std::move(resolution);
    h.lipschitz_ = std::move(lipschitz);
    return h;
}

namespace {

// Gradient of the linear piece over a cell: the a with a.v_i = h_i on the
// cell's vertices (unique; construction rejects degenerate cells).
std::vector<Rational> cell_gradient(const SphereHamiltonian& H, const std::vector<size_t>& cell) {
    std::vector<std::vector<Rational>> M;
    std::vector<Rational> rhs;
    for (size_t idx : cell) {
        M.push_back(H.dirs()[idx]);
        rhs.push_back(H.values()[idx]);
    }
    auto a = solve_linear(std::move(M), std::move(rhs));
    if (!a) throw MalformedInput("degenerate simplicial cell");
    return *a;
}

// Does b/|b| lie in the cone spanned by the cell's directions?  Exact: solve
// b = sum lambda_i v_i and test lambda_i >= 0.
bool in_cone(const SphereHamiltonian& H, const std::vector<size_t>& cell,
             const std::vector<Rational>& b) {
    const size_t n = b.size();
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
    for (size_t j = 0; j < cell.size(); ++j)
        for (size_t i = 0; i < n; ++i) M[i][j] = H.dirs()[cell[j]][i];
    auto lam = solve_linear(std::move(M), b);
    if (!lam) return false;
    for (const auto& l : *lam)
        if (l < 0) return false;
    return true;
}

} // namespace

Rational SphereHamiltonian::lipschitz_bound() const {
    switch (kind_) {
    case Kind::Linear:
        return norm_upper(coeffs_);
    case Kind::PL: {
        if (n_ == 1 || cells_.empty()) {
            Rational spread = 0;
            for (const auto& v : values_)
                for (const auto& w : values_) spread = std::max(spread, Rational(v - w));
            return spread;
        }
        Rational lip = 0;
        for (const auto& c : cells_) lip = std::max(lip, norm_upper(cell_gradient(*this, c)));
        return lip;
    }
    case Kind::Samples: {
        if (lipschitz_) return *lipschitz_;
        if (n_ != 2 || dirs_.size() < 2) {
            Rational spread = 0;
            for (const auto& v : values_)
                for (const auto& w : values_) spread = std::max(spread, Rational(v - w));
            return spread;
        }
        // Chordal slope estimate over angular neighbors, padded upward.
        double lip = 0;
        for (size_t i = 0; i < dirs_.size(); ++i) {
            size_t j = (i + 1) % dirs_.size();
            double dx = to_double(dirs_[i][0]) - to_double(dirs_[j][0]);
            double dy = to_double(dirs_[i][1]) - to_double(dirs_[j][1]);
            double dist = std::sqrt(dx * dx + dy * dy);
            if (dist > 1e-12)
                lip = std::max(lip, std::abs(to_double(values_[i] - values_[j])) / dist);
        }
        return Rational(Int(static_cast<long long>(std::ceil(lip * 2 + 1))));
    }
    }
    return 0;
}

bool SphereHamiltonian::is_zero() const {
    if (kind_ == Kind::Linear) {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    for (const auto& v : values_)
        if (v != 0) return false;
    return true;
}

Rational SphereHamiltonian::value_at(const std::vector<Rational>& u) const {
    if (kind_ == Kind::Linear) return dot(coeffs_, u);
    for (size_t i = 0; i < dirs_.size(); ++i)
        if (dirs_[i] == u) return values_[i];
    throw MalformedInput("direction not represented in sphere data");
}

SphereHamiltonian operator-(const SphereHamiltonian& h) {
    SphereHamiltonian out = h;
    for (auto& c : out.coeffs_) c = -c;
    for (auto& v : out.values_) v = -v;
    return out;
}

SphereHamiltonian operator+(const SphereHamiltonian& a, const SphereHamiltonian& b) {
    using Kind = SphereHamiltonian::Kind;
    if (a.n_ != b.n_) throw MalformedInput("dimension mismatch in Hamiltonian sum");
    if (a.kind_ == Kind::Linear && b.kind_ == Kind::Linear) {
        std::vector<Rational> c = a.coeffs_;
        for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
        return SphereHamiltonian::linear(std::move(c));
    }
    if (a.kind_ == Kind::Linear) return b + a;
    if (b.kind_ == Kind::Linear) {
        // Adding a linear term keeps each piece linear with the same cells.
        SphereHamiltonian out = a;
        for (size_t i = 0; i < out.values_.size(); ++i)
            out.values_[i] += dot(b.coeffs_, out.dirs_[i]);
        if (out.lipschitz_) *out.lipschitz_ += norm_upper(b.coeffs_);
        return out;
    }
    if (a.kind_ != b.kind_ || a.dirs_ != b.dirs_ || a.cells_ != b.cells_)
        throw MalformedInput("incompatible sphere representations in sum");
    SphereHamiltonian out = a;
    for (size_t i = 0; i < out.values_.size(); ++i) out.values_[i] += b.values_[i];
    if (a.kind_ == Kind::Samples) {
        out.resolution_ = std::max(a.resolution_, b.resolution_);
        if (a.lipschitz_ && b.lipschitz_) *out.lipschitz_ += *b.lipschitz_;
        else out.lipschitz_.reset();
    }
    return out;
}

bool operator==(const SphereHamiltonian& a, const SphereHamiltonian& b) {
    if (a.n_ != b.n_) return false;
    if (a.kind_ != b.kind_) return a.is_zero() && b.is_zero();
    return a.coeffs_ == b.coeffs_ && a.dirs_ == b.dirs_ && a.values_ == b.values_ &&
           a.cells_ == b.cells_;
}

// ---------------------------------------------------------------------------
// Sphere optimization: f_k(u) = k.u + H(u)

namespace {

SphereValue sphere_max(const SphereHamiltonian& H, const LatticeClass& k) {
    using Kind = SphereHamiltonian::Kind;
    if (static_cast<int>(k.size()) != H.dimension())
        throw MalformedInput("lattice class dimension mismatch");
    std::vector<Rational> kr = to_rational_vec(k);

    if (H.dimension() == 1) {
        Rational plus = H.kind() == Kind::Linear ? H.coeffs()[0] : H.value_at({Rational(1)});
        Rational minus = H.kind() == Kind::Linear ? -H.coeffs()[0] : H.value_at({Rational(-1)});
        return {std::max(Rational(kr[0] + plus), Rational(-kr[0] + minus)), Rational(0)};
    }

    switch (H.kind()) {
    case Kind::Linear: {
        std::vector<Rational> b = H.coeffs();
        for (size_t i = 0; i < b.size(); ++i) b[i] += kr[i];
        return sqrt_value(norm_sq(b));
    }
    case Kind::PL: {
        // Vertices, plus the analytic extremum of each linear piece clipped
        // to its cell: on a cell with gradient a, f_k = (k+a).u, maximized at
        // (k+a)/|k+a| when that direction lies in the cell's cone.
        std::vector<SphereValue> cands;
        for (size_t i = 0; i < H.dirs().size(); ++i)
            cands.push_back({dot(kr, H.dirs()[i]) + H.values()[i], Rational(0)});
        for (const auto& cell : H.cells()) {
            std::vector<Rational> b = cell_gradient(H, cell);
            for (size_t i = 0; i < b.size(); ++i) b[i] += kr[i];
            if (norm_sq(b) == 0) continue; // f vanishes on the whole cell
            if (in_cone(H, cell, b)) cands.push_back(sqrt_value(norm_sq(b)));
        }
        return max_of(cands);
    }
    case Kind::Samples: {
        Rational best = dot(kr, H.dirs()[0]) + H.values()[0];
        for (size_t i = 1; i < H.dirs().size(); ++i)
            best = std::max(best, Rational(dot(kr, H.dirs()[i]) + H.values()[i]));
        return {best, (norm_upper(kr) + H.lipschitz_bound()) * H.resolution()};
    }
    }
    throw std::logic_error("unreachable");
}

} // namespace

SphereValue shape_spectral(const SphereHamiltonian& H) {
    return sphere_max(H, LatticeClass(static_cast<size_t>(H.dimension()), Int(0)));
}

SphereValue oscillation_exact(const SphereHamiltonian& H) {
    SphereValue a = shape_spectral(H);
    SphereValue b = shape_spectral(-H);
    return {a.value + b.value, a.tol + b.tol};
}

SphereValue class_spectral(const SphereHamiltonian& H, const LatticeClass& k) {
    return sphere_max(H, k);
}

std::vector<SphereValue> spectrum(const SphereHamiltonian& H, const LatticeClass& k) {
    using Kind = SphereHamiltonian::Kind;
    if (static_cast<int>(k.size()) != H.dimension())
        throw MalformedInput("lattice class dimension mismatch");
    std::vector<Rational> kr = to_rational_vec(k);

    std::vector<SphereValue> cands;
    if (H.dimension() == 1) {
        Rational plus = H.kind() == Kind::Linear ? H.coeffs()[0] : H.value_at({Rational(1)});
        Rational minus = H.kind() == Kind::Linear ? -H.coeffs()[0] : H.value_at({Rational(-1)});
        cands.push_back({kr[0] + plus, Rational(0)});
        cands.push_back({-kr[0] + minus, Rational(0)});
    } else if (H.kind() == Kind::Linear) {
        std::vector<Rational> b = H.coeffs();
        for (size_t i = 0; i < b.size(); ++i) b[i] += kr[i];
        if (norm_sq(b) == 0) {
            cands.push_back({Rational(0), Rational(0)});
        } else {
            SphereValue s = sqrt_value(norm_sq(b));
            cands.push_back(s);
            cands.push_back({-s.value, s.tol});
        }
    } else if (H.kind() == Kind::PL && H.dimension() == 2) {
        const auto& dirs = H.dirs();
        // Arc interiors: f = b.u is critical exactly at +-b/|b|.
        for (const auto& cell : H.cells()) {
            std::vector<Rational> b = cell_gradient(H, cell);
            for (size_t i = 0; i < b.size(); ++i) b[i] += kr[i];
            if (norm_sq(b) == 0) { cands.push_back({Rational(0), Rational(0)}); continue; }
            for (int sgn : {1, -1}) {
                std::vector<Rational> d = {Rational(sgn) * b[0], Rational(sgn) * b[1]};
                if (cross(dirs[cell[0]], d) > 0 && cross(d, dirs[cell[1]]) > 0) {
                    SphereValue nb = sqrt_value(norm_sq(b));
                    cands.push_back({Rational(sgn) * nb.value, nb.tol});
                }
            }
        }
        // Vertices: critical when the one-sided slopes along the circle
        // bracket zero.  The CCW tangent at v is perp(v), so the slope of a
        // piece with gradient b is b.perp(v) -- exact signs.
        std::vector<std::optional<Rational>> dleft(dirs.size()), dright(dirs.size());
        for (const auto& cell : H.cells()) {
            std::vector<Rational> b = cell_gradient(H, cell);
            for (size_t i = 0; i < b.size(); ++i) b[i] += kr[i];
            auto slope_at = [&](size_t v) { return cross(dirs[v], b); };
            dright[cell[0]] = slope_at(cell[0]);
            dleft[cell[1]] = slope_at(cell[1]);
        }
        for (size_t i = 0; i < dirs.size(); ++i) {
            bool critical;
            if (dleft[i] && dright[i])
                critical = (*dleft[i] >= 0 && *dright[i] <= 0) ||
                           (*dleft[i] <= 0 && *dright[i] >= 0);
            else
                critical = true; // boundary vertex of a partial complex
            if (critical) cands.push_back({dot(kr, dirs[i]) + H.values()[i], Rational(0)});
        }
    } else if (H.kind() == Kind::Samples && H.dimension() == 2) {
        const auto& dirs = H.dirs();
        size_t m = dirs.size();
        if (m < 3) throw ResolutionTooCoarse("too few circle samples to detect local extrema");
        Rational tol = (norm_upper(kr) + H.lipschitz_bound()) * H.resolution();
        std::vector<Rational> f(m);
        for (size_t i = 0; i < m; ++i) f[i] = dot(kr, dirs[i]) + H.values()[i];
        for (size_t i = 0; i < m; ++i) {
            const Rational &a = f[(i + m - 1) % m], &b = f[i], &c = f[(i + 1) % m];
            if ((b >= a && b >= c) || (b <= a && b <= c)) cands.push_back({b, tol});
        }
    } else {
        throw ResolutionTooCoarse(
            "critical-cell detection is implemented for spheres of dimension <= 1");
    }

    // Deduplicate: exact values merge on equality; an enclosure containing an
    // exact value is absorbed by it; remaining candidates whose enclosures
    // overlap cannot be certified separate.
    std::vector<SphereValue> exact, inexact;
    for (const auto& c : cands) (c.tol == 0 ? exact : inexact).push_back(c);
    auto by_value = [](const SphereValue& a, const SphereValue& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.tol < b.tol;
    };
    std::sort(exact.begin(), exact.end(), by_value);
    exact.erase(std::unique(exact.begin(), exact.end(),
                            [](const SphereValue& a, const SphereValue& b) {
                                return a.value == b.value;
                            }),
                exact.end());
    std::vector<SphereValue> out = exact;
    for (const auto& c : inexact) {
        bool absorbed = false;
        for (const auto& e : exact)
            if (e.value >= c.value - c.tol && e.value <= c.value + c.tol) absorbed = true;
        if (!absorbed) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), by_value);
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SphereValue& a, const SphereValue& b) {
                              return a.value == b.value && a.tol == b.tol;
                          }),
              out.end());
    for (size_t i = 0; i + 1 < out.size(); ++i)
        if (out[i].value + out[i].tol >= out[i + 1].value - out[i + 1].tol)
            throw ResolutionTooCoarse("cannot certify criticality separation at this resolution");
    return out;
}

SphereValue systole(int n, const std::optional<LatticeClass>& k) {
    if (!k) return {Rational(1), Rational(0)}; // shortest nonzero vector of Z^n
    if (static_cast<int>(k->size()) != n)
        throw MalformedInput("lattice class dimension mismatch");
    Rational s = 0;
    for (const auto& c : *k) s += Rational(c) * Rational(c);
    if (s == 0) throw ContractibleClass();
    return sqrt_value(s);
}

SystolicReport check_systolic_bound(const Int& k) {
    if (k == 0) throw ContractibleClass("systolic bound needs k != 0");
    // phi^k is generated by k*p on T*S^1.
    SphereHamiltonian hk = SphereHamiltonian::linear({Rational(k)});
    SystolicReport r;
    r.c = shape_spectral(hk).value;
    r.gamma = oscillation_exact(hk).value;
    r.sys = systole(1, LatticeClass{k}).value;
    Rational sys_neg = systole(1, LatticeClass{-k}).value;
    r.margin = r.c - r.sys;
    r.ok = r.c >= r.sys && r.gamma >= r.sys + sys_neg;
    return r;
}

bool order_leq(const SphereHamiltonian& H, const SphereHamiltonian& G) {
    using Kind = SphereHamiltonian::Kind;
    SphereHamiltonian diff = H + (-G);
    bool pointwise = true;
    if (diff.kind() == Kind::Linear) {
        pointwise = diff.is_zero();
    } else {
        for (const auto& v : diff.values())
            if (v > 0) { pointwise = false; break; }
    }
    SphereValue s = shape_spectral(diff);
    if (pointwise && s.value > s.tol)
        throw Inconsistent("pointwise order holds on represented directions but "
                           "shape_spectral(H-G) = " + format_rational(s.value) + " > 0");
    if (!pointwise && s.value + s.tol <= 0)
        throw Inconsistent("a represented direction exceeds but shape_spectral(H-G) <= 0");
    return pointwise;
}

std::string class_str(const LatticeClass& k) {
    std::ostringstream os;
    for (size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    return os.str();
}

PersistenceAlgebra build_algebra(const std::vector<SphereHamiltonian>& hams_in,
                                 const std::vector<LatticeClass>& classes_in) {
    if (hams_in.empty() || classes_in.empty())
        throw ClosureViolation("empty Hamiltonian or class set");
    const int n = hams_in[0].dimension();

    std::vector<SphereHamiltonian> hams;
    for (const auto& h : hams_in) {
        if (h.dimension() != n) throw MalformedInput("mixed dimensions in label set");
        if (std::find(hams.begin(), hams.end(), h) == hams.end()) hams.push_back(h);
    }
    std::vector<LatticeClass> classes = classes_in;
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

    auto find_ham = [&](const SphereHamiltonian& h) -> std::optional<size_t> {
        for (size_t i = 0; i < hams.size(); ++i)
            if (hams[i] == h) return i;
        return std::nullopt;
    };
    auto find_class = [&](const LatticeClass& k) -> std::optional<size_t> {
        auto it = std::lower_bound(classes.begin(), classes.end(), k);
        if (it != classes.end() && *it == k) return size_t(it - classes.begin());
        return std::nullopt;
    };

    const LatticeClass k0(static_cast<size_t>(n), Int(0));
    auto zero_h = find_ham(SphereHamiltonian::zero(n));
    if (!zero_h) throw ClosureViolation("zero Hamiltonian missing from label set");
    if (!find_class(k0)) throw ClosureViolation("zero class missing from class set");
    for (const auto& h : hams)
        if (!find_ham(-h)) throw ClosureViolation("negation missing from label set");
    for (const auto& k : classes) {
        LatticeClass neg(k.size());
        for (size_t d = 0; d < k.size(); ++d) neg[d] = -k[d];
        if (!find_class(neg)) throw ClosureViolation("negated class missing from class set");
    }

    std::vector<std::string> labels(hams.size());
    for (size_t i = 0; i < hams.size(); ++i) {
        if (hams[i].kind() == SphereHamiltonian::Kind::Linear) {
            std::ostringstream os;
            os << "linear:";
            for (size_t d = 0; d < hams[i].coeffs().size(); ++d)
                os << (d ? "," : "") << format_rational(hams[i].coeffs()[d]);
            labels[i] = os.str();
        } else {
            labels[i] = "H" + std::to_string(i);
        }
    }

    PersistenceAlgebra A;
    A.labels = labels;
    A.identity = labels[*zero_h];

    // Per-label barcode: one bar [c_k, inf) per class, in class order; the
    // colim basis reorders by birth, so keep the class -> basis position map.
    std::vector<std::vector<size_t>> basis_pos(hams.size());
    for (size_t i = 0; i < hams.size(); ++i) {
        Barcode bc;
        for (const auto& k : classes) {
            SphereValue c = class_spectral(hams[i], k);
            if (!c.exact())
                throw MalformedInput("inexact spectral value for label " + labels[i] +
                                     ", class " + class_str(k) +
                                     "; build_algebra needs exact data");
            bc.bars.push_back({Extended(c.value), Extended::pos_inf()});
        }
        std::vector<size_t> pos = colim_basis_positions(bc);
        basis_pos[i].resize(classes.size());
        for (size_t b = 0; b < pos.size(); ++b) basis_pos[i][pos[b]] = b;
        A.modules.emplace(labels[i], std::move(bc));
    }

    for (size_t i = 0; i < hams.size(); ++i) {
        if (auto inv = find_ham(-hams[i])) A.inverse[labels[i]] = labels[*inv];
        for (size_t j = 0; j < hams.size(); ++j)
            if (auto s = find_ham(hams[i] + hams[j]))
                A.compose[{labels[i], labels[j]}] = labels[*s];
    }

    size_t zero_class = *find_class(k0);
    A.unit = ColimitClass::from_indices({basis_pos[*zero_h][zero_class]});
    for (size_t i = 0; i < hams.size(); ++i)
        A.unit_overrides[labels[i]] = ColimitClass::from_indices({basis_pos[i][zero_class]});

    for (size_t i = 0; i < hams.size(); ++i)
        for (size_t j = 0; j < hams.size(); ++j) {
            auto s = find_ham(hams[i] + hams[j]);
            if (!s) continue;
            for (size_t ki = 0; ki < classes.size(); ++ki)
                for (size_t kj = 0; kj < classes.size(); ++kj) {
                    LatticeClass sum(classes[ki].size());
                    for (size_t d = 0; d < sum.size(); ++d)
                        sum[d] = classes[ki][d] + classes[kj][d];
                    auto ks = find_class(sum);
                    if (!ks) continue;
                    A.products.push_back({labels[i], labels[j], basis_pos[i][ki],
                                          basis_pos[j][kj], {basis_pos[*s][*ks]}});
                }
        }

    A.validate_strict();
    return A;
}

} // namespace eternalbar
