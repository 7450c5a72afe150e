#include "selftest.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>

#include "eternalbar/algebra.hpp"
#include "eternalbar/errors.hpp"
#include "eternalbar/filtered_complex.hpp"
#include "eternalbar/json_io.hpp"
#include "eternalbar/novikov.hpp"
#include "eternalbar/persistence.hpp"
#include "eternalbar/torus.hpp"

namespace eternalbar::selftest {

namespace {

// ---------------------------------------------------------------------------
// Oracles

size_t gf2_rank(std::vector<uint64_t> cols) {
    size_t rank = 0;
    for (size_t i = 0; i < cols.size(); ++i) {
        for (size_t j = 0; j < rank; ++j)
            cols[i] = std::min(cols[i], cols[i] ^ cols[j]);
        if (cols[i]) {
            std::swap(cols[i], cols[rank]);
            // keep reduced: highest bits strictly decreasing is enough for rank
            for (size_t j = 0; j < rank; ++j)
                cols[j] = std::min(cols[j], cols[j] ^ cols[rank]);
            ++rank;
        }
    }
    return rank;
}

Rational rand_rational(std::mt19937& rng, int lo, int hi, int maxden) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
    return Rational(num(rng), den(rng));
}

struct Failure {
    bool failed = false;
    std::string detail;
    void fail(const std::string& d) {
        if (!failed) detail = d;
        failed = true;
    }
};

// Shared random-presentation corpus for criteria 1 and 2.
std::vector<Presentation> presentation_corpus(unsigned seed, int count) {
    std::mt19937 rng(seed);
    std::vector<Presentation> out;
    for (int it = 0; it < count; ++it) {
        std::uniform_int_distribution<int> ngen_d(1, 8);
        int ngen = ngen_d(rng);
        std::uniform_int_distribution<int> nrel_d(0, std::min(12 - ngen, 6));
        int nrel = nrel_d(rng);
        Presentation p;
        for (int i = 0; i < ngen; ++i) {
            PresGenerator g;
            g.id = "g" + std::to_string(i);
            std::uniform_int_distribution<int> coin(0, 4);
            g.birth = coin(rng) == 0 ? Extended::neg_inf()
                                     : Extended(rand_rational(rng, -6, 6, 3));
            p.generators.push_back(std::move(g));
        }
        for (int r = 0; r < nrel; ++r) {
            PresRelation rel;
            std::uniform_int_distribution<int> pick(0, ngen - 1);
            std::set<std::string> support;
            int sz = 1 + pick(rng) % 3;
            Extended maxbirth = Extended::neg_inf();
            for (int s = 0; s < sz; ++s) {
                int gi = pick(rng);
                if (support.insert(p.generators[gi].id).second)
                    maxbirth = std::max(maxbirth, p.generators[gi].birth,
                                        [](const Extended& a, const Extended& b) { return a < b; });
            }
            rel.support.assign(support.begin(), support.end());
            std::uniform_int_distribution<int> coin(0, 9);
            if (coin(rng) == 0) {
                rel.level = Extended::pos_inf();
            } else {
                Rational base = maxbirth.is_finite() ? maxbirth.finite() : Rational(-6);
                rel.level = Extended(base + rand_rational(rng, 0, 4, 2));
            }
            p.relations.push_back(std::move(rel));
        }
        out.push_back(std::move(p));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Criterion 1: barcode vs brute-force GF(2) rank of V_s -> V_t

bool criterion1(const std::vector<Presentation>& corpus, std::string& detail) {
    Failure f;
    for (size_t pi = 0; pi < corpus.size() && !f.failed; ++pi) {
        const Presentation& p = corpus[pi];
        Barcode bc = barcode(p);

        std::vector<Extended> crit;
        crit.push_back(Extended::neg_inf());
        for (const auto& g : p.generators)
            if (g.birth.is_finite()) {
                crit.push_back(g.birth);
                crit.push_back(Extended(g.birth.finite() + 1));
                crit.push_back(Extended(g.birth.finite() - 1));
            }
        for (const auto& r : p.relations)
            if (r.level.is_finite()) {
                crit.push_back(r.level);
                crit.push_back(Extended(r.level.finite() + 1));
                crit.push_back(Extended(r.level.finite() - 1));
            }
        std::sort(crit.begin(), crit.end(), [](const Extended& a, const Extended& b) { return a < b; });
        crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

        std::map<std::string, size_t> idx;
        for (size_t i = 0; i < p.generators.size(); ++i) idx[p.generators[i].id] = i;

        for (size_t i = 0; i < crit.size() && !f.failed; ++i)
            for (size_t j = i; j < crit.size() && !f.failed; ++j) {
                const Extended &s = crit[i], &t = crit[j];
                size_t bars = 0;
                for (const auto& bar : bc.bars)
                    if (bar.birth <= s && t < bar.death) ++bars;
                std::vector<uint64_t> rel_cols, both;
                for (const auto& r : p.relations) {
                    if (!(r.level <= t)) continue;
                    uint64_t m = 0;
                    for (const auto& id : r.support) m ^= uint64_t(1) << idx[id];
                    rel_cols.push_back(m);
                }
                both = rel_cols;
                for (size_t g = 0; g < p.generators.size(); ++g)
                    if (p.generators[g].birth <= s) both.push_back(uint64_t(1) << g);
                size_t rank = gf2_rank(both) - gf2_rank(rel_cols);
                if (rank != bars) {
                    std::ostringstream os;
                    os << "presentation " << pi << ", s=" << s.str() << ", t=" << t.str()
                       << ": bars " << bars << " vs rank " << rank;
                    f.fail(os.str());
                }
            }
    }
    detail = f.failed ? f.detail : "200 presentations, all V_s->V_t ranks match";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 2: eternal span = hits-everywhere = image(lim -> colim); rfh
// kills eternal classes

bool criterion2(const std::vector<Presentation>& corpus, std::string& detail) {
    Failure f;
    for (size_t pi = 0; pi < corpus.size() && !f.failed; ++pi) {
        Barcode bc = barcode(corpus[pi]);
        std::vector<Bar> basis = colim_basis(bc);
        size_t m = basis.size();
        std::vector<size_t> et = eternal_subspace(bc);
        std::set<size_t> et_set(et.begin(), et.end());

        std::vector<Extended> grid;
        for (const auto& b : basis)
            if (b.birth.is_finite()) {
                grid.push_back(b.birth);
                grid.push_back(Extended(b.birth.finite() - 1));
            }
        if (grid.empty()) grid.push_back(Extended(0));

        for (uint64_t mask = 1; mask < (uint64_t(1) << m) && !f.failed; ++mask) {
            std::vector<size_t> idxs;
            for (size_t b = 0; b < m; ++b)
                if (mask & (uint64_t(1) << b)) idxs.push_back(b);
            ColimitClass z = ColimitClass::from_indices(idxs);
            bool eternal = is_eternal(bc, z);
            bool hits_all = true;
            for (const auto& s : grid)
                if (!hits_at(bc, z, s)) { hits_all = false; break; }
            bool in_full_span = true;
            for (size_t b : idxs)
                if (!et_set.count(b)) { in_full_span = false; break; }
            if (eternal != hits_all || eternal != in_full_span) {
                std::ostringstream os;
                os << "presentation " << pi << " mask " << mask << ": eternal=" << eternal
                   << " hits_all=" << hits_all << " span=" << in_full_span;
                f.fail(os.str());
            }
        }

        size_t half = 0;
        for (const auto& bar : bc.bars)
            if (bar.birth.is_neg_inf() != bar.death.is_pos_inf()) ++half;
        if (rfh_rank(bc) != half)
            f.fail("presentation " + std::to_string(pi) + ": rfh_rank counts a full or finite bar");
    }
    detail = f.failed ? f.detail : "eternal span characterization holds on the corpus";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 3: Novikov field axioms, valuation, windowed division

NovikovScalar rand_scalar(std::mt19937& rng, int max_terms) {
    std::uniform_int_distribution<int> sz(0, max_terms);
    std::vector<Rational> exps;
    int n = sz(rng);
    for (int i = 0; i < n; ++i) exps.push_back(rand_rational(rng, -20, 20, 3));
    return NovikovScalar::from_exponents(std::move(exps));
}

bool criterion3(std::string& detail) {
    Failure f;
    std::mt19937 rng(30303);
    for (int it = 0; it < 1000 && !f.failed; ++it) {
        NovikovScalar x = rand_scalar(rng, 5), y = rand_scalar(rng, 5), z = rand_scalar(rng, 5);
        if (!((x + y) + z == x + (y + z))) f.fail("addition not associative");
        if (!(x + y == y + x)) f.fail("addition not commutative");
        if (!(x + x == NovikovScalar::zero())) f.fail("characteristic 2 violated");
        if (!((x * y) * z == x * (y * z))) f.fail("multiplication not associative");
        if (!(x * y == y * x)) f.fail("multiplication not commutative");
        if (!(x * (y + z) == x * y + x * z)) f.fail("distributivity violated");
        if (!(NovikovScalar::one() * x == x)) f.fail("unit violated");
        Extended vx = x.valuation(), vy = y.valuation(), vxy = (x * y).valuation();
        Extended expect = (vx.is_pos_inf() || vy.is_pos_inf()) ? Extended::pos_inf() : vx + vy;
        if (vxy != expect) f.fail("valuation not multiplicative");
        if (!y.is_zero()) {
            Rational w = 5;
            NovikovScalar q = nov_div_window(x, y, w);
            NovikovScalar r = x + q * y; // char 2: x - q*y
            if (!r.is_zero() && !x.is_zero() &&
                !(r.valuation() >= Extended(vx.finite() + w)))
                f.fail("windowed-division residual valuation below the bound");
            if (!x.is_zero())
                for (const auto& e : q.support()) {
                    Rational base = vx.finite() - vy.finite();
                    if (e < base || e >= base + w)
                        f.fail("quotient support escapes the division window");
                }
            if (x.is_zero() && !q.is_zero()) f.fail("division of zero is nonzero");
        }
    }
    detail = f.failed ? f.detail : "1000 random triples, axioms and division bound hold";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 4: min_filtration vs brute force over boundary combinations

bool criterion4(std::string& detail) {
    Failure f;
    std::mt19937 rng(40404);
    for (int it = 0; it < 100 && !f.failed; ++it) {
        std::uniform_int_distribution<int> na(2, 5), nb(1, 3), small(0, 2), act(0, 3);
        int a = na(rng), b = nb(rng);
        std::vector<Generator> gens;
        for (int i = 0; i < a; ++i)
            gens.push_back({"x" + std::to_string(i), Rational(act(rng)), "0", std::nullopt});
        for (int i = 0; i < b; ++i)
            gens.push_back({"y" + std::to_string(i), Rational(act(rng) + 1), "0", std::nullopt});
        std::map<std::string, std::map<std::string, NovikovScalar>> boundary;
        std::uniform_int_distribution<int> coin(0, 1);
        for (int i = 0; i < b; ++i) {
            std::map<std::string, NovikovScalar> col;
            // x0 is reserved: never a boundary target, so classes containing
            // it are nonzero.
            for (int j = 1; j < a; ++j)
                if (coin(rng)) col["x" + std::to_string(j)] = NovikovScalar::tau(small(rng));
            if (!col.empty()) boundary["y" + std::to_string(i)] = std::move(col);
        }
        FilteredComplex cx(gens, boundary);

        Chain z;
        z.add_term("x0", NovikovScalar::tau(small(rng)));
        for (int j = 1; j < a; ++j)
            if (coin(rng)) z.add_term("x" + std::to_string(j), NovikovScalar::tau(small(rng)));

        Extended lib = min_filtration(cx, z);

        // Independent oracle: every exponent in this corpus is an integer, so a
        // representative of level -M exists iff all monomials of weighted
        // exponent < M can be cancelled -- a GF(2) parity system over a bounded
        // integer exponent grid, one unknown per (column, shift) pair.
        const int E = 12; // shift grid [-E, E]; contributions land in [-E, E+2]
        const int W = 2 * E + 1;
        auto as_int = [](const Rational& q) {
            return static_cast<int>(std::llround(to_double(q)));
        };
        std::vector<std::string> ycols;
        for (const auto& [src, col] : cx.boundary()) ycols.push_back(src);
        const int nvars = static_cast<int>(ycols.size()) * W;
        const int words = (nvars + 1 + 63) / 64;
        auto feasible = [&](int M) {
            std::vector<std::vector<uint64_t>> rows;
            for (int i = 0; i < a; ++i) {
                std::string xid = "x" + std::to_string(i);
                int action = as_int(cx.generator(xid).action);
                auto zit = z.terms.find(xid);
                int zexp = zit == z.terms.end()
                               ? INT_MIN
                               : as_int(zit->second.support().front());
                for (int e = -E; e <= E + 2; ++e) {
                    if (e + action >= M) continue;
                    std::vector<uint64_t> eq(static_cast<size_t>(words), 0);
                    bool nonzero = false;
                    for (size_t j = 0; j < ycols.size(); ++j) {
                        auto cit = cx.boundary().at(ycols[j]).find(xid);
                        if (cit == cx.boundary().at(ycols[j]).end()) continue;
                        int c = e - as_int(cit->second.support().front());
                        if (c < -E || c > E) continue;
                        int v = static_cast<int>(j) * W + (c + E);
                        eq[static_cast<size_t>(v) / 64] ^= uint64_t(1) << (v % 64);
                        nonzero = true;
                    }
                    if (e == zexp) {
                        eq[static_cast<size_t>(nvars) / 64] ^= uint64_t(1) << (nvars % 64);
                        nonzero = true;
                    }
                    if (nonzero) rows.push_back(std::move(eq));
                }
            }
            // Gaussian elimination; infeasible iff a row reduces to 0 = 1.
            std::vector<std::vector<uint64_t>> basis;
            for (auto& r : rows) {
                for (const auto& p : basis) {
                    int lead = -1;
                    for (int v = 0; v < nvars && lead < 0; ++v)
                        if (p[static_cast<size_t>(v) / 64] >> (v % 64) & 1) lead = v;
                    if (lead >= 0 && (r[static_cast<size_t>(lead) / 64] >> (lead % 64) & 1))
                        for (size_t w = 0; w < r.size(); ++w) r[w] ^= p[w];
                }
                bool any_var = false;
                for (int v = 0; v < nvars && !any_var; ++v)
                    any_var = r[static_cast<size_t>(v) / 64] >> (v % 64) & 1;
                if (!any_var) {
                    if (r[static_cast<size_t>(nvars) / 64] >> (nvars % 64) & 1) return false;
                    continue;
                }
                basis.push_back(std::move(r));
            }
            return true;
        };
        int bestM = 0;
        for (int M = 0; M <= 8; ++M)
            if (feasible(M)) bestM = M;
        Extended best(Rational(-bestM));
        if (!(lib == best)) {
            std::ostringstream os;
            os << "complex " << it << ": min_filtration " << lib.str() << " vs brute force "
               << best.str();
            f.fail(os.str());
        }
    }
    detail = f.failed ? f.detail : "100 random complexes match the GF(2) level-feasibility oracle";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Torus helpers

const std::vector<std::vector<Rational>>& pyth_dirs() {
    static const std::vector<std::vector<Rational>> dirs = [] {
        std::vector<std::vector<Rational>> d;
        auto add = [&](int x, int y, int r) {
            d.push_back({Rational(x, r), Rational(y, r)});
        };
        add(1, 0, 1); add(0, 1, 1); add(-1, 0, 1); add(0, -1, 1);
        add(3, 4, 5); add(-3, 4, 5); add(3, -4, 5); add(-3, -4, 5);
        add(4, 3, 5); add(-4, 3, 5); add(4, -3, 5); add(-4, -3, 5);
        add(5, 12, 13); add(-12, 5, 13); add(12, -5, 13); add(-5, -12, 13);
        add(8, 15, 17); add(-15, 8, 17);
        return d;
    }();
    return dirs;
}

// Dense exact rational unit circle: tan-half-angle points rounded to
// denominator 64, plus (-1,0); max angular gap well under 1/16.
std::vector<std::vector<Rational>> dense_circle(int n) {
    std::vector<std::vector<Rational>> dirs;
    for (int j = 0; j < n; ++j) {
        double theta = -M_PI + 2 * M_PI * (j + 0.5) / n;
        double t = std::tan(theta / 2);
        Rational tr(static_cast<long long>(std::llround(t * 64)), 64);
        Rational den = 1 + tr * tr;
        dirs.push_back({(1 - tr * tr) / den, 2 * tr / den});
    }
    dirs.push_back({Rational(-1), Rational(0)});
    return dirs;
}

Rational dot_r(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Rational s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// Criterion 5: shape invariant and oscillation, PL exact / sampled tolerance

bool criterion5(std::string& detail) {
    Failure f;
    SphereValue c1 = shape_spectral(SphereHamiltonian::linear({Rational(1)}));
    if (!(c1.exact() && c1.value == 1)) f.fail("H=p: c != 1");
    SphereValue g1 = oscillation_exact(SphereHamiltonian::linear({Rational(1)}));
    if (!(g1.exact() && g1.value == 2)) f.fail("H=p: gamma != 2");

    std::mt19937 rng(50505);
    std::uniform_int_distribution<int> qi(1, 5), qd(1, 2), sign(0, 1), pickd(0, 17);
    for (int it = 0; it < 50 && !f.failed; ++it) {
        // H = restriction of a linear function with Pythagorean-scaled
        // gradient w: the PL maximum is |w|, a rational, so c must be exact.
        Rational q = Rational(qi(rng), qd(rng)) * (sign(rng) ? 1 : -1);
        const auto& wd = pyth_dirs()[static_cast<size_t>(pickd(rng))];
        std::vector<Rational> w = {q * wd[0], q * wd[1]};
        Rational absq = q < 0 ? -q : q;

        std::vector<std::vector<Rational>> dirs(pyth_dirs().begin(), pyth_dirs().begin() + 4);
        for (int extra = 0; extra < 4; ++extra) {
            const auto& d = pyth_dirs()[static_cast<size_t>(pickd(rng))];
            if (std::find(dirs.begin(), dirs.end(), d) == dirs.end()) dirs.push_back(d);
        }
        std::vector<Rational> values;
        for (const auto& d : dirs) values.push_back(dot_r(w, d));
        SphereHamiltonian H = SphereHamiltonian::piecewise_linear(2, dirs, values);

        SphereValue c = shape_spectral(H);
        if (!c.exact() || c.value != absq) f.fail("PL shape_spectral not the exact maximum");
        SphereValue g = oscillation_exact(H);
        if (!g.exact() || g.value != 2 * absq) f.fail("PL oscillation != max - min");

        double grid_max = -1e18;
        for (int a = 0; a < 720; ++a) {
            double th = 2 * M_PI * a / 720;
            grid_max = std::max(grid_max,
                                to_double(w[0]) * std::cos(th) + to_double(w[1]) * std::sin(th));
        }
        if (std::abs(grid_max - to_double(c.value)) > 1e-3)
            f.fail("PL shape_spectral disagrees with the dense-grid scan");

        // Sampled representation: tolerance Lip(H) * eps.
        auto sdirs = dense_circle(256);
        std::vector<Rational> svals;
        for (const auto& d : sdirs) svals.push_back(dot_r(w, d));
        SphereHamiltonian S = SphereHamiltonian::samples(2, sdirs, svals, Rational(1, 16), absq);
        SphereValue cs = shape_spectral(S);
        if (!(cs.tol == absq * Rational(1, 16)))
            f.fail("sampled tolerance is not Lip(H)*eps");
        if (!(cs.value <= absq && absq <= cs.value + cs.tol))
            f.fail("sampled shape_spectral enclosure misses the true maximum");
    }
    detail = f.failed ? f.detail : "H=p exact; 50 PL exact; sampled within Lip*eps";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 6: class formula |k|, spectrum membership, subadditivity

bool criterion6(std::string& detail) {
    Failure f;
    std::mt19937 rng(60606);
    std::uniform_int_distribution<int> ki(-20, 20);

    std::vector<std::vector<Rational>> dirs(pyth_dirs().begin(), pyth_dirs().begin() + 8);
    SphereHamiltonian pl0 = SphereHamiltonian::piecewise_linear(
        2, dirs, std::vector<Rational>(dirs.size(), Rational(0)));

    for (int it = 0; it < 100 && !f.failed; ++it) {
        Int kx = ki(rng), ky = ki(rng);
        if (kx == 0 && ky == 0) kx = 1;
        LatticeClass k = {kx, ky};
        SphereValue sv = sqrt_value(Rational(kx * kx + ky * ky));
        for (const SphereHamiltonian& H0 :
             {pl0, SphereHamiltonian::zero(2)}) {
            SphereValue c = class_spectral(H0, k);
            if (!(c.value == sv.value && c.tol == sv.tol))
                f.fail("class_spectral(0,k) != |k| at k=" + class_str(k));
        }
        Int nsq = kx * kx + ky * ky;
        Int r = boost::multiprecision::sqrt(nsq);
        if (r * r == nsq && !class_spectral(pl0, k).exact())
            f.fail("Pythagorean |k| not certified exact at k=" + class_str(k));
        if (!(systole(2, k).value == sv.value)) f.fail("systole != |k|");

        SphereValue c = class_spectral(pl0, k);
        bool member = false;
        for (const auto& s : spectrum(pl0, k)) {
            Rational d = s.value - c.value;
            if (d < 0) d = -d;
            if (d <= s.tol + c.tol) member = true;
        }
        if (!member) f.fail("class_spectral not in spectrum at k=" + class_str(k));
    }

    std::uniform_int_distribution<int> ai(-9, 9), kl(-5, 5);
    int violations = 0;
    for (int it = 0; it < 1000; ++it) {
        if (it % 2 == 0) {
            // n = 1: everything exact.
            SphereHamiltonian H = SphereHamiltonian::linear({Rational(ai(rng))});
            SphereHamiltonian G = SphereHamiltonian::linear({Rational(ai(rng))});
            LatticeClass k = {Int(kl(rng))}, l = {Int(kl(rng))}, s = {k[0] + l[0]};
            if (class_spectral(H + G, s).value >
                class_spectral(H, k).value + class_spectral(G, l).value)
                ++violations;
        } else {
            SphereHamiltonian H = SphereHamiltonian::linear({Rational(ai(rng)), Rational(ai(rng))});
            SphereHamiltonian G = SphereHamiltonian::linear({Rational(ai(rng)), Rational(ai(rng))});
            LatticeClass k = {Int(kl(rng)), Int(kl(rng))}, l = {Int(kl(rng)), Int(kl(rng))};
            LatticeClass s = {k[0] + l[0], k[1] + l[1]};
            SphereValue cs = class_spectral(H + G, s);
            SphereValue ch = class_spectral(H, k), cg = class_spectral(G, l);
            if (cs.value - cs.tol > ch.value + ch.tol + cg.value + cg.tol) ++violations;
        }
    }
    if (violations != 0)
        f.fail("subadditivity violated on " + std::to_string(violations) + " tuples");

    detail = f.failed ? f.detail : "|k| formula, spectrum membership, 0/1000 violations";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 7: systolic bound equality for k in {+-1..+-5}

bool criterion7(std::string& detail) {
    Failure f;
    for (int k = -5; k <= 5 && !f.failed; ++k) {
        if (k == 0) continue;
        SystolicReport r = check_systolic_bound(Int(k));
        Rational absk = k < 0 ? -k : k;
        if (!r.ok) f.fail("bound fails at k=" + std::to_string(k));
        if (!(r.c == absk && r.sys == absk && r.margin == 0))
            f.fail("margin nonzero at k=" + std::to_string(k));
        if (!(r.gamma == 2 * absk)) f.fail("gamma != 2|k| at k=" + std::to_string(k));
    }
    detail = f.failed ? f.detail : "c = |k| = sys_k with margin 0 for all ten k";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 8: integer invariant vs hits_at integer grid; relabeling

bool criterion8(std::string& detail) {
    Failure f;
    std::mt19937 rng(80808);
    for (int it = 0; it < 100 && !f.failed; ++it) {
        std::uniform_int_distribution<int> mb(1, 6), num(-8, 8), den(1, 3), extra(0, 2);
        int m = mb(rng);
        std::set<Rational> births;
        while (static_cast<int>(births.size()) < m)
            births.insert(Rational(num(rng), den(rng)));
        Barcode bc;
        for (const auto& b : births) bc.bars.push_back({Extended(b), Extended::pos_inf()});
        for (int e = extra(rng); e > 0; --e) {
            Rational b(num(rng), den(rng));
            bc.bars.push_back({Extended(b), Extended(b + 1)}); // finite, not in colim
        }
        std::shuffle(bc.bars.begin(), bc.bars.end(), rng);

        std::vector<Bar> basis = colim_basis(bc);
        std::uniform_int_distribution<uint64_t> maskd(1, (uint64_t(1) << basis.size()) - 1);
        uint64_t mask = maskd(rng);
        std::vector<size_t> idxs;
        for (size_t b = 0; b < basis.size(); ++b)
            if (mask & (uint64_t(1) << b)) idxs.push_back(b);
        ColimitClass z = ColimitClass::from_indices(idxs);

        PersistenceAlgebra A;
        A.labels = {"g"};
        A.identity = "g";
        A.modules["g"] = bc;
        A.unit = ColimitClass::from_indices({0});
        Int inv = integer_invariant(A, "g", z, Rational(1));

        long long n = -100;
        while (!hits_at(bc, z, Extended(Rational(n)))) ++n;
        if (inv != n)
            f.fail("barcode " + std::to_string(it) + ": ceil(c)=" + inv.str() +
                   " but first integer hit is " + std::to_string(n));

        // A barcode-preserving relabeling (bar reordering) must not move it.
        Barcode bc2 = bc;
        std::shuffle(bc2.bars.begin(), bc2.bars.end(), rng);
        A.modules["g"] = bc2;
        if (integer_invariant(A, "g", z, Rational(1)) != inv)
            f.fail("integer invariant not relabeling-invariant at " + std::to_string(it));
    }
    detail = f.failed ? f.detail : "100 barcodes, ceil(c) = first integer hit, stable";
    return !f.failed;
}

// ---------------------------------------------------------------------------
// Criterion 9: torus algebra passes verifiers; planted fixtures fail

bool criterion9(std::string& detail) {
    Failure f;
    std::vector<SphereHamiltonian> hams = {
        SphereHamiltonian::zero(1),
        SphereHamiltonian::linear({Rational(1)}),
        SphereHamiltonian::linear({Rational(-1)}),
    };
    std::vector<LatticeClass> classes;
    for (int k = -2; k <= 2; ++k) classes.push_back({Int(k)});
    PersistenceAlgebra A = build_algebra(hams, classes);
    if (!check_subadditivity(A).ok) f.fail("torus algebra fails subadditivity");
    if (!check_ideal(A).ok) f.fail("torus algebra fails the ideal check");
    if (unit_eternal_criterion(A).eternal) f.fail("torus unit reported eternal");
    for (const auto& l : A.labels)
        if (!eternal_subspace(A.module_of(l)).empty())
            f.fail("torus label carries a fully infinite bar");

    {
        // Planted subadditivity violation: 1*1 lands on a later-born bar.
        PersistenceAlgebra P;
        P.labels = {"e"};
        P.identity = "e";
        Barcode bc;
        bc.bars.push_back({Extended(0), Extended::pos_inf()});
        bc.bars.push_back({Extended(5), Extended::pos_inf()});
        P.modules["e"] = bc;
        P.compose[{"e", "e"}] = "e";
        P.unit = ColimitClass::from_indices({0});
        P.products.push_back({"e", "e", 0, 0, {1}});
        P.validate_structure();
        CheckReport r = check_subadditivity(P);
        if (r.ok || r.witness.find("(e,e,0,0)") == std::string::npos)
            f.fail("planted subadditivity violation not reported with its entry");
    }
    {
        // Planted ideal violation: eternal input, half-infinite output.
        PersistenceAlgebra P;
        P.labels = {"e"};
        P.identity = "e";
        Barcode bc;
        bc.bars.push_back({Extended::neg_inf(), Extended::pos_inf()});
        bc.bars.push_back({Extended(1), Extended::pos_inf()});
        P.modules["e"] = bc;
        P.compose[{"e", "e"}] = "e";
        P.unit = ColimitClass::from_indices({0});
        P.products.push_back({"e", "e", 0, 0, {1}});
        P.validate_structure();
        CheckReport r = check_ideal(P);
        if (r.ok || r.witness.find("(e,e,0,0)") == std::string::npos)
            f.fail("planted ideal violation not reported with its entry");
    }
    detail = f.failed ? f.detail : "torus algebra verified; planted fixtures rejected";
    return !f.failed;
}

} // namespace

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    auto timed = [&](int id, const std::string& name, double budget, auto&& fn) {
        CriterionResult r;
        r.id = id;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        r.pass = fn(r.detail);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.pass && r.seconds >= budget) {
            r.pass = false;
            r.detail = "exceeded time budget of " + std::to_string(budget) + " s";
        }
        out.push_back(std::move(r));
    };

    std::vector<Presentation> corpus = presentation_corpus(10101, 200);
    timed(1, "barcode rank oracle", 10.0,
          [&](std::string& d) { return criterion1(corpus, d); });
    timed(2, "eternal subspace characterization", 5.0,
          [&](std::string& d) { return criterion2(corpus, d); });
    timed(3, "Novikov field suite", 2.0, [](std::string& d) { return criterion3(d); });
    timed(4, "minimal filtration brute force", 10.0,
          [](std::string& d) { return criterion4(d); });
    timed(5, "shape invariant", 5.0, [](std::string& d) { return criterion5(d); });
    timed(6, "class formula and subadditivity", 20.0,
          [](std::string& d) { return criterion6(d); });
    timed(7, "systolic bound", 1.0, [](std::string& d) { return criterion7(d); });
    timed(8, "integer invariant", 2.0, [](std::string& d) { return criterion8(d); });
    timed(9, "algebra verifiers", 2.0, [](std::string& d) { return criterion9(d); });

    double total = 0;
    for (const auto& r : out) total += r.seconds;
    CriterionResult r10;
    r10.id = 10;
    r10.name = "total wall time";
    r10.seconds = total;
    r10.pass = total < 60.0;
    std::ostringstream os;
    os.precision(2);
    os << std::fixed << total << " s";
    r10.detail = os.str();
    out.push_back(std::move(r10));
    return out;
}

} // namespace eternalbar::selftest
