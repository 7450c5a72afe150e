#include "eternalbar/filtered_complex.hpp"

#include <algorithm>

#include "eternalbar/errors.hpp"

namespace eternalbar {

bool Chain::is_zero() const {
    for (const auto& [id, c] : terms)
        if (!c.is_zero()) return false;
    return true;
}

void Chain::add_term(const std::string& id, const NovikovScalar& coeff) {
    auto it = terms.find(id);
    if (it == terms.end()) {
        if (!coeff.is_zero()) terms[id] = coeff;
        return;
    }
    it->second = it->second + coeff;
    if (it->second.is_zero()) terms.erase(it);
}

Chain operator+(const Chain& a, const Chain& b) {
    Chain r = a;
    for (const auto& [id, c] : b.terms) r.add_term(id, c);
    return r;
}

FilteredComplex::FilteredComplex(
    std::vector<Generator> generators,
    std::map<std::string, std::map<std::string, NovikovScalar>> boundary)
    : generators_(std::move(generators)), boundary_(std::move(boundary)) {
    for (size_t i = 0; i < generators_.size(); ++i)
        index_.emplace(generators_[i].id, i); // duplicates reported by verify
    for (auto& [src, col] : boundary_)
        for (auto it = col.begin(); it != col.end();)
            it = it->second.is_zero() ? col.erase(it) : std::next(it);
}

bool FilteredComplex::has_generator(const std::string& id) const {
    return index_.count(id) > 0;
}

const Generator& FilteredComplex::generator(const std::string& id) const {
    return generators_.at(index_.at(id));
}

size_t FilteredComplex::index_of(const std::string& id) const { return index_.at(id); }

Chain FilteredComplex::boundary_of(const std::string& id) const {
    Chain out;
    auto it = boundary_.find(id);
    if (it == boundary_.end()) return out;
    for (const auto& [target, coeff] : it->second) out.add_term(target, coeff);
    return out;
}

Chain FilteredComplex::boundary_of(const Chain& z) const {
    Chain out;
    for (const auto& [id, coeff] : z.terms) {
        auto it = boundary_.find(id);
        if (it == boundary_.end()) continue;
        for (const auto& [target, c] : it->second) out.add_term(target, coeff * c);
    }
    return out;
}

VerifyReport verify_complex(const FilteredComplex& c) {
    auto fail = [](std::string what, std::string witness) {
        return VerifyReport{false, std::move(what), std::move(witness)};
    };

    std::map<std::string, int> seen;
    for (const auto& g : c.generators())
        if (++seen[g.id] > 1) return fail("duplicate generator id", g.id);

    for (const auto& [src, col] : c.boundary()) {
        if (!c.has_generator(src)) return fail("boundary on unknown generator", src);
        for (const auto& [target, coeff] : col) {
            if (!c.has_generator(target))
                return fail("boundary entry targets unknown generator", src + " -> " + target);
            for (const auto& a : coeff.support())
                if (a < 0)
                    return fail("negative area",
                                src + " -> " + target + " area " + format_rational(a));
            if (c.generator(src).hclass != c.generator(target).hclass)
                return fail("boundary entry crosses homotopy classes", src + " -> " + target);
        }
    }

    for (const auto& [src, col] : c.boundary()) {
        Chain dd = c.boundary_of(c.boundary_of(src));
        if (!dd.is_zero()) {
            std::string mid = col.begin()->first;
            std::string tail = dd.terms.begin()->first;
            return fail("d*d != 0", src + " -> " + mid + " -> " + tail);
        }
    }
    return {};
}

Extended filtration_level(const FilteredComplex& c, const Chain& z) {
    bool any = false;
    Rational best;
    for (const auto& [id, coeff] : z.terms) {
        const Rational& action = c.generator(id).action;
        for (const auto& b : coeff.support()) {
            Rational w = b + action;
            if (!any || w < best) best = w, any = true;
        }
    }
    if (!any) return Extended::neg_inf();
    return Extended(-best);
}

// ---------------------------------------------------------------------------
// Exact column reduction (characteristic-2 cross-multiplication).

namespace {

using Column = std::map<size_t, NovikovScalar>;

Column scaled(const Column& col, const NovikovScalar& s) {
    Column out;
    for (const auto& [r, v] : col) {
        NovikovScalar w = v * s;
        if (!w.is_zero()) out.emplace(r, std::move(w));
    }
    return out;
}

void add_into(Column& dst, const Column& src) {
    for (const auto& [r, v] : src) {
        auto it = dst.find(r);
        if (it == dst.end()) {
            if (!v.is_zero()) dst.emplace(r, v);
        } else {
            it->second = it->second + v;
            if (it->second.is_zero()) dst.erase(it);
        }
    }
}

size_t low(const Column& col) { return col.rbegin()->first; }

struct ExactReduction {
    // pivot low row -> (reduced column, carrier over original column index)
    std::map<size_t, std::pair<Column, Column>> pivots;
    std::vector<Column> kernel_carriers;
};

// Reduces columns left to right; c := p*c + e*P cancels the low entry exactly
// in characteristic 2, so the echelon form involves no division at all.
ExactReduction reduce_exact(const std::vector<Column>& columns) {
    ExactReduction out;
    for (size_t j = 0; j < columns.size(); ++j) {
        Column col = columns[j];
        Column carrier;
        carrier.emplace(j, NovikovScalar::one());
        bool pivoted = false;
        while (!col.empty()) {
            size_t r = low(col);
            auto it = out.pivots.find(r);
            if (it == out.pivots.end()) {
                out.pivots.emplace(r, std::make_pair(std::move(col), std::move(carrier)));
                pivoted = true;
                break;
            }
            const Column& P = it->second.first;
            const NovikovScalar p = P.at(r);
            const NovikovScalar e = col.at(r);
            Column next = scaled(col, p);
            add_into(next, scaled(P, e));
            col = std::move(next);
            Column nc = scaled(carrier, p);
            add_into(nc, scaled(it->second.second, e));
            carrier = std::move(nc);
        }
        if (!pivoted) out.kernel_carriers.push_back(std::move(carrier));
    }
    return out;
}

// Reduces v against an echelon pivot set; returns the (scaled) residual.
Column reduce_against(Column v, const std::map<size_t, Column>& pivots) {
    while (!v.empty()) {
        size_t r = low(v);
        auto it = pivots.find(r);
        if (it == pivots.end()) break;
        const Column& P = it->second;
        Column next = scaled(v, P.at(r));
        add_into(next, scaled(P, v.at(r)));
        v = std::move(next);
    }
    return v;
}

Column chain_to_column(const FilteredComplex& c, const Chain& z) {
    Column out;
    for (const auto& [id, coeff] : z.terms)
        if (!coeff.is_zero()) out.emplace(c.index_of(id), coeff);
    return out;
}

Chain column_to_chain(const FilteredComplex& c, const Column& col) {
    Chain out;
    for (const auto& [r, v] : col) out.terms.emplace(c.generators()[r].id, v);
    return out;
}

std::vector<Column> boundary_columns(const FilteredComplex& c) {
    std::vector<Column> cols(c.generators().size());
    for (size_t j = 0; j < c.generators().size(); ++j)
        cols[j] = chain_to_column(c, c.boundary_of(c.generators()[j].id));
    return cols;
}

// Echelonized basis of the boundary subspace, keyed by low row.
std::map<size_t, Column> image_pivots(const FilteredComplex& c) {
    ExactReduction red = reduce_exact(boundary_columns(c));
    std::map<size_t, Column> out;
    for (auto& [r, pc] : red.pivots) out.emplace(r, std::move(pc.first));
    return out;
}

} // namespace

HomologyBasis homology(const FilteredComplex& c) {
    const std::vector<Column> cols = boundary_columns(c);
    ExactReduction red = reduce_exact(cols);

    HomologyBasis out;
    out.boundary_rank = red.pivots.size();
    out.cycle_rank = red.kernel_carriers.size();
    out.rank = out.cycle_rank - out.boundary_rank;

    // Pivot columns span the boundary space; reduce each kernel cycle against
    // them (and against previously accepted representatives) to extract a
    // homology basis.
    std::map<size_t, Column> pivots;
    for (const auto& [r, pc] : red.pivots) pivots.emplace(r, pc.first);
    for (const Column& carrier : red.kernel_carriers) {
        Column v = reduce_against(carrier, pivots);
        if (v.empty()) continue;
        out.representatives.push_back(column_to_chain(c, v));
        pivots.emplace(low(v), std::move(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Minimal filtration level.

namespace {

// Weighted valuation of a column entry: valuation of the scalar plus the
// action of its generator.
Rational entry_weight(const FilteredComplex& c, size_t row, const NovikovScalar& v) {
    return v.valuation().finite() + c.generators()[row].action;
}

// Row of minimal weighted valuation, ties broken by smallest row.
std::pair<size_t, Rational> weighted_lead(const FilteredComplex& c, const Column& col) {
    bool any = false;
    size_t lead = 0;
    Rational best;
    for (const auto& [r, v] : col) {
        Rational w = entry_weight(c, r, v);
        if (!any || w < best) lead = r, best = w, any = true;
    }
    return {lead, best};
}

struct Ortho {
    Column col;
    size_t lead;
};

} // namespace

Extended min_filtration(const FilteredComplex& c, const Chain& z, const Rational& window) {
    Column v = chain_to_column(c, z);
    std::map<size_t, Column> pivots = image_pivots(c);

    // Exact membership test: [z] = 0 iff z reduces to zero against the
    // echelonized boundary basis.
    if (reduce_against(v, pivots).empty())
        throw ZeroClass("min_filtration: class is zero (level -inf by convention)");

    // Certification ceiling: weighted exponents reachable by the answer.
    Rational cert;
    bool cert_set = false;
    auto bump = [&](const Column& col) {
        for (const auto& [r, s] : col)
            for (const auto& e : s.support()) {
                Rational w = e + c.generators()[r].action;
                if (!cert_set || w > cert) cert = w, cert_set = true;
            }
    };
    bump(v);
    for (const auto& [r, col] : pivots) bump(col);
    cert = (cert_set ? cert : Rational(0)) + window;

    // l-orthogonalize the boundary basis: distinct weighted lead rows, and
    // cross entries at lead rows pushed beyond the certification ceiling.
    std::vector<Ortho> orthos;
    for (auto& [r0, colraw] : pivots) {
        Column col = colraw;
        for (;;) {
            if (col.empty())
                throw TruncationOverflow("min_filtration: boundary basis vector vanished");
            auto [lead, w] = weighted_lead(c, col);
            if (w > cert)
                throw TruncationOverflow(
                    "min_filtration: orthogonalization exceeded window certification");
            auto hit = std::find_if(orthos.begin(), orthos.end(),
                                    [&](const Ortho& o) { return o.lead == lead; });
            if (hit == orthos.end()) {
                orthos.push_back({std::move(col), lead});
                break;
            }
            NovikovScalar q = nov_div_window(col.at(lead), hit->col.at(lead), window);
            for (const auto& [rr, vv] : hit->col) {
                NovikovScalar t = q * vv;
                auto it = col.find(rr);
                if (it == col.end()) {
                    if (!t.is_zero()) col.emplace(rr, std::move(t));
                } else {
                    it->second = it->second + t;
                    if (it->second.is_zero()) col.erase(it);
                }
            }
        }
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& ok : orthos)
            for (const auto& oi : orthos) {
                if (&ok == &oi) continue;
                auto it = ok.col.find(oi.lead);
                if (it == ok.col.end()) continue;
                if (entry_weight(c, oi.lead, it->second) > cert) continue;
                NovikovScalar q = nov_div_window(it->second, oi.col.at(oi.lead), window);
                for (const auto& [rr, vv] : oi.col) {
                    NovikovScalar t = q * vv;
                    auto jt = ok.col.find(rr);
                    if (jt == ok.col.end()) {
                        if (!t.is_zero()) ok.col.emplace(rr, std::move(t));
                    } else {
                        jt->second = jt->second + t;
                        if (jt->second.is_zero()) ok.col.erase(jt);
                    }
                }
                progress = true;
            }
    }

    // Greedy reduction of z: cancel minimal-level monomials at reducible rows
    // (rows led by an orthogonal boundary vector) until none remain at the
    // minimal level.
    for (;;) {
        if (v.empty())
            throw ZeroClass("min_filtration: representative reduced to zero");
        // Minimal weighted level of v.
        bool any = false;
        Rational level;
        for (const auto& [r, s] : v) {
            Rational w = entry_weight(c, r, s);
            if (!any || w < level) level = w, any = true;
        }
        if (level > cert)
            throw TruncationOverflow("min_filtration: reduction exceeded window certification");
        // A reducible row at the minimal level?
        const Ortho* use = nullptr;
        size_t use_row = 0;
        for (const auto& [r, s] : v) {
            if (entry_weight(c, r, s) != level) continue;
            for (const auto& o : orthos)
                if (o.lead == r && (!use || r < use_row)) use = &o, use_row = r;
        }
        if (!use) return Extended(-level);
        NovikovScalar q0 = NovikovScalar::tau(v.at(use_row).valuation().finite() -
                                              use->col.at(use_row).valuation().finite());
        for (const auto& [rr, vv] : use->col) {
            NovikovScalar t = q0 * vv;
            auto it = v.find(rr);
            if (it == v.end()) {
                if (!t.is_zero()) v.emplace(rr, std::move(t));
            } else {
                it->second = it->second + t;
                if (it->second.is_zero()) v.erase(it);
            }
        }
    }
}

std::map<std::string, FilteredComplex> split_by_class(const FilteredComplex& c) {
    std::map<std::string, std::vector<Generator>> gens;
    std::map<std::string, std::map<std::string, std::map<std::string, NovikovScalar>>> bnds;
    for (const auto& g : c.generators()) gens[g.hclass].push_back(g);
    for (const auto& [src, col] : c.boundary())
        if (!col.empty()) bnds[c.generator(src).hclass][src] = col;
    std::map<std::string, FilteredComplex> out;
    for (auto& [label, gs] : gens)
        out.emplace(label, FilteredComplex(std::move(gs), std::move(bnds[label])));
    return out;
}

} // namespace eternalbar
