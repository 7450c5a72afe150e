#include "eternalbar/persistence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "eternalbar/errors.hpp"

namespace eternalbar {

void validate(const Presentation& p) {
    std::map<std::string, size_t> index;
    for (size_t i = 0; i < p.generators.size(); ++i) {
        const auto& g = p.generators[i];
        if (g.birth.is_pos_inf())
            throw MalformedPresentation("generator birth cannot be +inf: " + g.id);
        if (!index.emplace(g.id, i).second)
            throw MalformedPresentation("duplicate generator id: " + g.id);
    }
    for (const auto& r : p.relations) {
        if (r.level.is_neg_inf())
            throw MalformedPresentation("relation level cannot be -inf");
        if (r.support.empty())
            throw MalformedPresentation("relation with empty support");
        for (const auto& id : r.support) {
            auto it = index.find(id);
            if (it == index.end())
                throw MalformedPresentation("relation on unknown generator: " + id);
            if (r.level < p.generators[it->second].birth)
                throw MalformedPresentation("relation level " + r.level.str() +
                                            " precedes birth of " + id);
        }
    }
}

namespace {

// Total order refining births: older < younger; ties broken by index.
struct YoungOrder {
    const Presentation& p;
    bool operator()(size_t a, size_t b) const {
        const Extended& ba = p.generators[a].birth;
        const Extended& bb = p.generators[b].birth;
        if (ba != bb) return ba < bb;
        return a < b;
    }
};

} // namespace

Barcode barcode(const Presentation& p) {
    validate(p);

    std::map<std::string, size_t> index;
    for (size_t i = 0; i < p.generators.size(); ++i) index.emplace(p.generators[i].id, i);

    std::vector<size_t> order;
    for (size_t i = 0; i < p.relations.size(); ++i)
        if (!p.relations[i].level.is_pos_inf()) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return p.relations[a].level < p.relations[b].level;
    });

    YoungOrder younger{p};
    std::map<size_t, std::set<size_t>> pivot_cols; // pivot generator -> column
    Barcode out;
    std::set<size_t> paired;

    for (size_t ri : order) {
        std::set<size_t> col;
        for (const auto& id : p.relations[ri].support) {
            size_t g = index.at(id);
            if (!col.insert(g).second) col.erase(g); // char 2
        }
        while (!col.empty()) {
            size_t y = *std::max_element(col.begin(), col.end(), younger);
            auto it = pivot_cols.find(y);
            if (it == pivot_cols.end()) {
                const Extended& birth = p.generators[y].birth;
                const Extended& death = p.relations[ri].level;
                if (birth < death) out.bars.push_back({birth, death});
                paired.insert(y);
                pivot_cols.emplace(y, std::move(col));
                break;
            }
            std::set<size_t> next;
            std::set_symmetric_difference(col.begin(), col.end(), it->second.begin(),
                                          it->second.end(),
                                          std::inserter(next, next.begin()));
            col = std::move(next);
        }
    }

    for (size_t i = 0; i < p.generators.size(); ++i)
        if (!paired.count(i)) out.bars.push_back({p.generators[i].birth, Extended::pos_inf()});

    std::stable_sort(out.bars.begin(), out.bars.end(), [](const Bar& a, const Bar& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.death < b.death;
    });
    return out;
}

ColimitClass ColimitClass::from_indices(std::vector<size_t> idx) {
    std::sort(idx.begin(), idx.end());
    ColimitClass z;
    for (size_t v : idx) {
        if (!z.bars.empty() && z.bars.back() == v)
            z.bars.pop_back();
        else
            z.bars.push_back(v);
    }
    return z;
}

ColimitClass operator+(const ColimitClass& a, const ColimitClass& b) {
    ColimitClass r;
    std::set_symmetric_difference(a.bars.begin(), a.bars.end(), b.bars.begin(),
                                  b.bars.end(), std::back_inserter(r.bars));
    return r;
}

std::vector<size_t> colim_basis_positions(const Barcode& b) {
    std::vector<size_t> pos;
    for (size_t i = 0; i < b.bars.size(); ++i)
        if (b.bars[i].right_infinite()) pos.push_back(i);
    std::stable_sort(pos.begin(), pos.end(), [&](size_t x, size_t y) {
        return b.bars[x].birth < b.bars[y].birth;
    });
    return pos;
}

std::vector<Bar> colim_basis(const Barcode& b) {
    std::vector<Bar> out;
    for (size_t i : colim_basis_positions(b)) out.push_back(b.bars[i]);
    return out;
}

std::vector<size_t> eternal_subspace(const Barcode& b) {
    std::vector<Bar> basis = colim_basis(b);
    std::vector<size_t> out;
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].fully_infinite()) out.push_back(i);
    return out;
}

bool is_eternal(const Barcode& b, const ColimitClass& z) {
    std::vector<Bar> basis = colim_basis(b);
    for (size_t i : z.bars) {
        if (i >= basis.size()) throw BasisMismatch("colimit class references absent bar");
        if (!basis[i].fully_infinite()) return false;
    }
    return true;
}

bool hits_at(const Barcode& b, const ColimitClass& z, const Extended& s) {
    std::vector<Bar> basis = colim_basis(b);
    for (size_t i : z.bars) {
        if (i >= basis.size()) throw BasisMismatch("colimit class references absent bar");
        if (!(basis[i].birth <= s)) return false;
    }
    return true;
}

size_t rfh_rank(const Barcode& b) {
    size_t n = 0;
    for (const auto& bar : b.bars) {
        bool left = bar.birth.is_neg_inf();
        bool right = bar.death.is_pos_inf();
        if (left != right) ++n; // half-infinite of either kind
    }
    return n;
}

} // namespace eternalbar
