#include "eternalbar/json_io.hpp"

#include <fstream>
#include <sstream>

#include "eternalbar/errors.hpp"

namespace eternalbar::io {

namespace {

std::string type_name(const json& j) { return j.type_name(); }

const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw MalformedInput(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::string require_string(const json& j, const char* what) {
    if (!j.is_string())
        throw MalformedInput(std::string(what) + ": expected string, got " + type_name(j));
    return j.get<std::string>();
}

Rational rational_field(const json& j, const char* what) {
    try {
        return parse_rational(require_string(j, what));
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(std::string(what) + ": " + e.what());
    }
}

Extended extended_field(const json& j, const char* what) {
    try {
        return Extended::parse(require_string(j, what));
    } catch (const std::invalid_argument& e) {
        throw MalformedInput(std::string(what) + ": " + e.what());
    }
}

size_t index_field(const json& j, const char* what) {
    if (!j.is_number_unsigned())
        throw MalformedInput(std::string(what) + ": expected nonnegative integer");
    return j.get<size_t>();
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw MalformedInput(path + ": " + e.what());
    }
}

json scalar_to_json(const NovikovScalar& s) {
    json out = json::array();
    for (const auto& e : s.exponent_strings()) out.push_back(e);
    return out;
}

NovikovScalar scalar_from_json(const json& j) {
    if (!j.is_array()) throw MalformedInput("scalar: expected array of exponent strings");
    std::vector<Rational> exps;
    for (const auto& e : j) exps.push_back(rational_field(e, "scalar exponent"));
    return NovikovScalar::from_exponents(std::move(exps));
}

FilteredComplex complex_from_json(const json& j) {
    std::vector<Generator> gens;
    for (const auto& g : require(j, "generators")) {
        Generator gen;
        gen.id = require_string(require(g, "id"), "generator id");
        gen.action = rational_field(require(g, "action"), "generator action");
        if (g.contains("hclass") && !g.at("hclass").is_null())
            gen.hclass = require_string(g.at("hclass"), "generator hclass");
        if (g.contains("grading") && !g.at("grading").is_null()) {
            if (!g.at("grading").is_number_integer())
                throw MalformedInput("generator grading: expected integer");
            gen.grading = g.at("grading").get<int>();
        }
        gens.push_back(std::move(gen));
    }
    std::map<std::string, std::map<std::string, NovikovScalar>> boundary;
    if (j.contains("boundary")) {
        const json& b = j.at("boundary");
        if (!b.is_object()) throw MalformedInput("boundary: expected object");
        for (auto it = b.begin(); it != b.end(); ++it) {
            std::map<std::string, std::vector<Rational>> exps;
            if (!it.value().is_array())
                throw MalformedInput("boundary column " + it.key() + ": expected array");
            for (const auto& entry : it.value()) {
                if (!entry.is_array() || entry.size() != 2)
                    throw MalformedInput("boundary column " + it.key() +
                                         ": expected [target, exponent] pairs");
                std::string target = require_string(entry.at(0), "boundary target");
                exps[target].push_back(rational_field(entry.at(1), "boundary exponent"));
            }
            auto& col = boundary[it.key()];
            for (auto& [target, es] : exps) {
                NovikovScalar c = NovikovScalar::from_exponents(std::move(es));
                if (!c.is_zero()) col.emplace(target, std::move(c));
            }
            if (col.empty()) boundary.erase(it.key());
        }
    }
    return FilteredComplex(std::move(gens), std::move(boundary));
}

json complex_to_json(const FilteredComplex& c) {
    json gens = json::array();
    for (const auto& g : c.generators()) {
        json jg;
        jg["id"] = g.id;
        jg["action"] = format_rational(g.action);
        jg["hclass"] = g.hclass;
        jg["grading"] = g.grading ? json(*g.grading) : json(nullptr);
        gens.push_back(std::move(jg));
    }
    json boundary = json::object();
    for (const auto& [src, col] : c.boundary()) {
        json entries = json::array();
        for (const auto& [target, coeff] : col)
            for (const auto& e : coeff.exponent_strings())
                entries.push_back(json::array({target, e}));
        boundary[src] = std::move(entries);
    }
    return json{{"generators", std::move(gens)}, {"boundary", std::move(boundary)}};
}

Presentation presentation_from_json(const json& j) {
    Presentation p;
    for (const auto& g : require(j, "generators")) {
        PresGenerator gen;
        gen.id = require_string(require(g, "id"), "generator id");
        gen.birth = extended_field(require(g, "birth"), "generator birth");
        p.generators.push_back(std::move(gen));
    }
    if (j.contains("relations"))
        for (const auto& r : j.at("relations")) {
            PresRelation rel;
            rel.level = extended_field(require(r, "level"), "relation level");
            for (const auto& id : require(r, "support"))
                rel.support.push_back(require_string(id, "relation support"));
            p.relations.push_back(std::move(rel));
        }
    return p;
}

json presentation_to_json(const Presentation& p) {
    json gens = json::array();
    for (const auto& g : p.generators)
        gens.push_back(json{{"id", g.id}, {"birth", g.birth.str()}});
    json rels = json::array();
    for (const auto& r : p.relations) {
        json support = json::array();
        for (const auto& id : r.support) support.push_back(id);
        rels.push_back(json{{"level", r.level.str()}, {"support", std::move(support)}});
    }
    return json{{"generators", std::move(gens)}, {"relations", std::move(rels)}};
}

Barcode barcode_from_json(const json& j) {
    Barcode b;
    for (const auto& bar : require(j, "bars")) {
        Bar out;
        out.birth = extended_field(require(bar, "birth"), "bar birth");
        out.death = extended_field(require(bar, "death"), "bar death");
        if (!(out.birth < out.death))
            throw MalformedInput("bar with birth " + out.birth.str() + " >= death " +
                                 out.death.str());
        b.bars.push_back(out);
    }
    return b;
}

json barcode_to_json(const Barcode& b) {
    json bars = json::array();
    for (const auto& bar : b.bars)
        bars.push_back(json{{"birth", bar.birth.str()}, {"death", bar.death.str()}});
    return json{{"bars", std::move(bars)}};
}

namespace {

ColimitClass class_from_json(const json& j, const char* what) {
    std::vector<size_t> idx;
    if (j.is_number_unsigned())
        idx.push_back(j.get<size_t>());
    else if (j.is_array())
        for (const auto& i : j) idx.push_back(index_field(i, what));
    else
        throw MalformedInput(std::string(what) + ": expected bar index or index array");
    return ColimitClass::from_indices(std::move(idx));
}

} // namespace

PersistenceAlgebra algebra_from_json(const json& j, bool strict) {
    PersistenceAlgebra a;
    for (const auto& l : require(j, "labels"))
        a.labels.push_back(require_string(l, "label"));
    a.identity = require_string(require(j, "identity"), "identity");
    if (j.contains("compose"))
        for (const auto& t : j.at("compose")) {
            if (!t.is_array() || t.size() != 3)
                throw MalformedInput("compose: expected [g, h, gh] triples");
            a.compose[{require_string(t.at(0), "compose g"),
                       require_string(t.at(1), "compose h")}] =
                require_string(t.at(2), "compose gh");
        }
    if (j.contains("inverse")) {
        const json& inv = j.at("inverse");
        if (!inv.is_object()) throw MalformedInput("inverse: expected object");
        for (auto it = inv.begin(); it != inv.end(); ++it)
            a.inverse[it.key()] = require_string(it.value(), "inverse");
    }
    const json& mods = require(j, "modules");
    if (!mods.is_object()) throw MalformedInput("modules: expected object");
    for (auto it = mods.begin(); it != mods.end(); ++it)
        a.modules[it.key()] = barcode_from_json(it.value());
    a.unit = class_from_json(require(j, "unit"), "unit");
    if (j.contains("unit_overrides")) {
        const json& ov = j.at("unit_overrides");
        if (!ov.is_object()) throw MalformedInput("unit_overrides: expected object");
        for (auto it = ov.begin(); it != ov.end(); ++it)
            a.unit_overrides[it.key()] = class_from_json(it.value(), "unit override");
    }
    if (j.contains("products"))
        for (const auto& e : j.at("products")) {
            ProductEntry pe;
            pe.g = require_string(require(e, "g"), "product g");
            pe.h = require_string(require(e, "h"), "product h");
            pe.in1 = index_field(require(e, "in1"), "product in1");
            pe.in2 = index_field(require(e, "in2"), "product in2");
            for (const auto& o : require(e, "out"))
                pe.out.push_back(index_field(o, "product out"));
            pe.out = ColimitClass::from_indices(std::move(pe.out)).bars;
            a.products.push_back(std::move(pe));
        }
    if (strict)
        a.validate_strict();
    else
        a.validate_structure();
    return a;
}

json algebra_to_json(const PersistenceAlgebra& a) {
    json out;
    out["labels"] = a.labels;
    out["identity"] = a.identity;
    json compose = json::array();
    for (const auto& [gh, r] : a.compose)
        compose.push_back(json::array({gh.first, gh.second, r}));
    out["compose"] = std::move(compose);
    json inverse = json::object();
    for (const auto& [g, gi] : a.inverse) inverse[g] = gi;
    out["inverse"] = std::move(inverse);
    json mods = json::object();
    for (const auto& [l, b] : a.modules) mods[l] = barcode_to_json(b);
    out["modules"] = std::move(mods);
    out["unit"] = a.unit.bars;
    json ov = json::object();
    for (const auto& [l, z] : a.unit_overrides) ov[l] = z.bars;
    out["unit_overrides"] = std::move(ov);
    json products = json::array();
    for (const auto& e : a.products)
        products.push_back(json{
            {"g", e.g}, {"h", e.h}, {"in1", e.in1}, {"in2", e.in2}, {"out", e.out}});
    out["products"] = std::move(products);
    return out;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

SphereHamiltonian pl_from_file(const std::string& path) {
    json j = load_json_file(path);
    const json& dim = require(j, "dimension");
    if (!dim.is_number_integer()) throw MalformedInput("dimension: expected integer");
    int n = dim.get<int>();
    std::vector<std::vector<Rational>> dirs;
    std::vector<Rational> values;
    for (const auto& v : require(j, "vertices")) {
        std::vector<Rational> d;
        for (const auto& c : require(v, "dir")) d.push_back(rational_field(c, "vertex dir"));
        dirs.push_back(std::move(d));
        values.push_back(rational_field(require(v, "value"), "vertex value"));
    }
    std::vector<std::vector<size_t>> cells;
    if (j.contains("cells"))
        for (const auto& c : j.at("cells")) {
            std::vector<size_t> cell;
            for (const auto& i : c) cell.push_back(index_field(i, "cell index"));
            cells.push_back(std::move(cell));
        }
    return SphereHamiltonian::piecewise_linear(n, std::move(dirs), std::move(values),
                                               std::move(cells));
}

SphereHamiltonian samples_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput("cannot open file: " + path);
    std::optional<Rational> resolution, lipschitz;
    std::vector<std::vector<Rational>> dirs;
    std::vector<Rational> values;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields = split(line, ',');
        auto context = [&] { return path + ":" + std::to_string(lineno); };
        try {
            if (fields.size() == 2 && fields[0] == "resolution") {
                resolution = parse_rational(fields[1]);
                continue;
            }
            if (fields.size() == 2 && fields[0] == "lipschitz") {
                lipschitz = parse_rational(fields[1]);
                continue;
            }
            if (fields.size() < 2)
                throw MalformedInput(context() + ": expected direction components and a value");
            std::vector<Rational> row;
            for (const auto& f : fields) row.push_back(parse_rational(f));
            values.push_back(row.back());
            row.pop_back();
            dirs.push_back(std::move(row));
        } catch (const std::invalid_argument& e) {
            throw MalformedInput(context() + ": " + e.what());
        }
    }
    if (dirs.empty()) throw MalformedInput(path + ": no sample rows");
    if (!resolution)
        throw MalformedInput(path + ": missing \"resolution,<eps>\" row");
    return SphereHamiltonian::samples(static_cast<int>(dirs[0].size()), std::move(dirs),
                                      std::move(values), *resolution, lipschitz);
}

} // namespace

SphereHamiltonian ham_from_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw MalformedInput("Hamiltonian spec must be linear:..., pl:<file> or samples:<file>");
    std::string kind = spec.substr(0, colon), rest = spec.substr(colon + 1);
    if (kind == "linear") {
        std::vector<Rational> coeffs;
        try {
            for (const auto& f : split(rest, ',')) coeffs.push_back(parse_rational(f));
        } catch (const std::invalid_argument& e) {
            throw MalformedInput(std::string("linear coefficients: ") + e.what());
        }
        return SphereHamiltonian::linear(std::move(coeffs));
    }
    if (kind == "pl") return pl_from_file(rest);
    if (kind == "samples") return samples_from_file(rest);
    throw MalformedInput("unknown Hamiltonian kind: " + kind);
}

LatticeClass class_from_spec(const std::string& spec) {
    LatticeClass k;
    for (const auto& f : split(spec, ',')) {
        try {
            k.push_back(Int(f));
        } catch (const std::exception&) {
            throw MalformedInput("bad lattice class component: " + f);
        }
    }
    return k;
}

std::vector<LatticeClass> classes_from_spec(const std::string& spec) {
    std::vector<LatticeClass> out;
    for (const auto& part : split(spec, ';')) {
        auto dots = part.find("..");
        if (dots != std::string::npos && part.find(',') == std::string::npos) {
            Int lo, hi;
            try {
                lo = Int(part.substr(0, dots));
                hi = Int(part.substr(dots + 2));
            } catch (const std::exception&) {
                throw MalformedInput("bad class range: " + part);
            }
            if (hi < lo) throw MalformedInput("empty class range: " + part);
            for (Int v = lo; v <= hi; ++v) out.push_back({v});
            continue;
        }
        out.push_back(class_from_spec(part));
    }
    return out;
}

} // namespace eternalbar::io
