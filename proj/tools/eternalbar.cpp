#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "eternalbar/errors.hpp"
#include "eternalbar/json_io.hpp"
#include "selftest.hpp"

using namespace eternalbar;

namespace {

int decimal_digits = -1; // -1: exact rationals

std::string fmt(const Rational& q) {
    return decimal_digits < 0 ? format_rational(q) : format_decimal(q, decimal_digits);
}

std::string fmt(const Extended& e) {
    return e.is_finite() ? fmt(e.finite()) : e.str();
}

std::string fmt(const SphereValue& v) {
    if (v.exact()) return fmt(v.value);
    return fmt(v.value) + "~" + format_rational(v.tol);
}

std::string bar_label(const Bar& b) {
    return "[" + b.birth.str() + ", " + b.death.str() + ")";
}

void render_barcode(const Barcode& bc, std::ostream& os) {
    const int width = 40;
    // Map finite endpoints onto [0, width]; infinite ends overhang with arrows.
    std::optional<Rational> lo, hi;
    for (const auto& b : bc.bars) {
        for (const Extended* e : {&b.birth, &b.death})
            if (e->is_finite()) {
                if (!lo || e->finite() < *lo) lo = e->finite();
                if (!hi || *hi < e->finite()) hi = e->finite();
            }
    }
    if (!lo) { lo = 0; hi = 1; }
    if (*lo == *hi) *hi = *lo + 1;
    auto col = [&](const Rational& v) {
        return static_cast<int>(to_double((v - *lo) / (*hi - *lo)) * width);
    };
    size_t label_w = 0;
    for (const auto& b : bc.bars) label_w = std::max(label_w, bar_label(b).size());
    for (const auto& b : bc.bars) {
        std::string label = bar_label(b);
        label.resize(label_w, ' ');
        int from = b.birth.is_finite() ? col(b.birth.finite()) : -2;
        int to = b.death.is_finite() ? col(b.death.finite()) : width + 2;
        std::string line(static_cast<size_t>(width + 5), ' ');
        for (int c = std::max(from, -2); c <= std::min(to, width + 2); ++c)
            line[static_cast<size_t>(c + 2)] = '-';
        line[static_cast<size_t>(std::max(from, -2) + 2)] = b.birth.is_finite() ? '|' : '<';
        line[static_cast<size_t>(std::min(to, width + 2) + 2)] = b.death.is_finite() ? ')' : '>';
        os << label << "  " << line << "\n";
    }
}

Barcode load_barcode_like(const std::string& path) {
    io::json j = io::load_json_file(path);
    if (j.is_object() && j.contains("bars")) return io::barcode_from_json(j);
    return barcode(io::presentation_from_json(j));
}

std::vector<size_t> parse_indices(const std::string& s) {
    std::vector<size_t> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            size_t pos = 0;
            long v = std::stol(tok, &pos);
            if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
            out.push_back(static_cast<size_t>(v));
        } catch (const std::exception&) {
            throw MalformedInput("bad bar index: " + tok);
        }
    }
    if (out.empty()) throw MalformedInput("empty bar-index list");
    return out;
}

int cmd_barcode(const std::string& file, bool render) {
    Barcode bc = load_barcode_like(file);
    std::cout << io::barcode_to_json(bc).dump(2) << "\n";
    if (render) render_barcode(bc, std::cout);
    return 0;
}

int cmd_spectral(const std::string& file, const std::string& cls) {
    Barcode bc = load_barcode_like(file);
    ColimitClass z = ColimitClass::from_indices(parse_indices(cls));
    Extended c = spectral_invariant(bc, z);
    std::cout << "c=" << fmt(c) << " eternal=" << (is_eternal(bc, z) ? "true" : "false") << "\n";
    return 0;
}

int cmd_complex(const std::string& file, const std::string& cls) {
    FilteredComplex cx = io::complex_from_json(io::load_json_file(file));
    VerifyReport v = verify_complex(cx);
    if (!v.ok) {
        std::cerr << "complex verification failed: " << v.violation << " (" << v.witness
                  << ")\n";
        return 1;
    }
    Chain z;
    std::istringstream is(cls);
    std::string id;
    while (std::getline(is, id, ',')) {
        if (!cx.has_generator(id)) throw MalformedInput("unknown generator: " + id);
        z.add_term(id, NovikovScalar::one());
    }
    if (z.is_zero()) throw MalformedInput("empty generator list");
    std::cout << "l=" << fmt(min_filtration(cx, z)) << "\n";
    return 0;
}

int cmd_torus(const std::string& ham, const std::string& classes, bool with_spectrum,
              bool with_gamma) {
    SphereHamiltonian H = io::ham_from_spec(ham);
    std::vector<LatticeClass> ks = io::classes_from_spec(classes);
    std::optional<SphereValue> gamma;
    if (with_gamma) gamma = oscillation_exact(H);
    for (const auto& k : ks) {
        std::ostringstream line;
        if (ks.size() > 1) line << "k=" << class_str(k) << " ";
        line << "c=" << fmt(class_spectral(H, k));
        if (gamma) line << " gamma=" << fmt(*gamma);
        if (with_spectrum) {
            line << " spectrum=";
            bool first = true;
            for (const auto& s : spectrum(H, k)) {
                line << (first ? "" : ",") << fmt(s);
                first = false;
            }
        }
        std::cout << line.str() << "\n";
    }
    return 0;
}

int cmd_algebra_verify(const std::string& file) {
    PersistenceAlgebra a = io::algebra_from_json(io::load_json_file(file), /*strict=*/false);
    CheckReport sub = check_subadditivity(a);
    CheckReport ideal = check_ideal(a);
    UnitEternalReport ue = unit_eternal_criterion(a);
    std::cout << "subadditivity=" << (sub.ok ? "pass" : "fail");
    if (!sub.ok) std::cout << " " << sub.witness;
    std::cout << "\nideal=" << (ideal.ok ? "pass" : "fail");
    if (!ideal.ok) std::cout << " " << ideal.witness;
    std::cout << "\nunit_eternal=" << (ue.eternal ? "true" : "false");
    if (!ue.witness.empty()) std::cout << " (" << ue.witness << ")";
    std::cout << "\n";
    return sub.ok && ideal.ok ? 0 : 1;
}

int cmd_selftest() {
    bool all = true;
    for (const auto& r : eternalbar::selftest::run_all()) {
        std::ostringstream t;
        t.precision(2);
        t << std::fixed << r.seconds;
        std::cout << "criterion " << r.id << " (" << r.name << "): "
                  << (r.pass ? "PASS" : "FAIL") << " - " << r.detail << " [" << t.str()
                  << " s]\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"eternal-class toolkit: Novikov-filtered persistence and the flat-torus model"};
    app.require_subcommand(1);
    app.add_option("--decimal", decimal_digits, "print values rounded to this many digits");

    std::string file, cls, ham, classes;
    bool render = false, with_spectrum = false, with_gamma = false;

    CLI::App* barcode_cmd = app.add_subcommand("barcode", "barcode of a presentation");
    barcode_cmd->add_option("file", file)->required();
    barcode_cmd->add_flag("--render", render, "ASCII bar plot");

    CLI::App* spectral_cmd = app.add_subcommand("spectral", "spectral invariant of a class");
    spectral_cmd->add_option("file", file)->required();
    spectral_cmd->add_option("--class", cls, "comma-separated colim bar indices")->required();

    CLI::App* complex_cmd = app.add_subcommand("complex", "filtered-complex computations");
    complex_cmd->add_option("file", file)->required();
    complex_cmd->add_option("--min-filtration", cls, "comma-separated generator ids")
        ->required();

    CLI::App* torus_cmd = app.add_subcommand("torus", "flat-torus model table");
    torus_cmd->add_option("--ham", ham, "linear:a1,..,an | pl:<file> | samples:<file>")
        ->required();
    torus_cmd->add_option("--classes", classes, "classes 'a,b;c,d' (or 'a..b' for n=1)")
        ->required();
    torus_cmd->add_flag("--spectrum", with_spectrum);
    torus_cmd->add_flag("--gamma", with_gamma);

    CLI::App* verify_cmd = app.add_subcommand("algebra-verify", "run the algebra checkers");
    verify_cmd->add_option("file", file)->required();

    app.add_subcommand("selftest", "run the acceptance suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (barcode_cmd->parsed()) return cmd_barcode(file, render);
        if (spectral_cmd->parsed()) return cmd_spectral(file, cls);
        if (complex_cmd->parsed()) return cmd_complex(file, cls);
        if (torus_cmd->parsed()) return cmd_torus(ham, classes, with_spectrum, with_gamma);
        if (verify_cmd->parsed()) return cmd_algebra_verify(file);
        return cmd_selftest();
    } catch (const MalformedInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedPresentation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
