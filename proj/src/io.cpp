#include "definetti/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace definetti {

namespace {

double number(const json& j, const char* what) {
    if (!j.is_number()) throw InputError(std::string("expected a number for ") + what);
    double x = j.get<double>();
    if (!std::isfinite(x)) throw InputError(std::string("non-finite number in ") + what);
    return x;
}

template <class T>
T field(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("bad field: ") + key);
    }
}

Coeff coeff_from_json(const json& j, int p) {
    if (p == 1) return coeff_scalar(complex_from_json(j));
    return Coeff(matrix_from_json(j, p, p));
}

json coeff_to_json(const Coeff& c) {
    if (c.rows() == 1) return complex_to_json(c(0, 0));
    return matrix_to_json(Block(c));
}

}  // namespace

json complex_to_json(cd z) { return json::array({z.real(), z.imag()}); }

cd complex_from_json(const json& j) {
    // encoders write NaN as null, which fails the number check
    if (!j.is_array() || j.size() != 2) throw InputError("complex number must be [re, im]");
    return {number(j[0], "complex number"), number(j[1], "complex number")};
}

json matrix_to_json(const Block& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Block matrix_from_json(const json& j, int rows, int cols) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw InputError("matrix must have " + std::to_string(rows) + " rows");
    Block m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<int>(j[i].size()) != cols)
            throw InputError("matrix row must have " + std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
    }
    return m;
}

json spec_to_json(const SpecFile& s) {
    const auto& t = s.table;
    json j;
    j["kind"] = s.kind;
    j["alphabet"] = t.alphabet();
    j["dim"] = t.dim();
    j["order"] = t.order();
    j["selfadjoint"] = s.selfadjoint;
    j["shift"] = coeff_to_json(s.shift);
    json entries = json::array();
    for (const auto& w : t.words()) {
        json e;
        e["pattern"] = pattern_of(w).to_string();
        if (t.alphabet() > 1) e["word"] = indices_of(w);
        const auto& tensor = *t.find(w);
        if (t.dim() == 1) {
            e["value"] = complex_to_json(tensor[0](0, 0));
        } else {
            json v = json::array();
            for (const auto& c : tensor) v.push_back(matrix_to_json(Block(c)));
            e["value"] = std::move(v);
        }
        entries.push_back(std::move(e));
    }
    j["entries"] = std::move(entries);
    return j;
}

SpecFile spec_from_json(const json& j) {
    if (!j.is_object()) throw InputError("spec file must be a JSON object");
    SpecFile s;
    s.kind = field<std::string>(j, "kind", "cumulants");
    if (s.kind != "cumulants" && s.kind != "moments") throw InputError("kind must be cumulants or moments");
    int alphabet = field<int>(j, "alphabet", 1);
    int p = field<int>(j, "dim", 1);
    if (p < 1 || p > kMaxCoeffDim) throw InputError("dim must be in 1.." + std::to_string(kMaxCoeffDim));
    if (alphabet < 1 || alphabet > kMaxAlphabet) throw InputError("alphabet must be in 1.." + std::to_string(kMaxAlphabet));
    if (!j.contains("entries") || !j["entries"].is_array()) throw InputError("spec needs an entries array");
    int order = 0;
    for (const auto& e : j["entries"]) {
        if (!e.contains("pattern") || !e["pattern"].is_string()) throw InputError("entry needs a pattern string");
        order = std::max(order, static_cast<int>(e["pattern"].get<std::string>().size()));
    }
    order = field<int>(j, "order", order);
    if (order < 0 || order > kMaxWordLength) throw InputError("order out of range");
    s.selfadjoint = field<bool>(j, "selfadjoint", false);
    s.table = FunctionalTable(alphabet, p, order);
    for (const auto& e : j["entries"]) {
        auto d = StarPattern::parse(e["pattern"].get<std::string>());
        if (d.size() > order) throw InputError("entry longer than order: " + d.to_string());
        if (d.empty()) throw InputError("empty pattern");
        IndexWord idx(d.size(), 1);
        if (e.contains("word")) {
            idx = field<IndexWord>(e, "word", idx);
            if (static_cast<int>(idx.size()) != d.size()) throw InputError("word and pattern lengths differ");
        }
        Word w = word_of(idx, d);
        if (!e.contains("value")) throw InputError("entry needs a value");
        const json& v = e["value"];
        std::vector<Coeff> tensor;
        if (p == 1) {
            tensor.push_back(coeff_scalar(complex_from_json(v)));
        } else {
            std::size_t want = basis_size(p, d.size());
            if (!v.is_array() || v.size() != want)
                throw InputError("value of " + d.to_string() + " needs " + std::to_string(want) + " matrices");
            for (const auto& m : v) tensor.push_back(Coeff(matrix_from_json(m, p, p)));
        }
        if (s.table.find(w)) throw InputError("duplicate entry: " + word_to_string(w));
        s.table.set(w, std::move(tensor));
    }
    s.shift = j.contains("shift") ? coeff_from_json(j["shift"], p) : coeff_scalar(0.0, p);
    if (s.kind == "moments" && max_abs(s.shift) != 0) throw InputError("a moment file cannot carry a shift");
    return s;
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

SpecFile load_spec(const std::filesystem::path& path) { return spec_from_json(read_json(path)); }
void save_spec(const std::filesystem::path& path, const SpecFile& s) { write_json(path, spec_to_json(s)); }

SpecFile spec_file(const CumulantSpec& s) {
    SpecFile f;
    f.table = s.table();
    f.selfadjoint = s.selfadjoint();
    f.shift = coeff_scalar(0.0, s.dim());
    return f;
}

CumulantSpec cumulant_spec(const SpecFile& s, bool free, int order) {
    if (s.table.alphabet() != 1) throw InputError("expected a single-variable spec");
    if (s.kind == "moments") {
        if (order > s.table.order()) throw InputError("moment table is shorter than the requested order");
        return spec_from_moments(MomentOracle::from_table(s.table), free, order, s.selfadjoint);
    }
    return CumulantSpec::make(s.table, s.shift, s.selfadjoint);
}

json rep_to_json(const RepFile& r) {
    const auto& u = r.rep;
    json j;
    if (!r.name.empty()) j["name"] = r.name;
    if (!r.family.empty()) j["family"] = r.family;
    if (!r.note.empty()) j["note"] = r.note;
    j["n"] = u.n();
    j["d"] = u.d();
    j["tol"] = u.tol();
    json rows = json::array();
    for (int i = 0; i < u.n(); ++i) {
        json row = json::array();
        for (int k = 0; k < u.n(); ++k) row.push_back(matrix_to_json(u(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

RepFile rep_from_json(const json& j, bool validate) {
    if (!j.is_object()) throw InputError("rep file must be a JSON object");
    if (!j.contains("n") || !j.contains("d") || !j.contains("entries")) throw InputError("rep needs n, d and entries");
    int n = field<int>(j, "n", 0);
    int d = field<int>(j, "d", 0);
    if (n < 1 || d < 1) throw InputError("rep needs n >= 1 and d >= 1");
    double tol = j.contains("tol") ? number(j["tol"], "tol") : kRepTol;
    const json& e = j["entries"];
    if (!e.is_array() || static_cast<int>(e.size()) != n) throw InputError("entries must have n rows");
    std::vector<Block> blocks;
    for (const auto& row : e) {
        if (!row.is_array() || static_cast<int>(row.size()) != n) throw InputError("entries row must have n entries");
        for (const auto& m : row) blocks.push_back(matrix_from_json(m, d, d));
    }
    RepFile r{MatrixRep(n, d, std::move(blocks), tol), field<std::string>(j, "name", ""),
              field<std::string>(j, "family", ""), field<std::string>(j, "note", "")};
    if (!r.family.empty()) parse_family(r.family);
    if (validate) {
        auto b = check_biunitary(r.rep);
        if (!b.ok) {
            std::ostringstream msg;
            msg << "not biunitary: residual " << b.residual << " > tol " << tol;
            throw InputError(msg.str());
        }
    }
    return r;
}

RepFile load_rep(const std::filesystem::path& path, bool validate) {
    try {
        return rep_from_json(read_json(path), validate);
    } catch (const InputError& e) {
        throw InputError(path.filename().string() + ": " + e.what());
    }
}

void save_rep(const std::filesystem::path& path, const RepFile& r) { write_json(path, rep_to_json(r)); }

}  // namespace definetti
