#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "definetti/distribution.hpp"
#include "definetti/qgroup.hpp"

namespace definetti {

using json = nlohmann::json;

// Complex numbers are [re, im]; matrices are row-major nested arrays.
json complex_to_json(cd z);
cd complex_from_json(const json& j);
json matrix_to_json(const Block& m);
Block matrix_from_json(const json& j, int rows, int cols);

// Table file: {"kind", "alphabet", "dim", "order", "selfadjoint", "shift", "entries": [{"pattern", "word"?, "value"}]}.
// A p = 1 value is [re, im]; for p > 1 it is the list of p^{2(k-1)} matrices on the matrix-unit basis.
struct SpecFile {
    std::string kind = "cumulants";  // or "moments"
    FunctionalTable table{1, 1, 0};
    bool selfadjoint = false;
    Coeff shift = coeff_scalar(0.0);
};

json spec_to_json(const SpecFile& s);
SpecFile spec_from_json(const json& j);
SpecFile load_spec(const std::filesystem::path& path);
void save_spec(const std::filesystem::path& path, const SpecFile& s);

SpecFile spec_file(const CumulantSpec& s);

// Single-variable cumulants of the file; moments are converted with the free or classical formula.
CumulantSpec cumulant_spec(const SpecFile& s, bool free, int order);

// Rep file: {"n", "d", "tol", "entries": n x n of d x d of [re, im], "name"?, "family"?, "note"?}
struct RepFile {
    MatrixRep rep;
    std::string name;
    std::string family;  // declared family tag, may be empty
    std::string note;
};

json rep_to_json(const RepFile& r);
// validate: biunitarity within tol, else InputError carrying the residual
RepFile rep_from_json(const json& j, bool validate = true);
RepFile load_rep(const std::filesystem::path& path, bool validate = true);
void save_rep(const std::filesystem::path& path, const RepFile& r);

json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

}  // namespace definetti
