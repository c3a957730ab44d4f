#include "definetti/fixtures.hpp"

#include <algorithm>
#include <cctype>

namespace definetti {

SpecFile haar_unitary_moments(int order) {
    SpecFile s;
    s.kind = "moments";
    s.table = FunctionalTable(1, 1, order);
    for (int k = 1; k <= order; ++k)
        for (const auto& d : all_patterns(k))
            if (d.imbalance() == 0) s.table.set_scalar(word_of(d), 1.0);
    return s;
}

std::string spec_fixture_name(FreeClassTag t) {
    std::string s = "spec_";
    for (char c : to_string(t)) {
        if (std::isalnum(static_cast<unsigned char>(c)))
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        else if (c == '(' || c == '_')
            s += '_';
    }
    return s;
}

FixtureSet make_fixtures(std::uint64_t seed) {
    FixtureSet f;
    for (auto& w : witness_catalog()) f.reps.push_back({w.rep, w.name, to_string(w.family), w.note});
    for (auto t : free_class_list(3)) f.specs.push_back({spec_fixture_name(t), spec_file(sample_spec(t, seed))});
    f.specs.push_back({"haar_unitary", haar_unitary_moments()});
    return f;
}

std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir, std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> out;
    auto f = make_fixtures(seed);
    for (const auto& r : f.reps) {
        out.push_back(dir / (r.name + ".json"));
        save_rep(out.back(), r);
    }
    for (const auto& s : f.specs) {
        out.push_back(dir / (s.name + ".json"));
        save_spec(out.back(), s.spec);
    }
    return out;
}

FixtureSet load_fixtures(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw InputError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    FixtureSet f;
    for (const auto& p : files) {
        json j = read_json(p);
        std::string name = p.stem().string();
        if (j.contains("entries") && j.contains("n")) {
            auto r = load_rep(p);
            if (r.name.empty()) r.name = name;
            if (!r.family.empty()) {
                auto c = check_family(r.rep, parse_family(r.family));
                if (!c.holds)
                    throw InputError(p.filename().string() + ": fails its declared family " + r.family +
                                     " (residual " + std::to_string(c.residual) + ")");
            }
            f.reps.push_back(std::move(r));
        } else {
            f.specs.push_back({name, spec_from_json(j)});
        }
    }
    return f;
}

}  // namespace definetti
