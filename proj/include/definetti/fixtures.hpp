#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "definetti/io.hpp"

namespace definetti {

struct NamedSpec {
    std::string name;
    SpecFile spec;
};

struct FixtureSet {
    std::vector<RepFile> reps;
    std::vector<NamedSpec> specs;
};

// moments of a Haar unitary: 1 on balanced patterns, 0 elsewhere
SpecFile haar_unitary_moments(int order = 8);

std::string spec_fixture_name(FreeClassTag t);  // "spec_m_unitary_3"

FixtureSet make_fixtures(std::uint64_t seed = 0);

// writes <name>.json for every rep and spec; returns the paths in write order
std::vector<std::filesystem::path> write_fixtures(const std::filesystem::path& dir, std::uint64_t seed = 0);

// loads every *.json in dir; a rep failing its declared family is an input error
FixtureSet load_fixtures(const std::filesystem::path& dir);

}  // namespace definetti
