#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "tsr/complexes.hpp"

namespace tsr::test {

inline std::filesystem::path fixture(const std::string& name)
{
    return std::filesystem::path(TSR_FIXTURES_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline OrbitComplex load(const std::string& name) { return load_complex(fixture(name)); }

}  // namespace tsr::test
