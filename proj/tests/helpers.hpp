#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "qcosym/qcosym.hpp"

namespace qtest {

using namespace qcosym;

inline std::string fixture_path(const char* name) {
    return std::string(QCOSYM_SOURCE_DIR "/configs/") + name;
}

inline std::string work_dir(const char* sub) {
    const std::string dir = std::string(QCOSYM_WORK_DIR "/") + sub;
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct CaptureStream {
    std::ostream& stream;
    std::ostringstream buffer;
    std::streambuf* saved;
    explicit CaptureStream(std::ostream& os) : stream(os), saved(os.rdbuf(buffer.rdbuf())) {}
    ~CaptureStream() { stream.rdbuf(saved); }
    std::string str() const { return buffer.str(); }
};

}  // namespace qtest
