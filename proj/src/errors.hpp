#pragma once

#include <stdexcept>
#include <string>

namespace loadtk {

// Config / schema problems: CLI exit code 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Problems with the data itself (bad values, empty overlap, short history): exit code 3.
struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace loadtk
