#pragma once

#include <stdexcept>
#include <string>

namespace qnid {

// configuration / usage problems (CLI exit code 1)
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// input data problems: schema, parse, empty files (CLI exit code 2)
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// model training / convergence problems (CLI exit code 3)
struct model_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qnid
