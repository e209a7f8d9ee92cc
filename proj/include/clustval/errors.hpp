#pragma once

#include <stdexcept>
#include <string>

namespace clustval {

/// Base for all library errors.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or contract-violating input: bad CSV, invalid partition,
/// out-of-range k, unsatisfiable generator config. CLI exit code 2.
class data_error : public error {
public:
    using error::error;
};

/// Numerically undefined result: zero denominators, single-class pair
/// labels, all-tied comparisons, degenerate agreement scales. CLI exit
/// code 3.
class degenerate_error : public error {
public:
    using error::error;
};

/// Command-line misuse (unknown subcommand, unknown index id). Exit code 1.
class usage_error : public error {
public:
    using error::error;
};

}  // namespace clustval
