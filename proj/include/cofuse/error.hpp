#pragma once

#include <stdexcept>
#include <string>

namespace cofuse {

// Base for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-range configuration. The message names the offending key.
class config_error : public error {
public:
    using error::error;
};

// Shapes of images, patch matrices or dictionaries do not agree.
class dimension_error : public error {
public:
    using error::error;
};

// File could not be read, decoded or written.
class io_error : public error {
public:
    using error::error;
};

} // namespace cofuse
