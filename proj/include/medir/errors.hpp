#ifndef MEDIR_ERRORS_HPP
#define MEDIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace medir {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : Error {
    using Error::Error;
};

// Malformed line in a TSV resource file, qrels file, or similar structured input.
struct SchemaError : Error {
    using Error::Error;
    SchemaError(const std::string& file, std::size_t line, const std::string& reason)
        : Error(file + ":" + std::to_string(line) + ": " + reason) {}
};

struct FormatVersionMismatch : Error {
    using Error::Error;
};

struct EmptyCorpus : Error {
    using Error::Error;
};

struct InvalidGrade : Error {
    using Error::Error;
};

struct ZeroLengthQuery : Error {
    using Error::Error;
};

} // namespace medir

#endif
