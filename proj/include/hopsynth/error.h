#pragma once

#include <stdexcept>
#include <string>

namespace hopsynth {

// Base for every error the library raises on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input record; carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class NotFound : public Error {
public:
    using Error::Error;
};

// Hyper pair with neither entities nor anchors to draw an answer from.
class NoCandidates : public Error {
public:
    using Error::Error;
};

// Completion was empty once trimmed at the first stop sequence.
class EmptyCompletion : public Error {
public:
    using Error::Error;
};

// Remote service unreachable after the retry budget was spent.
class BackendUnavailable : public Error {
public:
    using Error::Error;
};

class MalformedResponse : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace hopsynth
