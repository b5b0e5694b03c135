#pragma once

#include <stdexcept>
#include <string>

namespace cover {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidPolygon : public Error {
public:
    using Error::Error;
};

class InvalidRadius : public Error {
public:
    using Error::Error;
};

class InvalidScene : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

/// Input to a statistical test that carries no information (e.g. all differences zero).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

}  // namespace cover
