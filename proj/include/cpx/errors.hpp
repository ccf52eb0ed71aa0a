#pragma once

#include <stdexcept>
#include <string>

namespace cpx {

// Error taxonomy mirrored by the CLI exit codes:
//   InputError    -> 2  (unreadable or malformed data)
//   ParamError    -> 3  (invalid parameter or violated domain constraint)
//   ResourceError -> 4  (problem size or environment limit exceeded)

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(what) {}
};

class ParamError : public Error {
public:
    explicit ParamError(const std::string& what) : Error(what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error(what) {}
};

}  // namespace cpx
