// error.hpp -- error taxonomy shared by the library, the C API and the CLI.
#pragma once

#include <stdexcept>
#include <string>

namespace lclc {

// Codes line up with the CLI exit-code contract: 2 input, 3 unsolvable,
// 4 resource/budget, 5 internal.
enum class ErrorCode : int {
    Input = 2,
    Unsolvable = 3,
    Budget = 4,
    Internal = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string msg)
        : std::runtime_error(std::move(msg)), code_(code) {}

    ErrorCode code() const { return code_; }

    static Error input(std::string msg) { return Error(ErrorCode::Input, std::move(msg)); }
    static Error unsolvable(std::string msg) { return Error(ErrorCode::Unsolvable, std::move(msg)); }
    static Error budget(std::string msg) { return Error(ErrorCode::Budget, std::move(msg)); }
    static Error internal(std::string msg) { return Error(ErrorCode::Internal, std::move(msg)); }

private:
    ErrorCode code_;
};

} // namespace lclc
