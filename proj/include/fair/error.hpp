#ifndef FAIR_ERROR_HPP
#define FAIR_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fair {

enum class ErrorCode {
    syntax_error,
    invalid_query,
    unsupported_expression,
    no_such_table,
    no_such_column,
    file_exists,
    no_capacity,
    block_unavailable,
    header_mismatch,
    io_error,
    too_few_points,
    invalid_k,
    invalid_argument,
};

inline std::string_view to_string(ErrorCode code)
{
    switch (code) {
        case ErrorCode::syntax_error:           return "SYNTAX_ERROR";
        case ErrorCode::invalid_query:          return "INVALID_QUERY";
        case ErrorCode::unsupported_expression: return "UNSUPPORTED_EXPRESSION";
        case ErrorCode::no_such_table:          return "NO_SUCH_TABLE";
        case ErrorCode::no_such_column:         return "NO_SUCH_COLUMN";
        case ErrorCode::file_exists:            return "FILE_EXISTS";
        case ErrorCode::no_capacity:            return "NO_CAPACITY";
        case ErrorCode::block_unavailable:      return "BLOCK_UNAVAILABLE";
        case ErrorCode::header_mismatch:        return "HEADER_MISMATCH";
        case ErrorCode::io_error:               return "IO_ERROR";
        case ErrorCode::too_few_points:         return "TOO_FEW_POINTS";
        case ErrorCode::invalid_k:              return "INVALID_K";
        case ErrorCode::invalid_argument:       return "INVALID_ARGUMENT";
    }
    return "UNKNOWN";
}

/// Base exception for every recoverable failure raised by the library.
class Error : public std::runtime_error
{
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Raised by the query parser. `position` is the 0-based byte offset of the offending token.
class ParseError : public Error
{
  public:
    ParseError(std::size_t position, const std::string& message)
        : Error(ErrorCode::syntax_error, "at position " + std::to_string(position) + ": " + message),
          position_(position)
    {}

    std::size_t position() const noexcept { return position_; }

  private:
    std::size_t position_;
};

} // namespace fair

#endif // FAIR_ERROR_HPP
