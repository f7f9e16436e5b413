#pragma once

#include <stdexcept>
#include <string>

namespace subseq
{
    /// Violated precondition on an argument (alphabet mismatch, malformed input, ...).
    struct ContractError : std::invalid_argument
    {
        using std::invalid_argument::invalid_argument;
    };

    /// Index or interval outside the valid range of a word.
    struct RangeError : std::out_of_range
    {
        using std::out_of_range::out_of_range;
    };

    /// A configured computation budget would be exceeded. The message names the limit.
    struct ResourceError : std::runtime_error
    {
        ResourceError(const std::string & limit_name, const std::string & detail) :
            std::runtime_error("budget exceeded: " + limit_name + " (" + detail + ")"),
            limit(limit_name)
        {
        }

        std::string limit;
    };
}
