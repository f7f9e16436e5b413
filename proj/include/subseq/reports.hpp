#pragma once

// JSON views of the result types. Every number is written as a decimal string
// so that counts never pass through a floating-point type.

#include <subseq/certifier.hpp>
#include <subseq/construction.hpp>
#include <subseq/extremal.hpp>
#include <subseq/lcs.hpp>
#include <subseq/occurrence.hpp>
#include <subseq/shape.hpp>

#include <json.hpp>

#include <string>

namespace subseq::reports
{
    using json = nlohmann::ordered_json;

    inline constexpr const char * schema_version = "1";
    inline constexpr const char * tool_version = "1.0.0";

    auto decimal(const CountValue & x) -> std::string;

    template <typename T>
    auto decimal(T x) -> std::string
        requires std::is_integral_v<T>
    {
        return std::to_string(x);
    }

    auto to_json(const Word & w) -> json;
    auto to_json(const MostCommon & m) -> json;
    auto to_json(const ExtremalRecord & r) -> json;
    auto to_json(const RootBound & b) -> json;
    auto to_json(const MuWindow & m) -> json;
    auto to_json(const SubmultiplicativityReport & r) -> json;
    auto to_json(const LcsResult & r) -> json;
    auto to_json(const TripleProductReport & r) -> json;
    auto to_json(const PropertyCheck & c) -> json;
    auto to_json(const PropertyReport & r) -> json;
    auto to_json(const IntermediateReport & r) -> json;
    auto to_json(const ClaimTally & t) -> json;
    auto to_json(const ShapeSuiteReport & r) -> json;
    auto to_json(const CertificateStep & s) -> json;
    auto to_json(const Certificate & c) -> json;

    /// {"schema_version", "tool_version", "command", "seed", "budgets", "result"}.
    auto envelope(const std::string & command, std::uint64_t seed, const json & budgets, json result) -> json;
}
