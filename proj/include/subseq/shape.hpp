#pragma once

// Block-entry profiles of embeddings into a construction word, their shapes,
// the pattern claims on shapes, break-position sets, and the segment
// decomposition of a shape.
//
// Positions in v are 0-based here: g_i is the first index of v mapped into
// block i or later (m when there is none), h_i the last index such that
// v[g_i..h_i] is a subsequence of block i (g_i - 1 when nothing fits).
// Differences d_i = h_i - g_{i+1} do not depend on the indexing origin.
// Block indices i are 1-based throughout.

#include <subseq/construction.hpp>
#include <subseq/occurrence.hpp>
#include <subseq/word.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subseq
{
    struct GHProfile
    {
        std::size_t m = 0;
        /// g[i-1] = g_i and h[i-1] = h_i for blocks i = 1..B.
        std::vector<std::ptrdiff_t> g, h;
        /// d[i-1] = d_i for i = 1..B-1.
        std::vector<std::ptrdiff_t> d;
    };

    /// Throws ContractError when f is not an embedding of v into cw.word.
    auto gh_profile(const Word & v, const EmbeddingMap & f, const ConstructionWord & cw) -> GHProfile;

    /// Violations of: g nondecreasing, h_i >= g_i - 1, d_i >= -1, v[g_i..h_i] a subsequence of block i.
    auto profile_violations(const Word & v, const GHProfile & p, const ConstructionWord & cw) -> std::vector<std::string>;

    using ShapeVector = std::vector<std::uint8_t>;

    /// 8, 4, 3, 2, 1 or 0 by the thresholds 10t^4, 10t^3, 10t^2, 10t, 1.
    auto shape_class(std::ptrdiff_t d, unsigned t) -> std::uint8_t;
    auto shape_of(const GHProfile & p, unsigned t) -> ShapeVector;
    auto to_string(const ShapeVector & s) -> std::string;

    /// One claim (or sub-condition) over all indices i <= B - 9 of all shapes fed in.
    struct ClaimTally
    {
        std::string name;
        std::string statement;
        /// Number of (shape, i) pairs meeting the hypothesis.
        std::size_t applicable = 0;
        std::size_t violations = 0;
        /// First violation: the shape and the 1-based index i.
        std::optional<std::pair<ShapeVector, std::size_t>> counterexample;
    };

    class ShapeClaims
    {
        public:
            ShapeClaims();

            /// Evaluates every claim on s. The interval-containment claim needs the profile and is skipped without it.
            auto add(const ShapeVector & s, const GHProfile * profile = nullptr) -> void;
            auto merge(const ShapeClaims & other) -> void;

            auto tallies() const -> const std::vector<ClaimTally> & { return _tallies; }
            auto violations() const -> std::size_t;

        private:
            std::vector<ClaimTally> _tallies;
    };

    /// 1-based positions z with b[z] and b[z+1] differing in coordinates 1..x.
    auto e_set(const Word & b, std::size_t x, unsigned t, std::size_t r = 8) -> std::vector<std::size_t>;

    /// Every y-th element of the sorted e_set, starting from its smallest.
    auto e_subsample(const Word & b, std::size_t x, std::size_t y, unsigned t, std::size_t r = 8) -> std::vector<std::size_t>;

    enum class SegmentRule { singleton_012, pair_34_0, triple_34_12, nine_8_special, eight_8 };

    auto to_string(SegmentRule rule) -> std::string;

    struct ShapeSegment
    {
        /// 1-based index of the first entry.
        std::size_t start = 1;
        ShapeVector symbols;
        SegmentRule rule = SegmentRule::singleton_012;
    };

    struct Decomposition
    {
        std::vector<ShapeSegment> segments;
        /// Entries left after the last segment.
        std::size_t uncovered = 0;
        /// 1-based index where no rule applied.
        std::optional<std::size_t> failure;
    };

    /// Greedy left-to-right segmentation while at least 9 entries remain.
    auto decompose_shape(const ShapeVector & s) -> Decomposition;

    /// Whether a segment's content matches the pattern of its rule.
    auto segment_conforms(const ShapeSegment & segment) -> bool;

    struct ShapeSuiteConfig
    {
        unsigned t = 2;
        std::size_t min_blocks = 10, max_blocks = 16;
        /// Sampled words per block count.
        std::size_t samples_per_blocks = 20;
        /// Embeddings enumerated from each end per sampled word.
        std::size_t embeddings_per_end = 100;
        /// Sampled subsequences of single blocks for the break-set bound.
        std::size_t break_samples = 1000;
        std::uint64_t seed = 1;
        unsigned threads = 0;
    };

    struct ShapeSuiteReport
    {
        ShapeSuiteConfig config;
        std::size_t words = 0;
        std::size_t embeddings = 0;
        std::size_t profile_violations = 0;
        std::size_t determination_violations = 0;
        std::size_t simple_bound_checks = 0;
        std::size_t simple_bound_violations = 0;
        std::size_t break_checks = 0;
        std::size_t break_violations = 0;
        std::size_t shapes = 0;
        std::size_t decomposition_failures = 0;
        std::size_t max_uncovered = 0;
        /// Occurrences of each shape value 0, 1, 2, 3, 4, 8.
        std::vector<std::size_t> class_histogram = std::vector<std::size_t>(6, 0);
        ShapeClaims claims;
        /// Human-readable descriptions of the first few failures.
        std::vector<std::string> failures;

        auto passed() const -> bool;
    };

    /// Samples words v as random subsequences of construction words, enumerates
    /// embeddings from both ends, and checks profiles, claims, the per-step
    /// count bound, the break-set bound and the decomposition. Deterministic in
    /// the seed regardless of thread count.
    auto run_shape_suite(const ShapeSuiteConfig & config) -> ShapeSuiteReport;
}
