#pragma once

#include "mqr/semantics.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace mqr {

// Exhaustive enumeration stops here: 15 partitions x 2^16 measurement
// candidates at four worlds.
inline constexpr std::size_t max_enumeration_worlds = 4;

struct search_budget
{
    std::size_t max_worlds = 3;
    // Extra propositions to vary; those occurring in the query are always added.
    std::vector< std::string > propositions;
    std::uint64_t seed = 0;
};

// Calls `visit` on every frame over worlds {0..size-1} that satisfies
// `conditions`: each equivalence relation U (as a partition) crossed with
// each measurement relation, in a fixed order. Stops when `visit` returns
// false. Throws mqr_error "bound-too-large" above four worlds.
void for_each_frame( proof_system system, std::size_t size, const std::function< bool( const frame& ) >& visit,
                     const frame_conditions& conditions = {} );

std::vector< frame > enumerate_frames( proof_system system, std::size_t size,
                                       const frame_conditions& conditions = {} );

// Valid frame with between 1 and budget.max_worlds worlds, built directly
// rather than by rejection. Deterministic in budget.seed.
frame random_valid_frame( proof_system system, const search_budget& budget );

struct countermodel_found
{
    structure witness;
};

struct countermodel_not_found
{
    std::size_t bound = 0;
    std::uint64_t frames_checked = 0;
    // More labels than worlds: injective interpretations were out of reach.
    bool labels_exceed_bound = false;
};

using countermodel_result = std::variant< countermodel_found, countermodel_not_found >;

// First structure (by world count, then frame, valuation and
// interpretation order) in which all of gamma hold and alpha fails.
// Throws mqr_error "bound-too-large" or "wrong-system".
countermodel_result find_countermodel( proof_system system, const std::vector< formula >& gamma,
                                       const formula& alpha, const search_budget& budget,
                                       const frame_conditions& conditions = {} );

} // namespace mqr
