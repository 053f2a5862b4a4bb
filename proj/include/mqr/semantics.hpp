#pragma once

#include "mqr/error.hpp"
#include "mqr/syntax.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace mqr {

using world = std::size_t;

// Explicit set of ordered pairs over worlds {0..n-1}.
class relation_set
{
public:
    relation_set() = default;
    explicit relation_set( std::size_t worlds ) : _worlds( worlds ), _bits( worlds * worlds, 0 ) {}

    [[nodiscard]] std::size_t world_count() const { return _worlds; }
    [[nodiscard]] bool contains( world a, world b ) const { return _bits[ a * _worlds + b ] != 0; }
    void insert( world a, world b ) { _bits[ a * _worlds + b ] = 1; }
    void erase( world a, world b ) { _bits[ a * _worlds + b ] = 0; }
    [[nodiscard]] std::vector< std::pair< world, world > > pairs() const;

    friend auto operator<=>( const relation_set&, const relation_set& ) = default;

private:
    std::size_t _worlds = 0;
    std::vector< std::uint8_t > _bits;
};

// The measurement relation is M under MSQR and P under MSPQR.
struct frame
{
    proof_system system = proof_system::msqr;
    std::vector< std::string > world_names;
    relation_set unitary;
    relation_set meas;

    // Worlds named w0, w1, ... with empty relations.
    static frame empty( proof_system system, std::size_t worlds );

    [[nodiscard]] std::size_t size() const { return world_names.size(); }
    // Throws mqr_error "wrong-system" for the other system's measurement.
    [[nodiscard]] const relation_set& accessibility( relation rel ) const;
    [[nodiscard]] std::optional< world > find_world( std::string_view name ) const;

    friend auto operator<=>( const frame&, const frame& ) = default;
};

enum class frame_property
{
    not_equivalence,
    meas_not_sub_u,
    not_serial,
    not_shift_reflexive,
    classical_not_unique,
    not_transitive,
    no_classical_reachable,
};

std::string_view to_string( frame_property p );

struct frame_violation
{
    frame_property property;
    std::vector< world > witnesses;

    friend bool operator==( const frame_violation&, const frame_violation& ) = default;
};

// Which frame conditions to enforce. Conditions (ii)-(iv) mean different
// things per system:
//   MSQR:  (ii) serial, (iii) shift-reflexive, (iv) classical worlds only see themselves
//   MSPQR: (ii) transitive, (iii) a classical world is reachable, (iv) as MSQR
// Dropping a condition is only meant for correspondence experiments.
struct frame_conditions
{
    bool equivalence = true;
    bool inclusion = true; // (i)
    bool second = true;
    bool third = true;
    bool fourth = true;
};

std::vector< frame_violation > validate_frame( const frame& f, const frame_conditions& conditions = {} );
bool is_valid_frame( const frame& f, const frame_conditions& conditions = {} );

struct model
{
    frame fr;
    // valuation[w] is the set of propositions true at w; others are false
    std::vector< std::set< std::string > > valuation;

    static model over( frame f );
};

struct structure
{
    model mod;
    std::map< label, world > interp;
};

// Worlds of the model at which the formula is true.
std::vector< bool > truth_set( const model& m, const mformula& phi );

// Throws mqr_error "unknown-world" or "wrong-system".
bool eval( const model& m, world w, const mformula& phi );

// Throws mqr_error "unbound-label" (or the codes of eval).
bool holds( const structure& s, const formula& alpha );

// (all of gamma hold) implies alpha holds, in this one structure.
bool entails_in( const structure& s, const std::vector< formula >& gamma, const formula& alpha );

} // namespace mqr
