#include "mqr/semantics.hpp"

#include <algorithm>

namespace mqr {

std::vector< std::pair< world, world > > relation_set::pairs() const
{
    std::vector< std::pair< world, world > > out;
    for ( world a = 0; a < _worlds; ++a )
        for ( world b = 0; b < _worlds; ++b )
            if ( contains( a, b ) )
                out.emplace_back( a, b );
    return out;
}

frame frame::empty( proof_system system, std::size_t worlds )
{
    frame f;
    f.system = system;
    for ( std::size_t i = 0; i < worlds; ++i )
        f.world_names.push_back( "w" + std::to_string( i ) );
    f.unitary = relation_set( worlds );
    f.meas = relation_set( worlds );
    return f;
}

const relation_set& frame::accessibility( relation rel ) const
{
    if ( rel == relation::u )
        return unitary;
    if ( !is_legal( rel, system ) )
        throw mqr_error( "wrong-system", "relation " + std::string( to_string( rel ) ) + " is not part of "
                                             + std::string( to_string( system ) ) );
    return meas;
}

std::optional< world > frame::find_world( std::string_view name ) const
{
    const auto it = std::find( world_names.begin(), world_names.end(), name );
    if ( it == world_names.end() )
        return std::nullopt;
    return static_cast< world >( it - world_names.begin() );
}

std::string_view to_string( frame_property p )
{
    switch ( p )
    {
    case frame_property::not_equivalence: return "not-equivalence";
    case frame_property::meas_not_sub_u: return "meas-not-sub-U";
    case frame_property::not_serial: return "not-serial";
    case frame_property::not_shift_reflexive: return "not-shift-reflexive";
    case frame_property::classical_not_unique: return "classical-not-unique";
    case frame_property::not_transitive: return "not-transitive";
    case frame_property::no_classical_reachable: return "no-classical-reachable";
    }
    return "?";
}

namespace {

// Visits every violation; stops early when `sink` returns false.
template < typename Sink >
void scan_violations( const frame& f, const frame_conditions& c, Sink&& sink )
{
    const auto n = f.size();
    const auto& u = f.unitary;
    const auto& m = f.meas;
    const bool msqr = f.system == proof_system::msqr;

    if ( c.equivalence )
    {
        for ( world v = 0; v < n; ++v )
            if ( !u.contains( v, v ) && !sink( frame_property::not_equivalence, { v } ) )
                return;
        for ( world v = 0; v < n; ++v )
            for ( world w = 0; w < n; ++w )
                if ( u.contains( v, w ) && !u.contains( w, v ) && !sink( frame_property::not_equivalence, { v, w } ) )
                    return;
        for ( world a = 0; a < n; ++a )
            for ( world b = 0; b < n; ++b )
                for ( world d = 0; d < n; ++d )
                    if ( u.contains( a, b ) && u.contains( b, d ) && !u.contains( a, d )
                         && !sink( frame_property::not_equivalence, { a, b, d } ) )
                        return;
    }
    if ( c.inclusion )
        for ( world v = 0; v < n; ++v )
            for ( world w = 0; w < n; ++w )
                if ( m.contains( v, w ) && !u.contains( v, w ) && !sink( frame_property::meas_not_sub_u, { v, w } ) )
                    return;
    if ( c.second )
    {
        if ( msqr )
        {
            for ( world v = 0; v < n; ++v )
            {
                bool serial = false;
                for ( world w = 0; w < n && !serial; ++w )
                    serial = m.contains( v, w );
                if ( !serial && !sink( frame_property::not_serial, { v } ) )
                    return;
            }
        }
        else
        {
            for ( world a = 0; a < n; ++a )
                for ( world b = 0; b < n; ++b )
                    for ( world d = 0; d < n; ++d )
                        if ( m.contains( a, b ) && m.contains( b, d ) && !m.contains( a, d )
                             && !sink( frame_property::not_transitive, { a, b, d } ) )
                            return;
        }
    }
    if ( c.third )
    {
        if ( msqr )
        {
            for ( world v = 0; v < n; ++v )
                for ( world w = 0; w < n; ++w )
                    if ( m.contains( v, w ) && !m.contains( w, w )
                         && !sink( frame_property::not_shift_reflexive, { v, w } ) )
                        return;
        }
        else
        {
            for ( world v = 0; v < n; ++v )
            {
                bool reaches = false;
                for ( world w = 0; w < n && !reaches; ++w )
                    reaches = m.contains( v, w ) && m.contains( w, w );
                if ( !reaches && !sink( frame_property::no_classical_reachable, { v } ) )
                    return;
            }
        }
    }
    if ( c.fourth )
        for ( world v = 0; v < n; ++v )
            for ( world w = 0; w < n; ++w )
                if ( v != w && m.contains( v, v ) && m.contains( v, w )
                     && !sink( frame_property::classical_not_unique, { v, w } ) )
                    return;
}

void check_world( const model& m, world w )
{
    if ( w >= m.fr.size() )
        throw mqr_error( "unknown-world", "world " + std::to_string( w ) + " is not in the model" );
}

} // namespace

std::vector< frame_violation > validate_frame( const frame& f, const frame_conditions& conditions )
{
    std::vector< frame_violation > out;
    scan_violations( f, conditions, [ & ]( frame_property p, std::vector< world > witnesses ) {
        out.push_back( { p, std::move( witnesses ) } );
        return true;
    } );
    return out;
}

bool is_valid_frame( const frame& f, const frame_conditions& conditions )
{
    if ( f.size() == 0 )
        return false;
    bool valid = true;
    scan_violations( f, conditions, [ & ]( frame_property, std::vector< world > ) { return valid = false; } );
    return valid;
}

model model::over( frame f )
{
    model m;
    m.valuation.resize( f.size() );
    m.fr = std::move( f );
    return m;
}

std::vector< bool > truth_set( const model& m, const mformula& phi )
{
    const auto n = m.fr.size();
    switch ( phi.node_kind() )
    {
    case mformula::kind::bottom:
        return std::vector< bool >( n, false );
    case mformula::kind::prop: {
        std::vector< bool > out( n );
        for ( world w = 0; w < n; ++w )
            out[ w ] = m.valuation[ w ].count( phi.name() ) != 0;
        return out;
    }
    case mformula::kind::implies: {
        auto out = truth_set( m, phi.lhs() );
        const auto rhs = truth_set( m, phi.rhs() );
        for ( world w = 0; w < n; ++w )
            out[ w ] = !out[ w ] || rhs[ w ];
        return out;
    }
    case mformula::kind::box: {
        const auto& r = m.fr.accessibility( phi.rel() );
        const auto body = truth_set( m, phi.body() );
        std::vector< bool > out( n, true );
        for ( world v = 0; v < n; ++v )
            for ( world w = 0; w < n && out[ v ]; ++w )
                if ( r.contains( v, w ) && !body[ w ] )
                    out[ v ] = false;
        return out;
    }
    }
    return {};
}

bool eval( const model& m, world w, const mformula& phi )
{
    check_world( m, w );
    if ( !is_legal( phi, m.fr.system ) )
        throw mqr_error( "wrong-system", "'" + print( phi ) + "' is not a formula of "
                                             + std::string( to_string( m.fr.system ) ) );
    return truth_set( m, phi )[ w ];
}

bool holds( const structure& s, const formula& alpha )
{
    const auto lookup = [ & ]( const label& l ) {
        const auto it = s.interp.find( l );
        if ( it == s.interp.end() )
            throw mqr_error( "unbound-label", "label '" + l.name + "' has no interpretation" );
        check_world( s.mod, it->second );
        return it->second;
    };
    if ( const auto* lf = as_labelled( alpha ) )
        return eval( s.mod, lookup( lf->at ), lf->body );
    const auto& r = std::get< relational >( alpha );
    const auto from = lookup( r.from );
    const auto to = lookup( r.to );
    return s.mod.fr.accessibility( r.rel ).contains( from, to );
}

bool entails_in( const structure& s, const std::vector< formula >& gamma, const formula& alpha )
{
    // Evaluate everything first so unbound labels are reported even when
    // an earlier assumption already fails.
    bool premises = true;
    for ( const auto& g : gamma )
        premises = holds( s, g ) && premises;
    const bool conclusion = holds( s, alpha );
    return !premises || conclusion;
}

} // namespace mqr
