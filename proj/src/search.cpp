#include "mqr/search.hpp"

#include <algorithm>
#include <random>

namespace mqr {

namespace {

void check_bound( std::size_t size )
{
    if ( size > max_enumeration_worlds )
        throw mqr_error( "bound-too-large", "at most " + std::to_string( max_enumeration_worlds )
                                                + " worlds can be enumerated, got " + std::to_string( size ) );
    if ( size == 0 )
        throw mqr_error( "bound-too-small", "frames have at least one world" );
}

// Restricted growth strings: block[i] <= 1 + max(block[0..i-1]).
template < typename Visit >
bool for_each_partition( std::size_t n, Visit&& visit )
{
    std::vector< std::size_t > block( n, 0 );
    std::function< bool( std::size_t, std::size_t ) > rec = [ & ]( std::size_t i, std::size_t used ) {
        if ( i == n )
            return visit( block );
        for ( std::size_t b = 0; b <= used && b < n; ++b )
        {
            block[ i ] = b;
            if ( !rec( i + 1, std::max( used, b + 1 ) ) )
                return false;
        }
        return true;
    };
    if ( n == 0 )
        return true;
    block[ 0 ] = 0;
    return rec( 1, 1 );
}

relation_set from_mask( std::size_t n, std::uint32_t mask )
{
    relation_set r( n );
    for ( world a = 0; a < n; ++a )
        for ( world b = 0; b < n; ++b )
            if ( mask >> ( a * n + b ) & 1u )
                r.insert( a, b );
    return r;
}

struct rng
{
    std::mt19937_64 engine;

    // [0, bound)
    std::size_t below( std::size_t bound ) { return static_cast< std::size_t >( engine() % bound ); }
    bool coin() { return ( engine() & 1u ) != 0; }
};

// Nonempty random subset of `items`.
std::vector< world > nonempty_subset( rng& r, const std::vector< world >& items )
{
    for ( ;; )
    {
        std::vector< world > out;
        for ( auto w : items )
            if ( r.coin() )
                out.push_back( w );
        if ( !out.empty() )
            return out;
    }
}

void transitive_closure( relation_set& rel )
{
    const auto n = rel.world_count();
    for ( world k = 0; k < n; ++k )
        for ( world a = 0; a < n; ++a )
            for ( world b = 0; b < n; ++b )
                if ( rel.contains( a, k ) && rel.contains( k, b ) )
                    rel.insert( a, b );
}

} // namespace

void for_each_frame( proof_system system, std::size_t size, const std::function< bool( const frame& ) >& visit,
                     const frame_conditions& conditions )
{
    check_bound( size );
    const auto n = size;
    const std::uint32_t all = n * n == 32 ? ~0u : ( ( 1u << ( n * n ) ) - 1u );
    for_each_partition( n, [ & ]( const std::vector< std::size_t >& block ) {
        frame f = frame::empty( system, n );
        std::uint32_t u_mask = 0;
        for ( world a = 0; a < n; ++a )
            for ( world b = 0; b < n; ++b )
                if ( block[ a ] == block[ b ] )
                {
                    f.unitary.insert( a, b );
                    u_mask |= 1u << ( a * n + b );
                }
        // With (i) enforced only subsets of U can pass, so enumerate those
        // (in increasing order) instead of all of W x W.
        const std::uint32_t space = conditions.inclusion ? u_mask : all;
        std::uint32_t sub = 0;
        for ( ;; )
        {
            f.meas = from_mask( n, sub );
            if ( is_valid_frame( f, conditions ) && !visit( f ) )
                return false;
            if ( sub == space )
                break;
            sub = ( sub - space ) & space;
        }
        return true;
    } );
}

std::vector< frame > enumerate_frames( proof_system system, std::size_t size, const frame_conditions& conditions )
{
    std::vector< frame > out;
    for_each_frame(
        system, size,
        [ & ]( const frame& f ) {
            out.push_back( f );
            return true;
        },
        conditions );
    return out;
}

frame random_valid_frame( proof_system system, const search_budget& budget )
{
    if ( budget.max_worlds == 0 )
        throw mqr_error( "bound-too-small", "frames have at least one world" );
    rng r{ std::mt19937_64( budget.seed ) };
    const auto n = 1 + r.below( budget.max_worlds );

    std::vector< std::size_t > block( n, 0 );
    std::size_t blocks = 1;
    for ( world w = 1; w < n; ++w )
    {
        block[ w ] = r.below( blocks + 1 );
        blocks = std::max( blocks, block[ w ] + 1 );
    }

    frame f = frame::empty( system, n );
    for ( world a = 0; a < n; ++a )
        for ( world b = 0; b < n; ++b )
            if ( block[ a ] == block[ b ] )
                f.unitary.insert( a, b );

    // Per class: classical worlds see only themselves, every other world
    // measures into a nonempty set of the class's classical worlds.
    for ( std::size_t c = 0; c < blocks; ++c )
    {
        std::vector< world > members;
        for ( world w = 0; w < n; ++w )
            if ( block[ w ] == c )
                members.push_back( w );
        const auto classical = nonempty_subset( r, members );
        for ( auto w : members )
        {
            if ( std::find( classical.begin(), classical.end(), w ) != classical.end() )
                f.meas.insert( w, w );
            else
                for ( auto target : nonempty_subset( r, classical ) )
                    f.meas.insert( w, target );
        }
    }
    if ( system == proof_system::msqr )
        return f;

    // Generic measurements may also land on non-classical worlds, as long
    // as the transitive closure stays valid.
    for ( int attempt = 0; attempt < 16; ++attempt )
    {
        frame candidate = f;
        for ( world a = 0; a < n; ++a )
            for ( world b = 0; b < n; ++b )
                if ( a != b && block[ a ] == block[ b ] && !f.meas.contains( a, a ) && !f.meas.contains( b, b )
                     && r.below( 3 ) == 0 )
                    candidate.meas.insert( a, b );
        transitive_closure( candidate.meas );
        if ( is_valid_frame( candidate ) )
            return candidate;
    }
    return f;
}

countermodel_result find_countermodel( proof_system system, const std::vector< formula >& gamma,
                                       const formula& alpha, const search_budget& budget,
                                       const frame_conditions& conditions )
{
    check_bound( budget.max_worlds );
    for ( const auto& g : gamma )
        if ( !is_legal( g, system ) )
            throw mqr_error( "wrong-system", "'" + print( g ) + "' is not a formula of "
                                                 + std::string( to_string( system ) ) );
    if ( !is_legal( alpha, system ) )
        throw mqr_error( "wrong-system", "'" + print( alpha ) + "' is not a formula of "
                                             + std::string( to_string( system ) ) );

    std::vector< formula > query = gamma;
    query.push_back( alpha );

    std::vector< std::string > props = budget.propositions;
    std::set< label > label_set;
    for ( const auto& q : query )
    {
        for ( const auto& p : propositions_of( q ) )
            if ( std::find( props.begin(), props.end(), p ) == props.end() )
                props.push_back( p );
        for ( const auto& l : labels_of( q ) )
            label_set.insert( l );
    }
    const std::vector< label > labels( label_set.begin(), label_set.end() );

    countermodel_not_found miss{ budget.max_worlds, 0, labels.size() > budget.max_worlds };
    std::optional< structure > hit;

    for ( std::size_t size = 1; size <= budget.max_worlds && !hit; ++size )
    {
        if ( size * props.size() > 20 )
            throw mqr_error( "bound-too-large", "too many valuations: " + std::to_string( size ) + " worlds x "
                                                    + std::to_string( props.size() ) + " propositions" );
        const std::uint64_t valuations = std::uint64_t{ 1 } << ( size * props.size() );
        std::uint64_t interps = 1;
        for ( std::size_t i = 0; i < labels.size(); ++i )
            interps *= size;

        for_each_frame(
            system, size,
            [ & ]( const frame& f ) {
                ++miss.frames_checked;
                model m = model::over( f );
                for ( std::uint64_t v = 0; v < valuations; ++v )
                {
                    for ( world w = 0; w < size; ++w )
                    {
                        m.valuation[ w ].clear();
                        for ( std::size_t p = 0; p < props.size(); ++p )
                            if ( v >> ( w * props.size() + p ) & 1u )
                                m.valuation[ w ].insert( props[ p ] );
                    }
                    std::vector< std::vector< bool > > truth;
                    for ( const auto& q : query )
                        truth.push_back( as_labelled( q ) ? truth_set( m, as_labelled( q )->body )
                                                          : std::vector< bool >{} );

                    structure s{ m, {} };
                    for ( std::uint64_t code = 0; code < interps; ++code )
                    {
                        auto rest = code;
                        for ( std::size_t i = labels.size(); i-- > 0; )
                        {
                            s.interp[ labels[ i ] ] = rest % size;
                            rest /= size;
                        }
                        const auto true_here = [ & ]( std::size_t qi ) {
                            const auto& q = query[ qi ];
                            if ( const auto* lf = as_labelled( q ) )
                                return static_cast< bool >( truth[ qi ][ s.interp.at( lf->at ) ] );
                            const auto& r = std::get< relational >( q );
                            return f.accessibility( r.rel ).contains( s.interp.at( r.from ), s.interp.at( r.to ) );
                        };
                        bool premises = true;
                        for ( std::size_t gi = 0; gi < gamma.size() && premises; ++gi )
                            premises = true_here( gi );
                        if ( premises && !true_here( gamma.size() ) )
                        {
                            hit = s;
                            return false;
                        }
                    }
                }
                return true;
            },
            conditions );
    }
    if ( hit )
        return countermodel_found{ std::move( *hit ) };
    return miss;
}

} // namespace mqr
