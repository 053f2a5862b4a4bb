#include "mqr/model_io.hpp"

#include <cctype>
#include <sstream>

namespace mqr {

namespace {

struct word
{
    std::string text;
    int column;
};

// Splits on whitespace; ':' and '=' are separate words.
std::vector< word > split( std::string_view line )
{
    std::vector< word > out;
    std::size_t i = 0;
    while ( i < line.size() )
    {
        const char c = line[ i ];
        if ( std::isspace( static_cast< unsigned char >( c ) ) )
        {
            ++i;
            continue;
        }
        if ( c == ':' || c == '=' )
        {
            out.push_back( { std::string( 1, c ), static_cast< int >( i ) + 1 } );
            ++i;
            continue;
        }
        const auto start = i;
        while ( i < line.size() && !std::isspace( static_cast< unsigned char >( line[ i ] ) ) && line[ i ] != ':'
                && line[ i ] != '=' )
            ++i;
        out.push_back( { std::string( line.substr( start, i - start ) ), static_cast< int >( start ) + 1 } );
    }
    return out;
}

[[noreturn]] void fail( int line, int column, const std::string& what, std::string code = "syntax" )
{
    throw parse_error( std::move( code ), line, column, {},
                       std::to_string( line ) + ":" + std::to_string( column ) + ": " + what );
}

} // namespace

structure parse_model( std::string_view text )
{
    std::optional< proof_system > system;
    std::optional< frame > fr;
    struct pending_val { world w; std::vector< std::string > props; };
    std::vector< pending_val > vals;
    std::map< label, world > interp;

    std::istringstream in{ std::string( text ) };
    std::string raw;
    int line_no = 0;
    while ( std::getline( in, raw ) )
    {
        ++line_no;
        auto line = std::string_view( raw );
        if ( const auto hash = line.find( '#' ); hash != std::string_view::npos )
            line = line.substr( 0, hash );
        const auto words = split( line );
        if ( words.empty() )
            continue;

        const auto& head = words[ 0 ];
        const auto world_of = [ & ]( const word& w ) {
            if ( !fr )
                fail( line_no, w.column, "'worlds' must come first" );
            const auto found = fr->find_world( w.text );
            if ( !found )
                fail( line_no, w.column, "unknown world '" + w.text + "'" );
            return *found;
        };

        if ( head.text == "system" )
        {
            if ( words.size() != 2 || system || !( system = system_from_string( words[ 1 ].text ) ) )
                fail( line_no, head.column, "expected 'system MSQR' or 'system MSPQR' once" );
        }
        else if ( head.text == "worlds" )
        {
            if ( !system )
                fail( line_no, head.column, "'system' must come before 'worlds'" );
            if ( fr || words.size() < 2 )
                fail( line_no, head.column, "expected one nonempty 'worlds' line" );
            frame f = frame::empty( *system, words.size() - 1 );
            f.world_names.clear();
            for ( std::size_t i = 1; i < words.size(); ++i )
            {
                if ( !is_identifier( words[ i ].text ) || f.find_world( words[ i ].text ) )
                    fail( line_no, words[ i ].column, "bad or repeated world name '" + words[ i ].text + "'" );
                f.world_names.push_back( words[ i ].text );
            }
            fr = std::move( f );
        }
        else if ( head.text == "U" || head.text == "M" || head.text == "P" )
        {
            if ( words.size() != 3 )
                fail( line_no, head.column, "expected '" + head.text + " <world> <world>'" );
            const auto a = world_of( words[ 1 ] );
            const auto b = world_of( words[ 2 ] );
            if ( head.text == "U" )
                fr->unitary.insert( a, b );
            else
            {
                const auto rel = head.text == "M" ? relation::m : relation::p;
                if ( !is_legal( rel, *system ) )
                    fail( line_no, head.column,
                          "relation " + head.text + " is not part of " + std::string( to_string( *system ) ),
                          "wrong-system" );
                fr->meas.insert( a, b );
            }
        }
        else if ( head.text == "val" )
        {
            if ( words.size() < 3 || words[ 2 ].text != ":" )
                fail( line_no, head.column, "expected 'val <world>: <propositions>'" );
            pending_val v{ world_of( words[ 1 ] ), {} };
            for ( std::size_t i = 3; i < words.size(); ++i )
            {
                if ( !is_identifier( words[ i ].text ) || words[ i ].text == "bot" )
                    fail( line_no, words[ i ].column, "bad proposition '" + words[ i ].text + "'" );
                v.props.push_back( words[ i ].text );
            }
            vals.push_back( std::move( v ) );
        }
        else if ( head.text == "interp" )
        {
            if ( words.size() != 4 || words[ 2 ].text != "=" || !is_identifier( words[ 1 ].text ) )
                fail( line_no, head.column, "expected 'interp <label> = <world>'" );
            const label l{ words[ 1 ].text };
            if ( interp.count( l ) )
                fail( line_no, words[ 1 ].column, "label '" + l.name + "' interpreted twice" );
            interp[ l ] = world_of( words[ 3 ] );
        }
        else
            fail( line_no, head.column, "unknown declaration '" + head.text + "'" );
    }
    if ( !fr )
        fail( line_no + 1, 1, "missing 'worlds' declaration" );

    structure s{ model::over( std::move( *fr ) ), std::move( interp ) };
    for ( auto& v : vals )
        s.mod.valuation[ v.w ].insert( v.props.begin(), v.props.end() );
    return s;
}

std::string print_structure( const structure& s )
{
    const auto& f = s.mod.fr;
    std::ostringstream out;
    out << "system " << to_string( f.system ) << "\n";
    out << "worlds";
    for ( const auto& name : f.world_names )
        out << " " << name;
    out << "\n";
    for ( const auto& [ a, b ] : f.unitary.pairs() )
        out << "U " << f.world_names[ a ] << " " << f.world_names[ b ] << "\n";
    const char* meas = f.system == proof_system::msqr ? "M" : "P";
    for ( const auto& [ a, b ] : f.meas.pairs() )
        out << meas << " " << f.world_names[ a ] << " " << f.world_names[ b ] << "\n";
    for ( world w = 0; w < f.size(); ++w )
    {
        out << "val " << f.world_names[ w ] << ":";
        for ( const auto& p : s.mod.valuation[ w ] )
            out << " " << p;
        out << "\n";
    }
    for ( const auto& [ l, w ] : s.interp )
        out << "interp " << l.name << " = " << f.world_names[ w ] << "\n";
    return out.str();
}

} // namespace mqr
