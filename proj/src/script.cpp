#include "mqr/script.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace mqr {

namespace {

bool is_blank( char c ) { return std::isspace( static_cast< unsigned char >( c ) ) != 0; }

// Cursor over one line of the script.
class line_reader
{
public:
    line_reader( std::string_view text, int line ) : _text( text ), _line( line ) {}

    void skip_blank()
    {
        while ( _pos < _text.size() && is_blank( _text[ _pos ] ) )
            ++_pos;
    }

    bool at_end()
    {
        skip_blank();
        return _pos >= _text.size();
    }

    std::string word()
    {
        skip_blank();
        const auto start = _pos;
        while ( _pos < _text.size() && ( std::isalnum( static_cast< unsigned char >( _text[ _pos ] ) ) || _text[ _pos ] == '_' ) )
            ++_pos;
        return std::string( _text.substr( start, _pos - start ) );
    }

    bool peek_digit()
    {
        skip_blank();
        return _pos < _text.size() && std::isdigit( static_cast< unsigned char >( _text[ _pos ] ) );
    }

    bool accept( char c )
    {
        skip_blank();
        if ( _pos < _text.size() && _text[ _pos ] == c )
        {
            ++_pos;
            return true;
        }
        return false;
    }

    int number()
    {
        skip_blank();
        const int col = column();
        const auto digits = word();
        if ( digits.empty() || !std::all_of( digits.begin(), digits.end(), []( unsigned char c ) { return std::isdigit( c ); } ) )
            fail( col, "expected a step number", { "step number" } );
        const auto value = std::stol( digits );
        if ( value <= 0 || value > 1'000'000'000 )
            fail( col, "step numbers are positive integers", { "step number" } );
        return static_cast< int >( value );
    }

    std::vector< int > number_list()
    {
        std::vector< int > out{ number() };
        while ( accept( ',' ) )
            out.push_back( number() );
        return out;
    }

    // Remainder of the line up to (not including) `stop`, with its origin.
    std::pair< std::string_view, text_origin > until( char stop )
    {
        const auto start = _pos;
        const auto end = _text.find( stop, _pos );
        _pos = end == std::string_view::npos ? _text.size() : end;
        return { _text.substr( start, _pos - start ), text_origin{ _line, static_cast< int >( start ) + 1 } };
    }

    [[nodiscard]] int column() const { return static_cast< int >( _pos ) + 1; }

    [[noreturn]] void fail( int col, const std::string& what, std::vector< std::string > expected = {} ) const
    {
        std::ostringstream msg;
        msg << _line << ":" << col << ": " << what;
        if ( !expected.empty() )
        {
            msg << "; expected ";
            for ( std::size_t i = 0; i < expected.size(); ++i )
                msg << ( i ? ", " : "" ) << expected[ i ];
        }
        throw parse_error( "syntax", _line, col, std::move( expected ), msg.str() );
    }

private:
    std::string_view _text;
    int _line;
    std::size_t _pos = 0;
};

std::string_view strip_comment( std::string_view line )
{
    const auto hash = line.find( '#' );
    return hash == std::string_view::npos ? line : line.substr( 0, hash );
}

rule_application parse_justification( line_reader& in, const std::string& name, int name_col )
{
    const auto r = rule_from_name( name );
    if ( !r )
        in.fail( name_col, "unknown rule '" + name + "'", { "hyp", "rule name" } );
    rule_application app{ *r, {}, {}, {} };
    if ( in.peek_digit() )
        app.premises = in.number_list();
    while ( !in.at_end() )
    {
        const int col = in.column();
        const auto keyword = in.word();
        if ( keyword == "discharge" && app.discharged.empty() )
            app.discharged = in.number_list();
        else if ( keyword == "fresh" && !app.fresh )
        {
            in.skip_blank();
            const int label_col = in.column();
            auto name_text = in.word();
            if ( !is_identifier( name_text ) )
                in.fail( label_col, "expected a label", { "label" } );
            app.fresh = label{ std::move( name_text ) };
        }
        else
            in.fail( col, "unexpected text in justification", { "discharge", "fresh", "end of line" } );
    }
    return app;
}

} // namespace

proof_script parse_script( std::string_view text )
{
    proof_script script;
    std::set< int > seen;
    bool done = false;
    int line_no = 0;

    std::size_t start = 0;
    while ( start <= text.size() )
    {
        const auto end = text.find( '\n', start );
        const auto raw = text.substr( start, end == std::string_view::npos ? text.size() - start : end - start );
        start = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        line_reader in( strip_comment( raw ), line_no );
        if ( in.at_end() )
            continue;
        if ( done )
            in.fail( in.column(), "text after qed" );

        if ( in.peek_digit() )
        {
            const int id_col = in.column();
            const int id = in.number();
            if ( !in.accept( '.' ) )
                in.fail( in.column(), "expected '.' after step number", { "'.'" } );
            if ( !seen.insert( id ).second )
                in.fail( id_col, "duplicate step number " + std::to_string( id ) );
            auto [ body, origin ] = in.until( ';' );
            if ( !in.accept( ';' ) )
                in.fail( in.column(), "missing justification", { "';'" } );
            auto conclusion = parse_formula( body, std::nullopt, origin );
            in.skip_blank();
            const int name_col = in.column();
            const auto name = in.word();
            proof_step step{ id, std::move( conclusion ), std::nullopt, line_no };
            if ( name == "hyp" )
            {
                if ( !in.at_end() )
                    in.fail( in.column(), "a hypothesis takes no premises", { "end of line" } );
            }
            else
                step.justification = parse_justification( in, name, name_col );
            script.steps.push_back( std::move( step ) );
            continue;
        }

        const int col = in.column();
        const auto keyword = in.word();
        if ( keyword == "system" && !script.system && script.steps.empty() )
        {
            const int sys_col = in.column() + 1;
            const auto name = in.word();
            script.system = system_from_string( name );
            if ( !script.system || !in.at_end() )
                in.fail( sys_col, "unknown system", { "MSQR", "MSPQR" } );
        }
        else if ( keyword == "theorem" && !script.theorem && script.steps.empty() )
        {
            const int name_col = in.column() + 1;
            auto name = in.word();
            if ( !is_identifier( name ) )
                in.fail( name_col, "expected a theorem name", { "name" } );
            if ( !in.accept( ':' ) )
                in.fail( in.column(), "expected ':' after theorem name", { "':'" } );
            auto [ body, origin ] = in.until( '\n' );
            script.theorem_name = std::move( name );
            script.theorem = parse_formula( body, std::nullopt, origin );
        }
        else if ( keyword == "qed" && in.at_end() )
            done = true;
        else
            in.fail( col, "unexpected line", { "system", "theorem", "step", "qed" } );
    }
    if ( !done )
        throw parse_error( "syntax", line_no, 1, { "qed" }, std::to_string( line_no ) + ":1: missing qed" );
    return script;
}

std::string print_script( const proof_script& script )
{
    std::ostringstream out;
    if ( script.system )
        out << "system " << to_string( *script.system ) << "\n";
    if ( script.theorem )
        out << "theorem " << script.theorem_name.value_or( "unnamed" ) << " : " << print( *script.theorem ) << "\n";
    const auto ids = []( const std::vector< int >& list ) {
        std::string s;
        for ( std::size_t i = 0; i < list.size(); ++i )
            s += ( i ? "," : "" ) + std::to_string( list[ i ] );
        return s;
    };
    for ( const auto& step : script.steps )
    {
        out << step.id << ". " << print( step.conclusion ) << " ; ";
        if ( step.is_hypothesis() )
        {
            out << "hyp\n";
            continue;
        }
        const auto& app = *step.justification;
        out << rule_name( app.name );
        if ( !app.premises.empty() )
            out << " " << ids( app.premises );
        if ( !app.discharged.empty() )
            out << " discharge " << ids( app.discharged );
        if ( app.fresh )
            out << " fresh " << app.fresh->name;
        out << "\n";
    }
    out << "qed\n";
    return out.str();
}

} // namespace mqr
