#include "mqr/parse.hpp"

#include <cctype>
#include <sstream>

namespace mqr {

namespace {

std::string describe( int line, int column, const std::string& what, const std::vector< std::string >& expected )
{
    std::ostringstream out;
    out << line << ":" << column << ": " << what;
    if ( !expected.empty() )
    {
        out << "; expected ";
        for ( std::size_t i = 0; i < expected.size(); ++i )
            out << ( i ? ", " : "" ) << expected[ i ];
    }
    return out.str();
}

enum class tok
{
    end,
    ident,
    bottom,
    lparen,
    rparen,
    tilde,
    box,
    diamond,
    amp,
    bar,
    arrow,
    biarrow,
    colon,
};

struct token
{
    tok kind = tok::end;
    std::string text;
    relation rel = relation::u;
    int line = 1;
    int column = 1;
};

class lexer
{
public:
    lexer( std::string_view input, text_origin origin )
        : _input( input ), _line( origin.line ), _column( origin.column )
    {
    }

    token next()
    {
        skip_blank();
        token t;
        t.line = _line;
        t.column = _column;
        if ( _pos >= _input.size() )
            return t;

        const char c = _input[ _pos ];
        if ( std::isalpha( static_cast< unsigned char >( c ) ) )
        {
            while ( _pos < _input.size()
                    && ( std::isalnum( static_cast< unsigned char >( _input[ _pos ] ) ) || _input[ _pos ] == '_' ) )
                t.text += advance();
            t.kind = t.text == "bot" ? tok::bottom : tok::ident;
            return t;
        }

        advance();
        switch ( c )
        {
        case '(': t.kind = tok::lparen; return t;
        case ')': t.kind = tok::rparen; return t;
        case '~': t.kind = tok::tilde; return t;
        case '&': t.kind = tok::amp; return t;
        case '|': t.kind = tok::bar; return t;
        case ':': t.kind = tok::colon; return t;
        case '-':
            expect_char( '>', { "'->'" } );
            t.kind = tok::arrow;
            return t;
        case '[':
            t.kind = tok::box;
            t.rel = bracket_relation( ']' );
            return t;
        case '<':
            if ( peek() == '-' )
            {
                advance();
                expect_char( '>', { "'<->'" } );
                t.kind = tok::biarrow;
                return t;
            }
            t.kind = tok::diamond;
            t.rel = bracket_relation( '>' );
            return t;
        default:
            throw parse_error( "syntax", t.line, t.column, {},
                               describe( t.line, t.column, std::string( "unexpected character '" ) + c + "'", {} ) );
        }
    }

private:
    char peek() const { return _pos < _input.size() ? _input[ _pos ] : '\0'; }

    char advance()
    {
        const char c = _input[ _pos++ ];
        if ( c == '\n' )
        {
            ++_line;
            _column = 1;
        }
        else
            ++_column;
        return c;
    }

    void skip_blank()
    {
        while ( _pos < _input.size() )
        {
            const char c = _input[ _pos ];
            if ( std::isspace( static_cast< unsigned char >( c ) ) )
                advance();
            else if ( c == '#' )
                while ( _pos < _input.size() && _input[ _pos ] != '\n' )
                    advance();
            else
                break;
        }
    }

    void expect_char( char want, const std::vector< std::string >& expected )
    {
        if ( peek() != want )
            throw parse_error( "syntax", _line, _column, expected,
                               describe( _line, _column, "malformed operator", expected ) );
        advance();
    }

    // Inside "[...]" or "<...>": empty means U, otherwise M or P.
    relation bracket_relation( char close )
    {
        skip_blank();
        relation rel = relation::u;
        if ( peek() == 'M' || peek() == 'P' )
        {
            rel = advance() == 'M' ? relation::m : relation::p;
            skip_blank();
        }
        const std::string closing = std::string( "'" ) + close + "'";
        if ( peek() != close )
            throw parse_error( "syntax", _line, _column, { closing, "'M'", "'P'" },
                               describe( _line, _column, "malformed modal operator", { closing, "'M'", "'P'" } ) );
        advance();
        return rel;
    }

    std::string_view _input;
    std::size_t _pos = 0;
    int _line;
    int _column;
};

class parser
{
public:
    parser( std::string_view input, std::optional< proof_system > system, text_origin origin )
        : _lexer( input, origin ), _system( system )
    {
        _current = _lexer.next();
    }

    mformula parse_iff()
    {
        auto lhs = parse_imp();
        if ( _current.kind != tok::biarrow )
            return lhs;
        shift();
        auto rhs = parse_imp();
        if ( _current.kind == tok::biarrow )
            fail( "'<->' is not associative; parenthesize", { "')'", "end of input" } );
        return iff( std::move( lhs ), std::move( rhs ) );
    }

    formula parse_top_formula()
    {
        if ( _current.kind != tok::ident )
            fail( "expected a label", { "label" } );
        label first{ _current.text };
        shift();
        if ( _current.kind == tok::colon )
        {
            shift();
            return labelled{ std::move( first ), parse_iff() };
        }
        if ( _current.kind == tok::ident && ( _current.text == "U" || _current.text == "M" || _current.text == "P" ) )
        {
            const relation rel = _current.text == "U" ? relation::u : _current.text == "M" ? relation::m : relation::p;
            check_system( rel );
            shift();
            if ( _current.kind != tok::ident )
                fail( "expected a label", { "label" } );
            label second{ _current.text };
            shift();
            return relational{ std::move( first ), rel, std::move( second ) };
        }
        fail( "expected ':' or a relation symbol", { "':'", "'U'", "'M'", "'P'" } );
    }

    void expect_end()
    {
        if ( _current.kind != tok::end )
            fail( "unexpected trailing input", { "end of input" } );
    }

private:
    mformula parse_imp()
    {
        auto lhs = parse_disj();
        if ( _current.kind != tok::arrow )
            return lhs;
        shift();
        return mformula::implies( std::move( lhs ), parse_imp() );
    }

    mformula parse_disj()
    {
        auto acc = parse_conj();
        while ( _current.kind == tok::bar )
        {
            shift();
            acc = disj( std::move( acc ), parse_conj() );
        }
        return acc;
    }

    mformula parse_conj()
    {
        auto acc = parse_unary();
        while ( _current.kind == tok::amp )
        {
            shift();
            acc = conj( std::move( acc ), parse_unary() );
        }
        return acc;
    }

    mformula parse_unary()
    {
        switch ( _current.kind )
        {
        case tok::tilde:
            shift();
            return neg( parse_unary() );
        case tok::box:
        case tok::diamond: {
            const auto op = _current;
            check_system( op.rel );
            shift();
            auto body = parse_unary();
            return op.kind == tok::box ? mformula::box( op.rel, std::move( body ) )
                                       : diamond( op.rel, std::move( body ) );
        }
        default:
            return parse_atom();
        }
    }

    mformula parse_atom()
    {
        switch ( _current.kind )
        {
        case tok::bottom:
            shift();
            return mformula::bottom();
        case tok::ident: {
            auto name = _current.text;
            shift();
            return mformula::prop( std::move( name ) );
        }
        case tok::lparen: {
            shift();
            auto inner = parse_iff();
            if ( _current.kind != tok::rparen )
                fail( "unbalanced parenthesis", { "')'" } );
            shift();
            return inner;
        }
        default:
            fail( _current.kind == tok::end ? "unexpected end of input" : "unexpected token",
                  { "'bot'", "proposition", "'('", "'~'", "'[]'", "'[M]'", "'[P]'", "'<>'", "'<M>'", "'<P>'" } );
        }
    }

    void check_system( relation rel )
    {
        if ( !_system || is_legal( rel, *_system ) )
            return;
        const std::string what = "relation " + std::string( to_string( rel ) ) + " is not part of "
                                 + std::string( to_string( *_system ) );
        throw parse_error( "wrong-system", _current.line, _current.column, {},
                           describe( _current.line, _current.column, what, {} ) );
    }

    [[noreturn]] void fail( const std::string& what, std::vector< std::string > expected )
    {
        throw parse_error( "syntax", _current.line, _current.column, expected,
                           describe( _current.line, _current.column, what, expected ) );
    }

    void shift() { _current = _lexer.next(); }

    lexer _lexer;
    std::optional< proof_system > _system;
    token _current;
};

} // namespace

parse_error::parse_error( std::string code, int line, int column, std::vector< std::string > expected,
                          const std::string& message )
    : mqr_error( std::move( code ), message ), _line( line ), _column( column ), _expected( std::move( expected ) )
{
}

mformula parse_mformula( std::string_view input, std::optional< proof_system > system, text_origin origin )
{
    parser p( input, system, origin );
    auto result = p.parse_iff();
    p.expect_end();
    return result;
}

formula parse_formula( std::string_view input, std::optional< proof_system > system, text_origin origin )
{
    parser p( input, system, origin );
    auto result = p.parse_top_formula();
    p.expect_end();
    return result;
}

} // namespace mqr
