#include "doctest.h"

#include "mqr/parse.hpp"
#include "support/common.hpp"

#include <algorithm>

using namespace mqr;
using mqr::testing::fm;
using mqr::testing::mf;

namespace {

mformula r( const char* name ) { return mformula::prop( name ); }

std::string parse_error_code( const char* text, std::optional< proof_system > system = std::nullopt )
{
    try
    {
        parse_formula( text, system );
    }
    catch ( const parse_error& e )
    {
        return e.code();
    }
    return "";
}

} // namespace

TEST_SUITE( "syntax" )
{
    TEST_CASE( "measurement iff is expanded into primitive connectives" )
    {
        auto a = mf( "[M](r0 <-> [M] r0)" );
        CHECK( a == mformula::box( relation::m, iff( r( "r0" ), mformula::box( relation::m, r( "r0" ) ) ) ) );
        auto text = print( a );
        for ( const char* sugar : { "<->", "&", "|", "~", "<M>", "<>" } )
            CHECK( text.find( sugar ) == std::string::npos );
        CHECK( parse_mformula( text ) == a );
    }

    TEST_CASE( "atoms and associativity" )
    {
        CHECK( mf( "bot" ) == mformula::bottom() );
        CHECK( mf( "r0 -> r1 -> r2" ) == mformula::implies( r( "r0" ), mformula::implies( r( "r1" ), r( "r2" ) ) ) );
        CHECK( mf( "(r0 -> r1) -> r2" ) == mformula::implies( mformula::implies( r( "r0" ), r( "r1" ) ), r( "r2" ) ) );
        CHECK( mf( "a | b | c" ) == disj( disj( r( "a" ), r( "b" ) ), r( "c" ) ) );
        CHECK( mf( "a & b & c" ) == conj( conj( r( "a" ), r( "b" ) ), r( "c" ) ) );
    }

    TEST_CASE( "precedence from prefix operators down to iff" )
    {
        auto expected = iff( mformula::implies( disj( conj( neg( r( "a" ) ), r( "b" ) ), r( "c" ) ), r( "d" ) ), r( "e" ) );
        CHECK( mf( "~a & b | c -> d <-> e" ) == expected );
        CHECK( mf( "[]a -> b" ) == mformula::implies( mformula::box( relation::u, r( "a" ) ), r( "b" ) ) );
        CHECK( mf( "<P>~[P] a" ) == diamond( relation::p, neg( mformula::box( relation::p, r( "a" ) ) ) ) );
        CHECK( mf( "[ M ] a" ) == mf( "[M]a" ) );
    }

    TEST_CASE( "defined connectives" )
    {
        CHECK( mf( "~a" ) == mformula::implies( r( "a" ), mformula::bottom() ) );
        CHECK( mf( "a & b" ) == neg( mformula::implies( r( "a" ), neg( r( "b" ) ) ) ) );
        CHECK( mf( "a | b" ) == mformula::implies( neg( r( "a" ) ), r( "b" ) ) );
        CHECK( mf( "a <-> b" ) == conj( mf( "a -> b" ), mf( "b -> a" ) ) );
        CHECK( mf( "<M> a" ) == neg( mformula::box( relation::m, neg( r( "a" ) ) ) ) );
        CHECK( mf( "<> a" ) == mf( "~[]~a" ) );
    }

    TEST_CASE( "iff does not associate" )
    {
        CHECK_THROWS_AS( mf( "a <-> b <-> c" ), parse_error );
        CHECK( mf( "(a <-> b) <-> c" ) == iff( iff( r( "a" ), r( "b" ) ), r( "c" ) ) );
    }

    TEST_CASE( "labelled and relational formulas" )
    {
        CHECK( fm( "x : [] r0" ) == formula{ labelled{ label{ "x" }, mformula::box( relation::u, r( "r0" ) ) } } );
        CHECK( fm( "x M y" ) == formula{ relational{ label{ "x" }, relation::m, label{ "y" } } } );
        CHECK( fm( "w_1 P v2" ) == formula{ relational{ label{ "w_1" }, relation::p, label{ "v2" } } } );
        CHECK( fm( "x : foo_bar" ) == formula{ labelled{ label{ "x" }, r( "foo_bar" ) } } );
    }

    TEST_CASE( "malformed input reports position and expectations" )
    {
        try
        {
            fm( "x :" );
            FAIL( "accepted a formula without a body" );
        }
        catch ( const parse_error& e )
        {
            CHECK( e.code() == "syntax" );
            CHECK( e.line() == 1 );
            CHECK( e.column() == 4 );
            CHECK_FALSE( e.expected().empty() );
        }
        try
        {
            parse_mformula( "r0 ->\n  (r1 ->" );
            FAIL( "accepted an unfinished formula" );
        }
        catch ( const parse_error& e )
        {
            CHECK( e.line() == 2 );
        }
        try
        {
            parse_mformula( "r0 $ r1", std::nullopt, text_origin{ 5, 10 } );
            FAIL( "accepted a stray character" );
        }
        catch ( const parse_error& e )
        {
            CHECK( e.line() == 5 );
            CHECK( e.column() == 13 );
        }
        CHECK_THROWS_AS( fm( "x" ), parse_error );
        CHECK_THROWS_AS( fm( "x U" ), parse_error );
        CHECK_THROWS_AS( fm( "x : (r0" ), parse_error );
        CHECK_THROWS_AS( fm( "x : r0 r1" ), parse_error );
        CHECK_THROWS_AS( fm( "1x : r0" ), parse_error );
        CHECK_THROWS_AS( mf( "[Q] r0" ), parse_error );
    }

    TEST_CASE( "comments and whitespace" )
    {
        CHECK( parse_mformula( "r0 # first\n ->\t r1 # second" ) == mf( "r0 -> r1" ) );
    }

    TEST_CASE( "relation symbols are gated by system" )
    {
        CHECK( parse_error_code( "x : [P] r0", proof_system::msqr ) == "wrong-system" );
        CHECK( parse_error_code( "x : <P> r0", proof_system::msqr ) == "wrong-system" );
        CHECK( parse_error_code( "x : [M] r0", proof_system::mspqr ) == "wrong-system" );
        CHECK( parse_error_code( "x : <M> r0", proof_system::mspqr ) == "wrong-system" );
        CHECK( parse_error_code( "x P y", proof_system::msqr ) == "wrong-system" );
        CHECK( parse_error_code( "x M y", proof_system::mspqr ) == "wrong-system" );
        CHECK( parse_error_code( "x : [] r0 -> <> r0", proof_system::msqr ).empty() );
        CHECK( parse_error_code( "x U y", proof_system::mspqr ).empty() );
        CHECK( is_legal( fm( "x : [M] r0" ), proof_system::msqr ) );
        CHECK_FALSE( is_legal( fm( "x : [M] r0" ), proof_system::mspqr ) );
    }

    TEST_CASE( "labels" )
    {
        CHECK( label{ "x" } == label{ "x" } );
        CHECK( label{ "x" } != label{ "X" } );
        CHECK( is_identifier( "x0_a" ) );
        CHECK_FALSE( is_identifier( "" ) );
        CHECK_FALSE( is_identifier( "_x" ) );
        CHECK_FALSE( is_identifier( "0x" ) );
    }

    TEST_CASE( "substitution" )
    {
        label x{ "x" }, y{ "y" };
        CHECK( substitute( fm( "x : r0" ), x, y ) == fm( "y : r0" ) );
        CHECK( substitute( fm( "x M x" ), x, y ) == fm( "y M y" ) );
        CHECK( substitute( fm( "z U x" ), x, x ) == fm( "z U x" ) );
        CHECK( substitute( fm( "z U w" ), x, y ) == fm( "z U w" ) );
        CHECK( substitute( fm( "x : [] x" ), x, y ) == fm( "y : [] x" ) );
    }

    TEST_CASE( "printing" )
    {
        CHECK( print( formula{ labelled{ label{ "x" }, mformula::implies( r( "r0" ), mformula::bottom() ) } } ) ==
               "x : r0 -> bot" );
        CHECK( print( formula{ relational{ label{ "x" }, relation::u, label{ "y" } } } ) == "x U y" );
        CHECK( print( formula{ labelled{ label{ "x" }, mformula::box( relation::m, mformula::box( relation::m, r( "r0" ) ) ) } } ) ==
               "x : [M][M] r0" );
        CHECK( print( mf( "[] (a -> b)" ) ) == "[](a -> b)" );
        CHECK( print( mf( "(a -> b) -> c" ) ) == "(a -> b) -> c" );
    }

    TEST_CASE( "labels and propositions of a formula" )
    {
        CHECK( labels_of( fm( "x M y" ) ) == std::set< label >{ label{ "x" }, label{ "y" } } );
        CHECK( propositions_of( fm( "x : [M](r0 <-> [M] r1)" ) ) == std::set< std::string >{ "r0", "r1" } );
        CHECK( occurs( label{ "y" }, fm( "x U y" ) ) );
        CHECK_FALSE( occurs( label{ "y" }, fm( "x : y" ) ) );
        CHECK( mf( "[](a -> b)" ).size() == 4 );
        CHECK( mf( "[](a -> b)" ).depth() == 2 );
    }

    TEST_CASE( "print then parse is the identity on generated formulas" )
    {
        for ( auto system : { proof_system::msqr, proof_system::mspqr } )
        {
            oracle::formula_generator gen( 7, system, { "r0", "r1", "p", "q_2" } );
            for ( int i = 0; i < 1000; ++i )
            {
                auto a = gen.form( gen.roll( 7 ) );
                auto text = print( a );
                auto back = parse_formula( text, system );
                REQUIRE_MESSAGE( back == a, text );
                CHECK( print( back ) == text );
            }
        }
    }

    TEST_CASE( "substitutions compose through an unused label" )
    {
        label x{ "x" }, y{ "y" }, z{ "z" };
        oracle::formula_generator gen( 11, proof_system::msqr );
        int checked = 0;
        for ( int i = 0; i < 1000; ++i )
        {
            auto a = gen.form( 3 );
            if ( occurs( y, a ) )
                continue;
            ++checked;
            CHECK( substitute( substitute( a, x, y ), y, z ) == substitute( a, x, z ) );
        }
        CHECK( checked > 100 );
    }

    TEST_CASE( "structural ordering is consistent with equality" )
    {
        oracle::formula_generator gen( 3, proof_system::mspqr );
        std::vector< mformula > pool;
        for ( int i = 0; i < 200; ++i )
            pool.push_back( gen.mform( 3 ) );
        for ( std::size_t i = 0; i < pool.size(); ++i )
            for ( std::size_t j = 0; j < pool.size(); ++j )
                CHECK( ( ( pool[ i ] <=> pool[ j ] ) == 0 ) == ( pool[ i ] == pool[ j ] ) );
    }
}
