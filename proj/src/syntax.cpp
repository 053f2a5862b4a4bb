#include "mqr/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>

namespace mqr {

std::string_view to_string( proof_system system )
{
    return system == proof_system::msqr ? "MSQR" : "MSPQR";
}

std::string_view to_string( relation rel )
{
    switch ( rel )
    {
    case relation::u: return "U";
    case relation::m: return "M";
    case relation::p: return "P";
    }
    return "?";
}

std::optional< proof_system > system_from_string( std::string_view text )
{
    std::string lowered( text );
    std::transform( lowered.begin(), lowered.end(), lowered.begin(),
                    []( unsigned char c ) { return static_cast< char >( std::tolower( c ) ); } );
    if ( lowered == "msqr" )
        return proof_system::msqr;
    if ( lowered == "mspqr" )
        return proof_system::mspqr;
    return std::nullopt;
}

bool is_legal( relation rel, proof_system system )
{
    switch ( rel )
    {
    case relation::u: return true;
    case relation::m: return system == proof_system::msqr;
    case relation::p: return system == proof_system::mspqr;
    }
    return false;
}

bool is_identifier( std::string_view text )
{
    if ( text.empty() || !std::isalpha( static_cast< unsigned char >( text.front() ) ) )
        return false;
    return std::all_of( text.begin(), text.end(), []( unsigned char c ) {
        return std::isalnum( c ) || c == '_';
    } );
}

struct mformula::node
{
    kind k;
    std::string name;
    relation rel = relation::u;
    std::optional< mformula > left;
    std::optional< mformula > right;
    std::size_t size = 1;
    std::size_t depth = 0;
};

mformula mformula::bottom()
{
    static const auto shared = std::make_shared< const node >( node{ kind::bottom, {}, relation::u, {}, {} } );
    return mformula( shared );
}

mformula mformula::prop( std::string name )
{
    return mformula( std::make_shared< const node >( node{ kind::prop, std::move( name ), relation::u, {}, {} } ) );
}

mformula mformula::implies( mformula lhs, mformula rhs )
{
    const auto size = 1 + lhs.size() + rhs.size();
    const auto depth = 1 + std::max( lhs.depth(), rhs.depth() );
    return mformula( std::make_shared< const node >(
        node{ kind::implies, {}, relation::u, std::move( lhs ), std::move( rhs ), size, depth } ) );
}

mformula mformula::box( relation rel, mformula body )
{
    const auto size = 1 + body.size();
    const auto depth = 1 + body.depth();
    return mformula(
        std::make_shared< const node >( node{ kind::box, {}, rel, std::move( body ), {}, size, depth } ) );
}

mformula::kind mformula::node_kind() const { return _node->k; }

const std::string& mformula::name() const
{
    assert( is( kind::prop ) );
    return _node->name;
}

relation mformula::rel() const
{
    assert( is( kind::box ) );
    return _node->rel;
}

const mformula& mformula::body() const
{
    assert( is( kind::box ) );
    return *_node->left;
}

const mformula& mformula::lhs() const
{
    assert( is( kind::implies ) );
    return *_node->left;
}

const mformula& mformula::rhs() const
{
    assert( is( kind::implies ) );
    return *_node->right;
}

std::size_t mformula::size() const { return _node->size; }
std::size_t mformula::depth() const { return _node->depth; }

bool operator==( const mformula& a, const mformula& b )
{
    return ( a <=> b ) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>( const mformula& a, const mformula& b )
{
    if ( a._node == b._node )
        return std::strong_ordering::equal;
    if ( auto c = a.node_kind() <=> b.node_kind(); c != 0 )
        return c;
    switch ( a.node_kind() )
    {
    case mformula::kind::bottom:
        return std::strong_ordering::equal;
    case mformula::kind::prop:
        return a.name() <=> b.name();
    case mformula::kind::implies:
        if ( auto c = a.lhs() <=> b.lhs(); c != 0 )
            return c;
        return a.rhs() <=> b.rhs();
    case mformula::kind::box:
        if ( auto c = a.rel() <=> b.rel(); c != 0 )
            return c;
        return a.body() <=> b.body();
    }
    return std::strong_ordering::equal;
}

mformula neg( mformula a ) { return mformula::implies( std::move( a ), mformula::bottom() ); }

mformula conj( mformula a, mformula b )
{
    return neg( mformula::implies( std::move( a ), neg( std::move( b ) ) ) );
}

mformula disj( mformula a, mformula b ) { return mformula::implies( neg( std::move( a ) ), std::move( b ) ); }

mformula iff( mformula a, mformula b )
{
    return conj( mformula::implies( a, b ), mformula::implies( b, a ) );
}

mformula diamond( relation rel, mformula a ) { return neg( mformula::box( rel, neg( std::move( a ) ) ) ); }

bool is_legal( const mformula& a, proof_system system )
{
    switch ( a.node_kind() )
    {
    case mformula::kind::bottom:
    case mformula::kind::prop:
        return true;
    case mformula::kind::implies:
        return is_legal( a.lhs(), system ) && is_legal( a.rhs(), system );
    case mformula::kind::box:
        return is_legal( a.rel(), system ) && is_legal( a.body(), system );
    }
    return false;
}

bool is_legal( const formula& f, proof_system system )
{
    if ( const auto* l = as_labelled( f ) )
        return is_legal( l->body, system );
    return is_legal( std::get< relational >( f ).rel, system );
}

bool occurs( const label& l, const formula& f )
{
    if ( const auto* lf = as_labelled( f ) )
        return lf->at == l;
    const auto& r = std::get< relational >( f );
    return r.from == l || r.to == l;
}

std::set< label > labels_of( const formula& f )
{
    if ( const auto* lf = as_labelled( f ) )
        return { lf->at };
    const auto& r = std::get< relational >( f );
    return { r.from, r.to };
}

namespace {

void collect_props( const mformula& a, std::set< std::string >& out )
{
    switch ( a.node_kind() )
    {
    case mformula::kind::bottom: break;
    case mformula::kind::prop: out.insert( a.name() ); break;
    case mformula::kind::implies:
        collect_props( a.lhs(), out );
        collect_props( a.rhs(), out );
        break;
    case mformula::kind::box: collect_props( a.body(), out ); break;
    }
}

label rename( const label& l, const label& from, const label& to ) { return l == from ? to : l; }

bool is_atomic( const mformula& a )
{
    return a.is( mformula::kind::bottom ) || a.is( mformula::kind::prop );
}

void print_into( const mformula& a, std::string& out )
{
    switch ( a.node_kind() )
    {
    case mformula::kind::bottom: out += "bot"; break;
    case mformula::kind::prop: out += a.name(); break;
    case mformula::kind::implies:
        if ( a.lhs().is( mformula::kind::implies ) )
        {
            out += '(';
            print_into( a.lhs(), out );
            out += ')';
        }
        else
            print_into( a.lhs(), out );
        out += " -> ";
        print_into( a.rhs(), out );
        break;
    case mformula::kind::box:
        switch ( a.rel() )
        {
        case relation::u: out += "[]"; break;
        case relation::m: out += "[M]"; break;
        case relation::p: out += "[P]"; break;
        }
        if ( is_atomic( a.body() ) )
        {
            out += ' ';
            print_into( a.body(), out );
        }
        else if ( a.body().is( mformula::kind::implies ) )
        {
            out += '(';
            print_into( a.body(), out );
            out += ')';
        }
        else
            print_into( a.body(), out );
        break;
    }
}

} // namespace

std::set< std::string > propositions_of( const mformula& a )
{
    std::set< std::string > out;
    collect_props( a, out );
    return out;
}

std::set< std::string > propositions_of( const formula& f )
{
    if ( const auto* lf = as_labelled( f ) )
        return propositions_of( lf->body );
    return {};
}

formula substitute( const formula& f, const label& from, const label& to )
{
    if ( const auto* lf = as_labelled( f ) )
        return labelled{ rename( lf->at, from, to ), lf->body };
    const auto& r = std::get< relational >( f );
    return relational{ rename( r.from, from, to ), r.rel, rename( r.to, from, to ) };
}

std::string print( const mformula& a )
{
    std::string out;
    print_into( a, out );
    return out;
}

std::string print( const formula& f )
{
    if ( const auto* lf = as_labelled( f ) )
        return lf->at.name + " : " + print( lf->body );
    const auto& r = std::get< relational >( f );
    return r.from.name + " " + std::string( to_string( r.rel ) ) + " " + r.to.name;
}

} // namespace mqr
