#pragma once

#include "mqr/corpus.hpp"
#include "mqr/kernel.hpp"
#include "mqr/script.hpp"
#include "mqr/search.hpp"
#include "mqr/semantics.hpp"
#include "oracle.hpp"

#include <filesystem>
#include <string>

namespace mqr::testing {

inline std::filesystem::path corpus_dir() { return MQR_CORPUS_DIR; }
inline std::filesystem::path fixtures_dir() { return MQR_FIXTURES_DIR; }

inline proof_script load_script( const std::filesystem::path& relative )
{
    return parse_script( read_text_file( corpus_dir() / relative ) );
}

inline oracle::raw_frame to_raw( const frame& f )
{
    oracle::raw_frame r{ f.system, f.size(), {}, {} };
    for ( auto p : f.unitary.pairs() )
        r.u.insert( p );
    for ( auto p : f.meas.pairs() )
        r.meas.insert( p );
    return r;
}

inline frame from_raw( const oracle::raw_frame& r )
{
    frame f = frame::empty( r.system, r.n );
    for ( auto [ a, b ] : r.u )
        f.unitary.insert( a, b );
    for ( auto [ a, b ] : r.meas )
        f.meas.insert( a, b );
    return f;
}

inline mformula mf( const char* text ) { return parse_mformula( text ); }
inline formula fm( const char* text ) { return parse_formula( text ); }

} // namespace mqr::testing

namespace mqr::testing {

inline search_budget bound( std::size_t worlds )
{
    search_budget b;
    b.max_worlds = worlds;
    return b;
}

} // namespace mqr::testing
