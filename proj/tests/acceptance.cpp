// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "mqr/model_io.hpp"
#include "mqr/search.hpp"
#include "support/common.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace mqr;
using mqr::testing::corpus_dir;
using mqr::testing::fm;

namespace {

using clock_type = std::chrono::steady_clock;

constexpr double corpus_limit_ms = 1000.0;
constexpr double soundness_limit_ms = 60000.0;
constexpr std::size_t soundness_worlds = 3;
constexpr std::size_t random_samples = 10000;
constexpr int roundtrip_formulas = 1000;
constexpr std::size_t corpus_scripts = 20;

double elapsed_ms( clock_type::time_point start )
{
    return std::chrono::duration< double, std::milli >( clock_type::now() - start ).count();
}

struct outcome
{
    bool pass = false;
    std::string detail;
};

// ---- criterion 3 helpers ---------------------------------------------------

const char* const label_names[] = { "x", "y", "z" };

struct compiled_formula
{
    bool is_relational = false;
    int from = 0;
    int to = 0;
    relation rel = relation::u;
    std::size_t body = 0; // index into the body table
};

struct rule_instance
{
    proof_system system;
    rule name;
    std::vector< formula > premises;
    formula conclusion;
};

class instance_table
{
public:
    compiled_formula compile( const formula& f )
    {
        auto index = []( const label& l ) {
            for ( int i = 0; i < 3; ++i )
                if ( l.name == label_names[ i ] )
                    return i;
            throw std::logic_error( "unexpected label " + l.name );
        };
        compiled_formula c;
        if ( auto r = as_relational( f ) )
        {
            c.is_relational = true;
            c.from = index( r->from );
            c.to = index( r->to );
            c.rel = r->rel;
            return c;
        }
        const auto& l = *as_labelled( f );
        c.from = index( l.at );
        auto it = std::find( bodies.begin(), bodies.end(), l.body );
        c.body = static_cast< std::size_t >( it - bodies.begin() );
        if ( it == bodies.end() )
            bodies.push_back( l.body );
        return c;
    }

    std::vector< mformula > bodies;
};

std::vector< mformula > body_pool( proof_system system )
{
    relation meas = system == proof_system::msqr ? relation::m : relation::p;
    auto r0 = mformula::prop( "r0" ), r1 = mformula::prop( "r1" );
    return { mformula::bottom(),
             r0,
             r1,
             mformula::implies( r0, r1 ),
             neg( r0 ),
             mformula::box( relation::u, r1 ),
             mformula::box( meas, r0 ),
             diamond( meas, r0 ),
             diamond( relation::u, mformula::box( meas, r1 ) ) };
}

std::vector< rule_instance > rule_instances( proof_system system )
{
    const bool q = system == proof_system::msqr;
    relation meas = q ? relation::m : relation::p;
    label x{ "x" }, y{ "y" }, z{ "z" };
    auto lab = []( label l, mformula a ) { return formula{ labelled{ std::move( l ), std::move( a ) } }; };
    auto rel = []( label a, relation r, label b ) { return formula{ relational{ std::move( a ), r, std::move( b ) } }; };
    auto pool = body_pool( system );
    std::vector< rule_instance > out;
    auto add = [ & ]( rule r, std::vector< formula > premises, formula conclusion ) {
        out.push_back( { system, r, std::move( premises ), std::move( conclusion ) } );
    };

    for ( const auto& a : pool )
        for ( const auto& b : pool )
            add( rule::imp_e, { lab( x, mformula::implies( a, b ) ), lab( x, a ) }, lab( x, b ) );

    for ( const auto& a : pool )
    {
        add( rule::bot_e, { lab( x, mformula::bottom() ) }, lab( y, a ) );
        add( rule::bot_e, { lab( x, mformula::bottom() ) }, lab( x, a ) );
    }
    for ( relation r : { relation::u, meas } )
    {
        add( rule::bot_e, { lab( x, mformula::bottom() ) }, rel( y, r, z ) );
        for ( const auto& a : pool )
        {
            add( rule::box_e, { lab( x, mformula::box( r, a ) ), rel( x, r, y ) }, lab( y, a ) );
            add( rule::box_e, { lab( x, mformula::box( r, a ) ), rel( x, r, x ) }, lab( x, a ) );
        }
    }

    add( rule::u_refl, {}, rel( x, relation::u, x ) );
    add( rule::u_symm, { rel( x, relation::u, y ) }, rel( y, relation::u, x ) );
    add( rule::u_trans, { rel( x, relation::u, y ), rel( y, relation::u, z ) }, rel( x, relation::u, z ) );
    add( rule::u_trans, { rel( x, relation::u, y ), rel( y, relation::u, x ) }, rel( x, relation::u, x ) );

    add( q ? rule::u_i_from_m : rule::p_u_i, { rel( x, meas, y ) }, rel( x, relation::u, y ) );
    if ( q )
        add( rule::m_srefl, { rel( x, meas, y ) }, rel( y, meas, y ) );
    else
        add( rule::p_trans, { rel( x, meas, y ), rel( y, meas, z ) }, rel( x, meas, z ) );

    // Substitution rules: alpha mentions the substituted label somewhere.
    std::vector< formula > alphas_x, alphas_y;
    for ( const auto& a : pool )
    {
        alphas_x.push_back( lab( x, a ) );
        alphas_y.push_back( lab( y, a ) );
    }
    alphas_x.push_back( lab( z, pool[ 1 ] ) );
    alphas_y.push_back( lab( z, pool[ 1 ] ) );
    for ( relation r : { relation::u, meas } )
        for ( label other : { z, y } )
        {
            alphas_x.push_back( rel( x, r, other ) );
            alphas_x.push_back( rel( other, r, x ) );
        }
    for ( relation r : { relation::u, meas } )
        for ( label other : { z, x } )
        {
            alphas_y.push_back( rel( y, r, other ) );
            alphas_y.push_back( rel( other, r, y ) );
        }
    alphas_x.push_back( rel( x, meas, x ) );
    alphas_y.push_back( rel( y, relation::u, y ) );

    rule sub1 = q ? rule::m_sub1 : rule::p_sub1;
    rule sub2 = q ? rule::m_sub2 : rule::p_sub2;
    for ( const auto& a : alphas_x )
        add( sub1, { a, rel( x, meas, x ), rel( x, meas, y ) }, substitute( a, x, y ) );
    for ( const auto& a : alphas_y )
        add( sub2, { a, rel( x, meas, x ), rel( x, meas, y ) }, substitute( a, y, x ) );
    return out;
}

bool kernel_accepts( const rule_instance& inst )
{
    proof_script s;
    s.system = inst.system;
    int id = 0;
    std::vector< int > premises;
    for ( const auto& p : inst.premises )
    {
        s.steps.push_back( proof_step{ ++id, p, std::nullopt, 0 } );
        premises.push_back( id );
    }
    s.steps.push_back( proof_step{ ++id, inst.conclusion, rule_application{ inst.name, premises, {}, std::nullopt }, 0 } );
    return check( s, inst.system ).accepted();
}

outcome per_rule_soundness()
{
    std::size_t instances = 0, structures = 0, failures = 0, rejected = 0;
    std::set< rule > rules;
    for ( auto system : { proof_system::msqr, proof_system::mspqr } )
    {
        auto insts = rule_instances( system );
        instance_table table;
        struct compiled_instance
        {
            std::vector< compiled_formula > premises;
            compiled_formula conclusion;
        };
        std::vector< compiled_instance > compiled;
        for ( const auto& inst : insts )
        {
            if ( !kernel_accepts( inst ) )
            {
                ++rejected;
                std::cerr << "kernel rejects " << rule_name( inst.name ) << " instance concluding "
                          << print( inst.conclusion ) << "\n";
                continue;
            }
            rules.insert( inst.name );
            compiled_instance c;
            for ( const auto& p : inst.premises )
                c.premises.push_back( table.compile( p ) );
            c.conclusion = table.compile( inst.conclusion );
            compiled.push_back( std::move( c ) );
        }
        instances += compiled.size();

        const std::vector< std::string > props{ "r0", "r1" };
        for ( std::size_t n = 1; n <= soundness_worlds; ++n )
            for_each_frame( system, n, [ & ]( const frame& f ) {
                std::size_t bits = n * props.size();
                for ( unsigned long mask = 0; mask < ( 1UL << bits ); ++mask )
                {
                    model m = model::over( f );
                    for ( world w = 0; w < n; ++w )
                        for ( std::size_t p = 0; p < props.size(); ++p )
                            if ( mask >> ( w * props.size() + p ) & 1 )
                                m.valuation[ w ].insert( props[ p ] );
                    std::vector< std::vector< bool > > truth;
                    for ( const auto& b : table.bodies )
                        truth.push_back( truth_set( m, b ) );
                    world at[ 3 ];
                    for ( at[ 0 ] = 0; at[ 0 ] < n; ++at[ 0 ] )
                        for ( at[ 1 ] = 0; at[ 1 ] < n; ++at[ 1 ] )
                            for ( at[ 2 ] = 0; at[ 2 ] < n; ++at[ 2 ] )
                            {
                                ++structures;
                                auto value = [ & ]( const compiled_formula& c ) {
                                    if ( c.is_relational )
                                        return f.accessibility( c.rel ).contains( at[ c.from ], at[ c.to ] );
                                    return static_cast< bool >( truth[ c.body ][ at[ c.from ] ] );
                                };
                                for ( const auto& c : compiled )
                                {
                                    bool premises = std::all_of( c.premises.begin(), c.premises.end(), value );
                                    if ( premises && !value( c.conclusion ) )
                                        ++failures;
                                }
                            }
                }
                return true;
            } );
    }
    std::ostringstream d;
    d << rules.size() << " rules, " << instances << " instances, " << structures << " structures, " << failures
      << " failures, " << rejected << " instances refused by the kernel";
    return { failures == 0 && rejected == 0 && rules.size() == 14, d.str() };
}

// ---- the criteria -----------------------------------------------------------

std::vector< corpus_entry > manifest() { return load_manifest( corpus_dir() / "manifest.txt" ); }

outcome corpus_completeness()
{
    auto start = clock_type::now();
    std::size_t accepted = 0, expected = 0;
    for ( const auto& e : manifest() )
    {
        if ( !e.expect_accepted )
            continue;
        ++expected;
        auto script = parse_script( read_text_file( e.script_path ) );
        auto report = check( script, e.system );
        if ( report.accepted() && report.open_assumptions.empty() && script.theorem )
            ++accepted;
    }
    double ms = elapsed_ms( start );
    std::ostringstream d;
    d << accepted << "/" << expected << " theorems accepted with no open assumptions in " << ms << " ms (limit "
      << corpus_limit_ms << " ms)";
    return { expected == 9 && accepted == expected && ms < corpus_limit_ms, d.str() };
}

outcome desk_soundness()
{
    auto start = clock_type::now();
    std::size_t theorems = 0, counterexamples = 0, evaluations = 0;
    for ( const auto& e : manifest() )
    {
        if ( !e.expect_accepted )
            continue;
        auto script = parse_script( read_text_file( e.script_path ) );
        if ( !check( script, e.system ).accepted() || !script.theorem )
            continue;
        ++theorems;
        auto result = find_countermodel( e.system, {}, *script.theorem, mqr::testing::bound( soundness_worlds ) );
        if ( !std::holds_alternative< countermodel_not_found >( result ) )
            ++counterexamples;

        // Second opinion from the reference evaluator over its own frame list.
        const auto& body = as_labelled( *script.theorem )->body;
        auto props = propositions_of( body );
        std::vector< std::string > names( props.begin(), props.end() );
        for ( std::size_t n = 1; n <= soundness_worlds; ++n )
            for ( const auto& raw : oracle::all_valid_frames( e.system, n ) )
                for ( unsigned long mask = 0; mask < ( 1UL << ( n * names.size() ) ); ++mask )
                {
                    oracle::raw_model m{ raw, std::vector< std::set< std::string > >( n ) };
                    for ( std::size_t w = 0; w < n; ++w )
                        for ( std::size_t p = 0; p < names.size(); ++p )
                            if ( mask >> ( w * names.size() + p ) & 1 )
                                m.val[ w ].insert( names[ p ] );
                    for ( std::size_t w = 0; w < n; ++w )
                    {
                        ++evaluations;
                        if ( !oracle::truth( m, w, body ) )
                            ++counterexamples;
                    }
                }
    }
    double ms = elapsed_ms( start );
    std::ostringstream d;
    d << theorems << " theorems, " << evaluations << " reference evaluations, " << counterexamples
      << " counterexamples, " << ms << " ms (limit " << soundness_limit_ms << " ms)";
    return { theorems == 9 && counterexamples == 0 && ms < soundness_limit_ms, d.str() };
}

outcome refutation()
{
    bool ok = true;
    std::ostringstream d;
    for ( const char* text : { "x : r0 -> [] r0", "x : r0 -> [M] r0" } )
    {
        auto alpha = fm( text );
        bool none_at_one =
            std::holds_alternative< countermodel_not_found >( find_countermodel( proof_system::msqr, {}, alpha, mqr::testing::bound( 1 ) ) );
        auto found = find_countermodel( proof_system::msqr, {}, alpha, mqr::testing::bound( 2 ) );
        bool good = none_at_one && std::holds_alternative< countermodel_found >( found );
        if ( good )
        {
            const auto& s = std::get< countermodel_found >( found ).witness;
            auto reread = parse_model( print_structure( s ) );
            good = s.mod.fr.size() == 2 && validate_frame( s.mod.fr ).empty() && !holds( s, alpha ) &&
                   validate_frame( reread.mod.fr ).empty() && !holds( reread, alpha );
        }
        d << "'" << text << "': " << ( good ? "2-world countermodel, none at 1" : "unexpected" ) << "; ";
        ok = ok && good;
    }
    return { ok, d.str() };
}

outcome correspondence()
{
    struct experiment
    {
        proof_system system;
        const char* text;
        frame_conditions conditions;
        const char* dropped;
    };
    frame_conditions no_second, no_third;
    no_second.second = false;
    no_third.third = false;
    const experiment experiments[] = {
        { proof_system::msqr, "x : [M](r0 <-> [M] r0)", no_third, "MSQR (iii)" },
        { proof_system::msqr, "x : [M] r0 -> <M> r0", no_second, "MSQR (ii)" },
        { proof_system::mspqr, "x : <P>(r0 -> [P] r0)", no_third, "MSPQR (iii)" },
    };
    bool ok = true;
    std::ostringstream d;
    for ( const auto& e : experiments )
    {
        auto alpha = parse_formula( e.text, e.system );
        bool intact = std::holds_alternative< countermodel_not_found >(
            find_countermodel( e.system, {}, alpha, mqr::testing::bound( soundness_worlds ) ) );
        auto weak = find_countermodel( e.system, {}, alpha, mqr::testing::bound( soundness_worlds ), e.conditions );
        bool good = intact && std::holds_alternative< countermodel_found >( weak );
        if ( good )
        {
            const auto& s = std::get< countermodel_found >( weak ).witness;
            good = !holds( s, alpha ) && validate_frame( s.mod.fr, e.conditions ).empty() &&
                   !validate_frame( s.mod.fr ).empty();
            d << "without " << e.dropped << ": " << s.mod.fr.size() << "-world refutation; ";
        }
        else
            d << "without " << e.dropped << ": no refutation; ";
        ok = ok && good;
    }
    return { ok, d.str() };
}

outcome negative_suite()
{
    std::size_t total = 0, matched = 0;
    for ( const auto& e : manifest() )
    {
        if ( e.expect_accepted )
            continue;
        ++total;
        auto script = parse_script( read_text_file( e.script_path ) );
        auto report = check( script, e.system );
        if ( !report.accepted() && report.has_reason( e.expected_reason ) )
            ++matched;
        else
            std::cerr << e.name << ": expected " << e.expected_reason << "\n";
    }
    std::ostringstream d;
    d << matched << "/" << total << " broken scripts rejected with the expected reason";
    return { total >= 6 && matched == total, d.str() };
}

outcome generator_validity()
{
    std::size_t invalid = 0, mismatched = 0;
    for ( auto system : { proof_system::msqr, proof_system::mspqr } )
    {
        std::vector< frame > first;
        for ( std::uint64_t seed = 0; seed < random_samples; ++seed )
        {
            auto f = random_valid_frame( system, search_budget{ 3, {}, seed } );
            if ( !validate_frame( f ).empty() )
                ++invalid;
            first.push_back( std::move( f ) );
        }
        for ( std::uint64_t seed = 0; seed < random_samples; ++seed )
            if ( random_valid_frame( system, search_budget{ 3, {}, seed } ) != first[ seed ] )
                ++mismatched;
    }
    std::ostringstream d;
    d << 2 * random_samples << " frames, " << invalid << " invalid, " << mismatched << " not reproduced";
    return { invalid == 0 && mismatched == 0, d.str() };
}

outcome round_trip()
{
    std::size_t formula_failures = 0, script_failures = 0, scripts = 0;
    oracle::formula_generator gen( 2024, proof_system::msqr, { "r0", "r1", "p" } );
    oracle::formula_generator pgen( 2025, proof_system::mspqr, { "r0", "r1", "q" } );
    for ( int i = 0; i < roundtrip_formulas; ++i )
    {
        auto& g = i % 2 ? pgen : gen;
        auto a = g.form( g.roll( 7 ) );
        auto text = print( a );
        auto back = parse_formula( text );
        if ( !( back == a ) || print( back ) != text )
            ++formula_failures;
    }
    for ( const auto& e : manifest() )
    {
        ++scripts;
        auto text = print_script( parse_script( read_text_file( e.script_path ) ) );
        if ( print_script( parse_script( text ) ) != text )
            ++script_failures;
    }
    std::ostringstream d;
    d << roundtrip_formulas << " formulas (" << formula_failures << " failures), " << scripts << " scripts ("
      << script_failures << " failures)";
    return { formula_failures == 0 && script_failures == 0 && scripts == corpus_scripts, d.str() };
}

} // namespace

int main()
{
    struct criterion
    {
        const char* name;
        std::function< outcome() > run;
    };
    const criterion criteria[] = {
        { "corpus completeness", corpus_completeness },
        { "desk-scale soundness", desk_soundness },
        { "per-rule soundness", per_rule_soundness },
        { "refutation", refutation },
        { "frame-property correspondence", correspondence },
        { "negative-proof suite", negative_suite },
        { "generator validity", generator_validity },
        { "round-trip", round_trip },
    };
    int failed = 0;
    int number = 0;
    for ( const auto& c : criteria )
    {
        ++number;
        outcome o;
        try
        {
            o = c.run();
        }
        catch ( const std::exception& e )
        {
            o = { false, std::string( "exception: " ) + e.what() };
        }
        failed += !o.pass;
        std::cout << ( o.pass ? "PASS" : "FAIL" ) << " criterion " << number << " " << c.name << ": " << o.detail
                  << std::endl;
    }
    std::cout << ( failed ? "FAIL" : "PASS" ) << " acceptance: " << ( 8 - failed ) << "/8 criteria met" << std::endl;
    return failed ? 1 : 0;
}
