// mqr: proof checker, model evaluator and countermodel finder for the
// quantum-register modal systems MSQR and MSPQR.
//
// Exit codes: 0 success/true/accepted, 1 rejected/false/not found,
// 2 usage, parse or I/O error.

#include "mqr/corpus.hpp"
#include "mqr/kernel.hpp"
#include "mqr/model_io.hpp"
#include "mqr/parse.hpp"
#include "mqr/script.hpp"
#include "mqr/search.hpp"
#include "mqr/semantics.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_negative = 1;
constexpr int exit_error = 2;

struct global_options
{
    std::string system;
    bool reasons = false;
    bool allow_invalid = false;
    std::size_t max_worlds = 3;
    std::uint64_t seed = 0;
};

std::optional< mqr::proof_system > requested_system( const global_options& opts )
{
    if ( opts.system.empty() )
        return std::nullopt;
    auto sys = mqr::system_from_string( opts.system );
    if ( !sys )
        throw mqr::mqr_error( "usage", "unknown system '" + opts.system + "', use msqr or mspqr" );
    return sys;
}

void print_violations( std::ostream& out, const mqr::frame& f, const std::vector< mqr::frame_violation >& violations )
{
    for ( const auto& v : violations )
    {
        out << to_string( v.property ) << ":";
        for ( auto w : v.witnesses )
            out << " " << f.world_names[ w ];
        out << "\n";
    }
}

// Loads and, unless told otherwise, validates a model file. Returns
// nullopt after printing the violations.
std::optional< mqr::structure > load_model( const std::string& path, const global_options& opts )
{
    auto s = mqr::parse_model( mqr::read_text_file( path ) );
    const auto violations = mqr::validate_frame( s.mod.fr );
    if ( !violations.empty() && !opts.allow_invalid )
    {
        std::cerr << path << ": invalid " << to_string( s.mod.fr.system ) << " frame\n";
        print_violations( std::cerr, s.mod.fr, violations );
        return std::nullopt;
    }
    return s;
}

int cmd_check( const std::string& path, const global_options& opts )
{
    const auto script = mqr::parse_script( mqr::read_text_file( path ) );
    auto system = requested_system( opts );
    if ( !system )
        system = script.system;
    if ( !system )
        throw mqr::mqr_error( "usage", path + ": no 'system' line; pass --system" );

    const auto report = mqr::check( script, *system );
    const std::string name = script.theorem_name.value_or( path );
    std::cout << ( report.accepted() ? "accepted" : "rejected" ) << ": " << name << " (" << to_string( *system )
              << ")\n";
    for ( const auto& d : report.diagnostics )
    {
        std::cout << "  step " << d.step << ": ";
        if ( opts.reasons )
            std::cout << "[" << d.reason << "] ";
        std::cout << d.message << "\n";
    }
    if ( report.accepted() )
    {
        if ( report.open_assumptions.empty() )
            std::cout << "  no open assumptions\n";
        for ( const auto& f : report.open_assumptions )
            std::cout << "  open: " << mqr::print( f ) << "\n";
    }
    return report.accepted() ? exit_ok : exit_negative;
}

int cmd_eval( const std::string& model_path, const std::string& text, const std::string& world_name,
              const global_options& opts )
{
    const auto s = load_model( model_path, opts );
    if ( !s )
        return exit_error;
    const auto system = s->mod.fr.system;
    bool value;
    if ( !world_name.empty() )
    {
        const auto w = s->mod.fr.find_world( world_name );
        if ( !w )
            throw mqr::mqr_error( "unknown-world", "no world '" + world_name + "' in " + model_path );
        value = mqr::eval( s->mod, *w, mqr::parse_mformula( text, system ) );
    }
    else
        value = mqr::holds( *s, mqr::parse_formula( text, system ) );
    std::cout << ( value ? "true" : "false" ) << "\n";
    return value ? exit_ok : exit_negative;
}

std::vector< mqr::formula > read_assumptions( const std::string& path, mqr::proof_system system )
{
    std::vector< mqr::formula > out;
    std::istringstream in( mqr::read_text_file( path ) );
    std::string line;
    int line_no = 0;
    while ( std::getline( in, line ) )
    {
        ++line_no;
        if ( const auto hash = line.find( '#' ); hash != std::string::npos )
            line.resize( hash );
        if ( line.find_first_not_of( " \t\r" ) == std::string::npos )
            continue;
        out.push_back( mqr::parse_formula( line, system, mqr::text_origin{ line_no, 1 } ) );
    }
    return out;
}

int cmd_countermodel( const std::string& text, const std::string& assumptions, const global_options& opts )
{
    const auto system = requested_system( opts );
    if ( !system )
        throw mqr::mqr_error( "usage", "countermodel needs --system" );
    const auto alpha = mqr::parse_formula( text, *system );
    const auto gamma = assumptions.empty() ? std::vector< mqr::formula >{} : read_assumptions( assumptions, *system );

    mqr::search_budget budget;
    budget.max_worlds = opts.max_worlds;
    budget.seed = opts.seed;
    const auto result = mqr::find_countermodel( *system, gamma, alpha, budget );
    if ( const auto* found = std::get_if< mqr::countermodel_found >( &result ) )
    {
        std::cout << "# countermodel with " << found->witness.mod.fr.size() << " world(s)\n"
                  << mqr::print_structure( found->witness );
        return exit_ok;
    }
    const auto& miss = std::get< mqr::countermodel_not_found >( result );
    std::cout << "no countermodel up to " << miss.bound << " world(s); " << miss.frames_checked
              << " frames checked\n";
    if ( miss.labels_exceed_bound )
        std::cout << "note: the query has more labels than the world bound\n";
    return exit_negative;
}

int cmd_frame_validate( const std::string& path )
{
    const auto s = mqr::parse_model( mqr::read_text_file( path ) );
    const auto violations = mqr::validate_frame( s.mod.fr );
    if ( violations.empty() )
    {
        std::cout << "valid " << to_string( s.mod.fr.system ) << " frame\n";
        return exit_ok;
    }
    print_violations( std::cout, s.mod.fr, violations );
    return exit_negative;
}

int cmd_frame_random( const global_options& opts )
{
    const auto system = requested_system( opts ).value_or( mqr::proof_system::msqr );
    mqr::search_budget budget;
    budget.max_worlds = opts.max_worlds;
    budget.seed = opts.seed;
    std::cout << mqr::print_structure( mqr::structure{ mqr::model::over( mqr::random_valid_frame( system, budget ) ), {} } );
    return exit_ok;
}

int cmd_corpus_run( const std::string& manifest, const global_options& opts )
{
    const auto entries = mqr::load_manifest( manifest );
    const auto summary = mqr::run_corpus( entries, opts.max_worlds );
    std::cout << mqr::format_summary( summary, opts.reasons );
    return summary.all_passed() ? exit_ok : exit_negative;
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Proof checker, model evaluator and countermodel finder for MSQR and MSPQR" };
    app.require_subcommand( 1 );
    app.fallthrough();

    global_options opts;
    app.add_option( "--system", opts.system, "msqr or mspqr" );
    app.add_flag( "--reasons", opts.reasons, "show machine-readable reason codes" );
    app.add_flag( "--allow-invalid", opts.allow_invalid, "accept model files whose frame is invalid" );
    app.add_option( "--max-worlds", opts.max_worlds, "world bound for searches" );
    app.add_option( "--seed", opts.seed, "seed for random frame generation" );

    std::string path, formula_text, world_name, assumptions;
    std::string manifest = MQR_DEFAULT_MANIFEST;

    auto* check = app.add_subcommand( "check", "check a proof script" );
    check->add_option( "path", path, "proof script" )->required();

    auto* eval = app.add_subcommand( "eval", "evaluate a formula in a model file" );
    eval->add_option( "model", path, "model file" )->required();
    eval->add_option( "formula", formula_text, "formula, or modal formula when a world is given" )->required();
    eval->add_option( "world", world_name, "world to evaluate at" );

    auto* counter = app.add_subcommand( "countermodel", "search for a countermodel" );
    counter->add_option( "formula", formula_text, "formula to refute" )->required();
    counter->add_option( "--assumptions", assumptions, "file with one assumption per line" );

    auto* frame_cmd = app.add_subcommand( "frame", "frame utilities" );
    frame_cmd->require_subcommand( 1 );
    auto* validate = frame_cmd->add_subcommand( "validate", "check the frame conditions of a model file" );
    validate->add_option( "model", path, "model file" )->required();
    auto* random = frame_cmd->add_subcommand( "random", "print a random valid frame" );

    auto* corpus = app.add_subcommand( "corpus", "proof corpus" );
    corpus->require_subcommand( 1 );
    auto* run = corpus->add_subcommand( "run", "check every corpus entry and run the soundness harness" );
    run->add_option( "--manifest", manifest, "corpus manifest" );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::Success& e )
    {
        return app.exit( e );
    }
    catch ( const CLI::ParseError& e )
    {
        app.exit( e );
        return exit_error;
    }

    try
    {
        if ( *check )
            return cmd_check( path, opts );
        if ( *eval )
            return cmd_eval( path, formula_text, world_name, opts );
        if ( *counter )
            return cmd_countermodel( formula_text, assumptions, opts );
        if ( *validate )
            return cmd_frame_validate( path );
        if ( *random )
            return cmd_frame_random( opts );
        if ( *run )
            return cmd_corpus_run( manifest, opts );
    }
    catch ( const mqr::mqr_error& e )
    {
        std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
