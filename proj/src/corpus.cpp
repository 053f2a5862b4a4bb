#include "mqr/corpus.hpp"

#include "mqr/parse.hpp"
#include "mqr/script.hpp"

#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

namespace mqr {

std::string read_text_file( const std::filesystem::path& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        throw mqr_error( "io", "cannot read " + path.string() );
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::vector< corpus_entry > load_manifest( const std::filesystem::path& manifest )
{
    const auto text = read_text_file( manifest );
    const auto base = manifest.parent_path();
    std::vector< corpus_entry > entries;
    std::istringstream in( text );
    std::string line;
    int line_no = 0;
    while ( std::getline( in, line ) )
    {
        ++line_no;
        if ( const auto hash = line.find( '#' ); hash != std::string::npos )
            line.resize( hash );
        std::istringstream words( line );
        std::string name, system, path, expectation, extra;
        if ( !( words >> name ) )
            continue;
        const auto bad = [ & ]( const std::string& what ) {
            return parse_error( "syntax", line_no, 1, { "<name> <system> <path> <expectation>" },
                                manifest.string() + ":" + std::to_string( line_no ) + ": " + what );
        };
        if ( !( words >> system >> path >> expectation ) || ( words >> extra ) )
            throw bad( "expected four fields" );

        corpus_entry e;
        e.name = name;
        const auto sys = system_from_string( system );
        if ( !sys )
            throw bad( "unknown system '" + system + "'" );
        e.system = *sys;
        e.script_path = base / path;
        if ( expectation == "accepted" )
            e.expect_accepted = true;
        else if ( expectation.rfind( "rejected:", 0 ) == 0 && expectation.size() > 9 )
        {
            e.expect_accepted = false;
            e.expected_reason = expectation.substr( 9 );
        }
        else
            throw bad( "expectation must be 'accepted' or 'rejected:<reason>'" );
        if ( !std::filesystem::is_regular_file( e.script_path ) )
            throw mqr_error( "io", manifest.string() + ":" + std::to_string( line_no ) + ": missing file "
                                       + e.script_path.string() );
        entries.push_back( std::move( e ) );
    }
    return entries;
}

bool corpus_outcome::passed() const
{
    if ( !expectation_met )
        return false;
    return !soundness || std::holds_alternative< countermodel_not_found >( *soundness );
}

bool corpus_summary::all_passed() const
{
    return std::all_of( outcomes.begin(), outcomes.end(), []( const corpus_outcome& o ) { return o.passed(); } );
}

namespace {

corpus_outcome run_entry( const corpus_entry& entry, std::size_t soundness_worlds )
{
    corpus_outcome out;
    out.entry = entry;
    try
    {
        out.script = parse_script( read_text_file( entry.script_path ) );
    }
    catch ( const mqr_error& e )
    {
        out.load_error = e.what();
        return out;
    }
    out.report = check( *out.script, entry.system );
    if ( entry.expect_accepted )
        out.expectation_met = out.report.accepted() && out.report.open_assumptions.empty() && out.script->theorem;
    else
        out.expectation_met = !out.report.accepted() && out.report.has_reason( entry.expected_reason );

    if ( out.report.accepted() && out.report.open_assumptions.empty() && out.script->theorem )
    {
        search_budget budget;
        budget.max_worlds = soundness_worlds;
        out.soundness = find_countermodel( entry.system, {}, *out.script->theorem, budget );
    }
    return out;
}

} // namespace

corpus_summary run_corpus( const std::vector< corpus_entry >& entries, std::size_t soundness_worlds )
{
    std::vector< std::future< corpus_outcome > > pending;
    pending.reserve( entries.size() );
    for ( const auto& e : entries )
        pending.push_back( std::async( std::launch::async, run_entry, std::cref( e ), soundness_worlds ) );

    corpus_summary summary;
    for ( auto& p : pending )
    {
        auto outcome = p.get();
        if ( outcome.soundness )
        {
            ++summary.accepted_theorems;
            if ( std::holds_alternative< countermodel_found >( *outcome.soundness ) )
                ++summary.countermodels;
        }
        summary.outcomes.push_back( std::move( outcome ) );
    }
    return summary;
}

std::string format_summary( const corpus_summary& summary, bool with_reasons )
{
    std::ostringstream out;
    out << std::left << std::setw( 22 ) << "entry" << std::setw( 7 ) << "system" << std::setw( 34 ) << "expected"
        << std::setw( 34 ) << "got" << "result\n";
    for ( const auto& o : summary.outcomes )
    {
        const std::string expected = o.entry.expect_accepted ? "accepted" : "rejected:" + o.entry.expected_reason;
        std::string got;
        if ( !o.load_error.empty() )
            got = "load error";
        else if ( o.report.accepted() )
            got = o.report.open_assumptions.empty() ? "accepted" : "accepted (open assumptions)";
        else
        {
            got = "rejected";
            if ( !o.report.diagnostics.empty() )
                got += ":" + o.report.diagnostics.front().reason;
        }
        out << std::setw( 22 ) << o.entry.name << std::setw( 7 ) << to_string( o.entry.system ) << std::setw( 34 )
            << expected << std::setw( 34 ) << got;
        if ( !o.expectation_met )
            out << "FAIL";
        else if ( o.soundness && std::holds_alternative< countermodel_found >( *o.soundness ) )
            out << "FAIL (countermodel)";
        else
            out << "ok";
        out << "\n";
        if ( !o.load_error.empty() )
            out << "    " << o.load_error << "\n";
        if ( with_reasons || !o.expectation_met )
            for ( const auto& d : o.report.diagnostics )
                out << "    step " << d.step << " [" << d.reason << "] " << d.message << "\n";
    }
    std::size_t passed = 0;
    for ( const auto& o : summary.outcomes )
        passed += o.passed() ? 1 : 0;
    out << passed << "/" << summary.outcomes.size() << " entries as expected; " << summary.accepted_theorems
        << " theorems accepted; " << summary.countermodels << " countermodels found up to bound\n";
    return out.str();
}

} // namespace mqr
