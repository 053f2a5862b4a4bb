#pragma once

#include "mqr/parse.hpp"
#include "mqr/semantics.hpp"

#include <string>
#include <string_view>

namespace mqr {

// Model file format, one declaration per line, `#` comments:
//
//   system MSQR
//   worlds v w
//   U v w            # one pair per line; M pairs under MSQR, P under MSPQR
//   M v w
//   val w: r0 r1
//   interp x = v
//
// The loader does not validate the frame; callers decide what to do with
// validate_frame's verdict. Throws parse_error.
structure parse_model( std::string_view text );

std::string print_structure( const structure& s );

} // namespace mqr
