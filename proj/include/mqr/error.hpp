#pragma once

#include <stdexcept>
#include <string>

namespace mqr {

// Every failure the library reports carries a stable, machine-readable
// reason code (e.g. "wrong-system", "unbound-label") next to the human text.
class mqr_error : public std::runtime_error
{
public:
    mqr_error( std::string code, const std::string& message )
        : std::runtime_error( message ), _code( std::move( code ) )
    {
    }

    [[nodiscard]] const std::string& code() const { return _code; }

private:
    std::string _code;
};

} // namespace mqr
