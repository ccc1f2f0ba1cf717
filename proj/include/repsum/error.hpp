#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace repsum {

enum class errc {
  zero_entry,
  arity,
  domain,
  parse,
  not_on_curve,
  singular_curve,
  map_pole,
  not_on_quartic,
  hypothesis,
  degenerate_quadratic,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::zero_entry: return "ZeroEntry";
    case errc::arity: return "ArityError";
    case errc::domain: return "DomainError";
    case errc::parse: return "ParseError";
    case errc::not_on_curve: return "NotOnCurve";
    case errc::singular_curve: return "SingularCurve";
    case errc::map_pole: return "MapPole";
    case errc::not_on_quartic: return "NotOnQuartic";
    case errc::hypothesis: return "HypothesisError";
    case errc::degenerate_quadratic: return "DegenerateQuadratic";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it onto an exit status.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

}  // namespace repsum
