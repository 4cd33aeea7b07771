/**
 * Error types shared across the library.
 *
 * Argument and domain violations reuse the standard exception hierarchy
 * (std::invalid_argument, std::domain_error).  Two additional categories
 * get their own types so callers (notably the CLI) can map them to
 * distinct exit codes: resource exhaustion (configured budgets exceeded)
 * and internal contract violations (a computed invariant failed).
 */

#ifndef HOMCX_ERRORS_HPP
#define HOMCX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace homcx {

/** Thrown when a configured size/time budget would be exceeded. */
class resource_error : public std::runtime_error {
  public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/** Thrown when an internal invariant check fails (a bug, not bad input). */
class contract_error : public std::logic_error {
  public:
    explicit contract_error(const std::string& what) : std::logic_error(what) {}
};

/** Throw contract_error with a short message unless `cond` holds. */
inline void contract_check(bool cond, const char* msg)
{
    if (!cond)
        throw contract_error(std::string("contract violated: ") + msg);
}

}   // namespace homcx

#endif   // HOMCX_ERRORS_HPP
