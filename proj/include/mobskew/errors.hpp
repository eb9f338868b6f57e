#ifndef MOBSKEW_ERRORS_HPP
#define MOBSKEW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mobskew {

// Certified precision could not meet the request; caller must raise
// precision_bits (CLI exit code 2).
class precision_error : public std::runtime_error {
public:
    explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

// A continued fraction does not have enough quotients to certify the
// requested quantity.
class insufficient_tail : public precision_error {
public:
    explicit insufficient_tail(const std::string& what) : precision_error(what) {}
};

// Not enough convergents materialized to bracket the requested cutoff.
class insufficient_quotients : public precision_error {
public:
    explicit insufficient_quotients(const std::string& what) : precision_error(what) {}
};

// Real-expansion certification failed; carries the certified prefix length.
class precision_exhausted : public precision_error {
public:
    precision_exhausted(const std::string& what, std::size_t certified_len)
        : precision_error(what), certified_len(certified_len) {}
    std::size_t certified_len;
};

// Cache file failed its checksum or structural validation (CLI exit code 3).
class cache_corrupt : public std::runtime_error {
public:
    explicit cache_corrupt(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration (CLI exit code 4).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested table exceeds the configured memory budget.
class resource_exhausted : public config_error {
public:
    explicit resource_exhausted(const std::string& what) : config_error(what) {}
};

class quadrature_error : public std::runtime_error {
public:
    explicit quadrature_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mobskew

#endif
